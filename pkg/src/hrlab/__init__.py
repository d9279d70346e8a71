"""Linear mixed Hodge-Riemann relations for constant-coefficient forms on C^n.

Submodules:

* :mod:`hrlab.exterior` - dense (p, q)-forms, wedge, conjugation, top-degree extraction
* :mod:`hrlab.positivity` - Hermitian (1,1)-forms, m-positivity, random polarizations
* :mod:`hrlab.restriction` - hyperplane restriction, degeneracy locus, avoiding bases
* :mod:`hrlab.hodge_riemann` - instances, the form Q, primitives, HL / HRR / LD checks
* :mod:`hrlab.harness` - batch reports, sweeps, fibration models, searches
* :mod:`hrlab.cli` - the ``hrlab`` command
"""

from .errors import (
    ConstraintError,
    DegreeError,
    DimensionError,
    HRLabError,
    HypothesisError,
    NotKahlerError,
    RangeError,
)
from .exterior import (
    Form,
    basis_of,
    conjugate,
    extract,
    kahler_form,
    monomial,
    volume_form,
    wedge,
    wedge_power,
)
from .hodge_riemann import (
    Instance,
    classical_instance,
    hl_holds,
    homotopy_sweep,
    local_estimate_constants,
    primitive_subspace,
    q_form,
    q_matrix,
    random_instance,
    verify_hrr,
    verify_ld,
    verify_nondegeneracy,
)
from .positivity import (
    HermitianOneOneForm,
    is_m_positive,
    is_semipositive,
    random_kahler,
    random_polarization,
    relative_spectrum,
)
from .restriction import Hyperplane, avoid_hyperplanes_basis, degeneracy_locus, restrict
from .verdict import Verdict

__version__ = "0.1.0"

__all__ = [
    "ConstraintError", "DegreeError", "DimensionError", "HRLabError", "HypothesisError", "NotKahlerError",
    "RangeError", "Form", "basis_of", "conjugate", "extract", "kahler_form", "monomial", "volume_form",
    "wedge", "wedge_power", "Instance", "classical_instance", "hl_holds", "homotopy_sweep",
    "local_estimate_constants", "primitive_subspace", "q_form", "q_matrix", "random_instance", "verify_hrr",
    "verify_ld", "verify_nondegeneracy", "HermitianOneOneForm", "is_m_positive", "is_semipositive",
    "random_kahler", "random_polarization", "relative_spectrum", "Hyperplane", "avoid_hyperplanes_basis",
    "degeneracy_locus", "restrict", "Verdict",
]
