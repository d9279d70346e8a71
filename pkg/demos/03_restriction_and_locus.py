"""
Restricting to hyperplanes
==========================

A semipositive form of rank m stays m-positive on a hyperplane H_v unless
v lies in a proper subspace, the degeneracy locus.  For a form pulled back
from C^m that locus is easy to see.
"""

import numpy as np

from hrlab import HermitianOneOneForm, Hyperplane, degeneracy_locus, is_m_positive, restrict
from hrlab.restriction import avoid_hyperplanes_basis, restriction_identity_sides

omega = HermitianOneOneForm.identity(3)
alpha = HermitianOneOneForm.diagonal([1, 1, 0])  # pulled back from the first two coordinates

locus = degeneracy_locus(alpha, omega, 2)
print("gram of the locus quadratic:\n", locus.gram.real)
print("locus dimension:", locus.kernel_dimension)

for v in ([1, 0, 0], [0, 0, 1], [1, 1, 1]):
    h = Hyperplane(v)
    verdict = is_m_positive(restrict(alpha, h), restrict(omega, h), 2)
    print(f"v = {v}: in locus {locus.contains(h)}, restriction 2-positive {verdict.holds}")

# both sides of the restriction identity, computed on C^3 and on H
h = Hyperplane.random(3, seed=1)
lhs, rhs = restriction_identity_sides(alpha, omega, 1, h)
print("identity sides:", lhs.real, rhs.real)

# an orthonormal basis none of whose vectors lies on a given set of hyperplanes
planes = [Hyperplane.random(3, seed=s) for s in range(5)]
basis = avoid_hyperplanes_basis(planes)
print("avoiding basis margin:", f"{basis.margin:.3f}",
      "orthonormal:", np.allclose(basis.vectors.conj().T @ basis.vectors, np.eye(3)))
