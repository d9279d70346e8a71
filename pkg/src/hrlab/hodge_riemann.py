"""Mixed Hodge-Riemann data for constant-coefficient forms.

An :class:`Instance` fixes ``n, m, p, q``, a Kahler form omega and the
polarizations ``alpha_1 .. alpha_(m-p-q+1)``.  From it we build

* ``Omega = omega^(n-m) ^ alpha_1 ^ ... ^ alpha_(m-p-q)``,
* the Hermitian form ``Q(phi, psi) = c * extract(Omega ^ phi ^ conj(psi))``
  with ``c = i^(q-p) (-1)^((p+q)(p+q+1)/2)``,
* the Lefschetz map ``phi -> Omega ^ phi`` and the primitive subspace, the
  kernel of ``phi -> Omega ^ alpha_(m-p-q+1) ^ phi``,

and check positivity of Q on primitives, bijectivity of the Lefschetz map,
the primitive decomposition, the straight-line deformation to omega, and the
coercivity estimate.

Matrices act on coefficient vectors in the canonical basis of
:func:`hrlab.exterior.basis_of`.  ``q_matrix`` returns ``M`` with
``Q(phi, psi) = psi^dagger M phi``.
"""

from __future__ import annotations

import math
from dataclasses import InitVar, dataclass, field
from functools import cached_property, lru_cache
from typing import Sequence

import numpy as np

from ._tol import global_tol
from .errors import ConstraintError, DegreeError, DimensionError, HypothesisError
from .exterior import (
    Form,
    _wedge_structure,
    basis_of,
    conjugate,
    extract,
    gamma_coefficient,
    wedge,
    wedge_operator,
    wedge_power,
)
from .linalg import null_space, numerical_rank, orthonormal_range, signature
from .positivity import (
    HermitianOneOneForm,
    _as_hermitian,
    _cholesky,
    as_rng,
    random_kahler,
    random_polarization,
    satisfies_theorem_hypotheses,
)
from .verdict import Verdict

__all__ = [
    "Instance",
    "GramReport",
    "PrimitiveSubspace",
    "LDReport",
    "HomotopyReport",
    "LocalEstimate",
    "hr_constant",
    "random_instance",
    "classical_instance",
    "build_omega",
    "q_form",
    "q_matrix",
    "lefschetz_matrix",
    "hl_holds",
    "primitive_map",
    "primitive_subspace",
    "full_gram_report",
    "verify_nondegeneracy",
    "verify_hrr",
    "verify_ld",
    "homotopy_sweep",
    "local_estimate_constants",
    "minimal_c2",
    "local_estimate_violation",
    "is_lefschetz_form",
    "is_hodge_riemann_form",
    "linear_path",
]


def _dim(n: int, p: int, q: int) -> int:
    if p < 0 or q < 0 or p > n or q > n:
        return 0
    return math.comb(n, p) * math.comb(n, q)


def hr_constant(p: int, q: int) -> complex:
    """``i^(q-p) * (-1)^((p+q)(p+q+1)/2)``."""
    return complex((1j) ** ((q - p) % 4) * (-1) ** ((p + q) * (p + q + 1) // 2))


@dataclass(frozen=True)
class Instance:
    """Data of the mixed Hodge-Riemann problem.

    ``omega_form`` replaces the product Omega when given; it is used to
    analyse arbitrary (k, k)-forms found by the search harness.  Pass
    ``validate=False`` to skip the positivity hypotheses on the alphas (the
    structural constraints are always enforced).
    """

    n: int
    m: int
    p: int
    q: int
    omega: HermitianOneOneForm
    alphas: tuple
    omega_form: Form | None = None
    validate: InitVar[bool] = True
    validated: bool = field(default=False, init=False, compare=False)

    def __post_init__(self, validate: bool) -> None:
        object.__setattr__(self, "alphas", tuple(_as_hermitian(a) for a in self.alphas))
        object.__setattr__(self, "omega", _as_hermitian(self.omega))
        n, m, p, q = self.n, self.m, self.p, self.q
        if n < 1:
            raise ConstraintError(f"n must be >= 1, got {n}")
        if not (0 <= p and 0 <= q and p + q <= m <= n and m >= 1):
            raise ConstraintError(f"need 0 <= p, q and p + q <= m <= n with m >= 1; got n={n} m={m} p={p} q={q}")
        if len(self.alphas) != m - p - q + 1:
            raise ConstraintError(f"expected m - p - q + 1 = {m - p - q + 1} polarizations, got {len(self.alphas)}")
        for form in (self.omega, *self.alphas):
            if form.n != n:
                raise DimensionError(f"form on C^{form.n} in an instance on C^{n}")
        _cholesky(self.omega)
        if self.omega_form is not None:
            k = n - p - q
            if (self.omega_form.n, self.omega_form.p, self.omega_form.q) != (n, k, k):
                raise DegreeError(f"Omega override must be a ({k},{k})-form on C^{n}")
        if validate:
            for j, a in enumerate(self.alphas, 1):
                if not satisfies_theorem_hypotheses(a, self.omega, m):
                    raise HypothesisError(f"alpha_{j} is not semipositive with at least {m} positive eigenvalues")
            object.__setattr__(self, "validated", True)

    @classmethod
    def unchecked(cls, n, m, p, q, omega, alphas, omega_form=None) -> "Instance":
        return cls(n, m, p, q, omega, tuple(alphas), omega_form, validate=False)

    @property
    def bidegree(self) -> tuple[int, int]:
        return (self.p, self.q)

    @property
    def polarization(self) -> HermitianOneOneForm:
        """The last alpha, which defines primitivity."""
        return self.alphas[-1]

    @property
    def hr_constant(self) -> complex:
        return hr_constant(self.p, self.q)

    @property
    def dimension(self) -> int:
        return _dim(self.n, self.p, self.q)

    @cached_property
    def Omega(self) -> Form:
        return build_omega(self)

    @cached_property
    def Omega_alpha(self) -> Form:
        return wedge(self.Omega, self.polarization.to_form())

    def deformed(self, t: float) -> "Instance":
        """Every alpha replaced by ``(1 - t) alpha + t omega``; not validated.

        An Omega override moves along the straight line to ``omega^(n-p-q)``.
        """
        alphas = [HermitianOneOneForm((1 - t) * a.matrix + t * self.omega.matrix) for a in self.alphas]
        override = None
        if self.omega_form is not None:
            target = wedge_power(self.omega.to_form(), self.n - self.p - self.q)
            override = self.omega_form * (1 - t) + target * t
        return Instance.unchecked(self.n, self.m, self.p, self.q, self.omega, alphas, override)

    def scaled(self, factor: float) -> "Instance":
        """Instance whose Omega is multiplied by ``factor`` (first Omega factor rescaled)."""
        if self.omega_form is not None:
            return Instance.unchecked(self.n, self.m, self.p, self.q, self.omega, self.alphas,
                                      self.omega_form * factor)
        if self.m - self.p - self.q >= 1:
            alphas = (self.alphas[0] * factor, *self.alphas[1:])
            return Instance.unchecked(self.n, self.m, self.p, self.q, self.omega, alphas)
        return Instance.unchecked(self.n, self.m, self.p, self.q, self.omega, self.alphas, self.Omega * factor)


def random_instance(n: int, m: int, p: int, q: int, seed=None, margin: float = 1e-6,
                    kahler: bool = True) -> Instance:
    """Seeded instance with a random Kahler omega and random polarizations.

    Each alpha is ``B B^dagger`` of rank in [m, n] with ``e_m`` of its spectrum
    relative to omega at least ``margin``.  ``kahler=False`` keeps omega the
    identity.
    """
    rng = as_rng(seed)
    omega = random_kahler(n, rng) if kahler else HermitianOneOneForm.identity(n)
    alphas = [random_polarization(n, m, margin, rng, omega=omega) for _ in range(m - p - q + 1)]
    return Instance(n, m, p, q, omega, tuple(alphas))


def classical_instance(n: int, p: int, q: int, m: int | None = None) -> Instance:
    """All forms equal to the standard Kahler form."""
    m = n if m is None else m
    eye = HermitianOneOneForm.identity(n)
    return Instance(n, m, p, q, eye, tuple(eye for _ in range(m - p - q + 1)))


def build_omega(inst: Instance) -> Form:
    """``omega^(n-m) ^ alpha_1 ^ ... ^ alpha_(m-p-q)`` (or the override)."""
    if inst.omega_form is not None:
        return inst.omega_form
    out = wedge_power(inst.omega.to_form(), inst.n - inst.m)
    for a in inst.alphas[:-1]:
        out = wedge(out, a.to_form())
    return out


def q_form(inst: Instance, phi: Form, psi: Form) -> complex:
    """``c * extract(Omega ^ phi ^ conj(psi))``."""
    for f in (phi, psi):
        if f.n != inst.n or f.bidegree != inst.bidegree:
            raise DegreeError(f"Q acts on ({inst.p},{inst.q})-forms on C^{inst.n}, got {f.bidegree} on C^{f.n}")
    return inst.hr_constant * extract(wedge(wedge(inst.Omega, phi), conjugate(psi)))


@lru_cache(maxsize=None)
def _top_pairing(n: int, p: int, q: int) -> np.ndarray:
    """``K[j, k] = extract(f_k ^ conj(e_j))`` for e_j in Lambda^(p,q), f_k in Lambda^(n-q,n-p)."""
    x_idx, y_idx, _, sign = _wedge_structure(n, n - q, n - p, q, p)
    pairing = np.zeros((_dim(n, n - q, n - p), _dim(n, q, p)), dtype=complex)
    np.add.at(pairing, (x_idx, y_idx), sign / gamma_coefficient(n))
    conj_basis = np.column_stack([conjugate(e).flat for e in basis_of(n, p, q)]) if _dim(n, p, q) else \
        np.zeros((_dim(n, q, p), 0), dtype=complex)
    out = conj_basis.T @ pairing.T
    out.setflags(write=False)
    return out


def lefschetz_matrix(inst: Instance) -> np.ndarray:
    """Matrix of ``phi -> Omega ^ phi`` from Lambda^(p,q) to Lambda^(n-q,n-p)."""
    return wedge_operator(inst.Omega, inst.p, inst.q)


def _q_matrix_from(omega_form: Form, p: int, q: int) -> np.ndarray:
    n = omega_form.n
    lef = wedge_operator(omega_form, p, q)
    mat = hr_constant(p, q) * (_top_pairing(n, p, q) @ lef)
    return 0.5 * (mat + mat.conj().T)


def q_matrix(inst: Instance, hermitize: bool = True) -> np.ndarray:
    """``M`` with ``Q(phi, psi) = psi^dagger M phi`` on Lambda^(p,q).

    ``hermitize=False`` returns the raw assembled matrix, useful for checking
    that it is Hermitian without help.
    """
    if hermitize:
        return _q_matrix_from(inst.Omega, inst.p, inst.q)
    return inst.hr_constant * (_top_pairing(inst.n, inst.p, inst.q) @ lefschetz_matrix(inst))


def _full_rank_verdict(mat: np.ndarray, tol: float | None) -> Verdict:
    if mat.shape[0] != mat.shape[1]:
        return Verdict(False, 0.0, {"shape": list(mat.shape)})
    if mat.size == 0:
        return Verdict(True, 1.0, {"size": 0})
    s = np.linalg.svd(mat, compute_uv=False)
    ratio = float(s[-1] / s[0]) if s[0] > 0 else 0.0
    return Verdict(ratio > global_tol(tol), ratio, {"size": int(mat.shape[0]), "sigma_max": float(s[0]),
                                                   "sigma_min": float(s[-1])})


def hl_holds(inst: Instance, tol: float | None = None) -> Verdict:
    """Hard Lefschetz: smallest/largest singular value of the Lefschetz matrix above tol."""
    return _full_rank_verdict(lefschetz_matrix(inst), tol)


def primitive_map(inst: Instance) -> np.ndarray:
    """Matrix of ``phi -> Omega ^ alpha_(m-p-q+1) ^ phi``; empty when p = 0 or q = 0."""
    return wedge_operator(inst.Omega_alpha, inst.p, inst.q)


@dataclass(frozen=True)
class PrimitiveSubspace:
    """Orthonormal kernel basis (columns of ``matrix``) of the primitive map."""

    n: int
    p: int
    q: int
    matrix: np.ndarray

    @property
    def dimension(self) -> int:
        return self.matrix.shape[1]

    @property
    def basis(self) -> list[Form]:
        return [Form(self.n, self.p, self.q, self.matrix[:, k]) for k in range(self.dimension)]

    @property
    def expected_dimension(self) -> int:
        return _dim(self.n, self.p, self.q) - _dim(self.n, self.p - 1, self.q - 1)


def primitive_subspace(inst: Instance, tol: float | None = None) -> PrimitiveSubspace:
    basis = null_space(primitive_map(inst), tol, ncols=inst.dimension)
    return PrimitiveSubspace(inst.n, inst.p, inst.q, basis)


@dataclass(frozen=True)
class GramReport:
    """Hermitian matrix of Q on some basis, with its spectrum and signature."""

    gram: np.ndarray
    eigenvalues: np.ndarray
    signature: tuple[int, int, int]
    hr_constant: complex
    verdict: Verdict

    @property
    def lambda_min(self) -> float:
        return float(self.eigenvalues[0]) if self.eigenvalues.size else float("inf")

    def to_json(self) -> dict:
        out = self.verdict.to_json()
        out["detail"] = dict(out["detail"], signature=list(self.signature),
                             eigenvalues=[float(x) for x in self.eigenvalues],
                             hr_constant=[self.hr_constant.real, self.hr_constant.imag])
        return out


def _gram_report(gram: np.ndarray, c: complex, tol: float | None, positive: bool) -> GramReport:
    gram = 0.5 * (gram + gram.conj().T)
    w = np.linalg.eigvalsh(gram) if gram.size else np.zeros(0)
    sig = signature(w, tol)
    scale = float(np.max(np.abs(w))) if w.size else 0.0
    if positive:
        margin = float(w[0] / scale) if scale > 0 else (1.0 if w.size == 0 else 0.0)
        holds = w.size == 0 or margin > global_tol(tol)
    else:
        margin = float(np.min(np.abs(w)) / scale) if scale > 0 else (1.0 if w.size == 0 else 0.0)
        holds = sig[2] == 0
    return GramReport(gram, w, sig, c, Verdict(bool(holds), margin, {"dimension": int(w.size)}))


def full_gram_report(inst: Instance, tol: float | None = None) -> GramReport:
    """Q on all of Lambda^(p,q); the verdict is non-degeneracy."""
    return _gram_report(q_matrix(inst), inst.hr_constant, tol, positive=False)


def verify_nondegeneracy(inst: Instance, tol: float | None = None) -> Verdict:
    return full_gram_report(inst, tol).verdict


def verify_hrr(inst: Instance, tol: float | None = None) -> GramReport:
    """Q restricted to the primitive subspace; holds iff lambda_min > tol * ||gram||."""
    prim = primitive_subspace(inst, tol).matrix
    gram = prim.conj().T @ q_matrix(inst) @ prim
    return _gram_report(gram, inst.hr_constant, tol, positive=True)


@dataclass(frozen=True)
class LDReport:
    precondition: Verdict
    dim_total: int
    dim_primitive: int
    dim_lower: int
    stacked_rank: int
    orthogonality_residual: float
    verdict: Verdict

    def to_json(self) -> dict:
        out = self.verdict.to_json()
        out["detail"] = dict(out["detail"], precondition=self.precondition.to_json(), dim_total=self.dim_total,
                             dim_primitive=self.dim_primitive, dim_lower=self.dim_lower,
                             stacked_rank=self.stacked_rank, orthogonality_residual=self.orthogonality_residual)
        return out


def verify_ld(inst: Instance, tol: float | None = None, ortho_tol: float = 1e-9) -> LDReport:
    """Primitive decomposition ``Lambda^(p,q) = P ⊕ alpha ^ Lambda^(p-1,q-1)``, Q-orthogonal.

    Checks trivial intersection via the rank of the stacked bases, integer
    dimension additivity, and ``max |Q(phi, alpha ^ psi)|`` relative to ``||M||``.
    """
    n, p, q = inst.n, inst.p, inst.q
    hl = hl_holds(inst, tol)
    if p >= 1 and q >= 1:
        a2 = wedge_power(inst.polarization.to_form(), 2)
        hl_lower = _full_rank_verdict(wedge_operator(wedge(inst.Omega, a2), p - 1, q - 1), tol)
    else:
        hl_lower = Verdict(True, 1.0, {"vacuous": True})
    pre = Verdict(hl.holds and hl_lower.holds, min(hl.margin, hl_lower.margin),
                  {"hl": hl.to_json(), "hl_lower": hl_lower.to_json()})

    dim_total = inst.dimension
    dim_lower = _dim(n, p - 1, q - 1)
    prim = primitive_subspace(inst, tol).matrix
    if dim_lower:
        image = wedge_operator(inst.polarization.to_form(), p - 1, q - 1)
        image = image / np.linalg.norm(image, axis=0, keepdims=True)
        stacked_rank = numerical_rank(np.hstack([prim, image]), tol)
        m_mat = q_matrix(inst)
        scale = float(np.linalg.norm(m_mat, 2)) or 1.0
        residual = float(np.max(np.abs(image.conj().T @ m_mat @ prim))) / scale if prim.size else 0.0
    else:
        stacked_rank = prim.shape[1]
        residual = 0.0
    additive = prim.shape[1] + dim_lower == dim_total
    independent = stacked_rank == prim.shape[1] + dim_lower
    holds = pre.holds and additive and independent and residual < ortho_tol
    verdict = Verdict(bool(holds), residual, {"additive": bool(additive), "independent": bool(independent)})
    return LDReport(pre, dim_total, prim.shape[1], dim_lower, stacked_rank, residual, verdict)


@dataclass(frozen=True)
class HomotopyReport:
    """One row per grid point: ``(t, signature, min |eigenvalue|, relative min |eigenvalue|)``."""

    rows: list
    verdict: Verdict

    def table(self) -> str:
        lines = ["t          pos  neg  zero  min|eig|      relative"]
        for t, sig, mn, rel in self.rows:
            lines.append(f"{t:<10.6f} {sig[0]:>4} {sig[1]:>4} {sig[2]:>5}  {mn:<12.6e}  {rel:.3e}")
        return "\n".join(lines)

    def to_json(self) -> dict:
        out = self.verdict.to_json()
        out["detail"] = dict(out["detail"], rows=[{"t": t, "signature": list(sig), "min_abs_eig": mn,
                                                   "relative": rel} for t, sig, mn, rel in self.rows])
        return out


def homotopy_sweep(inst: Instance, steps: int = 32, tol: float | None = None) -> HomotopyReport:
    """Signature of ``Q_t`` on ``P_t`` along ``alpha_j -> (1 - t) alpha_j + t omega``.

    Holds iff the signature is the same at every grid point and the smallest
    ``|eigenvalue|`` stays above ``tol`` times the largest at each of them.
    """
    if steps < 2:
        raise ValueError("steps must be >= 2")
    rows = []
    for t in np.linspace(0.0, 1.0, steps):
        report = verify_hrr(inst.deformed(float(t)), tol)
        w = report.eigenvalues
        mn = float(np.min(np.abs(w))) if w.size else float("inf")
        scale = float(np.max(np.abs(w))) if w.size else 1.0
        rows.append((float(t), report.signature, mn, mn / scale if scale > 0 else 0.0))
    sigs = {r[1] for r in rows}
    rel_min = min(r[3] for r in rows)
    holds = len(sigs) == 1 and rel_min > global_tol(tol)
    return HomotopyReport(rows, Verdict(bool(holds), float(rel_min), {"signatures": [list(s) for s in sigs]}))


@dataclass(frozen=True)
class LocalEstimate:
    """Constants with ``||phi||^2 <= c1 Q(phi, phi) + c2 ||Omega ^ alpha ^ phi||^2``."""

    c1: float
    c2: float
    certificate_min_eig: float
    verdict: Verdict

    def to_json(self) -> dict:
        out = self.verdict.to_json()
        out["detail"] = dict(out["detail"], c1=self.c1, c2=self.c2, certificate_min_eig=self.certificate_min_eig)
        return out


def _certificate(m_mat, ata, c1, c2) -> float:
    op = c1 * m_mat + c2 * ata - np.eye(m_mat.shape[0])
    return float(np.linalg.eigvalsh(0.5 * (op + op.conj().T))[0])


def minimal_c2(inst: Instance, c1: float, upper: float | None = None, rtol: float = 1e-10) -> float:
    """Smallest c2 (by bisection) making ``c1 M + c2 A^dagger A - I`` positive semidefinite.

    Returns ``inf`` when no c2 works for this c1.
    """
    m_mat = q_matrix(inst)
    amat = primitive_map(inst)
    ata = amat.conj().T @ amat if amat.size else np.zeros_like(m_mat)
    if _certificate(m_mat, ata, c1, 0.0) >= 0:
        return 0.0
    hi = 1.0 if upper is None else upper
    for _ in range(200):
        if _certificate(m_mat, ata, c1, hi) >= 0:
            break
        hi *= 2.0
    else:
        return float("inf")
    lo = 0.0
    while hi - lo > rtol * hi:
        mid = 0.5 * (lo + hi)
        if _certificate(m_mat, ata, c1, mid) >= 0:
            hi = mid
        else:
            lo = mid
    return hi


def local_estimate_constants(inst: Instance, tol: float | None = None) -> LocalEstimate:
    """Certified ``(c1, c2)`` for the coercivity estimate.

    With the decomposition ``phi = P x + R y`` (P primitive, R the image of
    alpha), Q-orthogonality gives ``c1 = 2 / lambda_min(Q|P)`` and
    ``c2 = (2 + c1 max(0, -lambda_min(Q|R))) / sigma_min(A R)^2``; c2 is then
    tightened by bisection for that c1.  The certificate is the smallest
    eigenvalue of ``c1 M + c2 A^dagger A - I``.
    """
    hrr = verify_hrr(inst, tol)
    if not hrr.verdict.holds:
        return LocalEstimate(float("nan"), float("nan"), float("nan"),
                             Verdict(False, float("nan"), {"precondition": "hrr failed"}))
    m_mat = q_matrix(inst)
    amat = primitive_map(inst)
    ata = amat.conj().T @ amat if amat.size else np.zeros_like(m_mat)
    c1 = 2.0 / hrr.lambda_min
    n, p, q = inst.n, inst.p, inst.q
    if _dim(n, p - 1, q - 1):
        rng_basis = orthonormal_range(wedge_operator(inst.polarization.to_form(), p - 1, q - 1), tol)
        mu = float(np.linalg.eigvalsh(rng_basis.conj().T @ m_mat @ rng_basis)[0])
        sigma = float(np.linalg.svd(amat @ rng_basis, compute_uv=False)[-1])
        c2_start = (2.0 + c1 * max(0.0, -mu)) / sigma**2
        c2 = minimal_c2(inst, c1, upper=c2_start, rtol=1e-6)
    else:
        c2_start = 1.0
        c2 = minimal_c2(inst, c1, upper=c2_start, rtol=1e-6)
    if c2 == 0.0:
        c2 = c2_start
    cert = _certificate(m_mat, ata, c1, c2)
    holds = np.isfinite(c2) and c1 > 0 and c2 > 0 and cert >= -global_tol(tol)
    return LocalEstimate(float(c1), float(c2), cert, Verdict(bool(holds), cert, {"c2_analytic": float(c2_start)}))


def local_estimate_violation(inst: Instance, est: LocalEstimate, samples: int = 10_000, seed=0) -> float:
    """Largest ``||phi||^2 - c1 Q(phi,phi) - c2 ||A phi||^2`` over random unit phi."""
    rng = as_rng(seed)
    d = inst.dimension
    phi = rng.standard_normal((d, samples)) + 1j * rng.standard_normal((d, samples))
    phi /= np.linalg.norm(phi, axis=0, keepdims=True)
    m_mat = q_matrix(inst)
    amat = primitive_map(inst)
    qv = np.real(np.sum(phi.conj() * (m_mat @ phi), axis=0))
    av = np.sum(np.abs(amat @ phi) ** 2, axis=0) if amat.size else np.zeros(samples)
    return float(np.max(1.0 - est.c1 * qv - est.c2 * av))


def is_lefschetz_form(omega_form: Form, p: int, q: int, tol: float | None = None) -> Verdict:
    """Whether ``phi -> Omega ^ phi`` is an isomorphism Lambda^(p,q) -> Lambda^(n-q,n-p)."""
    n = omega_form.n
    k = n - p - q
    if k < 0 or omega_form.bidegree != (k, k):
        raise DegreeError(f"a Lefschetz form for ({p},{q}) on C^{n} has bidegree ({k},{k}), got {omega_form.bidegree}")
    return _full_rank_verdict(wedge_operator(omega_form, p, q), tol)


def linear_path(start: Form, end: Form, steps: int) -> list[Form]:
    """Samples of ``(1 - t) start + t end`` on a uniform grid, endpoints included."""
    return [start * (1 - t) + end * t for t in np.linspace(0.0, 1.0, steps)]


def is_hodge_riemann_form(omega_form: Form, path: Sequence[Form], alpha, p: int, q: int,
                          tol: float | None = None) -> Verdict:
    """Lefschetz for (p, q) and, with ``alpha^2`` attached, for (p-1, q-1) at every path sample.

    ``path`` lists samples of a deformation starting at ``omega_form`` and
    ending at a product form ``omega^(n-m) ^ alpha_1 ^ ... ^ alpha_(m-p-q)``.
    """
    n = omega_form.n
    k = n - p - q
    if omega_form.bidegree != (k, k):
        raise DegreeError(f"expected a ({k},{k})-form, got {omega_form.bidegree}")
    path = list(path)
    if not path:
        path = [omega_form]
    if not path[0].allclose(omega_form, atol=1e-12, rtol=1e-10):
        raise ValueError("path must start at omega_form")
    a2 = wedge_power(_as_hermitian(alpha).to_form(), 2)
    margins = []
    failures = []
    for idx, form in enumerate(path):
        v0 = is_lefschetz_form(form, p, q, tol)
        margins.append(v0.margin)
        if not v0:
            failures.append({"sample": idx, "r": 0})
        if p >= 1 and q >= 1:
            v1 = _full_rank_verdict(wedge_operator(wedge(form, a2), p - 1, q - 1), tol)
            margins.append(v1.margin)
            if not v1:
                failures.append({"sample": idx, "r": 1})
    return Verdict(not failures, float(min(margins)), {"failures": failures, "samples": len(path)})
