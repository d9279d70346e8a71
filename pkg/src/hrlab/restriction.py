"""Restriction of forms to complex hyperplanes, and the objects built from it.

A hyperplane is ``H_v = {z : v . z = 0}`` with the bilinear product
``v . z = sum_i v_i z_i``.  Restriction completes ``v`` to a unitary coordinate
system ``z = W u`` whose last coordinate is ``u_n = v . z``; the restricted
form is the pullback along the first ``n - 1`` columns of ``W``, i.e. every
term containing ``dH`` or ``dH-bar`` is dropped.  Because ``W`` is unitary
the reference volume forms on C^n and on H match with no extra factor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

import numpy as np

from ._tol import global_tol
from .errors import DimensionError, RangeError
from .exterior import Form, extract, gamma_coefficient, wedge, wedge_operator, wedge_power
from .linalg import jacobi_eigh
from .positivity import HermitianOneOneForm, _as_hermitian, as_rng

__all__ = [
    "Hyperplane",
    "DegeneracyLocus",
    "AvoidingBasis",
    "unitary_completion",
    "compound_matrix",
    "restrict",
    "hyperplane_form",
    "restriction_identity_sides",
    "restriction_identity_residual",
    "restriction_identity_scale",
    "degeneracy_locus",
    "avoid_hyperplanes_basis",
    "frame_identity_check",
]


class Hyperplane:
    """``H_v`` for a nonzero covector ``v``, stored at unit Euclidean length."""

    __slots__ = ("v",)

    def __init__(self, v):
        v = np.array(v, dtype=complex).reshape(-1)
        length = np.linalg.norm(v)
        if v.size == 0 or length == 0.0:
            raise ValueError("a hyperplane needs a nonzero defining vector")
        v = v / length
        v.setflags(write=False)
        object.__setattr__(self, "v", v)

    def __setattr__(self, name, value):
        raise AttributeError("Hyperplane is immutable")

    @property
    def n(self) -> int:
        return self.v.size

    @classmethod
    def coordinate(cls, n: int, j: int) -> "Hyperplane":
        """``{z_j = 0}`` for 1-based ``j``."""
        v = np.zeros(n)
        v[j - 1] = 1.0
        return cls(v)

    @classmethod
    def random(cls, n: int, seed=None) -> "Hyperplane":
        rng = as_rng(seed)
        return cls(rng.standard_normal(n) + 1j * rng.standard_normal(n))

    def contains(self, z, tol: float = 1e-12) -> bool:
        z = np.asarray(z, dtype=complex)
        return abs(self.v @ z) <= tol * max(1.0, float(np.linalg.norm(z)))

    def __repr__(self) -> str:
        return f"Hyperplane(n={self.n})"


def unitary_completion(v) -> np.ndarray:
    """Unitary ``W`` whose last column is ``conj(v)``.

    Built from a Householder reflection sending ``e_n`` to a phase multiple of
    ``conj(v)``; in the coordinates ``z = W u`` the last coordinate is
    ``u_n = v . z``.
    """
    v = np.asarray(v.v if isinstance(v, Hyperplane) else v, dtype=complex)
    v = v / np.linalg.norm(v)
    n = v.size
    target = v.conj()
    last = target[-1]
    phase = np.conj(last) / abs(last) if abs(last) > 0 else 1.0
    x = np.zeros(n, dtype=complex)
    x[-1] = 1.0
    x = x - phase * target
    xx = np.vdot(x, x).real
    reflect = np.eye(n, dtype=complex)
    if xx > 1e-30:
        reflect = reflect - 2.0 * np.outer(x, x.conj()) / xx
    reflect[:, -1] *= np.conj(phase)
    return reflect


def compound_matrix(mat: np.ndarray, k: int) -> np.ndarray:
    """k-th compound: the ``[I, A]`` entry is the minor ``det(mat[I, A])``, lexicographic order."""
    mat = np.asarray(mat, dtype=complex)
    if k == 0:
        return np.ones((1, 1), dtype=complex)
    rows = np.array(list(combinations(range(mat.shape[0]), k)), dtype=int).reshape(-1, k)
    cols = np.array(list(combinations(range(mat.shape[1]), k)), dtype=int).reshape(-1, k)
    if rows.shape[0] == 0 or cols.shape[0] == 0:
        return np.zeros((rows.shape[0], cols.shape[0]), dtype=complex)
    # all minors at once: blocks[a, b] = mat[rows[a]][:, cols[b]]
    blocks = mat[rows[:, None, :, None], cols[None, :, None, :]]
    return np.linalg.det(blocks)


def restrict(form, h: Hyperplane):
    """Restriction to ``h`` as a form on C^(n-1).

    Accepts a ``Form`` or a ``HermitianOneOneForm`` and returns the same kind.
    A (p, q)-form with p or q equal to n restricts to the zero space.
    """
    if isinstance(form, HermitianOneOneForm):
        _check_dims(form.n, h)
        return form.pullback(unitary_completion(h)[:, :-1])
    if not isinstance(form, Form):
        raise TypeError(f"cannot restrict {type(form).__name__}")
    _check_dims(form.n, h)
    frame = unitary_completion(h)[:, :-1]
    hol = compound_matrix(frame, form.p) if form.p <= form.n - 1 else np.zeros((form.coeffs.shape[0], 0))
    anti = compound_matrix(frame, form.q) if form.q <= form.n - 1 else np.zeros((form.coeffs.shape[1], 0))
    return Form(form.n - 1, form.p, form.q, hol.T @ form.coeffs @ anti.conj())


def _check_dims(n: int, h: Hyperplane) -> None:
    if n < 2:
        raise DimensionError("restriction needs n >= 2")
    if h.n != n:
        raise DimensionError(f"hyperplane in C^{h.n} applied to a form on C^{n}")


def hyperplane_form(v) -> HermitianOneOneForm:
    """``i dH_v ^ dH_v-bar`` with ``H_v(z) = v . z`` (v used as given, not normalized)."""
    v = np.asarray(v.v if isinstance(v, Hyperplane) else v, dtype=complex)
    return HermitianOneOneForm(np.outer(v, v.conj()))


def restriction_identity_sides(alpha, omega, k: int, h: Hyperplane) -> tuple[complex, complex]:
    """Both sides of the hyperplane restriction identity.

    Left: ``extract_n(alpha^k ^ omega^(n-k-1) ^ i dH ^ dH-bar)``, computed on C^n.
    Right: ``extract_(n-1)(alpha|H^k ^ omega|H^(n-k-1))``, computed on H.
    """
    alpha, omega = _as_hermitian(alpha), _as_hermitian(omega)
    n = omega.n
    if not 1 <= k <= n - 1:
        raise RangeError(f"k must satisfy 1 <= k <= n - 1 = {n - 1}, got {k}")
    _check_dims(n, h)
    a, w = alpha.to_form(), omega.to_form()
    lhs = extract(wedge(wedge(wedge_power(a, k), wedge_power(w, n - k - 1)), hyperplane_form(h).to_form()))
    ra, rw = restrict(a, h), restrict(w, h)
    rhs = extract(wedge(wedge_power(ra, k), wedge_power(rw, n - k - 1)))
    return lhs, rhs


def restriction_identity_scale(alpha, omega, k: int) -> float:
    """Natural size of either side: ``(n-1)! * rho(alpha)^k * rho(omega)^(n-k-1)``.

    rho is the spectral radius.  Both sides are (n-1)! times a mixed
    discriminant, which is controlled by this product, so dividing by it
    gives a residual that does not depend on how the inputs are scaled.
    """
    alpha, omega = _as_hermitian(alpha), _as_hermitian(omega)
    n = omega.n
    ra = float(np.max(np.abs(alpha.eigenvalues())))
    rw = float(np.max(np.abs(omega.eigenvalues())))
    return math.factorial(n - 1) * ra**k * rw ** (n - k - 1)


def restriction_identity_residual(alpha, omega, k: int, h: Hyperplane, relative: bool = False) -> float:
    """``|lhs - rhs|`` of :func:`restriction_identity_sides`.

    With ``relative=True`` the difference is divided by
    :func:`restriction_identity_scale` (a zero alpha gives residual 0).
    """
    lhs, rhs = restriction_identity_sides(alpha, omega, k, h)
    diff = float(abs(lhs - rhs))
    if not relative:
        return diff
    scale = restriction_identity_scale(alpha, omega, k)
    return diff / scale if scale > 0 else diff


@dataclass(frozen=True)
class DegeneracyLocus:
    """The Hermitian matrix of ``v -> alpha^m ^ omega^(n-m-1) ^ i dH_v ^ dH_v-bar`` and its kernel.

    ``gram`` satisfies ``quadratic(v) = v^dagger gram v``.  The kernel is the
    subspace S(alpha) of directions whose hyperplane restriction can lose
    m-positivity.
    """

    gram: np.ndarray
    kernel_basis: np.ndarray
    eigenvalues: np.ndarray
    threshold: float

    @property
    def n(self) -> int:
        return self.gram.shape[0]

    @property
    def kernel_dimension(self) -> int:
        return self.kernel_basis.shape[1]

    def quadratic(self, v) -> float:
        v = np.asarray(v.v if isinstance(v, Hyperplane) else v, dtype=complex)
        return float(np.real(np.vdot(v, self.gram @ v)))

    def contains(self, v) -> bool:
        """Membership in S(alpha): ``v^dagger gram v <= 1e-10 * trace(gram)`` for unit v."""
        v = np.asarray(v.v if isinstance(v, Hyperplane) else v, dtype=complex)
        v = v / np.linalg.norm(v)
        return self.quadratic(v) <= self.threshold * float(np.real(np.trace(self.gram)))

    def is_semipositive(self) -> bool:
        scale = float(np.max(np.abs(self.eigenvalues))) if self.eigenvalues.size else 0.0
        return bool(self.eigenvalues[0] >= -self.threshold * scale)


def degeneracy_locus(alpha, omega, m: int, tol: float | None = None) -> DegeneracyLocus:
    alpha, omega = _as_hermitian(alpha), _as_hermitian(omega)
    n = omega.n
    if not 1 <= m <= n - 1:
        raise RangeError(f"degeneracy locus needs 1 <= m <= n - 1 = {n - 1}, got {m}")
    top = wedge(wedge_power(alpha.to_form(), m), wedge_power(omega.to_form(), n - m - 1))
    # phi[i, j] = extract(top ^ i dz_i ^ dzbar_j)
    op = wedge_operator(top, 1, 1)
    phi = (1j * op[0] / gamma_coefficient(n)).reshape(n, n)
    gram = 0.5 * (phi.T + phi.conj())
    w, vecs = jacobi_eigh(gram)
    threshold = global_tol(tol)
    cut = threshold * float(np.real(np.trace(gram)))
    kernel = vecs[:, w <= cut]
    return DegeneracyLocus(gram=gram, kernel_basis=kernel, eigenvalues=w, threshold=threshold)


@dataclass(frozen=True)
class AvoidingBasis:
    """An orthonormal basis (columns of ``vectors``) avoiding a set of hyperplanes."""

    vectors: np.ndarray
    orthonormality_residual: float
    margin: float
    step_margins: tuple[float, ...]

    def __iter__(self):
        return iter(self.vectors.T)


def _avoidance_margins(covectors: np.ndarray, frame: np.ndarray, c: np.ndarray) -> float:
    """Smallest score of the candidate ``e = frame @ c``.

    Two requirements per covector: ``v . e != 0`` and the restriction of ``v``
    to the orthogonal complement of ``e`` inside the current subspace stays
    nonzero.  Both are measured on unit scale.
    """
    if covectors.shape[0] == 0:
        return 1.0
    restricted = covectors @ frame
    hit = np.abs(restricted @ c) / np.linalg.norm(restricted, axis=1)
    if frame.shape[1] == 1:
        return float(hit.min())
    # hit == 1 exactly when c is parallel to conj(restricted covector)
    spread = np.sqrt(np.clip(1.0 - hit**2, 0.0, None))
    return float(min(hit.min(), spread.min()))


def avoid_hyperplanes_basis(hyperplanes: Sequence[Hyperplane], n: int | None = None, seed=0,
                            min_margin: float = 1e-6, max_tries: int = 10000) -> AvoidingBasis:
    """Orthonormal basis ``e_1..e_n`` with ``v_j . e_i != 0`` for every pair.

    Follows the inductive construction: choose ``e_1`` off every hyperplane
    and off every line ``C v_j``, then repeat inside the orthogonal complement
    of the vectors chosen so far.  At each step the all-ones direction of the
    current subspace is tried first, then seeded random directions; the first
    candidate whose margin exceeds ``min_margin`` is accepted (otherwise the
    best one seen).
    """
    hyperplanes = list(hyperplanes)
    if n is None:
        if not hyperplanes:
            raise ValueError("n is required when no hyperplanes are given")
        n = hyperplanes[0].n
    for h in hyperplanes:
        if h.n != n:
            raise DimensionError(f"hyperplane in C^{h.n} for a basis of C^{n}")
    covectors = np.array([h.v for h in hyperplanes], dtype=complex).reshape(len(hyperplanes), n)
    rng = as_rng(seed)

    frame = np.eye(n, dtype=complex)
    chosen = []
    step_margins = []
    for _ in range(n):
        d = frame.shape[1]
        best_c, best_score = None, -1.0
        candidate = np.ones(d, dtype=complex) / np.sqrt(d)
        for _attempt in range(max_tries):
            score = _avoidance_margins(covectors, frame, candidate)
            if score > best_score:
                best_c, best_score = candidate, score
            if score > min_margin:
                break
            g = rng.standard_normal(d) + 1j * rng.standard_normal(d)
            candidate = g / np.linalg.norm(g)
        e = frame @ best_c
        chosen.append(e)
        step_margins.append(best_score)
        if d > 1:
            # orthonormal basis of the complement of best_c inside the current frame
            complement = unitary_completion(best_c.conj())[:, :-1]
            frame = frame @ complement

    vectors = np.array(chosen).T
    residual = float(np.linalg.norm(vectors.conj().T @ vectors - np.eye(n)))
    if covectors.shape[0]:
        margin = float(np.min(np.abs(covectors @ vectors)))
    else:
        margin = 1.0
    return AvoidingBasis(vectors=vectors, orthonormality_residual=residual, margin=margin,
                         step_margins=tuple(step_margins))


def frame_identity_check(basis) -> float:
    """Frobenius distance between ``i sum_j dH_(e_j) ^ dH_(e_j)-bar`` and the standard form."""
    if isinstance(basis, AvoidingBasis):
        vectors = basis.vectors
    elif isinstance(basis, np.ndarray):
        vectors = basis.astype(complex)
    else:
        # a sequence of vectors
        vectors = np.array([np.asarray(e, dtype=complex) for e in basis]).T
    n = vectors.shape[0]
    total = sum(hyperplane_form(vectors[:, j]).matrix for j in range(vectors.shape[1]))
    return float(np.linalg.norm(total - np.eye(n)))
