"""Real (1,1)-forms as Hermitian matrices, and m-positivity relative to a Kahler form.

m-positivity is decided two independent ways: from the signs of the top-degree
scalars ``alpha^k ^ omega^(n-k)`` (wedge route), and from the elementary
symmetric functions of the eigenvalues of alpha relative to omega (spectral
route).  The two must agree; the test-suite checks that they do.
"""

from __future__ import annotations

import math

import numpy as np

from ._tol import global_tol
from .errors import DegreeError, DimensionError, NotKahlerError, RangeError
from .exterior import Form, extract, wedge, wedge_power
from .linalg import elementary_symmetric, jacobi_eigh
from .verdict import Verdict

__all__ = [
    "HermitianOneOneForm",
    "RelativeSpectrum",
    "relative_spectrum",
    "is_m_positive",
    "is_semipositive",
    "rank",
    "satisfies_theorem_hypotheses",
    "random_polarization",
    "random_kahler",
    "random_hermitian",
    "as_rng",
]

_HERMITIAN_ATOL = 1e-12


class HermitianOneOneForm:
    """The real (1,1)-form ``i * sum_{j,k} A_jk dz_j ^ dzbar_k`` for Hermitian ``A``."""

    __slots__ = ("n", "matrix", "_cache")

    def __init__(self, matrix):
        a = np.array(matrix, dtype=complex)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise DimensionError(f"expected a square matrix, got shape {a.shape}")
        scale = max(1.0, float(np.max(np.abs(a)))) if a.size else 1.0
        if a.size and np.max(np.abs(a - a.conj().T)) > _HERMITIAN_ATOL * scale:
            raise ValueError("matrix is not Hermitian")
        a = 0.5 * (a + a.conj().T)
        a.setflags(write=False)
        object.__setattr__(self, "n", a.shape[0])
        object.__setattr__(self, "matrix", a)
        # spectra are memoized per object; the matrix is read-only so they never go stale
        object.__setattr__(self, "_cache", {})

    def __setattr__(self, name, value):
        raise AttributeError("HermitianOneOneForm is immutable")

    def __reduce__(self):
        return (HermitianOneOneForm, (np.array(self.matrix),))

    @classmethod
    def identity(cls, n: int) -> "HermitianOneOneForm":
        return cls(np.eye(n))

    @classmethod
    def diagonal(cls, values) -> "HermitianOneOneForm":
        return cls(np.diag(np.asarray(values, dtype=float)))

    @classmethod
    def from_form(cls, form: Form) -> "HermitianOneOneForm":
        if form.bidegree != (1, 1):
            raise DegreeError(f"expected a (1,1)-form, got {form.bidegree}")
        return cls(form.coeffs / 1j)

    def to_form(self) -> Form:
        return Form(self.n, 1, 1, 1j * self.matrix)

    def congruence(self, p: np.ndarray) -> "HermitianOneOneForm":
        """Matrix congruence ``P^dagger A P``."""
        p = np.asarray(p, dtype=complex)
        return HermitianOneOneForm(p.conj().T @ self.matrix @ p)

    def pullback(self, w: np.ndarray) -> "HermitianOneOneForm":
        """The form in coordinates ``z = W u``; W may be rectangular (restriction)."""
        w = np.asarray(w, dtype=complex)
        return HermitianOneOneForm(w.T @ self.matrix @ w.conj())

    def __add__(self, other: "HermitianOneOneForm") -> "HermitianOneOneForm":
        if self.n != other.n:
            raise DimensionError(f"C^{self.n} vs C^{other.n}")
        return HermitianOneOneForm(self.matrix + other.matrix)

    def __sub__(self, other: "HermitianOneOneForm") -> "HermitianOneOneForm":
        if self.n != other.n:
            raise DimensionError(f"C^{self.n} vs C^{other.n}")
        return HermitianOneOneForm(self.matrix - other.matrix)

    def __mul__(self, c) -> "HermitianOneOneForm":
        c = float(c)
        return HermitianOneOneForm(c * self.matrix)

    __rmul__ = __mul__

    def __neg__(self) -> "HermitianOneOneForm":
        return HermitianOneOneForm(-self.matrix)

    def __eq__(self, other) -> bool:
        if not isinstance(other, HermitianOneOneForm):
            return NotImplemented
        return np.array_equal(self.matrix, other.matrix)

    __hash__ = None

    def allclose(self, other: "HermitianOneOneForm", atol: float = 1e-12) -> bool:
        return self.n == other.n and bool(np.allclose(self.matrix, other.matrix, atol=atol, rtol=0))

    def eigenvalues(self) -> np.ndarray:
        if "eig" not in self._cache:
            w = jacobi_eigh(self.matrix)[0]
            w.setflags(write=False)
            self._cache["eig"] = w
        return self._cache["eig"]

    def __repr__(self) -> str:
        return f"HermitianOneOneForm(n={self.n})"


def _as_hermitian(x) -> HermitianOneOneForm:
    if isinstance(x, HermitianOneOneForm):
        return x
    if isinstance(x, Form):
        return HermitianOneOneForm.from_form(x)
    return HermitianOneOneForm(x)


class RelativeSpectrum:
    """Eigenvalues of alpha relative to omega, sorted in decreasing order."""

    __slots__ = ("eigenvalues",)

    def __init__(self, eigenvalues):
        w = np.sort(np.asarray(eigenvalues, dtype=float))[::-1].copy()
        w.setflags(write=False)
        object.__setattr__(self, "eigenvalues", w)

    def __setattr__(self, name, value):
        raise AttributeError("RelativeSpectrum is immutable")

    @property
    def n(self) -> int:
        return len(self.eigenvalues)

    def elementary_symmetric(self, k: int) -> float:
        return float(elementary_symmetric(self.eigenvalues)[k])

    def normalized_symmetric(self) -> np.ndarray:
        """``e_k / C(n, k)`` for k = 0..n; equals ``extract(alpha^k ^ omega^(n-k)) / extract(omega^n)``."""
        e = elementary_symmetric(self.eigenvalues)
        return np.array([e[k] / math.comb(self.n, k) for k in range(self.n + 1)])

    def count_positive(self, tol: float | None = None) -> int:
        w = self.eigenvalues
        scale = float(np.max(np.abs(w))) if w.size else 0.0
        return int(np.sum(w > global_tol(tol) * scale))

    def __repr__(self) -> str:
        return f"RelativeSpectrum({np.array2string(self.eigenvalues, precision=6)})"


def _cholesky(omega: HermitianOneOneForm) -> np.ndarray:
    try:
        factor = np.linalg.cholesky(omega.matrix)
    except np.linalg.LinAlgError:
        raise NotKahlerError("reference form is not positive definite") from None
    d = np.abs(np.diag(factor))
    if d.size and d.min() <= 1e-14 * d.max():
        raise NotKahlerError("reference form is numerically singular")
    return factor


def relative_spectrum(alpha, omega) -> RelativeSpectrum:
    """Roots of ``det(alpha - lambda * omega) = 0`` with multiplicity.

    omega = L L^dagger is reduced to the identity by congruence with L^-1 and
    the resulting Hermitian matrix is diagonalised by Jacobi rotations.
    """
    alpha, omega = _as_hermitian(alpha), _as_hermitian(omega)
    if alpha.n != omega.n:
        raise DimensionError(f"C^{alpha.n} vs C^{omega.n}")
    key = ("rel", omega.matrix.tobytes())
    if key not in alpha._cache:
        lower = _cholesky(omega)
        inv = np.linalg.solve(lower, np.eye(omega.n))
        reduced = inv @ alpha.matrix @ inv.conj().T
        alpha._cache[key] = RelativeSpectrum(jacobi_eigh(reduced)[0])
    return alpha._cache[key]


def _check_m(m: int, n: int) -> None:
    if not 1 <= m <= n:
        raise RangeError(f"m must satisfy 1 <= m <= n = {n}, got {m}")


def mixed_volumes(alpha, omega, m: int) -> np.ndarray:
    """``extract(alpha^k ^ omega^(n-k)) / extract(omega^n)`` for k = 1..m, by wedging."""
    alpha, omega = _as_hermitian(alpha), _as_hermitian(omega)
    n = omega.n
    a, w = alpha.to_form(), omega.to_form()
    w_pows = [wedge_power(w, 0)]
    for _ in range(n):
        w_pows.append(wedge(w_pows[-1], w))
    volume = extract(w_pows[n]).real
    out = []
    a_pow = wedge_power(a, 0)
    for k in range(1, m + 1):
        a_pow = wedge(a_pow, a)
        out.append(extract(wedge(a_pow, w_pows[n - k])).real / volume)
    return np.array(out)


def is_m_positive(alpha, omega, m: int, tol: float | None = None, method: str = "wedge") -> Verdict:
    """Whether ``alpha^k ^ omega^(n-k) > 0`` for every k = 1..m.

    The margin is ``min_k extract(alpha^k ^ omega^(n-k)) / extract(omega^n)``.
    ``method="spectral"`` computes the same quantities as
    ``e_k(relative spectrum) / C(n, k)`` instead of wedging.
    """
    alpha, omega = _as_hermitian(alpha), _as_hermitian(omega)
    _check_m(m, omega.n)
    _cholesky(omega)
    if method == "wedge":
        values = mixed_volumes(alpha, omega, m)
    elif method == "spectral":
        values = relative_spectrum(alpha, omega).normalized_symmetric()[1 : m + 1]
    else:
        raise ValueError(f"unknown method {method!r}")
    margin = float(values.min())
    return Verdict(margin > global_tol(tol), margin, {"normalized": values.tolist(), "method": method})


def _spectral_scale(w: np.ndarray) -> float:
    return float(np.max(np.abs(w))) if w.size else 0.0


def is_semipositive(alpha, tol: float | None = None) -> bool:
    """Smallest eigenvalue >= -tol * spectral norm."""
    w = _as_hermitian(alpha).eigenvalues()
    return bool(w.size == 0 or w[0] >= -global_tol(tol) * _spectral_scale(w))


def rank(alpha, tol: float | None = None) -> int:
    """Number of eigenvalues above tol * spectral norm."""
    w = _as_hermitian(alpha).eigenvalues()
    return int(np.sum(w > global_tol(tol) * _spectral_scale(w)))


def satisfies_theorem_hypotheses(alpha, omega, m: int, tol: float | None = None) -> bool:
    """Semipositive with at least m positive eigenvalues (relative to omega)."""
    alpha, omega = _as_hermitian(alpha), _as_hermitian(omega)
    _check_m(m, omega.n)
    if not is_semipositive(alpha, tol):
        return False
    return relative_spectrum(alpha, omega).count_positive(tol) >= m


def as_rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def _complex_gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def random_hermitian(n: int, seed=None, scale: float = 1.0) -> HermitianOneOneForm:
    rng = as_rng(seed)
    g = _complex_gaussian(rng, (n, n))
    return HermitianOneOneForm(scale * (g + g.conj().T) / 2.0)


def random_kahler(n: int, seed=None) -> HermitianOneOneForm:
    """A random positive-definite form with eigenvalues bounded away from 0."""
    rng = as_rng(seed)
    g = _complex_gaussian(rng, (n, n))
    return HermitianOneOneForm(g @ g.conj().T / n + 0.25 * np.eye(n))


def random_polarization(n: int, m: int, margin: float = 1e-6, seed=None, omega=None,
                        rank: int | None = None, max_tries: int = 1000) -> HermitianOneOneForm:
    """A random ``B B^dagger`` of rank r >= m with ``e_m`` of the relative spectrum >= margin.

    B is n x r with complex Gaussian entries; r is drawn from [m, n] unless
    given.  Draws are rejected until the margin holds.  ``omega`` defaults to
    the identity.
    """
    _check_m(m, n)
    if margin <= 0:
        raise ValueError("margin must be positive")
    rng = as_rng(seed)
    omega = HermitianOneOneForm.identity(n) if omega is None else _as_hermitian(omega)
    for _ in range(max_tries):
        r = int(rng.integers(m, n + 1)) if rank is None else rank
        if not m <= r <= n:
            raise RangeError(f"rank {r} outside [{m}, {n}]")
        b = _complex_gaussian(rng, (n, r))
        alpha = HermitianOneOneForm(b @ b.conj().T)
        if relative_spectrum(alpha, omega).elementary_symmetric(m) >= margin:
            return alpha
    raise RuntimeError(f"no polarization with e_{m} >= {margin} after {max_tries} draws")
