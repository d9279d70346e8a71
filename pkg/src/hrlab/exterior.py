"""Constant-coefficient complex (p, q)-forms on C^n.

A form is stored densely as a ``C(n, p) x C(n, q)`` complex array whose
``[I, J]`` entry is the coefficient of ``dz_I ^ dzbar_J``.  Multi-indices are
strictly increasing tuples of 1-based integers and are ranked
lexicographically; flattening the array row-major therefore gives the
canonical (I, J) ordering used by every matrix in the package.

All dz factors are written before all dzbar factors.  Products whose total
holomorphic or antiholomorphic degree exceeds ``n`` live in a zero-dimensional
space, so they are represented by an empty coefficient array rather than an
error.
"""

from __future__ import annotations

import math
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import DegreeError, DimensionError

__all__ = [
    "Form",
    "multi_indices",
    "index_of",
    "permutation_sign",
    "monomial",
    "zero_form",
    "basis_of",
    "wedge",
    "wedge_operator",
    "wedge_power",
    "conjugate",
    "extract",
    "inner_product",
    "norm",
    "volume_form",
    "kahler_form",
    "gamma_coefficient",
    "from_terms",
]


@lru_cache(maxsize=None)
def multi_indices(n: int, k: int) -> tuple[tuple[int, ...], ...]:
    """All strictly increasing k-tuples from 1..n in lexicographic order."""
    if k < 0 or k > n:
        return ()
    return tuple(tuple(i + 1 for i in c) for c in combinations(range(n), k))


@lru_cache(maxsize=None)
def _rank_table(n: int, k: int) -> dict[tuple[int, ...], int]:
    return {idx: r for r, idx in enumerate(multi_indices(n, k))}


def index_of(n: int, indices: Sequence[int]) -> int:
    """Lexicographic rank of a strictly increasing multi-index."""
    key = tuple(indices)
    try:
        return _rank_table(n, len(key))[key]
    except KeyError:
        raise DimensionError(f"{key} is not a strictly increasing multi-index in 1..{n}") from None


def permutation_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation sorting ``seq``; 0 if it has a repeated entry."""
    seq = list(seq)
    if len(set(seq)) != len(seq):
        return 0
    inversions = sum(1 for a in range(len(seq)) for b in range(a + 1, len(seq)) if seq[a] > seq[b])
    return -1 if inversions % 2 else 1


def _dim(n: int, k: int) -> int:
    return math.comb(n, k) if 0 <= k <= n else 0


class Form:
    """A complex (p, q)-form on C^n with constant coefficients.

    Instances are immutable; arithmetic returns new forms.  ``a ^ b`` is the
    wedge product.
    """

    __slots__ = ("n", "p", "q", "coeffs")

    def __init__(self, n: int, p: int, q: int, coeffs=None):
        if n < 0 or p < 0 or q < 0:
            raise DimensionError(f"invalid bidegree ({p}, {q}) on C^{n}")
        shape = (_dim(n, p), _dim(n, q))
        if coeffs is None:
            arr = np.zeros(shape, dtype=complex)
        else:
            arr = np.array(coeffs, dtype=complex)
            if arr.size == shape[0] * shape[1]:
                arr = arr.reshape(shape)
            if arr.shape != shape:
                raise DimensionError(
                    f"coefficient array of shape {arr.shape} does not fit a ({p},{q})-form on C^{n}; "
                    f"expected {shape}"
                )
        arr.setflags(write=False)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "coeffs", arr)

    def __setattr__(self, name, value):
        raise AttributeError("Form is immutable")

    @property
    def bidegree(self) -> tuple[int, int]:
        return (self.p, self.q)

    @property
    def degree(self) -> int:
        return self.p + self.q

    @property
    def flat(self) -> np.ndarray:
        return self.coeffs.reshape(-1)

    @property
    def dim(self) -> int:
        return self.coeffs.size

    def coefficient(self, I: Sequence[int], J: Sequence[int]) -> complex:
        return complex(self.coeffs[index_of(self.n, I), index_of(self.n, J)])

    def terms(self, atol: float = 0.0) -> Iterable[tuple[tuple[int, ...], tuple[int, ...], complex]]:
        """Yield ``(I, J, coefficient)`` for every slot with ``|c| > atol``."""
        rows = multi_indices(self.n, self.p)
        cols = multi_indices(self.n, self.q)
        for a, b in zip(*np.nonzero(np.abs(self.coeffs) > atol)):
            yield rows[a], cols[b], complex(self.coeffs[a, b])

    def _check_same_space(self, other: "Form") -> None:
        if not isinstance(other, Form):
            raise TypeError(f"expected Form, got {type(other).__name__}")
        if (self.n, self.p, self.q) != (other.n, other.p, other.q):
            raise DimensionError(
                f"({self.p},{self.q})-form on C^{self.n} vs ({other.p},{other.q})-form on C^{other.n}"
            )

    def __add__(self, other: "Form") -> "Form":
        self._check_same_space(other)
        return Form(self.n, self.p, self.q, self.coeffs + other.coeffs)

    def __sub__(self, other: "Form") -> "Form":
        self._check_same_space(other)
        return Form(self.n, self.p, self.q, self.coeffs - other.coeffs)

    def __neg__(self) -> "Form":
        return Form(self.n, self.p, self.q, -self.coeffs)

    def __mul__(self, scalar) -> "Form":
        if isinstance(scalar, Form):
            return NotImplemented
        return Form(self.n, self.p, self.q, self.coeffs * complex(scalar))

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "Form":
        return Form(self.n, self.p, self.q, self.coeffs / complex(scalar))

    def __xor__(self, other: "Form") -> "Form":
        return wedge(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Form):
            return NotImplemented
        return (self.n, self.p, self.q) == (other.n, other.p, other.q) and np.array_equal(
            self.coeffs, other.coeffs
        )

    __hash__ = None

    def allclose(self, other: "Form", atol: float = 1e-12, rtol: float = 1e-12) -> bool:
        self._check_same_space(other)
        return bool(np.allclose(self.coeffs, other.coeffs, atol=atol, rtol=rtol))

    def is_zero(self, atol: float = 0.0) -> bool:
        return bool(np.all(np.abs(self.coeffs) <= atol))

    def __repr__(self) -> str:
        nz = sum(1 for _ in self.terms())
        return f"Form(n={self.n}, p={self.p}, q={self.q}, nonzero={nz})"


def zero_form(n: int, p: int, q: int) -> Form:
    return Form(n, p, q)


def monomial(n: int, I: Sequence[int], J: Sequence[int], coeff: complex = 1.0) -> Form:
    """``coeff * dz_I ^ dzbar_J`` with I, J in any order (reordering sign applied).

    A repeated index gives the zero form.
    """
    I, J = tuple(I), tuple(J)
    for idx in I + J:
        if not 1 <= idx <= n:
            raise DimensionError(f"index {idx} outside 1..{n}")
    out = np.zeros((_dim(n, len(I)), _dim(n, len(J))), dtype=complex)
    sign = permutation_sign(I) * permutation_sign(J)
    if sign and out.size:
        out[index_of(n, sorted(I)), index_of(n, sorted(J))] = sign * coeff
    return Form(n, len(I), len(J), out)


def basis_of(n: int, p: int, q: int) -> list[Form]:
    """Unit basis of the (p, q)-forms in canonical order; C(n,p)*C(n,q) elements."""
    size = _dim(n, p) * _dim(n, q)
    eye = np.eye(size, dtype=complex)
    return [Form(n, p, q, eye[k]) for k in range(size)]


@lru_cache(maxsize=None)
def _merge_table(n: int, a: int, c: int) -> tuple[np.ndarray, np.ndarray]:
    """Target rank and sign of ``d_I ^ d_K`` for |I| = a, |K| = c (-1/0 when they overlap)."""
    left, right = multi_indices(n, a), multi_indices(n, c)
    target = np.full((len(left), len(right)), -1, dtype=np.intp)
    sign = np.zeros((len(left), len(right)), dtype=np.int8)
    if a + c > n:
        return target, sign
    ranks = _rank_table(n, a + c)
    for i, I in enumerate(left):
        for k, K in enumerate(right):
            s = permutation_sign(I + K)
            if s:
                target[i, k] = ranks[tuple(sorted(I + K))]
                sign[i, k] = s
    return target, sign


@lru_cache(maxsize=None)
def _wedge_structure(n: int, a: int, b: int, c: int, d: int):
    """Sparse structure constants of Lambda^{a,b} x Lambda^{c,d} -> Lambda^{a+c,b+d}.

    Returns flat indices ``(x_idx, y_idx, out_idx)`` and signs such that
    ``(x ^ y)[out] += sign * x[x_idx] * y[y_idx]``.
    """
    hol_t, hol_s = _merge_table(n, a, c)
    anti_t, anti_s = _merge_table(n, b, d)
    dim_b, dim_d, dim_tb = _dim(n, b), _dim(n, d), _dim(n, b + d)
    # moving dz_K past dzbar_J
    cross = -1 if (b * c) % 2 else 1

    valid = (hol_t[:, None, :, None] >= 0) & (anti_t[None, :, None, :] >= 0)
    iI, iJ, iK, iL = np.nonzero(valid)
    x_idx = iI * dim_b + iJ
    y_idx = iK * dim_d + iL
    out_idx = hol_t[iI, iK] * dim_tb + anti_t[iJ, iL]
    sign = cross * hol_s[iI, iK].astype(float) * anti_s[iJ, iL]
    for arr in (x_idx, y_idx, out_idx, sign):
        arr.setflags(write=False)
    return x_idx, y_idx, out_idx, sign


def wedge_operator(x: Form, c: int, d: int) -> np.ndarray:
    """Matrix of ``y -> x ^ y`` from (c, d)-forms to (x.p + c, x.q + d)-forms.

    Rows and columns follow the canonical flat ordering of each space.
    """
    n = x.n
    x_idx, y_idx, out_idx, sign = _wedge_structure(n, x.p, x.q, c, d)
    rows = _dim(n, x.p + c) * _dim(n, x.q + d)
    cols = _dim(n, c) * _dim(n, d)
    mat = np.zeros((rows, cols), dtype=complex)
    if len(out_idx):
        np.add.at(mat, (out_idx, y_idx), sign * x.flat[x_idx])
    return mat


def wedge(a: Form, b: Form) -> Form:
    """Exterior product ``a ^ b`` in canonical form."""
    if a.n != b.n:
        raise DimensionError(f"cannot wedge forms on C^{a.n} and C^{b.n}")
    n, p, q = a.n, a.p + b.p, a.q + b.q
    x_idx, y_idx, out_idx, sign = _wedge_structure(n, a.p, a.q, b.p, b.q)
    size = _dim(n, p) * _dim(n, q)
    out = np.zeros(size, dtype=complex)
    if len(out_idx):
        np.add.at(out, out_idx, sign * a.flat[x_idx] * b.flat[y_idx])
    return Form(n, p, q, out)


def wedge_power(a: Form, k: int) -> Form:
    """``a^k``; the zeroth power is the constant 1."""
    if k < 0:
        raise ValueError("negative wedge power")
    out = Form(a.n, 0, 0, [[1.0]])
    for _ in range(k):
        out = wedge(out, a)
    return out


def conjugate(a: Form) -> Form:
    """Complex conjugate; a (p, q)-form becomes a (q, p)-form.

    conj(c dz_I ^ dzbar_J) = conj(c) dzbar_I ^ dz_J = (-1)^{pq} conj(c) dz_J ^ dzbar_I.
    """
    sign = -1.0 if (a.p * a.q) % 2 else 1.0
    return Form(a.n, a.q, a.p, sign * np.conj(a.coeffs).T)


def gamma_coefficient(n: int) -> complex:
    """Coefficient of dz_{1..n} ^ dzbar_{1..n} in the reference volume form."""
    # (i dz_1 ^ dzbar_1) ^ ... ^ (i dz_n ^ dzbar_n) = i^n (-1)^{n(n-1)/2} dz_{1..n} ^ dzbar_{1..n}
    return (1j ** n) * (-1) ** (n * (n - 1) // 2)


def volume_form(n: int) -> Form:
    """The reference volume form, the wedge of i dz_j ^ dzbar_j over j = 1..n."""
    return Form(n, n, n, [[gamma_coefficient(n)]])


def kahler_form(n: int, diag: Sequence[float] | None = None) -> Form:
    """``i * sum_j diag_j dz_j ^ dzbar_j``; the standard Kahler form when ``diag`` is omitted."""
    weights = np.ones(n) if diag is None else np.asarray(diag, dtype=float)
    return Form(n, 1, 1, 1j * np.diag(weights).astype(complex))


def extract(a: Form) -> complex:
    """The scalar lambda with ``a = lambda * volume_form(n)``; requires bidegree (n, n)."""
    if a.p != a.n or a.q != a.n:
        raise DegreeError(f"extract needs an ({a.n},{a.n})-form, got ({a.p},{a.q})")
    return complex(a.coeffs[0, 0] / gamma_coefficient(a.n))


def inner_product(a: Form, b: Form) -> complex:
    """``<a, b> = sum_{I,J} a_IJ * conj(b_IJ)``."""
    a._check_same_space(b)
    return complex(np.vdot(b.flat, a.flat))


def norm(a: Form) -> float:
    return float(np.linalg.norm(a.flat))


def from_terms(n: int, p: int, q: int, terms: Mapping[tuple[tuple[int, ...], tuple[int, ...]], complex]) -> Form:
    """Build a form from ``{(I, J): coeff}``; keys may be unsorted."""
    out = zero_form(n, p, q)
    for (I, J), c in terms.items():
        if len(I) != p or len(J) != q:
            raise DegreeError(f"term {(I, J)} is not of bidegree ({p},{q})")
        out = out + monomial(n, I, J, c)
    return out
