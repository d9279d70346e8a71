"""Small dense Hermitian kernels: Jacobi eigensolver, rank, kernel, signature."""

from __future__ import annotations

import math

import numpy as np

from ._tol import global_tol


def hermitian_part(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    return 0.5 * (a + a.conj().T)


def off_diagonal_mass(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.linalg.norm(off))


def jacobi_eigh(a, tol: float = 1e-12, max_sweeps: int = 100) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a Hermitian matrix by cyclic complex Jacobi rotations.

    Sweeps until the off-diagonal Frobenius mass falls below ``tol`` times the
    Frobenius norm, then runs one polishing sweep.  Returns ascending real
    eigenvalues and a unitary matrix of column eigenvectors.

    Works on Python lists: for the n <= 8 matrices used here the per-rotation
    cost of numpy slicing dominates the arithmetic.
    """
    a = hermitian_part(a)
    n = a.shape[0]
    scale = float(np.linalg.norm(a))
    if n < 2 or scale == 0.0:
        w = np.real(np.diag(a)).copy()
        order = np.argsort(w)
        return w[order], np.eye(n, dtype=complex)[:, order]

    A = a.tolist()
    V = np.eye(n, dtype=complex).tolist()
    idx = range(n)
    converged = False
    for _ in range(max_sweeps):
        if converged:
            break
        off = math.sqrt(sum(abs(A[r][c]) ** 2 for r in idx for c in idx if r != c))
        converged = off <= tol * scale
        for i in range(n - 1):
            for j in range(i + 1, n):
                b = A[i][j]
                mag = abs(b)
                if mag <= 1e-300:
                    continue
                phase = b / mag
                theta = (A[j][j].real - A[i][i].real) / (2.0 * mag)
                t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                # J = diag(1, conj(phase)) @ [[c, s], [-s, c]] on columns i, j; then J^dagger on rows
                sc, cc = s * phase.conjugate(), c * phase.conjugate()
                for row in A:
                    x, y = row[i], row[j]
                    row[i] = c * x - sc * y
                    row[j] = s * x + cc * y
                ai, aj = A[i], A[j]
                sp, cp = s * phase, c * phase
                for k in idx:
                    x, y = ai[k], aj[k]
                    ai[k] = c * x - sp * y
                    aj[k] = s * x + cp * y
                ai[j] = aj[i] = 0j
                for row in V:
                    x, y = row[i], row[j]
                    row[i] = c * x - sc * y
                    row[j] = s * x + cc * y
    if not converged:
        raise np.linalg.LinAlgError("Jacobi iteration did not converge")

    w = np.array([A[k][k].real for k in idx])
    order = np.argsort(w)
    return w[order], np.array(V, dtype=complex)[:, order]


def numerical_rank(mat: np.ndarray, tol: float | None = None) -> int:
    """Number of singular values above ``tol`` times the largest one."""
    mat = np.asarray(mat)
    if mat.size == 0:
        return 0
    s = np.linalg.svd(mat, compute_uv=False)
    if s[0] == 0.0:
        return 0
    return int(np.sum(s > global_tol(tol) * s[0]))


def null_space(mat: np.ndarray, tol: float | None = None, ncols: int | None = None) -> np.ndarray:
    """Orthonormal columns spanning the numerical kernel of ``mat``.

    A matrix with no rows (map into the zero space) has the whole domain as
    kernel; ``ncols`` gives the domain dimension in that case.
    """
    mat = np.asarray(mat, dtype=complex)
    cols = mat.shape[1] if ncols is None else ncols
    if mat.shape[0] == 0 or cols == 0:
        return np.eye(cols, dtype=complex)
    _, s, vh = np.linalg.svd(mat)
    rank = 0 if s[0] == 0.0 else int(np.sum(s > global_tol(tol) * s[0]))
    return vh[rank:].conj().T


def orthonormal_range(mat: np.ndarray, tol: float | None = None) -> np.ndarray:
    mat = np.asarray(mat, dtype=complex)
    if mat.size == 0:
        return np.zeros((mat.shape[0], 0), dtype=complex)
    u, s, _ = np.linalg.svd(mat, full_matrices=False)
    rank = 0 if s[0] == 0.0 else int(np.sum(s > global_tol(tol) * s[0]))
    return u[:, :rank]


def signature(eigenvalues, tol: float | None = None) -> tuple[int, int, int]:
    """(positive, negative, zero) counts with zero meaning ``|lambda| <= tol * max|lambda|``."""
    w = np.asarray(eigenvalues, dtype=float)
    if w.size == 0:
        return (0, 0, 0)
    cut = global_tol(tol) * np.max(np.abs(w))
    pos = int(np.sum(w > cut))
    neg = int(np.sum(w < -cut))
    return (pos, neg, int(w.size - pos - neg))


def elementary_symmetric(values) -> np.ndarray:
    """``[e_0, e_1, ..., e_n]`` of the given values, by the product recurrence."""
    e = np.zeros(len(values) + 1, dtype=float)
    e[0] = 1.0
    for x in values:
        e[1:] = e[1:] + x * e[:-1]
    return e
