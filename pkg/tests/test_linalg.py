import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from hrlab.linalg import elementary_symmetric, jacobi_eigh, null_space, numerical_rank, orthonormal_range, signature


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 8), st.integers(0, 2**32 - 1), st.floats(1e-3, 1e3))
def test_jacobi_matches_numpy(n, seed, scale):
    a = oracles.random_hermitian(np.random.default_rng(seed), n, scale)
    w, v = jacobi_eigh(a)
    assert np.allclose(w, np.linalg.eigvalsh(a), atol=1e-11 * scale)
    assert np.allclose(v.conj().T @ v, np.eye(n), atol=1e-12)
    assert np.allclose(v @ np.diag(w) @ v.conj().T, a, atol=1e-11 * scale)


def test_jacobi_handles_degenerate_spectrum():
    rng = np.random.default_rng(1)
    u, _ = np.linalg.qr(rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5)))
    a = u @ np.diag([2.0, 2.0, 2.0, -1.0, 0.0]) @ u.conj().T
    w, v = jacobi_eigh(a)
    assert np.allclose(w, [-1, 0, 2, 2, 2], atol=1e-12)
    assert np.allclose(v @ np.diag(w) @ v.conj().T, a, atol=1e-12)


def test_jacobi_trivial_inputs():
    w, v = jacobi_eigh(np.zeros((3, 3)))
    assert np.all(w == 0) and np.allclose(v, np.eye(3))
    w, _ = jacobi_eigh(np.array([[4.0]]))
    assert w[0] == 4.0
    w, _ = jacobi_eigh(np.diag([3.0, -2.0, 1.0]))
    assert list(w) == [-2.0, 1.0, 3.0]


@settings(max_examples=40, deadline=None)
@given(st.lists(st.floats(-5, 5), min_size=0, max_size=7))
def test_elementary_symmetric_matches_expansion(values):
    e = elementary_symmetric(values)
    assert len(e) == len(values) + 1
    for k in range(len(values) + 1):
        assert e[k] == pytest.approx(oracles.elementary(values, k), abs=1e-9 * max(1.0, abs(e[k])))


def test_elementary_symmetric_of_ones_is_binomial():
    assert list(elementary_symmetric([1.0] * 5)) == [math.comb(5, k) for k in range(6)]


def test_signature_counts():
    assert signature([-2.0, 0.0, 1e-14, 3.0, 5.0]) == (2, 1, 2)
    assert signature([]) == (0, 0, 0)


def test_signature_respects_tolerance_override():
    assert signature([1.0, 1e-6], tol=1e-5) == (1, 0, 1)


def test_null_space_and_rank():
    rng = np.random.default_rng(0)
    b = rng.standard_normal((6, 3)) + 1j * rng.standard_normal((6, 3))
    a = b @ (rng.standard_normal((3, 5)) + 0j)
    assert numerical_rank(a) == 3
    k = null_space(a)
    assert k.shape == (5, 2)
    assert np.allclose(a @ k, 0, atol=1e-10)
    assert np.allclose(k.conj().T @ k, np.eye(2))
    r = orthonormal_range(a)
    assert r.shape == (6, 3)


def test_null_space_of_map_into_zero_space_is_everything():
    k = null_space(np.zeros((0, 4)), ncols=4)
    assert np.allclose(k, np.eye(4))


def test_rank_of_empty_and_zero():
    assert numerical_rank(np.zeros((0, 0))) == 0
    assert numerical_rank(np.zeros((3, 3))) == 0


def test_orthonormal_range_of_permutation():
    p = np.array(list(itertools.permutations(range(3)))[3])
    mat = np.eye(3)[p]
    assert orthonormal_range(mat).shape == (3, 3)
