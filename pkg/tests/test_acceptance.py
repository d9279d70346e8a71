"""Acceptance criteria 1-11, each printed as one PASS/FAIL line.

The large sweep (every (n, m, p, q) with 2 <= n <= 5, 100 instances each) is
run once and shared by criteria 1, 2, 3, 7 and 11.  The pointwise sampling
part of criterion 7 runs on every 20th instance of each tuple; the operator
certificate runs on all of them.
"""

import math
import time

import numpy as np
import pytest

from conftest import record
from hrlab.exterior import extract, kahler_form, monomial, wedge_power
from hrlab.harness import SweepConfig, enumerate_tuples, run_fibration_sweep, run_sweep
from hrlab.hodge_riemann import classical_instance, q_form
from hrlab.positivity import HermitianOneOneForm, is_m_positive, random_kahler, random_polarization
from hrlab.restriction import (
    Hyperplane,
    avoid_hyperplanes_basis,
    degeneracy_locus,
    restrict,
    restriction_identity_residual,
)

SWEEP_CHECKS = ("hrr", "hl", "nondegeneracy", "ld", "local_estimate")


@pytest.fixture(scope="module")
def sweep():
    start = time.perf_counter()
    config = SweepConfig(n_min=2, n_max=5, count=100, seed=0, checks=SWEEP_CHECKS, samples=10_000, sample_every=20)
    result = run_sweep(config)
    result["elapsed"] = time.perf_counter() - start
    return result


def failures_of(result, check):
    return [r for r in result["results"] if check in r.get("failed", [])]


def classical_signature(n, p, q):
    """Signature of Q on all (p,q)-forms in the classical case, from the Lefschetz decomposition."""
    def prim(a, b):
        return math.comb(n, a) * math.comb(n, b) - (math.comb(n, a - 1) * math.comb(n, b - 1) if a and b else 0)

    pos = sum(prim(p - r, q - r) for r in range(0, min(p, q) + 1, 2))
    neg = sum(prim(p - r, q - r) for r in range(1, min(p, q) + 1, 2))
    return [pos, neg, 0]


def test_criterion_01_hrr_sweep(sweep):
    results = sweep["results"]
    tuples = {(r["n"], r["m"], r["p"], r["q"]) for r in results}
    bad = failures_of(sweep, "hrr")
    worst = min(r["margins"]["hrr"] for r in results)
    ok = not bad and len(tuples) == 117 and len(results) == 11_700 and worst > 1e-10
    record(1, "HRR sweep", ok, f"{len(results)} instances over {len(tuples)} tuples, {len(bad)} failures, "
           f"min lambda_min/||Gram|| = {worst:.3e}, sweep time {sweep['elapsed']:.1f}s")
    assert ok


def test_criterion_02_hl_and_nondegeneracy(sweep):
    results = sweep["results"]
    bad_hl, bad_nd = failures_of(sweep, "hl"), failures_of(sweep, "nondegeneracy")
    worst = min(r["margins"]["hl"] for r in results)
    zero_dirs = sum(r["signature"][2] for r in results)
    ok = not bad_hl and not bad_nd and worst > 1e-10 and zero_dirs == 0
    record(2, "HL + non-degeneracy", ok, f"min sigma ratio {worst:.3e}, null directions {zero_dirs}, "
           f"{len(bad_hl) + len(bad_nd)} failures")
    assert ok


def test_criterion_03_lefschetz_decomposition(sweep):
    results = sweep["results"]
    bad = failures_of(sweep, "ld")
    worst = max(r["margins"]["ld"] for r in results)
    ok = not bad and worst < 1e-9
    record(3, "Lefschetz decomposition", ok, f"max orthogonality residual {worst:.3e}, {len(bad)} failures")
    assert ok


def _m_positive_sample(rng, n, m, omega):
    while True:
        g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        cand = HermitianOneOneForm((g + g.conj().T) / 2 + rng.uniform(0, 3) * omega.matrix)
        if is_m_positive(cand, omega, m).margin > 1e-6:
            return cand


def test_criterion_04_restriction_identity():
    rng = np.random.default_rng(404)
    worst = 0.0
    lower_fail = outside_fail = outside_count = 0
    for _ in range(1000):
        n = int(rng.integers(2, 6))
        m = int(rng.integers(1, n + 1))
        k = int(rng.integers(1, n))
        omega = random_kahler(n, rng)
        alpha = _m_positive_sample(rng, n, m, omega)
        h = Hyperplane.random(n, rng)
        worst = max(worst, restriction_identity_residual(alpha, omega, k, h, relative=True))
        ra, rw = restrict(alpha, h), restrict(omega, h)
        if m >= 2 and not is_m_positive(ra, rw, m - 1):
            lower_fail += 1
        if m <= n - 1:
            semi = random_polarization(n, m, 1e-6, rng, omega=omega)
            if not degeneracy_locus(semi, omega, m).contains(h):
                outside_count += 1
                if not is_m_positive(restrict(semi, h), rw, m):
                    outside_fail += 1
    ok = worst < 1e-10 and lower_fail == 0 and outside_fail == 0
    record(4, "restriction identity", ok, f"max relative residual {worst:.3e} over 1000 tuples, "
           f"lower-degree positivity failures {lower_fail}, "
           f"off-locus m-positivity failures {outside_fail}/{outside_count}")
    assert ok


def test_criterion_05_positivity_oracles_agree():
    rng = np.random.default_rng(505)
    compared = disagreements = 0
    for _ in range(1000):
        n = int(rng.integers(1, 6))
        m = int(rng.integers(1, n + 1))
        omega = random_kahler(n, rng)
        g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        alpha = HermitianOneOneForm((g + g.conj().T) / 2 + rng.uniform(-1, 3) * np.eye(n))
        a = is_m_positive(alpha, omega, m, method="wedge")
        b = is_m_positive(alpha, omega, m, method="spectral")
        if abs(a.margin) > 1e-9 and abs(b.margin) > 1e-9:
            compared += 1
            disagreements += a.holds != b.holds
    ok = disagreements == 0 and compared >= 990
    record(5, "positivity oracle equivalence", ok, f"{disagreements} disagreements among {compared} pairs")
    assert ok


def test_criterion_06_homotopy():
    start = time.perf_counter()
    result = run_sweep(SweepConfig(n_min=2, n_max=5, count=20, seed=0, steps=32, checks=("homotopy",)))
    bad = failures_of(result, "homotopy")
    worst = min(r["margins"]["homotopy"] for r in result["results"])
    ok = not bad and worst > 1e-10 and result["counters"]["checked"] == 117 * 20
    record(6, "homotopy", ok, f"{result['counters']['checked']} instances x 32 grid points, {len(bad)} failures, "
           f"min relative |eig| {worst:.3e}, {time.perf_counter() - start:.1f}s")
    assert ok


def test_criterion_07_local_estimate(sweep):
    results = sweep["results"]
    bad = failures_of(sweep, "local_estimate")
    worst_cert = min(r["margins"]["local_estimate"] for r in results)
    sampled = sum(1 for r in results if r["index"] % 20 == 0)
    ok = not bad and worst_cert >= -1e-10
    record(7, "local estimate", ok, f"certified {len(results)} instances, min certificate eigenvalue "
           f"{worst_cert:.3e}, {sampled} instances sampled 10^4 times, {len(bad)} failures")
    assert ok


def test_criterion_08_closed_form_anchors():
    volume_err = max(abs(extract(wedge_power(kahler_form(n), n)) - math.factorial(n)) / math.factorial(n)
                     for n in range(1, 6))
    phi = monomial(2, (1,), (2,))
    q_value = q_form(classical_instance(2, 1, 1), phi, phi)
    locus = degeneracy_locus(HermitianOneOneForm.diagonal([1, 1, 0]), HermitianOneOneForm.identity(3), 2)
    gram_ok = np.allclose(locus.gram, np.diag([0, 0, 2]), atol=1e-12)
    kernel_ok = locus.kernel_dimension == 2 and np.allclose(locus.kernel_basis[2], 0, atol=1e-12)
    ok = volume_err <= 1e-12 and abs(q_value - 1) <= 1e-12 and gram_ok and kernel_ok
    record(8, "closed-form anchors", ok, f"max rel error extract(omega^n) vs n! {volume_err:.1e}, "
           f"Q = {q_value.real:.12f}, S(diag(1,1,0)) gram diag(0,0,2): {gram_ok}, kernel v3 = 0: {kernel_ok}")
    assert ok


def test_criterion_09_basis_avoidance():
    rng = np.random.default_rng(909)
    worst_res, worst_margin = 0.0, np.inf
    for trial in range(100):
        n = int(rng.integers(1, 7))
        k = int(rng.integers(1, 11))
        hs = [Hyperplane.random(n, rng) for _ in range(k)]
        basis = avoid_hyperplanes_basis(hs, seed=trial)
        worst_res = max(worst_res, basis.orthonormality_residual)
        worst_margin = min(worst_margin, basis.margin)
    ok = worst_res < 1e-12 and worst_margin > 0
    record(9, "basis avoidance", ok, f"max orthonormality residual {worst_res:.1e}, min margin {worst_margin:.3e}")
    assert ok


def test_criterion_10_fibration_models():
    pairs = [(n, m) for n in range(2, 6) for m in range(1, n)]
    result = run_fibration_sweep(pairs, count=50, seed=0, steps=8)
    failed = result["counters"]["failed"]
    ok = result["all_pass"] and result["counters"]["checked"] == 50 * len(pairs)
    record(10, "fibration models", ok, f"{result['counters']['checked']} models over {len(pairs)} (n, m) pairs, "
           f"{failed} failures")
    assert ok


def test_criterion_11_classical_regression(sweep):
    classical = [r for r in sweep["results"] if r["m"] == r["n"]]
    failed = [r for r in classical if not r["all_pass"]]
    wrong_sig = [r for r in classical if r["signature"] != classical_signature(r["n"], r["p"], r["q"])]
    # a sweep restricted to m = n draws exactly the same instances
    replay = run_sweep(SweepConfig(n_min=2, n_max=5, count=5, seed=0, constraint="classical", checks=SWEEP_CHECKS,
                                   samples=10_000, sample_every=20))
    by_key = {(r["n"], r["m"], r["p"], r["q"], r["index"]): r for r in classical}
    mismatched = [r for r in replay["results"] if r != by_key[(r["n"], r["m"], r["p"], r["q"], r["index"])]]
    tuples = len(enumerate_tuples(2, 5, "classical"))
    ok = classical and not failed and not wrong_sig and not mismatched and replay["all_pass"]
    record(11, "classical regression (m = n)", ok, f"{len(classical)} instances over {tuples} tuples, "
           f"{len(failed)} failures, {len(wrong_sig)} signatures off the classical formula, "
           f"{len(mismatched)} replay mismatches")
    assert ok
