"""Batch verification: per-instance reports, seeded sweeps, fibration models, searches.

Everything here is deterministic given its seeds.  Per-instance generators
are ``numpy.random.default_rng([seed, n, m, p, q, index])``, so an instance
does not depend on which other tuples are in the sweep or on how the work
is split across processes.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Iterable, Sequence

import numpy as np

from ._tol import global_tol
from .errors import ConstraintError, DimensionError, NotKahlerError
from .exterior import Form, wedge, wedge_power
from .hodge_riemann import (
    Instance,
    hl_holds,
    homotopy_sweep,
    is_hodge_riemann_form,
    local_estimate_constants,
    local_estimate_violation,
    random_instance,
    verify_hrr,
    verify_ld,
    full_gram_report,
)
from .io import hyperplane_to_json, instance_to_json, matrix_from_json, matrix_to_json
from .positivity import (
    HermitianOneOneForm,
    _as_hermitian,
    _cholesky,
    is_m_positive,
    is_semipositive,
    random_kahler,
    rank,
    relative_spectrum,
    satisfies_theorem_hypotheses,
)
from .restriction import (
    Hyperplane,
    degeneracy_locus,
    restrict,
    restriction_identity_residual,
)
from .verdict import Verdict

__all__ = [
    "ALL_CHECKS",
    "VerificationReport",
    "SweepConfig",
    "FibrationModel",
    "check_instance",
    "hypothesis_warnings",
    "restriction_report",
    "enumerate_tuples",
    "instance_rng",
    "run_sweep",
    "random_fibration",
    "run_fibration_sweep",
    "search",
]

ALL_CHECKS = ("hrr", "hl", "nondegeneracy", "ld", "homotopy", "local_estimate", "restriction")
HYPOTHESIS_MARGIN = 1e-6
SAMPLE_SLACK = 1e-8


@dataclass
class VerificationReport:
    """Per-check verdicts for one instance plus non-fatal warnings."""

    checks: dict
    warnings: list = field(default_factory=list)
    instance: dict | None = None

    @property
    def all_pass(self) -> bool:
        return all(c["verdict"] for c in self.checks.values())

    def failed(self) -> list[str]:
        return [name for name, c in self.checks.items() if not c["verdict"]]

    def margins(self) -> dict:
        return {name: c["margin"] for name, c in self.checks.items()}

    def to_json(self) -> dict:
        out = {"all_pass": self.all_pass, "checks": self.checks, "warnings": list(self.warnings)}
        if self.instance is not None:
            out["instance"] = self.instance
        return out


def hypothesis_warnings(inst: Instance, margin: float = HYPOTHESIS_MARGIN) -> list[str]:
    """Human-readable notes on alphas that are near or past the positivity hypotheses."""
    notes = []
    for j, a in enumerate(inst.alphas, 1):
        spec = relative_spectrum(a, inst.omega)
        em = spec.normalized_symmetric()[inst.m]
        if not satisfies_theorem_hypotheses(a, inst.omega, inst.m):
            notes.append(f"alpha_{j}: not semipositive with {inst.m} positive eigenvalues "
                         f"(min eigenvalue {spec.eigenvalues[-1]:.3e})")
        elif em < margin:
            notes.append(f"alpha_{j}: normalized e_{inst.m} = {em:.3e} below {margin:.0e}")
    return notes


def restriction_report(inst: Instance, h: Hyperplane, bullets: bool = True, tol: float | None = None) -> dict:
    """Restriction identity residuals and positivity of restrictions for every alpha.

    The identity is checked for k = 1..n-1 (relative residual).  With
    ``bullets``: the restriction keeps positive mixed volumes up to k = m-1,
    and when m < n and ``v`` lies off the degeneracy locus the restriction is
    m-positive.
    """
    n, m = inst.n, inst.m
    rw = restrict(inst.omega, h)
    entries = []
    worst_residual = 0.0
    ok = True
    margins = []
    for j, a in enumerate(inst.alphas, 1):
        residuals = {str(k): restriction_identity_residual(a, inst.omega, k, h, relative=True) for k in range(1, n)}
        worst_residual = max([worst_residual, *residuals.values()])
        entry = {"alpha": j, "identity_residuals": residuals}
        if bullets:
            ra = restrict(a, h)
            if m >= 2:
                low = is_m_positive(ra, rw, m - 1, tol)
                entry["lower_positivity"] = low.to_json()
                ok &= low.holds
                margins.append(low.margin)
            if m <= n - 1:
                locus = degeneracy_locus(a, inst.omega, m, tol)
                inside = locus.contains(h)
                entry["in_degeneracy_locus"] = bool(inside)
                if not inside:
                    full = is_m_positive(ra, rw, m, tol)
                    entry["m_positivity"] = full.to_json()
                    ok &= full.holds
                    margins.append(full.margin)
        entries.append(entry)
    identity_ok = worst_residual < global_tol(tol)
    return {
        "verdict": bool(identity_ok and ok),
        "margin": worst_residual,
        "detail": {"hyperplane": hyperplane_to_json(h), "alphas": entries,
                   "min_positivity_margin": min(margins) if margins else None},
    }


def check_instance(inst: Instance, steps: int = 8, samples: int = 0, seed=0,
                   checks: Sequence[str] = ALL_CHECKS, tol: float | None = None,
                   include_instance: bool = True) -> VerificationReport:
    """Run the requested checks and collect their verdicts.

    ``samples`` > 0 adds the pointwise sampling test of the local estimate
    (failures beyond 1e-8 count).  The restriction check uses a hyperplane
    drawn from ``seed``.
    """
    unknown = set(checks) - set(ALL_CHECKS)
    if unknown:
        raise ValueError(f"unknown checks: {sorted(unknown)}")
    out = {}
    if "hrr" in checks:
        out["hrr"] = verify_hrr(inst, tol).to_json()
    if "hl" in checks:
        hl = hl_holds(inst, tol).to_json()
        if inst.omega_form is not None and inst.p >= 1 and inst.q >= 1:
            hr = is_hodge_riemann_form(inst.Omega, [inst.Omega], inst.polarization, inst.p, inst.q, tol)
            hl["detail"]["with_alpha_squared"] = hr.to_json()
        out["hl"] = hl
    if "nondegeneracy" in checks:
        out["nondegeneracy"] = full_gram_report(inst, tol).to_json()
    if "ld" in checks:
        out["ld"] = verify_ld(inst, tol).to_json()
    if "homotopy" in checks:
        out["homotopy"] = homotopy_sweep(inst, steps, tol).to_json()
    if "local_estimate" in checks:
        est = local_estimate_constants(inst, tol)
        entry = est.to_json()
        if samples > 0 and est.verdict.holds:
            worst = local_estimate_violation(inst, est, samples, seed)
            entry["detail"]["samples"] = samples
            entry["detail"]["worst_sample_violation"] = worst
            entry["verdict"] = bool(entry["verdict"] and worst <= SAMPLE_SLACK)
        out["local_estimate"] = entry
    if "restriction" in checks and inst.n >= 2:
        h = Hyperplane.random(inst.n, np.random.default_rng([_seed_int(seed), 1]))
        out["restriction"] = restriction_report(inst, h, tol=tol)
    warnings = hypothesis_warnings(inst) if inst.omega_form is None else \
        ["Omega override given: the product structure is not used"]
    payload = instance_to_json(inst) if include_instance else None
    return VerificationReport(out, warnings, payload)


def _seed_int(seed) -> int:
    if isinstance(seed, (int, np.integer)):
        return int(seed)
    if isinstance(seed, np.random.Generator):
        return int(seed.integers(2**31))
    return 0


# ---------------------------------------------------------------- sweeps

@dataclass(frozen=True)
class SweepConfig:
    """Which (n, m, p, q) tuples to sweep, how many instances each, and how to check them.

    ``constraint`` is ``"all"``, ``"classical"`` (m = n) or ``"mixed"`` (m < n).
    ``sample_every`` runs the pointwise local-estimate sampling on instances
    whose index is a multiple of it (0 disables sampling).  ``homotopy_count``
    limits the homotopy check to the first that many instances per tuple.
    """

    n_min: int = 2
    n_max: int = 5
    count: int = 100
    seed: int = 0
    constraint: str = "all"
    steps: int = 8
    samples: int = 10_000
    sample_every: int = 0
    homotopy_count: int | None = None
    checks: tuple = ALL_CHECKS
    tol: float | None = None
    jobs: int = 1
    output: str | None = None

    def __post_init__(self):
        if not 1 <= self.n_min <= self.n_max:
            raise ConstraintError(f"need 1 <= n_min <= n_max, got {self.n_min}, {self.n_max}")
        if self.count < 0:
            raise ConstraintError("count must be non-negative")
        if self.constraint not in ("all", "classical", "mixed"):
            raise ConstraintError(f"unknown constraint {self.constraint!r}")
        if self.steps < 2:
            raise ConstraintError("steps must be >= 2")
        object.__setattr__(self, "checks", tuple(self.checks))

    def to_json(self) -> dict:
        out = asdict(self)
        out["checks"] = list(self.checks)
        out.pop("jobs")
        out.pop("output")
        return out


def enumerate_tuples(n_min: int, n_max: int, constraint: str = "all") -> list[tuple[int, int, int, int]]:
    """All (n, m, p, q) with 0 <= p, q, p + q <= m <= n, m >= 1, in lexicographic order."""
    out = []
    for n in range(n_min, n_max + 1):
        for m in range(1, n + 1):
            if constraint == "classical" and m != n:
                continue
            if constraint == "mixed" and m == n:
                continue
            for p in range(m + 1):
                for q in range(m - p + 1):
                    out.append((n, m, p, q))
    return out


def instance_rng(seed: int, n: int, m: int, p: int, q: int, index: int) -> np.random.Generator:
    return np.random.default_rng([seed, n, m, p, q, index])


def _sweep_task(args):
    config, tup, index = args
    n, m, p, q = tup
    rng = instance_rng(config.seed, n, m, p, q, index)
    inst = random_instance(n, m, p, q, rng)
    checks = list(config.checks)
    if config.homotopy_count is not None and index >= config.homotopy_count and "homotopy" in checks:
        checks.remove("homotopy")
    samples = config.samples if config.sample_every and index % config.sample_every == 0 else 0
    report = check_instance(inst, config.steps, samples, rng, checks, config.tol, include_instance=False)
    entry = {"n": n, "m": m, "p": p, "q": q, "index": index, "all_pass": report.all_pass,
             "margins": report.margins()}
    if "nondegeneracy" in report.checks:
        entry["signature"] = report.checks["nondegeneracy"]["detail"]["signature"]
    if not report.all_pass:
        entry["failed"] = report.failed()
        entry["report"] = report.to_json()
        entry["instance"] = instance_to_json(inst)
    return entry


def run_sweep(config: SweepConfig, tuples: Iterable[tuple[int, int, int, int]] | None = None) -> dict:
    """Aggregate report ``{"config", "results", "all_pass", "counters"}``."""
    tuples = enumerate_tuples(config.n_min, config.n_max, config.constraint) if tuples is None else list(tuples)
    for n, m, p, q in tuples:
        if not (0 <= p and 0 <= q and p + q <= m <= n and m >= 1):
            raise ConstraintError(f"invalid tuple {(n, m, p, q)}")
    tasks = [(config, tup, idx) for tup in tuples for idx in range(config.count)]
    if config.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            results = list(pool.map(_sweep_task, tasks, chunksize=max(1, len(tasks) // (8 * config.jobs))))
    else:
        results = [_sweep_task(t) for t in tasks]
    failed = sum(1 for r in results if not r["all_pass"])
    return {
        "config": config.to_json(),
        "results": results,
        "all_pass": failed == 0,
        "counters": {"checked": len(results), "failed": failed},
    }


# ---------------------------------------------------------------- fibrations

@dataclass(frozen=True)
class FibrationModel:
    """Linear model of pulling back Kahler forms along a projection C^n -> C^m.

    ``fiber`` is the n x n Kahler form on the total space; each base form is
    an m x m positive-definite matrix, embedded in the top-left block to give
    a semipositive alpha of rank exactly m.
    """

    n: int
    m: int
    p: int
    q: int
    fiber: HermitianOneOneForm
    bases: tuple

    def __post_init__(self):
        n, m, p, q = self.n, self.m, self.p, self.q
        if not (0 <= p and 0 <= q and p + q <= m <= n and m >= 1):
            raise ConstraintError(f"need 0 <= p, q and p + q <= m <= n with m >= 1; got n={n} m={m} p={p} q={q}")
        object.__setattr__(self, "fiber", _as_hermitian(self.fiber))
        object.__setattr__(self, "bases", tuple(_as_hermitian(b) for b in self.bases))
        if self.fiber.n != n:
            raise DimensionError(f"fiber form on C^{self.fiber.n}, expected C^{n}")
        if len(self.bases) != m - p - q + 1:
            raise ConstraintError(f"expected m - p - q + 1 = {m - p - q + 1} base forms, got {len(self.bases)}")
        _cholesky(self.fiber)
        for j, b in enumerate(self.bases, 1):
            if b.n != m:
                raise DimensionError(f"base form {j} is {b.n} x {b.n}, expected {m} x {m}")
            try:
                _cholesky(b)
            except NotKahlerError:
                raise NotKahlerError(f"base form {j} is not positive definite") from None

    def pullbacks(self) -> list[HermitianOneOneForm]:
        out = []
        for b in self.bases:
            mat = np.zeros((self.n, self.n), dtype=complex)
            mat[: self.m, : self.m] = b.matrix
            out.append(HermitianOneOneForm(mat))
        return out

    def to_instance(self) -> Instance:
        alphas = self.pullbacks()
        for j, a in enumerate(alphas, 1):
            if rank(a) != self.m or not is_semipositive(a):
                raise ConstraintError(f"pullback {j} is not semipositive of rank {self.m}")
        return Instance(self.n, self.m, self.p, self.q, self.fiber, tuple(alphas))

    def to_json(self) -> dict:
        return {"n": self.n, "m": self.m, "p": self.p, "q": self.q, "fiber": matrix_to_json(self.fiber),
                "bases": [matrix_to_json(b) for b in self.bases]}

    @classmethod
    def from_json(cls, obj: dict) -> "FibrationModel":
        from .io import ParseError

        try:
            n, m, p, q = (int(obj[k]) for k in ("n", "m", "p", "q"))
            fiber = matrix_from_json(obj["fiber"])
            bases = tuple(matrix_from_json(b) for b in obj["bases"])
        except (KeyError, TypeError) as exc:
            raise ParseError(f"bad fibration payload: {exc}") from exc
        return cls(n, m, p, q, fiber, bases)


def random_fibration(n: int, m: int, p: int | None = None, q: int | None = None, seed=None) -> FibrationModel:
    """Random fiber and base Kahler forms; p and q are drawn (p + q <= m) when not given."""
    rng = np.random.default_rng(seed) if not isinstance(seed, np.random.Generator) else seed
    if p is None:
        p = int(rng.integers(0, m + 1))
    if q is None:
        q = int(rng.integers(0, m - p + 1))
    fiber = random_kahler(n, rng)
    bases = tuple(random_kahler(m, rng) for _ in range(m - p - q + 1))
    return FibrationModel(n, m, p, q, fiber, bases)


def _fibration_task(args):
    n, m, seed, index, steps, tol = args
    rng = np.random.default_rng([seed, n, m, index])
    model = random_fibration(n, m, seed=rng)
    report = check_instance(model.to_instance(), steps, 0, rng, tol=tol, include_instance=False)
    entry = {"n": n, "m": m, "p": model.p, "q": model.q, "index": index, "all_pass": report.all_pass,
             "margins": report.margins()}
    if not report.all_pass:
        entry["failed"] = report.failed()
        entry["model"] = model.to_json()
    return entry


def run_fibration_sweep(pairs: Sequence[tuple[int, int]], count: int, seed: int = 0, steps: int = 8,
                        tol: float | None = None, jobs: int = 1) -> dict:
    """Check ``count`` random fibration models for each (n, m)."""
    tasks = [(n, m, seed, idx, steps, tol) for n, m in pairs for idx in range(count)]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_fibration_task, tasks))
    else:
        results = [_fibration_task(t) for t in tasks]
    failed = sum(1 for r in results if not r["all_pass"])
    return {"config": {"pairs": [list(x) for x in pairs], "count": count, "seed": seed, "steps": steps, "tol": tol},
            "results": results, "all_pass": failed == 0, "counters": {"checked": len(results), "failed": failed}}


# ---------------------------------------------------------------- searches

def _random_real_form(n: int, k: int, rng: np.random.Generator) -> Form:
    from .exterior import conjugate

    d = math.comb(n, k)
    x = Form(n, k, k, rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d)))
    return (x + conjugate(x)) * 0.5


def _arbitrary_omega_trial(seed: int, trial: int, product_only: bool, tol) -> dict | None:
    rng = np.random.default_rng([seed, trial])
    n = int(rng.integers(2, 5))
    p = int(rng.integers(0, n))
    q = int(rng.integers(0, n - p))
    k = n - p - q
    omega = random_kahler(n, rng)
    terms = 1 if product_only else int(rng.integers(1, 4))
    big = None
    for _ in range(terms):
        prod = wedge_power(random_kahler(n, rng).to_form(), 0)
        for _ in range(k):
            prod = wedge(prod, random_kahler(n, rng).to_form())
        prod = prod * float(rng.uniform(0.1, 1.0))
        big = prod if big is None else big + prod
    if not product_only:
        pert = _random_real_form(n, k, rng)
        size = float(np.linalg.norm(big.coeffs)) / max(float(np.linalg.norm(pert.coeffs)), 1e-300)
        big = big + pert * (size * float(rng.uniform(0.0, 1.5)))
    alphas = tuple(random_kahler(n, rng) for _ in range(k + 1))
    inst = Instance.unchecked(n, n, p, q, omega, alphas, big)
    hl = hl_holds(inst, tol)
    hrr = verify_hrr(inst, tol).verdict
    kinds = []
    if not hl.holds:
        kinds.append("hl_rank_deficient")
    if not hrr.holds:
        kinds.append("hrr_indefinite")
    if hl.holds and p >= 1 and q >= 1:
        hr = is_hodge_riemann_form(inst.Omega, [inst.Omega], inst.polarization, p, q, tol)
        if not hr.holds:
            kinds.append("lefschetz_not_hodge_riemann")
    if not kinds:
        return None
    return {"trial": trial, "kinds": kinds, "instance": instance_to_json(inst),
            "verdicts": {"hl": hl.holds, "hrr": hrr.holds}, "margins": {"hl": hl.margin, "hrr": hrr.margin}}


def _merely_m_positive(n: int, m: int, omega: HermitianOneOneForm, rng: np.random.Generator,
                       margin: float = 1e-3) -> HermitianOneOneForm:
    """Random alpha whose relative spectrum has e_1..e_m > margin but a negative entry."""
    from .linalg import elementary_symmetric

    for _ in range(10_000):
        lam = rng.normal(1.0, 1.0, n)
        if lam.min() >= 0:
            continue
        e = elementary_symmetric(lam)
        norm = np.array([math.comb(n, j) for j in range(n + 1)], dtype=float)
        if np.all(e[1 : m + 1] / norm[1 : m + 1] > margin):
            g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
            u, _ = np.linalg.qr(g)
            lower = np.linalg.cholesky(omega.matrix)
            core = u @ np.diag(lam) @ u.conj().T
            return HermitianOneOneForm(lower @ core @ lower.conj().T)
    raise RuntimeError("could not sample a merely m-positive form")


def _basis_intersection_trial(seed: int, trial: int, attempts: int, tol) -> dict | None:
    rng = np.random.default_rng([seed, trial])
    n = int(rng.integers(3, 6))
    m = int(rng.integers(1, n))
    count = int(rng.integers(1, 4))
    omega = random_kahler(n, rng)
    alphas = [_merely_m_positive(n, m, omega, rng) for _ in range(count)]
    loci = [degeneracy_locus(a, omega, m, tol) for a in alphas]
    grams = [loc.gram / float(np.max(np.abs(loc.eigenvalues))) for loc in loci]
    best = -np.inf
    for attempt in range(attempts):
        if attempt == 0:
            basis = np.eye(n, dtype=complex)
        else:
            g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
            basis, _ = np.linalg.qr(g)
        score = min(float(np.min(np.real(np.einsum("ji,jk,ki->i", basis.conj(), gr, basis)))) for gr in grams)
        best = max(best, score)
        if score > global_tol(tol):
            return None
    return {"trial": trial, "n": n, "m": m, "omega": matrix_to_json(omega),
            "alphas": [matrix_to_json(a) for a in alphas], "attempts": attempts, "best_margin": best}


def search(mode: str, budget: int, seed: int = 0, product_only: bool = False, attempts: int = 200,
           tol: float | None = None) -> dict:
    """Observational searches; every finding carries the data needed to replay it.

    ``arbitrary-omega`` samples (k, k)-forms made of products of random Kahler
    forms plus signed real perturbations (``product_only`` keeps a single
    product, no perturbation) and records failures of HL or HRR.
    ``basis-intersection`` samples tuples of m-positive but indefinite alphas
    and records when no tried orthonormal basis lies in every P(alpha_j).
    """
    if budget < 0:
        raise ConstraintError("budget must be non-negative")
    findings = []
    for trial in range(budget):
        if mode == "arbitrary-omega":
            found = _arbitrary_omega_trial(seed, trial, product_only, tol)
        elif mode == "basis-intersection":
            found = _basis_intersection_trial(seed, trial, attempts, tol)
        else:
            raise ConstraintError(f"unknown search mode {mode!r}")
        if found is not None:
            findings.append(found)
    return {"mode": mode, "budget": budget, "seed": seed, "findings": findings}
