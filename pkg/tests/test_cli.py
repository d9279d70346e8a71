import json

import numpy as np
import pytest

from hrlab.cli import main
from hrlab.harness import (
    FibrationModel,
    SweepConfig,
    check_instance,
    enumerate_tuples,
    random_fibration,
    run_sweep,
    search,
)
from hrlab.hodge_riemann import classical_instance, random_instance
from hrlab.io import dump_json, instance_from_json, instance_to_json, matrix_to_json
from hrlab.positivity import HermitianOneOneForm
from hrlab.restriction import Hyperplane
from hrlab.io import hyperplane_to_json


@pytest.fixture
def write(tmp_path):
    def _write(name, obj):
        path = tmp_path / name
        path.write_text(obj if isinstance(obj, str) else dump_json(obj))
        return str(path)

    return _write


def read(path):
    return json.loads(open(path).read())


# ---------------------------------------------------------------- harness

def test_enumerated_tuples_respect_constraints():
    tuples = enumerate_tuples(2, 5)
    assert len(tuples) == 117
    assert all(0 <= p and 0 <= q and p + q <= m <= n and m >= 1 for n, m, p, q in tuples)
    assert all(m == n for n, m, _, _ in enumerate_tuples(2, 5, "classical"))
    assert all(m < n for n, m, _, _ in enumerate_tuples(2, 5, "mixed"))


def test_check_instance_report_shape():
    report = check_instance(classical_instance(2, 1, 1), steps=3, samples=200)
    obj = report.to_json()
    assert obj["all_pass"]
    for name, entry in obj["checks"].items():
        assert set(entry) == {"verdict", "margin", "detail"}, name
    assert obj["warnings"] == []


def test_check_instance_warns_near_boundary():
    eye = HermitianOneOneForm.identity(3)
    thin = HermitianOneOneForm.diagonal([1, 1, 0]) * 1e-4
    from hrlab.hodge_riemann import Instance

    inst = Instance(3, 2, 1, 1, eye, (thin,))
    report = check_instance(inst, checks=("hrr",))
    assert report.warnings and "below" in report.warnings[0]


def test_sweep_parallel_equals_serial():
    cfg = SweepConfig(n_min=2, n_max=3, count=2, seed=3, steps=3, checks=("hrr", "hl", "ld"))
    serial = run_sweep(cfg)
    parallel = run_sweep(SweepConfig(**{**cfg.__dict__, "jobs": 2}))
    assert dump_json(serial) == dump_json(parallel)


def test_sweep_instances_do_not_depend_on_the_tuple_set():
    cfg = SweepConfig(n_min=2, n_max=3, count=2, seed=3, steps=3, checks=("hrr",))
    full = {(r["n"], r["m"], r["p"], r["q"], r["index"]): r for r in run_sweep(cfg)["results"]}
    sub = run_sweep(SweepConfig(**{**cfg.__dict__, "constraint": "classical"}))["results"]
    for r in sub:
        assert r == full[(r["n"], r["m"], r["p"], r["q"], r["index"])]


def test_fibration_model_small_case():
    eye2, eye3 = HermitianOneOneForm.identity(2), HermitianOneOneForm.identity(3)
    model = FibrationModel(3, 2, 1, 1, eye3, (eye2,))
    assert np.allclose(model.pullbacks()[0].matrix, np.diag([1, 1, 0]))
    assert check_instance(model.to_instance(), steps=4).all_pass


def test_fibration_m_equals_n_is_classical_mixed():
    model = random_fibration(3, 3, 1, 1, seed=0)
    inst = model.to_instance()
    assert all(np.array_equal(a.matrix, b.matrix) for a, b in zip(inst.alphas, model.bases))


def test_random_fibration_passes():
    model = random_fibration(5, 2, 1, 1, seed=4)
    assert check_instance(model.to_instance(), steps=4).all_pass


def test_search_budget_zero_is_empty():
    assert search("arbitrary-omega", 0)["findings"] == []
    assert search("basis-intersection", 0)["findings"] == []


def test_product_forms_never_found():
    assert search("arbitrary-omega", 40, seed=2, product_only=True)["findings"] == []


# ---------------------------------------------------------------- CLI

def test_cli_check_classical(write, tmp_path):
    path = write("inst.json", instance_to_json(classical_instance(2, 1, 1)))
    out = str(tmp_path / "report.json")
    assert main(["check", path, "--report", out, "--steps", "3"]) == 0
    assert read(out)["all_pass"] is True


def test_cli_check_malformed_json(write, capsys):
    assert main(["check", write("bad.json", "{not json")]) == 2
    assert "error" in capsys.readouterr().err


def test_cli_check_constraint_violation(write, capsys):
    obj = instance_to_json(classical_instance(2, 1, 1))
    obj["p"], obj["q"] = 2, 1
    assert main(["check", write("bad.json", obj)]) == 2
    assert "p + q <= m" in capsys.readouterr().err


def test_cli_check_missing_file(capsys):
    assert main(["check", "/nonexistent/instance.json"]) == 2


def test_cli_usage_error():
    assert main(["frobnicate"]) == 2


def test_cli_check_math_failure(write):
    eye = HermitianOneOneForm.identity(3)
    obj = {"n": 3, "m": 2, "p": 1, "q": 1, "omega": matrix_to_json(eye),
           "alphas": [matrix_to_json(HermitianOneOneForm.diagonal([1, 1, -3]))]}
    path = write("indef.json", obj)
    assert main(["check", path]) == 2
    assert main(["check", path, "--no-validate", "--steps", "3"]) == 1


def test_cli_random_is_deterministic(tmp_path):
    a, b = str(tmp_path / "a.json"), str(tmp_path / "b.json")
    args = ["random", "--seed", "7", "--n-min", "2", "--n-max", "3", "--count", "2", "--steps", "3"]
    assert main(args + ["--report", a]) == 0
    assert main(args + ["--report", b]) == 0
    assert open(a, "rb").read() == open(b, "rb").read()
    obj = read(a)
    assert set(obj) == {"config", "results", "all_pass", "counters"}
    assert obj["counters"] == {"checked": 2 * 28, "failed": 0}


def test_cli_tol_override(tmp_path, monkeypatch):
    monkeypatch.delenv("HRLAB_TOL", raising=False)
    out = str(tmp_path / "r.json")
    assert main(["random", "--n-min", "2", "--n-max", "2", "--count", "1", "--checks", "hrr",
                 "--tol", "1e-8", "--report", out]) == 0
    assert read(out)["config"]["tol"] == 1e-8
    assert main(["random", "--tol", "-1"]) == 2
    monkeypatch.delenv("HRLAB_TOL", raising=False)


def test_cli_fibration_file_and_errors(write, tmp_path):
    eye2, eye3 = HermitianOneOneForm.identity(2), HermitianOneOneForm.identity(3)
    model = {"n": 3, "m": 2, "p": 1, "q": 1, "fiber": matrix_to_json(eye3), "bases": [matrix_to_json(eye2)]}
    out = str(tmp_path / "f.json")
    assert main(["fibration", write("m.json", model), "--report", out, "--steps", "3"]) == 0
    assert read(out)["all_pass"]
    model["bases"] = [matrix_to_json(HermitianOneOneForm.diagonal([1, -1]))]
    assert main(["fibration", write("bad.json", model)]) == 2
    assert main(["fibration"]) == 2


def test_cli_fibration_random(tmp_path):
    out = str(tmp_path / "f.json")
    assert main(["fibration", "--n", "4", "--m", "2", "--count", "3", "--steps", "3", "--report", out]) == 0
    assert read(out)["counters"]["checked"] == 3


def test_cli_search_and_replay(tmp_path):
    out = str(tmp_path / "s.json")
    assert main(["search", "arbitrary-omega", "--budget", "15", "--seed", "1", "--report", out]) == 0
    found = read(out)
    assert found["mode"] == "arbitrary-omega"
    assert found["findings"], "expected the perturbed samples to produce at least one finding"
    for entry in found["findings"]:
        inst = instance_from_json(entry["instance"], validate=False)
        report = check_instance(inst, checks=("hrr", "hl"))
        assert report.checks["hrr"]["verdict"] == entry["verdicts"]["hrr"]
        assert report.checks["hl"]["verdict"] == entry["verdicts"]["hl"]
        inst_path = tmp_path / f"finding{entry['trial']}.json"
        inst_path.write_text(dump_json(entry["instance"]))
        assert main(["check", str(inst_path), "--no-validate", "--steps", "3"]) == 1


def test_cli_search_budget_zero(tmp_path):
    out = str(tmp_path / "s.json")
    assert main(["search", "basis-intersection", "--budget", "0", "--report", out]) == 0
    assert read(out)["findings"] == []


def test_cli_restrict_standard_along_e1(write, tmp_path):
    eye = HermitianOneOneForm.identity(3)
    from hrlab.hodge_riemann import Instance

    inst = Instance(3, 2, 1, 1, eye, (eye,))
    path = write("inst.json", instance_to_json(inst))
    hpath = write("h.json", hyperplane_to_json(Hyperplane.coordinate(3, 1)))
    out = str(tmp_path / "r.json")
    assert main(["restrict", path, "--hyperplane", hpath, "--report", out]) == 0
    rep = read(out)
    assert rep["margin"] < 1e-10
    assert rep["all_pass"]


def test_cli_restrict_m_equals_n(write, capsys):
    path = write("inst.json", instance_to_json(classical_instance(3, 1, 1)))
    assert main(["restrict", path]) == 2
    assert main(["restrict", path, "--plain"]) == 0
    assert "warning" in capsys.readouterr().err


def test_cli_deform_endpoints(write, capsys, tmp_path):
    path = write("inst.json", instance_to_json(random_instance(3, 2, 1, 1, seed=1)))
    out = str(tmp_path / "d.json")
    assert main(["deform", path, "--steps", "2", "--report", out]) == 0
    rows = read(out)["detail"]["rows"]
    assert [r["t"] for r in rows] == [0.0, 1.0]
    assert all(r["signature"][2] == 0 and r["relative"] > 1e-10 for r in rows)
    table = capsys.readouterr().out.strip().splitlines()
    assert len(table) == 3


def test_cli_deform_classical_constant_signature(write, capsys):
    path = write("inst.json", instance_to_json(classical_instance(3, 1, 1)))
    assert main(["deform", path, "--steps", "6"]) == 0
    rows = capsys.readouterr().out.strip().splitlines()[1:]
    assert len({tuple(r.split()[1:4]) for r in rows}) == 1
