import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hrlab.errors import ConstraintError, HypothesisError
from hrlab.exterior import Form, kahler_form, wedge_power
from hrlab.hodge_riemann import Instance, classical_instance, random_instance
from hrlab.io import (
    ParseError,
    dump_json,
    form_from_json,
    form_to_json,
    hyperplane_from_json,
    hyperplane_to_json,
    instance_from_json,
    instance_to_json,
    matrix_from_json,
    matrix_to_json,
)
from hrlab.positivity import HermitianOneOneForm, random_hermitian
from hrlab.restriction import Hyperplane


def reparse(obj):
    return json.loads(dump_json(obj))


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 4), st.integers(0, 4), st.integers(0, 4), st.integers(0, 2**32 - 1))
def test_form_round_trip(n, p, q, seed):
    p, q = min(p, n), min(q, n)
    rng = np.random.default_rng(seed)
    f = Form(n, p, q, rng.standard_normal(Form(n, p, q).coeffs.shape) + 1j)
    assert form_from_json(reparse(form_to_json(f))) == f


def test_form_json_schema():
    obj = form_to_json(kahler_form(2))
    assert obj["n"] == 2 and obj["p"] == 1 and obj["q"] == 1
    assert {"I": [1], "J": [1], "re": 0.0, "im": 1.0} in obj["terms"]


def test_form_rejects_unsorted_indices():
    with pytest.raises(ParseError):
        form_from_json({"n": 2, "p": 1, "q": 2, "terms": [{"I": [1], "J": [2, 1], "re": 1, "im": 0}]})
    with pytest.raises(ParseError):
        form_from_json({"n": 2, "p": 1, "q": 1, "terms": [{"I": [1, 2], "J": [1], "re": 1, "im": 0}]})
    with pytest.raises(ParseError):
        form_from_json({"n": 2})


def test_matrix_round_trip_and_validation():
    a = random_hermitian(3, seed=2)
    assert matrix_from_json(reparse(matrix_to_json(a))) == a
    with pytest.raises(ParseError):
        matrix_from_json({"n": 2, "rows": [[[1, 0], [2, 0]], [[0, 0], [1, 0]]]})
    with pytest.raises(ParseError):
        matrix_from_json({"n": 3, "rows": [[[1, 0]]]})
    with pytest.raises(ParseError):
        matrix_from_json({"n": 1, "rows": [[[1, 0, 0]]]})


def test_hyperplane_round_trip():
    h = Hyperplane.random(4, 3)
    # the parser renormalizes, which may move the last bit
    assert np.allclose(hyperplane_from_json(reparse(hyperplane_to_json(h))).v, h.v, atol=1e-15, rtol=0)
    with pytest.raises(ParseError):
        hyperplane_from_json({"w": []})


@pytest.mark.parametrize("tup", [(2, 1, 0, 1), (3, 2, 1, 1), (4, 4, 2, 1), (5, 3, 1, 0)])
def test_instance_round_trip(tup):
    inst = random_instance(*tup, seed=7)
    assert instance_from_json(reparse(instance_to_json(inst))) == inst


def test_instance_with_override_round_trip():
    base = classical_instance(3, 1, 1, m=3)
    inst = Instance.unchecked(3, 3, 1, 1, base.omega, base.alphas, wedge_power(kahler_form(3), 1) * 2.0)
    back = instance_from_json(reparse(instance_to_json(inst)), validate=False)
    assert back == inst
    assert "Omega" in instance_to_json(inst)


def test_instance_parse_errors():
    obj = instance_to_json(classical_instance(2, 1, 1))
    obj["p"] = 2
    with pytest.raises(ConstraintError):
        instance_from_json(obj)
    with pytest.raises(ParseError):
        instance_from_json({"n": 2})
    bad = instance_to_json(classical_instance(2, 1, 1))
    bad["alphas"] = [matrix_to_json(HermitianOneOneForm.diagonal([1, -1]))]
    with pytest.raises(HypothesisError):
        instance_from_json(bad)
    assert not instance_from_json(bad, validate=False).validated


def test_dump_json_is_strict_and_sorted():
    text = dump_json({"b": float("nan"), "a": np.float64(1.5), "c": np.bool_(True), "d": 1j})
    assert json.loads(text) == {"a": 1.5, "b": None, "c": True, "d": [0.0, 1.0]}
    assert text.index('"a"') < text.index('"b"')
