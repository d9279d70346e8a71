"""JSON encodings of forms, Hermitian matrices, hyperplanes and instances.

Complex numbers are written as ``[re, im]`` pairs except in form terms, which
carry separate ``re`` and ``im`` keys.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import numpy as np

from .errors import DimensionError, HRLabError
from .exterior import Form, index_of
from .hodge_riemann import Instance
from .positivity import HermitianOneOneForm
from .restriction import Hyperplane

__all__ = [
    "form_to_json",
    "form_from_json",
    "matrix_to_json",
    "matrix_from_json",
    "hyperplane_to_json",
    "hyperplane_from_json",
    "instance_to_json",
    "instance_from_json",
    "load_json",
    "dump_json",
    "ParseError",
]


class ParseError(HRLabError):
    """A JSON payload does not match the expected schema."""


def _pair(z: complex) -> list[float]:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def _unpair(x) -> complex:
    if isinstance(x, (int, float)):
        return complex(x)
    if not isinstance(x, (list, tuple)) or len(x) != 2:
        raise ParseError(f"expected [re, im], got {x!r}")
    return complex(float(x[0]), float(x[1]))


def form_to_json(form: Form) -> dict[str, Any]:
    return {
        "n": form.n,
        "p": form.p,
        "q": form.q,
        "terms": [{"I": list(I), "J": list(J), "re": c.real, "im": c.imag} for I, J, c in form.terms()],
    }


def form_from_json(obj: dict[str, Any]) -> Form:
    try:
        n, p, q = int(obj["n"]), int(obj["p"]), int(obj["q"])
        out = np.zeros((Form(n, p, q).coeffs.shape), dtype=complex)
        for term in obj["terms"]:
            I, J = tuple(term["I"]), tuple(term["J"])
            if len(I) != p or len(J) != q:
                raise ParseError(f"term {I},{J} does not have bidegree ({p},{q})")
            if any(a >= b for a, b in zip(I, I[1:])) or any(a >= b for a, b in zip(J, J[1:])):
                raise ParseError(f"multi-indices must be strictly increasing: {I}, {J}")
            out[index_of(n, I), index_of(n, J)] += complex(float(term.get("re", 0.0)), float(term.get("im", 0.0)))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, HRLabError):
            raise
        raise ParseError(f"bad form payload: {exc}") from exc
    return Form(n, p, q, out)


def matrix_to_json(form: HermitianOneOneForm) -> dict[str, Any]:
    return {"n": form.n, "rows": [[_pair(z) for z in row] for row in form.matrix]}


def matrix_from_json(obj: dict[str, Any]) -> HermitianOneOneForm:
    try:
        n = int(obj["n"])
        rows = np.array([[_unpair(z) for z in row] for row in obj["rows"]], dtype=complex)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, HRLabError):
            raise
        raise ParseError(f"bad matrix payload: {exc}") from exc
    if rows.shape != (n, n):
        raise ParseError(f"matrix rows have shape {rows.shape}, expected ({n}, {n})")
    try:
        return HermitianOneOneForm(rows)
    except (ValueError, DimensionError) as exc:
        raise ParseError(str(exc)) from exc


def hyperplane_to_json(h: Hyperplane) -> dict[str, Any]:
    return {"v": [_pair(z) for z in h.v]}


def hyperplane_from_json(obj: dict[str, Any]) -> Hyperplane:
    try:
        return Hyperplane([_unpair(z) for z in obj["v"]])
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"bad hyperplane payload: {exc}") from exc


def instance_to_json(inst: Instance) -> dict[str, Any]:
    out = {
        "n": inst.n,
        "m": inst.m,
        "p": inst.p,
        "q": inst.q,
        "omega": matrix_to_json(inst.omega),
        "alphas": [matrix_to_json(a) for a in inst.alphas],
    }
    if inst.omega_form is not None:
        out["Omega"] = form_to_json(inst.omega_form)
    return out


def instance_from_json(obj: dict[str, Any], validate: bool = True) -> Instance:
    """Parse an instance; structural and (optionally) positivity checks run on construction."""
    try:
        n, m, p, q = (int(obj[k]) for k in ("n", "m", "p", "q"))
        omega = matrix_from_json(obj["omega"])
        alphas = tuple(matrix_from_json(a) for a in obj["alphas"])
        override = form_from_json(obj["Omega"]) if obj.get("Omega") is not None else None
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, HRLabError):
            raise
        raise ParseError(f"bad instance payload: {exc}") from exc
    return Instance(n, m, p, q, omega, alphas, override, validate=validate)


def load_json(path) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from exc


def dump_json(obj: Any, path=None) -> str:
    """Canonical serialization (sorted keys, non-finite floats as null).

    Identical reports therefore serialize to identical bytes.
    """
    text = json.dumps(_finite(obj), indent=2, sort_keys=True, default=_default, allow_nan=False) + "\n"
    if path is not None:
        Path(path).write_text(text)
    return text


def _finite(obj):
    """Replace NaN and infinities by null so the output is strict JSON."""
    if isinstance(obj, dict):
        return {k: _finite(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_finite(v) for v in obj]
    if isinstance(obj, (float, np.floating)):
        return float(obj) if np.isfinite(obj) else None
    return obj


def _default(x):
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.floating,)):
        return float(x)
    if isinstance(x, (np.bool_,)):
        return bool(x)
    if isinstance(x, complex):
        return _pair(x)
    raise TypeError(f"not JSON serializable: {type(x).__name__}")
