"""JSON forms of ideals, maps and results.

An ideal is ``{"n": 8, "quadrics": [matrix, ...]}`` where a matrix is a
nested list of rational strings/ints or ``{"rows", "cols", "entries"}``,
or ``{"n": 8, "polys": ["x0*x2 - x1^2", ...]}``.
"""
from __future__ import annotations

import json
from typing import Any

from .conic import TernaryForm
from .field import QuadField, element_from_json
from .linalg import DimensionError, matrix_from_json
from .models import ParamMap, QuadricIdeal
from .poly import PolyParseError, parse_poly, parse_quadric, quadric_to_matrix


class InputError(ValueError):
    """Malformed input document; the message carries the position."""


def loads(text: str, what: str = "input") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{what}: malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def dumps(data: Any) -> str:
    return json.dumps(data, indent=2, sort_keys=False) + "\n"


def ideal_from_json(data: Any) -> QuadricIdeal:
    if not isinstance(data, dict):
        raise InputError("ideal must be a JSON object")
    n = data.get("n", 8)
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise InputError(f"'n' must be a positive integer, got {n!r}")
    if "quadrics" in data:
        items = data["quadrics"]
        if not isinstance(items, list) or not items:
            raise InputError("'quadrics' must be a nonempty list")
        mats = []
        for k, item in enumerate(items, 1):
            try:
                A = matrix_from_json(item)
            except (DimensionError, ValueError, TypeError, KeyError) as exc:
                raise InputError(f"quadric {k}: {exc}") from None
            if len(A) != n + 1 or any(len(r) != n + 1 for r in A):
                raise InputError(f"quadric {k}: expected a {n + 1}x{n + 1} matrix")
            if any(A[i][j] != A[j][i] for i in range(n + 1) for j in range(i)):
                raise InputError(f"quadric {k}: matrix is not symmetric")
            mats.append(A)
    elif "polys" in data:
        items = data["polys"]
        if not isinstance(items, list) or not items:
            raise InputError("'polys' must be a nonempty list")
        mats = []
        for k, text in enumerate(items, 1):
            if not isinstance(text, str):
                raise InputError(f"line {k}: polynomial must be a string")
            try:
                mats.append(parse_quadric(text, n, line=k))
            except PolyParseError as exc:
                raise InputError(str(exc)) from None
    else:
        raise InputError("ideal needs 'quadrics' or 'polys'")
    return QuadricIdeal.from_matrices(mats)


def ideal_to_json(ideal: QuadricIdeal) -> dict:
    return ideal.to_json()


def map_from_json(data: Any) -> ParamMap:
    """A bare map object or a full result document carrying one."""
    if isinstance(data, dict) and "map" in data:
        data = data["map"]
    if not isinstance(data, dict):
        raise InputError("map must be a JSON object with 'params' and 'components'")
    try:
        pm = ParamMap.from_json(data)
    except (PolyParseError, ValueError) as exc:
        raise InputError(f"map: {exc}") from None
    return pm


def form_from_json(data: Any) -> TernaryForm:
    """Ternary form from ``matrix``, ``coeffs`` (diagonal) or ``poly`` in x, y, z.

    An optional ``field: {"kind": "QuadExt", "a": a}`` puts the form over Q(sqrt(a)).
    """
    if not isinstance(data, dict):
        raise InputError("form must be a JSON object")
    fld = data.get("field") or {"kind": "Q"}
    try:
        F = None if fld.get("kind", "Q") == "Q" else QuadField(int(fld["a"]))
    except (KeyError, ValueError, TypeError, AttributeError) as exc:
        raise InputError(f"field: {exc}") from None
    try:
        if "matrix" in data:
            m = [[element_from_json(x, F) for x in r] for r in data["matrix"]]
        elif "coeffs" in data:
            c = [element_from_json(x, F) for x in data["coeffs"]]
            if len(c) != 3:
                raise InputError("'coeffs' needs three entries")
            return TernaryForm.diagonal(*c, field=F)
        elif "poly" in data:
            q = quadric_to_matrix(parse_poly(str(data["poly"]), ("x", "y", "z")))
            m = [[element_from_json(x, F) for x in r] for r in q]
        else:
            raise InputError("form needs 'matrix', 'coeffs' or 'poly'")
    except PolyParseError as exc:
        raise InputError(f"poly: {exc}") from None
    except (ValueError, TypeError, KeyError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"form: {exc}") from None
    if len(m) != 3 or any(len(r) != 3 for r in m):
        raise InputError("form matrix must be 3x3")
    if any(m[i][j] != m[j][i] for i in range(3) for j in range(i)):
        raise InputError("form matrix is not symmetric")
    return TernaryForm(m, F)


__all__ = ["InputError", "dumps", "form_from_json", "ideal_from_json", "ideal_to_json", "loads", "map_from_json"]
