"""JSON encodings shared by the command line and by scripts.

Scalars are written as strings (``"-3"``, ``"5/7"``) so that rationals
survive a round trip exactly.

matrix       {"rows": r, "cols": c, "entries": [row-major scalars or polynomials]}
polynomial   {"vars": [...], "terms": [{"exp": [...], "coef": "p/q"}, ...]}
points       [{"z": ["p/q", ...]}, ...]
expansion    [{"coef": int, "alpha": "1,3;2,4", "beta": "...", "value": ...}, ...]
"""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .errors import ShapeError
from .exact_core import Matrix, MultiPoly, to_scalar
from .tableaux import format_tableau


def scalar_to_json(x):
    if isinstance(x, MultiPoly):
        return poly_to_json(x)
    return str(to_scalar(x))


def scalar_from_json(obj):
    if isinstance(obj, dict):
        return poly_from_json(obj)
    if isinstance(obj, float):
        raise ShapeError(f"{obj!r}: write non-integers as strings such as \"1/3\"")
    return to_scalar(obj)


def poly_to_json(p: MultiPoly) -> dict:
    return {"vars": list(p.variables),
            "terms": [{"exp": list(e), "coef": str(c)} for e, c in sorted(p.terms.items())]}


def poly_from_json(obj) -> MultiPoly:
    return MultiPoly(obj["vars"], {tuple(t["exp"]): Fraction(t["coef"]) for t in obj["terms"]})


def matrix_to_json(M: Matrix) -> dict:
    return {"rows": M.rows, "cols": M.cols, "entries": [scalar_to_json(x) for x in M.entries]}


def matrix_from_json(obj) -> Matrix:
    """Accepts the documented object, or a plain list of rows."""
    if isinstance(obj, list):
        return Matrix.from_rows([[scalar_from_json(x) for x in row] for row in obj])
    try:
        return Matrix(int(obj["rows"]), int(obj["cols"]), [scalar_from_json(x) for x in obj["entries"]])
    except (KeyError, TypeError) as exc:
        raise ShapeError(f"malformed matrix JSON: {exc}") from None


def points_to_json(points) -> list:
    return [{"z": [scalar_to_json(x) for x in p]} for p in points]


def points_from_json(obj) -> list:
    try:
        return [tuple(scalar_from_json(x) for x in (p["z"] if isinstance(p, dict) else p)) for p in obj]
    except (KeyError, TypeError) as exc:
        raise ShapeError(f"malformed point list: {exc}") from None


def expansion_to_json(expansion) -> list:
    return [{"coef": int(t.coef),
             "alpha": format_tableau(t.alpha),
             "beta": format_tableau(t.beta),
             "value": scalar_to_json(t.value)}
            for t in expansion.terms]


def read_json(path):
    return json.loads(Path(path).read_text())


def load_matrix(path) -> Matrix:
    return matrix_from_json(read_json(path))


def load_points(path) -> list:
    return points_from_json(read_json(path))
