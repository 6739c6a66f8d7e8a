"""JSON interchange for scalars, matrices, forms, subspaces and points.

Matrices are arrays of rows of scalar strings (``"1/2+3/4*i"``).  Every
parse failure raises :class:`ParseError` naming the offending location as a
JSON-pointer-like path.
"""

from __future__ import annotations

import json
from typing import Any

from .exact import Matrix, ParseError, Subspace, format_scalar, parse_scalar
from .forms import BilinearForm, Kind
from .nullcone import GLPoint, NullPoint, OSPoint
from .resolutions import (
    _ORBIT_TYPES,
    _POINT_TYPES,
    ResolutionPointOS,
    variant_of,
)


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def matrix_to_json(m: Matrix) -> list[list[str]]:
    return [[format_scalar(x) for x in m.row(i)] for i in range(m.rows)]


def matrix_from_json(data: Any, where: str = "$", shape: tuple[int, int] | None = None) -> Matrix:
    if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
        raise ParseError(f"{where}: expected an array of rows")
    width = len(data[0]) if data else (shape[1] if shape else 0)
    rows = []
    for i, row in enumerate(data):
        if len(row) != width:
            raise ParseError(f"{where}[{i}]: row has {len(row)} entries, expected {width}")
        vals = []
        for j, x in enumerate(row):
            if not isinstance(x, (str, int)) or isinstance(x, bool):
                raise ParseError(f"{where}[{i}][{j}]: expected a scalar string")
            try:
                vals.append(parse_scalar(str(x)))
            except ParseError as e:
                raise ParseError(f"{where}[{i}][{j}]: {e}") from None
        rows.append(vals)
    m = Matrix.from_rows(rows, cols=width)
    if shape is not None and m.shape != tuple(shape):
        raise ParseError(f"{where}: expected shape {shape[0]}x{shape[1]}, got {m.rows}x{m.cols}")
    return m


def subspace_to_json(u: Subspace) -> dict:
    return {"ambient_dim": u.ambient_dim, "dim": u.dim, "basis": matrix_to_json(u.basis)}


def subspace_from_json(data: Any, where: str = "$") -> Subspace:
    obj = _object(data, where, ("ambient_dim", "basis"))
    n = obj["ambient_dim"]
    if not isinstance(n, int) or n < 0:
        raise ParseError(f"{where}.ambient_dim: expected a non-negative integer")
    basis = matrix_from_json(obj["basis"], f"{where}.basis")
    if basis.rows not in (0, n):
        raise ParseError(f"{where}.basis: has {basis.rows} rows, expected {n}")
    vectors = [basis.col(j) for j in range(basis.cols)]
    u = Subspace.span(vectors, n)
    if u.dim != basis.cols:
        raise ParseError(f"{where}.basis: columns are linearly dependent")
    if "dim" in obj and obj["dim"] != u.dim:
        raise ParseError(f"{where}.dim: says {obj['dim']}, basis has {u.dim} columns")
    return u


def form_to_json(form: BilinearForm) -> dict:
    return {"kind": form.kind.value, "gram": matrix_to_json(form.gram)}


def form_from_json(data: Any, where: str = "$") -> BilinearForm:
    obj = _object(data, where, ("kind", "gram"))
    try:
        kind = Kind(obj["kind"])
    except ValueError:
        raise ParseError(f"{where}.kind: unknown kind {obj['kind']!r}") from None
    gram = matrix_from_json(obj["gram"], f"{where}.gram")
    try:
        return BilinearForm(kind, gram)
    except ValueError as e:
        raise ParseError(f"{where}: {e}") from None


def null_point_to_json(p: NullPoint) -> dict:
    if isinstance(p, OSPoint):
        return {"case": "os", "t": matrix_to_json(p.t)}
    return {"case": "gl", "a": matrix_to_json(p.a), "b": matrix_to_json(p.b)}


def null_point_from_json(data: Any, where: str = "$") -> NullPoint:
    obj = _object(data, where, ("case",))
    case = obj["case"]
    if case == "os":
        _object(obj, where, ("t",))
        return OSPoint(matrix_from_json(obj["t"], f"{where}.t"))
    if case == "gl":
        _object(obj, where, ("a", "b"))
        return GLPoint(matrix_from_json(obj["a"], f"{where}.a"),
                       matrix_from_json(obj["b"], f"{where}.b"))
    raise ParseError(f"{where}.case: expected 'os' or 'gl', got {case!r}")


_SUB_FIELDS = ("u", "u1", "u2")


def resolution_point_to_json(p) -> dict:
    out = {"variant": variant_of(p)}
    if isinstance(p, ResolutionPointOS):
        out["t"] = matrix_to_json(p.t)
    else:
        out["a"] = matrix_to_json(p.a)
        out["b"] = matrix_to_json(p.b)
    for f in _SUB_FIELDS:
        if hasattr(p, f):
            out[f] = subspace_to_json(getattr(p, f))
    return out


def resolution_point_from_json(data: Any, where: str = "$"):
    obj = _object(data, where, ("variant",))
    cls = _POINT_TYPES.get(obj["variant"])
    if cls is None:
        raise ParseError(f"{where}.variant: unknown variant {obj['variant']!r}")
    fields = {}
    mats = ("t",) if cls is ResolutionPointOS else ("a", "b")
    subs = [f for f in cls.__dataclass_fields__ if f in _SUB_FIELDS]
    _object(obj, where, mats + tuple(subs))
    for f in mats:
        fields[f] = matrix_from_json(obj[f], f"{where}.{f}")
    for f in subs:
        fields[f] = subspace_from_json(obj[f], f"{where}.{f}")
    return cls(**fields)


def orbit_point_to_json(p) -> dict:
    out = {"variant": variant_of(p), "g": matrix_to_json(p.g)}
    for f in _SUB_FIELDS:
        if hasattr(p, f):
            out[f] = subspace_to_json(getattr(p, f))
    return out


def orbit_point_from_json(data: Any, where: str = "$"):
    obj = _object(data, where, ("variant", "g"))
    cls = _ORBIT_TYPES.get(obj["variant"])
    if cls is None:
        raise ParseError(f"{where}.variant: unknown variant {obj['variant']!r}")
    subs = [f for f in cls.__dataclass_fields__ if f in _SUB_FIELDS]
    _object(obj, where, tuple(subs))
    fields = {"g": matrix_from_json(obj["g"], f"{where}.g")}
    for f in subs:
        fields[f] = subspace_from_json(obj[f], f"{where}.{f}")
    return cls(**fields)


def point_to_json(p) -> dict:
    """Any point type; orbit points are told apart by their ``g`` field."""
    if isinstance(p, (OSPoint, GLPoint)):
        return null_point_to_json(p)
    if isinstance(p, tuple(_ORBIT_TYPES.values())):
        return orbit_point_to_json(p)
    return resolution_point_to_json(p)


def loads(text: str, where: str = "$") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"{where}: invalid JSON at line {e.lineno} column {e.colno}: {e.msg}") from None


def _object(data: Any, where: str, required: tuple[str, ...]) -> dict:
    if not isinstance(data, dict):
        raise ParseError(f"{where}: expected an object")
    for key in required:
        if key not in data:
            raise ParseError(f"{where}: missing field {key!r}")
    return data


__all__ = [
    "dumps",
    "form_from_json",
    "form_to_json",
    "loads",
    "matrix_from_json",
    "matrix_to_json",
    "null_point_from_json",
    "null_point_to_json",
    "orbit_point_from_json",
    "orbit_point_to_json",
    "point_to_json",
    "resolution_point_from_json",
    "resolution_point_to_json",
    "subspace_from_json",
    "subspace_to_json",
]
