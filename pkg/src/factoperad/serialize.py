"""JSON encodings. Rationals are strings; orders and permutations are 1-based on disk."""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .braids import ColoredBraid
from .cat import BraidedObject
from .cubes import LinearEmbedding, Square
from .factsys import FactorizedSystem, Violation
from .limits import ProjectiveSystem, TowerViolation
from .linalg import Field, LinalgError, Matrix


class FormatError(ValueError):
    pass


def _render(data: Any, indent: int) -> str:
    pad, inner = "  " * indent, "  " * (indent + 1)
    if isinstance(data, dict):
        if not data:
            return "{}"
        items = [f"{inner}{json.dumps(k)}: {_render(v, indent + 1)}" for k, v in data.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(data, list):
        if all(not isinstance(x, (dict, list)) for x in data):
            return json.dumps(data)
        return "[\n" + ",\n".join(inner + _render(x, indent + 1) for x in data) + "\n" + pad + "]"
    return json.dumps(data)


def dumps(data: Any) -> str:
    """Indented JSON with flat lists (matrix rows, words, orders) kept on one line."""
    return _render(data, 0) + "\n"


def load_json(path: str | Path) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON: {exc}") from exc
    except OSError as exc:
        raise FormatError(f"{path}: {exc.strerror}") from exc


def _scalar(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _one_based(order) -> list[int]:
    return [s + 1 for s in order]


def _zero_based(order, n: int | None = None) -> tuple[int, ...]:
    try:
        out = tuple(int(s) - 1 for s in order)
    except (TypeError, ValueError) as exc:
        raise FormatError(f"bad order {order!r}") from exc
    if n is not None and sorted(out) != list(range(n)):
        raise FormatError(f"{list(order)} is not a 1-based permutation of {n}")
    return out


# ---------------------------------------------------------------- matrices

def matrix_rows(m: Matrix) -> list[list[str]]:
    return [[m.field.fmt(x) for x in row] for row in m.tolist()]


def matrix_to_json(m: Matrix) -> dict:
    return {"field": m.field.name, "rows": matrix_rows(m)}


def _parse_entry(field: Field, x):
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise FormatError(f"matrix entries must be integers or rational strings, got {x!r}")
    try:
        return field(x)
    except (ValueError, ZeroDivisionError, LinalgError) as exc:
        raise FormatError(f"bad matrix entry {x!r}: {exc}") from exc


def matrix_from_json(data, field: Field | None = None) -> Matrix:
    """Accept ``{"field": ..., "rows": [[...]]}`` or a bare list of rows."""
    if isinstance(data, dict):
        if "rows" not in data:
            raise FormatError("matrix object needs a 'rows' field")
        if field is None and "field" in data:
            text = str(data["field"])
            if text == "Fp" and "p" in data:
                text = f"Fp:{data['p']}"
            try:
                field = Field.parse(text)
            except LinalgError as exc:
                raise FormatError(str(exc)) from exc
        rows = data["rows"]
    else:
        rows = data
    field = field or Field(0)
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise FormatError("matrix rows must be a non-empty list of lists")
    if any(len(r) != len(rows[0]) for r in rows):
        raise FormatError("ragged matrix rows")
    return Matrix(field, tuple(tuple(_parse_entry(field, x) for x in r) for r in rows), _trusted=True)


def square_matrix_from_json(data, field: Field | None = None) -> Matrix:
    m = matrix_from_json(data, field)
    if not m.is_square:
        raise FormatError(f"expected a square matrix, got {m.rows}x{m.cols}")
    return m


# ---------------------------------------------------------------- objects

def object_to_json(obj: BraidedObject) -> dict:
    return {"field": obj.field.name, "rows": matrix_rows(obj.R), "koszul": obj.koszul}


def object_from_json(data, field: Field | None = None, koszul: bool | None = None) -> BraidedObject:
    R = square_matrix_from_json(data, field)
    if koszul is None:
        koszul = bool(data.get("koszul", True)) if isinstance(data, dict) else True
    try:
        return BraidedObject(R, koszul)
    except LinalgError as exc:
        raise FormatError(str(exc)) from exc


# ---------------------------------------------------------------- embeddings and braids

def embedding_to_json(phi: LinearEmbedding) -> dict:
    return {"squares": [{"a": _scalar(s.a), "x": _scalar(s.x), "y": _scalar(s.y)} for s in phi.squares]}


def embedding_from_json(data) -> LinearEmbedding:
    squares = data.get("squares") if isinstance(data, dict) else data
    if not isinstance(squares, list):
        raise FormatError("embedding needs a list of squares")
    out = []
    for t in squares:
        if isinstance(t, dict):
            if set(t) != {"a", "x", "y"}:
                raise FormatError(f"square record {t!r} needs exactly a, x, y")
            t = [t["a"], t["x"], t["y"]]
        if not isinstance(t, list) or len(t) != 3:
            raise FormatError(f"square {t!r} is not an [a, x, y] triple")
        try:
            out.append(Square(*(Fraction(str(v)) for v in t)))
        except (ValueError, ZeroDivisionError) as exc:
            raise FormatError(f"bad square {t!r}: {exc}") from exc
    return LinearEmbedding(tuple(out))


def braid_to_json(b: ColoredBraid) -> dict:
    return {"n": b.n, "word": list(b.word), "source_order": _one_based(b.source_order),
            "target_order": _one_based(b.target_order)}


def braid_from_json(data, n: int | None = None) -> ColoredBraid:
    """Accept a braid object or a bare word (then ``n`` is required)."""
    if isinstance(data, list):
        if n is None:
            raise FormatError("a bare braid word needs --n")
        word, src = data, None
    elif isinstance(data, dict):
        if "word" not in data:
            raise FormatError("braid needs a 'word' field")
        word = data["word"]
        n = int(data.get("n", n if n is not None else -1))
        if n < 0:
            raise FormatError("braid needs 'n'")
        src = _zero_based(data["source_order"], n) if "source_order" in data else None
    else:
        raise FormatError("braid must be an object or a list")
    if not all(isinstance(g, int) and not isinstance(g, bool) for g in word):
        raise FormatError("braid word entries must be integers")
    b = ColoredBraid.from_word(n, word, src)
    if isinstance(data, dict) and "target_order" in data and _zero_based(data["target_order"], n) != b.target_order:
        raise FormatError("target_order does not match the word")
    return b


# ---------------------------------------------------------------- systems

def system_to_json(s: FactorizedSystem) -> dict:
    out: dict[str, Any] = {
        "field": s.field.name,
        "object": {"rows": matrix_rows(s.obj.R)},
        "koszul": s.obj.koszul,
        "depth": s.depth,
        "gauge": [matrix_rows(m) for m in s.gauge],
    }
    if not s.unit_iso.is_identity():
        out["unit_iso"] = matrix_rows(s.unit_iso)
    if s.vertical:
        out["vertical"] = [{"order": _one_based(o), "alpha": list(a), "matrix": matrix_rows(m)} for (o, a), m in s.vertical]
    if s.orientation != "ccw":
        out["orientation"] = s.orientation
    return out


def system_from_json(data, base: Path | None = None, field: Field | None = None) -> FactorizedSystem:
    if not isinstance(data, dict):
        raise FormatError("system file must be a JSON object")
    for key in ("object", "depth"):
        if key not in data:
            raise FormatError(f"system file needs '{key}'")
    if field is None:
        try:
            field = Field.parse(str(data.get("field", "Q")))
        except LinalgError as exc:
            raise FormatError(str(exc)) from exc
    ref = data["object"]
    if isinstance(ref, str):
        ref = load_json((base or Path(".")) / ref)
    koszul = data.get("koszul")
    obj = object_from_json(ref, field, None if koszul is None else bool(koszul))
    depth = data["depth"]
    if not isinstance(depth, int) or isinstance(depth, bool) or depth < 0:
        raise FormatError("depth must be a non-negative integer")
    gauge = tuple(square_matrix_from_json(g, field) for g in data.get("gauge", []))
    unit = square_matrix_from_json(data["unit_iso"], field) if "unit_iso" in data else None
    vertical = []
    for ent in data.get("vertical", []):
        try:
            alpha = tuple(int(a) for a in ent["alpha"])
            order = _zero_based(ent["order"], len(alpha))
            vertical.append(((order, alpha), square_matrix_from_json(ent["matrix"], field)))
        except (KeyError, TypeError) as exc:
            raise FormatError(f"bad vertical entry {ent!r}") from exc
    orientation = data.get("orientation", "ccw")
    if orientation not in ("ccw", "cw"):
        raise FormatError("orientation must be ccw or cw")
    try:
        return FactorizedSystem(obj, depth, gauge, unit, tuple(vertical), orientation)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


# ---------------------------------------------------------------- towers

def tower_to_json(t: ProjectiveSystem) -> dict:
    trans = {f"{d},{e}": [matrix_rows(m) for m in ms] for (d, e), ms in sorted(t.transitions.items())}
    return {"levels": [system_to_json(l) for l in t.levels], "transitions": trans}


def tower_from_json(data, base: Path | None = None) -> ProjectiveSystem:
    if not isinstance(data, dict) or "levels" not in data:
        raise FormatError("tower file needs 'levels'")
    levels = tuple(system_from_json(l, base) for l in data["levels"])
    if not levels:
        raise FormatError("tower needs at least one level")
    field = levels[0].field
    trans = {}
    for key, ms in data.get("transitions", {}).items():
        try:
            d, e = (int(x) for x in key.split(","))
        except ValueError as exc:
            raise FormatError(f"bad transition key {key!r}") from exc
        trans[(d, e)] = tuple(square_matrix_from_json(m, field) for m in ms)
    try:
        return ProjectiveSystem(levels, trans)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


# ---------------------------------------------------------------- reports

def _value(x):
    if isinstance(x, (Fraction, int)) and not isinstance(x, bool):
        return _scalar(x)
    if isinstance(x, tuple):
        return list(x)
    return x


def violation_to_json(v: Violation) -> dict:
    return {
        "axiom": v.axiom,
        "degree": v.degree,
        "embedding": embedding_to_json(v.embedding)["squares"],
        "alpha": list(v.alpha),
        "braid": None if v.braid is None else list(v.braid),
        "entry": list(v.entry),
        "lhs": _value(v.lhs),
        "rhs": _value(v.rhs),
        "detail": v.detail,
    }


def tower_violation_to_json(v: TowerViolation) -> dict:
    return {
        "kind": v.kind,
        "levels": [v.d, v.e],
        "degree": v.degree,
        "entry": None if v.entry is None else list(v.entry),
        "lhs": _value(v.lhs),
        "rhs": _value(v.rhs),
        "detail": v.detail,
    }
