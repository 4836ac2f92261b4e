"""JSON encoding of scalars, points, slopes and the instance/witness/graph files.

Rationals are strings ``"num/den"`` (``"num"`` when the denominator is 1), the
vertical slope is ``"inf"``, floats are bare JSON numbers and points are
two-element arrays.  A document is exact when every literal is a string and
float when any literal is a number; mixing the two is rejected.
"""
from __future__ import annotations

import json
import logging
import math
from fractions import Fraction
from typing import Any, Iterable, Sequence

from .errors import ModeError, PreconditionError
from .geometry import EPS, Point, Slope, SlopeSet, is_exact

log = logging.getLogger(__name__)


def format_scalar(v):
    if is_exact(v):
        v = Fraction(v)
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    return float(v)


def parse_scalar(v):
    if isinstance(v, bool):
        raise PreconditionError(f"boolean is not a scalar: {v!r}")
    if isinstance(v, str):
        try:
            return Fraction(v.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise PreconditionError(f"bad rational literal {v!r}") from exc
    if isinstance(v, int):
        # bare JSON integers are numbers, hence float mode
        return float(v)
    if isinstance(v, float):
        if not math.isfinite(v):
            raise PreconditionError("non-finite number")
        return v
    raise PreconditionError(f"not a scalar: {v!r}")


def _literal_modes(values: Iterable) -> set:
    modes = set()
    for v in values:
        if isinstance(v, str):
            if v.strip().lower() not in ("inf", "+inf", "infinity"):
                modes.add("exact")
        elif isinstance(v, (int, float)) and not isinstance(v, bool):
            modes.add("float")
    return modes


def document_mode(values: Iterable) -> str:
    modes = _literal_modes(values)
    if len(modes) > 1:
        raise ModeError("document mixes exact string literals and bare numbers")
    return "float" if modes == {"float"} else "exact"


def format_slope(s: Slope):
    if s.is_vertical:
        return "inf"
    return format_scalar(s.value)


def parse_slope(v, mode: str | None = None) -> Slope:
    if isinstance(v, str) and v.strip().lower() in ("inf", "+inf", "infinity"):
        return Slope.vertical(exact=(mode != "float"))
    value = parse_scalar(v)
    if mode == "float":
        value = float(value)
    return Slope.from_value(value)


def format_point(p: Point) -> list:
    return [format_scalar(p.x), format_scalar(p.y)]


def parse_points(items: Sequence) -> list:
    flat = [c for item in items for c in item]
    mode = document_mode(flat)
    pts = []
    for item in items:
        if len(item) != 2:
            raise PreconditionError(f"point must have two coordinates: {item!r}")
        x, y = parse_scalar(item[0]), parse_scalar(item[1])
        if mode == "float":
            x, y = float(x), float(y)
        pts.append(Point(x, y))
    return pts


def format_points(points: Iterable[Point]) -> list:
    return [format_point(p) for p in points]


def parse_slopes(items: Sequence, eps: float = EPS) -> SlopeSet:
    mode = document_mode(items)
    raw = [parse_slope(v, mode) for v in items]
    s = SlopeSet(raw, eps)
    if len(s) != len(raw) or list(s) != raw:
        log.warning("slope list was reordered or deduplicated on load (%d -> %d slopes)", len(raw), len(s))
    return s


def format_slopes(slopes: Iterable[Slope]) -> list:
    return [format_slope(s) for s in slopes]


def load_json(path) -> Any:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def dumps(obj: Any) -> str:
    """Deterministic JSON text; floats use Python's shortest round-trip repr."""
    return json.dumps(obj, sort_keys=False, separators=(", ", ": "))


# --- document schemas ------------------------------------------------------


def instance_to_json(slopes: Iterable[Slope], k: int) -> dict:
    return {"slopes": format_slopes(slopes), "k": int(k)}


def instance_from_json(doc: dict, eps: float = EPS):
    if not isinstance(doc, dict) or "slopes" not in doc or "k" not in doc:
        raise PreconditionError("instance must be an object with 'slopes' and 'k'")
    k = doc["k"]
    if not isinstance(k, int) or isinstance(k, bool) or k < 1:
        raise PreconditionError("instance 'k' must be a positive integer")
    return parse_slopes(doc["slopes"], eps), k


def points_from_json(doc) -> list:
    if isinstance(doc, dict):
        if "points" in doc:
            doc = doc["points"]
        elif "vertices" in doc:
            doc = doc["vertices"]
        else:
            raise PreconditionError("points document needs a 'points' array")
    if not isinstance(doc, list):
        raise PreconditionError("points must be a JSON array")
    return parse_points(doc)


def graph_from_json(doc: dict):
    from .reduction import Graph

    if not isinstance(doc, dict) or "vertices" not in doc or "edges" not in doc:
        raise PreconditionError("graph must be an object with 'vertices' and 'edges'")
    return Graph(doc["vertices"], [tuple(e) for e in doc["edges"]])


def graph_to_json(g) -> dict:
    return {"vertices": g.vertex_count, "edges": [list(e) for e in sorted(g.edges)]}


def witness_to_json(w) -> dict:
    return {"k": w.k, "triples": [[i, j, format_slope(s)] for i, j, s in w.triples]}


def witness_from_json(doc: dict):
    from .reduction import Witness

    if not isinstance(doc, dict) or "k" not in doc or "triples" not in doc:
        raise PreconditionError("witness must be an object with 'k' and 'triples'")
    mode = document_mode([t[2] for t in doc["triples"] if len(t) == 3])
    triples = []
    for t in doc["triples"]:
        if len(t) != 3:
            raise PreconditionError(f"malformed triple {t!r}")
        i, j, s = t
        triples.append((int(i), int(j), parse_slope(s, mode)))
    return Witness(int(doc["k"]), tuple(triples))
