"""File formats: tagged-JSON index sets, flow files, Gram matrix CSV and
JSON, check reports, and the grid mini-language.

All writers are deterministic (sorted keys, fixed float formatting
through repr), so identical inputs produce byte-identical files.
"""

import json
import math

from .errors import InvalidSet
from .indexing import (
    EMPTY,
    ChainPoint,
    Empty,
    IndexingCollection,
    OrientedArc,
    Rectangle,
    ShortestArc,
)
from .flows import ElementaryFlow

__all__ = [
    "point_to_obj",
    "obj_to_point",
    "points_to_json",
    "parse_points_json",
    "load_points",
    "parse_inline_points",
    "gram_to_csv",
    "gram_to_obj",
    "flow_to_obj",
    "obj_to_flow",
    "load_flow",
    "parse_grid",
    "report_to_obj",
    "dump_json",
]


def point_to_obj(u):
    if isinstance(u, Empty):
        return {"kind": "empty"}
    if isinstance(u, Rectangle):
        return {"kind": "rect", "corner": list(u.corner)}
    if isinstance(u, OrientedArc):
        return {"kind": "oriented_arc", "angle": u.angle}
    if isinstance(u, ShortestArc):
        return {"kind": "shortest_arc", "angle": u.angle}
    if isinstance(u, ChainPoint):
        return {"kind": "chain", "t": u.t}
    raise InvalidSet(f"not an index set: {u!r}")


def obj_to_point(obj):
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ValueError(f"index set object needs a 'kind' tag: {obj!r}")
    kind = obj["kind"]
    try:
        if kind == "empty":
            return EMPTY
        if kind == "rect":
            return Rectangle(tuple(obj["corner"]))
        if kind == "oriented_arc":
            return OrientedArc(obj["angle"])
        if kind == "shortest_arc":
            return ShortestArc(obj["angle"])
        if kind == "chain":
            return ChainPoint(obj["t"])
    except KeyError as exc:
        raise ValueError(f"index set object missing field {exc}: {obj!r}")
    raise ValueError(f"unknown index set kind {kind!r}")


def points_to_json(points):
    return dump_json([point_to_obj(u) for u in points])


def parse_points_json(text):
    data = json.loads(text)
    if not isinstance(data, list):
        raise ValueError("point file must be a JSON array of tagged sets")
    return [obj_to_point(obj) for obj in data]


def parse_inline_points(text, coll):
    """Points given on the command line: {0.25,1} or {(1,1),(2,2)}.

    Scalars become the collection's natural point (one-coordinate
    rectangle, arc angle, or chain parameter); parenthesized tuples
    become rectangle corners; the word ``empty`` is the empty set.
    """
    body = text.strip()
    if not (body.startswith("{") and body.endswith("}")):
        raise ValueError(f"inline points must be brace-wrapped: {text!r}")
    body = body[1:-1].strip()
    tokens = []
    depth = 0
    current = []
    for ch in body:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ValueError(f"unbalanced parentheses in {text!r}")
        if ch == "," and depth == 0:
            tokens.append("".join(current))
            current = []
        else:
            current.append(ch)
    if current:
        tokens.append("".join(current))
    if depth != 0:
        raise ValueError(f"unbalanced parentheses in {text!r}")

    points = []
    for token in tokens:
        token = token.strip()
        if not token:
            raise ValueError(f"empty token in inline points {text!r}")
        if token == "empty":
            points.append(EMPTY)
        elif token.startswith("("):
            if not token.endswith(")"):
                raise ValueError(f"bad tuple token {token!r}")
            parts = [p for p in token[1:-1].split(",") if p.strip()]
            points.append(Rectangle(tuple(float(p) for p in parts)))
        else:
            value = float(token)
            if coll.kind == "rect":
                points.append(Rectangle((value,) * coll.dimension))
            elif coll.kind == "oriented":
                points.append(OrientedArc(value))
            elif coll.kind == "shortest":
                points.append(ShortestArc(value))
            else:
                points.append(ChainPoint(value))
    if not points:
        raise ValueError(f"no points in {text!r}")
    return points


def load_points(source, coll):
    """Points from an inline brace expression or a JSON file path."""
    if source.strip().startswith("{"):
        return parse_inline_points(source, coll)
    with open(source, "r", encoding="utf-8") as fh:
        return parse_points_json(fh.read())


def gram_to_csv(g):
    """n rows of n comma-separated doubles at 17 significant digits."""
    lines = []
    for i in range(g.n):
        lines.append(",".join("%.17g" % g.entries[i, j] for j in range(g.n)))
    return "\n".join(lines) + "\n"


def _label_obj(label):
    try:
        return point_to_obj(label)
    except InvalidSet:
        return label  # fBm grams label by clock value


def gram_to_obj(g):
    return {
        "h": g.h.h,
        "labels": [_label_obj(u) for u in g.labels],
        "entries": [[g.entries[i, j] for j in range(g.n)] for i in range(g.n)],
    }


def flow_to_obj(flow):
    return {
        "collection": flow.coll.spec_string(),
        "knots": [{"t": t, "set": point_to_obj(u)} for t, u in flow.knots],
    }


def obj_to_flow(obj):
    if not isinstance(obj, dict):
        raise ValueError("flow file must be a JSON object")
    try:
        coll = IndexingCollection.from_spec(obj["collection"])
        knots = tuple(
            (float(k["t"]), obj_to_point(k["set"])) for k in obj["knots"])
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed flow object: {exc}")
    return ElementaryFlow(coll, knots)


def load_flow(path):
    with open(path, "r", encoding="utf-8") as fh:
        return obj_to_flow(json.load(fh))


def parse_grid(text):
    """Grid values from "start:stop:step" or a JSON array.

    The colon form includes start and every start + k*step up to stop
    (a relative 1e-9 slack absorbs accumulated rounding at the stop).
    """
    text = text.strip()
    if text.startswith("["):
        values = json.loads(text)
        if not isinstance(values, list) or not values:
            raise ValueError(f"grid array must be a non-empty list: {text!r}")
        return [float(v) for v in values]
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"grid must be start:stop:step or a JSON array: {text!r}")
    start, stop, step = (float(p) for p in parts)
    if not (math.isfinite(start) and math.isfinite(stop) and math.isfinite(step)):
        raise ValueError(f"grid bounds must be finite: {text!r}")
    if step <= 0.0 or stop < start:
        raise ValueError(f"grid needs step > 0 and stop >= start: {text!r}")
    values = []
    k = 0
    while True:
        v = start + k * step
        if v > stop + 1e-9 * step:
            break
        values.append(v)
        k += 1
    if not values:
        raise ValueError(f"grid is empty: {text!r}")
    return values


def report_to_obj(report):
    return {
        "check": report.check,
        "instance": report.instance,
        "max_abs_error": report.max_abs_error,
        "tolerance": report.tolerance,
        "passed": report.passed,
        "details": _jsonable(report.details),
    }


def _jsonable(value):
    if isinstance(value, (tuple, list)):
        return [_jsonable(v) for v in value]
    if isinstance(value, float):
        return value if math.isfinite(value) else repr(value)
    return value


def dump_json(obj):
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"
