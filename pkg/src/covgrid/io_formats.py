"""Scenario ingestion, JSON serialization, and SVG rendering.

File formats (all numbers are 64-bit floats, written with Python's
shortest round-tripping representation so write->parse is bit-exact):

Scenario (input)::

    {"polygon": [[x, y], ...], "r": 70.71, "v": 12.0,
     "method": "agd", "mode": "valid", "free_endpoints": false,
     "exact_cap": 60}

Only "polygon" is required; a bare WKT ``POLYGON((x y, ...))`` string is
accepted as well. Decomposition and plan documents are produced by
`write_decomposition` / `write_plan` and read back by their parsers.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass

import numpy as np

from .decomposition import Cell, ChannelTrace, Decomposition
from .geometry import AffineTransform, DegeneratePolygon, Point, Polygon
from .planner import ArcSolution, PathPlan

DEFAULT_RADIUS = 50.0 * math.sqrt(2.0)
DEFAULT_SPEED = 12.0

METHODS = ("agd", "sgd")
MODES = ("paper", "valid", "heuristic")


class ParseError(ValueError):
    """Input text does not match the documented format."""


class ValidationError(ValueError):
    """Input parsed but carries unusable values."""


@dataclass(frozen=True)
class ScenarioFile:
    """A parsed planning scenario with defaults filled in."""

    polygon: Polygon
    radius: float = DEFAULT_RADIUS
    speed: float = DEFAULT_SPEED
    method: str = "agd"
    mode: str = "valid"
    free_endpoints: bool = False
    exact_cap: int | None = None


_WKT_RE = re.compile(r"^\s*POLYGON\s*\(\s*\((?P<ring>[^()]*)\)\s*\)\s*$", re.IGNORECASE)


def _parse_wkt_polygon(text: str) -> Polygon:
    m = _WKT_RE.match(text)
    if m is None:
        raise ParseError("malformed WKT: expected POLYGON((x y, x y, ...)) with one ring")
    pts = []
    for i, chunk in enumerate(m.group("ring").split(",")):
        parts = chunk.split()
        if len(parts) != 2:
            raise ParseError(f"WKT coordinate {i}: expected two numbers, got {chunk.strip()!r}")
        try:
            pts.append((float(parts[0]), float(parts[1])))
        except ValueError as exc:
            raise ParseError(f"WKT coordinate {i}: {exc}") from exc
    if len(pts) >= 2 and pts[0] == pts[-1]:
        pts.pop()  # closing vertex
    return _build_polygon(pts)


def _build_polygon(pairs) -> Polygon:
    try:
        return Polygon(pairs)
    except DegeneratePolygon as exc:
        raise ValidationError(f"invalid polygon: {exc}") from exc


def _require_number(obj, field, *, positive=False):
    v = obj[field]
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ParseError(f"field {field!r} must be a number, got {v!r}")
    v = float(v)
    if not math.isfinite(v):
        raise ValidationError(f"field {field!r} must be finite, got {v!r}")
    if positive and v <= 0:
        raise ValidationError(f"field {field!r} must be > 0, got {v}")
    return v


def parse_scenario(text: str) -> ScenarioFile:
    """Parse a scenario document (JSON object or WKT polygon string)."""
    stripped = text.lstrip()
    if stripped[:7].upper() == "POLYGON":
        return ScenarioFile(polygon=_parse_wkt_polygon(text))
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(obj, dict):
        raise ParseError("scenario must be a JSON object")
    known = {"polygon", "r", "v", "method", "mode", "free_endpoints", "exact_cap"}
    unknown = sorted(set(obj) - known)
    if unknown:
        raise ParseError(f"unknown field(s): {', '.join(unknown)}")
    if "polygon" not in obj:
        raise ParseError("missing required field 'polygon'")
    raw = obj["polygon"]
    if not isinstance(raw, list) or any(
        not isinstance(p, (list, tuple)) or len(p) != 2 for p in raw
    ):
        raise ParseError("field 'polygon' must be a list of [x, y] pairs")
    kwargs = {"polygon": _build_polygon(raw)}
    if "r" in obj:
        kwargs["radius"] = _require_number(obj, "r", positive=True)
    if "v" in obj:
        kwargs["speed"] = _require_number(obj, "v", positive=True)
    if "method" in obj:
        if obj["method"] not in METHODS:
            raise ValidationError(f"method must be one of {METHODS}, got {obj['method']!r}")
        kwargs["method"] = obj["method"]
    if "mode" in obj:
        if obj["mode"] not in MODES:
            raise ValidationError(f"mode must be one of {MODES}, got {obj['mode']!r}")
        kwargs["mode"] = obj["mode"]
    if "free_endpoints" in obj:
        if not isinstance(obj["free_endpoints"], bool):
            raise ParseError("field 'free_endpoints' must be a boolean")
        kwargs["free_endpoints"] = obj["free_endpoints"]
    if "exact_cap" in obj and obj["exact_cap"] is not None:
        cap = obj["exact_cap"]
        if isinstance(cap, bool) or not isinstance(cap, int):
            raise ParseError("field 'exact_cap' must be an integer")
        if cap < 1:
            raise ValidationError(f"exact_cap must be >= 1, got {cap}")
        kwargs["exact_cap"] = cap
    return ScenarioFile(**kwargs)


def write_scenario(s: ScenarioFile) -> str:
    doc = {
        "polygon": [[v.x, v.y] for v in s.polygon.vertices],
        "r": s.radius,
        "v": s.speed,
        "method": s.method,
        "mode": s.mode,
        "free_endpoints": s.free_endpoints,
        "exact_cap": s.exact_cap,
    }
    return json.dumps(doc, indent=2) + "\n"


# ---------------------------------------------------------------------------
# decomposition / plan documents
# ---------------------------------------------------------------------------


def write_decomposition(d: Decomposition) -> str:
    """Serialize a decomposition to deterministic, full-precision JSON."""
    doc = {
        "method": d.method,
        "r": d.radius,
        "hull_used": d.hull_used,
        "transform": {
            "angle": d.transform.angle,
            "translation": list(d.transform.translation),
        },
        "polygon": [[v.x, v.y] for v in d.polygon.vertices],
        "channels": [
            {
                "y_bottom": c.y_bottom,
                "y_top": c.y_top,
                "y_top_adj": c.y_top_adj,
                "span": c.span,
                "count": c.count,
                "excess": c.excess,
                "delta": c.delta,
                "x_min": c.x_min,
                "x_max": c.x_max,
            }
            for c in d.channels
        ],
        "cells": [
            {"center": [c.center.x, c.center.y], "width": c.width, "height": c.height}
            for c in d.cells
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def parse_decomposition(text: str) -> Decomposition:
    """Inverse of `write_decomposition`."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    try:
        transform = AffineTransform(
            float(doc["transform"]["angle"]),
            tuple(float(t) for t in doc["transform"]["translation"]),
        )
        cells = tuple(
            Cell(Point(float(c["center"][0]), float(c["center"][1])),
                 float(c["width"]), float(c["height"]))
            for c in doc["cells"]
        )
        channels = tuple(
            ChannelTrace(
                y_bottom=float(c["y_bottom"]),
                y_top=float(c["y_top"]),
                y_top_adj=float(c["y_top_adj"]),
                span=float(c["span"]),
                count=int(c["count"]),
                excess=float(c["excess"]),
                delta=float(c["delta"]),
                x_min=float(c["x_min"]),
                x_max=float(c["x_max"]),
            )
            for c in doc["channels"]
        )
        return Decomposition(
            cells=cells,
            channels=channels,
            method=str(doc["method"]),
            radius=float(doc["r"]),
            transform=transform,
            polygon=_build_polygon(doc["polygon"]),
            hull_used=bool(doc["hull_used"]),
        )
    except (KeyError, TypeError, IndexError) as exc:
        raise ParseError(f"malformed decomposition document: {exc!r}") from exc


def write_plan(plan: PathPlan | ArcSolution) -> str:
    """Serialize a path plan or a relaxed arc solution."""
    if isinstance(plan, PathPlan):
        doc = {
            "mode": plan.mode,
            "optimal": plan.optimal,
            "t_cov": plan.t_cov,
            "order": list(plan.order),
        }
    else:
        doc = {
            "mode": plan.mode,
            "optimal": plan.optimal,
            "t_cov": plan.t_cov,
            "single_path": plan.single_path,
            "arcs": [list(a) for a in plan.arcs],
            "entered": list(plan.entered),
            "exited": list(plan.exited),
        }
    return json.dumps(doc, indent=2) + "\n"


def parse_plan(text: str) -> PathPlan | ArcSolution:
    """Inverse of `write_plan`; the "order" key marks a flyable plan."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    try:
        if "order" in doc:
            return PathPlan(
                order=tuple(int(i) for i in doc["order"]),
                t_cov=float(doc["t_cov"]),
                mode=str(doc["mode"]),
                optimal=bool(doc["optimal"]),
            )
        return ArcSolution(
            arcs=tuple((int(a[0]), int(a[1])) for a in doc["arcs"]),
            entered=tuple(int(v) for v in doc["entered"]),
            exited=tuple(int(v) for v in doc["exited"]),
            t_cov=float(doc["t_cov"]),
            mode=str(doc["mode"]),
            optimal=bool(doc["optimal"]),
            single_path=bool(doc["single_path"]),
        )
    except (KeyError, TypeError, IndexError) as exc:
        raise ParseError(f"malformed plan document: {exc!r}") from exc


# ---------------------------------------------------------------------------
# SVG rendering
# ---------------------------------------------------------------------------


def _fmt(v: float) -> str:
    return f"{v:.6f}"


def render_svg(d: Decomposition, plan: PathPlan | ArcSolution | None = None) -> str:
    """Standalone SVG: polygon outline, cell rectangles, centers, flight path.

    The viewBox fits the polygon bounds with a 5% margin; y points north.
    Cells are drawn in their normalized frame inside a single transformed
    group, so they appear correctly rotated in original coordinates.
    """
    min_x, min_y, max_x, max_y = d.polygon.bounds()
    span = max(max_x - min_x, max_y - min_y)
    margin = 0.05 * span
    width = (max_x - min_x) + 2 * margin
    height = (max_y - min_y) + 2 * margin

    def to_svg(p) -> tuple[float, float]:
        return p[0] - min_x + margin, (max_y - p[1]) + margin

    # cells live in the normalized frame: compose world<-normalized with svg<-world
    inv = d.transform.invert()
    rot = inv.rotation
    a, c_ = rot[0, 0], rot[0, 1]
    b, dd = -rot[1, 0], -rot[1, 1]  # svg flips y
    e = inv.translation[0] - min_x + margin
    f = max_y - inv.translation[1] + margin
    stroke = max(span / 400.0, 1e-6)
    dot = 1.6 * stroke

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="0 0 {_fmt(width)} {_fmt(height)}">',
        f'<g id="cells" transform="matrix({_fmt(a)} {_fmt(b)} {_fmt(c_)} {_fmt(dd)} '
        f'{_fmt(e)} {_fmt(f)})" fill="#9ecae1" fill-opacity="0.35" '
        f'stroke="#3182bd" stroke-width="{_fmt(stroke)}">',
    ]
    bounds = d.normalized_cell_bounds()
    for cx, cy, hw, hh in bounds:
        lines.append(
            f'<rect x="{_fmt(cx - hw)}" y="{_fmt(cy - hh)}" '
            f'width="{_fmt(2 * hw)}" height="{_fmt(2 * hh)}"/>'
        )
    lines.append("</g>")

    outline = " ".join(
        "{},{}".format(_fmt(x), _fmt(y)) for x, y in map(to_svg, d.polygon.vertices)
    )
    lines.append(
        f'<polygon id="area" points="{outline}" fill="none" stroke="#000000" '
        f'stroke-width="{_fmt(1.5 * stroke)}"/>'
    )

    centers = [to_svg(c.center) for c in d.cells]
    for x, y in centers:
        lines.append(
            f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="{_fmt(dot)}" fill="#636363"/>'
        )

    if plan is not None and d.cells:
        if isinstance(plan, PathPlan):
            pts = [centers[i - 1] for i in plan.order]
            path = " ".join("{},{}".format(_fmt(x), _fmt(y)) for x, y in pts)
            lines.append(
                f'<polyline id="route" points="{path}" fill="none" '
                f'stroke="#d62728" stroke-width="{_fmt(1.2 * stroke)}"/>'
            )
            start, end = pts[0], pts[-1]
        else:
            for i, j in plan.arcs:
                (x1, y1), (x2, y2) = centers[i - 1], centers[j - 1]
                lines.append(
                    f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" '
                    f'y2="{_fmt(y2)}" stroke="#d62728" stroke-width="{_fmt(1.2 * stroke)}"/>'
                )
            start, end = centers[0], centers[-1]
        lines.append(
            f'<circle id="start" cx="{_fmt(start[0])}" cy="{_fmt(start[1])}" '
            f'r="{_fmt(2.5 * dot)}" fill="#2ca02c"/>'
        )
        lines.append(
            f'<circle id="end" cx="{_fmt(end[0])}" cy="{_fmt(end[1])}" '
            f'r="{_fmt(2.5 * dot)}" fill="#d62728"/>'
        )

    lines.append("</svg>")
    return "\n".join(lines) + "\n"
