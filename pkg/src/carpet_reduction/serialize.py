"""JSON encoding with exact rationals.

Fractions become ``"num/den"`` strings (never floats); points become
``[x, y]``; everything else is mapped structurally.  Output is sorted and
indented so equal inputs give byte-identical text.
"""

from __future__ import annotations

import dataclasses
import json
import math
from fractions import Fraction
from typing import Any

from .charts import AxisAffine, BilinearChart, Composite, Identity, Inverse, StripChart
from .checks import CheckResult
from .deballing import ChartedBox, DeballingRecipe, ValidationReport
from .geometry import Box, LInfBall, PLPath, Point, VSTrapezoid
from .regions import Region

SCHEMA = "v1"


def rat(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    """``"3/4"``, ``"-2"`` or ``"0.25"`` (read exactly)."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise ValueError(f"not a rational: {text!r}") from e


def parse_int_list(text: str) -> list[int]:
    text = text.strip()
    return [int(v) for v in text.split(",")] if text else []


def chart_json(c) -> dict:
    if isinstance(c, Identity):
        return {"type": "identity"}
    if isinstance(c, AxisAffine):
        return {"type": "axis-affine", "sx": rat(c.sx), "tx": rat(c.tx),
                "sy": rat(c.sy), "ty": rat(c.ty)}
    if isinstance(c, BilinearChart):
        return {"type": "bilinear", "quad": to_jsonable(c.quad)}
    if isinstance(c, StripChart):
        return {"type": "strip", "n": c.n}
    if isinstance(c, Inverse):
        return {"type": "inverse", "of": chart_json(c.inner)}
    if isinstance(c, Composite):
        return {"type": "compose", "outer": chart_json(c.outer), "inner": chart_json(c.inner)}
    raise TypeError(f"unknown chart {c!r}")


def region_json(r: Region) -> dict:
    if r.kind == "union":
        return {"kind": "union", "parts": [region_json(p) for p in r.parts]}
    if r.kind == "strip":
        return {"kind": "strip", "x": [rat(r.x_min), rat(r.x_max)]}
    if r.kind == "band":
        return {"kind": "band", "lower": to_jsonable(r.lower), "upper": to_jsonable(r.upper)}
    return {"kind": r.kind, "trapezoid": to_jsonable(r.trap)}


def to_jsonable(obj: Any) -> Any:
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Fraction):
        return rat(obj)
    if isinstance(obj, float):
        if math.isinf(obj):
            return "inf" if obj > 0 else "-inf"
        return obj
    if isinstance(obj, Point):
        return [rat(obj.x), rat(obj.y)]
    if isinstance(obj, PLPath):
        return [[rat(t), rat(v)] for t, v in obj.breakpoints]
    if isinstance(obj, LInfBall):
        return {"center": to_jsonable(obj.center), "radius": rat(obj.radius)}
    if isinstance(obj, Box):
        return {"x": [rat(obj.xmin), rat(obj.xmax)], "y": [rat(obj.ymin), rat(obj.ymax)]}
    if isinstance(obj, VSTrapezoid):
        return {"x": [rat(obj.x_left), rat(obj.x_right)],
                "left": [rat(obj.y_left_bottom), rat(obj.y_left_top)],
                "right": [rat(obj.y_right_bottom), rat(obj.y_right_top)]}
    if isinstance(obj, Region):
        return region_json(obj)
    if isinstance(obj, CheckResult):
        out = {"passed": obj.passed, "witnesses": to_jsonable(obj.witnesses),
               "slacks": to_jsonable(obj.slacks)}
        if obj.details:
            out["details"] = to_jsonable(obj.details)
        return out
    if isinstance(obj, ChartedBox):
        b = obj.box
        out = {"box": to_jsonable(b), "chart": chart_json(obj.chart),
               "cell": region_json(obj.cell)}
        if b.xmax - b.xmin == b.ymax - b.ymin:
            # source-side centre and radius; the chart carries it into place
            out.update(cx=rat((b.xmin + b.xmax) / 2), cy=rat((b.ymin + b.ymax) / 2),
                       r=rat((b.xmax - b.xmin) / 2))
        return out
    if isinstance(obj, DeballingRecipe):
        return {"region": region_json(obj.region), "depth": obj.depth,
                "balls": [to_jsonable(b) for b in obj.balls]}
    if isinstance(obj, ValidationReport):
        return {"valid": obj.valid, "disjoint": obj.disjoint, "contained": obj.contained,
                "coverage": to_jsonable(obj.coverage), "ball_count": obj.ball_count,
                "witnesses": obj.witnesses}
    if dataclasses.is_dataclass(obj):
        return {f.name: to_jsonable(getattr(obj, f.name))
                for f in dataclasses.fields(obj) if not f.name.startswith("_") and f.repr}
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [to_jsonable(v) for v in items]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj: Any) -> str:
    return json.dumps(to_jsonable(obj), sort_keys=True, indent=2) + "\n"


def family_json(state) -> dict:
    return {
        "schema": SCHEMA, "depth": state.depth, "horizon": state.horizon,
        "pairs": [list(p) for p in state.pairs], "paths": state.paths,
        "balls": state.balls, "audit": state.audit,
    }
