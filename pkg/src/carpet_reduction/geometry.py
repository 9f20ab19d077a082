"""Exact rational planar primitives.

Every coordinate is a :class:`fractions.Fraction`; nothing in this module
ever rounds.  The shapes here (axis boxes, vertical-sided trapezoids and
piecewise-linear graphs over ``[0, 1]``) are the building blocks of all the
maps and recipes in the package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence, Union

Number = Union[int, Fraction, str]

ZERO = Fraction(0)
ONE = Fraction(1)
HALF = Fraction(1, 2)


class DomainError(ValueError):
    """A point or parameter lies outside the domain of an operation."""


def Q(value: Number) -> Fraction:
    """Coerce ``value`` to an exact rational.

    Floats are rejected: they would silently smuggle rounding into every
    downstream identity.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"exact rational expected, got {value!r}")
    return Fraction(value)


def floor_int(y: Number) -> int:
    """The unique integer ``m`` with ``0 <= y - m < 1``."""
    return math.floor(Q(y))


class Point(NamedTuple):
    x: Fraction
    y: Fraction

    @classmethod
    def of(cls, x: Number, y: Number) -> "Point":
        return cls(Q(x), Q(y))

    def __str__(self) -> str:
        return f"({self.x}, {self.y})"


def P(x: Number, y: Number) -> Point:
    return Point(Q(x), Q(y))


@dataclass(frozen=True)
class Box:
    """Closed axis-aligned rectangle ``[xmin, xmax] x [ymin, ymax]``."""

    xmin: Fraction
    xmax: Fraction
    ymin: Fraction
    ymax: Fraction

    def __post_init__(self):
        if not (self.xmin < self.xmax and self.ymin < self.ymax):
            raise DomainError(f"degenerate box {self}")

    @classmethod
    def of(cls, xmin: Number, xmax: Number, ymin: Number, ymax: Number) -> "Box":
        return cls(Q(xmin), Q(xmax), Q(ymin), Q(ymax))

    @property
    def center(self) -> Point:
        return Point((self.xmin + self.xmax) / 2, (self.ymin + self.ymax) / 2)

    @property
    def corners(self) -> tuple[Point, Point, Point, Point]:
        return (
            Point(self.xmin, self.ymin),
            Point(self.xmin, self.ymax),
            Point(self.xmax, self.ymin),
            Point(self.xmax, self.ymax),
        )

    @property
    def area(self) -> Fraction:
        return (self.xmax - self.xmin) * (self.ymax - self.ymin)

    def contains(self, p: Point) -> bool:
        return self.xmin <= p.x <= self.xmax and self.ymin <= p.y <= self.ymax

    def interior_contains(self, p: Point) -> bool:
        return self.xmin < p.x < self.xmax and self.ymin < p.y < self.ymax

    def intersects(self, other: "Box") -> bool:
        """Closed-set intersection test."""
        return not (
            self.xmax < other.xmin
            or other.xmax < self.xmin
            or self.ymax < other.ymin
            or other.ymax < self.ymin
        )

    def linf_gap(self, other: "Box") -> Fraction:
        """l-infinity distance between the two closed boxes (0 if they meet)."""
        gx = max(other.xmin - self.xmax, self.xmin - other.xmax, ZERO)
        gy = max(other.ymin - self.ymax, self.ymin - other.ymax, ZERO)
        return max(gx, gy)

    def inside_interior_of(self, other: "Box") -> bool:
        return (
            other.xmin < self.xmin
            and self.xmax < other.xmax
            and other.ymin < self.ymin
            and self.ymax < other.ymax
        )


@dataclass(frozen=True)
class LInfBall:
    """Closed l-infinity ball: the square of half-side ``radius``."""

    center: Point
    radius: Fraction

    def __post_init__(self):
        if self.radius <= 0:
            raise DomainError("ball radius must be positive")

    @classmethod
    def of(cls, cx: Number, cy: Number, r: Number) -> "LInfBall":
        return cls(P(cx, cy), Q(r))

    @cached_property
    def box(self) -> Box:
        c, r = self.center, self.radius
        return Box(c.x - r, c.x + r, c.y - r, c.y + r)

    def contains(self, p: Point) -> bool:
        return max(abs(p.x - self.center.x), abs(p.y - self.center.y)) <= self.radius

    def interior_contains(self, p: Point) -> bool:
        return max(abs(p.x - self.center.x), abs(p.y - self.center.y)) < self.radius

    def linf_gap(self, other: "LInfBall") -> Fraction:
        return self.box.linf_gap(other.box)


@dataclass(frozen=True)
class VSTrapezoid:
    """Quadrilateral with vertical left and right sides.

    The bottom and top edges are straight segments, so at any abscissa the
    vertical fiber is an interval whose ends are linear in ``x``.
    """

    x_left: Fraction
    x_right: Fraction
    y_left_bottom: Fraction
    y_left_top: Fraction
    y_right_bottom: Fraction
    y_right_top: Fraction

    def __post_init__(self):
        if not self.x_left < self.x_right:
            raise DomainError("trapezoid needs x_left < x_right")
        if self.y_left_bottom > self.y_left_top or self.y_right_bottom > self.y_right_top:
            raise DomainError("trapezoid sides must have bottom <= top")

    @classmethod
    def from_box(cls, box: Box) -> "VSTrapezoid":
        return cls(box.xmin, box.xmax, box.ymin, box.ymax, box.ymin, box.ymax)

    @classmethod
    def unit(cls) -> "VSTrapezoid":
        return cls(ZERO, ONE, ZERO, ONE, ZERO, ONE)

    def vertex(self, i: int, j: int) -> Point:
        """Vertex ``v^{i,j}``: ``i`` picks left/right, ``j`` bottom/top."""
        x = self.x_right if i else self.x_left
        if i:
            y = self.y_right_top if j else self.y_right_bottom
        else:
            y = self.y_left_top if j else self.y_left_bottom
        return Point(x, y)

    @property
    def vertices(self) -> dict[tuple[int, int], Point]:
        return {(i, j): self.vertex(i, j) for i in (0, 1) for j in (0, 1)}

    def _s(self, x: Fraction) -> Fraction:
        return (x - self.x_left) / (self.x_right - self.x_left)

    def bottom_at(self, x: Fraction) -> Fraction:
        s = self._s(x)
        return (1 - s) * self.y_left_bottom + s * self.y_right_bottom

    def top_at(self, x: Fraction) -> Fraction:
        s = self._s(x)
        return (1 - s) * self.y_left_top + s * self.y_right_top

    def contains(self, p: Point) -> bool:
        if not self.x_left <= p.x <= self.x_right:
            return False
        return self.bottom_at(p.x) <= p.y <= self.top_at(p.x)

    def interior_contains(self, p: Point) -> bool:
        if not self.x_left < p.x < self.x_right:
            return False
        return self.bottom_at(p.x) < p.y < self.top_at(p.x)

    @property
    def bbox(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (
            self.x_left,
            self.x_right,
            min(self.y_left_bottom, self.y_right_bottom),
            max(self.y_left_top, self.y_right_top),
        )

    def mirrored_x(self) -> "VSTrapezoid":
        """Reflection across the line ``x = 0``."""
        return VSTrapezoid(
            -self.x_right, -self.x_left,
            self.y_right_bottom, self.y_right_top,
            self.y_left_bottom, self.y_left_top,
        )

    def mirrored_y(self) -> "VSTrapezoid":
        """Reflection across the line ``y = 0``."""
        return VSTrapezoid(
            self.x_left, self.x_right,
            -self.y_left_top, -self.y_left_bottom,
            -self.y_right_top, -self.y_right_bottom,
        )


def _check_unit(v: Fraction, name: str) -> None:
    if not ZERO <= v <= ONE:
        raise DomainError(f"{name}={v} outside [0, 1]")


def bilinear_eval(quad: VSTrapezoid, s: Number, t: Number) -> Point:
    """Bilinear chart of ``quad`` evaluated at ``(s, t)`` in the unit square."""
    s, t = Q(s), Q(t)
    _check_unit(s, "s")
    _check_unit(t, "t")
    v00, v01 = quad.vertex(0, 0), quad.vertex(0, 1)
    v10, v11 = quad.vertex(1, 0), quad.vertex(1, 1)
    a, b, c, d = (1 - s) * (1 - t), (1 - s) * t, s * (1 - t), s * t
    return Point(
        a * v00.x + b * v01.x + c * v10.x + d * v11.x,
        a * v00.y + b * v01.y + c * v10.y + d * v11.y,
    )


class ChartCoords(NamedTuple):
    s: Fraction
    t: Fraction
    degenerate: bool = False


def bilinear_invert(quad: VSTrapezoid, p: Point) -> ChartCoords:
    """Inverse of :func:`bilinear_eval`.

    Vertical sides make this rational: ``s`` comes from ``x`` alone and then
    ``t`` is linear along the fiber.  A collapsed fiber yields ``t = 0`` and
    ``degenerate=True``.
    """
    if not quad.contains(p):
        raise DomainError(f"{p} not in trapezoid")
    s = quad._s(p.x)
    lo, hi = quad.bottom_at(p.x), quad.top_at(p.x)
    if hi == lo:
        return ChartCoords(s, ZERO, True)
    return ChartCoords(s, (p.y - lo) / (hi - lo))


class PLPath:
    """Continuous piecewise-linear function on ``[0, 1]``.

    Stored as its breakpoints ``(t, value)``; the graph is the polyline
    through them.
    """

    __slots__ = ("breakpoints",)

    def __init__(self, breakpoints: Iterable[tuple[Number, Number]]):
        bps = tuple((Q(t), Q(v)) for t, v in breakpoints)
        if len(bps) < 2 or bps[0][0] != 0 or bps[-1][0] != 1:
            raise DomainError("breakpoints must start at t=0 and end at t=1")
        for (t0, _), (t1, _) in zip(bps, bps[1:]):
            if not t0 < t1:
                raise DomainError("breakpoint abscissae must increase strictly")
        self.breakpoints = bps

    @classmethod
    def line(cls, a: Number, b: Number) -> "PLPath":
        return cls([(0, a), (1, b)])

    @classmethod
    def constant(cls, c: Number) -> "PLPath":
        return cls([(0, c), (1, c)])

    def __call__(self, t: Number) -> Fraction:
        return pl_eval(self, t)

    def __eq__(self, other) -> bool:
        return isinstance(other, PLPath) and self.breakpoints == other.breakpoints

    def __hash__(self) -> int:
        return hash(self.breakpoints)

    def __repr__(self) -> str:
        inner = ", ".join(f"({t}, {v})" for t, v in self.breakpoints)
        return f"PLPath([{inner}])"

    def __len__(self) -> int:
        return len(self.breakpoints)

    @property
    def start(self) -> Fraction:
        return self.breakpoints[0][1]

    @property
    def end(self) -> Fraction:
        return self.breakpoints[-1][1]

    def segments(self):
        return zip(self.breakpoints, self.breakpoints[1:])

    def is_constant(self) -> bool:
        return all(v == self.start for _, v in self.breakpoints)

    def shifted(self, dv: Number) -> "PLPath":
        dv = Q(dv)
        return PLPath((t, v + dv) for t, v in self.breakpoints)

    def min_on(self, t0: Fraction, t1: Fraction) -> Fraction:
        """Exact minimum over ``[t0, t1]`` (attained at a breakpoint or end)."""
        vals = [pl_eval(self, t0), pl_eval(self, t1)]
        vals += [v for t, v in self.breakpoints if t0 < t < t1]
        return min(vals)

    def max_on(self, t0: Fraction, t1: Fraction) -> Fraction:
        vals = [pl_eval(self, t0), pl_eval(self, t1)]
        vals += [v for t, v in self.breakpoints if t0 < t < t1]
        return max(vals)


def pl_eval(path: PLPath, t: Number) -> Fraction:
    t = Q(t)
    _check_unit(t, "t")
    bps = path.breakpoints
    lo, hi = 0, len(bps) - 1
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if bps[mid][0] <= t:
            lo = mid
        else:
            hi = mid
    (t0, v0), (t1, v1) = bps[lo], bps[hi]
    if t == t0:
        return v0
    if t == t1:
        return v1
    return v0 + (v1 - v0) * (t - t0) / (t1 - t0)


def _merged_grid(*paths: PLPath) -> list[Fraction]:
    return sorted({t for p in paths for t, _ in p.breakpoints})


def paths_equal_somewhere(pa: PLPath, pb: PLPath) -> bool:
    """True iff ``pa(t) == pb(t)`` for some ``t`` in ``[0, 1]``.

    ``pa - pb`` is linear between merged breakpoints, so it vanishes
    somewhere iff it is zero at a grid point or changes sign across a cell.
    """
    diffs = [pl_eval(pa, t) - pl_eval(pb, t) for t in _merged_grid(pa, pb)]
    if any(d == 0 for d in diffs):
        return True
    return any((d0 < 0) != (d1 < 0) for d0, d1 in zip(diffs, diffs[1:]))


def min_gap(lower: PLPath, upper: PLPath) -> Fraction:
    """``min_t upper(t) - lower(t)``; exact because the difference is PL."""
    return min(pl_eval(upper, t) - pl_eval(lower, t) for t in _merged_grid(lower, upper))


def pl_max(f: PLPath, g: PLPath) -> PLPath:
    """Pointwise maximum of two PL paths, with crossings as new breakpoints."""
    grid = _merged_grid(f, g)
    out: list[tuple[Fraction, Fraction]] = []
    prev = None
    for t in grid:
        fv, gv = pl_eval(f, t), pl_eval(g, t)
        if prev is not None:
            t0, d0 = prev
            d1 = fv - gv
            if d0 * d1 < 0:
                tc = t0 + (t - t0) * d0 / (d0 - d1)
                out.append((tc, pl_eval(f, tc)))
        out.append((t, max(fv, gv)))
        prev = (t, fv - gv)
    return PLPath(simplify_breakpoints(out))


def simplify_breakpoints(
    bps: Sequence[tuple[Fraction, Fraction]],
) -> list[tuple[Fraction, Fraction]]:
    """Drop interior breakpoints that are collinear with their neighbours."""
    out = [bps[0]]
    for i in range(1, len(bps) - 1):
        (t0, v0), (t1, v1), (t2, v2) = out[-1], bps[i], bps[i + 1]
        if (v1 - v0) * (t2 - t1) != (v2 - v1) * (t1 - t0):
            out.append(bps[i])
    out.append(bps[-1])
    return out


def linf_dist_point_segment(
    c: Point, p0: tuple[Fraction, Fraction], p1: tuple[Fraction, Fraction]
) -> Fraction:
    """l-infinity distance from ``c`` to the segment ``p0 p1`` (with p0.t < p1.t).

    ``max(|t - cx|, |f(t) - cy|)`` is convex and piecewise linear in ``t``;
    its minimum sits at an endpoint or at one of the kinks enumerated below.
    """
    (t0, v0), (t1, v1) = p0, p1
    slope = (v1 - v0) / (t1 - t0)

    def f(t):
        return v0 + slope * (t - t0)

    cands = {t0, t1, c.x}
    if slope != 0:
        cands.add(t0 + (c.y - v0) / slope)
    # |t - cx| == |f(t) - cy|  ->  t - cx = +-(f(t) - cy)
    for sgn in (1, -1):
        denom = 1 - sgn * slope
        if denom != 0:
            cands.add((c.x + sgn * (v0 - slope * t0 - c.y)) / denom)
    best = None
    for t in cands:
        if t0 <= t <= t1:
            d = max(abs(t - c.x), abs(f(t) - c.y))
            if best is None or d < best:
                best = d
    return best


def linf_dist_point_path(c: Point, path: PLPath) -> Fraction:
    return min(linf_dist_point_segment(c, a, b) for a, b in path.segments())


def box_meets_path(box: Box, path: PLPath) -> bool:
    """True iff the closed box meets the graph of ``path``.

    Each segment is clipped to the box's x-range; being linear there, it
    meets the box iff its values at the clip ends straddle ``[ymin, ymax]``.
    """
    if box.xmax < 0 or box.xmin > 1:
        return False
    for (t0, v0), (t1, v1) in path.segments():
        if t1 < box.xmin:
            continue
        if t0 > box.xmax:
            break
        lo, hi = max(t0, box.xmin), min(t1, box.xmax)
        slope = (v1 - v0) / (t1 - t0)
        ya, yb = v0 + slope * (lo - t0), v0 + slope * (hi - t0)
        if min(ya, yb) <= box.ymax and max(ya, yb) >= box.ymin:
            return True
    return False


def ball_avoids_path(ball: LInfBall, path: PLPath) -> bool:
    """True iff the closed ball misses the graph of ``path``."""
    return not box_meets_path(ball.box, path)


def point_on_path(p: Point, path: PLPath) -> bool:
    return ZERO <= p.x <= ONE and pl_eval(path, p.x) == p.y
