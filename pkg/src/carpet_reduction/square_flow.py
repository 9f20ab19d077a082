"""The square flow on ``J = [-1, 1]^2``.

``J`` is cut into vertical-sided trapezoids ``T[a, b]`` (columns ``a``,
rows ``b``) whose row heights flatten toward the left and right edges.  The
flow ``p`` sends each ``T[a, b]`` onto ``T[a, b+1]`` through the bilinear
charts, fixes ``dJ`` pointwise, and keeps every x-coordinate.  Its orbits
climb toward the top edge and descend toward the bottom edge.

Only the first quadrant is given by partial-sum formulas; the other three
are mirror images (column ``a < 0`` mirrors ``-a-1`` across ``x = 0``, row
``b < 0`` mirrors ``-b-1`` across ``y = 0``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .charts import AxisAffine, BilinearChart
from .deballing import DeballingRecipe, charted_seed
from .geometry import (
    Box, DomainError, Point, VSTrapezoid, bilinear_eval, bilinear_invert,
)
from .regions import Region

J_BOX = Box(Fraction(-1), Fraction(1), Fraction(-1), Fraction(1))
J_REGION = Region.box(J_BOX)

# alpha: J -> I = [0, 1]^2
ALPHA = AxisAffine(Fraction(1, 2), Fraction(1, 2), Fraction(1, 2), Fraction(1, 2))


class WindowExceeded(LookupError):
    """A query left the materialized window of an infinite construction."""

    def __init__(self, message: str, needed: dict | None = None):
        super().__init__(message)
        self.needed = needed or {}


@lru_cache(maxsize=None)
def s_seq(k: int, n: int) -> Fraction:
    """Row-height sequence ``s^k_n``, computed by its defining recursion."""
    if k < 0 or n < 0:
        raise DomainError("s_seq needs k, n >= 0")
    if n == 0:
        return Fraction(0)
    if k == 0:
        return Fraction(1, 2 ** n)
    # n = 2m - 1 or n = 2m
    return s_seq(k - 1, (n + 1) // 2) / 2


def partial_sum(k: int, b: int) -> Fraction:
    """``sum_{j=0}^{b} s^k_j`` in closed form.

    ``s^k`` is ``0`` followed by blocks of ``2^k`` equal terms
    ``2^-(k+m)``, ``m = 1, 2, ...``; each full block contributes ``2^-m``.
    """
    q, r = divmod(b, 2 ** k)
    return 1 - Fraction(1, 2 ** q) + Fraction(r, 2 ** (k + q + 1))


def tail_mass(k: int, b: int) -> Fraction:
    """``1 - sum_{j<=b} s^k_j``."""
    return 1 - partial_sum(k, b)


def column_x(a: int) -> Fraction:
    """Left x-coordinate of first-quadrant column ``a``: ``1 - 2^-a``."""
    return partial_sum(0, a)


def _mirror(i: int) -> int:
    return i if i >= 0 else -i - 1


@lru_cache(maxsize=65536)
def trapezoid(a: int, b: int) -> VSTrapezoid:
    am, bm = _mirror(a), _mirror(b)
    t = VSTrapezoid(
        column_x(am), column_x(am + 1),
        partial_sum(am, bm), partial_sum(am, bm + 1),
        partial_sum(am + 1, bm), partial_sum(am + 1, bm + 1),
    )
    if a < 0:
        t = t.mirrored_x()
    if b < 0:
        t = t.mirrored_y()
    return t


def _floor_log2(v: Fraction) -> int:
    """``floor(log2(v))`` for ``v >= 1``."""
    return (v.numerator // v.denominator).bit_length() - 1


def _ceil_log2(v: Fraction) -> int:
    f = _floor_log2(v)
    return f if Fraction(2) ** f == v else f + 1


def on_boundary_J(z: Point) -> bool:
    return (abs(z.x) == 1 and abs(z.y) <= 1) or (abs(z.y) == 1 and abs(z.x) <= 1)


@dataclass(frozen=True)
class SquareFlow:
    """The flow ``p`` restricted to a finite window of trapezoids.

    The window bounds the mirror indices: columns ``|a| <= a_max + 1`` and
    rows ``|b| <= b_max + 1``.  Anything beyond raises
    :class:`WindowExceeded` instead of being clamped.
    """

    a_max: int = 48
    b_max: int = 1 << 14

    def _column(self, x: Fraction) -> int:
        ax = abs(x)
        if x >= 0:
            am = _floor_log2(1 / (1 - ax))
        else:
            am = _ceil_log2(1 / (1 - ax)) - 1
        if am > self.a_max:
            raise WindowExceeded(f"x={x} needs column {am}", {"a": am})
        return am if x >= 0 else -am - 1

    def locate(self, z: Point) -> tuple[int, int]:
        """Index ``(a, b)`` of a trapezoid containing interior point ``z``.

        Points on shared edges go to the larger ``b``, then the larger ``a``.
        """
        if not (abs(z.x) < 1 and abs(z.y) < 1):
            raise DomainError(f"{z} not in the interior of J")
        a = self._column(z.x)
        am = _mirror(a)
        x0, x1 = column_x(am), column_x(am + 1)
        s = (abs(z.x) - x0) / (x1 - x0)

        def bottom(bm: int) -> Fraction:
            return (1 - s) * partial_sum(am, bm) + s * partial_sum(am + 1, bm)

        ay = abs(z.y)
        edge = bottom(self.b_max + 1)
        if (edge <= ay) if z.y >= 0 else (edge < ay):
            raise WindowExceeded(f"y={z.y} beyond row window", {"b": self.b_max + 1})
        lo, hi = 0, self.b_max + 1
        if z.y >= 0:
            # largest bm with bottom(bm) <= y
            while hi - lo > 1:
                mid = (lo + hi) // 2
                if bottom(mid) <= ay:
                    lo = mid
                else:
                    hi = mid
            return a, lo
        # smallest bm with bottom(bm + 1) >= |y|
        lo, hi = -1, self.b_max
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if bottom(mid + 1) >= ay:
                hi = mid
            else:
                lo = mid
        return a, -hi - 1

    def trapezoid(self, a: int, b: int) -> VSTrapezoid:
        if _mirror(a) > self.a_max + 1 or _mirror(b) > self.b_max + 1:
            raise WindowExceeded(f"T[{a},{b}] outside window", {"a": _mirror(a), "b": _mirror(b)})
        return trapezoid(a, b)

    def _step(self, z: Point, db: int) -> Point:
        if on_boundary_J(z):
            return z
        a, b = self.locate(z)
        s, t, degenerate = bilinear_invert(self.trapezoid(a, b), z)
        if degenerate:
            raise DomainError(f"degenerate fiber at {z}")
        return bilinear_eval(self.trapezoid(a, b + db), s, t)

    def p_apply(self, z: Point) -> Point:
        return self._step(z, 1)

    def p_inverse(self, z: Point) -> Point:
        return self._step(z, -1)

    def pi_orbit(self, z: Point, n: int) -> Point:
        step = self.p_apply if n >= 0 else self.p_inverse
        for _ in range(abs(n)):
            z = step(z)
        return z

    def orbit_trace(self, z: Point, n: int) -> list[Point]:
        step = self.p_apply if n >= 0 else self.p_inverse
        out = [z]
        for _ in range(abs(n)):
            z = step(z)
            out.append(z)
        return out

    # the same flow conjugated onto the unit square I
    def pi_unit(self, z: Point) -> Point:
        return ALPHA.forward(self.p_apply(ALPHA.inverse(z)))

    def pi_unit_inverse(self, z: Point) -> Point:
        return ALPHA.forward(self.p_inverse(ALPHA.inverse(z)))

    def pi_unit_power(self, z: Point, n: int) -> Point:
        w = ALPHA.inverse(z)
        return ALPHA.forward(self.pi_orbit(w, n))


DEFAULT_FLOW = SquareFlow()


def p_apply(flow: SquareFlow, z: Point) -> Point:
    return flow.p_apply(z)


def p_inverse(flow: SquareFlow, z: Point) -> Point:
    return flow.p_inverse(z)


def pi_orbit(flow: SquareFlow, z: Point, n: int) -> Point:
    return flow.pi_orbit(z, n)


def locate_trapezoid(flow: SquareFlow, z: Point) -> tuple[int, int]:
    return flow.locate(z)


def pi_on_unit_square(z: Point, flow: SquareFlow = DEFAULT_FLOW) -> Point:
    return flow.pi_unit(z)


def columns(a_max: int) -> list[int]:
    """Column indices whose mirror index is at most ``a_max``."""
    return list(range(-a_max - 1, a_max + 1))


def flow_chart(a: int, b: int) -> BilinearChart:
    return BilinearChart(trapezoid(a, b))


def square_recipe(flow: SquareFlow, base_depth: int, b_range: int,
                  a_range: int | None = None) -> DeballingRecipe:
    """Finite truncation of the flow-invariant recipe on ``J``.

    The base recipe is the depth-``base_depth`` seed in every trapezoid of
    row 0; it is transported by ``p^b`` for ``|b| <= b_range``.  Transport
    along ``p`` is exact on charts: ``p^b o chi[a, 0] = chi[a, b]``, so the
    row-``b`` balls are the row-0 source boxes under ``chi[a, b]``.
    """
    if base_depth < 0 or b_range < 0:
        raise DomainError("depth and range must be >= 0")
    a_range = flow.a_max if a_range is None else a_range
    balls = []
    for b in range(-b_range, b_range + 1):
        for a in columns(a_range):
            t = flow.trapezoid(a, b)
            balls += charted_seed(BilinearChart(t), Region.trapezoid(t), base_depth)
    return DeballingRecipe(J_REGION, tuple(balls), base_depth)


def transported(ball):
    """The ball one step up the flow: same source box, chart of the next row."""
    t = ball.chart.quad
    a, b = _index_of(t)
    t2 = trapezoid(a, b + 1)
    return type(ball)(ball.box, BilinearChart(t2), ball.source_cell, Region.trapezoid(t2))


def _index_of(t: VSTrapezoid) -> tuple[int, int]:
    c = bilinear_eval(t, Fraction(1, 2), Fraction(1, 2))
    return DEFAULT_FLOW.locate(c)
