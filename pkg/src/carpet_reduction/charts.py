"""Planar homeomorphisms presented as exactly invertible charts.

Every map preserves vertical lines (its x-part depends on x alone), which
is what lets recipes be transported without leaving exact arithmetic.  A
chart knows how to map points both ways and, where the image is again a
region of a supported kind, how to transport regions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .geometry import (
    Box, DomainError, Point, VSTrapezoid, bilinear_eval, bilinear_invert,
)
from .regions import Region


class ShapeError(DomainError):
    """The image of a shape under a chart is not of a supported kind."""


class Chart:
    """Base class.  Subclasses implement ``forward`` and ``inverse``."""

    axis_affine = False

    def forward(self, p: Point) -> Point:
        raise NotImplementedError

    def inverse(self, p: Point) -> Point:
        raise NotImplementedError

    def __call__(self, p: Point) -> Point:
        return self.forward(p)

    def inverted(self) -> "Chart":
        return Inverse(self)

    def image_region(self, region: Region) -> Region:
        raise ShapeError(f"{type(self).__name__} cannot transport {region.kind}")

    def preimage_region(self, region: Region) -> Region:
        return self.inverted().image_region(region)

    def then(self, outer: "Chart") -> "Chart":
        """``outer o self``."""
        return compose(outer, self)


@dataclass(frozen=True)
class Identity(Chart):
    axis_affine = True

    def forward(self, p):
        return p

    def inverse(self, p):
        return p

    def inverted(self):
        return self

    def image_region(self, region):
        return region

    def image_box(self, b: Box) -> Box:
        return b


@dataclass(frozen=True)
class AxisAffine(Chart):
    """``(x, y) -> (sx*x + tx, sy*y + ty)`` with positive scales."""

    sx: Fraction
    tx: Fraction
    sy: Fraction
    ty: Fraction
    axis_affine = True

    def __post_init__(self):
        if self.sx <= 0 or self.sy <= 0:
            raise DomainError("axis-affine scales must be positive")

    @classmethod
    def translation(cls, dx, dy) -> "AxisAffine":
        return cls(Fraction(1), Fraction(dx), Fraction(1), Fraction(dy))

    def forward(self, p):
        return Point(self.sx * p.x + self.tx, self.sy * p.y + self.ty)

    def inverse(self, p):
        return Point((p.x - self.tx) / self.sx, (p.y - self.ty) / self.sy)

    def inverted(self):
        return AxisAffine(1 / self.sx, -self.tx / self.sx, 1 / self.sy, -self.ty / self.sy)

    def image_box(self, b: Box) -> Box:
        lo, hi = self.forward(Point(b.xmin, b.ymin)), self.forward(Point(b.xmax, b.ymax))
        return Box(lo.x, hi.x, lo.y, hi.y)

    def image_trapezoid(self, t: VSTrapezoid) -> VSTrapezoid:
        f = self.forward
        lb, lt = f(t.vertex(0, 0)), f(t.vertex(0, 1))
        rb, rt = f(t.vertex(1, 0)), f(t.vertex(1, 1))
        return VSTrapezoid(lb.x, rb.x, lb.y, lt.y, rb.y, rt.y)

    def image_region(self, region):
        if region.kind == "box":
            return Region.box(self.image_box(Box(region.x_min, region.x_max,
                                                 region.trap.y_left_bottom,
                                                 region.trap.y_left_top)))
        if region.kind == "trapezoid":
            return Region.trapezoid(self.image_trapezoid(region.trap))
        if region.kind == "strip":
            return Region.strip(self.sx * region.x_min + self.tx,
                                self.sx * region.x_max + self.tx)
        if region.kind == "union":
            return Region.union(*(self.image_region(p) for p in region.parts))
        return super().image_region(region)


@dataclass(frozen=True)
class BilinearChart(Chart):
    """The bilinear chart from the unit square onto a trapezoid."""

    quad: VSTrapezoid

    def forward(self, p):
        return bilinear_eval(self.quad, p.x, p.y)

    def inverse(self, p):
        s, t, degenerate = bilinear_invert(self.quad, p)
        if degenerate:
            raise DomainError(f"collapsed fiber at {p}")
        return Point(s, t)

    def image_region(self, region):
        if region.kind == "box":
            b = Box(region.x_min, region.x_max, region.trap.y_left_bottom,
                    region.trap.y_left_top)
            # straight source edges go to straight edges: x is affine in s and
            # y is affine in s along each horizontal source line
            lb = self.forward(Point(b.xmin, b.ymin))
            lt = self.forward(Point(b.xmin, b.ymax))
            rb = self.forward(Point(b.xmax, b.ymin))
            rt = self.forward(Point(b.xmax, b.ymax))
            return Region.trapezoid(VSTrapezoid(lb.x, rb.x, lb.y, lt.y, rb.y, rt.y))
        return super().image_region(region)


@dataclass(frozen=True)
class StripChart(Chart):
    """The strip chart ``r_n`` from ``L_n = [2/4^(n+1), 1/4^n] x R`` onto
    ``L = [0, 1] x R``.

    For ``n > 0`` the vertical scale interpolates linearly between ``n + 1``
    on the left edge and ``n`` on the right edge; ``r_0`` only stretches x.
    """

    n: int

    @property
    def scale(self) -> Fraction:
        return Fraction(4 ** (self.n + 1), 2)

    @property
    def x_range(self) -> tuple[Fraction, Fraction]:
        return Fraction(2, 4 ** (self.n + 1)), Fraction(1, 4 ** self.n)

    def y_factor(self, x: Fraction) -> Fraction:
        if self.n == 0:
            return Fraction(1)
        return self.n + 2 - self.scale * x

    def _check(self, x):
        lo, hi = self.x_range
        if not lo <= x <= hi:
            raise DomainError(f"x={x} outside L_{self.n}")

    def forward(self, p):
        self._check(p.x)
        return Point(self.scale * p.x - 1, self.y_factor(p.x) * p.y)

    def inverse(self, p):
        if not 0 <= p.x <= 1:
            raise DomainError(f"x={p.x} outside L")
        x = (p.x + 1) / self.scale
        return Point(x, p.y / self.y_factor(x))

    def image_region(self, region):
        if region.kind == "strip" and (region.x_min, region.x_max) == self.x_range:
            return Region.strip(0, 1)
        return super().image_region(region)

    def preimage_region(self, region):
        if region.kind == "strip" and (region.x_min, region.x_max) == (0, 1):
            return Region.strip(*self.x_range)
        raise ShapeError(f"r_{self.n} preimage of {region.kind} unsupported")


@dataclass(frozen=True)
class Inverse(Chart):
    inner: Chart

    def forward(self, p):
        return self.inner.inverse(p)

    def inverse(self, p):
        return self.inner.forward(p)

    def inverted(self):
        return self.inner

    def image_region(self, region):
        return self.inner.preimage_region(region)

    def preimage_region(self, region):
        return self.inner.image_region(region)


@dataclass(frozen=True)
class Composite(Chart):
    """``outer o inner``."""

    outer: Chart
    inner: Chart

    def forward(self, p):
        return self.outer.forward(self.inner.forward(p))

    def inverse(self, p):
        return self.inner.inverse(self.outer.inverse(p))

    def inverted(self):
        return compose(self.inner.inverted(), self.outer.inverted())

    def image_region(self, region):
        return self.outer.image_region(self.inner.image_region(region))


def compose(outer: Chart, inner: Chart) -> Chart:
    """``outer o inner`` with identities dropped and affine pairs fused."""
    if isinstance(outer, Identity):
        return inner
    if isinstance(inner, Identity):
        return outer
    if isinstance(outer, AxisAffine) and isinstance(inner, AxisAffine):
        return AxisAffine(outer.sx * inner.sx, outer.sx * inner.tx + outer.tx,
                          outer.sy * inner.sy, outer.sy * inner.ty + outer.ty)
    if isinstance(outer, AxisAffine) and isinstance(inner, Composite) \
            and isinstance(inner.outer, AxisAffine):
        return compose(compose(outer, inner.outer), inner.inner)
    if isinstance(outer, Inverse) and outer.inner == inner:
        return Identity()
    if isinstance(inner, Inverse) and inner.inner == outer:
        return Identity()
    return Composite(outer, inner)
