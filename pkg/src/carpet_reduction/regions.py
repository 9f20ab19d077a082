"""Planar regions with vertical sides.

All regions except unions are described fiberwise: an x-range plus a lower
and an upper boundary function.  For boxes, strips and trapezoids the
boundaries are linear (or infinite); for bands they are PL paths.  This
makes containment and interior-disjointness decidable exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .geometry import Box, DomainError, PLPath, Point, VSTrapezoid, pl_eval

INF = math.inf


@dataclass(frozen=True)
class Region:
    kind: str  # "box" | "strip" | "trapezoid" | "band" | "union"
    x_min: Fraction | None = None
    x_max: Fraction | None = None
    trap: Optional[VSTrapezoid] = None
    lower: Optional[PLPath] = None
    upper: Optional[PLPath] = None
    parts: tuple["Region", ...] = field(default_factory=tuple)

    # constructors ------------------------------------------------------
    @classmethod
    def box(cls, b: Box) -> "Region":
        return cls("box", b.xmin, b.xmax, trap=VSTrapezoid.from_box(b))

    @classmethod
    def strip(cls, x_min, x_max) -> "Region":
        x_min, x_max = Fraction(x_min), Fraction(x_max)
        if not x_min < x_max:
            raise DomainError("empty strip")
        return cls("strip", x_min, x_max)

    @classmethod
    def trapezoid(cls, t: VSTrapezoid) -> "Region":
        return cls("trapezoid", t.x_left, t.x_right, trap=t)

    @classmethod
    def band(cls, lower: PLPath, upper: PLPath) -> "Region":
        """Region between two PL graphs over ``[0, 1]``."""
        return cls("band", Fraction(0), Fraction(1), lower=lower, upper=upper)

    @classmethod
    def union(cls, *parts: "Region") -> "Region":
        return cls("union", parts=tuple(parts))

    # fiber description ---------------------------------------------------
    def bottom_at(self, x):
        if self.kind in ("box", "trapezoid"):
            return self.trap.bottom_at(x)
        if self.kind == "strip":
            return -INF
        if self.kind == "band":
            return pl_eval(self.lower, x)
        raise DomainError("union regions have no single fiber")

    def top_at(self, x):
        if self.kind in ("box", "trapezoid"):
            return self.trap.top_at(x)
        if self.kind == "strip":
            return INF
        if self.kind == "band":
            return pl_eval(self.upper, x)
        raise DomainError("union regions have no single fiber")

    def _grid(self) -> list[Fraction]:
        pts = {self.x_min, self.x_max}
        if self.kind == "band":
            pts |= {t for t, _ in self.lower.breakpoints}
            pts |= {t for t, _ in self.upper.breakpoints}
        return sorted(pts)

    @property
    def bounded(self) -> bool:
        if self.kind == "union":
            return all(p.bounded for p in self.parts)
        return self.kind != "strip"

    @property
    def bbox(self) -> tuple:
        """``(xmin, xmax, ymin, ymax)``; infinite ends are ``+-inf``."""
        if self.kind == "union":
            boxes = [p.bbox for p in self.parts]
            return (
                min(b[0] for b in boxes), max(b[1] for b in boxes),
                min(b[2] for b in boxes), max(b[3] for b in boxes),
            )
        grid = self._grid()
        return (
            self.x_min, self.x_max,
            min(self.bottom_at(x) for x in grid), max(self.top_at(x) for x in grid),
        )

    # membership ------------------------------------------------------------
    def contains(self, p: Point) -> bool:
        if self.kind == "union":
            return any(part.contains(p) for part in self.parts)
        if not self.x_min <= p.x <= self.x_max:
            return False
        return self.bottom_at(p.x) <= p.y <= self.top_at(p.x)

    def interior_contains(self, p: Point) -> bool:
        if self.kind == "union":
            # points on a shared seam are interior to the union; callers only
            # need the conservative answer for each part
            return any(part.interior_contains(p) for part in self.parts)
        if not self.x_min < p.x < self.x_max:
            return False
        return self.bottom_at(p.x) < p.y < self.top_at(p.x)

    def on_boundary(self, p: Point) -> bool:
        return self.contains(p) and not self.interior_contains(p)

    def box_in_interior(self, b: Box) -> bool:
        """Closed box inside the open region (corners suffice: regions are
        fiberwise convex with convex-combination boundaries on each cell)."""
        if self.kind == "union":
            return any(part.box_in_interior(b) for part in self.parts)
        if self.kind == "band":
            if not (self.x_min < b.xmin and b.xmax < self.x_max):
                return False
            return (
                self.lower.max_on(b.xmin, b.xmax) < b.ymin
                and b.ymax < self.upper.min_on(b.xmin, b.xmax)
            )
        return all(self.interior_contains(c) for c in b.corners)

    def contains_region(self, other: "Region") -> bool:
        """``other`` is a subset of ``self`` (closed sets)."""
        if other.kind == "union":
            return all(self.contains_region(p) for p in other.parts)
        if self.kind == "union":
            return any(p.contains_region(other) for p in self.parts)
        if not (self.x_min <= other.x_min and other.x_max <= self.x_max):
            return False
        grid = sorted({x for x in self._grid() + other._grid()
                       if other.x_min <= x <= other.x_max})
        return all(
            self.bottom_at(x) <= other.bottom_at(x) and other.top_at(x) <= self.top_at(x)
            for x in grid
        )


def _crossings(f, g, x0, x1, grid) -> list[Fraction]:
    """Points in ``(x0, x1)`` where the PL functions ``f`` and ``g`` cross."""
    out = []
    for a, b in zip(grid, grid[1:]):
        da, db = f(a) - g(a), f(b) - g(b)
        if INF in (abs(da), abs(db)):
            continue
        if da * db < 0:
            out.append(a + (b - a) * Fraction(da) / Fraction(da - db))
    return out


def interiors_disjoint(r1: Region, r2: Region) -> bool:
    """Exact test that the open regions do not meet."""
    if r1.kind == "union":
        return all(interiors_disjoint(p, r2) for p in r1.parts)
    if r2.kind == "union":
        return all(interiors_disjoint(r1, p) for p in r2.parts)
    xa, xb = max(r1.x_min, r2.x_min), min(r1.x_max, r2.x_max)
    if xa >= xb:
        return True
    grid = sorted({x for x in r1._grid() + r2._grid() if xa <= x <= xb} | {xa, xb})
    cands = set(grid)
    cands.update(_crossings(r1.top_at, r2.top_at, xa, xb, grid))
    cands.update(_crossings(r1.bottom_at, r2.bottom_at, xa, xb, grid))

    def gap(x):
        return min(r1.top_at(x), r2.top_at(x)) - max(r1.bottom_at(x), r2.bottom_at(x))

    # the gap is linear between consecutive candidates, so it is positive
    # somewhere in the open overlap iff it is positive at some candidate
    return all(gap(x) <= 0 for x in cands)
