"""Finite-depth deballing recipes.

A recipe is a finite family of pairwise disjoint closed balls inside the
interior of a region.  Balls are stored as boxes in some source coordinate
system together with the chart carrying them into the plane; plain boxes
use the identity chart.  Keeping the chart (instead of materializing a
curved image) keeps every membership and disjointness test exact.

Disjointness is certified in two layers: boxes sharing a chart are compared
in source coordinates, and different charts are required to have cells with
disjoint interiors.  The second layer is conservative: it may reject a
recipe whose balls happen to be disjoint, but never accepts a bad one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .charts import Chart, Identity, compose
from .geometry import Box, DomainError, LInfBall, Point
from .regions import Region, interiors_disjoint


class InvariantViolation(RuntimeError):
    """A recipe that should be valid by construction is not."""


@dataclass(frozen=True)
class ChartedBox:
    """The image ``chart(box)`` of a closed source box.

    ``source_cell`` is the open region the box must sit in, ``cell`` its
    image; cells of different charts in one recipe must not overlap.
    """

    box: Box
    chart: Chart
    source_cell: Region
    cell: Region

    @classmethod
    def plain(cls, box: Box, cell: Region) -> "ChartedBox":
        return cls(box, Identity(), cell, cell)

    @property
    def group_key(self):
        return (self.chart, self.source_cell, self.cell)

    def contains(self, z: Point) -> bool:
        if not self.cell.contains(z):
            return False
        return self.box.contains(self.chart.inverse(z))

    def interior_contains(self, z: Point) -> bool:
        if not self.cell.contains(z):
            return False
        return self.box.interior_contains(self.chart.inverse(z))

    def image_point(self, s: Point) -> Point:
        return self.chart.forward(s)


def as_charted(ball, cell: Region) -> ChartedBox:
    if isinstance(ball, ChartedBox):
        return ball
    if isinstance(ball, LInfBall):
        ball = ball.box
    return ChartedBox.plain(ball, cell)


@dataclass(frozen=True)
class DeballingRecipe:
    region: Region
    balls: tuple[ChartedBox, ...] = ()
    depth: int = 0

    @classmethod
    def build(cls, region: Region, balls: Iterable, depth: int = 0) -> "DeballingRecipe":
        return cls(region, tuple(as_charted(b, region) for b in balls), depth)

    def __len__(self) -> int:
        return len(self.balls)

    @cached_property
    def groups(self) -> dict:
        out: dict = {}
        for b in self.balls:
            out.setdefault(b.group_key, []).append(b.box)
        return out

    def extended(self, extra: Iterable) -> "DeballingRecipe":
        return DeballingRecipe(
            self.region,
            self.balls + tuple(as_charted(b, self.region) for b in extra),
            self.depth,
        )


@dataclass
class ValidationReport:
    disjoint: bool
    contained: bool
    coverage: Fraction | None
    ball_count: int
    witnesses: list[str] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return self.disjoint and self.contained


def _boxes_pairwise_disjoint(boxes: Sequence[Box]) -> tuple[int, int] | None:
    """Return an intersecting index pair, or None.  Sweep over xmin."""
    order = sorted(range(len(boxes)), key=lambda i: boxes[i].xmin)
    active: list[int] = []
    for i in order:
        b = boxes[i]
        active = [j for j in active if boxes[j].xmax >= b.xmin]
        for j in active:
            if b.intersects(boxes[j]):
                return (j, i)
        active.append(i)
    return None


def _cells_pairwise_disjoint(cells: Sequence[Region]) -> tuple[int, int] | None:
    boxes = [c.bbox for c in cells]
    order = sorted(range(len(cells)), key=lambda i: boxes[i][0])
    active: list[int] = []
    for i in order:
        xi0, xi1, yi0, yi1 = boxes[i]
        active = [j for j in active if boxes[j][1] > xi0]
        for j in active:
            _, _, yj0, yj1 = boxes[j]
            if yj1 <= yi0 or yi1 <= yj0:
                continue
            if not interiors_disjoint(cells[i], cells[j]):
                return (j, i)
        active.append(i)
    return None


def check_disjoint(recipe: DeballingRecipe) -> list[str]:
    problems = []
    for key, boxes in recipe.groups.items():
        hit = _boxes_pairwise_disjoint(boxes)
        if hit:
            problems.append(f"overlap in chart group: {boxes[hit[0]]} / {boxes[hit[1]]}")
    cells = [key[2] for key in recipe.groups]
    hit = _cells_pairwise_disjoint(cells)
    if hit:
        problems.append(f"overlapping cells: {cells[hit[0]]} / {cells[hit[1]]}")
    return problems


def check_contained(recipe: DeballingRecipe) -> list[str]:
    problems = []
    for (chart, source_cell, cell), boxes in recipe.groups.items():
        if not recipe.region.contains_region(cell):
            problems.append(f"cell {cell} leaves region")
        for b in boxes:
            if not source_cell.box_in_interior(b):
                problems.append(f"box {b} touches boundary of its cell")
    return problems


def validate_recipe(recipe: DeballingRecipe, grid: int = 32, window: Box | None = None
                    ) -> ValidationReport:
    disjoint = check_disjoint(recipe)
    contained = check_contained(recipe)
    coverage = None
    if recipe.region.bounded or window is not None:
        coverage = coverage_fraction(recipe, grid, window)
    return ValidationReport(not disjoint, not contained, coverage, len(recipe),
                            disjoint + contained)


def pullback_recipe(h: Chart, recipe: DeballingRecipe, target_region: Region
                    ) -> DeballingRecipe:
    """``{h^-1(B)}`` for a homeomorphism ``h`` from ``target_region`` onto
    the recipe's region."""
    h_inv = h.inverted()
    cell_cache: dict = {}
    out = []
    for b in recipe.balls:
        if b.cell not in cell_cache:
            cell = h.preimage_region(b.cell)
            if not target_region.contains_region(cell):
                raise DomainError(f"pulled-back cell {cell} leaves {target_region}")
            cell_cache[b.cell] = cell
        cell = cell_cache[b.cell]
        if isinstance(b.chart, Identity) and h.axis_affine:
            out.append(ChartedBox.plain(h_inv.image_box(b.box), cell))
        else:
            out.append(ChartedBox(b.box, compose(h_inv, b.chart), b.source_cell, cell))
    return DeballingRecipe(target_region, tuple(out), recipe.depth)


def union_recipes(parts: Sequence[DeballingRecipe], whole: Region) -> DeballingRecipe:
    """Concatenate recipes on interior-disjoint pieces of ``whole``."""
    for i, a in enumerate(parts):
        if not whole.contains_region(a.region):
            raise DomainError(f"part {i} is not inside the whole region")
        for b in parts[i + 1:]:
            if not interiors_disjoint(a.region, b.region):
                raise DomainError("part regions overlap")
    balls = tuple(b for p in parts for b in p.balls)
    merged = DeballingRecipe(whole, balls, max((p.depth for p in parts), default=0))
    problems = check_disjoint(merged)
    if problems:
        raise InvariantViolation("; ".join(problems))
    return merged


def carpet_membership(recipe: DeballingRecipe, z: Point) -> bool:
    """``z`` is in the region and in no ball's open interior."""
    if not recipe.region.contains(z):
        return False
    for (chart, _, cell), boxes in recipe.groups.items():
        if not cell.contains(z):
            continue
        s = chart.inverse(z)
        if any(b.interior_contains(s) for b in boxes):
            return False
    return True


def covered(recipe: DeballingRecipe, z: Point) -> bool:
    """``z`` lies in some closed ball."""
    for (chart, _, cell), boxes in recipe.groups.items():
        if cell.contains(z):
            s = chart.inverse(z)
            if any(b.contains(s) for b in boxes):
                return True
    return False


def coverage_fraction(recipe: DeballingRecipe, n: int, window: Box | None = None) -> Fraction:
    """Fraction of the ``n x n`` grid-cell centers of ``window`` covered by a ball."""
    if n < 1:
        raise DomainError("grid size must be positive")
    if window is None:
        if not recipe.region.bounded:
            raise DomainError("unbounded region needs an explicit window")
        x0, x1, y0, y1 = recipe.region.bbox
        window = Box(x0, x1, y0, y1)
    dx = (window.xmax - window.xmin) / n
    dy = (window.ymax - window.ymin) / n
    hits = 0
    for i in range(n):
        for j in range(n):
            z = Point(window.xmin + (2 * i + 1) * dx / 2, window.ymin + (2 * j + 1) * dy / 2)
            hits += covered(recipe, z)
    return Fraction(hits, n * n)


def seed_boxes(box: Box, depth: int) -> list[Box]:
    """Middle-ninth carving of ``box``.

    Generation ``g`` carves the middle ninth of every remaining subcell,
    shrunk about its center by ``1 - 4**-g`` so that carved boxes stay
    pairwise disjoint and off every subdivision line.
    """
    if depth < 0:
        raise DomainError("depth must be >= 0")
    carved: list[Box] = []
    live = [box]
    for g in range(1, depth + 1):
        shrink = 1 - Fraction(1, 4 ** g)
        nxt = []
        for b in live:
            wx, wy = (b.xmax - b.xmin) / 3, (b.ymax - b.ymin) / 3
            for j in range(3):
                for i in range(3):
                    sub = Box(b.xmin + i * wx, b.xmin + (i + 1) * wx,
                              b.ymin + j * wy, b.ymin + (j + 1) * wy)
                    if i == j == 1:
                        c = sub.center
                        hx, hy = shrink * wx / 2, shrink * wy / 2
                        carved.append(Box(c.x - hx, c.x + hx, c.y - hy, c.y + hy))
                    else:
                        nxt.append(sub)
        live = nxt
    return carved


def seed_recipe_box(box: Region | Box, depth: int) -> DeballingRecipe:
    if isinstance(box, Box):
        box = Region.box(box)
    if box.kind != "box":
        raise DomainError("seed recipes are defined on axis boxes")
    b = Box(box.x_min, box.x_max, box.trap.y_left_bottom, box.trap.y_left_top)
    return DeballingRecipe.build(box, seed_boxes(b, depth), depth)


UNIT_BOX = Box(Fraction(0), Fraction(1), Fraction(0), Fraction(1))
UNIT_REGION = Region.box(UNIT_BOX)


def charted_seed(chart: Chart, cell: Region, depth: int) -> list[ChartedBox]:
    """Seed recipe of the unit square carried into ``cell`` by ``chart``."""
    return [ChartedBox(b, chart, UNIT_REGION, cell) for b in seed_boxes(UNIT_BOX, depth)]
