"""Hand-written SVG pictures.  Rendering is illustrative, so floats are fine here."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .deballing import UNIT_BOX, seed_boxes
from .geometry import Point
from .reduction import column_width, kappa_inv, r_n
from .square_flow import DEFAULT_FLOW, SquareFlow, column_x, columns, trapezoid
from .strip_paths import PathFamilyState, planted_detour

SIZE = 600


def _f(v) -> str:
    return f"{float(v):.6g}"


class Canvas:
    """Maps a world window ``[x0, x1] x [y0, y1]`` onto an SVG viewport."""

    def __init__(self, x0, x1, y0, y1, width: int = SIZE):
        self.x0, self.x1, self.y0, self.y1 = map(float, (x0, x1, y0, y1))
        self.w = width
        self.h = max(1, round(width * (self.y1 - self.y0) / (self.x1 - self.x0)))
        self.items: list[str] = []

    def pt(self, x, y) -> tuple[float, float]:
        sx = (float(x) - self.x0) / (self.x1 - self.x0) * self.w
        sy = (self.y1 - float(y)) / (self.y1 - self.y0) * self.h
        return sx, sy

    def polygon(self, pts: Iterable, style: str, cls: str = "") -> None:
        coords = " ".join(f"{_f(a)},{_f(b)}" for a, b in (self.pt(*p) for p in pts))
        attr = f' class="{cls}"' if cls else ""
        self.items.append(f'<polygon{attr} points="{coords}" style="{style}"/>')

    def polyline(self, pts: Iterable, style: str, cls: str = "") -> None:
        coords = " ".join(f"{_f(a)},{_f(b)}" for a, b in (self.pt(*p) for p in pts))
        attr = f' class="{cls}"' if cls else ""
        self.items.append(f'<polyline{attr} points="{coords}" style="fill:none;{style}"/>')

    def rect(self, xmin, xmax, ymin, ymax, style: str, cls: str = "") -> None:
        self.polygon([(xmin, ymin), (xmax, ymin), (xmax, ymax), (xmin, ymax)], style, cls)

    def dot(self, x, y, r: float, style: str) -> None:
        a, b = self.pt(x, y)
        self.items.append(f'<circle cx="{_f(a)}" cy="{_f(b)}" r="{_f(r)}" style="{style}"/>')

    def svg(self, title: str = "", desc: str = "") -> str:
        head = (f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
                f'width="{self.w}" height="{self.h}" viewBox="0 0 {self.w} {self.h}">')
        body = [head]
        if title:
            body.append(f"<title>{title}</title>")
        if desc:
            body.append(f"<desc>{desc}</desc>")
        body += self.items
        body.append("</svg>")
        return "\n".join(body) + "\n"


HOLE = "fill:white;stroke:none"
EDGE = "fill:none;stroke:black;stroke-width:0.5"


def render_carpet(depth: int) -> str:
    c = Canvas(0, 1, 0, 1)
    c.rect(0, 1, 0, 1, "fill:black;stroke:none")
    for b in seed_boxes(UNIT_BOX, depth):
        c.rect(b.xmin, b.xmax, b.ymin, b.ymax, HOLE, "ball")
    return c.svg(f"carpet, depth {depth}")


def render_trapezoids(a_max: int, b_max: int, flow: SquareFlow = DEFAULT_FLOW) -> str:
    c = Canvas(-1, 1, -1, 1)
    for a in columns(a_max):
        for b in range(-b_max - 1, b_max + 1):
            t = trapezoid(a, b)
            c.polygon([t.vertex(0, 0), t.vertex(1, 0), t.vertex(1, 1), t.vertex(0, 1)],
                      EDGE, "trapezoid")
    c.rect(-1, 1, -1, 1, "fill:none;stroke:black;stroke-width:2")
    widths = " ".join(f"{w.numerator}/{w.denominator}" for w in column_widths(a_max))
    return c.svg(f"trapezoids, columns {a_max}, rows {b_max}", f"column widths: {widths}")


def column_widths(a_max: int) -> list[Fraction]:
    """Widths of first-quadrant columns ``0..a_max``: ``1/2, 1/4, ...``."""
    return [column_x(a + 1) - column_x(a) for a in range(a_max + 1)]


def _path_points(p, disc: bool) -> list[tuple[float, float]]:
    pts = []
    for (t0, v0), (t1, v1) in p.segments():
        steps = 16 if disc else 1
        for i in range(steps):
            s = i / steps
            pts.append((float(t0) + s * float(t1 - t0), float(v0) + s * float(v1 - v0)))
    t, v = p.breakpoints[-1]
    pts.append((float(t), float(v)))
    return [kappa_inv(x, y) for x, y in pts] if disc else pts


def render_strip(state: PathFamilyState, y_lo: int = -3, y_hi: int = 3,
                 disc: bool = False, grid: bool = False) -> str:
    """Paths and balls of a family on ``L``; ``disc`` draws it in the half disc."""
    c = Canvas(0, 1, -1, 1) if disc else Canvas(-0.05, 1.05, y_lo - 0.5, y_hi + 0.5, 400)
    for (a, b), p in zip(state.pairs, state.paths):
        if max(a, b) < y_lo - 1 or min(a, b) > y_hi + 1:
            continue
        style = "stroke:#888;stroke-width:1" if a == b else "stroke:#24c;stroke-width:0.7"
        c.polyline(_path_points(p, disc), style, "path")
    for ball in state.balls:
        b = ball.box
        corners = [(b.xmin, b.ymin), (b.xmax, b.ymin), (b.xmax, b.ymax), (b.xmin, b.ymax)]
        if disc:
            corners = [kappa_inv(float(x), float(y)) for x, y in corners]
        c.polygon(corners, "fill:#c42;stroke:none", "ball")
    if grid and disc:
        # cell boundaries of K drawn in the disc picture
        for n in range(6):
            for x in (column_width(n), r_n(n).x_range[0], r_n(n).x_range[1]):
                c.polyline([kappa_inv(float(x), y / 8) for y in range(-64, 65)],
                           "stroke:#aaa;stroke-width:0.3")
    if not disc:
        c.polyline([(0, y_lo - 0.5), (0, y_hi + 0.5)], "stroke:black;stroke-width:1.5")
        c.polyline([(1, y_lo - 0.5), (1, y_hi + 0.5)], "stroke:black;stroke-width:1.5")
    return c.svg("strip path family")


def render_detour(n: int) -> tuple[str, int]:
    """Picture of ``pi_n`` skirting a planted ball; also returns its breakpoint count."""
    state, path = planted_detour(n)
    ball = state.balls[0].box
    lo = min(min(v for _, v in path.breakpoints), ball.ymin) - Fraction(1, 4)
    hi = max(max(v for _, v in path.breakpoints), ball.ymax) + Fraction(1, 4)
    c = Canvas(-0.05, 1.05, lo, hi, 500)
    a, b = state.pairs[n]
    c.polyline([(0, a), (1, b)], "stroke:#999;stroke-dasharray:4 3;stroke-width:0.8", "chord")
    c.rect(ball.xmin, ball.xmax, ball.ymin, ball.ymax, "fill:#c42;stroke:none", "ball")
    c.polyline([(float(t), float(v)) for t, v in path.breakpoints],
               "stroke:#24c;stroke-width:1.5", "path")
    for t, v in path.breakpoints:
        c.dot(t, v, 2.5, "fill:#24c")
    return c.svg(f"detour of path {n}"), len(path)


def render_orbit(z: Point, steps: int, flow: SquareFlow = DEFAULT_FLOW, a_max: int = 4,
                 b_max: int = 8) -> str:
    svg = render_trapezoids(a_max, b_max, flow)
    c = Canvas(-1, 1, -1, 1)
    trace = flow.orbit_trace(z, steps)
    c.polyline(trace, "stroke:#c42;stroke-width:1.2", "orbit")
    for p in trace:
        c.dot(p.x, p.y, 2, "fill:#c42")
    return svg.replace("</svg>\n", "\n".join(c.items) + "\n</svg>\n")
