"""Encoding integer sequences as homeomorphisms of the strip ``K``.

``K = [0, 1] x R`` is cut into vertical strips ``L_n`` and columns of
squares ``I_{n,k}`` accumulating on the left edge ``x = 0``.  A sequence
``g`` becomes the map ``tau(g)``: the identity on every ``L_n``, and a copy
of the square flow in every ``I_{n,k}``, run backwards exactly in the cell
``k = g(n)``.  Adding the two squares ``I_+``, ``I_-`` gives ``rho(g)`` on
``J``.

When ``g - g'`` grows slower than ``n + 1``, the map ``sigma`` below
conjugates ``tau(g')`` to ``tau(g)``: it slides column ``n`` up by
``s(n) / (n + 1)`` and interpolates between columns with the fiberwise
shift of the strip path family.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, NamedTuple, Sequence

from .charts import AxisAffine, StripChart
from .checks import CheckResult
from .deballing import DeballingRecipe, pullback_recipe, union_recipes
from .geometry import Box, DomainError, Point
from .regions import Region
from .square_flow import (
    ALPHA, DEFAULT_FLOW, SquareFlow, WindowExceeded, square_recipe,
)
from .strip_paths import (
    STRIP, PathFamilyState, build_family, fiberwise_shift, fiberwise_shift_inv,
    strip_recipe,
)

UNIT = Region.box(Box(Fraction(0), Fraction(1), Fraction(0), Fraction(1)))
I_PLUS = Region.box(Box(Fraction(-1), Fraction(0), Fraction(0), Fraction(1)))
I_MINUS = Region.box(Box(Fraction(-1), Fraction(0), Fraction(-1), Fraction(0)))
T_PLUS = AxisAffine.translation(1, 0)
T_MINUS = AxisAffine.translation(1, 1)
J_PARTS = Region.union(I_PLUS, I_MINUS, STRIP)


class NonConvergence(RuntimeError):
    pass


@dataclass(frozen=True)
class GroupElement:
    """A finitely supported integer sequence ``g(0), ..., g(N-1), 0, 0, ...``."""

    prefix: tuple[int, ...] = ()

    def __init__(self, prefix: Iterable[int] = ()):
        object.__setattr__(self, "prefix", tuple(int(v) for v in prefix))

    def __call__(self, n: int) -> int:
        if n < 0:
            raise DomainError("sequence index must be >= 0")
        return self.prefix[n] if n < len(self.prefix) else 0

    def __len__(self) -> int:
        return len(self.prefix)

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        m = max(len(self), len(other))
        return GroupElement(self(n) - other(n) for n in range(m))


def as_group(g) -> GroupElement:
    return g if isinstance(g, GroupElement) else GroupElement(g)


# --------------------------------------------------------------------------
# cells and charts


class StripCell(NamedTuple):
    tag: str  # "L", "I" or "edge"
    n: int = -1
    k: int = 0


def column_width(n: int) -> Fraction:
    return Fraction(1, 4 ** (n + 1))


def locate_cell(z: Point) -> StripCell:
    """Cell of ``K`` containing ``z``; shared edges go to ``L_n``, then lower ``k``."""
    x, y = z
    if not 0 <= x <= 1:
        raise DomainError(f"{z} not in K")
    if x == 0:
        return StripCell("edge")
    # n with 1/4^(n+1) < x <= 1/4^n
    v = 1 / x
    n = ((v.numerator // v.denominator).bit_length() - 1) // 2
    if x >= 2 * column_width(n):
        return StripCell("L", n)
    return StripCell("I", n, math.ceil(y * (n + 1)))


def cell_region(cell: StripCell) -> Region:
    if cell.tag == "L":
        return Region.strip(*StripChart(cell.n).x_range)
    if cell.tag == "I":
        w, h = column_width(cell.n), Fraction(1, cell.n + 1)
        return Region.box(Box(w, 2 * w, (cell.k - 1) * h, cell.k * h))
    raise DomainError("the left edge is not a cell")


def r_n(n: int) -> StripChart:
    return StripChart(n)


def r_nk(n: int, k: int) -> AxisAffine:
    """``I_{n,k} -> I``: ``(4^(n+1) (x - 1/4^(n+1)), (n+1) y - (k-1))``."""
    return AxisAffine(Fraction(4 ** (n + 1)), Fraction(-1), Fraction(n + 1), Fraction(-(k - 1)))


def _check_cell(z: Point, cell: StripCell) -> None:
    if not cell_region(cell).contains(z):
        raise DomainError(f"{z} not in {cell}")


def r_n_apply(n: int, z: Point) -> Point:
    return r_n(n).forward(z)


def r_n_inv(n: int, z: Point) -> Point:
    return r_n(n).inverse(z)


def r_nk_apply(n: int, k: int, z: Point) -> Point:
    _check_cell(z, StripCell("I", n, k))
    return r_nk(n, k).forward(z)


def r_nk_inv(n: int, k: int, z: Point) -> Point:
    if not UNIT.contains(z):
        raise DomainError(f"{z} not in I")
    return r_nk(n, k).inverse(z)


def kappa(u: float, v: float) -> tuple[float, float]:
    """Half disc ``{u >= 0}`` onto ``K`` with two points at infinity (floats)."""
    if u < 0 or u * u + v * v > 1 + 1e-12:
        raise DomainError("kappa is defined on the right half disc")
    if abs(v) >= 1:
        return (0.0, math.copysign(math.inf, v))
    return (u / math.sqrt(1 - v * v), v / (1 - v * v))


def kappa_inv(x: float, y: float) -> tuple[float, float]:
    if math.isinf(y):
        return (0.0, math.copysign(1.0, y))
    v = 0.0 if y == 0 else (math.sqrt(1 + 4 * y * y) - 1) / (2 * y)
    return (x * math.sqrt(1 - v * v), v)


# --------------------------------------------------------------------------
# the maps tau(g) and rho(g)


def tau_exponent(g: GroupElement, n: int, k: int) -> int:
    return -1 if g(n) == k else 1


def _flow_power(flow: SquareFlow, w: Point, e: int) -> Point:
    return flow.pi_unit(w) if e > 0 else flow.pi_unit_inverse(w)


def _tau(g, z: Point, sign: int, flow: SquareFlow) -> Point:
    g = as_group(g)
    cell = locate_cell(z)
    if cell.tag != "I":
        return z
    chart = r_nk(cell.n, cell.k)
    w = _flow_power(flow, chart.forward(z), sign * tau_exponent(g, cell.n, cell.k))
    return chart.inverse(w)


def tau_apply(g, z: Point, flow: SquareFlow = DEFAULT_FLOW) -> Point:
    return _tau(g, z, 1, flow)


def tau_inverse(g, z: Point, flow: SquareFlow = DEFAULT_FLOW) -> Point:
    return _tau(g, z, -1, flow)


def j_part(z: Point) -> str:
    """``"I+"``, ``"I-"`` or ``"K"``: points with ``x < 0`` lie in the squares,
    the rest are read in ``K``-coordinates."""
    if z.x < 0:
        if z.x < -1 or abs(z.y) > 1:
            raise DomainError(f"{z} not in J")
        return "I+" if z.y >= 0 else "I-"
    return "K"


def rho_apply(g, z: Point, flow: SquareFlow = DEFAULT_FLOW) -> Point:
    part = j_part(z)
    if part == "K":
        return tau_apply(g, z, flow)
    t = T_PLUS if part == "I+" else T_MINUS
    return t.inverse(flow.pi_unit(t.forward(z)))


def rho_inverse(g, z: Point, flow: SquareFlow = DEFAULT_FLOW) -> Point:
    part = j_part(z)
    if part == "K":
        return tau_inverse(g, z, flow)
    t = T_PLUS if part == "I+" else T_MINUS
    return t.inverse(flow.pi_unit_inverse(t.forward(z)))


# --------------------------------------------------------------------------
# the conjugator


@dataclass
class ConjugatorHandle:
    g: GroupElement
    g_prime: GroupElement
    family: PathFamilyState = field(repr=False)

    def s(self, n: int) -> int:
        return 0 if n == -1 else self.g(n) - self.g_prime(n)


def build_sigma(g, g_prime, family: PathFamilyState | None = None) -> ConjugatorHandle:
    if family is None:
        family = build_family(25)
    return ConjugatorHandle(as_group(g), as_group(g_prime), family)


def sigma_on_strip(h: ConjugatorHandle, n: int, z: Point, inverse: bool = False) -> Point:
    """``r_n^-1 o h_{s(n), s(n-1)} o r_n`` (or its inverse) at ``z`` in ``L_n``."""
    chart = r_n(n)
    shift = fiberwise_shift_inv if inverse else fiberwise_shift
    return chart.inverse(shift(h.s(n), h.s(n - 1), h.family, chart.forward(z)))


def _sigma(h: ConjugatorHandle, z: Point, inverse: bool) -> Point:
    cell = locate_cell(z)
    if cell.tag == "edge":
        return z
    if cell.tag == "I":
        dy = Fraction(h.s(cell.n), cell.n + 1)
        return Point(z.x, z.y - dy if inverse else z.y + dy)
    return sigma_on_strip(h, cell.n, z, inverse)


def sigma_apply(h: ConjugatorHandle, z: Point) -> Point:
    return _sigma(h, z, False)


def sigma_inverse(h: ConjugatorHandle, z: Point) -> Point:
    return _sigma(h, z, True)


def sigma_boundary_check(h: ConjugatorHandle, n: int, ys: Sequence[Fraction]) -> CheckResult:
    """Strip formula versus column translations on both edges of ``L_n``."""
    res = CheckResult(True)
    x_left, x_right = r_n(n).x_range
    edges = [(x_left, Fraction(h.s(n), n + 1))]
    if n >= 1:
        edges.append((x_right, Fraction(h.s(n - 1), n)))
    for x, dy in edges:
        for y in ys:
            got = sigma_on_strip(h, n, Point(x, y))
            want = Point(x, y + dy)
            res.slacks.append(got.y - want.y)
            if got != want:
                res.passed = False
                res.witnesses.append({"n": n, "x": x, "y": y, "got": got, "want": want})
    return res


def conjugacy_check(g, g_prime, h: ConjugatorHandle, samples: Iterable[Point],
                    flow: SquareFlow = DEFAULT_FLOW) -> CheckResult:
    """``tau(g) == sigma o tau(g') o sigma^-1`` at every sample, exactly."""
    g, g_prime = as_group(g), as_group(g_prime)
    res = CheckResult(True)
    for z in samples:
        lhs = tau_apply(g, z, flow)
        rhs = sigma_apply(h, tau_apply(g_prime, sigma_inverse(h, z), flow))
        err = max(abs(lhs.x - rhs.x), abs(lhs.y - rhs.y))
        res.slacks.append(err)
        if lhs != rhs:
            res.passed = False
            res.witnesses.append({"z": z, "lhs": lhs, "rhs": rhs})
    return res


# --------------------------------------------------------------------------
# continuity near the left edge


@dataclass(frozen=True)
class Envelope:
    """Part of ``L_n`` between the levels ``lo`` and ``hi`` of the strip chart.

    Its corners are ``(x_left, c/(n+1))`` and ``(x_right, c/n)`` for
    ``c in {lo, hi}``; the sides joining them are the curves ``r_n^-1``
    makes of horizontal lines.  With ``straight=True`` the sides are the
    chords between the same corners instead.
    """

    n: int
    lo: Fraction
    hi: Fraction
    straight: bool = False

    def level(self, c: Fraction, x: Fraction) -> Fraction:
        chart = r_n(self.n)
        if not self.straight:
            return c / chart.y_factor(x)
        x0, x1 = chart.x_range
        t = (x - x0) / (x1 - x0)
        return (1 - t) * Fraction(c, self.n + 1) + t * Fraction(c, self.n)

    def bottom(self, x):
        return self.level(self.lo, x)

    def top(self, x):
        return self.level(self.hi, x)

    def contains(self, z: Point) -> bool:
        x0, x1 = r_n(self.n).x_range
        return x0 <= z.x <= x1 and self.bottom(z.x) <= z.y <= self.top(z.x)


def band_trapezoid(n: int, k: int, straight: bool = False) -> Envelope:
    return Envelope(n, Fraction(k - 1), Fraction(k), straight)


def image_trapezoid(n: int, k: int, s_n: int, s_n1: int, straight: bool = False) -> Envelope:
    return Envelope(n, Fraction(min(s_n, s_n1) + k - 1), Fraction(max(s_n, s_n1) + k + 1),
                    straight)


def bound_terms(n: int, M: Fraction, s_n: int, s_n1: int) -> list[Fraction]:
    n1 = n + 1
    return [
        Fraction(1, n1), Fraction(1, n), M / n1 ** 2, M / (n * n1),
        Fraction(abs(s_n), n1), Fraction(abs(s_n), n),
        Fraction(abs(s_n1), n1), Fraction(abs(s_n1), n),
    ]


def six_term_bound(n: int, M: Fraction, s_n: int, s_n1: int) -> Fraction:
    """Sum of the six largest terms: dominates any sum of six of them."""
    return sum(sorted(bound_terms(n, M, s_n, s_n1))[-6:])


def envelope_samples(n: int, k: int, per_side: int = 5, straight: bool = False
                     ) -> list[Point]:
    """Grid of points of the band trapezoid, edges included."""
    env = band_trapezoid(n, k, straight)
    x0, x1 = r_n(n).x_range
    out = []
    for i in range(per_side + 1):
        x = x0 + (x1 - x0) * Fraction(i, per_side)
        lo, hi = env.bottom(x), env.top(x)
        for j in range(per_side + 1):
            out.append(Point(x, lo + (hi - lo) * Fraction(j, per_side)))
    return out


def trapezoid_envelope_check(n: int, k: int, s_n: int, s_n1: int,
                             family: PathFamilyState,
                             samples: Sequence[Point] | None = None,
                             M: Fraction | None = None, straight: bool = False
                             ) -> CheckResult:
    """``sigma(T)`` lies in the widened trapezoid and moves at most the bound."""
    if n < 1:
        raise DomainError("the envelope needs n >= 1")
    h = ConjugatorHandle(GroupElement([0] * (n - 1) + [s_n1, s_n]), GroupElement(), family)
    assert (h.s(n), h.s(n - 1)) == (s_n, s_n1)
    src = band_trapezoid(n, k, straight)
    dst = image_trapezoid(n, k, s_n, s_n1, straight)
    samples = envelope_samples(n, k, straight=straight) if samples is None else samples
    if M is None:
        M = max(abs(Fraction(k, n)), abs(Fraction(k - 1, n)))
    bound = six_term_bound(n, M, s_n, s_n1)
    res = CheckResult(True, details={"bound": bound, "terms": bound_terms(n, M, s_n, s_n1)})
    for z in samples:
        if not src.contains(z):
            raise DomainError(f"sample {z} not in T")
        w = sigma_on_strip(h, n, z)
        move = abs(w.y - z.y)
        res.slacks.append(bound - move)
        if not dst.contains(w) or move > bound:
            res.passed = False
            res.witnesses.append({"z": z, "image": w, "move": move})
    return res


def continuity_n0(h: ConjugatorHandle, eps: Fraction, M: Fraction, probe: int = 3,
                  per_cell: int = 3) -> CheckResult:
    """Find ``n0`` with every term small past it, then sample cells beyond.

    For ``n`` past the support of ``s`` the terms only shrink, so the scan
    stops at the first such ``n`` after which everything is below ``eps``.
    """
    support = max(len(h.g), len(h.g_prime))

    def bad(n):
        if Fraction(abs(h.s(n)), n + 1) >= eps or column_width(n) >= eps:
            return True
        return n >= 1 and six_term_bound(n, M, h.s(n), h.s(n - 1)) >= eps

    n0, n = 0, 0
    while n <= support + 1 or bad(n) or bad(n - 1):
        if bad(n):
            n0 = n
        n += 1
        if n > 10 ** 6:
            raise NonConvergence("no n0 found")
    res = CheckResult(True, details={"n0": n0})
    for n in range(n0 + 1, n0 + 1 + probe):
        pts = []
        x0, x1 = r_n(n).x_range
        w = column_width(n)
        for i in range(1, per_cell + 1):
            t = Fraction(i, per_cell + 1)
            y = -M + 2 * M * t
            pts.append(Point(x0 + (x1 - x0) * t, y))
            pts.append(Point(w + w * t, y))
        for z in pts:
            if z.y == M or z.y == -M:
                continue
            d = sigma_apply(h, z)
            move = max(abs(d.x - z.x), abs(d.y - z.y))
            res.slacks.append(eps - move)
            if move >= eps:
                res.passed = False
                res.witnesses.append({"n": n, "z": z, "move": move})
    return res


# --------------------------------------------------------------------------
# reading g back off tau(g)


def _limit_y(oracle: Callable[[Point], Point], z: Point, iters: int, tol: Fraction) -> Fraction:
    for _ in range(iters):
        w = oracle(z)
        if abs(w.y - z.y) < tol:
            return w.y
        z = w
    raise NonConvergence(f"orbit of {z} did not settle in {iters} steps")


def extract_offsets(map_oracle: Callable[[Point], Point], N: int, iters: int = 400,
                    k_window: int = 6, tol: Fraction = Fraction(1, 2 ** 20)) -> list[int]:
    """Recover ``g(0..N-1)`` from a map behaving like ``tau(g)``.

    In column ``n`` the orbit from each probe cell settles on the cell's top
    or bottom edge.  Exactly one adjacent pair of cells shares its limit
    edge (the lower climbs, the upper descends); the upper index is
    ``g(n)``.
    """
    out = []
    for n in range(N):
        w, hgt = column_width(n), Fraction(1, n + 1)
        goes_up = {}
        for k in range(-k_window, k_window + 1):
            z = Point(w + w / 2, (k - 1) * hgt + hgt / 2)
            y = _limit_y(map_oracle, z, iters, tol)
            goes_up[k] = abs(y - k * hgt) < abs(y - (k - 1) * hgt)
        pairs = [k for k in range(-k_window + 1, k_window + 1)
                 if goes_up[k - 1] and not goes_up[k]]
        if len(pairs) != 1:
            raise WindowExceeded(f"column {n}: {len(pairs)} coinciding pairs in window",
                                 {"k_window": k_window})
        out.append(pairs[0])
    return out


def e_hat_statistic(g, g_prime, N: int) -> Fraction:
    """``max_{n<N} |g(n) - g'(n)| / (n + 1)``: a finite-horizon diagnostic only."""
    g, g_prime = as_group(g), as_group(g_prime)
    return max((Fraction(abs(g(n) - g_prime(n)), n + 1) for n in range(N)), default=Fraction(0))


def polynomial_in_g_hat(coeffs: Sequence[Fraction]) -> bool:
    """Does ``d(n) = sum c_i n^i`` satisfy ``d(n)/(n+1) -> 0``?  Iff ``d`` is constant."""
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return len(coeffs) <= 1


# --------------------------------------------------------------------------
# the assembled recipe


@dataclass(frozen=True)
class RecipeWindow:
    n_max: int = 3
    k_max: int = 3
    b_max: int = 3
    a_max: int = 0
    family_depth: int | None = None  # None: as many balls as one square cell
    k_min: int | None = None  # None: -k_max

    @property
    def ks(self) -> range:
        return range(-self.k_max if self.k_min is None else self.k_min, self.k_max + 1)


def unit_square_recipe(depth: int, window: RecipeWindow,
                       flow: SquareFlow = DEFAULT_FLOW) -> DeballingRecipe:
    """Flow-invariant recipe on ``J`` carried onto ``I`` by ``alpha``."""
    on_j = square_recipe(flow, depth, window.b_max, window.a_max)
    return pullback_recipe(ALPHA.inverted(), on_j, UNIT)


def assemble_carpet_recipe(depth: int, window: RecipeWindow = RecipeWindow(),
                           flow: SquareFlow = DEFAULT_FLOW,
                           family: PathFamilyState | None = None) -> DeballingRecipe:
    """``B_+ u B_- u (u_n r_n^* B_L) u (u_{n,k} r_{n,k}^* B_I)`` on the window."""
    b_i = unit_square_recipe(depth, window, flow)
    if family is None:
        nf = len(b_i) if window.family_depth is None else window.family_depth
        family = build_family(nf)
    b_l = strip_recipe(family)
    parts = [pullback_recipe(T_PLUS, b_i, I_PLUS), pullback_recipe(T_MINUS, b_i, I_MINUS)]
    for n in range(window.n_max + 1):
        parts.append(pullback_recipe(r_n(n), b_l, cell_region(StripCell("L", n))))
        for k in window.ks:
            parts.append(pullback_recipe(r_nk(n, k), b_i, cell_region(StripCell("I", n, k))))
    return union_recipes(parts, J_PARTS)
