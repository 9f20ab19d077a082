"""Obstacle-avoiding path families on the strip ``L = [0, 1] x R``.

For every integer pair ``(a, b)`` (enumerated along a square spiral) we
build a PL path ``pi_n`` from ``(0, a)`` to ``(1, b)``; interleaved with the
paths we place small l-infinity balls ``B_n`` centred at points of a dense
set ``Q``.  Paths dodge balls, balls dodge paths, and paths of the same
slope class (same ``b - a``) never meet.  Constant pairs always give
constant paths, since balls are kept off the integer lines.

The family then defines the fiberwise shift ``h_{k,l}``: the band between
the constant paths ``y = a`` and ``y = a + 1`` is mapped fiber by fiber onto
the band between ``pi_{a+k, a+l}`` and ``pi_{a+k+1, a+l+1}``.

Detours
-------
A path that must get past ball ``B`` is raised over it with a *tent*: a
plateau at a dyadic height just above the ball's top, with steep ramps back
down to the path.  The path is the pointwise maximum of its chord, the
tents of every ball it hits (iterated until nothing is hit), and, where a
lower path of its own slope class pokes above the chord, that lower path
lifted by a small ``eta``.  Plateaus stay under every higher same-class
path, so the class stays strictly ordered.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .checks import CheckResult
from .deballing import ChartedBox, DeballingRecipe
from .geometry import (
    DomainError, LInfBall, PLPath, Point, ball_avoids_path, floor_int,
    linf_dist_point_path, linf_dist_point_segment, min_gap, paths_equal_somewhere,
    pl_eval, pl_max, point_on_path,
)
from .regions import Region

RADIUS_CAP = Fraction(1, 4)


class ConstructionFailure(RuntimeError):
    def __init__(self, message: str, audit: dict | None = None):
        super().__init__(message)
        self.audit = audit or {}


# --------------------------------------------------------------------------
# enumerations


def pair_enum(n: int) -> tuple[int, int]:
    """n-th pair of the square spiral (0,0), (1,0), (1,1), (0,1), (-1,1), ..."""
    if n < 0:
        raise DomainError("index must be >= 0")
    if n == 0:
        return (0, 0)
    r = (math.isqrt(n) + 1) // 2
    i = n - (2 * r - 1) ** 2
    side, off = divmod(i, 2 * r)
    if side == 0:
        return (r, -r + 1 + off)
    if side == 1:
        return (r - 1 - off, r)
    if side == 2:
        return (-r, r - 1 - off)
    return (-r + 1 + off, -r)


def pair_index(a: int, b: int) -> int:
    """Inverse of :func:`pair_enum`."""
    r = max(abs(a), abs(b))
    if r == 0:
        return 0
    base = (2 * r - 1) ** 2
    if a == r and b > -r:
        return base + (b + r - 1)
    if b == r:
        return base + 2 * r + (r - 1 - a)
    if a == -r:
        return base + 4 * r + (r - 1 - b)
    return base + 6 * r + (a + r - 1)


class _QEnumerator:
    """The dense set ``{(u/2^i, v/3^j)}``: ``u`` odd in ``(0, 2^i)``, ``3 !| v``.

    Points come in shells of height ``h = max(2^i, 3^j, |v|)``, each shell
    sorted by ``(i, u, j, v)``.  None lies on a chord ``y = a + (b-a)x``
    with integer ends: at ``x = u/2^i`` the chord has a power-of-two
    denominator while ``v/3^j`` does not.
    """

    def __init__(self):
        self.points: list[Point] = []
        self.h = 1

    def _shell(self, h: int) -> list[tuple]:
        out = []
        i = 1
        while 2 ** i <= h:
            j = 1
            while 3 ** j <= h:
                for v in range(-h, h + 1):
                    if v % 3 == 0:
                        continue
                    if max(2 ** i, 3 ** j, abs(v)) != h:
                        continue
                    for u in range(1, 2 ** i, 2):
                        out.append((i, u, j, v))
                j += 1
            i += 1
        out.sort()
        return out

    def get(self, n: int) -> Point:
        while len(self.points) <= n:
            self.h += 1
            for i, u, j, v in self._shell(self.h):
                self.points.append(Point(Fraction(u, 2 ** i), Fraction(v, 3 ** j)))
        return self.points[n]


_Q = _QEnumerator()


def q_point(n: int) -> Point:
    return _Q.get(n)


def chord(a: int, b: int) -> PLPath:
    return PLPath.line(a, b)


def _dyadic_above(lo: Fraction, hi: Fraction) -> Fraction:
    """A dyadic rational strictly inside ``(lo, hi)``."""
    if not lo < hi:
        raise ConstructionFailure(f"empty interval ({lo}, {hi})")
    k = 0
    while True:
        d = Fraction(1, 2 ** k)
        h = Fraction(math.floor(lo / d) + 1) * d
        if h < hi:
            return h
        k += 1


# --------------------------------------------------------------------------
# state


@dataclass
class PathFamilyState:
    """Paths ``pi_n``, balls ``B_n`` and the audit trail of their construction."""

    depth: int = 0
    horizon: int = 0
    pairs: list[tuple[int, int]] = field(default_factory=list)
    paths: list[PLPath] = field(default_factory=list)
    balls: list[LInfBall] = field(default_factory=list)
    q_points: list[Point] = field(default_factory=list)
    q_cursor: int = 0
    audit: list[dict] = field(default_factory=list)
    ramps: dict = field(default_factory=dict, repr=False)
    _class_index: dict = field(default_factory=dict, repr=False)

    def same_class(self, c: int) -> list[int]:
        return self._class_index.get(c, [])

    def add_path(self, n: int, path: PLPath) -> None:
        a, b = pair_enum(n)
        assert n == len(self.paths)
        self.pairs.append((a, b))
        self.paths.append(path)
        self._class_index.setdefault(b - a, []).append(n)

    def ensure_paths(self, n: int) -> None:
        """Materialize paths up to index ``n`` (no new balls past ``depth``)."""
        while len(self.paths) <= n:
            m = len(self.paths)
            self.add_path(m, build_path(m, self))

    def path(self, a: int, b: int) -> PLPath:
        n = pair_index(a, b)
        if a == b and n >= len(self.paths):
            # constant pairs never depend on the rest of the state (balls
            # keep off integer lines), so far-out ones are not materialized
            return PLPath.constant(a)
        self.ensure_paths(n)
        return self.paths[n]

    def plant_ball(self, ball: LInfBall) -> None:
        """Insert an extra ball by hand (used to exercise detours)."""
        self.balls.append(ball)
        self.q_points.append(ball.center)
        self.audit.append({"step": "plant", "ball": ball})


def place_ball(n: int, state: PathFamilyState) -> LInfBall:
    """Ball ``B_n`` at the next usable point of ``Q``.

    Its radius is half the l-infinity distance from the center to every
    existing path, every existing ball, ``dL``, the integer lines and the
    chords of the first ``horizon`` pairs, capped at 1/4.  Points of ``Q``
    already covered by a ball (or lying on a detour) are skipped.
    """
    while True:
        c = q_point(state.q_cursor)
        state.q_cursor += 1
        if any(b.contains(c) for b in state.balls):
            continue
        if any(point_on_path(c, p) for p in state.paths):
            state.audit.append({"step": "skip-q", "point": c})
            continue
        break
    dists = [c.x, 1 - c.x, c.y - floor_int(c.y), floor_int(c.y) + 1 - c.y]
    for b in state.balls:
        dists.append(max(abs(c.x - b.center.x), abs(c.y - b.center.y)) - b.radius)
    for p in state.paths:
        dists.append(linf_dist_point_path(c, p))
    for m in range(len(state.paths), state.horizon):
        a, b = pair_enum(m)
        if a != b:
            dists.append(linf_dist_point_segment(c, (Fraction(0), Fraction(a)),
                                                 (Fraction(1), Fraction(b))))
    d = min(dists)
    if d <= 0:
        raise ConstructionFailure(f"center {c} sits on an obstacle")
    ball = LInfBall(c, min(d / 2, RADIUS_CAP))
    state.q_points.append(c)
    state.audit.append({"step": "ball", "n": n, "center": c, "radius": ball.radius})
    return ball


def _tent(box, h: Fraction, delta: Fraction, low: Fraction) -> PLPath:
    return PLPath([
        (0, low), (box.xmin - delta, low), (box.xmin, h),
        (box.xmax, h), (box.xmax + delta, low), (1, low),
    ])


def build_path(n: int, state: PathFamilyState) -> PLPath:
    """Path ``pi_n`` from ``(0, a_n)`` to ``(1, b_n)`` avoiding the current state."""
    a, b = pair_enum(n)
    audit = {"step": "path", "n": n, "pair": (a, b)}
    if a == b:
        path = PLPath.constant(a)
        bad = [i for i, ball in enumerate(state.balls) if not ball_avoids_path(ball, path)]
        if bad:
            raise ConstructionFailure(f"constant path {a} meets balls {bad}", audit)
        audit["kind"] = "constant"
        state.audit.append(audit)
        return path

    # a slope class is totally ordered by its start, so only the two
    # neighbours of the new path matter
    peers = [state.paths[m] for m in state.same_class(b - a)]
    below = max((p for p in peers if p.start < a), key=lambda p: p.start, default=None)
    above = min((p for p in peers if p.start > a), key=lambda p: p.start, default=None)
    f = chord(a, b)
    low = Fraction(min(a, b) - 1)

    lifted = below is not None and min_gap(below, f) <= 0
    if lifted:
        bound = Fraction(1, 2) if above is None else min(Fraction(1, 2), min_gap(below, above) / 2)
        if bound <= 0:
            raise ConstructionFailure("no room between same-class neighbours", audit)
        # largest power of two below the bound
        eta = Fraction(1)
        while eta >= bound:
            eta /= 2
        f = pl_max(f, below.shifted(eta))
        audit["eta"] = eta

    # only balls meeting the band of admissible heights can ever be hit
    top_band = Fraction(max(a, b) + 1)
    near = [i for i, ball in enumerate(state.balls)
            if ball.box.ymax >= low and ball.box.ymin <= top_band]
    detoured: dict[int, Fraction] = {}
    while True:
        hits = [i for i in near
                if i not in detoured and not ball_avoids_path(state.balls[i], f)]
        if not hits:
            break
        for i in hits:
            box = state.balls[i].box
            top = Fraction(floor_int(box.ymax) + 1)
            if above is not None:
                top = min(top, above.min_on(box.xmin, box.xmax))
            h = _dyadic_above(box.ymax, top)
            # one ramp width per ball, so tents over the same ball nest
            delta = state.ramps.setdefault(i, min(box.xmin, 1 - box.xmax) / 2)
            for _ in range(200):
                tent = _tent(box, h, delta, low)
                if above is None or min_gap(tent, above) > 0:
                    break
                delta /= 2
            else:
                raise ConstructionFailure(f"no clearance above ball {i}", audit)
            f = pl_max(f, tent)
            detoured[i] = h
    if detoured:
        audit["detoured"] = sorted(detoured)
        audit["heights"] = [detoured[i] for i in sorted(detoured)]
    audit["kind"] = "detour" if detoured or lifted else "straight"

    # every guarantee is re-checked here rather than trusted
    if not all(low <= v <= max(a, b) + 1 for _, v in f.breakpoints):
        raise ConstructionFailure("band violated", audit)
    if any(paths_equal_somewhere(f, p) for p in (below, above) if p is not None):
        raise ConstructionFailure("same-class crossing", audit)
    # the last loop pass cleared the other balls against this very f
    if any(not ball_avoids_path(state.balls[i], f) for i in detoured):
        raise ConstructionFailure("ball not avoided", audit)
    if f.start != a or f.end != b:
        raise ConstructionFailure("endpoints moved", audit)
    state.audit.append(audit)
    return f


def build_family(N: int, horizon: int | None = None) -> PathFamilyState:
    """Joint construction of ``pi_n`` and ``B_n`` for ``n < N``.

    Each step places ``B_n`` first and then builds ``pi_n``, so the path
    already dodges its own ball.
    """
    state = PathFamilyState(depth=N, horizon=N if horizon is None else horizon)
    for n in range(N):
        state.balls.append(place_ball(n, state))
        state.add_path(n, build_path(n, state))
    return state


# --------------------------------------------------------------------------
# verification


def verify_family(state: PathFamilyState) -> dict[str, CheckResult]:
    """Post-hoc exact check of every invariant of the family."""
    res: dict[str, CheckResult] = {}

    w = []
    for n, ((a, b), p) in enumerate(zip(state.pairs, state.paths)):
        if p.start != a or p.end != b:
            w.append((n, "endpoints"))
        if not all(min(a, b) - 1 <= v <= max(a, b) + 1 for _, v in p.breakpoints):
            w.append((n, "band"))
    res["band_1a"] = CheckResult(not w, w)

    w = []
    for cls, members in state._class_index.items():
        for i, m in enumerate(members):
            for k in members[i + 1:]:
                if paths_equal_somewhere(state.paths[m], state.paths[k]):
                    w.append((m, k))
    res["same_slope_1b"] = CheckResult(not w, w)

    w = [(n, q) for n, p in enumerate(state.paths) for q in state.q_points
         if point_on_path(q, p)]
    res["q_avoid_1c"] = CheckResult(not w, w)

    w = []
    for i, bi in enumerate(state.balls):
        if not (0 < bi.center.x - bi.radius and bi.center.x + bi.radius < 1):
            w.append((i, "dL"))
        if not bi.radius < Fraction(1, 2):
            w.append((i, "radius"))
        for j in range(i + 1, len(state.balls)):
            if bi.box.intersects(state.balls[j].box):
                w.append((i, j))
    res["balls_2a"] = CheckResult(not w, w)

    w = []
    for i, ball in enumerate(state.balls):
        bx = ball.box
        for n, p in enumerate(state.paths):
            if p.max_on(bx.xmin, bx.xmax) < bx.ymin or p.min_on(bx.xmin, bx.xmax) > bx.ymax:
                continue
            if not ball_avoids_path(ball, p):
                w.append((i, n))
    res["ball_path_2b"] = CheckResult(not w, w)

    w = [n for n, ((a, b), p) in enumerate(zip(state.pairs, state.paths))
         if a == b and p != PLPath.constant(a)]
    res["constant_c2"] = CheckResult(not w, w)
    return res


# --------------------------------------------------------------------------
# the fiberwise shift


def locate_band(z: Point) -> int:
    """Band ``a`` with ``a <= y < a + 1`` between the constant paths."""
    return floor_int(z.y)


def _check_strip(z: Point) -> None:
    if not 0 <= z.x <= 1:
        raise DomainError(f"{z} not in L")


def fiberwise_shift(k: int, l: int, state: PathFamilyState, z: Point) -> Point:
    """Shift extending ``(0, y) -> (0, y + k)``, ``(1, y) -> (1, y + l)``."""
    _check_strip(z)
    a = locate_band(z)
    lam = z.y - a
    lo = pl_eval(state.path(a + k, a + l), z.x)
    hi = pl_eval(state.path(a + k + 1, a + l + 1), z.x)
    return Point(z.x, lo + lam * (hi - lo))


def fiberwise_shift_inv(k: int, l: int, state: PathFamilyState, z: Point) -> Point:
    _check_strip(z)

    def level(a):
        return pl_eval(state.path(a + k, a + l), z.x)

    a = floor_int(z.y - ((1 - z.x) * k + z.x * l))
    while level(a) > z.y:
        a -= 1
    while level(a + 1) <= z.y:
        a += 1
    lo, hi = level(a), level(a + 1)
    return Point(z.x, a + (z.y - lo) / (hi - lo))


def distortion_check(k: int, l: int, state: PathFamilyState, z: Point) -> CheckResult:
    """Both sides of ``floor(y)+min(k,l)-1 <= y~ <= floor(y)+1+max(k,l)+1``."""
    yt = fiberwise_shift(k, l, state, z).y
    fy = floor_int(z.y)
    lower = fy + min(k, l) - 1
    upper = fy + 1 + max(k, l) + 1
    slacks = (yt - lower, upper - yt)
    ok = slacks[0] >= 0 and slacks[1] >= 0
    return CheckResult(ok, [] if ok else [(k, l, z, yt)], [slacks])


STRIP = Region.strip(0, 1)


def strip_recipe(state: PathFamilyState) -> DeballingRecipe:
    """The balls ``B_n`` as a recipe on ``L``."""
    return DeballingRecipe(STRIP, tuple(ChartedBox.plain(b.box, STRIP) for b in state.balls),
                           state.depth)


def cross_class_crossings(state: PathFamilyState, limit: int | None = None) -> list[tuple[int, int]]:
    """Pairs of paths from different slope classes that meet (allowed, reported)."""
    n = len(state.paths) if limit is None else min(limit, len(state.paths))
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            (a, b), (c, d) = state.pairs[i], state.pairs[j]
            if b - a != d - c and paths_equal_somewhere(state.paths[i], state.paths[j]):
                out.append((i, j))
    return out


def planted_detour(n: int) -> tuple[PathFamilyState, PLPath]:
    """Build ``pi_0 .. pi_{n-1}`` without balls, plant one ball on the chord
    of pair ``n`` and build ``pi_n`` around it."""
    a, b = pair_enum(n)
    if a == b:
        raise DomainError("constant pairs are never detoured")
    state = PathFamilyState()
    for m in range(n):
        state.add_path(m, build_path(m, state))
    line = chord(a, b)
    for x in (Fraction(1, 2), Fraction(3, 7), Fraction(5, 9), Fraction(2, 5), Fraction(3, 5)):
        c = Point(x, pl_eval(line, x))
        dists = [Fraction(1, 8), x, 1 - x, c.y - floor_int(c.y), floor_int(c.y) + 1 - c.y]
        dists += [linf_dist_point_path(c, p) for p in state.paths]
        r = min(dists[:1] + [d / 2 for d in dists[1:]])
        if r > 0:
            state.plant_ball(LInfBall(c, r))
            break
    else:
        raise ConstructionFailure(f"no room to plant a ball on chord {n}")
    path = build_path(n, state)
    state.add_path(n, path)
    return state, path
