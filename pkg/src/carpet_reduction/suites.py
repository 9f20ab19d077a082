"""Named verification suites.

Each suite takes keyword parameters, runs exact checks and returns a
:class:`SuiteReport`.  Reports hold no timings, so reruns are
byte-identical; random samples come from a fixed internal seed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

from .checks import CheckResult
from .deballing import coverage_fraction, validate_recipe
from .geometry import Point, bilinear_eval
from .reduction import (
    RecipeWindow, assemble_carpet_recipe, build_sigma, column_width, conjugacy_check,
    extract_offsets, r_n, sigma_apply, sigma_boundary_check, sigma_inverse, tau_apply,
    trapezoid_envelope_check,
)
from .square_flow import (
    DEFAULT_FLOW, J_BOX, on_boundary_J, partial_sum, s_seq, square_recipe, transported,
    trapezoid,
)
from .strip_paths import (
    build_family, distortion_check, fiberwise_shift, fiberwise_shift_inv, verify_family,
)

SAMPLE_SEED = 20240601


@dataclass
class SuiteReport:
    suite: str
    params: dict
    checks: dict[str, CheckResult] = field(default_factory=dict)
    seed: int = SAMPLE_SEED
    schema: str = "v1"

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks.values())

    def add(self, name: str, result: CheckResult) -> None:
        self.checks[name] = result

    def summary(self) -> dict[str, Any]:
        return {"schema": self.schema, "suite": self.suite, "params": self.params,
                "seed": self.seed, "passed": self.passed, "checks": self.checks}


def _check(name_ok: list[tuple[Any, bool]]) -> CheckResult:
    bad = [w for w, ok in name_ok if not ok]
    return CheckResult(not bad, bad[:20])


def suite_s_seq(kmax: int = 6, nmax: int = 20, flat_kmax: int = 8) -> SuiteReport:
    rep = SuiteReport("s-seq", {"kmax": kmax, "nmax": nmax, "flat_kmax": flat_kmax})
    rep.add("base", _check([(n, s_seq(0, n) == Fraction(1, 2 ** n)) for n in range(1, nmax + 1)]))
    rep.add("recursion", _check([
        ((k, n), s_seq(k + 1, 2 * n - 1) == s_seq(k + 1, 2 * n) == s_seq(k, n) / 2)
        for k in range(kmax + 1) for n in range(1, nmax + 1)]))
    # the largest term is the first nonzero one; later blocks only halve
    rep.add("flattening", _check([
        (k, max(s_seq(k, n) for n in range(1, 2 ** (k + 2))) == Fraction(1, 2 ** (k + 1)))
        for k in range(flat_kmax + 1)]))
    sums = []
    for k in range(kmax + 1):
        total = Fraction(0)
        for b in range(4 * 2 ** k):
            total += s_seq(k, b)
            sums.append(((k, b), total == partial_sum(k, b) and total < 1))
        sums.append(((k, "tail"), 1 - partial_sum(k, 40 * 2 ** k) < Fraction(1, 2 ** 39)))
    rep.add("partial-sums", _check(sums))
    return rep


def suite_trapezoid_tiling(a_max: int = 4, b_max: int = 6) -> SuiteReport:
    rep = SuiteReport("trapezoid-tiling", {"a_max": a_max, "b_max": b_max})
    rows, cols, inside = [], [], []
    for a in range(-a_max - 1, a_max + 1):
        for b in range(-b_max - 1, b_max + 1):
            t = trapezoid(a, b)
            up = trapezoid(a, b + 1)
            rows.append(((a, b), (t.vertex(0, 1), t.vertex(1, 1)) == (up.vertex(0, 0), up.vertex(1, 0))))
            if a < a_max:
                right = trapezoid(a + 1, b)
                cols.append(((a, b), (t.vertex(1, 0), t.vertex(1, 1))
                             == (right.vertex(0, 0), right.vertex(0, 1))))
            inside.append(((a, b), all(J_BOX.contains(v) for v in t.vertices.values())))
    rep.add("rows-stack", _check(rows))
    rep.add("columns-abut", _check(cols))
    rep.add("inside-J", _check(inside))
    return rep


def _interior_samples(t, count: int, rng: random.Random) -> list[Point]:
    return [bilinear_eval(t, Fraction(rng.randint(1, 99), 100), Fraction(rng.randint(1, 99), 100))
            for _ in range(count)]


def suite_flow(a_max: int = 4, b_max: int = 6, interior: int = 20, points: int = 10,
               steps: int = 200, tol_exp: int = 20) -> SuiteReport:
    rep = SuiteReport("flow", {"a_max": a_max, "b_max": b_max, "interior": interior,
                               "points": points, "steps": steps, "tol_exp": tol_exp})
    rng = random.Random(SAMPLE_SEED)
    flow = DEFAULT_FLOW
    verts, inner, xs, inv = [], [], [], []
    for a in range(-a_max, a_max + 1):
        for b in range(-b_max, b_max + 1):
            t, t2 = trapezoid(a, b), trapezoid(a, b + 1)
            for ij, v in t.vertices.items():
                if on_boundary_J(v):
                    continue
                verts.append(((a, b, ij), flow.p_apply(v) == t2.vertices[ij]))
            for z in _interior_samples(t, interior, rng):
                w = flow.p_apply(z)
                inner.append(((a, b, z), t2.contains(w)))
                xs.append(((a, b, z), w.x == z.x))
                inv.append(((a, b, z), flow.p_inverse(w) == z))
    rep.add("vertices", _check(verts))
    rep.add("interior-contained", _check(inner))
    rep.add("x-preserved", _check(xs))
    rep.add("inverse", _check(inv))
    edge = []
    for i in range(-4, 5):
        q = Fraction(i, 4)
        for z in (Point(q, Fraction(1)), Point(q, Fraction(-1)), Point(Fraction(1), q),
                  Point(Fraction(-1), q)):
            edge.append((z, flow.p_apply(z) == z and flow.p_inverse(z) == z))
    rep.add("boundary-fixed", _check(edge))
    tol = Fraction(1, 2 ** tol_exp)
    conv = []
    for _ in range(points):
        z = Point(Fraction(rng.randint(-95, 95), 100), Fraction(rng.randint(-95, 95), 100))
        for direction, target in ((1, Fraction(1)), (-1, Fraction(-1))):
            w, ok = z, False
            for _ in range(steps):
                w = flow.p_apply(w) if direction > 0 else flow.p_inverse(w)
                if abs(target - w.y) < tol:
                    ok = w.x == z.x
                    break
            conv.append(((z, direction), ok))
    rep.add("orbit-convergence", _check(conv))
    return rep


def suite_recipe(depth: int = 2, n_max: int = 3, k_max: int = 3, b_max: int = 3,
                 grid: int = 32) -> SuiteReport:
    rep = SuiteReport("recipe", {"depth": depth, "n_max": n_max, "k_max": k_max,
                                 "b_max": b_max, "grid": grid})
    recipe = assemble_carpet_recipe(depth, RecipeWindow(n_max, k_max, b_max))
    v = validate_recipe(recipe)
    rep.add("assembled-valid", CheckResult(v.valid, v.witnesses[:20],
                                           details={"balls": v.ball_count}))
    sq = square_recipe(DEFAULT_FLOW, 1, 1, 1)
    ok = []
    for ball in sq.balls:
        up = transported(ball)
        for c in (ball.box.center, *ball.box.corners):
            ok.append((c, DEFAULT_FLOW.p_apply(ball.chart.forward(c)) == up.chart.forward(c)))
    rep.add("transport", _check(ok))
    covs = [coverage_fraction(square_recipe(DEFAULT_FLOW, d, 6, 6), grid) for d in range(4)]
    rep.add("coverage-increases", CheckResult(all(a < b for a, b in zip(covs, covs[1:])),
                                              slacks=covs))
    return rep


def suite_path_family(n: int = 50) -> SuiteReport:
    rep = SuiteReport("path-family", {"n": n})
    for name, res in verify_family(build_family(n)).items():
        rep.add(name, res)
    return rep


def suite_distortion(kmax: int = 5, samples: int = 200, ymax: int = 8,
                     family_depth: int = 50) -> SuiteReport:
    rep = SuiteReport("distortion", {"kmax": kmax, "samples": samples, "ymax": ymax,
                                     "family_depth": family_depth})
    fam = build_family(family_depth)
    rng = random.Random(SAMPLE_SEED)
    pts = [Point(Fraction(rng.randint(0, 64), 64), Fraction(rng.randint(-ymax * 48, ymax * 48), 48))
           for _ in range(samples)]
    results, edges, trans, inv = [], [], [], []
    for k in range(-kmax, kmax + 1):
        for l in range(-kmax, kmax + 1):
            for z in pts:
                results.append(distortion_check(k, l, fam, z))
                w = fiberwise_shift(k, l, fam, z)
                if z.x == 0:
                    edges.append(((k, l, z), w == Point(z.x, z.y + k)))
                if z.x == 1:
                    edges.append(((k, l, z), w == Point(z.x, z.y + l)))
                if k == l:
                    trans.append(((k, z), w == Point(z.x, z.y + k)))
                inv.append(((k, l, z), fiberwise_shift_inv(k, l, fam, w) == z))
    bound = CheckResult.combine(results)
    bound.slacks = [min(s[0] for s in bound.slacks), min(s[1] for s in bound.slacks)]
    rep.add("bound", bound)
    rep.add("boundary-restriction", _check(edges))
    rep.add("equal-shift-translation", _check(trans))
    rep.add("inverse", _check(inv))
    return rep


def suite_sigma_boundary(n_max: int = 5, s_max: int = 5, ys: int = 20,
                         family_depth: int = 50) -> SuiteReport:
    rep = SuiteReport("sigma-boundary", {"n_max": n_max, "s_max": s_max, "ys": ys,
                                         "family_depth": family_depth})
    fam = build_family(family_depth)
    ylist = [Fraction(i, ys) - Fraction(1, 2) for i in range(ys)]
    out = []
    for n in range(n_max + 1):
        for s_n in range(-s_max, s_max + 1):
            for s_n1 in (0,) if n == 0 else range(-s_max, s_max + 1):
                g = [0] * (n - 1) + [s_n1, s_n] if n else [s_n]
                out.append(sigma_boundary_check(build_sigma(g, [], fam), n, ylist))
    res = CheckResult.combine(out)
    res.slacks = sorted(set(res.slacks))
    rep.add("edge-identities", res)
    return rep


def conjugacy_samples(count: int, n_max: int = 4, k_max: int = 4, y_max: int = 2) -> list[Point]:
    rng = random.Random(SAMPLE_SEED)
    out = []
    for i in range(count):
        n = i % (n_max + 1)
        if i % 2:
            k = rng.randint(-k_max, k_max)
            w, h = column_width(n), Fraction(1, n + 1)
            out.append(Point(w + w * Fraction(rng.randint(0, 64), 64),
                             (k - 1) * h + h * Fraction(rng.randint(0, 64), 64)))
        else:
            x0, x1 = r_n(n).x_range
            out.append(Point(x0 + (x1 - x0) * Fraction(rng.randint(0, 64), 64),
                             Fraction(rng.randint(-y_max * 32, y_max * 32), 32)))
    return out


def suite_conjugacy(g=(2, 0, 0), gp=(0, 0, 0), samples: int = 100,
                    family_depth: int = 50) -> SuiteReport:
    g, gp = list(g), list(gp)
    rep = SuiteReport("conjugacy", {"g": g, "gp": gp, "samples": samples,
                                    "family_depth": family_depth})
    h = build_sigma(g, gp, build_family(family_depth))
    res = conjugacy_check(g, gp, h, conjugacy_samples(samples))
    res.details["max_error"] = max(res.slacks, default=Fraction(0))
    res.slacks = []
    rep.add("identity", res)
    rep.add("fixes-origin", CheckResult(sigma_apply(h, Point(Fraction(0), Fraction(0)))
                                        == Point(Fraction(0), Fraction(0))))
    return rep


def suite_envelope(n_max: int = 6, k_max: int = 3, s_max: int = 4,
                   family_depth: int = 50) -> SuiteReport:
    rep = SuiteReport("envelope", {"n_max": n_max, "k_max": k_max, "s_max": s_max,
                                   "family_depth": family_depth})
    fam = build_family(family_depth)
    svals = sorted({(3, 4), (0, 0), (s_max, -s_max), (-s_max, 1), (2, 2)})
    out = []
    for n in range(1, n_max + 1):
        for k in range(-k_max, k_max + 1):
            for s_n, s_n1 in svals:
                r = trapezoid_envelope_check(n, k, s_n, s_n1, fam)
                r.slacks = [min(r.slacks)]
                r.details = {}
                out.append(r)
    res = CheckResult.combine(out)
    res.slacks = [min(res.slacks)]
    rep.add("containment-and-bound", res)
    return rep


def suite_extraction(N: int = 5, iters: int = 400, count: int = 10, g_max: int = 3,
                     family_depth: int = 25) -> SuiteReport:
    rep = SuiteReport("extraction", {"N": N, "iters": iters, "count": count,
                                     "g_max": g_max, "family_depth": family_depth})
    rng = random.Random(SAMPLE_SEED)
    fam = build_family(family_depth)
    direct, conj = [], []
    for i in range(count):
        g = [rng.randint(-g_max, g_max) for _ in range(N)]
        got = extract_offsets(lambda z: tau_apply(g, z), N, iters, k_window=g_max + 2)
        direct.append((g, got == g))
        if i < 3:
            gp = [rng.randint(-g_max, g_max) for _ in range(N)]
            h = build_sigma(g, gp, fam)

            def oracle(z, h=h, gp=gp):
                return sigma_apply(h, tau_apply(gp, sigma_inverse(h, z)))
            got = extract_offsets(oracle, N, iters, k_window=g_max + 2)
            conj.append(((g, gp), got == g))
    rep.add("round-trip", _check(direct))
    rep.add("conjugated-oracle", _check(conj))
    return rep


SUITES: dict[str, Callable[..., SuiteReport]] = {
    "s-seq": suite_s_seq,
    "trapezoid-tiling": suite_trapezoid_tiling,
    "flow": suite_flow,
    "recipe": suite_recipe,
    "path-family": suite_path_family,
    "distortion": suite_distortion,
    "sigma-boundary": suite_sigma_boundary,
    "conjugacy": suite_conjugacy,
    "envelope": suite_envelope,
    "extraction": suite_extraction,
}
