import math
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from carpet_reduction.deballing import validate_recipe
from carpet_reduction.geometry import DomainError, Point
from carpet_reduction.reduction import (
    GroupElement, NonConvergence, RecipeWindow, StripCell, T_PLUS, as_group,
    assemble_carpet_recipe, band_trapezoid, build_sigma, cell_region, column_width,
    conjugacy_check, continuity_n0, e_hat_statistic, extract_offsets, kappa, kappa_inv,
    locate_cell, polynomial_in_g_hat, r_n, r_n_apply, r_n_inv, r_nk_apply, r_nk_inv,
    rho_apply, rho_inverse, sigma_apply, sigma_boundary_check, sigma_inverse, six_term_bound,
    tau_apply, tau_exponent, tau_inverse, trapezoid_envelope_check, unit_square_recipe,
)
from carpet_reduction.square_flow import DEFAULT_FLOW, WindowExceeded
from carpet_reduction.suites import conjugacy_samples


def P(x, y):
    return Point(F(x), F(y))


# cells and charts

@pytest.mark.parametrize("z,cell", [
    (P(F(1, 2), 7), StripCell("L", 0)),
    (P(F(3, 16), F(1, 4)), StripCell("L", 1)),
    (P(F(3, 32), F(1, 4)), StripCell("I", 1, 1)),
    (P(1, 0), StripCell("L", 0)),
    (P(0, 3), StripCell("edge")),
])
def test_locate_cell(z, cell):
    assert locate_cell(z) == cell


def test_locate_cell_ties():
    # the edge between I_{1,k} and L_1 goes to L; the one between I_{1,1}, I_{1,2} to k=1
    assert locate_cell(P(F(1, 8), F(1, 4))) == StripCell("L", 1)
    assert locate_cell(P(F(3, 32), F(1, 2))) == StripCell("I", 1, 1)


@given(st.fractions(min_value=0, max_value=1, max_denominator=4 ** 6).filter(lambda x: x > 0),
       st.fractions(min_value=-6, max_value=6, max_denominator=60))
def test_cells_contain_their_points(x, y):
    z = Point(x, y)
    assert cell_region(locate_cell(z)).contains(z)


def test_cell_shapes():
    for n in range(5):
        for k in (-2, 0, 3):
            x0, x1, y0, y1 = cell_region(StripCell("I", n, k)).bbox
            assert x1 - x0 == F(1, 4 ** (n + 1)) and y1 - y0 == F(1, n + 1)
        lo, hi = r_n(n).x_range
        assert (lo, hi) == (F(2, 4 ** (n + 1)), F(1, 4 ** n))


def test_r_n_examples():
    assert r_n_apply(0, P(F(3, 4), 5)) == P(F(1, 2), 5)
    assert r_n_apply(1, P(F(1, 8), 3)) == P(0, 6)
    assert r_n_apply(1, P(F(1, 4), F(1, 3))) == P(1, F(1, 3))


@pytest.mark.parametrize("n", range(1, 7))
def test_r_n_edge_factors(n):
    lo, hi = r_n(n).x_range
    assert r_n(n).y_factor(lo) == n + 1
    assert r_n(n).y_factor(hi) == n


@given(st.integers(0, 5), st.fractions(min_value=0, max_value=1, max_denominator=64),
       st.fractions(min_value=-9, max_value=9, max_denominator=64))
def test_r_n_round_trip(n, t, y):
    lo, hi = r_n(n).x_range
    z = Point(lo + (hi - lo) * t, y)
    assert r_n_inv(n, r_n_apply(n, z)) == z


def test_r_nk_examples():
    assert r_nk_apply(1, 3, P(F(1, 16), 1)) == P(0, 0)
    for n, k in ((0, 0), (2, -3), (3, 4)):
        x0, x1, y0, y1 = cell_region(StripCell("I", n, k)).bbox
        for (x, y), c in zip(((x0, y0), (x1, y0), (x0, y1), (x1, y1)),
                             ((0, 0), (1, 0), (0, 1), (1, 1))):
            assert r_nk_apply(n, k, Point(x, y)) == P(*c)
    with pytest.raises(DomainError):
        r_nk_apply(1, 3, P(F(1, 2), 0))


@given(st.integers(0, 4), st.integers(-4, 4), st.fractions(min_value=0, max_value=1, max_denominator=64),
       st.fractions(min_value=0, max_value=1, max_denominator=64))
def test_r_nk_round_trip(n, k, s, t):
    w = Point(s, t)
    assert r_nk_apply(n, k, r_nk_inv(n, k, w)) == w


def test_kappa_examples():
    assert kappa(0, -1) == (0.0, -math.inf)
    assert kappa(0.3, 0) == (0.3, 0.0)
    x, y = kappa(0, 0.5)
    assert x == 0 and y == pytest.approx(2 / 3)
    u, v = kappa_inv(*kappa(0.4, -0.7))
    assert (u, v) == pytest.approx((0.4, -0.7))


# tau and rho

def test_tau_exponent_cases():
    g = GroupElement([0, 0])
    assert [tau_exponent(g, n, k) for n in range(2) for k in (-1, 0, 1)] == [1, -1, 1] * 2
    assert GroupElement([2])(5) == 0


def test_tau_fixes_strips_and_edges():
    g = [1]
    assert tau_apply(g, P(F(3, 4), 5)) == P(F(3, 4), 5)
    for z in (P(F(3, 32), F(1, 2)), P(F(1, 16), F(1, 5)), P(F(5, 64), 0)):
        assert tau_apply(g, z) == z


def test_tau_descends_in_marked_cell():
    g = [2]
    z = P(F(3, 8), F(3, 2))   # inside I_{0,2}
    ys = [z.y]
    for _ in range(40):
        z = tau_apply(g, z)
        ys.append(z.y)
    assert ys == sorted(ys, reverse=True) and ys[-1] - 1 < F(1, 2 ** 20)


@given(st.sampled_from(conjugacy_samples(60)), st.lists(st.integers(-3, 3), max_size=5))
def test_tau_inverse(z, g):
    assert tau_inverse(g, tau_apply(g, z)) == z


def test_rho_on_squares():
    for z in (P(-1, F(1, 3)), P(F(-1, 2), 1), P(F(-1, 3), -1), P(0, F(-1, 2))):
        assert rho_apply([0], z) == z
    z = P(F(-1, 2), F(1, 2))
    for _ in range(60):
        z = rho_apply([0], z)
    assert z.x == F(-1, 2) and 1 - z.y < F(1, 2 ** 20)
    assert T_PLUS.forward(P(-1, 0)) == P(0, 0)
    w = P(F(-1, 3), F(-1, 4))
    assert rho_inverse([0], rho_apply([0], w)) == w
    assert rho_apply([2], P(F(3, 8), F(3, 2))) == tau_apply([2], P(F(3, 8), F(3, 2)))


# sigma

def test_sigma_identity(family25):
    h = build_sigma([1, 2], [1, 2], family25)
    for z in conjugacy_samples(30):
        assert sigma_apply(h, z) == z


def test_sigma_examples(family25):
    h = build_sigma([0, 2], [0, 0], family25)
    assert sigma_apply(h, P(F(3, 32), F(1, 4))) == P(F(3, 32), F(5, 4))
    assert sigma_apply(h, P(F(1, 8), F(1, 3))) == P(F(1, 8), F(4, 3))
    h = build_sigma([3, 0], [0, 0], family25)
    assert sigma_apply(h, P(F(1, 4), 0)) == P(F(1, 4), 3)


@pytest.mark.parametrize("g", [[0, 0], [0, 2], [3, 0], [-2, 5, 1]])
def test_sigma_boundary(family25, g):
    h = build_sigma(g, [], family25)
    ys = [F(i, 7) - 2 for i in range(30)]
    for n in range(4):
        assert sigma_boundary_check(h, n, ys).passed


@given(st.sampled_from(conjugacy_samples(80)))
def test_sigma_round_trip(family25, z):
    h = build_sigma([2, -1, 3], [0, 1], family25)
    assert sigma_inverse(h, sigma_apply(h, z)) == z


@given(st.integers(0, 4), st.integers(-4, 4), st.fractions(min_value=F(1, 64), max_value=F(63, 64), max_denominator=64),
       st.fractions(min_value=F(1, 64), max_value=F(63, 64), max_denominator=64))
def test_sigma_translates_cells(family25, n, k, s, t):
    g = [3, -2, 1, 0, 4]
    h = build_sigma(g, [], family25)
    z = r_nk_inv(n, k, Point(s, t))
    assert locate_cell(sigma_apply(h, z)) == StripCell("I", n, k + g[n])


def test_conjugacy_examples(family25):
    h = build_sigma([2, 0, 0], [0, 0, 0], family25)
    assert conjugacy_check([2, 0, 0], [0, 0, 0], h, conjugacy_samples(100)).passed
    same = build_sigma([1, 1], [1, 1], family25)
    assert conjugacy_check([1, 1], [1, 1], same, conjugacy_samples(20)).passed
    edge = P(F(3, 32), F(1, 2))
    assert sigma_apply(h, tau_apply([0, 0, 0], sigma_inverse(h, edge))) == edge


def test_conjugacy_detects_wrong_pair(family25):
    h = build_sigma([2, 0, 0], [0, 0, 0], family25)
    assert not conjugacy_check([1, 0, 0], [0, 0, 0], h, conjugacy_samples(40)).passed


# envelopes and continuity

@pytest.mark.parametrize("k", [-1, 0, 1, 2])
def test_envelope_offsets_three_four(family25, k):
    res = trapezoid_envelope_check(1, k, 3, 4, family25)
    assert res.passed and min(res.slacks) >= 0


def test_envelope_trivial(family25):
    res = trapezoid_envelope_check(3, 1, 0, 0, family25)
    assert res.passed and all(s == res.details["bound"] for s in res.slacks)


def test_envelope_sweep(family25):
    for k in range(-2, 3):
        for s in ((2, -1), (0, 2), (-2, -2)):
            assert trapezoid_envelope_check(5, k, *s, family25, M=F(2)).passed


def test_straight_envelope_counterexample(family25):
    # reading the image region with straight sides fails at this point
    z = P(F(3, 20), 0)
    assert band_trapezoid(1, 1, straight=True).contains(z)
    assert not trapezoid_envelope_check(1, 1, 3, 4, family25, samples=[z], straight=True).passed
    assert trapezoid_envelope_check(1, 1, 3, 4, family25, samples=[z]).passed


def test_six_term_bound():
    assert six_term_bound(1, F(2), 3, 4) == F(4) + F(3) + F(2) + F(3, 2) + F(1) + F(1, 1)


@pytest.mark.parametrize("eps", [F(1, 4), F(1, 16)])
@pytest.mark.parametrize("M", [F(2), F(8)])
def test_continuity(family25, eps, M):
    h = build_sigma([2, -1, 3], [0, 0, 0], family25)
    res = continuity_n0(h, eps, M)
    assert res.passed and res.details["n0"] >= 3


# reading g back

def test_extract_examples(family25):
    assert extract_offsets(lambda z: tau_apply([2, -1, 0], z), 3) == [2, -1, 0]
    assert extract_offsets(lambda z: tau_apply([], z), 2) == [0, 0]
    h = build_sigma([1, 0], [-1, 2], family25)

    def oracle(z):
        return sigma_apply(h, tau_apply([-1, 2], sigma_inverse(h, z)))
    assert extract_offsets(oracle, 2) == [1, 0]


@given(st.lists(st.integers(-4, 4), min_size=1, max_size=3))
def test_extract_round_trip(g):
    assert extract_offsets(lambda z: tau_apply(g, z), len(g)) == g


def test_extract_failures():
    with pytest.raises(WindowExceeded):
        extract_offsets(lambda z: tau_apply([5], z), 1, k_window=2)
    with pytest.raises(NonConvergence):
        extract_offsets(lambda z: Point(z.x, z.y + 1), 1, iters=10)


def test_e_hat():
    assert e_hat_statistic([1, 2], [1, 2], 5) == 0
    assert e_hat_statistic(list(range(10)), [], 10) == F(9, 10)
    assert e_hat_statistic([1] * 6, [], 6) == 1
    assert polynomial_in_g_hat([F(3)]) and not polynomial_in_g_hat([F(0), F(1, 2)])
    assert as_group([1, 2]) - as_group([3]) == GroupElement([-2, 2])


# recipes

def test_recipe_depth_zero():
    assert len(assemble_carpet_recipe(0, RecipeWindow(1, 1, 1))) == 0


def test_recipe_cell_counting():
    win = RecipeWindow(0, 1, 0, 0, k_min=0)
    per_cell = len(unit_square_recipe(1, win))
    assert per_cell == 2
    assert len(assemble_carpet_recipe(1, win)) == 5 * per_cell


def test_recipe_valid():
    rec = assemble_carpet_recipe(2, RecipeWindow(3, 3, 1, 0))
    assert validate_recipe(rec).valid


def test_recipe_cell_images_disjoint():
    rec = assemble_carpet_recipe(1, RecipeWindow(2, 2, 1, 0))
    for b in rec.balls[:200]:
        assert b.cell.contains(b.image_point(b.box.center))
    # no ball reaches the left edge
    assert all(not b.contains(P(0, F(1, 3))) for b in rec.balls)


def test_bad_window():
    with pytest.raises(DomainError):
        locate_cell(P(2, 0))
    with pytest.raises(DomainError):
        trapezoid_envelope_check(0, 0, 1, 1, None)
    assert column_width(2) == F(1, 64)
    assert DEFAULT_FLOW.a_max > 0
