from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from carpet_reduction.geometry import DomainError, Point, bilinear_eval
from carpet_reduction.square_flow import (
    DEFAULT_FLOW, SquareFlow, WindowExceeded, column_x, partial_sum, pi_on_unit_square,
    s_seq, square_recipe, tail_mass, transported, trapezoid,
)
from carpet_reduction.deballing import validate_recipe


def s_block(k, n):
    # independent closed form: 2^k copies of each value 2^-(k+m)
    if n == 0:
        return F(0)
    m = -(-n // 2 ** k)
    return F(1, 2 ** (k + m))


@pytest.mark.parametrize("k,n,v", [(0, 3, F(1, 8)), (1, 4, F(1, 8)), (2, 1, F(1, 8))])
def test_s_examples(k, n, v):
    assert s_seq(k, n) == v


@given(st.integers(0, 8), st.integers(0, 300))
def test_s_matches_block_form(k, n):
    assert s_seq(k, n) == s_block(k, n)


@given(st.integers(0, 8), st.integers(0, 200))
def test_partial_sum_matches_direct_sum(k, b):
    assert partial_sum(k, b) == sum(s_seq(k, j) for j in range(b + 1))
    assert 0 < tail_mass(k, b) <= 1


@pytest.mark.parametrize("k", range(7))
def test_tails_vanish(k):
    assert tail_mass(k, 2 ** k * 11) < F(1, 2 ** 10)


def test_s_domain():
    with pytest.raises(DomainError):
        s_seq(-1, 2)


def test_column_x():
    assert [column_x(a) for a in range(4)] == [0, F(1, 2), F(3, 4), F(7, 8)]


def test_trapezoid_examples():
    t = trapezoid(1, 2)
    assert set(t.vertices.values()) == {Point.of(F(1, 2), F(1, 2)), Point.of(F(1, 2), F(5, 8)),
                                        Point.of(F(3, 4), F(1, 4)), Point.of(F(3, 4), F(3, 8))}
    t = trapezoid(0, 0)
    assert t.vertices == {(0, 0): Point.of(0, 0), (1, 0): Point.of(F(1, 2), 0),
                          (0, 1): Point.of(0, F(1, 2)), (1, 1): Point.of(F(1, 2), F(1, 4))}


@given(st.integers(0, 6), st.integers(-8, 8))
def test_mirror_columns(a, b):
    t, m = trapezoid(a, b), trapezoid(-a - 1, b)
    assert {Point(-v.x, v.y) for v in t.vertices.values()} == set(m.vertices.values())


def test_locate_examples():
    assert DEFAULT_FLOW.locate(Point.of(F(5, 8), F(7, 16))) == (1, 2)
    assert DEFAULT_FLOW.locate(Point.of(0, 0)) == (0, 0)


def test_locate_window_exceeded():
    small = SquareFlow(a_max=4, b_max=8)
    with pytest.raises(WindowExceeded) as e:
        small.locate(Point.of(0, 1 - F(1, 2 ** 20)))
    assert "b" in e.value.needed


def test_p_examples():
    t12, t13 = trapezoid(1, 2), trapezoid(1, 3)
    assert DEFAULT_FLOW.p_apply(t12.vertex(0, 0)) == t13.vertex(0, 0)
    assert DEFAULT_FLOW.p_inverse(t13.vertex(0, 0)) == t12.vertex(0, 0)
    for z in (Point.of(1, F(1, 3)), Point.of(F(-1, 5), -1)):
        assert DEFAULT_FLOW.p_apply(z) == z and DEFAULT_FLOW.p_inverse(z) == z


interior = st.tuples(st.fractions(min_value=F(-31, 32), max_value=F(31, 32), max_denominator=64),
                     st.fractions(min_value=F(-31, 32), max_value=F(31, 32), max_denominator=64)
                     ).map(lambda v: Point(*v))


@given(interior)
def test_p_round_trip_and_x(z):
    w = DEFAULT_FLOW.p_apply(z)
    assert w.x == z.x
    assert DEFAULT_FLOW.p_inverse(w) == z
    assert DEFAULT_FLOW.p_apply(DEFAULT_FLOW.p_inverse(z)) == z


@given(interior)
def test_band_index_increments(z):
    a, b = DEFAULT_FLOW.locate(z)
    s = bilinear_eval(trapezoid(a, b), F(1, 2), F(1, 2))
    w = DEFAULT_FLOW.p_apply(s)
    assert DEFAULT_FLOW.locate(w) == (a, b + 1)


def test_shared_edges_agree():
    # both neighbouring charts send a shared-edge point to the same place
    t, up = trapezoid(1, 2), trapezoid(1, 3)
    for s in (F(0), F(1, 3), F(1)):
        top = bilinear_eval(t, s, 1)
        assert DEFAULT_FLOW.p_apply(top) == bilinear_eval(up, s, 1)


def test_orbits():
    assert DEFAULT_FLOW.pi_orbit(Point.of(F(1, 3), F(1, 5)), 0) == Point.of(F(1, 3), F(1, 5))
    z = Point.of(F(1, 2), F(1, 2))
    up = pi_on_unit_square(z)
    assert up.x == z.x and up.y > z.y
    hi = DEFAULT_FLOW.pi_unit_power(z, 60)
    lo = DEFAULT_FLOW.pi_unit_power(z, -60)
    assert hi.x == lo.x == F(1, 2)
    assert 1 - hi.y < F(1, 2 ** 20) and lo.y < F(1, 2 ** 20)
    for x in (0, 1):
        assert pi_on_unit_square(Point.of(x, 0)) == Point.of(x, 0)


def test_recipe_bands():
    r0 = square_recipe(DEFAULT_FLOW, 1, 0, 2)
    r1 = square_recipe(DEFAULT_FLOW, 1, 1, 2)
    assert len(r1) == 3 * len(r0)
    assert validate_recipe(r1).valid
    row0 = [b for b in r1.balls if DEFAULT_FLOW.locate(b.image_point(b.box.center))[1] == 0]
    for ball in row0:
        up = transported(ball)
        assert up.image_point(ball.box.center) == DEFAULT_FLOW.p_apply(ball.image_point(ball.box.center))


def test_first_row_of_level_one():
    assert [s_seq(1, n) for n in range(5)] == [0, F(1, 4), F(1, 4), F(1, 8), F(1, 8)]
