from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from carpet_reduction.geometry import (
    Box, DomainError, LInfBall, PLPath, Point, VSTrapezoid, ball_avoids_path, bilinear_eval,
    bilinear_invert, box_meets_path, floor_int, min_gap, paths_equal_somewhere, pl_eval, pl_max,
)
from carpet_reduction.square_flow import trapezoid

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=64)
unit = st.fractions(min_value=0, max_value=1, max_denominator=64)


@st.composite
def trapezoids(draw):
    xl = draw(rationals)
    xr = xl + draw(st.fractions(min_value=F(1, 64), max_value=4, max_denominator=64))
    lb, rb = draw(rationals), draw(rationals)
    lh = draw(st.fractions(min_value=F(1, 64), max_value=4, max_denominator=64))
    rh = draw(st.fractions(min_value=F(1, 64), max_value=4, max_denominator=64))
    return VSTrapezoid(xl, xr, lb, lb + lh, rb, rb + rh)


@st.composite
def pl_paths(draw):
    inner = sorted(set(draw(st.lists(st.fractions(min_value=F(1, 64), max_value=F(63, 64),
                                                     max_denominator=64), max_size=4))))
    ts = [F(0), *inner, F(1)]
    return PLPath([(t, draw(rationals)) for t in ts])


@pytest.mark.parametrize("y,expected", [(0, 0), (F(5, 2), 2), (F(-1, 2), -1)])
def test_floor(y, expected):
    assert floor_int(y) == expected


def test_floats_rejected():
    with pytest.raises(TypeError):
        Point.of(0.5, 0)


T12 = trapezoid(1, 2)


@pytest.mark.parametrize("s,t,expected", [
    (0, 0, (F(1, 2), F(1, 2))),
    (1, 1, (F(3, 4), F(3, 8))),
    (F(1, 2), F(1, 2), (F(5, 8), F(7, 16))),
])
def test_bilinear_eval_examples(s, t, expected):
    assert bilinear_eval(T12, s, t) == Point(*expected)


def test_bilinear_invert_examples():
    assert bilinear_invert(T12, Point(F(1, 2), F(1, 2)))[:2] == (0, 0)
    assert bilinear_invert(T12, Point(F(5, 8), F(7, 16)))[:2] == (F(1, 2), F(1, 2))
    assert bilinear_invert(VSTrapezoid.unit(), Point(F(1, 3), F(1, 4)))[:2] == (F(1, 3), F(1, 4))


def test_bilinear_invert_outside():
    with pytest.raises(DomainError):
        bilinear_invert(VSTrapezoid.unit(), Point(F(2), F(0)))


def test_degenerate_fiber_flagged():
    q = VSTrapezoid(F(0), F(1), F(0), F(1), F(0), F(0))
    c = bilinear_invert(q, Point(F(1), F(0)))
    assert c.t == 0 and c.degenerate


@given(trapezoids(), unit, unit)
def test_bilinear_round_trip(q, s, t):
    c = bilinear_invert(q, bilinear_eval(q, s, t))
    assert (c.s, c.t) == (s, t)


@given(trapezoids(), unit, unit, unit)
def test_bilinear_x_ignores_t(q, s, t1, t2):
    assert bilinear_eval(q, s, t1).x == bilinear_eval(q, s, t2).x


@given(rationals, rationals, unit)
def test_pl_eval_chord(a, b, t):
    assert pl_eval(PLPath.line(a, b), t) == (1 - t) * a + t * b


def test_pl_eval_examples():
    assert pl_eval(PLPath([(0, 0), (F(1, 2), 1), (1, 0)]), F(1, 4)) == F(1, 2)
    assert pl_eval(PLPath.line(3, 7), 0) == 3


def test_paths_equal_somewhere_examples():
    p = PLPath.line(0, 1)
    assert paths_equal_somewhere(p, p)
    assert not paths_equal_somewhere(PLPath.constant(0), PLPath.constant(1))
    assert paths_equal_somewhere(PLPath.line(0, 1), PLPath.line(1, 0))


@given(pl_paths(), pl_paths())
def test_paths_equal_somewhere_symmetric(p, q):
    assert paths_equal_somewhere(p, q) == paths_equal_somewhere(q, p)
    assert paths_equal_somewhere(p, p)


@given(pl_paths(), pl_paths())
def test_min_gap_sign_matches_crossing(p, q):
    # a positive gap means the graphs are disjoint
    if min_gap(p, q) > 0 or min_gap(q, p) > 0:
        assert not paths_equal_somewhere(p, q)


@given(pl_paths(), pl_paths(), unit)
def test_pl_max_pointwise(p, q, t):
    assert pl_eval(pl_max(p, q), t) == max(pl_eval(p, t), pl_eval(q, t))


def test_ball_avoids_path_examples():
    zero = PLPath.constant(0)
    assert ball_avoids_path(LInfBall.of(F(1, 2), 2, F(1, 4)), zero)
    assert not ball_avoids_path(LInfBall.of(F(1, 2), 0, F(1, 4)), zero)
    assert not ball_avoids_path(LInfBall.of(F(1, 2), F(1, 2), F(1, 8)), PLPath.line(0, 1))


@given(pl_paths(), st.fractions(min_value=F(1, 16), max_value=F(15, 16), max_denominator=32),
       rationals, st.fractions(min_value=F(1, 64), max_value=F(1, 16), max_denominator=64))
def test_box_meets_path_agrees_with_sampling(p, cx, cy, r):
    box = Box(cx - r, cx + r, cy - r, cy + r)
    # dense sampling can only find hits, never refute them
    hit = any(box.ymin <= pl_eval(p, box.xmin + (box.xmax - box.xmin) * F(i, 64)) <= box.ymax
              for i in range(65))
    if hit:
        assert box_meets_path(box, p)


@given(rationals, rationals)
def test_rational_arithmetic_exact(a, b):
    assert (a + b) - b == a
    assert F(a.numerator, a.denominator) == a
