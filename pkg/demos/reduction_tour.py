"""Reduce two sequences to carpet maps, conjugate them, and read a sequence back."""

from fractions import Fraction

from carpet_reduction import (
    Point, build_family, build_sigma, conjugacy_check, extract_offsets, locate_cell,
    sigma_apply, sigma_inverse, tau_apply,
)
from carpet_reduction.suites import conjugacy_samples

g, gp = [2, -1, 0], [0, 1, 1]
z = Point(Fraction(3, 32), Fraction(1, 4))
print(f"{z} lies in {locate_cell(z)}")
print("tau(g) moves it to", tau_apply(g, z))

h = build_sigma(g, gp, build_family(25))
print("offsets s(n):", [h.s(n) for n in range(3)])
print("sigma moves it to", sigma_apply(h, z))

res = conjugacy_check(g, gp, h, conjugacy_samples(200))
print("conjugacy holds exactly at 200 points:", res.passed, "max error", max(res.slacks))


def disguised(w):
    return sigma_apply(h, tau_apply(gp, sigma_inverse(h, w)))


print("sequence read off tau(g):", extract_offsets(lambda w: tau_apply(g, w), 3))
print("sequence read off the conjugated map:", extract_offsets(disguised, 3))
