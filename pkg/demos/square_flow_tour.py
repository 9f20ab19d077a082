"""Walk a point up the trapezoid flow and watch it approach the top edge."""

from fractions import Fraction

from carpet_reduction import DEFAULT_FLOW, Point, partial_sum, s_seq, trapezoid

print("row heights s^k_n for n = 1..8")
for k in range(4):
    print(f"  k={k}:", " ".join(str(s_seq(k, n)) for n in range(1, 9)))

print("\npartial sums in column 0 never reach 1:")
for b in (0, 1, 5, 10, 20):
    print(f"  b={b:2d}  sum={partial_sum(0, b)}  gap={1 - partial_sum(0, b)}")

t = trapezoid(1, 2)
print("\nT[1,2] vertices:", {ij: str(v) for ij, v in t.vertices.items()})

z = Point(Fraction(1, 2), Fraction(1, 2))
print(f"\norbit of {z} in J:")
for step in range(0, 31, 5):
    w = DEFAULT_FLOW.pi_orbit(z, step)
    print(f"  step {step:2d}: y = {float(w.y):.12f}  (x = {w.x})")
