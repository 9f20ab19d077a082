"""Build the strip paths and balls, check them, and shift points between bands."""

from fractions import Fraction

from carpet_reduction import Point, build_family, fiberwise_shift, verify_family
from carpet_reduction.strip_paths import cross_class_crossings, planted_detour

state = build_family(50)
kinds = {}
for entry in state.audit:
    if entry["step"] == "path":
        kinds[entry["kind"]] = kinds.get(entry["kind"], 0) + 1
print("paths by kind:", kinds)
print("balls:", len(state.balls), "smallest radius:", min(b.radius for b in state.balls))
for name, res in verify_family(state).items():
    print(f"  {name:14s} {'ok' if res else 'FAILED'}")
print("cross-class crossings (allowed):", len(cross_class_crossings(state)))

_, path = planted_detour(3)
print("\npath 3 around a planted ball:")
for t, v in path.breakpoints:
    print(f"  ({t}, {v})")

z = Point(Fraction(1, 3), Fraction(1, 2))
for k, l in ((0, 0), (2, 2), (3, 4), (-2, 1)):
    w = fiberwise_shift(k, l, state, z)
    print(f"shift ({k:2d},{l:2d}) sends {z} to {w}")
