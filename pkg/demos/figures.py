"""Write the SVG pictures into demos/out/."""

from pathlib import Path

from carpet_reduction import Point, build_family
from carpet_reduction.render import (
    render_carpet, render_detour, render_orbit, render_strip, render_trapezoids,
)

out = Path(__file__).with_name("out")
out.mkdir(exist_ok=True)
state = build_family(40)
pictures = {
    "carpet.svg": render_carpet(4),
    "trapezoids.svg": render_trapezoids(4, 6),
    "strip.svg": render_strip(state),
    "half_disc.svg": render_strip(state, disc=True, grid=True),
    "detour.svg": render_detour(3)[0],
    "orbit.svg": render_orbit(Point.of(0, 0), 30),
}
for name, svg in pictures.items():
    (out / name).write_text(svg)
    print("wrote", out / name)
