"""Command-line front end.

Exit codes: 0 success, 1 a verification failed (the report is still
written), 2 usage error.
"""

from __future__ import annotations

import argparse
import inspect
import sys
import time
from fractions import Fraction

from .geometry import DomainError, Point
from .reduction import (
    RecipeWindow, as_group, assemble_carpet_recipe, build_sigma, conjugacy_check,
    e_hat_statistic, rho_apply, sigma_apply, tau_apply, tau_exponent,
)
from .deballing import validate_recipe
from .render import (
    render_carpet, render_detour, render_orbit, render_strip, render_trapezoids,
)
from .serialize import SCHEMA, dumps, parse_int_list, parse_rational
from .square_flow import DEFAULT_FLOW, WindowExceeded
from .strip_paths import build_family
from .suites import SUITES, conjugacy_samples


class UsageError(Exception):
    pass


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _window(text: str | None, default: list[int]) -> list[int]:
    if not text:
        return default
    vals = parse_int_list(text)
    if not 1 <= len(vals) <= len(default):
        raise UsageError(f"--window takes up to {len(default)} integers")
    return vals + default[len(vals):]


def _suite_kwargs(fn, extra: list[str]) -> dict:
    """``--name value`` pairs typed after the suite's defaults."""
    params = inspect.signature(fn).parameters
    kwargs = {}
    it = iter(extra)
    for flag in it:
        if not flag.startswith("--"):
            raise UsageError(f"unexpected argument {flag!r}")
        name = flag[2:].replace("-", "_")
        if name not in params:
            raise UsageError(f"suite does not take --{flag[2:]}")
        try:
            value = next(it)
        except StopIteration:
            raise UsageError(f"{flag} needs a value") from None
        default = params[name].default
        try:
            if isinstance(default, (tuple, list)):
                kwargs[name] = parse_int_list(value)
            elif isinstance(default, Fraction):
                kwargs[name] = parse_rational(value)
            else:
                kwargs[name] = int(value)
        except ValueError as e:
            raise UsageError(f"bad value for {flag}: {value!r}") from e
    return kwargs


def cmd_verify(args, extra) -> int:
    if args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}")
    fn = SUITES[args.suite]
    kwargs = _suite_kwargs(fn, extra)
    start = time.perf_counter()
    report = fn(**kwargs)
    # wall time stays off stdout so reports are byte-identical across runs
    print(f"{args.suite}: {time.perf_counter() - start:.3f} s", file=sys.stderr)
    _emit(dumps(report.summary()), args.out)
    return 0 if report.passed else 1


def cmd_orbit(args, extra) -> int:
    z = Point(parse_rational(args.x), parse_rational(args.y))
    g = as_group(parse_int_list(args.g))
    if args.map == "pi":
        if not (0 <= z.x <= 1 and 0 <= z.y <= 1):
            raise UsageError("the square flow runs on [0, 1]^2")
        step = DEFAULT_FLOW.pi_unit if args.steps >= 0 else DEFAULT_FLOW.pi_unit_inverse
    elif args.map == "tau":
        step = lambda w: tau_apply(g, w)  # noqa: E731
    else:
        step = lambda w: rho_apply(g, w)  # noqa: E731
    trace = [z]
    for _ in range(abs(args.steps)):
        trace.append(step(trace[-1]))
    _emit(dumps({"schema": SCHEMA, "map": args.map, "g": list(g.prefix),
                 "steps": args.steps, "trace": trace}), args.out)
    return 0


def cmd_reduce(args, extra) -> int:
    g = as_group(parse_int_list(args.g))
    n_max, k_max = _window(args.window, [3, 3])
    cells = [{"n": n, "k": k, "exponent": tau_exponent(g, n, k)}
             for n in range(n_max + 1) for k in range(-k_max, k_max + 1)]
    _emit(dumps({"schema": SCHEMA, "g": list(g.prefix), "window": [n_max, k_max],
                 "cells": cells, "squares": {"I+": 1, "I-": 1}}), args.out)
    return 0


def cmd_conjugate(args, extra) -> int:
    g, gp = as_group(parse_int_list(args.g)), as_group(parse_int_list(args.gp))
    h = build_sigma(g, gp, build_family(args.family_depth))
    horizon = max(len(g), len(gp), 1)
    res = conjugacy_check(g, gp, h, conjugacy_samples(args.samples))
    out = {"schema": SCHEMA, "g": list(g.prefix), "gp": list(gp.prefix),
           "s": [h.s(n) for n in range(horizon)],
           "e_hat": e_hat_statistic(g, gp, horizon),
           "samples": args.samples, "passed": res.passed,
           "max_error": max(res.slacks, default=Fraction(0)), "witnesses": res.witnesses}
    if args.x is not None and args.y is not None:
        z = Point(parse_rational(args.x), parse_rational(args.y))
        out["point"] = {"z": z, "sigma": sigma_apply(h, z), "tau_g": tau_apply(g, z)}
    _emit(dumps(out), args.out)
    return 0 if res.passed else 1


def cmd_render(args, extra) -> int:
    t = args.target
    if t == "carpet":
        svg = render_carpet(args.depth if args.depth is not None else 3)
    elif t == "trapezoids":
        a, b = _window(args.window, [4, 6])
        svg = render_trapezoids(a, b)
    elif t == "strip":
        depth = args.depth if args.depth is not None else 40
        svg = render_strip(build_family(depth), disc=args.disc, grid=args.grid)
    elif t == "detour":
        svg, _ = render_detour(args.n)
    else:
        z = Point(parse_rational(args.x or "1/3"), parse_rational(args.y or "0"))
        svg = render_orbit(z, args.steps)
    _emit(svg, args.out)
    return 0


def cmd_recipe(args, extra) -> int:
    n_max, k_max, b_max, a_max = _window(args.window, [1, 1, 1, 0])
    depth = args.depth if args.depth is not None else 1
    recipe = assemble_carpet_recipe(depth, RecipeWindow(n_max, k_max, b_max, a_max))
    report = validate_recipe(recipe)
    _emit(dumps({"schema": SCHEMA, "window": [n_max, k_max, b_max, a_max],
                 "validation": report, "recipe": recipe}), args.out)
    return 0 if report.valid else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--seed", type=int, default=0, help="reserved; changes nothing")
    common.add_argument("--window", help="comma-separated window sizes")
    common.add_argument("--depth", type=int)

    p = argparse.ArgumentParser(prog="carpet-reduction",
                                description="Exact carpet homeomorphism constructions.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("suite", help=", ".join(SUITES))
    v.set_defaults(func=cmd_verify, extra_ok=True)

    o = sub.add_parser("orbit", parents=[common], help="iterate pi, tau(g) or rho(g)")
    o.add_argument("--map", choices=["pi", "tau", "rho"], default="pi")
    o.add_argument("--x", required=True)
    o.add_argument("--y", required=True)
    o.add_argument("--steps", type=int, default=10)
    o.add_argument("--g", default="")
    o.set_defaults(func=cmd_orbit)

    r = sub.add_parser("reduce", parents=[common], help="cell table of rho(g)")
    r.add_argument("--g", default="")
    r.set_defaults(func=cmd_reduce)

    c = sub.add_parser("conjugate", parents=[common], help="check sigma conjugates tau(g') to tau(g)")
    c.add_argument("--g", required=True)
    c.add_argument("--gp", required=True)
    c.add_argument("--samples", type=int, default=100)
    c.add_argument("--family-depth", type=int, default=50)
    c.add_argument("--x")
    c.add_argument("--y")
    c.set_defaults(func=cmd_conjugate)

    d = sub.add_parser("render", parents=[common], help="draw an SVG")
    d.add_argument("target", choices=["carpet", "trapezoids", "strip", "detour", "orbit"])
    d.add_argument("--n", type=int, default=1, help="path index for the detour picture")
    d.add_argument("--x")
    d.add_argument("--y")
    d.add_argument("--steps", type=int, default=30)
    d.add_argument("--disc", action="store_true", help="draw the strip in the half disc")
    d.add_argument("--grid", action="store_true", help="overlay cell boundaries")
    d.set_defaults(func=cmd_render)

    e = sub.add_parser("recipe", parents=[common], help="assemble and validate a recipe")
    e.set_defaults(func=cmd_recipe)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args, extra = parser.parse_known_args(argv)
    if extra and not getattr(args, "extra_ok", False):
        parser.error(f"unrecognized arguments: {' '.join(extra)}")
    try:
        return args.func(args, extra)
    except (UsageError, DomainError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except WindowExceeded as e:
        print(f"error: {e} (needed: {e.needed})", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
