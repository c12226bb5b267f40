"""Command line entry point: ``realknot <command> ...``.

Every command prints one JSON object with a fixed set of keys (``schema: 1``).
Exit status is 0 on success, 1 when the input is mathematically unsuitable
(not a knot, inadmissible degree/writhe, parse errors) and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from ..classify import MAX_CLASSIFIED_DEGREE, UNCLASSIFIED, ClassificationError, lookup
from ..config import DEFAULT
from ..curve import QUADRIC_MONOMIALS, RatCurve, double_points, infinity_points, is_knot, is_planar, quadric_containment
from ..algebra.roots import ComplexParam
from ..construct import PerturbationError, catalog, catalog_names, perturb
from ..construct.glue import GlueError, GlueSpec, glue, meeting_point
from ..construct.kdw import KdwError, admissible, kdw
from ..writhe import GenericityError, crossing_bound, encomplexed_writhe
from .io import write_atomic
from .parser import CurveSyntaxError, parse_curve, serialize
from .render import SEARCH, RenderError, render_svg

SCHEMA = 1
SEED_VARIABLE = "REALKNOT_SEED"

DOMAIN_ERRORS = (
    ClassificationError,
    CurveSyntaxError,
    GenericityError,
    GlueError,
    KdwError,
    PerturbationError,
    RenderError,
    ArithmeticError,
    LookupError,
    OSError,
    ValueError,
)


class UsageError(Exception):
    pass


# -- report ------------------------------------------------------------------

def _param(u: ComplexParam):
    if u.infinite:
        return "inf"
    return [float(u.value.real), float(u.value.imag)]


def _point(image) -> list:
    return [[float(complex(x).real), float(complex(x).imag)] for x in image]


def report(C: RatCurve, seed: int) -> dict:
    """The common JSON body for one curve."""
    verdict = is_knot(C, DEFAULT)
    nodes = [] if verdict else double_points(C.coords, DEFAULT, seed)
    bound = crossing_bound(C.degree)
    writhe = parity = None
    cls = None
    if verdict:
        w = encomplexed_writhe(C, seed, DEFAULT)
        writhe, parity = w.writhe, (w.writhe - bound) % 2 == 0
        cls = lookup(C.degree, writhe).name if C.degree <= MAX_CLASSIFIED_DEGREE else UNCLASSIFIED
    q = quadric_containment(C)
    inf = infinity_points(C, DEFAULT) if not C.coords[0].is_zero() else None
    return {
        "schema": SCHEMA,
        "degree": C.degree,
        "embedded": bool(verdict),
        "double_points": [
            {"kind": n.kind.value, "params": [_param(u) for u in n.params], "image": _point(n.image), "tangential": n.tangential}
            for n in nodes
        ],
        "writhe": writhe,
        "bound": bound,
        "parity": parity,
        "class": cls,
        "quadric": None if q is None else {
            "monomials": [f"x{i}*x{j}" for i, j in QUADRIC_MONOMIALS],
            "coefficients": [str(c) for c in q],
        },
        "infinity": None if inf is None else {
            "real_count": inf.real_count,
            "points": [{"param": _param(u), "multiplicity": u.multiplicity} for u in inf.points],
        },
        "planar": is_planar(C)[0],
        "seed": seed,
    }


# -- commands ----------------------------------------------------------------

def _read(path: str) -> RatCurve:
    return parse_curve(Path(path).read_text(encoding="utf-8"))


def _curve_or_catalog(name: str) -> RatCurve:
    if name in catalog_names(include_aliases=True):
        return catalog(name).curve
    if Path(name).exists():
        return _read(name)
    raise ValueError(f"{name!r} is neither a catalog entry nor a curve file")


def cmd_analyze(args) -> dict:
    return report(_read(args.file), args.seed)


def cmd_writhe(args) -> dict:
    C = _read(args.file)
    out = report(C, args.seed)
    if not out["embedded"]:
        raise ClassificationError("not a knot: the encomplexed writhe is undefined")
    w = encomplexed_writhe(C, args.seed, DEFAULT)
    out["projection_seed"] = w.projection_seed
    out["crossings"] = [{"kind": c.kind.value, "sign": c.sign} for c in w.crossings]
    return out


def cmd_classify(args) -> dict:
    C = _read(args.file)
    out = report(C, args.seed)
    if not out["embedded"]:
        raise ClassificationError("not a knot")
    return out


def _point_arg(text: str) -> tuple[Fraction, ...]:
    try:
        p = tuple(Fraction(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"bad point {text!r}: expected four comma-separated rationals") from None
    if len(p) != 4 or not any(p):
        raise UsageError(f"bad point {text!r}: expected four comma-separated rationals, not all zero")
    return p


def cmd_glue(args) -> dict:
    A, B = _curve_or_catalog(args.a), _curve_or_catalog(args.b)
    p = _point_arg(args.point) if args.point else meeting_point(A, B, DEFAULT)
    C = glue(GlueSpec(A, B, p, Fraction(args.scale) if args.scale else None), DEFAULT, args.seed)
    write_atomic(args.output, serialize(C, f"glued, degree {C.degree}"))
    return {**report(C, args.seed), "output": args.output}


def cmd_kdw(args) -> dict:
    if not admissible(args.d, args.w):
        raise KdwError(f"no knot of degree {args.d} has writhe {args.w}")
    C = kdw(args.d, args.w, args.seed, DEFAULT)
    write_atomic(args.output, serialize(C, f"kdw({args.d}, {args.w})"))
    return {**report(C, args.seed), "output": args.output}


def cmd_catalog(args) -> dict:
    if args.name is None:
        return {"schema": SCHEMA, "names": catalog_names()}
    entry = catalog(args.name)
    text = serialize(entry.curve, entry.name)
    out = report(entry.curve, args.seed)
    out.update(name=entry.name, stratum=entry.stratum.value, adjacent_writhes=list(entry.adjacent_writhes))
    if args.output:
        write_atomic(args.output, text)
        out["output"] = args.output
    else:
        out["curve"] = text
    return out


def cmd_perturb(args) -> dict:
    C = perturb(_curve_or_catalog(args.name), args.node, args.dir)
    write_atomic(args.output, serialize(C, f"{args.name} node {args.node} dir {args.dir:+d}"))
    return {**report(C, args.seed), "output": args.output}


def cmd_render(args) -> dict:
    C = _read(args.file)
    search = 0 if args.no_search else SEARCH
    _, stats = render_svg(C, args.seed, args.output, DEFAULT, args.allow_singular, search=search)
    return {**report(C, args.seed), "output": args.output, "scene": stats.as_dict()}


# -- argument parsing ----------------------------------------------------------

def _direction(text: str) -> int:
    if text not in ("1", "+1", "-1"):
        raise argparse.ArgumentTypeError("direction must be +1 or -1")
    return int(text)


def _default_seed() -> int:
    raw = os.environ.get(SEED_VARIABLE)
    if raw is None or raw == "":
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{SEED_VARIABLE} must be an integer, got {raw!r}") from None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser(default_seed: int = 0) -> argparse.ArgumentParser:
    top = _Parser(prog="realknot", description="Rational real algebraic knots in RP^3.")
    sub = top.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--seed", type=int, default=default_seed, help=f"projection seed (default from {SEED_VARIABLE}, else 0)")
        p.set_defaults(func=func)
        return p

    add("analyze", cmd_analyze, "full invariant report of a curve file").add_argument("file")
    add("writhe", cmd_writhe, "encomplexed writhe with its crossings").add_argument("file")
    add("classify", cmd_classify, "rigid isotopy class (degree <= 5)").add_argument("file")

    p = add("glue", cmd_glue, "glue two knots meeting in one real point")
    p.add_argument("a", help="curve file or catalog name")
    p.add_argument("b", help="curve file or catalog name")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--point", help="meeting point x0,x1,x2,x3 (default: computed)")
    p.add_argument("--scale", help="fixed gluing scale (default: doubling search)")

    p = add("kdw", cmd_kdw, "a knot of given degree and writhe")
    p.add_argument("-d", type=int, required=True)
    p.add_argument("-w", type=int, required=True)
    p.add_argument("-o", "--output", required=True)

    p = add("catalog", cmd_catalog, "normal forms of knots, walls and edges")
    p.add_argument("name", nargs="?", help="entry name; omit to list all")
    p.add_argument("-o", "--output")

    p = add("perturb", cmd_perturb, "resolve one node of a wall or edge")
    p.add_argument("name", help="catalog name or curve file")
    p.add_argument("--node", type=int, required=True)
    p.add_argument("--dir", type=_direction, required=True)
    p.add_argument("-o", "--output", required=True)

    p = add("render", cmd_render, "SVG diagram in the disk model")
    p.add_argument("file")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--allow-singular", action="store_true", help="draw walls with node markers")
    p.add_argument("--no-search", action="store_true", help="use the seed as given instead of the minimal-crossing search")
    return top


def run_command(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser(_default_seed()).parse_args(argv)
        if args.command == "kdw" and args.d < 1:
            raise UsageError("realknot kdw: degree must be positive")
        out = args.func(args)
    except UsageError as e:
        print(e, file=stderr)
        return 2
    except DOMAIN_ERRORS as e:
        # KeyError's str() adds quotes around the message
        print(f"error: {e.args[0] if isinstance(e, KeyError) and e.args else e}", file=stderr)
        return 1
    json.dump(out, stdout, indent=2)
    stdout.write("\n")
    return 0


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
