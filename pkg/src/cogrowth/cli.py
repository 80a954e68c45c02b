"""Command-line interface: cogrowth count|minpoly|radius|verify|grammar.

Exit codes: 0 success, 1 verification failure, 2 usage/parse/domain error,
3 capacity exceeded.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from .algebra.poly import BivariatePoly
from .analytic import cyclic_radius
from .composer import annihilates, compose_spec, cyclic_equation
from .errors import (
    AmbiguityError, CapacityError, CogrowthError, DomainError, InconsistencyError, PreconditionError,
)
from .grammar import build_system, export_system
from .groups import FreeProductSpec, cyclic_family, spec_from_json, spec_to_json, z2_free, z2_zn
from .oracle import DEFAULT_N_CAP, DEFAULT_STATE_CAP, CogrowthSequence, cogrowth_sequence
from .solver import minimal_polynomial
from .verify import CHECK_ORDER, FIXTURE_SETS, RADIUS_TERMS, run_fixture_set, spec_radius

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_CAPACITY = 3

DEFAULT_COUNT_TERMS = 20
NO_MINIMAL_NOTICE = "no factor of the annihilator was recovered within the degree bounds; showing the annihilator only"


class UsageError(Exception):
    pass


def threads() -> int:
    """COGROWTH_THREADS, validated.  Every pipeline runs on one thread, so any value >= 1 is honoured."""
    raw = os.environ.get("COGROWTH_THREADS")
    if raw is None:
        return 1
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"COGROWTH_THREADS must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise UsageError(f"COGROWTH_THREADS must be a positive integer, got {raw!r}")
    return n


# -- spec sources ------------------------------------------------------------------

def load_spec_file(path: str) -> FreeProductSpec:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise UsageError(f"{path}:{e.lineno}:{e.colno}: invalid JSON: {e.msg}") from None
    return spec_from_json(obj)


def resolve_spec(args) -> FreeProductSpec:
    if args.spec:
        return load_spec_file(args.spec)
    if args.cyclic:
        return cyclic_family(*args.cyclic)
    if args.z2zn is not None:
        return z2_zn(args.z2zn, symmetric=args.symmetric)
    if args.z2_free:
        return z2_free(*args.z2_free)
    raise UsageError("give a group with --spec FILE, --cyclic D M, --z2zn N or --z2-free M S")


def _add_source(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group()
    g.add_argument("--spec", metavar="FILE", help="JSON free product spec")
    g.add_argument("--cyclic", nargs=2, type=int, metavar=("D", "M"), help="(Z/D)^{*M} with one generator per copy")
    g.add_argument("--z2zn", type=int, metavar="N", help="Z/2 * Z/N with S = {x, y}")
    g.add_argument("--z2-free", nargs=2, type=int, metavar=("M", "S"), help="(Z/2)^{*M} * Z^{*S}")
    p.add_argument("--symmetric", action="store_true", help="with --z2zn, also include y^-1")


def _add_common(p: argparse.ArgumentParser, formats=("text", "json")) -> None:
    p.add_argument("-N", "--order", type=int, default=None, help="number of terms / verification order")
    p.add_argument("--format", default="text", help=f"output format ({' | '.join(formats)})")
    p.add_argument("--state-cap", type=int, default=DEFAULT_STATE_CAP, help="maximum live states in the walk counter")
    p.add_argument("--term-cap", type=int, default=DEFAULT_N_CAP, help="maximum order for the walk counter")
    p.set_defaults(formats=formats)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cogrowth", description="Cogrowth series of free products of finite groups and Z.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="cogrowth sequence a_0..a_N")
    _add_source(p)
    _add_common(p, ("text", "json", "bfile"))
    p.add_argument("--offset", type=int, default=0, help="index shift for b-file output")

    p = sub.add_parser("minpoly", help="annihilating and minimal polynomial")
    _add_source(p)
    _add_common(p)

    p = sub.add_parser("radius", help="radius of convergence")
    _add_source(p)
    _add_common(p)

    p = sub.add_parser("verify", help="run a named fixture set")
    p.add_argument("fixture_set", help=f"one of {', '.join(FIXTURE_SETS)}")
    p.add_argument("--format", default="text", help="output format (text | json)")
    p.set_defaults(formats=("text", "json"))

    p = sub.add_parser("grammar", help="export the equation system")
    _add_source(p)
    p.add_argument("--format", default="text", help="output format (text | json)")
    p.add_argument("--symmetry", action="store_true", help="identify symmetric unknowns")
    p.add_argument("--shortcut", action="store_true", help="eliminate powers of single-letter factors")
    p.set_defaults(formats=("text", "json"))
    return ap


# -- JSON payloads ---------------------------------------------------------------

def sequence_to_json(seq: CogrowthSequence, offset: int = 0) -> dict:
    return {"spec": spec_to_json(seq.spec), "offset": offset, "terms": [str(a) for a in seq.values]}


def sequence_from_json(obj: dict) -> CogrowthSequence:
    return CogrowthSequence(spec_from_json(obj["spec"]), tuple(int(a) for a in obj["terms"]))


def render_bfile(values, offset: int = 0) -> str:
    return "".join(f"{n + offset} {a}\n" for n, a in enumerate(values))


# -- commands --------------------------------------------------------------------

def cmd_count(args, out) -> int:
    spec = resolve_spec(args)
    N = DEFAULT_COUNT_TERMS if args.order is None else args.order
    seq = cogrowth_sequence(spec, N, state_cap=args.state_cap, n_cap=args.term_cap)
    if args.format == "bfile":
        out.write(render_bfile(seq.values, args.offset))
    elif args.format == "json":
        out.write(json.dumps(sequence_to_json(seq, args.offset)) + "\n")
    else:
        out.write(", ".join(map(str, seq.values)) + "\n")
    return EXIT_OK


def cmd_minpoly(args, out) -> int:
    spec = resolve_spec(args)
    N = CHECK_ORDER if args.order is None else args.order
    res = compose_spec(spec, N)
    series = cogrowth_sequence(spec, N, state_cap=args.state_cap, n_cap=args.term_cap).as_series()
    try:
        mp = minimal_polynomial(res.Lambda, series)
        minimal, notice = mp.minimal, None
    except InconsistencyError as e:
        if "divide" in str(e):
            raise
        minimal, notice = None, NO_MINIMAL_NOTICE
    payload = {
        "spec": spec_to_json(spec),
        "annihilator": res.Lambda.to_json(),
        "degree_bound": res.bound,
        "verified_order": N,
        "minimal": None if minimal is None else minimal.to_json(),
        "notice": notice,
    }
    if args.format == "json":
        out.write(json.dumps(payload) + "\n")
        return EXIT_OK
    L = res.Lambda
    out.write(f"annihilator (deg_t {L.deg_t()}, deg_z {L.deg_z()}, bound {res.bound}):\n  {L}\n")
    if minimal is None:
        out.write(f"notice: {notice}\n")
    else:
        ok = annihilates(minimal, series, N)
        out.write(f"minimal (deg_t {minimal.deg_t()}, deg_z {minimal.deg_z()}):\n  {minimal}\n")
        out.write(f"divides annihilator: yes; vanishes on the series through t^{N}: {'yes' if ok else 'no'}\n")
    return EXIT_OK


def cmd_radius(args, out) -> int:
    spec = resolve_spec(args)
    N = RADIUS_TERMS if args.order is None else args.order
    rep = spec_radius(spec, N)
    closed = cyclic_radius(*args.cyclic) if args.cyclic and args.cyclic[0] >= 2 and args.cyclic[1] >= 2 else None
    if args.format == "json":
        obj = {"spec": spec_to_json(spec), "report": rep.to_json()}
        if closed is not None:
            obj["closed_form"] = {"expression": closed.expression, "value": closed.value}
        out.write(json.dumps(obj) + "\n")
        return EXIT_OK
    if rep.selected is None:
        out.write("radius: undetermined\n")
    else:
        out.write(f"radius: {rep.rho:.12f}\n")
        out.write(f"  interval [{float(rep.selected.lo):.15g}, {float(rep.selected.hi):.15g}]\n")
        out.write(f"  1/radius: {1 / rep.rho:.12f}\n")
    out.write(f"  method: {rep.method}\n")
    if rep.estimate is not None:
        out.write(f"  growth estimate from coefficients: {rep.estimate:.6f}\n")
    for c in rep.candidates:
        out.write(f"  candidate {float(c.interval):.12f}  ({', '.join(c.sources)})\n")
    if closed is not None:
        out.write(f"  closed form: {closed.expression} = {closed.value:.12f}\n")
    for note in rep.notes:
        out.write(f"  note: {note}\n")
    return EXIT_OK


def cmd_verify(args, out) -> int:
    if args.fixture_set not in FIXTURE_SETS:
        raise UsageError(f"unknown fixture set {args.fixture_set!r}; choose from {', '.join(FIXTURE_SETS)}")
    rep = run_fixture_set(args.fixture_set)
    if args.format == "json":
        out.write(json.dumps(rep.to_json()) + "\n")
    else:
        out.write(rep.render() + "\n")
    return EXIT_OK if rep.passed else EXIT_FAILED


def cmd_grammar(args, out) -> int:
    spec = resolve_spec(args)
    out.write(export_system(build_system(spec, symmetry=args.symmetry, shortcut=args.shortcut), args.format))
    return EXIT_OK


COMMANDS = {
    "count": cmd_count,
    "minpoly": cmd_minpoly,
    "radius": cmd_radius,
    "verify": cmd_verify,
    "grammar": cmd_grammar,
}


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        threads()
        if args.format not in args.formats:
            raise UsageError(f"{args.command} does not support --format {args.format}; use {' | '.join(args.formats)}")
        if getattr(args, "order", None) is not None and args.order < 0:
            raise UsageError("-N must be non-negative")
        return COMMANDS[args.command](args, out)
    except UsageError as e:
        print(f"cogrowth: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except CapacityError as e:
        print(f"cogrowth: capacity exceeded: {e}", file=sys.stderr)
        return EXIT_CAPACITY
    except (DomainError, PreconditionError, AmbiguityError) as e:
        print(f"cogrowth: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except InconsistencyError as e:
        print(f"cogrowth: verification failed: {e}", file=sys.stderr)
        return EXIT_FAILED
    except CogrowthError as e:
        print(f"cogrowth: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
