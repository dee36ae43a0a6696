"""Command-line front end.

Exit status 0 means the command ran; the mathematical verdict is in the
JSON payload under ``"verdict"``.  Usage errors exit with 2, unreadable or
malformed input with 3.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from . import serialization as ser

EXIT_OK, EXIT_USAGE, EXIT_INPUT = 0, 2, 3


class InputError(Exception):
    pass


def _read(path: str):
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    return ser.loads(text, "$" if path == "-" else path)


def _write(doc: dict, args) -> None:
    text = ser.dumps(doc)
    out = getattr(args, "output", None) or "-"
    if out == "-":
        sys.stdout.write(text)
        return
    try:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise InputError(f"cannot write {out}: {exc.strerror}") from exc


def _config(args) -> dict:
    skip = {"func", "output"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _emit(payload: dict, args) -> int:
    doc = dict(payload)
    doc["monolcs_version"] = __version__
    doc["config"] = _config(args)
    _write(doc, args)
    return EXIT_OK


# -- lcs ------------------------------------------------------------------------------


def cmd_lcs_solve(args) -> int:
    from .lcs import classical_solve

    L = ser.pick(_read(args.input), "lcs", ser.lcs_from_json)
    return _emit(classical_solve(L).to_json(), args)


def cmd_lcs_verify(args) -> int:
    from .lcs import verify_quantum

    doc = _read(args.input)
    L = ser.pick(doc, "lcs", ser.lcs_from_json)
    if args.assignment:
        qa = ser.pick(_read(args.assignment), "assignment", ser.assignment_from_json)
    else:
        if not (isinstance(doc, dict) and "assignment" in doc):
            raise ser.SchemaError("$", "assignment", "no --assignment given and the input bundle has none")
        qa = ser.assignment_from_json(doc["assignment"], "$.assignment")
    try:
        report = verify_quantum(L, qa)
    except ValueError as exc:
        raise ser.SchemaError("$", "assignment", str(exc)) from exc
    return _emit(report.to_json(), args)


# -- mbqc -----------------------------------------------------------------------------


def _spec(args):
    return ser.pick(_read(args.input), "mbqc", ser.mbqc_from_json)


def cmd_mbqc_simulate(args) -> int:
    from .mbqc import evaluate_output

    table = evaluate_output(_spec(args))
    out = table.to_json()
    out["verdict"] = "deterministic"
    return _emit(out, args)


def cmd_mbqc_lcs(args) -> int:
    from .mbqc import associated_lcs, induced_assignment

    spec = _spec(args)
    return _emit(ser.bundle_to_json(lcs=associated_lcs(spec, args.mode),
                                    assignment=induced_assignment(spec, args.mode)), args)


def cmd_mbqc_witness(args) -> int:
    from .mbqc import contextuality_witness

    return _emit(contextuality_witness(_spec(args)).to_json(), args)


# -- builtins -------------------------------------------------------------------------


def cmd_builtin_qudit_star(args) -> int:
    from . import instances

    spec = instances.qudit_star_mbqc(args.p)
    lcs = instances.qudit_star_lcs(args.p)
    total = lcs.b[-1]
    claimed = (args.p - 1) % args.p
    extra = {"output_sum": {"computed": total, "closed_form_claim": claimed, "agrees": total == claimed}}
    return _emit(ser.bundle_to_json(spec, lcs, instances.qudit_star_assignment(args.p), extra), args)


def cmd_builtin_mermin_star(args) -> int:
    from . import instances

    L, qa = instances.mermin_star()
    return _emit(ser.bundle_to_json(instances.mermin_star_mbqc(), L, qa), args)


def cmd_builtin_mp_square(args) -> int:
    from . import instances

    L, qa = instances.mermin_peres_square()
    return _emit(ser.bundle_to_json(None, L, qa), args)


# -- homs -----------------------------------------------------------------------------


def cmd_homs_audit(args) -> int:
    from .homs import homomorphism_audit

    report = homomorphism_audit(
        args.map, args.p, args.phase_exp,
        exhaustive=args.exhaustive, samples=args.samples, seed=args.seed,
        predicate=args.predicate, threads=args.threads,
    )
    return _emit(report.to_json(), args)


def cmd_homs_census(args) -> int:
    from .homs import subgroup_census

    return _emit(subgroup_census(args.p).to_json(), args)


# -- parser ---------------------------------------------------------------------------


def _prime(text: str) -> int:
    from .zpfield import is_prime

    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer")
    if not is_prime(v):
        raise argparse.ArgumentTypeError(f"{v} is not prime")
    return v


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    from .homs import MAP_NAMES, PREDICATES

    ap = argparse.ArgumentParser(prog="monolcs", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"monolcs {__version__}")
    top = ap.add_subparsers(dest="group", required=True)

    def leaf(sub, name, func, help_, input_=True):
        p = sub.add_parser(name, help=help_)
        if input_:
            p.add_argument("input", help="JSON file, or - for stdin")
        p.add_argument("--output", "-o", default="-", help="output path (default stdout)")
        p.set_defaults(func=func)
        return p

    g = top.add_parser("lcs", help="linear constraint systems").add_subparsers(dest="cmd", required=True)
    leaf(g, "solve", cmd_lcs_solve, "classical solution or infeasibility certificate")
    v = leaf(g, "verify", cmd_lcs_verify, "check a quantum assignment")
    v.add_argument("--assignment", help="assignment JSON (default: the input bundle's)")

    g = top.add_parser("mbqc", help="measurement-based computations").add_subparsers(dest="cmd", required=True)
    leaf(g, "simulate", cmd_mbqc_simulate, "output table")
    m = leaf(g, "lcs", cmd_mbqc_lcs, "associated LCS and induced assignment")
    m.add_argument("--mode", choices=("merged", "raw"), default="merged")
    leaf(g, "witness", cmd_mbqc_witness, "degree of the output function")

    g = top.add_parser("builtins", help="builtin instances").add_subparsers(dest="cmd", required=True)
    q = leaf(g, "qudit-star", cmd_builtin_qudit_star, "qudit star at odd prime p", input_=False)
    q.add_argument("--p", type=_prime, required=True)
    leaf(g, "mermin-star", cmd_builtin_mermin_star, "Mermin star", input_=False)
    leaf(g, "mp-square", cmd_builtin_mp_square, "magic square", input_=False)

    g = top.add_parser("homs", help="structure maps").add_subparsers(dest="cmd", required=True)
    a = leaf(g, "audit", cmd_homs_audit, "homomorphism audit", input_=False)
    a.add_argument("--map", choices=MAP_NAMES, required=True)
    a.add_argument("--p", type=_prime, required=True)
    a.add_argument("--phase-exp", type=_positive, default=1)
    mode = a.add_mutually_exclusive_group()
    mode.add_argument("--exhaustive", action="store_true")
    mode.add_argument("--samples", type=_positive, default=100_000)
    a.add_argument("--seed", type=int, default=0)
    a.add_argument("--predicate", choices=sorted(PREDICATES), default=None)
    a.add_argument("--threads", type=_positive, default=1)
    c = leaf(g, "census", cmd_homs_census, "cyclic subgroups of order p in S_p", input_=False)
    c.add_argument("--p", type=_prime, required=True)
    return ap


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if getattr(args, "exhaustive", False):
        args.samples = None
    try:
        return args.func(args)
    except (InputError, ser.SchemaError) as exc:
        print(f"monolcs: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        # domain errors from well-formed input (e.g. a resource that is not an eigenstate)
        print(f"monolcs: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())
