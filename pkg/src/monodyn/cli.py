"""Command-line front end.

States are printed as digit strings x1..xn in base q: digit 0 is the field
zero and digit d >= 1 is g**(d-1) for a fixed generator g of the
multiplicative group, so 1 is the field element one.

Exit status: 0 on success, 2 on parse or validation errors, 3 when
``--method all`` finds disagreeing methods, 4 when the phase space exceeds
the state cap (MONODYN_STATE_CAP, default 2**20).
"""

from __future__ import annotations

import argparse
import json
import sys

from .classify import InternalInconsistency, Method, classify
from .io import (
    ParseError,
    classification_json,
    dependency_dot,
    phase_dot,
    phase_json,
    read_system,
    reduce_json,
    serialize_system,
)
from .reduction import ExtendedSystem, reduce
from .system import (
    MonomialSystem,
    StateSpaceTooLarge,
    is_fixed_point_system_bruteforce,
    phase_space,
    state_cap,
)

EXIT_OK, EXIT_PARSE, EXIT_INCONSISTENT, EXIT_CAP = 0, 2, 3, 4

STATE_HELP = (
    "States are digit strings x1..xn: 0 is the field zero, d >= 1 is g^(d-1) "
    "for a fixed generator g (so 1 is the field one)."
)


class UsageError(ValueError):
    pass


def _emit(obj: dict) -> None:
    print(json.dumps(obj, indent=2, ensure_ascii=False))


def cmd_classify(args) -> int:
    system = read_system(args.path)
    method = Method(args.method)
    if method is Method.BOOLEAN_GRAPH and system.q != 2:
        raise UsageError(f"--method boolean-graph needs q = 2, file has q = {system.q}")
    cap = state_cap()
    reduction = None
    target = system
    if isinstance(system, ExtendedSystem):
        reduction = reduce(system)
        target = None if reduction.empty else MonomialSystem(reduction.reduced)

    report = None
    fixed_points = None
    if target is not None:
        report = classify(target.matrix, method, cap)
        if method is Method.BRUTE:
            fixed_points = len(phase_space(target, cap).fixed_points)
    if method is Method.ALL and isinstance(system, ExtendedSystem) and system.q**system.n <= cap:
        # literal evaluation of the original, zero components included
        original = is_fixed_point_system_bruteforce(system, cap)
        verdict = True if report is None else report.verdict
        if report is not None:
            report.verdicts["brute-original"] = original
        if original != verdict:
            raise InternalInconsistency(f"reduction changed the verdict: original {original}, reduced {verdict}")

    out = classification_json(system.q, system.n, method.value, report, reduction, fixed_points)
    if args.json:
        _emit(out)
        return EXIT_OK
    print(f"fixed-point-system: {str(out['fixed-point-system']).lower()}")
    print(f"decided-by: {out['decided_by']}")
    if reduction is not None:
        kept = " ".join(str(k + 1) for k in reduction.kept) or "-"
        print(f"reduction: kept {kept}, rounds {reduction.rounds}")
        if reduction.empty:
            print("EMPTY: fixed point system, unique fixed point = origin")
    if out["power"]:
        p = out["power"]
        print(f"t: {p['t_used']}  ops: {p['op_count']} <= {p['op_bound']}")
    for name, v in out["verdicts"].items():
        print(f"  {name}: {str(v).lower()}")
    for s in out["screens"]:
        print(f"  screen {s['name']} ({s['kind']}): {s['verdict']} - {s['reason']}")
    if fixed_points is not None:
        print(f"fixed points: {fixed_points}")
    return EXIT_OK


def cmd_phase(args) -> int:
    system = read_system(args.path)
    ps = phase_space(system, state_cap())
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(phase_dot(ps))
    out = phase_json(ps)
    if args.json:
        _emit(out)
        return EXIT_OK
    hist = {int(k): v for k, v in out["cycle_histogram"].items() if int(k) > 1}
    cycles = " ".join(f"{c}×{length}" for length, c in hist.items()) or "none"
    print(f"cycles: {cycles} fixed:{len(out['fixed_points'])} transient:{out['transient']}")
    print("fixed points: " + " ".join(out["fixed_points"]))
    for c in out["cycles"]:
        print(f"cycle length {c['length']} through {c['representative']}")
    return EXIT_OK


def cmd_graph(args) -> int:
    dot = dependency_dot(read_system(args.path))
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(dot)
    else:
        sys.stdout.write(dot)
    return EXIT_OK


def cmd_reduce(args) -> int:
    system = read_system(args.path)
    if not isinstance(system, ExtendedSystem):
        system = ExtendedSystem.from_rows([list(r) for r in system.matrix.rows], system.q)
    res = reduce(system)
    if args.json:
        _emit(reduce_json(system.q, system.n, res))
        return EXIT_OK
    print(f"# kept: {' '.join(str(k + 1) for k in res.kept) or '-'}")
    print(f"# rounds={res.rounds}")
    if res.empty:
        print("EMPTY: fixed point system, unique fixed point = origin")
    else:
        sys.stdout.write(serialize_system(res.reduced))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="monodyn",
        description="Fixed point analysis of monomial dynamical systems over F_q.",
        epilog=STATE_HELP,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="decide whether the system is a fixed point system", epilog=STATE_HELP)
    p.add_argument("path")
    p.add_argument("--method", choices=[m.value for m in Method], default=Method.POWER.value)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("phase", help="enumerate the phase space and its cycles", epilog=STATE_HELP)
    p.add_argument("path")
    p.add_argument("--dot", metavar="OUT", help="write the functional graph as DOT")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_phase)

    p = sub.add_parser("graph", help="export the dependency graph as DOT")
    p.add_argument("path")
    p.add_argument("--dot", metavar="OUT", help="output file (default: stdout)")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("reduce", help="eliminate zero components")
    p.add_argument("path")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_reduce)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, UsageError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except InternalInconsistency as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except StateSpaceTooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
