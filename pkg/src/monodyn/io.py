"""System files, JSON reports and DOT export.

System file grammar::

    # comment
    q 3 n 2
    1 2
    zero

The header comes first; then exactly n rows, each either n exponents in
[0, q-1] or the word ``zero`` for a component that is the zero function.
"""

from __future__ import annotations

from typing import Union

from .classify import ClassificationReport
from .graph import DependencyGraph, sccs
from .matrix import ExpMatrix
from .reduction import ExtendedSystem, ReductionResult
from .semiring import BOTTOM, prime_power_decomposition
from .system import MonomialSystem, PhaseSpace, index_digits, render_digits

SCHEMA_VERSION = 1

System = Union[MonomialSystem, ExtendedSystem]


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _parse_int(tok: str, lineno: int, what: str) -> int:
    try:
        return int(tok, 10)
    except ValueError:
        raise ParseError(f"{what} must be an integer, got {tok!r}", lineno) from None


def parse_system(text: str) -> System:
    header = None
    rows: list[list[int] | None] = []
    last_line = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        last_line = lineno
        toks = raw.split("#", 1)[0].split()
        if not toks:
            continue
        if toks[0] == "q":
            if header is not None:
                raise ParseError("duplicate header", lineno)
            if len(toks) != 4 or toks[2] != "n":
                raise ParseError("header must read 'q <int> n <int>'", lineno)
            q = _parse_int(toks[1], lineno, "q")
            n = _parse_int(toks[3], lineno, "n")
            if prime_power_decomposition(q) is None:
                raise ParseError(f"q = {q} is not a prime power", lineno)
            if n < 1:
                raise ParseError(f"n must be at least 1, got {n}", lineno)
            header = (q, n)
            continue
        if header is None:
            raise ParseError("expected header 'q <int> n <int>' first", lineno)
        q, n = header
        if len(rows) == n:
            raise ParseError(f"more than n = {n} rows", lineno)
        if toks == ["zero"]:
            rows.append(None)
            continue
        if len(toks) != n:
            raise ParseError(f"row has {len(toks)} entries, expected {n}", lineno)
        row = []
        for tok in toks:
            v = _parse_int(tok, lineno, "exponent")
            if not 0 <= v <= q - 1:
                raise ParseError(f"exponent {v} outside [0, {q - 1}]", lineno)
            row.append(v)
        rows.append(row)
    if header is None:
        raise ParseError("missing header 'q <int> n <int>'")
    q, n = header
    if len(rows) != n:
        raise ParseError(f"expected {n} rows, found {len(rows)}", last_line)
    if any(r is None for r in rows):
        return ExtendedSystem.from_rows(rows, q)
    return MonomialSystem.from_rows(rows, q)


def serialize_system(system: System | ExpMatrix) -> str:
    m = getattr(system, "matrix", system)
    lines = [f"q {m.q} n {m.n}"]
    for r in m.rows:
        if r and r[0] is BOTTOM:
            lines.append("zero")
        else:
            lines.append(" ".join(str(v) for v in r))
    return "\n".join(lines) + "\n"


def read_system(path: str) -> System:
    with open(path, encoding="utf-8") as fh:
        return parse_system(fh.read())


# JSON rendering. Key order is part of the schema.

def _screen_json(s) -> dict:
    return {"name": s.name, "kind": s.kind, "verdict": s.verdict, "reason": s.reason, "witness": s.witness}


def reduction_json(res: ReductionResult) -> dict:
    return {
        "kept": [k + 1 for k in res.kept],
        "eliminated": [k + 1 for k in res.eliminated],
        "rounds": res.rounds,
        "op_count": res.op_count,
        "empty": res.empty,
        "reduced": None if res.reduced is None else [list(r) for r in res.reduced.rows],
        "unique_fixed_point": render_digits((0,) * res.n, res.q) if res.empty else None,
    }


def classification_json(q: int, n: int, method: str, report: ClassificationReport | None,
                        reduction: ReductionResult | None = None, fixed_points: int | None = None) -> dict:
    out = {
        "schema": SCHEMA_VERSION,
        "kind": "classification",
        "q": q,
        "n": n,
        "method": method,
        "fixed-point-system": True if report is None else report.verdict,
        "decided_by": "reduction" if report is None else report.decided_by,
        "reduction": None if reduction is None else reduction_json(reduction),
        "power": None,
        "verdicts": {} if report is None else dict(report.verdicts),
        "screens": [] if report is None else [_screen_json(s) for s in report.screens],
        "charpoly": None,
        "fixed_points": fixed_points,
    }
    if report is not None and report.t_used is not None:
        out["power"] = {
            "t_used": report.t_used,
            "op_count": report.op_count,
            "op_bound": report.bound_N,
            "log_bound": report.log_bound,
        }
    if report is not None and report.charpoly is not None:
        cp = report.charpoly
        out["charpoly"] = {
            "coefficients": cp.coefficients,
            "mult0": cp.mult0,
            "mult1": cp.mult1,
            "geo0": cp.geo0,
            "geo1": cp.geo1,
            "form_ok": cp.form_ok,
            "sufficient": cp.sufficient,
        }
    return out


def phase_json(ps: PhaseSpace) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "kind": "phase-space",
        "q": ps.q,
        "n": ps.n,
        "states": ps.size,
        "cycle_histogram": {str(k): v for k, v in ps.cycle_histogram().items()},
        "fixed_points": [render_digits(ps.digits(i), ps.q) for i in ps.fixed_points],
        "cycles": [
            {"length": length, "representative": render_digits(ps.digits(rep), ps.q)}
            for length, rep in ps.cycles if length > 1
        ],
        "transient": ps.transient_count,
        "fixed-point-system": ps.is_fixed_point_system(),
    }


def reduce_json(q: int, n: int, res: ReductionResult) -> dict:
    return {"schema": SCHEMA_VERSION, "kind": "reduction", "q": q, "n": n, **reduction_json(res)}


# DOT

def _mult_label(k: int) -> str:
    return f' [label="×{k}"]' if k > 1 else ""


def dependency_dot(system: System) -> str:
    m = system.matrix
    n = m.n
    zero = set(system.zero_components()) if isinstance(system, ExtendedSystem) else set()
    adj = [[0 if v is BOTTOM else v for v in r] for r in m.rows]
    part = sccs(DependencyGraph(adj))
    lines = ["digraph dependency {"]
    for cid, comp in enumerate(part.components):
        lines.append(f"  subgraph cluster_{cid} {{")
        lines.append(f'    label="ℒ={part.loop_number[cid]}";')
        for v in comp:
            extra = ", shape=box" if v in zero else ""
            lines.append(f'    x{v + 1} [label="x{v + 1}"{extra}];')
        lines.append("  }")
    for i in range(n):
        for j in range(n):
            if adj[i][j] > 0:
                lines.append(f"  x{i + 1} -> x{j + 1}{_mult_label(adj[i][j])};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def phase_dot(ps: PhaseSpace) -> str:
    lines = ["digraph phase_space {"]
    for i, j in enumerate(ps.successor.tolist()):
        a = render_digits(index_digits(i, ps.n, ps.q), ps.q)
        b = render_digits(index_digits(j, ps.n, ps.q), ps.q)
        lines.append(f'  "{a}" -> "{b}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
