"""Deciding whether a monomial system is a fixed point system.

The decision procedure is ``decide_power``: every trajectory has at most
q^n - 1 transient states, so f is a fixed point system iff f^(2^t) equals
f^(2^t + 1) once 2^t >= q^n - 1.  The screens are graph-theoretic shortcuts
(some sufficient, some necessary) that are cross-checked against it.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from enum import Enum

from . import graph as dg
from . import linalg
from .matrix import ExpMatrix, OpCounter, mat_mul, matrices_equal, product_op_count
from .system import MonomialSystem, is_fixed_point_system_bruteforce, state_cap

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"
SUFFICIENT, NECESSARY = "sufficient", "necessary"


class InternalInconsistency(AssertionError):
    """Two classification methods disagreed."""


class Method(str, Enum):
    POWER = "power"
    BOOLEAN_GRAPH = "boolean-graph"
    SCREENS = "screens"
    BRUTE = "brute"
    ALL = "all"


@dataclass
class ScreenResult:
    name: str
    kind: str  # SUFFICIENT or NECESSARY
    verdict: str
    reason: str
    witness: dict | None = None

    def implies(self) -> bool | None:
        """The fixed-point verdict this result forces, if any."""
        if self.kind == SUFFICIENT and self.verdict == PASS:
            return True
        if self.kind == NECESSARY and self.verdict == FAIL:
            return False
        return None


@dataclass
class CharpolyReport:
    coefficients: list[int]
    mult0: int
    mult1: int
    geo0: int
    geo1: int
    form_ok: bool
    sufficient: bool


@dataclass
class ClassificationReport:
    verdict: bool
    decided_by: str
    t_used: int | None = None
    op_count: int | None = None
    bound_N: int | None = None
    log_bound: float | None = None
    screens: list[ScreenResult] = field(default_factory=list)
    verdicts: dict[str, bool] = field(default_factory=dict)
    charpoly: CharpolyReport | None = None

    def to_dict(self) -> dict:
        return asdict(self)


def transient_exponent(n: int, q: int) -> int:
    """Smallest t with 2**t >= q**n - 1 (exact integer arithmetic)."""
    target = q**n - 1
    return max(0, (target - 1).bit_length())


def power_bound(n: int, q: int) -> float:
    """Upper bound N(n, q) = (2n^3 - n^2)(n log2 q + 2) + n^2 on decider operations."""
    return (2 * n**3 - n**2) * (n * math.log2(q) + 2) + n**2


def decide_power(F: ExpMatrix) -> ClassificationReport:
    n, q = F.n, F.q
    t = transient_exponent(n, q)
    counter = OpCounter()
    a = F
    for _ in range(t):
        a = mat_mul(a, a, counter)
    b = mat_mul(F, a, counter)
    verdict = matrices_equal(a, b, counter)
    return ClassificationReport(
        verdict=verdict,
        decided_by="power-decider",
        t_used=t,
        op_count=counter.ops + counter.comparisons,
        bound_N=product_op_count(n) * (t + 1) + n**2,
        log_bound=power_bound(n, q),
        verdicts={"power": verdict},
    )


def _partition(F: ExpMatrix):
    g = dg.graph_of(F)
    return g, dg.sccs(g)


def nilpotency_index(F: ExpMatrix) -> int | None:
    """Smallest m <= n with F^m = 0 in the monoid, or None."""
    p = F
    for m in range(1, F.n + 1):
        if p.is_zero():
            return m
        p = mat_mul(p, F)
    return None


def screen_only_trivial_sccs(F: ExpMatrix) -> ScreenResult:
    name = "only-trivial-sccs"
    g, part = _partition(F)
    if part.coupled:
        cid = part.nontrivial[0]
        return ScreenResult(name, SUFFICIENT, FAIL, "dependency graph has a nontrivial component",
                            {"component": list(part.components[cid])})
    return ScreenResult(
        name, SUFFICIENT, PASS,
        "all components trivial: unique fixed point is the all-ones state",
        {"fixed_point": "1" * F.n, "nilpotency_index": nilpotency_index(F)},
    )


def screen_loop_numbers(F: ExpMatrix) -> ScreenResult:
    name = "loop-numbers"
    g, part = _partition(F)
    if not part.coupled:
        return ScreenResult(name, NECESSARY, INCONCLUSIVE, "skipped: system is not coupled")
    for cid in part.nontrivial:
        if part.loop_number[cid] != 1:
            return ScreenResult(
                name, NECESSARY, FAIL,
                f"component has loop number {part.loop_number[cid]}",
                {"component": list(part.components[cid]), "loop_number": part.loop_number[cid]},
            )
    if F.q == 2:
        # for Boolean systems the condition is also sufficient
        return ScreenResult(name, SUFFICIENT, PASS, "q = 2 and every nontrivial component has loop number 1")
    return ScreenResult(name, NECESSARY, INCONCLUSIVE, "every nontrivial component has loop number 1")


def screen_q1_selfloops(F: ExpMatrix) -> ScreenResult:
    name = "q-1-self-loops"
    g, part = _partition(F)
    if not part.coupled:
        return ScreenResult(name, SUFFICIENT, INCONCLUSIVE, "skipped: system is not coupled")
    for v in dg.recurrent_vertices(g, part):
        if F[v, v] != F.q - 1:
            return ScreenResult(name, SUFFICIENT, INCONCLUSIVE,
                                f"recurrent vertex x{v + 1} has {F[v, v]} self-loops, not q-1 = {F.q - 1}",
                                {"vertex": v})
    # q-1 self-loops alone do not settle a multi-vertex component once q > 2:
    # over F_3, (x1^2 x2, x1 x2^2) swaps (1, 2) and (2, 1).  Walks that avoid
    # the loops keep counts that are not multiples of q-1.
    if F.q > 2:
        for cid in part.nontrivial:
            if len(part.components[cid]) > 1:
                return ScreenResult(name, SUFFICIENT, INCONCLUSIVE,
                                    "self-loops are q-1 but a component has several vertices",
                                    {"component": list(part.components[cid])})
    return ScreenResult(name, SUFFICIENT, PASS, "every recurrent vertex carries q-1 self-loops")


def screen_q1_within_sccs(F: ExpMatrix) -> ScreenResult:
    name = "q-1-within-sccs"
    g, part = _partition(F)
    if not part.coupled:
        return ScreenResult(name, SUFFICIENT, INCONCLUSIVE, "skipped: system is not coupled")
    for cid in part.nontrivial:
        if part.loop_number[cid] != 1:
            return ScreenResult(name, SUFFICIENT, INCONCLUSIVE,
                                f"component has loop number {part.loop_number[cid]}",
                                {"component": list(part.components[cid])})
        members = part.components[cid]
        for u in members:
            for v in members:
                if F[u, v] not in (0, F.q - 1):
                    return ScreenResult(name, SUFFICIENT, INCONCLUSIVE,
                                        f"edge x{u + 1} -> x{v + 1} has multiplicity {F[u, v]}",
                                        {"edge": [u, v]})
    return ScreenResult(name, SUFFICIENT, PASS,
                        "loop number 1 and every intra-component multiplicity is 0 or q-1")


def charpoly_check(F: ExpMatrix) -> CharpolyReport:
    """Sufficient test: F diagonalizable over the reals with eigenvalues in {0, 1}.

    Such an F is idempotent as an integer matrix, so f^m = f for all m.
    """
    n = F.n
    rows = [list(r) for r in F.rows]
    coeffs = linalg.charpoly(rows)
    mult0 = linalg.root_multiplicity(coeffs, 0)
    mult1 = linalg.root_multiplicity(coeffs, 1)
    geo0 = n - linalg.rank(rows)
    geo1 = n - linalg.rank([[v - (1 if i == j else 0) for j, v in enumerate(r)] for i, r in enumerate(rows)])
    form_ok = mult0 + mult1 == n
    sufficient = form_ok and geo0 == mult0 and geo1 == mult1
    return CharpolyReport(coeffs, mult0, mult1, geo0, geo1, form_ok, sufficient)


def screen_charpoly(F: ExpMatrix, report: CharpolyReport | None = None) -> ScreenResult:
    rep = report or charpoly_check(F)
    info = {"coefficients": rep.coefficients, "mult0": rep.mult0, "mult1": rep.mult1,
            "geo0": rep.geo0, "geo1": rep.geo1}
    if rep.sufficient:
        return ScreenResult("charpoly", SUFFICIENT, PASS,
                            "F is diagonalizable with eigenvalues in {0, 1}", info)
    if not rep.form_ok:
        reason = "characteristic polynomial has roots other than 0 and 1"
    else:
        reason = "eigenvalue multiplicities: geometric differs from algebraic"
    return ScreenResult("charpoly", SUFFICIENT, INCONCLUSIVE, reason, info)


def run_screens(F: ExpMatrix, charpoly: CharpolyReport | None = None) -> list[ScreenResult]:
    return [
        screen_only_trivial_sccs(F),
        screen_loop_numbers(F),
        screen_q1_selfloops(F),
        screen_q1_within_sccs(F),
        screen_charpoly(F, charpoly),
    ]


def boolean_graph_verdict(F: ExpMatrix) -> bool:
    """For q = 2: fixed point system iff every nontrivial component has loop number 1."""
    if F.q != 2:
        raise ValueError(f"boolean-graph method needs q = 2, got q = {F.q}")
    _, part = _partition(F)
    return all(part.loop_number[c] == 1 for c in part.nontrivial)


def _screens_verdict(screens: list[ScreenResult]) -> tuple[bool | None, str | None]:
    for s in screens:
        v = s.implies()
        if v is not None:
            return v, s.name
    return None, None


def classify(F: ExpMatrix | MonomialSystem, method: Method | str = Method.POWER,
             cap: int | None = None) -> ClassificationReport:
    """Run the requested method(s); ``all`` cross-checks every applicable one."""
    F = getattr(F, "matrix", F)
    method = Method(method)
    cap = state_cap() if cap is None else cap

    if method is Method.POWER:
        return decide_power(F)

    if method is Method.BOOLEAN_GRAPH:
        v = boolean_graph_verdict(F)
        return ClassificationReport(v, "boolean-graph", verdicts={"boolean-graph": v})

    if method is Method.BRUTE:
        v = is_fixed_point_system_bruteforce(MonomialSystem(F), cap)
        return ClassificationReport(v, "brute", verdicts={"brute": v})

    cp = charpoly_check(F)
    screens = run_screens(F, cp)
    if method is Method.SCREENS:
        v, by = _screens_verdict(screens)
        if v is None:
            rep = decide_power(F)
            rep.decided_by = "power-decider (no screen decisive)"
        else:
            rep = ClassificationReport(v, by, verdicts={"screens": v})
        rep.screens = screens
        rep.charpoly = cp
        return rep

    rep = decide_power(F)
    rep.screens = screens
    rep.charpoly = cp
    verdicts = {"power": rep.verdict}
    if F.q == 2:
        verdicts["boolean-graph"] = boolean_graph_verdict(F)
    if F.q**F.n <= cap:
        verdicts["brute"] = is_fixed_point_system_bruteforce(MonomialSystem(F), cap)
    for s in screens:
        implied = s.implies()
        if implied is not None:
            verdicts[f"screen:{s.name}"] = implied
    rep.verdicts = verdicts
    if len(set(verdicts.values())) != 1:
        raise InternalInconsistency(f"methods disagree: {verdicts}")
    return rep
