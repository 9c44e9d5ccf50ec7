import itertools
import math
import random
import sys

import pytest

from monodyn.classify import (
    FAIL,
    INCONCLUSIVE,
    PASS,
    InternalInconsistency,
    Method,
    boolean_graph_verdict,
    charpoly_check,
    classify,
    decide_power,
    power_bound,
    run_screens,
    screen_loop_numbers,
    screen_only_trivial_sccs,
    screen_q1_selfloops,
    screen_q1_within_sccs,
    transient_exponent,
)
from monodyn.graph import DependencyGraph, recurrence_matrix, sccs
from monodyn.matrix import ExpMatrix, mat_pow
from monodyn.system import MonomialSystem, StateSpaceTooLarge, is_fixed_point_system_bruteforce
from oracles import random_matrix, residue_fps

EXAMPLE_G = ExpMatrix(
    [[1, 1, 0, 0, 0], [0, 1, 1, 0, 0], [0, 0, 1, 0, 0], [0, 0, 0, 0, 1], [0, 0, 0, 0, 0]], 3
)
SWAP = ExpMatrix([[0, 1], [1, 0]], 2)


def brute(F):
    return is_fixed_point_system_bruteforce(MonomialSystem(F))


def test_transient_exponent():
    assert transient_exponent(3, 2) == 3
    assert transient_exponent(1, 2) == 0
    assert transient_exponent(1, 3) == 1
    for n in range(1, 12):
        for q in (2, 3, 4, 5, 7, 9):
            t = transient_exponent(n, q)
            assert 2**t >= q**n - 1
            assert t == 0 or 2 ** (t - 1) < q**n - 1


def test_transient_exponent_huge_is_exact():
    # floating log2 loses the distinction at this size
    n, q = 40, 2**40 + 15
    t = transient_exponent(n, q)
    assert 2**t >= q**n - 1 > 2 ** (t - 1)


def test_decide_power_examples():
    assert decide_power(ExpMatrix.identity(4, 5)).verdict
    assert not decide_power(SWAP).verdict
    assert not decide_power(EXAMPLE_G).verdict
    assert decide_power(ExpMatrix.zeros(3, 2)).verdict


def test_decide_power_budget():
    rng = random.Random(0)
    for _ in range(200):
        q = rng.choice([2, 3, 4, 5, 7, 8])
        n = rng.randint(1, 7)
        rep = decide_power(ExpMatrix(random_matrix(rng, n, q), q))
        t = rep.t_used
        assert 2**t >= q**n - 1
        assert rep.op_count <= (2 * n**3 - n**2) * (t + 1) + n**2 == rep.bound_N
        assert t + 1 < n * math.log2(q) + 2
        assert rep.op_count <= power_bound(n, q)


def test_decide_power_matches_bruteforce_random():
    rng = random.Random(1)
    for _ in range(400):
        q = rng.choice([2, 3, 4, 5, 8])
        n = rng.randint(1, 4)
        if q**n > 4096:
            continue
        F = ExpMatrix(random_matrix(rng, n, q, rng.choice([0.3, 0.5, 0.8])), q)
        assert decide_power(F).verdict == brute(F)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_bruteforce_matches_residue_arithmetic(p):
    rng = random.Random(p)
    for _ in range(30):
        n = rng.randint(1, 3)
        rows = random_matrix(rng, n, p)
        assert brute(ExpMatrix(rows, p)) == residue_fps(rows, p)


def test_screen_only_trivial():
    up = ExpMatrix([[0, 1, 2], [0, 0, 1], [0, 0, 0]], 3)
    s = screen_only_trivial_sccs(up)
    assert s.verdict == PASS
    assert s.witness["fixed_point"] == "111"
    assert mat_pow(up, s.witness["nilpotency_index"]).is_zero()
    assert screen_only_trivial_sccs(ExpMatrix([[1, 0], [0, 0]], 2)).verdict == FAIL
    assert screen_only_trivial_sccs(SWAP).verdict == FAIL


def test_screen_loop_numbers():
    assert screen_loop_numbers(SWAP).verdict == FAIL
    # Boolean triangular: self-loops on every cyclic vertex
    tri = ExpMatrix([[1, 0, 0], [1, 1, 0], [0, 1, 1]], 2)
    s = screen_loop_numbers(tri)
    assert s.verdict == PASS and s.implies() is True
    assert decide_power(tri).verdict
    q3 = ExpMatrix([[1, 0], [1, 1]], 3)
    assert screen_loop_numbers(q3).verdict == INCONCLUSIVE


def test_screen_q1_selfloops():
    rng = random.Random(2)
    for q in (3, 4, 5):
        # lower triangular part arbitrary, every component a single vertex
        rows = [[rng.randrange(q) if j < i else 0 for j in range(4)] for i in range(4)]
        for i in range(4):
            rows[i][i] = q - 1
        assert screen_q1_selfloops(ExpMatrix(rows, q)).verdict == PASS
    for n in range(1, 5):
        rows = [[rng.randint(0, 1) for _ in range(n)] for _ in range(n)]
        for i in range(n):
            rows[i][i] = 1
        assert screen_q1_selfloops(ExpMatrix(rows, 2)).verdict == PASS
    tri = ExpMatrix([[2, 0, 0], [1, 2, 0], [2, 1, 2]], 3)
    assert screen_q1_selfloops(tri).verdict == PASS
    weak = ExpMatrix([[1, 0], [1, 2]], 3)
    assert screen_q1_selfloops(weak).verdict == INCONCLUSIVE


@pytest.mark.parametrize("q", [3, 4, 5])
def test_diagonal_q1_is_not_sufficient_for_larger_components(q):
    # nonzero states just swap, so diagonal q-1 alone cannot certify
    F = ExpMatrix([[q - 1, 1], [1, q - 1]], q)
    assert not brute(F)
    assert not decide_power(F).verdict
    assert screen_q1_selfloops(F).verdict == INCONCLUSIVE


def test_screen_q1_within_sccs():
    # lift a Boolean fixed point system to q = 5
    boolean = [[1, 1, 0], [1, 0, 0], [0, 1, 1]]
    F = ExpMatrix(boolean, 2)
    assert decide_power(F).verdict
    lifted = ExpMatrix([[4 if v else 0 for v in r] for r in boolean], 5)
    assert screen_q1_within_sccs(lifted).verdict == PASS
    assert decide_power(lifted).verdict
    assert screen_q1_within_sccs(F).verdict == PASS
    assert screen_q1_within_sccs(ExpMatrix([[1, 1], [1, 0]], 3)).verdict == INCONCLUSIVE


def test_boolean_lifting_preserves_fps():
    rng = random.Random(3)
    for _ in range(300):
        n = rng.randint(1, 4)
        rows = [[rng.randint(0, 1) for _ in range(n)] for _ in range(n)]
        if not decide_power(ExpMatrix(rows, 2)).verdict:
            continue
        for q in (3, 4, 5, 7):
            assert decide_power(ExpMatrix([[q - 1 if v else 0 for v in r] for r in rows], q)).verdict


def test_edge_addition_keeps_fps():
    """Adding x_i to f_j keeps a Boolean FPS an FPS unless i reaches j through trivial components only."""
    rng = random.Random(4)
    tried = 0
    while tried < 300:
        n = rng.randint(1, 5)
        rows = [[rng.randint(0, 1) for _ in range(n)] for _ in range(n)]
        F = ExpMatrix(rows, 2)
        if not decide_power(F).verdict:
            continue
        g = DependencyGraph(rows)
        part = sccs(g)
        i, j = rng.randrange(n), rng.randrange(n)
        reach = [[False] * n for _ in range(n)]
        for a in range(n):
            stack, seen = [a], set()
            while stack:
                u = stack.pop()
                for w in g.successors(u):
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            for b in seen:
                reach[a][b] = True
        guaranteed = (not reach[i][j]) or (not part.trivial[part.component_of[i]]) \
            or (not part.trivial[part.component_of[j]])
        if not guaranteed:
            continue
        tried += 1
        new = [list(r) for r in rows]
        new[j][i] = 1  # g_j = x_i f_j over F_2, exponents saturate at 1
        assert decide_power(ExpMatrix(new, 2)).verdict


def test_charpoly_examples():
    ident = charpoly_check(ExpMatrix.identity(3, 2))
    assert ident.coefficients == [1, -3, 3, -1]
    assert ident.geo1 == 3 and ident.sufficient

    g = charpoly_check(EXAMPLE_G)
    assert g.coefficients == [1, -3, 3, -1, 0, 0]  # (l-1)^3 l^2
    assert g.form_ok and g.mult1 == 3 and g.mult0 == 2
    assert g.geo1 == 1 < 3
    assert not g.sufficient

    d = ExpMatrix([[1, 0], [0, 0]], 3)
    rep = charpoly_check(d)
    assert rep.coefficients == [1, -1, 0] and rep.sufficient
    for m in range(1, 6):
        assert mat_pow(d, m) == d


def test_charpoly_sufficiency_means_idempotent():
    rng = random.Random(5)
    hits = 0
    for _ in range(3000):
        q = rng.choice([2, 3, 4, 5])
        n = rng.randint(1, 4)
        F = ExpMatrix(random_matrix(rng, n, q, 0.3), q)
        if charpoly_check(F).sufficient:
            hits += 1
            a = F.to_array()
            assert (a @ a == a).all()
            assert decide_power(F).verdict
    assert hits > 20


def test_screens_consistent_with_decider():
    rng = random.Random(6)
    for _ in range(600):
        q = rng.choice([2, 3, 4, 5, 8])
        n = rng.randint(1, 5)
        rows = random_matrix(rng, n, q, rng.choice([0.2, 0.4, 0.7]))
        if rng.random() < 0.3:
            for i in range(n):
                rows[i][i] = q - 1
        F = ExpMatrix(rows, q)
        verdict = decide_power(F).verdict
        for s in run_screens(F):
            implied = s.implies()
            assert implied is None or implied == verdict, (s, rows, q)


def test_boolean_graph_requires_q2():
    with pytest.raises(ValueError):
        boolean_graph_verdict(EXAMPLE_G)
    assert not boolean_graph_verdict(SWAP)


def test_classify_methods():
    rep = classify(SWAP, Method.ALL)
    assert rep.verdict is False
    assert rep.verdicts["power"] is False
    assert rep.verdicts["boolean-graph"] is False
    assert rep.verdicts["brute"] is False

    rep = classify(EXAMPLE_G, "all")
    assert rep.verdict is False
    charpoly = next(s for s in rep.screens if s.name == "charpoly")
    assert charpoly.verdict == INCONCLUSIVE

    for method in Method:
        if method is Method.BOOLEAN_GRAPH:
            continue
        assert classify(ExpMatrix.identity(3, 3), method).verdict is True
    assert classify(ExpMatrix.identity(3, 2), Method.BOOLEAN_GRAPH).verdict is True

    rep = classify(MonomialSystem(SWAP), Method.SCREENS)
    assert rep.verdict is False and rep.decided_by == "loop-numbers"
    rep = classify(EXAMPLE_G, Method.SCREENS)
    assert rep.verdict is False and rep.decided_by.startswith("power-decider")


def test_classify_brute_cap():
    F = ExpMatrix.identity(21, 2)
    with pytest.raises(StateSpaceTooLarge):
        classify(F, Method.BRUTE)
    # method all skips the brute-force oracle beyond the cap
    rep = classify(F, Method.ALL)
    assert rep.verdict and "brute" not in rep.verdicts


def test_classify_all_detects_inconsistency(monkeypatch):
    c = sys.modules["monodyn.classify"]
    monkeypatch.setattr(c, "is_fixed_point_system_bruteforce", lambda f, cap=None: False)
    with pytest.raises(InternalInconsistency):
        classify(ExpMatrix.identity(2, 2), Method.ALL)


def test_exhaustive_q2_n2():
    for entries in itertools.product((0, 1), repeat=4):
        F = ExpMatrix([entries[:2], entries[2:]], 2)
        assert classify(F, Method.ALL).verdict == brute(F)


def test_recurrent_vertices_in_triangular_have_full_loops():
    tri = ExpMatrix([[4, 0, 0], [1, 4, 0], [3, 2, 4]], 5)
    r = recurrence_matrix(DependencyGraph.of(tri))
    assert all(any(row) for row in r)
    assert screen_q1_selfloops(tri).verdict == PASS
