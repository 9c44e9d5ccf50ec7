import random

import sympy

from monodyn.linalg import charpoly, poly_from_roots, rank, root_multiplicity


def test_charpoly_small_cases():
    assert charpoly([[5]]) == [1, -5]
    assert charpoly([[1, 2], [3, 4]]) == [1, -5, -2]
    assert charpoly([[1, 0], [0, 0]]) == [1, -1, 0]


def test_charpoly_matches_sympy():
    rng = random.Random(0)
    lam = sympy.Symbol("lam")
    for _ in range(150):
        n = rng.randint(1, 6)
        a = [[rng.randint(-3, 4) for _ in range(n)] for _ in range(n)]
        expected = [int(c) for c in sympy.Matrix(a).charpoly(lam).all_coeffs()]
        assert charpoly(a) == expected


def test_rank_matches_sympy():
    rng = random.Random(1)
    for _ in range(300):
        r, c = rng.randint(1, 6), rng.randint(1, 6)
        # low-rank products show up often enough to matter
        k = rng.randint(1, 4)
        left = [[rng.randint(-2, 2) for _ in range(k)] for _ in range(r)]
        right = [[rng.randint(-2, 2) for _ in range(c)] for _ in range(k)]
        a = [[sum(left[i][t] * right[t][j] for t in range(k)) for j in range(c)] for i in range(r)]
        assert rank(a) == sympy.Matrix(a).rank()


def test_root_multiplicity():
    p = poly_from_roots({1: 3, 0: 2})
    assert p == [1, -3, 3, -1, 0, 0]
    assert root_multiplicity(p, 1) == 3
    assert root_multiplicity(p, 0) == 2
    assert root_multiplicity([1, -5, -2], 1) == 0
