"""Eliminating identically-zero components before classification.

A component written as the zero function is an all-BOTTOM row of an
extended exponent matrix.  Squaring over E_q extended by BOTTOM spreads zero
components to everything that eventually depends on them; once the set of
BOTTOM rows stops growing those coordinates are constantly 0 after finitely
many steps and can be dropped.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .matrix import ExpMatrix, ExtExpMatrix, OpCounter, ext_mat_mul
from .semiring import BOTTOM, FieldSize


class MalformedSystem(ValueError):
    pass


class ExtendedSystem:
    """Monomial system whose components may be the zero function."""

    __slots__ = ("matrix",)

    def __init__(self, matrix: ExtExpMatrix):
        for i in range(matrix.n):
            if matrix.row_has_bottom(i) and not matrix.row_is_bottom(i):
                raise MalformedSystem(f"row {i + 1} mixes zero-function markers with exponents")
        self.matrix = matrix

    @classmethod
    def from_rows(cls, rows, q: int | FieldSize) -> ExtendedSystem:
        """``rows`` holds exponent lists, or None for a zero component."""
        n = len(rows)
        return cls(ExtExpMatrix([[BOTTOM] * n if r is None else r for r in rows], q))

    @property
    def n(self) -> int:
        return self.matrix.n

    @property
    def q(self) -> int:
        return self.matrix.q

    @property
    def field(self) -> FieldSize:
        return self.matrix.field

    def zero_components(self) -> list[int]:
        return self.matrix.bottom_rows()

    def zero_rows(self) -> np.ndarray:
        mask = np.zeros(self.n, dtype=bool)
        mask[self.zero_components()] = True
        return mask

    def exponent_array(self) -> np.ndarray:
        return np.array([[0 if v is BOTTOM else v for v in r] for r in self.matrix.rows], dtype=np.int64)

    def __repr__(self) -> str:
        rows = [None if self.matrix.row_is_bottom(i) else list(r) for i, r in enumerate(self.matrix.rows)]
        return f"ExtendedSystem({rows}, q={self.q})"


@dataclass
class ReductionResult:
    """Outcome of zero-component elimination.

    ``reduced`` is None exactly when every coordinate was eliminated, in which
    case the system is a fixed point system whose unique fixed point is the
    origin.  Otherwise it is the original exponent matrix restricted to
    ``kept``.
    """

    n: int
    q: int
    kept: list[int]
    reduced: ExpMatrix | None
    rounds: int
    op_count: int

    @property
    def empty(self) -> bool:
        return not self.kept

    @property
    def eliminated(self) -> list[int]:
        kept = set(self.kept)
        return [i for i in range(self.n) if i not in kept]


def reduction_bound(n: int) -> int:
    """Worst-case operation count B(n) = 2n^4 - 3n^3 + 6n^2 + 4n + 1."""
    return 2 * n**4 - 3 * n**3 + 6 * n**2 + 4 * n + 1


def reduce(system: ExtendedSystem, fast: bool = False) -> ReductionResult:
    """Square until the zero-row count is stable, then drop the zero rows.

    Marking follows the first column: a row is zero once its first entry is
    BOTTOM.  ``fast`` skips recomputing rows that are already zero; the result
    is identical.
    """
    F = system.matrix
    original = F
    n, q = F.n, F.q
    counter = OpCounter()

    marked = [False] * n
    prev_count = 0  # L1
    counter.assignments += n + 2
    rounds = 0
    while True:
        count = 0  # L2
        for k in range(n):
            counter.comparisons += 1
            if F.rows[k][0] is BOTTOM:
                assert F.row_is_bottom(k), f"row {k + 1} has BOTTOM only in its first column"
                count += 1
                counter.ops += 1
                if not marked[k]:
                    marked[k] = True
                    counter.assignments += 1
            else:
                assert not marked[k], f"zero row {k + 1} came back to life"
        counter.comparisons += 2
        if count == prev_count or count == n:
            break
        F = ext_mat_mul(F, F, counter, skip_bottom_rows=fast)
        prev_count = count
        counter.assignments += 1
        rounds += 1

    kept = [k for k in range(n) if not marked[k]]
    counter.comparisons += n
    if kept:
        rows = [[original.rows[i][j] for j in kept] for i in kept]
        counter.assignments += len(kept) ** 2
        reduced = ExpMatrix(rows, original.field)
    else:
        reduced = None
    return ReductionResult(n, q, kept, reduced, rounds, counter.total)
