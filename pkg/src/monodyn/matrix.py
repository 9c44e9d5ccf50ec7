"""Square matrices over E_q, over E_q extended by BOTTOM, and over the naturals.

``ExpMatrix`` under ``mat_mul`` is the matrix monoid that mirrors composition
of monomial systems.  ``CountMatrix`` holds exact walk counts; ``mred_q`` maps
it homomorphically onto ``ExpMatrix``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .semiring import (
    BOTTOM,
    ContextMismatch,
    ExpElem,
    FieldSize,
    field_size,
    int_ext_add,
    int_ext_mul,
    red_q,
)


@dataclass
class OpCounter:
    """Tally of semiring operations (additions + multiplications) and comparisons."""

    ops: int = 0
    comparisons: int = 0
    assignments: int = 0

    @property
    def total(self) -> int:
        return self.ops + self.comparisons + self.assignments


def product_op_count(n: int) -> int:
    """Additions plus multiplications in one n x n product: n^2 (2n - 1)."""
    return 2 * n**3 - n**2


def _as_grid(rows: Iterable[Iterable]) -> tuple[tuple, ...]:
    grid = tuple(tuple(r) for r in rows)
    n = len(grid)
    if n == 0:
        raise ValueError("matrix must have at least one row")
    for r in grid:
        if len(r) != n:
            raise ValueError(f"matrix is not square: row of length {len(r)} in {n}x{n}")
    return grid


class ExpMatrix:
    """An n x n matrix with entries in E_q, stored as reduced ints."""

    __slots__ = ("rows", "n", "field", "_hash")

    def __init__(self, rows: Iterable[Iterable[int]], q: int | FieldSize):
        self.field = field_size(q)
        grid = _as_grid(tuple(int(v) for v in r) for r in rows)
        top = self.field.q - 1
        for i, r in enumerate(grid):
            for j, v in enumerate(r):
                if not 0 <= v <= top:
                    raise ValueError(f"entry ({i},{j}) = {v} outside [0, {top}]")
        self.rows = grid
        self.n = len(grid)
        self._hash = None

    @property
    def q(self) -> int:
        return self.field.q

    @classmethod
    def identity(cls, n: int, q: int | FieldSize) -> ExpMatrix:
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], q)

    @classmethod
    def zeros(cls, n: int, q: int | FieldSize) -> ExpMatrix:
        return cls([[0] * n for _ in range(n)], q)

    @classmethod
    def from_array(cls, arr, q: int | FieldSize) -> ExpMatrix:
        return cls(np.asarray(arr).tolist(), q)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.rows[i][j]

    def elem(self, i: int, j: int) -> ExpElem:
        return ExpElem(self.rows[i][j], self.field)

    def to_array(self) -> np.ndarray:
        return np.array(self.rows, dtype=np.int64)

    def to_counts(self) -> CountMatrix:
        return CountMatrix(self.rows)

    def is_zero(self) -> bool:
        return all(v == 0 for r in self.rows for v in r)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExpMatrix):
            return NotImplemented
        return self.field == other.field and self.rows == other.rows

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.field.q, self.rows))
        return self._hash

    def __matmul__(self, other: ExpMatrix) -> ExpMatrix:
        return mat_mul(self, other)

    def __pow__(self, m: int) -> ExpMatrix:
        return mat_pow(self, m)

    def __repr__(self) -> str:
        return f"ExpMatrix({[list(r) for r in self.rows]}, q={self.q})"


class CountMatrix:
    """An n x n matrix of exact nonnegative integers (walk counts)."""

    __slots__ = ("rows", "n")

    def __init__(self, rows: Iterable[Iterable[int]]):
        grid = _as_grid(tuple(int(v) for v in r) for r in rows)
        if any(v < 0 for r in grid for v in r):
            raise ValueError("count matrices hold nonnegative integers")
        self.rows = grid
        self.n = len(grid)

    @classmethod
    def identity(cls, n: int) -> CountMatrix:
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other) -> bool:
        if not isinstance(other, CountMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"CountMatrix({[list(r) for r in self.rows]})"


class ExtExpMatrix:
    """An n x n matrix over E_q extended by BOTTOM."""

    __slots__ = ("rows", "n", "field")

    def __init__(self, rows: Iterable[Iterable], q: int | FieldSize):
        self.field = field_size(q)
        top = self.field.q - 1
        grid = []
        for i, r in enumerate(_as_grid(rows)):
            out = []
            for j, v in enumerate(r):
                if v is BOTTOM:
                    out.append(BOTTOM)
                    continue
                v = int(v)
                if not 0 <= v <= top:
                    raise ValueError(f"entry ({i},{j}) = {v} outside [0, {top}]")
                out.append(v)
            grid.append(tuple(out))
        self.rows = tuple(grid)
        self.n = len(grid)

    @property
    def q(self) -> int:
        return self.field.q

    @classmethod
    def from_exp(cls, m: ExpMatrix) -> ExtExpMatrix:
        return cls(m.rows, m.field)

    def __getitem__(self, ij: tuple[int, int]):
        i, j = ij
        return self.rows[i][j]

    def row_is_bottom(self, i: int) -> bool:
        return all(v is BOTTOM for v in self.rows[i])

    def row_has_bottom(self, i: int) -> bool:
        return any(v is BOTTOM for v in self.rows[i])

    def bottom_rows(self) -> list[int]:
        return [i for i in range(self.n) if self.row_is_bottom(i)]

    def has_bottom(self) -> bool:
        return any(self.row_has_bottom(i) for i in range(self.n))

    def to_exp(self) -> ExpMatrix:
        if self.has_bottom():
            raise ValueError("matrix contains BOTTOM entries")
        return ExpMatrix(self.rows, self.field)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExtExpMatrix):
            return NotImplemented
        return self.field == other.field and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.field.q, self.rows))

    def __repr__(self) -> str:
        cells = [["B" if v is BOTTOM else v for v in r] for r in self.rows]
        return f"ExtExpMatrix({cells}, q={self.q})"


def _check_pair(a, b) -> None:
    if a.n != b.n:
        raise ContextMismatch(f"dimension mismatch: {a.n} vs {b.n}")
    if getattr(a, "field", None) != getattr(b, "field", None):
        raise ContextMismatch(f"field mismatch: q={a.field.q} vs q={b.field.q}")


def _int_dot(a: np.ndarray, b: np.ndarray, n: int, q: int) -> np.ndarray:
    # int64 is exact while n (q-1)^2 fits; otherwise fall back to Python ints
    if n * (q - 1) ** 2 < 2**62:
        return a @ b
    return a.astype(object) @ b.astype(object)


def _reduce_array(c: np.ndarray, q: int) -> np.ndarray:
    if c.dtype == object:
        return np.vectorize(lambda v: red_q(int(v), q), otypes=[object])(c)
    return np.where(c == 0, 0, (c - 1) % (q - 1) + 1)


def mat_mul(a: ExpMatrix, b: ExpMatrix, counter: OpCounter | None = None) -> ExpMatrix:
    """Monoid product: entry (i, j) is red_q of the integer dot product.

    Reducing the dot product once agrees with folding the semiring operations
    term by term (see ``mat_mul_semiring``).  ``counter`` is charged with the
    semiring operations that the term-by-term fold performs.
    """
    _check_pair(a, b)
    n, q = a.n, a.q
    c = _reduce_array(_int_dot(a.to_array(), b.to_array(), n, q), q)
    if counter is not None:
        counter.ops += product_op_count(n)
    return ExpMatrix(c.tolist(), a.field)


def mat_mul_semiring(a: ExpMatrix, b: ExpMatrix, counter: OpCounter | None = None) -> ExpMatrix:
    """Literal product: fold ``(+)`` over the ``(*)`` terms of each entry."""
    _check_pair(a, b)
    n, q = a.n, a.q
    ops = 0
    out = []
    for i in range(n):
        row_a = a.rows[i]
        row = []
        for j in range(n):
            acc = red_q(row_a[0] * b.rows[0][j], q)
            ops += 1
            for l in range(1, n):
                acc = red_q(acc + red_q(row_a[l] * b.rows[l][j], q), q)
                ops += 2
            row.append(acc)
        out.append(row)
    if counter is not None:
        counter.ops += ops
    return ExpMatrix(out, a.field)


def mat_pow(a: ExpMatrix, m: int, counter: OpCounter | None = None) -> ExpMatrix:
    """``a`` multiplied with itself m times, by binary exponentiation; m = 0 gives I."""
    if m < 0:
        raise ValueError("exponent must be nonnegative")
    result = None
    base = a
    while m:
        if m & 1:
            result = base if result is None else mat_mul(result, base, counter)
        m >>= 1
        if m:
            base = mat_mul(base, base, counter)
    return ExpMatrix.identity(a.n, a.field) if result is None else result


def mred_q(a: CountMatrix, q: int | FieldSize) -> ExpMatrix:
    """Apply red_q to every entry."""
    fs = field_size(q)
    return ExpMatrix([[red_q(v, fs.q) for v in r] for r in a.rows], fs)


def count_mul(a: CountMatrix, b: CountMatrix) -> CountMatrix:
    if a.n != b.n:
        raise ContextMismatch(f"dimension mismatch: {a.n} vs {b.n}")
    cols = list(zip(*b.rows))
    return CountMatrix([[sum(x * y for x, y in zip(r, c)) for c in cols] for r in a.rows])


def count_pow(a: CountMatrix, m: int) -> CountMatrix:
    if m < 0:
        raise ValueError("exponent must be nonnegative")
    result = CountMatrix.identity(a.n)
    base = a
    while m:
        if m & 1:
            result = count_mul(result, base)
        m >>= 1
        if m:
            base = count_mul(base, base)
    return result


def ext_mat_mul(
    a: ExtExpMatrix,
    b: ExtExpMatrix,
    counter: OpCounter | None = None,
    skip_bottom_rows: bool = False,
) -> ExtExpMatrix:
    """Product over E_q extended by BOTTOM, folding ext_add over ext_mul terms.

    With ``skip_bottom_rows`` all-BOTTOM rows of ``a`` are copied instead of
    recomputed, and a row whose first product entry is BOTTOM is filled with
    BOTTOM.  Both shortcuts are valid only when every row of ``a`` and ``b`` is
    either all-BOTTOM or BOTTOM-free, which holds for powers of a well-formed
    extended system.
    """
    _check_pair(a, b)
    n, q = a.n, a.q
    ops = 0
    out = []
    for i in range(n):
        row_a = a.rows[i]
        if skip_bottom_rows and all(v is BOTTOM for v in row_a):
            out.append((BOTTOM,) * n)
            continue
        row = []
        for j in range(n):
            acc = int_ext_mul(row_a[0], b.rows[0][j], q)
            ops += 1
            for l in range(1, n):
                acc = int_ext_add(acc, int_ext_mul(row_a[l], b.rows[l][j], q), q)
                ops += 2
            row.append(acc)
            if skip_bottom_rows and j == 0 and acc is BOTTOM:
                row.extend([BOTTOM] * (n - 1))
                break
        out.append(tuple(row))
    if counter is not None:
        counter.ops += ops
    return ExtExpMatrix(out, a.field)


def matrices_equal(a: ExpMatrix, b: ExpMatrix, counter: OpCounter | None = None) -> bool:
    """Entrywise comparison stopping at the first difference."""
    _check_pair(a, b)
    for ra, rb in zip(a.rows, b.rows):
        for x, y in zip(ra, rb):
            if counter is not None:
                counter.comparisons += 1
            if x != y:
                return False
    return True


def format_matrix(rows: Sequence[Sequence]) -> str:
    return "\n".join(" ".join("B" if v is BOTTOM else str(v) for v in r) for r in rows)
