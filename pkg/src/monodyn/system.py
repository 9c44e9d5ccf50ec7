"""Monomial dynamical systems F_q^n -> F_q^n and their phase spaces.

Field elements are held by discrete logarithm: either zero, or g**k for a
fixed generator g of the multiplicative group.  Monomials only ever multiply
field elements, so this is enough to evaluate systems over any prime power q
without building field tables.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .matrix import ExpMatrix, mat_mul, mat_pow
from .semiring import ContextMismatch, FieldSize, field_size

DEFAULT_STATE_CAP = 2**20
STATE_CAP_ENV = "MONODYN_STATE_CAP"

_CHUNK = 1 << 16


class StateSpaceTooLarge(RuntimeError):
    def __init__(self, q: int, n: int, cap: int):
        self.q, self.n, self.cap = q, n, cap
        super().__init__(f"phase space has q^n = {q}^{n} = {q**n} states, above the cap of {cap}")


def state_cap() -> int:
    """Phase-space size limit, overridable through MONODYN_STATE_CAP."""
    raw = os.environ.get(STATE_CAP_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_STATE_CAP
    return int(raw)


@dataclass(frozen=True)
class FieldElement:
    """Zero (``log is None``) or the unit g**log with 0 <= log <= q-2."""

    log: int | None = None

    @classmethod
    def unit(cls, k: int) -> FieldElement:
        return cls(k)

    @property
    def is_zero(self) -> bool:
        return self.log is None

    @property
    def digit(self) -> int:
        """0 for zero, 1 + k for g**k."""
        return 0 if self.log is None else self.log + 1

    def __repr__(self) -> str:
        return "Zero" if self.log is None else f"Unit({self.log})"


ZERO = FieldElement(None)
ONE = FieldElement(0)

State = tuple  # tuple[FieldElement, ...] of length n


def state_from_digits(digits: Sequence[int], q: int) -> State:
    out = []
    for d in digits:
        if not 0 <= d < q:
            raise ValueError(f"digit {d} outside [0, {q - 1}]")
        out.append(ZERO if d == 0 else FieldElement(d - 1))
    return tuple(out)


def state_digits(x: State) -> tuple[int, ...]:
    return tuple(e.digit for e in x)


def state_index(x: State, q: int) -> int:
    idx = 0
    for e in x:
        idx = idx * q + e.digit
    return idx


def index_digits(idx: int, n: int, q: int) -> tuple[int, ...]:
    digits = [0] * n
    for j in range(n - 1, -1, -1):
        idx, digits[j] = divmod(idx, q)
    return tuple(digits)


def render_digits(digits: Sequence[int], q: int) -> str:
    if q <= 10:
        return "".join(str(d) for d in digits)
    return ".".join(str(d) for d in digits)


def primitive_root(p: int) -> int:
    """Smallest generator of (Z/p)^*, p prime."""
    if p == 2:
        return 1
    phi = p - 1
    factors, m, f = set(), phi, 2
    while f * f <= m:
        while m % f == 0:
            factors.add(f)
            m //= f
        f += 1
    if m > 1:
        factors.add(m)
    for g in range(2, p):
        if all(pow(g, phi // r, p) != 1 for r in factors):
            return g
    raise ValueError(f"{p} is not prime")


def to_int(x: FieldElement, p: int) -> int:
    """Residue mod prime p represented by ``x`` under the smallest primitive root."""
    if x.is_zero:
        return 0
    return pow(primitive_root(p), x.log, p)


class MonomialSystem:
    """f_i(x) = prod_j x_j ** F[i, j] for an exponent matrix F."""

    __slots__ = ("matrix",)

    def __init__(self, matrix: ExpMatrix):
        self.matrix = matrix

    @classmethod
    def from_rows(cls, rows, q: int | FieldSize) -> MonomialSystem:
        return cls(ExpMatrix(rows, q))

    @classmethod
    def identity(cls, n: int, q: int | FieldSize) -> MonomialSystem:
        return cls(ExpMatrix.identity(n, q))

    @property
    def n(self) -> int:
        return self.matrix.n

    @property
    def q(self) -> int:
        return self.matrix.q

    @property
    def field(self) -> FieldSize:
        return self.matrix.field

    def exponent_array(self) -> np.ndarray:
        return self.matrix.to_array()

    def zero_rows(self) -> np.ndarray:
        return np.zeros(self.n, dtype=bool)

    def __call__(self, x: State) -> State:
        return evaluate(self, x)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MonomialSystem):
            return NotImplemented
        return self.matrix == other.matrix

    def __hash__(self) -> int:
        return hash(self.matrix)

    def __repr__(self) -> str:
        return f"MonomialSystem({[list(r) for r in self.matrix.rows]}, q={self.q})"


def psi(F: ExpMatrix) -> MonomialSystem:
    return MonomialSystem(F)


def psi_inv(f: MonomialSystem) -> ExpMatrix:
    return f.matrix


def evaluate(f: MonomialSystem, x: State) -> State:
    if len(x) != f.n:
        raise ContextMismatch(f"state has {len(x)} coordinates, system has {f.n}")
    order = f.q - 1
    out = []
    for row in f.matrix.rows:
        log = 0
        zero = False
        for e, xj in zip(row, x):
            if e == 0:
                continue  # 0**0 == 1
            if xj.is_zero:
                zero = True
                break
            log += e * xj.log
        out.append(ZERO if zero else FieldElement(log % order))
    return tuple(out)


def compose(g: MonomialSystem, f: MonomialSystem) -> MonomialSystem:
    """g o f, computed as the monoid product of the exponent matrices."""
    return MonomialSystem(mat_mul(g.matrix, f.matrix))


def iterate(f: MonomialSystem, m: int) -> MonomialSystem:
    """f composed with itself m times."""
    return MonomialSystem(mat_pow(f.matrix, m))


def _successor_chunk(idx: np.ndarray, F: np.ndarray, zero_rows: np.ndarray, n: int, q: int) -> np.ndarray:
    # digits of each state, most significant coordinate first
    digits = np.empty((idx.size, n), dtype=np.int64)
    rest = idx.copy()
    for j in range(n - 1, -1, -1):
        rest, digits[:, j] = np.divmod(rest, q)
    is_zero = digits == 0
    logs = np.where(is_zero, 0, digits - 1)
    positive = F > 0
    # component i vanishes if some x_j == 0 carries a positive exponent
    zero_out = (is_zero.astype(np.int64) @ positive.T.astype(np.int64)) > 0
    zero_out |= zero_rows[None, :]
    out_logs = (logs @ F.T) % (q - 1)
    out_digits = np.where(zero_out, 0, out_logs + 1)
    weights = q ** np.arange(n - 1, -1, -1, dtype=np.int64)
    return out_digits @ weights


def successor_table(f, cap: int | None = None) -> np.ndarray:
    """Successor index of every state under ``f`` (mixed-radix state indices).

    ``f`` is anything exposing ``n``, ``q``, ``exponent_array()`` and
    ``zero_rows()``; rows flagged in ``zero_rows`` evaluate to the field zero.
    """
    n, q = f.n, f.q
    cap = state_cap() if cap is None else cap
    total = q**n
    if total > cap:
        raise StateSpaceTooLarge(q, n, cap)
    F = np.asarray(f.exponent_array(), dtype=np.int64)
    zero_rows = np.asarray(f.zero_rows(), dtype=bool)
    if zero_rows.any():
        F = np.where(zero_rows[:, None], 0, F)
    succ = np.empty(total, dtype=np.int64)
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(total, start + _CHUNK), dtype=np.int64)
        succ[start : start + idx.size] = _successor_chunk(idx, F, zero_rows, n, q)
    return succ


@dataclass
class PhaseSpace:
    """Functional graph of a system on all q^n states with its cycle inventory.

    ``cycles`` lists ``(length, representative)`` pairs where the representative
    is the smallest state index on the cycle; cycles are sorted by
    representative.
    """

    n: int
    q: int
    successor: np.ndarray
    cycles: list[tuple[int, int]] = field(default_factory=list)
    transient_count: int = 0

    @property
    def size(self) -> int:
        return self.q**self.n

    @property
    def fixed_points(self) -> list[int]:
        return [rep for length, rep in self.cycles if length == 1]

    def cycle_histogram(self) -> dict[int, int]:
        hist: dict[int, int] = {}
        for length, _ in self.cycles:
            hist[length] = hist.get(length, 0) + 1
        return dict(sorted(hist.items()))

    def is_fixed_point_system(self) -> bool:
        return all(length == 1 for length, _ in self.cycles)

    def digits(self, idx: int) -> tuple[int, ...]:
        return index_digits(idx, self.n, self.q)


def find_cycles(succ: Sequence[int]) -> tuple[list[tuple[int, int]], int]:
    """Cycles of a functional graph by three-colour traversal.

    Returns ``(cycles, transient_count)``.
    """
    succ = list(succ)
    colour = bytearray(len(succ))  # 0 white, 1 on current path, 2 done
    cycles = []
    on_cycle = 0
    for start in range(len(succ)):
        if colour[start]:
            continue
        path = []
        v = start
        while colour[v] == 0:
            colour[v] = 1
            path.append(v)
            v = succ[v]
        if colour[v] == 1:
            cyc = path[path.index(v):]
            cycles.append((len(cyc), min(cyc)))
            on_cycle += len(cyc)
        for u in path:
            colour[u] = 2
    cycles.sort(key=lambda c: c[1])
    return cycles, len(succ) - on_cycle


def phase_space(f, cap: int | None = None) -> PhaseSpace:
    succ = successor_table(f, cap)
    cycles, transient = find_cycles(succ.tolist())
    return PhaseSpace(f.n, f.q, succ, cycles, transient)


def is_fixed_point_system_bruteforce(f, cap: int | None = None) -> bool:
    return phase_space(f, cap).is_fixed_point_system()
