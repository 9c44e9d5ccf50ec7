"""Dependency multigraph of a monomial system.

Vertex i has F[i, j] parallel edges to vertex j, so the exponent matrix is the
adjacency matrix.  Edges are kept only as multiplicities.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from math import gcd
from typing import Sequence

from .matrix import CountMatrix, ExpMatrix, count_mul, count_pow


class DependencyGraph:
    __slots__ = ("adjacency", "n", "_succ")

    def __init__(self, adjacency: Sequence[Sequence[int]]):
        self.adjacency = tuple(tuple(int(v) for v in r) for r in adjacency)
        self.n = len(self.adjacency)
        self._succ = [[j for j, m in enumerate(r) if m > 0] for r in self.adjacency]

    @classmethod
    def of(cls, system_or_matrix) -> DependencyGraph:
        m = getattr(system_or_matrix, "matrix", system_or_matrix)
        return cls(m.rows)

    def successors(self, v: int) -> list[int]:
        return self._succ[v]

    def multiplicity(self, u: int, v: int) -> int:
        return self.adjacency[u][v]

    def counts(self) -> CountMatrix:
        return CountMatrix(self.adjacency)


@dataclass(frozen=True)
class SccPartition:
    """Strongly connected components, numbered by their smallest vertex."""

    component_of: tuple[int, ...]
    components: tuple[tuple[int, ...], ...]
    trivial: tuple[bool, ...]
    loop_number: tuple[int, ...]

    @property
    def nontrivial(self) -> list[int]:
        return [c for c, t in enumerate(self.trivial) if not t]

    @property
    def coupled(self) -> bool:
        return not all(self.trivial)


def _tarjan(g: DependencyGraph) -> list[list[int]]:
    index = [-1] * g.n
    low = [0] * g.n
    on_stack = [False] * g.n
    stack: list[int] = []
    out: list[list[int]] = []
    counter = 0
    for root in range(g.n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, pos = work.pop()
            if pos == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            succ = g.successors(v)
            descended = False
            while pos < len(succ):
                w = succ[pos]
                pos += 1
                if index[w] == -1:
                    work.append((v, pos))
                    work.append((w, 0))
                    descended = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if descended:
                continue
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                out.append(sorted(comp))
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    return out


def _component_loop_number(g: DependencyGraph, members: Sequence[int]) -> int:
    inside = set(members)
    root = members[0]
    depth = {root: 0}
    queue = deque([root])
    period = 0
    while queue:
        u = queue.popleft()
        for v in g.successors(u):
            if v not in inside:
                continue
            if v not in depth:
                depth[v] = depth[u] + 1
                queue.append(v)
            else:
                period = gcd(period, depth[u] + 1 - depth[v])
    return abs(period)


def sccs(g: DependencyGraph) -> SccPartition:
    comps = sorted(_tarjan(g), key=lambda c: c[0])
    component_of = [0] * g.n
    for cid, comp in enumerate(comps):
        for v in comp:
            component_of[v] = cid
    trivial = tuple(len(c) == 1 and g.adjacency[c[0]][c[0]] == 0 for c in comps)
    loops = tuple(0 if t else _component_loop_number(g, c) for c, t in zip(comps, trivial))
    return SccPartition(tuple(component_of), tuple(tuple(c) for c in comps), trivial, loops)


def loop_number(g: DependencyGraph, component: int | Sequence[int], partition: SccPartition | None = None) -> int:
    """Loop number of a component, given by id or by its vertex set.

    This is the gcd of the closed-walk lengths inside the component, found as
    the gcd of ``depth(u) + 1 - depth(v)`` over its edges from a BFS tree.
    Trivial components have loop number 0.
    """
    part = partition or sccs(g)
    if isinstance(component, int):
        return part.loop_number[component]
    cid = part.component_of[next(iter(component))]
    return part.loop_number[cid]


def walk_count(g: DependencyGraph, m: int, i: int, j: int) -> int:
    """Number of walks of length m from i to j, parallel edges counted separately."""
    if m < 1:
        raise ValueError("walk length must be positive")
    return count_pow(g.counts(), m)[i, j]


def _reach(g: DependencyGraph, sources: Sequence[int], reverse: bool = False) -> set[int]:
    if reverse:
        nbrs = [[u for u in range(g.n) if g.adjacency[u][v] > 0] for v in range(g.n)]
    else:
        nbrs = [g.successors(v) for v in range(g.n)]
    seen = set(sources)
    queue = deque(sources)
    while queue:
        v = queue.popleft()
        for w in nbrs[v]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return seen


def recurrence_matrix(g: DependencyGraph, partition: SccPartition | None = None) -> list[list[bool]]:
    """``r[i][j]`` is True iff i reaches j by walks of unbounded length.

    That happens exactly when some walk from i to j passes through a
    nontrivial component.
    """
    part = partition or sccs(g)
    r = [[False] * g.n for _ in range(g.n)]
    for cid in part.nontrivial:
        members = part.components[cid]
        before = _reach(g, members, reverse=True)
        after = _reach(g, members)
        for i in before:
            for j in after:
                r[i][j] = True
    return r


def recurrently_connected(g: DependencyGraph, i: int, j: int, partition: SccPartition | None = None) -> bool:
    return recurrence_matrix(g, partition)[i][j]


def recurrently_connected_by_counts(g: DependencyGraph, i: int, j: int) -> bool:
    """Same relation read off the walk counts.

    A walk of length >= n must revisit a vertex, hence cross a cycle; a
    shortest such walk (simple path in, one simple cycle, simple path out)
    has length in [n, 3n - 2].  Checking only (A^n)_ij would miss periodic
    components whose walk lengths skip n.
    """
    n = g.n
    counts = g.counts()
    p = count_pow(counts, n)
    for _ in range(n, 3 * n - 1):
        if p[i, j] > 0:
            return True
        p = count_mul(p, counts)
    return False


def recurrent_vertices(g: DependencyGraph, partition: SccPartition | None = None) -> list[int]:
    """Vertices recurrently connected to at least one vertex."""
    r = recurrence_matrix(g, partition)
    return [i for i in range(g.n) if any(r[i])]


def graph_of(F: ExpMatrix) -> DependencyGraph:
    return DependencyGraph(F.rows)
