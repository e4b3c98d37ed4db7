"""Bipartite graphs, independent sets and associated subgraphs.

Vertices of ``U1`` are ``1..m`` and vertices of ``U2`` are ``1..n``; a vertex
set is a :class:`Vertices` pair ``(u1, u2)`` so the two parts never mix.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, NamedTuple

from toric_schubert.rothe import Diagram


class Vertices(NamedTuple):
    u1: frozenset[int]
    u2: frozenset[int]

    @classmethod
    def of(cls, u1: Iterable[int] = (), u2: Iterable[int] = ()) -> Vertices:
        return cls(frozenset(u1), frozenset(u2))

    def __or__(self, other):
        return Vertices(self.u1 | other.u1, self.u2 | other.u2)

    def __and__(self, other):
        return Vertices(self.u1 & other.u1, self.u2 & other.u2)

    def is_empty(self) -> bool:
        return not self.u1 and not self.u2

    def size(self) -> int:
        return len(self.u1) + len(self.u2)

    def label(self) -> str:
        a = ",".join(map(str, sorted(self.u1)))
        b = ",".join(map(str, sorted(self.u2)))
        return f"{{{a}}}|{{{b}}}"


class Sidedness(enum.Enum):
    ONE_SIDED_U1 = "one-sided-U1"
    ONE_SIDED_U2 = "one-sided-U2"
    TWO_SIDED = "two-sided"


@dataclass(frozen=True)
class BipartiteGraph:
    m: int
    n: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        edges = frozenset((int(i), int(j)) for i, j in self.edges)
        object.__setattr__(self, "edges", edges)
        for i, j in edges:
            if not (1 <= i <= self.m and 1 <= j <= self.n):
                raise ValueError(f"edge {(i, j)} outside K_{{{self.m},{self.n}}}")

    @classmethod
    def complete(cls, m: int, n: int) -> BipartiteGraph:
        return cls(m, n, frozenset((i, j) for i in range(1, m + 1) for j in range(1, n + 1)))

    @property
    def u1(self) -> frozenset[int]:
        return frozenset(range(1, self.m + 1))

    @property
    def u2(self) -> frozenset[int]:
        return frozenset(range(1, self.n + 1))

    @property
    def vertices(self) -> Vertices:
        return Vertices(self.u1, self.u2)

    @cached_property
    def adj1(self) -> dict[int, frozenset[int]]:
        return {i: frozenset(j for a, j in self.edges if a == i) for i in self.u1}

    @cached_property
    def adj2(self) -> dict[int, frozenset[int]]:
        return {j: frozenset(i for i, b in self.edges if b == j) for j in self.u2}

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def is_connected(self) -> bool:
        return self.m + self.n > 0 and _count_components(self.m, self.n, self.edges) == 1

    def to_dot(self, name: str = "G") -> str:
        return _dot(name, self.m, self.n, self.sorted_edges())


@dataclass(frozen=True)
class IndependentSet:
    a1: frozenset[int]
    a2: frozenset[int]

    @classmethod
    def of(cls, a1: Iterable[int] = (), a2: Iterable[int] = ()) -> IndependentSet:
        return cls(frozenset(a1), frozenset(a2))

    @property
    def vertices(self) -> Vertices:
        return Vertices(self.a1, self.a2)

    def sidedness(self, g: BipartiteGraph) -> Sidedness:
        if self.a1 and self.a2:
            return Sidedness.TWO_SIDED
        return Sidedness.ONE_SIDED_U1 if self.a1 else Sidedness.ONE_SIDED_U2

    def label(self) -> str:
        return self.vertices.label()

    def sort_key(self) -> tuple:
        # U1 - {1} sorts before U1 - {2}: compare one-sided sets by descending bitmask
        if self.a1 and self.a2:
            return (2, tuple(sorted(self.a1)), tuple(sorted(self.a2)))
        if self.a1:
            return (0, -sum(1 << v for v in self.a1))
        return (1, -sum(1 << v for v in self.a2))


@dataclass(frozen=True)
class SpanningSubgraph:
    host: BipartiteGraph
    kept_edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        if not self.kept_edges <= self.host.edges:
            raise ValueError("kept edges must be edges of the host graph")

    def __and__(self, other: SpanningSubgraph) -> SpanningSubgraph:
        return SpanningSubgraph(self.host, self.kept_edges & other.kept_edges)

    def degree_sequence(self) -> tuple[int, ...]:
        """Degrees of ``u1_1..u1_m`` followed by ``u2_1..u2_n``."""
        deg = [0] * (self.host.m + self.host.n)
        for i, j in self.kept_edges:
            deg[i - 1] += 1
            deg[self.host.m + j - 1] += 1
        return tuple(deg)

    def to_dot(self, name: str = "G") -> str:
        return _dot(name, self.host.m, self.host.n, sorted(self.kept_edges))


def graph_from_l(l: Diagram) -> BipartiteGraph:
    """One edge per cell of ``l``; occupied rows and columns relabelled 1.."""
    rows = {r: k for k, r in enumerate(l.rows(), start=1)}
    cols = {c: k for k, c in enumerate(l.cols(), start=1)}
    return BipartiteGraph(len(rows), len(cols), frozenset((rows[r], cols[c]) for r, c in l.cells))


def neighbor_set(g: BipartiteGraph, a: Vertices) -> Vertices:
    n1 = set()
    for j in a.u2:
        n1 |= g.adj2[j]
    n2 = set()
    for i in a.u1:
        n2 |= g.adj1[i]
    return Vertices(frozenset(n1), frozenset(n2))


def is_independent(g: BipartiteGraph, a: Vertices) -> bool:
    if a.is_empty():
        return False
    return not (neighbor_set(g, Vertices(a.u1, frozenset())).u2 & a.u2)


def induced_edges(g: BipartiteGraph, v: Vertices) -> frozenset[tuple[int, int]]:
    return frozenset((i, j) for i, j in g.edges if i in v.u1 and j in v.u2)


def associated_subgraph(g: BipartiteGraph, a: IndependentSet) -> SpanningSubgraph:
    if not is_independent(g, a.vertices):
        raise ValueError(f"{a.label()} is not an independent set")
    nb = neighbor_set(g, a.vertices)
    if a.a1 and a.a2:
        first = Vertices(a.a1, nb.u2)
        second = Vertices(nb.u1, a.a2)
    elif a.a1:
        first = Vertices(a.a1, nb.u2)
        second = Vertices(g.u1 - a.a1, g.u2 - nb.u2)
    else:
        first = Vertices(nb.u1, a.a2)
        second = Vertices(g.u1 - nb.u1, g.u2 - a.a2)
    return SpanningSubgraph(g, induced_edges(g, first) | induced_edges(g, second))


def intersect(subgraphs: Iterable[SpanningSubgraph]) -> SpanningSubgraph:
    it = iter(subgraphs)
    out = next(it)
    for s in it:
        out = out & s
    return out


def _count_components(m: int, n: int, edges) -> int:
    parent = list(range(m + n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    count = m + n
    for i, j in edges:
        a, b = find(i - 1), find(m + j - 1)
        if a != b:
            parent[a] = b
            count -= 1
    return count


def component_count(s: SpanningSubgraph | BipartiteGraph) -> int:
    """Connected components, isolated vertices included."""
    if isinstance(s, BipartiteGraph):
        return _count_components(s.m, s.n, s.edges)
    return _count_components(s.host.m, s.host.n, s.kept_edges)


def connected_components(g: BipartiteGraph) -> list[tuple[BipartiteGraph, list[int], list[int]]]:
    """Split ``g`` into connected pieces, each relabelled from 1.

    Returns ``(piece, rows, cols)`` where ``rows``/``cols`` map the piece's
    vertices back to ``g``.  Isolated vertices are dropped.
    """
    parent: dict = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in g.edges:
        a, b = find((1, i)), find((2, j))
        if a != b:
            parent[a] = b
    groups: dict = {}
    for i, j in g.edges:
        groups.setdefault(find((1, i)), []).append((i, j))
    pieces = []
    for es in groups.values():
        rows = sorted({i for i, _ in es})
        cols = sorted({j for _, j in es})
        ri = {r: k for k, r in enumerate(rows, 1)}
        ci = {c: k for k, c in enumerate(cols, 1)}
        piece = BipartiteGraph(len(rows), len(cols), frozenset((ri[i], ci[j]) for i, j in es))
        pieces.append((piece, rows, cols))
    pieces.sort(key=lambda t: (t[1][0], t[2][0]))
    return pieces


def maximal_two_sided_independent_sets(g: BipartiteGraph) -> list[IndependentSet]:
    """All maximal independent sets meeting both parts properly.

    Brute force over subsets of the smaller part: a maximal set is fixed by
    its trace ``S`` there, with the other side equal to the non-neighbours of
    ``S``; it is maximal iff ``S`` is in turn all non-neighbours of that side.
    """
    if g.m + g.n > 40:
        raise ValueError("graph too large for subset enumeration")
    swap = g.n < g.m
    small, big = (g.n, g.m) if swap else (g.m, g.n)
    adj_small = g.adj2 if swap else g.adj1
    adj_big = g.adj1 if swap else g.adj2
    nbr_mask = [0] * (small + 1)
    for v in range(1, small + 1):
        for w in adj_small[v]:
            nbr_mask[v] |= 1 << (w - 1)
    back_mask = [0] * (big + 1)
    for w in range(1, big + 1):
        for v in adj_big[w]:
            back_mask[w] |= 1 << (v - 1)
    full_small = (1 << small) - 1
    full_big = (1 << big) - 1
    found = []
    for s in range(1, full_small):
        nb = 0
        x = s
        while x:
            low = x & -x
            nb |= nbr_mask[low.bit_length()]
            x ^= low
        other = full_big & ~nb
        if not other or other == full_big:
            continue
        nb_back = 0
        x = other
        while x:
            low = x & -x
            nb_back |= back_mask[low.bit_length()]
            x ^= low
        if (full_small & ~nb_back) != s:
            continue
        sa = frozenset(k + 1 for k in range(small) if s >> k & 1)
        sb = frozenset(k + 1 for k in range(big) if other >> k & 1)
        found.append(IndependentSet(sb, sa) if swap else IndependentSet(sa, sb))
    return sorted(found, key=IndependentSet.sort_key)


def first_independent_sets(g: BipartiteGraph) -> list[IndependentSet]:
    """Independent sets whose associated subgraph has exactly two components.

    Candidates are the maximal two-sided independent sets and those sets
    ``U_i - {v}`` that lie in no two-sided independent set, i.e. whose
    neighbourhood is the whole other side.  Ordered: one-sided in ``U1`` by
    removed vertex, then ``U2``, then two-sided.
    """
    if not g.is_connected():
        raise ValueError("first independent sets need a connected graph; decompose it first")
    candidates = []
    if g.m >= 2:
        for i in sorted(g.u1):
            a = Vertices(g.u1 - {i}, frozenset())
            if neighbor_set(g, a).u2 == g.u2:
                candidates.append(IndependentSet(a.u1, a.u2))
    if g.n >= 2:
        for j in sorted(g.u2):
            a = Vertices(frozenset(), g.u2 - {j})
            if neighbor_set(g, a).u1 == g.u1:
                candidates.append(IndependentSet(a.u1, a.u2))
    candidates += maximal_two_sided_independent_sets(g)
    found = [a for a in candidates if component_count(associated_subgraph(g, a)) == 2]
    return sorted(found, key=IndependentSet.sort_key)


def first_independent_sets_from_essentials(
    ess: Iterable[tuple[int, int]], m: int, n: int
) -> list[IndependentSet]:
    """First independent sets of a toric graph read off its essential corners.

    ``ess`` holds the essential cells of one connected L-component, relabelled
    to ``1..m`` x ``1..n``.  Consecutive corners ``(x_i, y_i)``, ``(x_{i+1},
    y_{i+1})`` (bottom to top) give the two-sided set
    ``{x_{i+1}+1..m} | {y_i+1..n}``.
    """
    chain = essential_chain(ess)
    out = []
    if m >= 2:
        out += [IndependentSet(frozenset(range(1, m + 1)) - {i}, frozenset()) for i in range(1, m + 1)]
    if n >= 2:
        out += [IndependentSet(frozenset(), frozenset(range(1, n + 1)) - {j}) for j in range(1, n + 1)]
    for (_, y_lo), (x_hi, _) in zip(chain, chain[1:]):
        out.append(IndependentSet(frozenset(range(x_hi + 1, m + 1)), frozenset(range(y_lo + 1, n + 1))))
    return sorted(out, key=IndependentSet.sort_key)


def essential_chain(ess: Iterable[tuple[int, int]]) -> list[tuple[int, int]]:
    """Sort essential cells bottom to top, checking they form a staircase."""
    chain = sorted(((int(x), int(y)) for x, y in ess), key=lambda c: (-c[0], c[1]))
    for (x0, y0), (x1, y1) in zip(chain, chain[1:]):
        if not (x1 < x0 and y0 < y1):
            raise ValueError(f"essential cells {chain} do not form a staircase")
    return chain


def brute_force_independent_sets(g: BipartiteGraph) -> list[Vertices]:
    """Every independent set of ``g`` (small graphs only)."""
    if g.m + g.n > 16:
        raise ValueError("graph too large for brute force")
    out = []
    for r1 in range(g.m + 1):
        for a1 in combinations(sorted(g.u1), r1):
            blocked = neighbor_set(g, Vertices.of(a1, ())).u2
            free = sorted(g.u2 - blocked)
            for r2 in range(len(free) + 1):
                for a2 in combinations(free, r2):
                    if r1 or r2:
                        out.append(Vertices.of(a1, a2))
    return out


def _dot(name: str, m: int, n: int, edges) -> str:
    lines = [f"graph {name} {{", "  rankdir=LR;"]
    lines.append("  { rank=same; " + " ".join(f"u1_{i};" for i in range(1, m + 1)) + " }")
    lines.append("  { rank=same; " + " ".join(f"u2_{j};" for j in range(1, n + 1)) + " }")
    for i in range(1, m + 1):
        lines.append(f"  u1_{i} [shape=circle];")
    for j in range(1, n + 1):
        lines.append(f"  u2_{j} [shape=box];")
    for i, j in edges:
        lines.append(f"  u1_{i} -- u2_{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"
