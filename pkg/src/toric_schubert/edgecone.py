"""Edge cones of bipartite graphs and rigidity of toric matrix Schubert varieties.

Lattice conventions.  ``M`` is the sublattice of ``Z^(m+n)`` of vectors whose
``U1`` entries and ``U2`` entries have equal sums; the dual edge cone is
generated by ``e^i + f^j`` over the edges.  ``N`` is ``Z^(m+n)`` modulo
``sum(e_i) - sum(f_j)``; a ray is stored in normal form, i.e. with the
``f_n`` coordinate eliminated, as a vector of length ``m + n - 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from itertools import combinations
from math import gcd
from typing import Iterable, Sequence

from toric_schubert import polyoracle
from toric_schubert.bigraph import (
    BipartiteGraph,
    IndependentSet,
    associated_subgraph,
    component_count,
    essential_chain,
    first_independent_sets,
    graph_from_l,
    intersect,
    neighbor_set,
)
from toric_schubert.rothe import (
    Cell,
    Diagram,
    Permutation,
    complexity,
    dominant_piece,
    essential_set,
    is_toric,
    l_components,
    regions,
    rothe_diagram,
)

METHODS = ("graph", "corollary", "oracle")


class NotToricError(ValueError):
    pass


@dataclass(frozen=True)
class RayVector:
    coords: tuple[int, ...]
    source: IndependentSet | None

    def lift(self) -> tuple[int, ...]:
        """Canonical representative in ``Z^(m+n)`` (``f_n`` coefficient 0)."""
        return self.coords + (0,)


@dataclass(frozen=True)
class DualGenerator:
    coords: tuple[int, ...]
    edge: tuple[int, int]


@dataclass(frozen=True)
class FaceDescriptor:
    dim: int
    defining_sets: tuple[IndependentSet, ...]
    functional: tuple[int, ...]
    rays_on_face: tuple[RayVector, ...]

    @property
    def simplicial(self) -> bool:
        return len(self.rays_on_face) == self.dim

    def key(self) -> tuple:
        return tuple(sorted(r.coords for r in self.rays_on_face))


# ---------------------------------------------------------------- lattice helpers


def normal_form(v: Sequence[int], m: int, n: int) -> tuple[int, ...]:
    """Reduce a vector of ``Z^(m+n)`` modulo ``sum(e) - sum(f)``, dropping ``f_n``."""
    c = v[m + n - 1]
    return tuple(v[i] + c for i in range(m)) + tuple(v[m + j] - c for j in range(n - 1))


def primitive(v: Iterable[int]) -> tuple[int, ...]:
    v = tuple(v)
    g = reduce(gcd, v, 0)
    return v if g in (0, 1) else tuple(x // g for x in v)


def pair(functional: Sequence[int], ray: RayVector) -> int:
    return sum(a * b for a, b in zip(functional, ray.lift()))


def lift_of(g: BipartiteGraph, a: IndependentSet) -> tuple[int, ...]:
    """``chi(N(A)) - chi(A)`` in ``Z^(m+n)``."""
    nb = neighbor_set(g, a.vertices)
    v = [0] * (g.m + g.n)
    for i in nb.u1:
        v[i - 1] += 1
    for j in nb.u2:
        v[g.m + j - 1] += 1
    for i in a.a1:
        v[i - 1] -= 1
    for j in a.a2:
        v[g.m + j - 1] -= 1
    return tuple(v)


def ray_of(g: BipartiteGraph, a: IndependentSet) -> RayVector:
    return RayVector(primitive(normal_form(lift_of(g, a), g.m, g.n)), a)


def dual_generators(g: BipartiteGraph) -> list[DualGenerator]:
    out = []
    for i, j in g.sorted_edges():
        v = [0] * (g.m + g.n)
        v[i - 1] = 1
        v[g.m + j - 1] = 1
        out.append(DualGenerator(tuple(v), (i, j)))
    return out


def dual_generators_normal(g: BipartiteGraph) -> list[tuple[int, ...]]:
    """Dual generators as functionals on normal-form coordinates."""
    return [d.coords[: g.m + g.n - 1] for d in dual_generators(g)]


def gamma_rays(g: BipartiteGraph, fis: Sequence[IndependentSet] | None = None) -> list[RayVector]:
    if fis is None:
        fis = first_independent_sets(g)
    return [ray_of(g, a) for a in fis]


def resolve_first_independent(g: BipartiteGraph, a: IndependentSet) -> IndependentSet:
    """The member of the first independent sets giving the same ray as ``a``.

    A two-sided set is completed to ``A1 | (U2 - N(A1))``, which keeps the
    hyperplane attached to its ``U1`` part.
    """
    if a.a1 and a.a2:
        return IndependentSet(a.a1, g.u2 - neighbor_set(g, a.vertices).u2)
    return a


# ---------------------------------------------------------------- faces from graphs


class GraphFaces:
    """Face tests on one connected graph, driven by its first independent sets."""

    def __init__(self, g: BipartiteGraph, fis: Sequence[IndependentSet] | None = None):
        self.graph = g
        self.fis = list(first_independent_sets(g) if fis is None else fis)
        self.rays = [ray_of(g, a) for a in self.fis]
        self.subgraphs = [associated_subgraph(g, a) for a in self.fis]

    def index(self, a: IndependentSet) -> int:
        return self.fis.index(a)

    def spans_face(self, s: Sequence[IndependentSet]) -> FaceDescriptor | None:
        idx = [self.index(a) for a in s]
        if len(set(idx)) != len(idx) or not idx:
            raise ValueError("face test needs distinct first independent sets")
        inter = intersect(self.subgraphs[k] for k in idx)
        d = len(idx)
        if component_count(inter) != d + 1:
            return None
        val = inter.degree_sequence()
        on = tuple(r for r in self.rays if pair(val, r) == 0)
        return FaceDescriptor(d, tuple(self.fis[k] for k in idx), val, on)

    def faces(self, d: int) -> list[FaceDescriptor]:
        found: dict[tuple, FaceDescriptor] = {}
        for s in combinations(self.fis, d):
            f = self.spans_face(s)
            if f is not None:
                found.setdefault(f.key(), f)
        return list(found.values())

    def three_faces(self) -> list[FaceDescriptor]:
        return self.faces(3)


def spans_face(g: BipartiteGraph, s: Sequence[IndependentSet]) -> FaceDescriptor | None:
    return GraphFaces(g).spans_face(s)


def three_faces(g: BipartiteGraph) -> list[FaceDescriptor]:
    return GraphFaces(g).three_faces()


def pair_predicates(
    g: BipartiteGraph, a: IndependentSet, b: IndependentSet, fis: Sequence[IndependentSet] | None = None
) -> tuple[bool, str]:
    """Two-face verdict for a pair of first independent sets of a toric ``G^pi``.

    Encodes the four pair rules for one-sided sets ``U1 - {i}``, ``U2 - {j}``
    and two-sided sets ``C``.  Returns the verdict and the rule that fired.
    The rules assume at least three essential cells; on ``K_{2,2}`` for
    instance they miss that opposite one-sided rays span no face.
    """
    if fis is None:
        fis = first_independent_sets(g)
    if a not in fis or b not in fis:
        raise ValueError("both sets must be first independent sets of the graph")
    two = [c for c in fis if c.a1 and c.a2]

    def kind(x):
        return "C" if x.a1 and x.a2 else ("A" if x.a1 else "B")

    ka, kb = kind(a), kind(b)
    if {ka, kb} == {"A", "B"}:
        return True, "one-sided pair from opposite parts"
    if ka == kb == "C":
        return True, "two two-sided sets"
    if ka == kb == "A":
        gone = (g.u1 - a.a1) | (g.u1 - b.a1)
        hit = [c for c in two if c.a1 == g.u1 - gone and len(c.a2) <= g.n - 2]
        if hit:
            return False, f"first independent set {hit[0].label()} misses both vertices"
        return True, "no two-sided set on U1 minus both vertices"
    if ka == kb == "B":
        gone = (g.u2 - a.a2) | (g.u2 - b.a2)
        hit = [c for c in two if c.a2 == g.u2 - gone and len(c.a1) <= g.m - 2]
        if hit:
            return False, f"first independent set {hit[0].label()} misses both vertices"
        return True, "no two-sided set on U2 minus both vertices"
    one, c = (a, b) if kb == "C" else (b, a)
    if one.a1:
        (v,) = g.u1 - one.a1
        side, other = c.a1, [x.a1 for x in two if x != c]
    else:
        (v,) = g.u2 - one.a2
        side, other = c.a2, [x.a2 for x in two if x != c]
    if side == {v}:
        return False, "two-sided part is the single missing vertex"
    if any(side - o == {v} for o in other):
        return False, "nested two-sided set differs by the missing vertex"
    return True, "no nested set differs by the missing vertex"


# ---------------------------------------------------------------- Rothe corollary


@dataclass(frozen=True)
class CornerPattern:
    index: int  # 1-based position in the bottom-to-top essential chain
    corner: tuple[int, int]
    height: int
    width: int

    @property
    def protruding(self) -> bool:
        return self.height == 1 and self.width == 1


def corner_steps(ess: Iterable[tuple[int, int]], m: int, n: int) -> list[CornerPattern]:
    """Height and width of every outer corner of a staircase L-component.

    Corners ``(x_i, y_i)`` are ordered bottom to top.  The height of corner
    ``i`` is ``x_i - x_{i+1}`` and its width ``y_i - y_{i-1}``, with the hook
    row and column as sentinels ``x_{k+2} = 1`` and ``y_0 = 1``.
    """
    chain = essential_chain(ess)
    xs = [x for x, _ in chain] + [1]
    ys = [1] + [y for _, y in chain]
    return [
        CornerPattern(i + 1, chain[i], xs[i] - xs[i + 1], ys[i + 1] - ys[i])
        for i in range(len(chain))
    ]


def nonsimplicial_three_face_patterns(ess, m: int, n: int) -> list[CornerPattern]:
    """Essential corners forcing a non-simplicial 3-face (three or more corners)."""
    ess = list(ess)
    if len(ess) < 3:
        raise ValueError("needs at least three essential cells; use small_case_patterns")
    return [c for c in corner_steps(ess, m, n) if c.protruding]


def small_case_patterns(ess, m: int, n: int) -> tuple[list[CornerPattern], str]:
    """Non-rigidity patterns with one or two essential cells, and the rule used."""
    ess = list(ess)
    if len(ess) == 1:
        # K_{m,n}: rigid when m, n != 2; the remaining shapes by the corner rule
        rule = "complete-bipartite" if m != 2 and n != 2 else "complete-bipartite/corner"
    elif len(ess) == 2:
        rule = "two-essential"
    else:
        raise ValueError("small cases have one or two essential cells")
    return [c for c in corner_steps(ess, m, n) if c.protruding], rule


def corollary_patterns(ess, m: int, n: int) -> tuple[list[CornerPattern], str]:
    ess = list(ess)
    if not ess:
        return [], "empty"
    if len(ess) <= 2:
        return small_case_patterns(ess, m, n)
    return nonsimplicial_three_face_patterns(ess, m, n), "essential-corners"


# ---------------------------------------------------------------- permutations


@dataclass
class ConeComponent:
    """One connected component of ``L(pi)`` with its graph and essentials."""

    rows: list[int]
    cols: list[int]
    graph: BipartiteGraph
    essentials: list[tuple[int, int]]  # relabelled to the component
    _faces: GraphFaces | None = field(default=None, repr=False)

    @property
    def faces(self) -> GraphFaces:
        if self._faces is None:
            self._faces = GraphFaces(self.graph)
        return self._faces

    @property
    def normal_dim(self) -> int:
        return self.graph.m + self.graph.n - 1


def cone_components(p: Permutation) -> list[ConeComponent]:
    d = rothe_diagram(p)
    reg = regions(d)
    ess = essential_set(d) - dominant_piece(d).cells
    out = []
    for cells in l_components(reg.l):
        sub = Diagram(p.n, cells)
        rows, cols = sub.rows(), sub.cols()
        ri = {r: k for k, r in enumerate(rows, 1)}
        ci = {c: k for k, c in enumerate(cols, 1)}
        local = sorted((ri[c.row], ci[c.col]) for c in ess if c in cells)
        out.append(ConeComponent(rows, cols, graph_from_l(sub), local))
    return out


def product_dual_generators(components: Sequence[ConeComponent]) -> tuple[int, list[tuple[int, ...]]]:
    """Dual generators of the product cone in block normal-form coordinates."""
    total = sum(c.normal_dim for c in components)
    gens = []
    offset = 0
    for c in components:
        for v in dual_generators_normal(c.graph):
            gens.append((0,) * offset + v + (0,) * (total - offset - len(v)))
        offset += c.normal_dim
    return total, gens


def product_gamma_rays(components: Sequence[ConeComponent]) -> list[tuple[int, ...]]:
    total = sum(c.normal_dim for c in components)
    out = []
    offset = 0
    for c in components:
        for r in c.faces.rays:
            out.append((0,) * offset + r.coords + (0,) * (total - offset - len(r.coords)))
        offset += c.normal_dim
    return out


@dataclass(frozen=True)
class OracleCone:
    dim: int
    dual_gens: tuple[tuple[int, ...], ...]
    rays: tuple[tuple[int, ...], ...]

    def cone(self) -> polyoracle.RationalCone:
        return polyoracle.RationalCone(self.dim, self.rays)


def oracle_cone(components: Sequence[ConeComponent]) -> OracleCone:
    dim, gens = product_dual_generators(components)
    rays = polyoracle.dual_rays(gens, dim) if dim else []
    return OracleCone(dim, tuple(gens), tuple(rays))


# ---------------------------------------------------------------- classification


@dataclass
class Classification:
    permutation: Permutation
    toric: bool
    complexity: int
    dimension: int
    trivial: bool = False
    rigid: bool | None = None
    method_verdicts: dict[str, bool | None] = field(default_factory=dict)
    witnesses: list[dict] = field(default_factory=list)
    rules: list[str] = field(default_factory=list)
    essentials: list[list[tuple[int, int]]] = field(default_factory=list)
    three_faces: list[FaceDescriptor] = field(default_factory=list)

    @property
    def consistent(self) -> bool:
        ran = [v for v in self.method_verdicts.values() if v is not None]
        return len(set(ran)) <= 1


def graph_verdict(components: Sequence[ConeComponent]) -> tuple[bool, list[FaceDescriptor]]:
    bad = []
    faces = []
    for c in components:
        fs = c.faces.three_faces()
        faces.extend(fs)
        bad.extend(f for f in fs if not f.simplicial)
    return not bad, faces


def corollary_verdict(components: Sequence[ConeComponent]) -> tuple[bool, list[dict], list[str]]:
    witnesses, rules = [], []
    for k, c in enumerate(components):
        pats, rule = corollary_patterns(c.essentials, c.graph.m, c.graph.n)
        rules.append(rule)
        for pat in pats:
            witnesses.append(
                {
                    "kind": "essential-corner",
                    "component": k,
                    "index": pat.index,
                    "corner": list(pat.corner),
                    "height": pat.height,
                    "width": pat.width,
                }
            )
    return not witnesses, witnesses, rules


def oracle_verdict(components: Sequence[ConeComponent]) -> bool:
    oc = oracle_cone(components)
    if not oc.rays:
        return True
    return polyoracle.rigid_verdict(oc.cone(), facets=oc.dual_gens)


def classify_rigidity(p: Permutation, methods: Iterable[str] = METHODS) -> Classification:
    methods = list(methods)
    for name in methods:
        if name not in METHODS:
            raise ValueError(f"unknown method {name!r}")
    toric, _ = is_toric(p)
    reg = regions(rothe_diagram(p))
    out = Classification(p, toric, complexity(p), len(reg.l_prime))
    if not toric:
        return out
    components = cone_components(p)
    out.essentials = [c.essentials for c in components]
    if not components:
        out.trivial = True
        out.rigid = True
        out.method_verdicts = {name: True for name in methods}
        return out
    if "graph" in methods:
        verdict, faces = graph_verdict(components)
        out.method_verdicts["graph"] = verdict
        out.three_faces = faces
        for f in faces:
            if not f.simplicial:
                out.witnesses.append(
                    {
                        "kind": "three-face",
                        "rays": [list(r.coords) for r in f.rays_on_face],
                        "sources": [r.source.label() for r in f.rays_on_face],
                    }
                )
    if "corollary" in methods:
        verdict, wit, rules = corollary_verdict(components)
        out.method_verdicts["corollary"] = verdict
        out.witnesses.extend(wit)
        out.rules = rules
    if "oracle" in methods:
        out.method_verdicts["oracle"] = oracle_verdict(components)
    verdicts = [v for v in out.method_verdicts.values() if v is not None]
    if verdicts:
        out.rigid = verdicts[0] if out.consistent else None
    return out


def require_toric(p: Permutation) -> None:
    if not is_toric(p)[0]:
        raise NotToricError(f"{p} is not toric (complexity {complexity(p)})")


__all__ = [
    "Cell",
    "Classification",
    "ConeComponent",
    "CornerPattern",
    "DualGenerator",
    "FaceDescriptor",
    "GraphFaces",
    "METHODS",
    "NotToricError",
    "RayVector",
    "classify_rigidity",
    "cone_components",
    "corner_steps",
    "corollary_patterns",
    "dual_generators",
    "gamma_rays",
    "nonsimplicial_three_face_patterns",
    "oracle_cone",
    "pair_predicates",
    "ray_of",
    "spans_face",
    "three_faces",
]
