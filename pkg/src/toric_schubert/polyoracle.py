"""Exact polyhedral geometry for small rational cones.

Everything here runs over Python integers and :class:`fractions.Fraction`;
no floating point is used.  The module knows nothing about graphs, which is
what makes it usable as a referee for the graph-theoretic shortcuts.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import combinations
from math import gcd
from typing import Iterable, Sequence

MAX_RAYS = 24


class OracleError(ValueError):
    pass


@dataclass(frozen=True)
class RationalCone:
    ambient_dim: int
    generators: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        gens = tuple(tuple(int(x) for x in g) for g in self.generators)
        object.__setattr__(self, "generators", gens)
        for g in gens:
            if len(g) != self.ambient_dim:
                raise OracleError(f"generator {g} has wrong length")
            if not any(g):
                raise OracleError("zero generator")


@dataclass(frozen=True)
class OracleFace:
    zero_set: frozenset[int]  # indices of generators lying on the face
    dim: int
    certificate: tuple[Fraction, ...]

    @property
    def simplicial(self) -> bool:
        return len(self.zero_set) == self.dim


# ---------------------------------------------------------------- linear algebra


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def primitive(v: Iterable) -> tuple[int, ...]:
    """Scale a rational vector to the primitive integer vector on its ray."""
    v = [Fraction(x) for x in v]
    den = reduce(lambda a, b: a * b // gcd(a, b), (x.denominator for x in v), 1)
    ints = [int(x * den) for x in v]
    g = reduce(gcd, ints, 0)
    return tuple(ints) if g == 0 else tuple(x // g for x in ints)


def rank(rows: Sequence[Sequence[int]]) -> int:
    """Exact rank by fraction-free (Bareiss) elimination."""
    mat = [list(map(int, r)) for r in rows if any(r)]
    if not mat:
        return 0
    ncols = len(mat[0])
    r = 0
    prev = 1
    for c in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        for i in range(r + 1, len(mat)):
            for j in range(c + 1, ncols):
                mat[i][j] = (mat[r][c] * mat[i][j] - mat[i][c] * mat[r][j]) // prev
            mat[i][c] = 0
        prev = mat[r][c]
        r += 1
        if r == len(mat):
            break
    return r


def pivot_columns(rows: Sequence[Sequence[int]]) -> list[int]:
    mat = [[Fraction(x) for x in r] for r in rows]
    if not mat:
        return []
    pivots = []
    r = 0
    for c in range(len(mat[0])):
        piv = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c] / mat[r][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return pivots


def solve_square(a: Sequence[Sequence[int]], b: Sequence[int]) -> list[Fraction]:
    n = len(a)
    mat = [[Fraction(x) for x in row] + [Fraction(v)] for row, v in zip(a, b)]
    for c in range(n):
        piv = next(i for i in range(c, n) if mat[i][c] != 0)
        mat[c], mat[piv] = mat[piv], mat[c]
        for i in range(n):
            if i != c and mat[i][c] != 0:
                f = mat[i][c] / mat[c][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[c])]
    return [mat[i][n] / mat[i][i] for i in range(n)]


# ---------------------------------------------------------------- exact simplex


def lp_feasible(a: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """A point of ``{x >= 0 : a x = b}`` or ``None``.

    Phase one of the tableau simplex method with Bland's rule, so it always
    terminates; exact over the rationals.
    """
    rows = len(a)
    cols = len(a[0]) if rows else 0
    tab = []
    for row, rhs in zip(a, b):
        row = [Fraction(x) for x in row]
        rhs = Fraction(rhs)
        if rhs < 0:
            row, rhs = [-x for x in row], -rhs
        tab.append(row + [Fraction(int(k == len(tab))) for k in range(rows)] + [rhs])
    basis = list(range(cols, cols + rows))
    width = cols + rows
    # reduced costs of the phase-one objective (sum of artificials)
    cost = [Fraction(0)] * (width + 1)
    for row in tab:
        for j in range(cols):
            cost[j] -= row[j]
        cost[width] -= row[width]
    while True:
        enter = next((j for j in range(width) if cost[j] < 0), None)
        if enter is None:
            break
        best = None
        for i, row in enumerate(tab):
            if row[enter] > 0:
                ratio = row[width] / row[enter]
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:  # unbounded direction cannot occur in phase one
            break
        i = best[1]
        piv = tab[i][enter]
        tab[i] = [x / piv for x in tab[i]]
        for k, row in enumerate(tab):
            if k != i and row[enter] != 0:
                f = row[enter]
                tab[k] = [x - f * y for x, y in zip(row, tab[i])]
        f = cost[enter]
        cost = [x - f * y for x, y in zip(cost, tab[i])]
        basis[i] = enter
    if cost[width] != 0:
        return None
    x = [Fraction(0)] * cols
    for i, j in enumerate(basis):
        if j < cols:
            x[j] = tab[i][width]
    return x


def separating_functional(
    dim: int, vanish: Sequence[Sequence[int]], positive: Sequence[Sequence[int]]
) -> tuple[Fraction, ...] | None:
    """``w`` with ``<w, v> = 0`` on ``vanish`` and ``<w, p> >= 1`` on ``positive``."""
    # w = u - v with u, v >= 0; one surplus column per positive row
    a, b = [], []
    k = len(positive)
    for v in vanish:
        a.append(list(v) + [-x for x in v] + [0] * k)
        b.append(0)
    for t, p in enumerate(positive):
        a.append(list(p) + [-x for x in p] + [-int(s == t) for s in range(k)])
        b.append(1)
    if not a:
        return tuple(Fraction(0) for _ in range(dim))
    sol = lp_feasible(a, b)
    if sol is None:
        return None
    return tuple(sol[i] - sol[dim + i] for i in range(dim))


def in_cone(target: Sequence[int], gens: Sequence[Sequence[int]]) -> bool:
    if not gens:
        return not any(target)
    a = [[g[r] for g in gens] for r in range(len(target))]
    return lp_feasible(a, list(target)) is not None


# ---------------------------------------------------------------- double description


def dual_rays(inequalities: Sequence[Sequence[int]], dim: int) -> list[tuple[int, ...]]:
    """Extreme rays of ``{x : <a, x> >= 0 for a in inequalities}``.

    Double description method with the combinatorial adjacency test.  The
    inequalities must have rank ``dim`` (the solution cone is then pointed).
    """
    ineqs = [tuple(map(int, a)) for a in inequalities]
    if rank(ineqs) != dim:
        raise OracleError("inequalities do not have full rank; the cone is not pointed")
    # start from the simplicial cone cut out by dim independent inequalities
    chosen: list[int] = []
    for idx, a in enumerate(ineqs):
        if rank([ineqs[c] for c in chosen] + [a]) > len(chosen):
            chosen.append(idx)
        if len(chosen) == dim:
            break
    basis = [ineqs[c] for c in chosen]
    rays = []
    for k in range(dim):
        sol = solve_square(basis, [int(k == t) for t in range(dim)])
        r = primitive(sol)
        rays.append((r, _zero_mask(r, ineqs, chosen)))
    processed = list(chosen)
    for idx in range(len(ineqs)):
        if idx in chosen:
            continue
        a = ineqs[idx]
        processed.append(idx)
        bit = 1 << idx
        pos, neg, zero = [], [], []
        for r, z in rays:
            s = dot(a, r)
            (pos if s > 0 else neg if s < 0 else zero).append((r, z, s))
        new = [(r, z) for r, z, _ in pos] + [(r, z | bit) for r, z, _ in zero]
        for p, zp, sp in pos:
            for q, zq, sq in neg:
                common = zp & zq
                if bin(common).count("1") < dim - 2:
                    continue
                if _dominated(common, zp, zq, rays):
                    continue
                r = primitive([sp * y - sq * x for x, y in zip(p, q)])
                new.append((r, common | bit))
        rays = new
    return sorted({r for r, _ in rays})


def _dominated(common, zp, zq, rays) -> bool:
    # p and q always contain the common zero set; any third ray blocks adjacency
    hits = 0
    for _, z in rays:
        if z & common == common:
            hits += 1
            if hits > 2:
                return True
    return False


def _zero_mask(r, ineqs, idxs) -> int:
    mask = 0
    for i in idxs:
        if dot(ineqs[i], r) == 0:
            mask |= 1 << i
    return mask


# ---------------------------------------------------------------- cone operations


def cone_dim(c: RationalCone) -> int:
    return rank(c.generators)


def _intrinsic(c: RationalCone) -> tuple[list[tuple[int, ...]], int]:
    """Generators projected onto pivot coordinates of their span."""
    piv = pivot_columns(c.generators)
    return [tuple(g[p] for p in piv) for g in c.generators], len(piv)


def is_pointed(c: RationalCone) -> bool:
    gens = list(c.generators)
    return not any(in_cone([-x for x in g], gens) for g in gens)


def extremal_rays(c: RationalCone) -> list[int]:
    """Indices of generators spanning extremal rays, one index per ray."""
    if not is_pointed(c):
        raise OracleError("cone is not pointed")
    out = []
    seen = set()
    for k, g in enumerate(c.generators):
        key = primitive(g)
        if key in seen:
            continue
        others = [h for t, h in enumerate(c.generators) if primitive(h) != key]
        if not in_cone(g, others):
            out.append(k)
        seen.add(key)
    return out


def extremal_rays_by_facets(c: RationalCone, facets: Sequence[Sequence[int]]) -> list[int]:
    """Extremal generators of a full-dimensional cone given valid inequalities.

    ``facets`` must be nonnegative on every generator and cut out the cone.  A
    generator is extremal iff the inequalities tight on it have rank
    ``ambient_dim - 1``; the cone is pointed iff all of them have full rank.
    """
    d = c.ambient_dim
    if rank(facets) != d:
        raise OracleError("cone is not pointed")
    out, seen = [], set()
    for k, g in enumerate(c.generators):
        vals = [dot(f, g) for f in facets]
        if any(v < 0 for v in vals):
            raise OracleError(f"generator {k} violates a supplied inequality")
        key = primitive(g)
        if key in seen:
            continue
        seen.add(key)
        if rank([f for f, v in zip(facets, vals) if v == 0]) == d - 1:
            out.append(k)
    return out


def dual_cone(c: RationalCone) -> RationalCone:
    """The dual of a full-dimensional cone, by its extreme rays."""
    return RationalCone(c.ambient_dim, tuple(dual_rays(c.generators, c.ambient_dim)))


def is_face(c: RationalCone, subset: Iterable[int]) -> OracleFace | None:
    """Face whose generators are exactly ``subset``, with a certificate."""
    subset = frozenset(subset)
    on = [c.generators[i] for i in sorted(subset)]
    off = [g for i, g in enumerate(c.generators) if i not in subset]
    w = separating_functional(c.ambient_dim, on, off)
    if w is None:
        return None
    return OracleFace(subset, rank(on), w)


class FaceLattice:
    """Closure operator on subsets of extremal rays of a pointed cone.

    Lower-dimensional cones are handled in the coordinates of their span
    (pivot coordinates), so certificates are ambient only for full-dimensional
    cones or when ``facets`` are supplied in ambient coordinates.
    """

    def __init__(self, c: RationalCone, facets: Sequence[Sequence[int]] | None = None):
        self.cone = c
        if facets is None:
            self.rays = extremal_rays(c)
        else:
            self.rays = extremal_rays_by_facets(c, facets)
        gens, d = _intrinsic(c)
        self.dim = d
        if facets is None:
            facets = dual_rays([gens[i] for i in self.rays], d) if d else []
            self.facets = [tuple(f) for f in facets]
            self._gens = gens
        else:
            self.facets = [tuple(f) for f in facets]
            self._gens = list(c.generators)
        self.masks = {}
        for i in self.rays:
            m = 0
            for k, f in enumerate(self.facets):
                if dot(f, self._gens[i]) == 0:
                    m |= 1 << k
            self.masks[i] = m
        self._all = (1 << len(self.facets)) - 1

    def closure(self, subset: Iterable[int]) -> frozenset[int]:
        tight = self._all
        for i in subset:
            tight &= self.masks[i]
        return frozenset(i for i in self.rays if self.masks[i] & tight == tight)

    def face(self, subset: Iterable[int]) -> OracleFace:
        on = self.closure(subset)
        tight = self._all
        for i in on:
            tight &= self.masks[i]
        w = [0] * len(self._gens[0]) if self._gens else []
        for k, f in enumerate(self.facets):
            if tight >> k & 1:
                w = [a + b for a, b in zip(w, f)]
        # integer facets sum to an integer pairing, positive hence >= 1 off the face
        return OracleFace(on, rank([self._gens[i] for i in on]), tuple(w))

    def verify(self, face: OracleFace) -> bool:
        """Re-verify a certificate by direct pairing."""
        for i in self.rays:
            s = dot(face.certificate, self._gens[i])
            if i in face.zero_set and s != 0:
                return False
            if i not in face.zero_set and s < 1:
                return False
        return True


def faces_up_to_dim3(c: RationalCone, facets=None) -> list[OracleFace]:
    """All faces of dimension 1, 2 and 3 (the cone itself if it is 3-dimensional)."""
    lat = FaceLattice(c, facets)
    if len(lat.rays) > MAX_RAYS:
        raise OracleError(f"{len(lat.rays)} extremal rays exceed the limit of {MAX_RAYS}")
    found: dict[frozenset[int], OracleFace] = {}
    skipped: set[frozenset[int]] = set()
    for size in (1, 2, 3):
        for sub in combinations(lat.rays, size):
            on = lat.closure(sub)
            if on in found or on in skipped:
                continue
            if rank([lat._gens[i] for i in on]) > 3:
                skipped.add(on)
                continue
            found[on] = lat.face(on)
    return sorted(found.values(), key=lambda f: (f.dim, sorted(f.zero_set)))


def rigid_verdict(c: RationalCone, facets=None) -> bool:
    return all(f.simplicial for f in faces_up_to_dim3(c, facets) if f.dim == 3)
