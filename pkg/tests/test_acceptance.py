"""Acceptance criteria 1-8, one test each, each printing a PASS/FAIL line."""

import random
import time
from itertools import combinations

import pytest

from toric_schubert import bigraph, cli, edgecone, polyoracle, rothe
from toric_schubert.bigraph import BipartiteGraph, IndependentSet
from toric_schubert.edgecone import RayVector
from toric_schubert.rothe import parse_permutation

from _support import EXAMPLE_GRAPH, S10, all_perms, random_connected_graph, toric_perms


@pytest.fixture
def report(capsys):
    def emit(number: int, ok: bool, detail: str):
        with capsys.disabled():
            print(f"\ncriterion {number}: {'PASS' if ok else 'FAIL'} ({detail})")
        assert ok, detail

    return emit


def edge_vectors(g: BipartiteGraph):
    return tuple(tuple(int(k == i - 1) + int(k == g.m + j - 1) for k in range(g.m + g.n)) for i, j in g.sorted_edges())


def dual_cone_dim(g: BipartiteGraph) -> int:
    return polyoracle.cone_dim(polyoracle.RationalCone(g.m + g.n, edge_vectors(g)))


def smallest_face(cone, idx) -> set[int]:
    """Rays on the smallest face through ``idx``, by exact LP.

    Ray ``g`` is on that face iff ``t * sum(idx) = g + sum(mu_k r_k)`` has a
    solution with ``t, mu >= 0``.
    """
    gens = cone.generators
    centre = [sum(gens[i][c] for i in idx) for c in range(cone.ambient_dim)]
    cols = [centre] + [[-x for x in r] for r in gens]
    a = [[col[c] for col in cols] for c in range(cone.ambient_dim)]
    return {k for k, g in enumerate(gens) if polyoracle.lp_feasible(a, list(g)) is not None}


def test_criterion_1_golden_examples(report):
    t0 = time.perf_counter()
    failures = []

    def check(label, ok):
        if not ok:
            failures.append(label)

    p = parse_permutation("[2143]")
    d = rothe.rothe_diagram(p)
    reg = rothe.regions(d)
    check("D([2143])", set(d.cells) == {(1, 1), (3, 3)})
    check("Ess([2143])", rothe.essential_set(d) == {(1, 1), (3, 3)})
    check("|L'([2143])|", len(reg.l_prime) == 7)
    check("dim dual cone [2143]", dual_cone_dim(bigraph.graph_from_l(reg.l)) == 5)
    check("complexity [2143]", rothe.complexity(p) == 2)

    q = parse_permutation("[2413]")
    check("[2413] toric", rothe.is_toric(q)[0])
    check("[2413] dim", rothe.dimension(q) == 3)
    check("[2413] graph", bigraph.graph_from_l(rothe.regions(rothe.rothe_diagram(q)).l) == BipartiteGraph.complete(2, 2))

    c = edgecone.classify_rigidity(S10)
    check("S10 toric", c.toric)
    check("S10 non-rigid", c.rigid is False and c.consistent and len(c.method_verdicts) == 3)
    (comp,) = edgecone.cone_components(S10)
    chain = bigraph.essential_chain(comp.essentials)
    x3, y3 = chain[2]
    corners = [tuple(w["corner"]) for w in c.witnesses if w["kind"] == "essential-corner"]
    check("S10 witness (7,3)", (7, 3) in corners and (x3 + 1, y3 - 1) == (7, 3))
    g = comp.graph
    cc = edgecone.resolve_first_independent(g, IndependentSet.of({8, 9}, range(4, 9)))
    cc2 = edgecone.resolve_first_independent(g, IndependentSet.of({7, 8, 9}, range(5, 9)))
    check("S10 C, C' resolve to first independent sets", cc in comp.faces.fis and cc2 in comp.faces.fis)
    hit = [
        f for f in c.three_faces
        if len(f.rays_on_face) == 4 and {cc, cc2} <= {r.source for r in f.rays_on_face}
    ]
    check("S10 4-ray 3-face through C and C'", len(hit) == 1)
    elapsed = time.perf_counter() - t0
    check("runtime < 1 s", elapsed < 1.0)
    report(1, not failures, f"{elapsed:.2f} s; failed: {failures}" if failures else f"{elapsed:.2f} s")


def test_criterion_2_example_graph(report):
    t0 = time.perf_counter()
    g = EXAMPLE_GRAPH
    fis = bigraph.first_independent_sets(g)
    # drawn with U1 = {1, 2}, U2 = {3, 4}; here U2 is {1, 2}
    expected = {IndependentSet.of({2}), IndependentSet.of((), {2}), IndependentSet.of({1}, {1})}
    rays = {r.coords for r in edgecone.gamma_rays(g)}
    gf = edgecone.GraphFaces(g)
    pairs_ok = all(gf.spans_face(s) is not None for s in combinations(fis, 2))
    face = gf.spans_face([IndependentSet.of({2}), IndependentSet.of({1}, {1})])
    val_ok = face is not None and list(face.functional) == [0, 1, 1, 0]
    on_ok = face is not None and sorted(r.coords for r in face.rays_on_face) == [(0, 1, -1), (1, 0, 0)]
    elapsed = time.perf_counter() - t0
    ok = (
        set(fis) == expected
        and len(fis) == 3
        and rays == {(1, 0, 0), (0, 0, 1), (0, 1, -1)}
        and pairs_ok
        and val_ok
        and on_ok
        and elapsed < 0.1
    )
    report(2, ok, f"sets {[a.label() for a in fis]}, rays {sorted(rays)}, {elapsed * 1000:.1f} ms")


def test_criterion_3_ray_bijection_s6(report):
    t0 = time.perf_counter()
    bad = []
    for p in toric_perms(6):
        comps = edgecone.cone_components(p)
        if not comps:
            continue
        gamma = edgecone.product_gamma_rays(comps)
        oracle = edgecone.oracle_cone(comps)
        extremal = polyoracle.extremal_rays_by_facets(oracle.cone(), oracle.dual_gens)
        oracle_set = {polyoracle.primitive(oracle.rays[i]) for i in extremal}
        if len(gamma) != len(set(gamma)) or set(gamma) != oracle_set:
            bad.append(str(p))
    elapsed = time.perf_counter() - t0
    report(3, not bad and elapsed < 60, f"{len(toric_perms(6))} toric perms, mismatches {bad[:3]}, {elapsed:.1f} s")


def test_criterion_4_face_theorem_s5(report):
    t0 = time.perf_counter()
    bad = []
    tested = 0
    for p in toric_perms(5):
        for comp in edgecone.cone_components(p):
            g = comp.graph
            gf = comp.faces
            cone = polyoracle.RationalCone(g.m + g.n - 1, tuple(r.coords for r in gf.rays))
            for size in (1, 2, 3):
                for idx in combinations(range(len(gf.fis)), size):
                    tested += 1
                    f = gf.spans_face([gf.fis[i] for i in idx])
                    on = smallest_face(cone, idx)
                    if polyoracle.is_face(cone, on) is None:
                        bad.append((str(p), "no certificate"))
                        continue
                    oracle_dim = polyoracle.rank([cone.generators[i] for i in on])
                    if (f is not None) != (oracle_dim == size):
                        bad.append((str(p), [gf.fis[i].label() for i in idx]))
                        continue
                    if f is not None:
                        values = [edgecone.pair(f.functional, r) for r in gf.rays]
                        zero = {k for k, v in enumerate(values) if v == 0}
                        if zero != on or min(values) < 0:
                            bad.append((str(p), "functional"))
    elapsed = time.perf_counter() - t0
    report(4, not bad and elapsed < 120, f"{tested} subsets, mismatches {bad[:3]}, {elapsed:.1f} s")


def _essential_count(p) -> int | None:
    comps = edgecone.cone_components(p)
    return len(comps[0].essentials) if len(comps) == 1 else None


def test_criterion_5_rigidity_equivalence(report):
    t0 = time.perf_counter()
    bad = []
    for p in toric_perms(6):
        c = edgecone.classify_rigidity(p)
        if len(c.method_verdicts) != 3 or not c.consistent:
            bad.append(str(p))
    strata: dict[int, list] = {}
    for p in toric_perms(7):
        k = _essential_count(p)
        if k is not None:
            strata.setdefault(k, []).append(p)
    rng = random.Random(7)
    sample = [q for k in sorted(strata) for q in rng.sample(strata[k], min(40, len(strata[k])))]
    covered = sorted({_essential_count(q) for q in sample})
    for p in sample:
        c = edgecone.classify_rigidity(p)
        if len(c.method_verdicts) != 3 or not c.consistent:
            bad.append(str(p))
    t1 = time.perf_counter()
    code = cli.main(["crosscheck", "--n", "6"])
    t2 = time.perf_counter()
    ok = not bad and {1, 2, 3, 4} <= set(covered) and code == 0 and t2 - t1 < 300
    report(
        5,
        ok,
        f"S_6 plus {len(sample)} sampled S_7 perms with |Ess| in {covered}; disagreements {bad[:3]}; "
        f"crosscheck --n 6 exit {code} in {t2 - t1:.1f} s; sweep {t1 - t0:.1f} s",
    )


def test_criterion_6_dimension_formula(report):
    bad = []
    graphs = 0
    for p in all_perms(6):
        l = rothe.regions(rothe.rothe_diagram(p)).l
        if not l:
            continue
        m, n, k = rothe.l_shape(l)
        graphs += 1
        if dual_cone_dim(bigraph.graph_from_l(l)) != m + n - k:
            bad.append(str(p))
    rng = random.Random(20240601)
    for _ in range(50):
        g = random_connected_graph(rng, max_total=10, min_total=2)
        if dual_cone_dim(g) != g.m + g.n - 1:
            bad.append(sorted(g.edges))
    report(6, not bad, f"{graphs} graphs from S_6 plus 50 random connected graphs, mismatches {bad[:3]}")


def test_criterion_7_toric_iff_complexity_zero(report):
    t0 = time.perf_counter()
    bad = [str(p) for p in all_perms(7) if rothe.is_toric(p)[0] != (rothe.complexity(p) == 0)]
    elapsed = time.perf_counter() - t0
    report(7, not bad and elapsed < 60, f"5040 perms, mismatches {bad[:3]}, {elapsed:.1f} s")


def test_criterion_8_negative_controls(report, monkeypatch, capsys):
    baseline = cli.main(["crosscheck", "--n", "4"])
    real_ray, real_steps = edgecone.ray_of, edgecone.corner_steps
    with monkeypatch.context() as mp:
        mp.setattr(edgecone, "ray_of", lambda g, a: RayVector(tuple(-x for x in real_ray(g, a).coords), a))
        flipped = cli.main(["crosscheck", "--n", "4"])
    with monkeypatch.context() as mp:
        mp.setattr(
            edgecone,
            "corner_steps",
            lambda ess, m, n: [
                edgecone.CornerPattern(c.index, c.corner, c.height + 1, c.width) for c in real_steps(ess, m, n)
            ],
        )
        shifted = cli.main(["crosscheck", "--n", "4"])
    out = capsys.readouterr().out
    ok = baseline == 0 and flipped == 1 and shifted == 1 and out.count("FAIL") == 2
    report(8, ok, f"clean exit {baseline}, sign flip exit {flipped}, corollary off-by-one exit {shifted}")
