import random
from fractions import Fraction
from itertools import combinations

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from toric_schubert import edgecone, polyoracle
from toric_schubert.bigraph import BipartiteGraph
from toric_schubert.polyoracle import OracleError, RationalCone

from _support import EXAMPLE_GRAPH, random_connected_graph, toric_perms


def brute_extreme_rays(ineqs, dim):
    """Extreme rays of ``{x : a.x >= 0}`` by nullspaces of every (dim-1)-subset."""
    found = set()
    for rows in combinations(ineqs, dim - 1):
        ns = sympy.Matrix(rows).nullspace()
        if len(ns) != 1:
            continue
        v = ns[0]
        for sign in (1, -1):
            w = [sign * x for x in v]
            if all(sum(a * x for a, x in zip(r, w)) >= 0 for r in ineqs):
                den = sympy.ilcm(*[sympy.fraction(x)[1] for x in w])
                found.add(polyoracle.primitive(int(x * den) for x in w))
    return sorted(found)


def edge_cone(g):
    dim = g.m + g.n - 1
    gens = edgecone.dual_generators_normal(g)
    return RationalCone(dim, tuple(polyoracle.dual_rays(gens, dim))), gens


K22 = BipartiteGraph.complete(2, 2)


def test_cone_validation():
    with pytest.raises(ValueError):
        RationalCone(2, ((1, 0, 0),))
    with pytest.raises(ValueError):
        RationalCone(2, ((0, 0),))


def test_linear_algebra_helpers():
    assert polyoracle.rank([[1, 2], [2, 4], [0, 1]]) == 2
    assert polyoracle.primitive([Fraction(1, 2), Fraction(3, 4)]) == (2, 3)
    assert polyoracle.primitive([4, -6, 0]) == (2, -3, 0)
    assert polyoracle.solve_square([[2, 1], [1, 3]], [3, 5]) == [Fraction(4, 5), Fraction(7, 5)]
    assert polyoracle.pivot_columns([[0, 1, 1], [0, 2, 3]]) == [1, 2]


def test_lp_feasible():
    x = polyoracle.lp_feasible([[1, 1], [1, -1]], [2, 0])
    assert x == [1, 1]
    assert polyoracle.lp_feasible([[1, 1]], [-1]) is None
    assert polyoracle.lp_feasible([[1, -1]], [-3]) == [0, 3]


def test_in_cone():
    gens = [(1, 0), (1, 1)]
    assert polyoracle.in_cone((3, 1), gens)
    assert not polyoracle.in_cone((0, 1), gens)


def test_dual_rays_of_orthant_and_square():
    assert polyoracle.dual_rays([(1, 0, 0), (0, 1, 0), (0, 0, 1)], 3) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]
    square = [(1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 1)]
    assert polyoracle.dual_rays(square, 3) == [(-1, -1, 1), (-1, 1, 1), (1, -1, 1), (1, 1, 1)]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_dual_rays_against_brute_force(seed):
    g = random_connected_graph(random.Random(seed), max_total=8)
    dim = g.m + g.n - 1
    gens = edgecone.dual_generators_normal(g)
    assert polyoracle.dual_rays(gens, dim) == brute_extreme_rays(gens, dim)


def test_extremal_rays_drop_redundant_generator():
    c = RationalCone(3, ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (2, 0, 0)))
    assert polyoracle.extremal_rays(c) == [0, 1, 2]


def test_non_pointed_cone_rejected():
    c = RationalCone(2, ((1, 0), (-1, 0), (0, 1)))
    assert not polyoracle.is_pointed(c)
    with pytest.raises(OracleError):
        polyoracle.extremal_rays(c)


def test_example_cone_all_rays_extremal():
    c, _ = edge_cone(EXAMPLE_GRAPH)
    assert sorted(c.generators) == [(0, 0, 1), (0, 1, -1), (1, 0, 0)]
    assert polyoracle.extremal_rays(c) == [0, 1, 2]
    assert polyoracle.cone_dim(c) == 3


def test_is_face_certificate_example():
    c, _ = edge_cone(EXAMPLE_GRAPH)
    idx = [c.generators.index((1, 0, 0)), c.generators.index((0, 1, -1))]
    face = polyoracle.is_face(c, idx)
    assert face is not None and face.dim == 2
    # the facet normal is unique up to scale; lifted it reads [0, 1, 1, 0]
    assert polyoracle.primitive(face.certificate) == (0, 1, 1)


def test_is_face_empty_subset_gives_interior_functional():
    c, _ = edge_cone(EXAMPLE_GRAPH)
    face = polyoracle.is_face(c, [])
    assert face is not None and face.dim == 0
    assert all(polyoracle.dot(face.certificate, g) >= 1 for g in c.generators)


def test_is_face_rejects_diagonal_of_square():
    c, _ = edge_cone(K22)
    # opposite rays of the quadric cone do not span a face
    by_source = {r.coords: r.source for r in edgecone.gamma_rays(K22)}
    e1 = next(k for k, g in enumerate(c.generators) if by_source[g].label() == "{2}|{}")
    e2 = next(k for k, g in enumerate(c.generators) if by_source[g].label() == "{1}|{}")
    assert polyoracle.is_face(c, [e1, e2]) is None


def test_faces_of_quadric_cone():
    c, gens = edge_cone(K22)
    faces = polyoracle.faces_up_to_dim3(c, gens)
    assert [f.dim for f in faces].count(1) == 4
    assert [f.dim for f in faces].count(2) == 4
    (top,) = [f for f in faces if f.dim == 3]
    assert len(top.zero_set) == 4 and not top.simplicial
    assert not polyoracle.rigid_verdict(c, gens)


def test_faces_of_example_cone():
    c, gens = edge_cone(EXAMPLE_GRAPH)
    faces = polyoracle.faces_up_to_dim3(c)
    assert sum(f.dim == 2 for f in faces) == 3
    (top,) = [f for f in faces if f.dim == 3]
    assert top.simplicial
    assert polyoracle.rigid_verdict(c)


@pytest.mark.parametrize("m, n", [(3, 3), (3, 4), (1, 4), (4, 1)])
def test_rigid_cases(m, n):
    c, gens = edge_cone(BipartiteGraph.complete(m, n))
    assert polyoracle.rigid_verdict(c, gens)


def test_ray_guard():
    c, gens = edge_cone(BipartiteGraph.complete(13, 13))
    with pytest.raises(OracleError):
        polyoracle.faces_up_to_dim3(c, gens)


def test_lp_and_facet_paths_agree_s5():
    for p in toric_perms(5):
        for comp in edgecone.cone_components(p):
            c, gens = edge_cone(comp.graph)
            assert polyoracle.extremal_rays(c) == polyoracle.extremal_rays_by_facets(c, gens)
            lp = polyoracle.faces_up_to_dim3(c)
            hd = polyoracle.faces_up_to_dim3(c, gens)
            assert [(f.zero_set, f.dim) for f in lp] == [(f.zero_set, f.dim) for f in hd]


def test_certificates_and_intersection_closure():
    for p in toric_perms(5):
        for comp in edgecone.cone_components(p):
            c, gens = edge_cone(comp.graph)
            lat = polyoracle.FaceLattice(c, gens)
            faces = polyoracle.faces_up_to_dim3(c, gens)
            on_sets = {f.zero_set for f in faces}
            for f in faces:
                assert lat.verify(f)
                cert = polyoracle.is_face(c, f.zero_set)
                assert cert is not None and cert.dim == f.dim
            for a, b in combinations(faces, 2):
                meet = a.zero_set & b.zero_set
                assert not meet or meet in on_sets


def test_dual_cone_round_trip():
    c, gens = edge_cone(EXAMPLE_GRAPH)
    back = polyoracle.dual_cone(c)
    assert sorted(back.generators) == sorted(set(polyoracle.primitive(g) for g in gens))
    assert polyoracle.cone_dim(back) == polyoracle.cone_dim(c)
