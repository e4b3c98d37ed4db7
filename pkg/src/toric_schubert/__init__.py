"""Rigidity of toric matrix Schubert varieties via bipartite edge cones."""

from toric_schubert.bigraph import BipartiteGraph, IndependentSet, first_independent_sets
from toric_schubert.edgecone import Classification, classify_rigidity
from toric_schubert.rothe import Permutation, complexity, is_toric, parse_permutation, rothe_diagram

__version__ = "0.1.0"

__all__ = [
    "BipartiteGraph",
    "Classification",
    "IndependentSet",
    "Permutation",
    "classify_rigidity",
    "complexity",
    "first_independent_sets",
    "is_toric",
    "parse_permutation",
    "rothe_diagram",
]
