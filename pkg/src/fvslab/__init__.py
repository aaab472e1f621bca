"""Exact feedback vertex set tools for graphs of bounded degeneracy or treewidth."""

from .codec import DecodeError, decode, encode
from .fvs import FvsCertificate, bad_set_report, find_minimal_bad_set, min_fvs, tournament_a
from .graph_core import Digraph, Graph, GraphError, is_acyclic
from .orderings import EliminationOrdering, degeneracy, rl_degeneracy, treewidth_exact, treewidth_upper

__version__ = "0.1.0"

__all__ = [
    "DecodeError", "decode", "encode", "FvsCertificate", "bad_set_report", "find_minimal_bad_set",
    "min_fvs", "tournament_a", "Digraph", "Graph", "GraphError", "is_acyclic", "EliminationOrdering",
    "degeneracy", "rl_degeneracy", "treewidth_exact", "treewidth_upper",
]
