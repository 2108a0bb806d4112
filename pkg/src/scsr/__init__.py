"""Greedy approximation of the shortest common superstring with reversals."""

from .automaton import Automaton, build_automaton, compute_state_sets, reverse_bfs_states
from .exact import (ExactResult, OracleLimitError, decide_scs, decide_scsr, exact_scs,
                    exact_scsr, exact_scsr_through_arc)
from .graph import Arc, OverlapGraph, PathCollection, build_graph, mate, rev
from .greedy import (GreedyTrace, InvariantViolation, TieBreakPolicy, greedy_r_linear,
                     greedy_r_naive, verify_superstring_r)
from .instances import InstanceSpec, random_instance, shredded, tight_instance
from .preprocess import NormalizedInput, make_factor_free, make_reverse_factor_free
from .reduction import build_reduction, check_reduction_roundtrip, morphism_g, morphism_h
from .strings import StringSet, is_factor, merge, overlap, prefix_remainder, reverse

__all__ = [
    "Arc", "Automaton", "ExactResult", "GreedyTrace", "InstanceSpec", "InvariantViolation",
    "NormalizedInput", "OracleLimitError", "OverlapGraph", "PathCollection", "StringSet",
    "TieBreakPolicy", "build_automaton", "build_graph", "build_reduction",
    "check_reduction_roundtrip", "compute_state_sets", "decide_scs", "decide_scsr",
    "exact_scs", "exact_scsr", "exact_scsr_through_arc", "greedy_r_linear", "greedy_r_naive",
    "is_factor", "make_factor_free", "make_reverse_factor_free", "mate", "merge",
    "morphism_g", "morphism_h", "overlap", "prefix_remainder", "random_instance", "rev",
    "reverse", "reverse_bfs_states", "shredded", "tight_instance", "verify_superstring_r",
]
