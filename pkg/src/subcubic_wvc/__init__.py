"""Exact minimum-weight vertex cover for graphs of maximum degree 3.

A branch-and-reduce solver parameterized by the minimum vertex cover size,
with exact rational weights, a brute-force oracle, instance generators and
an audit layer that replays the running-time analysis on real search trees.
"""

from .bipartite import FlowNetwork, max_flow, min_weight_vc_bipartite
from .cover import (ALPHA, BETA, CoverPartition, Measures, OutsideClass, classify_outside,
                    is_good_cover, lemma2_holds, measures, partition_cover, potential, potentials)
from .engine import ROBUST, STRICT, SolveOutcome, SolverConfig, SolveState, WVCSolver, solve, wvc_alg
from .errors import *  # noqa: F401,F403
from .graph import Graph, MutationToken, build_graph, is_vertex_cover
from .instgen import GenSpec, generate, generate_instance
from .instrumentation import (BranchReport, TraceNode, audit_step, audit_trace, branching_number,
                              global_bound_check, lemma1_subtree_check)
from .oracle import exact_min_weight_vc, solve_small_component
from .preprocess import FMapping, FStatus, compute_f, establish_f_property, min_size_vc, validate_f

__version__ = "0.1.0"
