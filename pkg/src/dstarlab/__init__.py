"""Occurrence statistics of double-star patterns in random unlabeled trees.

A double-star pattern (i, j) is an edge whose endpoints have degrees i and
j.  The package enumerates unlabeled trees, solves the bivariate
generating-function systems that count pattern occurrences, extracts exact
finite-n distributions and moments, estimates the asymptotic growth
constants, and applies the edge-pattern limits to the Randic index and its
comparison with the average distance.
"""

from ._rat import Q
from .treelab import (
    FreeTree,
    SimpleGraph,
    TreeError,
    DisconnectedGraphError,
    gen_free_trees,
    gen_rooted_seqs,
    count_free_trees,
    count_rooted_trees,
    canonical_free_seq,
    gnp_sample,
    tree_wiener_mean,
    pattern_histograms,
)
from .pseries import Series, planted_series, free_series, eval_series, eval_tail
from .pattern_gf import (
    PatternError,
    PatternSpec,
    SystemSolution,
    solve_pattern,
    verify_solution,
    occurrence_distribution,
    moment_sums,
)
from .asymptotics import (
    Estimate,
    find_x0,
    compute_b,
    compute_w,
    compute_mu,
    sigma_estimate,
    mu_table,
    lambda_bracket,
)
from .distlab import DistSummary, summarize, normality_trend, chebyshev_tail, wiener_scaling
from .randic_app import ConjectureReport, conjecture_scan, gnp_conjecture_check

__version__ = "0.1.0"

__all__ = [
    "Q",
    "FreeTree",
    "SimpleGraph",
    "TreeError",
    "DisconnectedGraphError",
    "gen_free_trees",
    "gen_rooted_seqs",
    "count_free_trees",
    "count_rooted_trees",
    "canonical_free_seq",
    "gnp_sample",
    "tree_wiener_mean",
    "pattern_histograms",
    "Series",
    "planted_series",
    "free_series",
    "eval_series",
    "eval_tail",
    "PatternError",
    "PatternSpec",
    "SystemSolution",
    "solve_pattern",
    "verify_solution",
    "occurrence_distribution",
    "moment_sums",
    "Estimate",
    "find_x0",
    "compute_b",
    "compute_w",
    "compute_mu",
    "sigma_estimate",
    "mu_table",
    "lambda_bracket",
    "DistSummary",
    "summarize",
    "normality_trend",
    "chebyshev_tail",
    "wiener_scaling",
    "ConjectureReport",
    "conjecture_scan",
    "gnp_conjecture_check",
]
