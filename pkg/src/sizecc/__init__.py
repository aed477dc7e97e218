"""Correlation clustering with cluster-size bounds: LP rounding and random pivoting."""

__version__ = "0.1.0"

from .instance import (INF, Clustering, CostBreakdown, WeightedInstance, clustering_cost,
                       split_oversized, validate_unweighted, validate_weighted)
from .io import ParseError, format_instance, parse_instance, read_instance, write_instance
from .lp import (LpProblem, LpSolution, build_lp, check_feasible,
                 integer_solution_from_clustering, lp_cost_of_edge)
from .oracle import OracleResult, empirical_ratio, optimal_clustering
from .pivot import (SignedGraph, bounded_cc_pivot, bounded_edge_removal_exact,
                    bounded_edge_removal_greedy, cc_pivot)
from .rounding import (AlphaPlan, PivotOrder, c_alpha, mu_star, optimal_alpha,
                       rcost_lower_bound, round_solution)
from .simplex import SimplexConfig, solve, solve_instance
