"""Exact solver for robust recoverable spanning trees and matroid bases.

Given a connected graph (or matroid) where every element carries a
first-stage cost C and a second-stage cost interval [c, c+d], find a pair
of spanning trees (bases) X and Y sharing enough elements — at least
(size − k) for a recovery budget k — minimizing C(X) + (c+d)(Y).

The solver runs an iterative relaxation: solve an exact-rational LP over
both stage polytopes coupled by an overlap budget, then round off the
guaranteed integral coordinate, shrinking the instance until both trees
are complete.  Every arithmetic step is exact, and the optimum always
equals the LP bound of the first relaxation.
"""

from .config import SolveConfig
from .errors import (
    InfeasibleModel,
    InputError,
    InternalError,
    NoIntegralCoordinate,
    ParseError,
    RRSTError,
    ValidationError,
)
from .gen import builtin_small_suite, connected_graphs_up_to_iso, generate_instance
from .instance import (
    CostTriple,
    Instance,
    instance_from_dict,
    instance_to_dict,
    load_instance,
    loads_instance,
    serialize_instance,
)
from .matroids import (
    GraphicMatroid,
    Matroid,
    MatroidInstance,
    PartitionMatroid,
    UniformMatroid,
    load_matroid_instance,
    loads_matroid_instance,
    matroid_instance_from_dict,
)
from .multigraph import MultiGraph
from .oracle import (
    BruteResult,
    brute_force_rrmb,
    brute_force_rrst,
    count_spanning_trees,
    enumerate_spanning_trees,
)
from .rational import Rat, parse_exact, rat, rat_str
from .solver import (
    IterationInfo,
    Solution,
    serialize_solution,
    solution_to_dict,
    solve_rrmb,
    solve_rrst,
    verify_basis_solution,
    verify_tree_solution,
)

__all__ = [
    "SolveConfig",
    "RRSTError",
    "InputError",
    "ParseError",
    "ValidationError",
    "InfeasibleModel",
    "InternalError",
    "NoIntegralCoordinate",
    "CostTriple",
    "Instance",
    "instance_from_dict",
    "instance_to_dict",
    "load_instance",
    "loads_instance",
    "serialize_instance",
    "Matroid",
    "GraphicMatroid",
    "UniformMatroid",
    "PartitionMatroid",
    "MatroidInstance",
    "load_matroid_instance",
    "loads_matroid_instance",
    "matroid_instance_from_dict",
    "MultiGraph",
    "BruteResult",
    "brute_force_rrst",
    "brute_force_rrmb",
    "count_spanning_trees",
    "enumerate_spanning_trees",
    "Rat",
    "rat",
    "rat_str",
    "parse_exact",
    "Solution",
    "IterationInfo",
    "solve_rrst",
    "solve_rrmb",
    "solution_to_dict",
    "serialize_solution",
    "verify_tree_solution",
    "verify_basis_solution",
    "generate_instance",
    "builtin_small_suite",
    "connected_graphs_up_to_iso",
    "__version__",
]

__version__ = "0.1.0"
