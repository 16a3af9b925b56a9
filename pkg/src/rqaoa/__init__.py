"""Recursive QAOA for Ising-type cost functions, with exact and analytic baselines."""

from ._backend import BACKEND
from .analytic import QaoaParams, level1_correlations, level1_energy, level1_zz, optimize_level1
from .elimination import (EliminationRecord, OptimizerConfig, ReconstructionMap, choose_rounding,
                          eliminate_variable, reconstruct, rqaoa)
from .exact import brute_force_max, local_search_max, one_local_ring_algorithm
from .exceptions import (ArityError, CapacityError, DimensionError, GenerationError, ParityError,
                         RoundingError, RqaoaError, UnsupportedInstanceError)
from .graphs import GraphSpec, generate, parse_graph_spec
from .model import IsingInstance, evaluate

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "IsingInstance",
    "evaluate",
    "QaoaParams",
    "level1_zz",
    "level1_correlations",
    "level1_energy",
    "optimize_level1",
    "EliminationRecord",
    "ReconstructionMap",
    "OptimizerConfig",
    "eliminate_variable",
    "choose_rounding",
    "reconstruct",
    "rqaoa",
    "brute_force_max",
    "local_search_max",
    "one_local_ring_algorithm",
    "GraphSpec",
    "generate",
    "parse_graph_spec",
    "RqaoaError",
    "ArityError",
    "CapacityError",
    "DimensionError",
    "GenerationError",
    "ParityError",
    "RoundingError",
    "UnsupportedInstanceError",
]
