"""Generalized sorting with predictions: probe oracles, solvers and a benchmark harness."""

from .deterministic import DeterministicSolver
from .generators import GenSpec, flipped_backbone, generate
from .model import (
    Instance,
    InvalidInstance,
    ParseError,
    PredictedGraph,
    mispredicted_count,
    parse,
    serialize,
    true_ham_path,
    validate_instance,
)
from .oracle import NonEdgeProbe, ProbeOracle, ProbeResult
from .randomized import RandomizedSolver
from .stepping import Done, NeedProbe, RunStats, drive
from .verifier import brute_force_solve, check_path

__all__ = [
    "DeterministicSolver",
    "Done",
    "GenSpec",
    "Instance",
    "InvalidInstance",
    "NeedProbe",
    "NonEdgeProbe",
    "ParseError",
    "PredictedGraph",
    "ProbeOracle",
    "ProbeResult",
    "RandomizedSolver",
    "RunStats",
    "brute_force_solve",
    "check_path",
    "drive",
    "flipped_backbone",
    "generate",
    "mispredicted_count",
    "parse",
    "serialize",
    "true_ham_path",
    "validate_instance",
]
