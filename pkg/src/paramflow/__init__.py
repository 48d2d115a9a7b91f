"""Parametric minimum flows over time on discrete-time dynamic networks."""

from .estimator import ParametricMinFlow
from .io import load_network
from .expansion import NTP, TimeExpandedNetwork, expand
from .network import (
    Arc,
    DynamicNetwork,
    InvalidNetworkError,
    lower_bound_at,
    tight_lower_bounds,
    validate_network,
)
from .qdp import qdp
from .residual import SolverInvariantError
from .solver import ParametricSolution, ValuePiece, evaluate_value, solve
from .static_flow import InfeasibleError, feasible_flow, max_flow, min_flow
from .verification import VerificationReport, random_network, verify

__all__ = [
    "Arc",
    "DynamicNetwork",
    "InfeasibleError",
    "InvalidNetworkError",
    "NTP",
    "ParametricMinFlow",
    "ParametricSolution",
    "SolverInvariantError",
    "TimeExpandedNetwork",
    "ValuePiece",
    "VerificationReport",
    "evaluate_value",
    "expand",
    "feasible_flow",
    "load_network",
    "lower_bound_at",
    "max_flow",
    "min_flow",
    "qdp",
    "random_network",
    "solve",
    "tight_lower_bounds",
    "validate_network",
    "verify",
]
