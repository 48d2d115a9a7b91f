"""Estimator-style front end so the solver plugs into scikit-learn tooling."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping

from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .io import network_from_dict
from .network import DynamicNetwork, Number, check_lambda, check_network
from .residual import LEXICOGRAPHIC
from .solver import solve
from .verification import VerificationReport, verify


def check_network_input(X) -> DynamicNetwork:
    """Accept a ``DynamicNetwork`` or a parsed network document and validate it."""
    if isinstance(X, Mapping):
        X = network_from_dict(X)
    return check_network(X)


def check_lambdas(X, lambda_max: Fraction) -> list[Fraction]:
    if isinstance(X, (int, str, Rational)):
        X = [X]
    return [check_lambda(x, lambda_max) for x in X]


class ParametricMinFlow(BaseEstimator):
    """Parametric minimum flow over time.

    ``fit`` takes a network and computes the breakpoints and the piecewise
    linear value function; ``predict`` evaluates that function at parameter
    values, exactly.

    Parameters
    ----------
    residual_rule : {"lexicographic", "strict"}
        Which residual arcs count as positive at the left end of a
        subinterval. ``"strict"`` requires positive capacity at that point.
    base_flow : mapping, optional
        Starting flow ``(arc index, theta) -> value`` feasible for every lambda.
    max_intervals : int, optional
        Safety cap on the number of subintervals.

    Attributes
    ----------
    solution_ : ParametricSolution
    breakpoints_ : tuple of Fraction
    value_pieces_ : list of ValuePiece
    """

    def __init__(self, residual_rule: str = LEXICOGRAPHIC, base_flow=None, max_intervals=None):
        self.residual_rule = residual_rule
        self.base_flow = base_flow
        self.max_intervals = max_intervals

    def fit(self, X, y=None):
        net = check_network_input(X)
        self.network_ = net
        self.solution_ = solve(net, self.base_flow, self.residual_rule, self.max_intervals)
        self.breakpoints_ = self.solution_.breakpoints
        self.value_pieces_ = self.solution_.pieces
        return self

    def predict(self, X: Number | Iterable[Number]) -> list[Fraction]:
        check_is_fitted(self, "solution_")
        return [self.solution_.value(lam) for lam in check_lambdas(X, self.network_.lambda_max)]

    def fit_predict(self, X, lambdas, y=None) -> list[Fraction]:
        return self.fit(X).predict(lambdas)

    def verify(self, samples_per_interval: int = 3, seed: int = 0) -> VerificationReport:
        check_is_fitted(self, "solution_")
        return verify(self.solution_, self.network_, samples_per_interval, seed)
