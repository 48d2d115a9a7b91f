"""Parametric minimum flow over time on ``[0, lambda_max]``.

A single flow that is feasible for every parameter value is computed first.
Each subinterval then restarts from that flow at its left end and decreases
it along quickest residual paths; the subinterval ends where some path
capacity would stop being affine.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .expansion import expand
from .network import DynamicNetwork, Number, as_fraction, check_lambda, check_network, tight_lower_bounds
from .qdp import IntervalResult, qdp
from .residual import LEXICOGRAPHIC, RESIDUAL_RULES, SolverInvariantError
from .static_flow import InfeasibleError, StaticFlow, feasible_flow

log = logging.getLogger(__name__)

__all__ = [
    "InfeasibleError",
    "ParametricSolution",
    "ValuePiece",
    "default_interval_cap",
    "evaluate_value",
    "initial_flow",
    "solve",
    "tight_lower_bounds",
]


@dataclass(frozen=True)
class ValuePiece:
    lambda_lo: Fraction
    lambda_hi: Fraction
    v: Fraction  # value at lambda_lo
    V: Fraction  # slope

    def at(self, lam: Fraction) -> Fraction:
        return self.v + self.V * (lam - self.lambda_lo)


@dataclass
class ParametricSolution:
    network: DynamicNetwork
    base_flow: dict[tuple[int, int], Fraction]
    breakpoints: tuple[Fraction, ...]
    intervals: list[IntervalResult]
    pieces: list[ValuePiece]

    @property
    def K(self) -> int:
        return len(self.breakpoints) - 1

    def value(self, lam: Number) -> Fraction:
        return evaluate_value(self, lam)


def source_value(net: DynamicNetwork, flow: Mapping[tuple[int, int], Fraction]) -> Fraction:
    """Net outflow of all source copies."""
    total = Fraction(0)
    for (k, theta), f in flow.items():
        arc = net.arcs[k]
        if arc.tail == net.source:
            total += f
        if arc.head == net.source:
            total -= f
    return total


def _value_piece(net: DynamicNetwork, interval: IntervalResult) -> ValuePiece:
    v = source_value(net, {key: f for key, (f, _) in interval.flow.items()})
    V = source_value(net, {key: F for key, (_, F) in interval.flow.items()})
    return ValuePiece(interval.lambda_lo, interval.lambda_hi, v, V)


def initial_flow(net: DynamicNetwork) -> dict[tuple[int, int], Fraction]:
    """A flow over time feasible for every parameter value, or ``InfeasibleError``."""
    tnet = expand(net, 0, lower=tight_lower_bounds(net))
    flow = feasible_flow(tnet)
    return {arc.origin: f for arc, f in zip(tnet.arcs, flow.values)}


def _check_base_flow(net: DynamicNetwork, base_flow: Mapping) -> dict[tuple[int, int], Fraction]:
    flow = {key: as_fraction(base_flow.get(key, 0)) for key in net.copies()}
    extra = [key for key, f in base_flow.items() if key not in flow and as_fraction(f) != 0]
    if extra:
        raise ValueError(f"base flow is nonzero on copies that cannot arrive by T: {extra}")
    tnet = expand(net, 0, lower=tight_lower_bounds(net))
    problems = StaticFlow(tnet, [flow[a.origin] for a in tnet.arcs]).violations()
    if problems:
        raise ValueError("base flow is not feasible for all lambda:\n" + "\n".join(problems))
    return flow


def default_interval_cap(net: DynamicNetwork) -> int:
    """Generous bound on the number of subintervals, used only as a safety stop."""
    return 50 * (2 * sum(1 for _ in net.copies()) + 1) ** 2


def solve(
    net: DynamicNetwork,
    base_flow: Mapping[tuple[int, int], Number] | None = None,
    residual_rule: str = LEXICOGRAPHIC,
    max_intervals: int | None = None,
) -> ParametricSolution:
    """Breakpoints, per-interval affine minimum flows and the piecewise-linear value function.

    ``base_flow`` maps ``(arc index, theta)`` to a flow feasible for every
    lambda; when omitted one is computed. Raises ``InfeasibleError`` if no
    such flow exists.
    """
    check_network(net)
    if residual_rule not in RESIDUAL_RULES:
        raise ValueError(f"residual_rule must be one of {RESIDUAL_RULES}, got {residual_rule!r}")
    base = initial_flow(net) if base_flow is None else _check_base_flow(net, base_flow)
    cap = max_intervals or default_interval_cap(net)

    lam = Fraction(0)
    breakpoints = [lam]
    intervals = []
    while lam < net.lambda_max:
        if len(intervals) >= cap:
            raise SolverInvariantError(f"more than {cap} parameter subintervals")
        result = qdp(net, base, lam, residual_rule)
        log.debug("interval [%s, %s]: %d decreases", lam, result.lambda_hi, len(result.augmentations))
        intervals.append(result)
        lam = result.lambda_hi
        breakpoints.append(lam)

    pieces = [_value_piece(net, iv) for iv in intervals]
    return ParametricSolution(net, base, tuple(breakpoints), intervals, pieces)


def evaluate_value(sol: ParametricSolution, lam: Number, piece: int | None = None) -> Fraction:
    """Minimum flow value at ``lam``.

    At an interior breakpoint either adjacent piece may be used; pass
    ``piece`` to pick one explicitly.
    """
    lam = check_lambda(lam, sol.network.lambda_max)
    if piece is not None:
        p = sol.pieces[piece]
        if not p.lambda_lo <= lam <= p.lambda_hi:
            raise ValueError(f"lambda = {lam} outside piece {piece} [{p.lambda_lo}, {p.lambda_hi}]")
        return p.at(lam)
    for p in sol.pieces:
        if p.lambda_lo <= lam <= p.lambda_hi:
            return p.at(lam)
    raise ValueError(f"no value piece covers lambda = {lam}")
