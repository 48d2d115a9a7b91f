"""Successive quickest-path flow decreases on one parameter subinterval."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .labels import extract_path, label_setting
from .network import DynamicNetwork
from .residual import (
    LEXICOGRAPHIC,
    DynPath,
    ResidualState,
    SolverInvariantError,
    build_residual,
)


@dataclass(frozen=True)
class Augmentation:
    path: DynPath
    alpha: Fraction
    beta: Fraction
    lambda_k: Fraction
    lambda_next: Fraction  # subinterval end after this decrease

    @property
    def capacity(self) -> tuple[Fraction, Fraction]:
        """Path capacity as ``(intercept, slope)`` in absolute lambda."""
        return self.alpha - self.beta * self.lambda_k, self.beta


@dataclass
class IntervalResult:
    lambda_lo: Fraction
    lambda_hi: Fraction
    flow: dict[tuple[int, int], tuple[Fraction, Fraction]]
    augmentations: list[Augmentation] = field(default_factory=list)

    def flow_at(self, lam: Fraction) -> dict[tuple[int, int], Fraction]:
        off = Fraction(lam) - self.lambda_lo
        return {key: f + F * off for key, (f, F) in self.flow.items()}


def path_coefficients(path: DynPath, state: ResidualState) -> tuple[Fraction, Fraction]:
    """Smallest ``alpha`` on the path, then the smallest ``beta`` among arcs attaining it."""
    if not path:
        raise ValueError("empty path")
    coeffs = [state.coeff(hop) for hop in path]
    alpha = min(c.alpha for c in coeffs)
    beta = min(c.beta for c in coeffs if c.alpha == alpha)
    return alpha, beta


def breakpoint_candidate(
    path: DynPath,
    state: ResidualState,
    alpha: Fraction,
    beta: Fraction,
    lam_k: Fraction,
    lam_cur: Fraction,
) -> Fraction:
    """Where another path arc's capacity drops below the path capacity, capped at ``lam_cur``.

    Must be called before the path is augmented.
    """
    for hop in path:
        c = state.coeff(hop)
        if c.beta < beta:
            lam_cur = min(lam_cur, lam_k + (c.alpha - alpha) / (beta - c.beta))
    return lam_cur


def default_augmentation_cap(net: DynamicNetwork) -> int:
    copies = sum(1 for _ in net.copies())
    return 100 * (2 * copies + 1) ** 2


def qdp(
    net: DynamicNetwork,
    base_flow: Mapping[tuple[int, int], Fraction],
    lam_k: Fraction,
    rule: str = LEXICOGRAPHIC,
    max_augmentations: int | None = None,
) -> IntervalResult:
    """Decrease ``base_flow`` along quickest residual paths until none is left.

    Returns the subinterval ``[lam_k, lam_next]`` on which the resulting
    affine flow is minimal.
    """
    lam_k = Fraction(lam_k)
    if not lam_k < net.lambda_max:
        raise ValueError(f"lambda_k = {lam_k} must be below lambda_max = {net.lambda_max}")
    cap = max_augmentations or default_augmentation_cap(net)
    state = build_residual(net, base_flow, lam_k)
    lam_next = net.lambda_max
    augmentations = []
    labels = label_setting(state, rule)
    while labels.reachable:
        if len(augmentations) >= cap:
            raise SolverInvariantError(f"more than {cap} augmentations at lambda_k = {lam_k}")
        path = extract_path(labels)
        alpha, beta = path_coefficients(path, state)
        lam_next = breakpoint_candidate(path, state, alpha, beta, lam_k, lam_next)
        state.augment(path, alpha, beta)
        augmentations.append(Augmentation(path, alpha, beta, lam_k, lam_next))
        labels = label_setting(state, rule)
    if not lam_next > lam_k:
        raise SolverInvariantError(f"no progress: lambda_next = {lam_next} <= lambda_k = {lam_k}")
    return IntervalResult(lam_k, lam_next, state.flow_coefficients(), augmentations)
