"""Parametric residual network for flow decreases.

On a parameter subinterval starting at ``lam_k`` every residual capacity is an
affine function ``alpha + beta * (lam - lam_k)`` and every arc copy carries an
affine flow ``f + F * (lam - lam_k)``. A *forward* residual arc follows an
arc copy and has capacity ``flow - lower`` (flow can be decreased); a
*reverse* residual arc goes against it, back in time, with capacity
``upper - flow``.

Both residual arcs of a copy are keyed by the copy itself, ``(arc index,
departure theta)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping

from .expansion import NTP
from .network import DynamicNetwork

STRICT = "strict"
LEXICOGRAPHIC = "lexicographic"
RESIDUAL_RULES = (STRICT, LEXICOGRAPHIC)


class SolverInvariantError(RuntimeError):
    """An internal consistency check of the parametric solver failed."""


class Affine:
    """Mutable ``alpha + beta * (lam - lam_k)`` pair."""

    __slots__ = ("alpha", "beta")

    def __init__(self, alpha: Fraction, beta: Fraction):
        self.alpha = Fraction(alpha)
        self.beta = Fraction(beta)

    def at(self, offset: Fraction) -> Fraction:
        return self.alpha + self.beta * offset

    def __iter__(self):
        return iter((self.alpha, self.beta))

    def __eq__(self, other):
        if isinstance(other, Affine):
            return (self.alpha, self.beta) == (other.alpha, other.beta)
        if isinstance(other, tuple):
            return (self.alpha, self.beta) == other
        return NotImplemented

    def __repr__(self):
        return f"Affine({self.alpha}, {self.beta})"


def is_positive(coeff: Affine, rule: str = LEXICOGRAPHIC) -> bool:
    """Whether a residual arc may be traversed.

    ``strict`` requires positive capacity at ``lam_k``. ``lexicographic``
    also admits ``alpha == 0, beta > 0``, i.e. capacity that is positive just
    to the right of ``lam_k``.
    """
    if coeff.alpha > 0:
        return True
    return rule == LEXICOGRAPHIC and coeff.alpha == 0 and coeff.beta > 0


@dataclass(frozen=True)
class Hop:
    tail: NTP
    head: NTP
    forward: bool
    arc: int
    theta: int  # departure time of the underlying arc copy
    transit: int

    @property
    def key(self) -> tuple[int, int]:
        return self.arc, self.theta


class DynPath(tuple):
    """Consecutive residual hops from a source copy to a sink copy."""

    @property
    def ntps(self) -> tuple[NTP, ...]:
        if not self:
            return ()
        return (self[0].tail,) + tuple(hop.head for hop in self)

    @property
    def transit(self) -> int:
        return sum(hop.transit for hop in self)

    def __repr__(self):
        return "DynPath(" + ",".join(f"({v.node},{v.theta})" for v in self.ntps) + ")"


class ResidualState:
    """Residual coefficients and flow coefficients of one subinterval."""

    def __init__(self, net: DynamicNetwork, lam_k: Fraction):
        self.net = net
        self.lam_k = Fraction(lam_k)
        self.forward: dict[tuple[int, int], Affine] = {}
        self.reverse: dict[tuple[int, int], Affine] = {}
        self.flow: dict[tuple[int, int], Affine] = {}
        # residual arcs grouped by the NTP they point into
        self._fwd_into: dict[NTP, list[tuple[int, int]]] = {}
        self._rev_into: dict[NTP, list[tuple[int, int]]] = {}
        for k, theta in net.copies():
            arc = net.arcs[k]
            self._fwd_into.setdefault(NTP(arc.head, arc.arrival(theta)), []).append((k, theta))
            self._rev_into.setdefault(NTP(arc.tail, theta), []).append((k, theta))

    def coeff(self, hop: Hop) -> Affine:
        return (self.forward if hop.forward else self.reverse)[hop.key]

    def arcs_into(self, ntp: NTP, rule: str = LEXICOGRAPHIC) -> Iterator[Hop]:
        """Traversable residual arcs ending at ``ntp``: forward ones first, then reverse."""
        arcs = self.net.arcs
        for k, theta in self._fwd_into.get(ntp, ()):
            if is_positive(self.forward[k, theta], rule):
                arc = arcs[k]
                yield Hop(NTP(arc.tail, theta), ntp, True, k, theta, arc.h[theta])
        for k, theta in self._rev_into.get(ntp, ()):
            if is_positive(self.reverse[k, theta], rule):
                arc = arcs[k]
                yield Hop(NTP(arc.head, arc.arrival(theta)), ntp, False, k, theta, -arc.h[theta])

    def augment(self, path: DynPath, alpha: Fraction, beta: Fraction) -> None:
        """Decrease flow along ``path`` by ``alpha + beta * (lam - lam_k)``."""
        for hop in path:
            key = hop.key
            if hop.forward:
                used, mate, sign = self.forward[key], self.reverse[key], -1
            else:
                used, mate, sign = self.reverse[key], self.forward[key], 1
            used.alpha -= alpha
            used.beta -= beta
            mate.alpha += alpha
            mate.beta += beta
            flow = self.flow[key]
            flow.alpha += sign * alpha
            flow.beta += sign * beta
            if used.alpha < 0:
                raise SolverInvariantError(f"negative residual capacity on {hop} after augmenting")

    def flow_coefficients(self) -> dict[tuple[int, int], tuple[Fraction, Fraction]]:
        return {key: (c.alpha, c.beta) for key, c in self.flow.items()}


def residual_arcs_into(state: ResidualState, node: int, theta: int, rule: str = LEXICOGRAPHIC):
    """``(predecessor NTP, hop, coefficients)`` for every traversable arc into ``(node, theta)``."""
    for hop in state.arcs_into(NTP(node, theta), rule):
        yield hop.tail, hop, state.coeff(hop)


def build_residual(
    net: DynamicNetwork,
    base_flow: Mapping[tuple[int, int], Fraction],
    lam_k: Fraction,
) -> ResidualState:
    """Residual coefficients of ``base_flow`` with the subinterval anchored at ``lam_k``."""
    state = ResidualState(net, lam_k)
    for k, theta in net.copies():
        arc = net.arcs[k]
        f = Fraction(base_flow.get((k, theta), 0))
        L = arc.L[theta]
        alpha = f - arc.l0[theta] - lam_k * L
        if alpha < 0:
            raise SolverInvariantError(
                f"infeasible base flow at lambda = {lam_k}: arc #{k}, theta = {theta}"
            )
        state.forward[k, theta] = Affine(alpha, -L)
        state.reverse[k, theta] = Affine(arc.u[theta] - f, 0)
        state.flow[k, theta] = Affine(f, 0)
    return state
