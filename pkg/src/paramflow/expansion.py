"""Time-expanded (time-space) view of a dynamic network at a fixed parameter."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, NamedTuple

from .network import DynamicNetwork, Number, check_lambda, lower_bound_at


class NTP(NamedTuple):
    """A node-time pair ``(node, theta)``."""

    node: int
    theta: int


@dataclass(frozen=True)
class ExpandedArc:
    tail: NTP
    head: NTP
    upper: Fraction
    lower: Fraction
    origin: tuple[int, int]  # (arc index, departure theta)


@dataclass(frozen=True)
class TimeExpandedNetwork:
    n: int
    horizon: int
    source: int
    sink: int
    arcs: tuple[ExpandedArc, ...]

    @property
    def num_ntps(self) -> int:
        return self.n * (self.horizon + 1)

    def index(self, ntp: NTP) -> int:
        return (ntp.node - 1) * (self.horizon + 1) + ntp.theta

    def ntp(self, index: int) -> NTP:
        node, theta = divmod(index, self.horizon + 1)
        return NTP(node + 1, theta)

    @property
    def ntps(self) -> list[NTP]:
        return [self.ntp(i) for i in range(self.num_ntps)]

    @property
    def sources(self) -> list[NTP]:
        return [NTP(self.source, theta) for theta in range(self.horizon + 1)]

    @property
    def sinks(self) -> list[NTP]:
        return [NTP(self.sink, theta) for theta in range(self.horizon + 1)]


def expand(
    net: DynamicNetwork,
    lam: Number,
    lower: Mapping[tuple[int, int], Fraction] | None = None,
) -> TimeExpandedNetwork:
    """Build the time-space network with lower bounds evaluated at ``lam``.

    Copies departing at ``theta`` with ``theta + h > T`` are left out, which is
    how the zero-flow rule for late departures is enforced. ``lower`` overrides
    the per-copy lower bounds (used for the parameter-free bounds ``l'``).
    """
    lam = check_lambda(lam, net.lambda_max)
    arcs = []
    for k, theta in net.copies():
        arc = net.arcs[k]
        lo = lower[k, theta] if lower is not None else lower_bound_at(arc, theta, lam)
        arcs.append(ExpandedArc(
            tail=NTP(arc.tail, theta),
            head=NTP(arc.head, arc.arrival(theta)),
            upper=arc.u[theta],
            lower=lo,
            origin=(k, theta),
        ))
    return TimeExpandedNetwork(net.n, net.horizon, net.source, net.sink, tuple(arcs))
