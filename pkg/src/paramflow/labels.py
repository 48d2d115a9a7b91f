"""Quickest residual paths by backward transit-time labelling.

Labels grow backward from every sink copy. Reverse residual arcs have
negative transit times, so an NTP may be relabelled and re-queued after it
was popped; the search is label-correcting. Any residual cycle returns to its
starting time step and hence has total transit zero, so it terminates.
"""

from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass, field

from .expansion import NTP
from .residual import LEXICOGRAPHIC, DynPath, Hop, ResidualState, SolverInvariantError

INF = math.inf


@dataclass
class LabelState:
    source: int
    sink: int
    horizon: int
    tau: dict[NTP, int] = field(default_factory=dict)
    succ: dict[NTP, Hop] = field(default_factory=dict)
    tau_bar: float = INF
    theta_bar: int | None = None

    @property
    def reachable(self) -> bool:
        """True while some source copy still reaches a sink copy."""
        return self.tau_bar != INF

    def label(self, ntp: NTP) -> float:
        return self.tau.get(ntp, INF)

    def successor(self, ntp: NTP) -> NTP | None:
        hop = self.succ.get(ntp)
        return hop.head if hop else None


def label_setting(state: ResidualState, rule: str = LEXICOGRAPHIC) -> LabelState:
    net = state.net
    s, t = net.source, net.sink
    labels = LabelState(s, t, net.horizon)
    tau = labels.tau
    # equal labels leave the queue in insertion order
    order = itertools.count()
    heap = []
    for theta in net.times:
        tau[NTP(t, theta)] = 0
        heap.append((0, next(order), NTP(t, theta)))
    heapq.heapify(heap)

    while heap:
        d, _, (j, vartheta) = heapq.heappop(heap)
        if d != tau[NTP(j, vartheta)]:
            continue
        for hop in state.arcs_into(NTP(j, vartheta), rule):
            pred = hop.tail
            if pred.node == t:
                continue
            cand = d + hop.transit
            if cand < tau.get(pred, INF):
                tau[pred] = cand
                labels.succ[pred] = hop
                heapq.heappush(heap, (cand, next(order), pred))

    for theta in net.times:
        if labels.label(NTP(s, theta)) < labels.tau_bar:
            labels.tau_bar = tau[NTP(s, theta)]
            labels.theta_bar = theta
    return labels


def extract_path(labels: LabelState) -> DynPath:
    """Follow successors from ``(s, theta_bar)`` to the first sink copy."""
    if not labels.reachable:
        raise SolverInvariantError("no source copy reaches a sink copy")
    current = NTP(labels.source, labels.theta_bar)
    visited = {current}
    hops = []
    while current.node != labels.sink:
        hop = labels.succ.get(current)
        if hop is None:
            raise SolverInvariantError(f"successor chain broken at {tuple(current)}")
        current = hop.head
        if current in visited:
            raise SolverInvariantError(f"successor chain revisits {tuple(current)}")
        visited.add(current)
        hops.append(hop)
    return DynPath(hops)
