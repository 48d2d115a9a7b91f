"""Static flows on a time-expanded network at a fixed parameter value.

This is the classical, non-parametric route: lower-bound feasibility through
a super-source/super-sink reduction, breadth-first augmenting-path maximum
flow, and minimum flow as a feasible flow minus the maximum flow pushed back
from the sink copies to the source copies. The parametric solver never calls
into this module except to obtain its initial feasible flow, so it doubles as
an independent oracle.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .expansion import NTP, TimeExpandedNetwork


class InfeasibleError(Exception):
    """No flow satisfies the lower and upper bounds."""


@dataclass
class StaticFlow:
    tnet: TimeExpandedNetwork
    values: list[Fraction]

    def imbalance(self) -> list[Fraction]:
        """Net outflow of every NTP, indexed like ``tnet.index``."""
        out = [Fraction(0)] * self.tnet.num_ntps
        for arc, f in zip(self.tnet.arcs, self.values):
            out[self.tnet.index(arc.tail)] += f
            out[self.tnet.index(arc.head)] -= f
        return out

    @property
    def value(self) -> Fraction:
        imb = self.imbalance()
        return sum((imb[self.tnet.index(v)] for v in self.tnet.sources), Fraction(0))

    def violations(self) -> list[str]:
        """Bound and conservation violations; empty for a feasible flow."""
        problems = []
        for arc, f in zip(self.tnet.arcs, self.values):
            if not arc.lower <= f <= arc.upper:
                problems.append(f"arc {arc.origin}: {arc.lower} <= {f} <= {arc.upper} fails")
        free = {self.tnet.source, self.tnet.sink}
        for i, b in enumerate(self.imbalance()):
            ntp = self.tnet.ntp(i)
            if ntp.node not in free and b != 0:
                problems.append(f"NTP {tuple(ntp)}: imbalance {b}")
        return problems


class _FlowGraph:
    """Residual graph with paired edges; edge ``e ^ 1`` is the mate of ``e``."""

    def __init__(self, num_nodes: int):
        self.adj: list[list[int]] = [[] for _ in range(num_nodes)]
        self.to: list[int] = []
        self.cap: list[Fraction] = []

    def add_node(self) -> int:
        self.adj.append([])
        return len(self.adj) - 1

    def add_edge(self, u: int, v: int, cap: Fraction, back: Fraction = Fraction(0)) -> int:
        e = len(self.to)
        self.to += [v, u]
        self.cap += [Fraction(cap), Fraction(back)]
        self.adj[u].append(e)
        self.adj[v].append(e + 1)
        return e

    def shuffle(self, rng: random.Random):
        for edges in self.adj:
            rng.shuffle(edges)

    def _bfs(self, s: int, t: int) -> list[int] | None:
        parent_edge = [-1] * len(self.adj)
        seen = [False] * len(self.adj)
        seen[s] = True
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for e in self.adj[u]:
                v = self.to[e]
                if not seen[v] and self.cap[e] > 0:
                    seen[v] = True
                    parent_edge[v] = e
                    if v == t:
                        path = []
                        while v != s:
                            e = parent_edge[v]
                            path.append(e)
                            v = self.to[e ^ 1]
                        return path
                    queue.append(v)
        return None

    def max_flow(self, s: int, t: int) -> Fraction:
        total = Fraction(0)
        while (path := self._bfs(s, t)) is not None:
            delta = min(self.cap[e] for e in path)
            for e in path:
                self.cap[e] -= delta
                self.cap[e ^ 1] += delta
            total += delta
        return total


def _big(tnet: TimeExpandedNetwork) -> Fraction:
    return sum((a.upper for a in tnet.arcs), Fraction(1))


def max_flow(
    tnet: TimeExpandedNetwork,
    sources: Iterable[NTP],
    sinks: Iterable[NTP],
    start: StaticFlow | Sequence[Fraction] | None = None,
    rng: random.Random | None = None,
) -> StaticFlow:
    """Augment ``start`` until no residual path leads from ``sources`` to ``sinks``.

    Residual capacities are ``upper - f`` along an arc and ``f - lower``
    against it, so lower bounds satisfied by ``start`` stay satisfied.
    Passing ``rng`` shuffles adjacency lists to vary the path order.
    """
    if start is None:
        values = [Fraction(0)] * len(tnet.arcs)
    else:
        values = list(start.values if isinstance(start, StaticFlow) else start)
    g = _FlowGraph(tnet.num_ntps)
    edges = [
        g.add_edge(tnet.index(a.tail), tnet.index(a.head), a.upper - f, f - a.lower)
        for a, f in zip(tnet.arcs, values)
    ]
    big = _big(tnet)
    src, dst = g.add_node(), g.add_node()
    for v in set(sources):
        g.add_edge(src, tnet.index(v), big)
    for v in set(sinks):
        g.add_edge(tnet.index(v), dst, big)
    if rng is not None:
        g.shuffle(rng)
    g.max_flow(src, dst)
    return StaticFlow(tnet, [a.upper - g.cap[e] for a, e in zip(tnet.arcs, edges)])


def feasible_flow(tnet: TimeExpandedNetwork, rng: random.Random | None = None) -> StaticFlow:
    """Some flow with ``lower <= f <= upper`` that conserves at every non-terminal NTP.

    Raises ``InfeasibleError`` when there is none.
    """
    for a in tnet.arcs:
        if a.lower > a.upper:
            raise InfeasibleError(f"arc {a.origin}: lower bound {a.lower} exceeds capacity {a.upper}")

    # circulation on f - lower; terminal copies trade imbalance through a hub
    g = _FlowGraph(tnet.num_ntps)
    excess = [Fraction(0)] * tnet.num_ntps
    edges = []
    for a in tnet.arcs:
        u, v = tnet.index(a.tail), tnet.index(a.head)
        edges.append(g.add_edge(u, v, a.upper - a.lower))
        excess[v] += a.lower
        excess[u] -= a.lower
    big = _big(tnet) + sum((a.lower for a in tnet.arcs), Fraction(0))
    hub = g.add_node()
    for v in tnet.sources + tnet.sinks:
        g.add_edge(tnet.index(v), hub, big, big)
    ss, tt = g.add_node(), g.add_node()
    required = Fraction(0)
    for v, b in enumerate(excess):
        if b > 0:
            g.add_edge(ss, v, b)
            required += b
        elif b < 0:
            g.add_edge(v, tt, -b)
    if rng is not None:
        g.shuffle(rng)
    if g.max_flow(ss, tt) < required:
        raise InfeasibleError("lower bounds cannot be met by any flow over time")
    return StaticFlow(
        tnet, [a.lower + (a.upper - a.lower - g.cap[e]) for a, e in zip(tnet.arcs, edges)]
    )


def min_flow(tnet: TimeExpandedNetwork, rng: random.Random | None = None) -> tuple[Fraction, StaticFlow]:
    """Minimum total net outflow of the source copies over all feasible flows."""
    flow = feasible_flow(tnet, rng)
    flow = max_flow(tnet, tnet.sinks, tnet.sources, start=flow, rng=rng)
    return flow.value, flow
