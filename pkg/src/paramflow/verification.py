"""Cross-checking a parametric solution against fixed-lambda static solves."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .expansion import NTP, expand
from .network import Arc, DynamicNetwork
from .solver import ParametricSolution
from .static_flow import min_flow


@dataclass(frozen=True)
class Sample:
    lam: Fraction
    piece: int
    parametric: Fraction
    oracle: Fraction

    @property
    def match(self) -> bool:
        return self.parametric == self.oracle


@dataclass
class VerificationReport:
    samples: list[Sample] = field(default_factory=list)

    @property
    def mismatches(self) -> list[Sample]:
        return [s for s in self.samples if not s.match]

    @property
    def all_match(self) -> bool:
        return not self.mismatches


def random_rational(rng: random.Random, lo: Fraction, hi: Fraction, max_denominator: int = 1000) -> Fraction:
    """A rational strictly inside ``(lo, hi)`` with small denominator when possible."""
    mid = (lo + hi) / 2
    for _ in range(20):
        x = Fraction(lo + (hi - lo) * Fraction(rng.random())).limit_denominator(max_denominator)
        if lo < x < hi:
            return x
    return mid


def sample_points(sol: ParametricSolution, extra_samples_per_interval: int = 3, seed: int = 0):
    """``(piece index, lambda)`` pairs: both ends, midpoint and random points of every piece."""
    rng = random.Random(seed)
    points = []
    for i, p in enumerate(sol.pieces):
        lams = [p.lambda_lo, (p.lambda_lo + p.lambda_hi) / 2, p.lambda_hi]
        lams += [random_rational(rng, p.lambda_lo, p.lambda_hi) for _ in range(extra_samples_per_interval)]
        points += [(i, lam) for lam in lams]
    return points


def verify(
    sol: ParametricSolution,
    net: DynamicNetwork | None = None,
    extra_samples_per_interval: int = 3,
    seed: int = 0,
) -> VerificationReport:
    """Compare every value piece with exact static minimum flows.

    Interior breakpoints are checked through both adjacent pieces.
    """
    net = net or sol.network
    oracle: dict[Fraction, Fraction] = {}
    report = VerificationReport()
    for i, lam in sample_points(sol, extra_samples_per_interval, seed):
        if lam not in oracle:
            oracle[lam] = min_flow(expand(net, lam))[0]
        report.samples.append(Sample(lam, i, sol.pieces[i].at(lam), oracle[lam]))
    return report


def _random_walk(rng, net, out_copies, start, max_steps=12):
    current, hops = start, []
    for _ in range(max_steps):
        options = out_copies.get(current, [])
        stop_ok = current.node in (net.source, net.sink) and hops
        if not options or (stop_ok and rng.random() < 0.4):
            break
        k, theta = rng.choice(options)
        hops.append((k, theta))
        arc = net.arcs[k]
        current = NTP(arc.head, arc.arrival(theta))
    if hops and current.node in (net.source, net.sink):
        return hops
    return None


def random_network(
    rng: random.Random,
    max_nodes: int = 6,
    max_arcs: int = 10,
    max_horizon: int = 5,
    max_transit: int = 3,
    lambda_max: Fraction = Fraction(1),
) -> tuple[DynamicNetwork, dict[tuple[int, int], Fraction]]:
    """A random valid network together with a flow feasible for every lambda.

    The flow is built first as a sum of random walks between terminal copies;
    capacities and both ends of each lower-bound line are then drawn around it.
    """
    n = rng.randint(2, max_nodes)
    T = rng.randint(1, max_horizon)
    pairs = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
    rng.shuffle(pairs)
    m = rng.randint(1, max_arcs)
    chosen: list[tuple[int, int]] = []
    for i, j in pairs:
        if len(chosen) >= m:
            break
        if (j, i) not in chosen:
            chosen.append((i, j))
    transit = {
        pair: [min(rng.choice((0, 1, 1, 1, 2, 2, 3)), max_transit) for _ in range(T + 1)]
        for pair in chosen
    }

    skeleton = DynamicNetwork(
        n,
        [Arc(i, j, transit[i, j], [0] * (T + 1), [0] * (T + 1), [0] * (T + 1)) for i, j in chosen],
        1, n, T, lambda_max,
    )
    out_copies: dict[NTP, list[tuple[int, int]]] = {}
    for k, theta in skeleton.copies():
        out_copies.setdefault(NTP(skeleton.arcs[k].tail, theta), []).append((k, theta))

    flow = {key: 0 for key in skeleton.copies()}
    terminals = [NTP(node, theta) for node in (1, n) for theta in range(T + 1)]
    for _ in range(rng.randint(1, 3 * len(chosen))):
        walk = _random_walk(rng, skeleton, out_copies, rng.choice(terminals))
        if walk:
            amount = rng.randint(1, 3)
            for key in walk:
                flow[key] += amount

    arcs = []
    for k, (i, j) in enumerate(chosen):
        u, l0, L = [], [], []
        for theta in range(T + 1):
            f = flow.get((k, theta))
            if f is None:
                u.append(rng.randint(0, 5))
                l0.append(0)
                L.append(0)
                continue
            u.append(f + rng.randint(0, 3))
            lo_start = rng.randint(0, f)
            lo_end = rng.choice([rng.randint(0, f), f, 0])
            l0.append(lo_start)
            L.append(Fraction(lo_end - lo_start) / lambda_max)
        arcs.append(Arc(i, j, transit[i, j], u, l0, L))
    net = DynamicNetwork(n, arcs, 1, n, T, lambda_max)
    return net, {key: Fraction(f) for key, f in flow.items()}
