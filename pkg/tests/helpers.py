"""Shared builders and independent oracles for the test suite."""

from fractions import Fraction
from pathlib import Path

import numpy as np
from scipy.optimize import linprog

from paramflow import io
from paramflow.expansion import expand
from paramflow.network import Arc, DynamicNetwork

DATA = Path(__file__).resolve().parent.parent / "data"

# worked example: (tail, head, h, l0, L, feasible flow), u = 5 everywhere
EXAMPLE_ARCS = [
    (1, 2, [1, 2, 2, 2], [3, 0, 0, 0], [-2, 0, 0, 0], [5, 0, 0, 0]),
    (1, 3, [1, 1, 2, 2], [1, 1, 0, 0], [4, 1, 0, 0], [5, 2, 0, 0]),
    (2, 3, [1, 1, 1, 1], [0, 0, 0, 0], [0, 3, 0, 0], [0, 3, 0, 0]),
    (2, 4, [1, 1, 2, 2], [0, 0, 0, 0], [0, 0, 0, 0], [0, 2, 0, 0]),
    (3, 4, [2, 2, 1, 1], [0, 2, 2, 0], [0, 0, -2, 0], [0, 5, 5, 0]),
]


def make_example_network() -> DynamicNetwork:
    arcs = [Arc(i, j, h, [5] * 4, l0, L) for i, j, h, l0, L, _ in EXAMPLE_ARCS]
    return DynamicNetwork(4, arcs, source=1, sink=4, horizon=3, lambda_max=1)


def make_example_flow() -> dict:
    return {(k, theta): Fraction(row[5][theta]) for k, row in enumerate(EXAMPLE_ARCS) for theta in range(4)}


def load_example_files():
    net = io.load_network(DATA / "example_network.json")
    return net, io.flow_from_dict(io.read_json(DATA / "example_flow.json"), net)


def single_arc(h=1, u=5, l0=0, L=0, T=1, lambda_max=1):
    arc = Arc(1, 2, [h] * (T + 1), [u] * (T + 1), [l0] * (T + 1), [L] * (T + 1))
    return DynamicNetwork(2, [arc], 1, 2, T, lambda_max)


def ntps(path):
    return [tuple(v) for v in path.ntps]


def node_imbalance(net, flow):
    """Net outflow per NTP of a ``(arc, theta) -> value`` flow."""
    out = {}
    for (k, theta), f in flow.items():
        arc = net.arcs[k]
        tail, head = (arc.tail, theta), (arc.head, arc.arrival(theta))
        out[tail] = out.get(tail, 0) + f
        out[head] = out.get(head, 0) - f
    return out


def lp_min_flow(net, lam):
    """Minimum source outflow via a float LP (HiGHS); ``None`` if infeasible."""
    tnet = expand(net, lam)
    m = len(tnet.arcs)
    if m == 0:
        return 0.0
    c = np.zeros(m)
    for k, a in enumerate(tnet.arcs):
        c[k] += (a.tail.node == net.source) - (a.head.node == net.source)
    rows = []
    for v in tnet.ntps:
        if v.node in (net.source, net.sink):
            continue
        row = np.array([(a.tail == v) - (a.head == v) for a in tnet.arcs], dtype=float)
        if row.any():
            rows.append(row)
    res = linprog(
        c,
        A_eq=np.array(rows) if rows else None,
        b_eq=np.zeros(len(rows)) if rows else None,
        bounds=[(float(a.lower), float(a.upper)) for a in tnet.arcs],
        method="highs",
    )
    return res.fun if res.status == 0 else None
