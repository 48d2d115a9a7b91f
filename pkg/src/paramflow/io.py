"""JSON network/flow/solution documents and the value-function CSV.

Rationals are written as ``"p/q"`` strings, or bare integers when the
denominator is 1.
"""

from __future__ import annotations

import csv
import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Mapping

from .network import Arc, DynamicNetwork, InvalidNetworkError, as_fraction
from .solver import ParametricSolution, ValuePiece, evaluate_value
from .verification import VerificationReport


def rational_to_json(x: Fraction) -> int | str:
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _rational(value: Any, where: str) -> Fraction:
    if isinstance(value, float):
        raise InvalidNetworkError(f"{where}: floats are not accepted, write {value!r} as 'p/q'")
    try:
        return as_fraction(value)
    except (TypeError, ValueError) as exc:
        raise InvalidNetworkError(f"{where}: {exc}") from None


def _int(value: Any, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InvalidNetworkError(f"{where}: expected an integer, got {value!r}")
    return value


def _list(doc: Mapping, key: str, where: str) -> list:
    if key not in doc:
        raise InvalidNetworkError(f"{where}: missing field {key!r}")
    value = doc[key]
    if not isinstance(value, list):
        raise InvalidNetworkError(f"{where}.{key}: expected a list")
    return value


def network_from_dict(doc: Mapping) -> DynamicNetwork:
    """Parse a network document; structural checks are left to ``validate_network``."""
    if not isinstance(doc, Mapping):
        raise InvalidNetworkError("network document must be a JSON object")
    for key in ("n", "source", "sink", "T", "arcs"):
        if key not in doc:
            raise InvalidNetworkError(f"network: missing field {key!r}")
    arcs = []
    for k, a in enumerate(_list(doc, "arcs", "network")):
        where = f"arcs[{k}]"
        if not isinstance(a, Mapping):
            raise InvalidNetworkError(f"{where}: expected an object")
        for key in ("from", "to"):
            if key not in a:
                raise InvalidNetworkError(f"{where}: missing field {key!r}")
        arcs.append(Arc(
            _int(a["from"], f"{where}.from"),
            _int(a["to"], f"{where}.to"),
            [_int(v, f"{where}.h[{i}]") for i, v in enumerate(_list(a, "h", where))],
            [_rational(v, f"{where}.u[{i}]") for i, v in enumerate(_list(a, "u", where))],
            [_rational(v, f"{where}.l0[{i}]") for i, v in enumerate(_list(a, "l0", where))],
            [_rational(v, f"{where}.L[{i}]") for i, v in enumerate(_list(a, "L", where))],
        ))
    return DynamicNetwork(
        n=_int(doc["n"], "n"),
        arcs=arcs,
        source=_int(doc["source"], "source"),
        sink=_int(doc["sink"], "sink"),
        horizon=_int(doc["T"], "T"),
        lambda_max=_rational(doc.get("lambda_max", 1), "lambda_max"),
    )


def network_to_dict(net: DynamicNetwork) -> dict:
    return {
        "n": net.n,
        "source": net.source,
        "sink": net.sink,
        "T": net.horizon,
        "lambda_max": rational_to_json(net.lambda_max),
        "arcs": [
            {
                "from": a.tail,
                "to": a.head,
                "h": list(a.h),
                "u": [rational_to_json(x) for x in a.u],
                "l0": [rational_to_json(x) for x in a.l0],
                "L": [rational_to_json(x) for x in a.L],
            }
            for a in net.arcs
        ],
    }


def flow_from_dict(doc: Mapping, net: DynamicNetwork) -> dict[tuple[int, int], Fraction]:
    """Parse ``{"flows": [{"from", "to", "f": [...]}, ...]}`` into ``(arc index, theta) -> f``."""
    if not isinstance(doc, Mapping):
        raise InvalidNetworkError("flow document must be a JSON object")
    flow = {}
    for k, entry in enumerate(_list(doc, "flows", "flow")):
        where = f"flows[{k}]"
        try:
            idx = net.arc_index(_int(entry["from"], where), _int(entry["to"], where))
        except KeyError:
            raise InvalidNetworkError(f"{where}: no such arc") from None
        values = _list(entry, "f", where)
        if len(values) != net.horizon + 1:
            raise InvalidNetworkError(f"{where}.f: need T+1 = {net.horizon + 1} entries")
        for theta, v in enumerate(values):
            flow[idx, theta] = _rational(v, f"{where}.f[{theta}]")
    return flow


def flow_to_dict(flow: Mapping[tuple[int, int], Fraction], net: DynamicNetwork) -> dict:
    return {
        "flows": [
            {
                "from": a.tail,
                "to": a.head,
                "f": [rational_to_json(flow.get((k, theta), 0)) for theta in net.times],
            }
            for k, a in enumerate(net.arcs)
        ]
    }


def read_json(path: str | Path) -> Any:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InvalidNetworkError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InvalidNetworkError(f"{path}: malformed JSON ({exc})") from None


def load_network(path: str | Path) -> DynamicNetwork:
    return network_from_dict(read_json(path))


def solution_to_dict(
    sol: ParametricSolution,
    trace: bool = False,
    report: VerificationReport | None = None,
) -> dict:
    net = sol.network
    doc: dict[str, Any] = {
        "breakpoints": [str(b) for b in sol.breakpoints],
        "K": sol.K,
        "value_function": [
            {
                "lambda_lo": str(p.lambda_lo),
                "lambda_hi": str(p.lambda_hi),
                "v": str(p.v),
                "V": str(p.V),
            }
            for p in sol.pieces
        ],
        "intervals": [],
    }
    for iv in sol.intervals:
        entry: dict[str, Any] = {
            "lambda_lo": str(iv.lambda_lo),
            "lambda_hi": str(iv.lambda_hi),
            "flows": [
                {
                    "from": net.arcs[k].tail,
                    "to": net.arcs[k].head,
                    "theta": theta,
                    "f": str(f),
                    "F": str(F),
                }
                for (k, theta), (f, F) in sorted(iv.flow.items())
            ],
        }
        if trace:
            entry["augmentations"] = [
                {
                    "path": [[v.node, v.theta] for v in a.path.ntps],
                    "alpha": str(a.alpha),
                    "beta": str(a.beta),
                    "capacity": {"intercept": str(a.capacity[0]), "slope": str(a.capacity[1])},
                    "lambda_next": str(a.lambda_next),
                }
                for a in iv.augmentations
            ]
        doc["intervals"].append(entry)
    if report is not None:
        doc["verification"] = {
            "all_match": report.all_match,
            "samples": [
                {
                    "lambda": str(s.lam),
                    "piece": s.piece,
                    "parametric": str(s.parametric),
                    "oracle": str(s.oracle),
                    "match": s.match,
                }
                for s in report.samples
            ],
        }
    return doc


def solution_from_dict(doc: Mapping, net: DynamicNetwork) -> ParametricSolution:
    """Rebuild breakpoints and value pieces from a solution document (flows are not needed)."""
    try:
        pieces = [
            ValuePiece(*(as_fraction(p[key]) for key in ("lambda_lo", "lambda_hi", "v", "V")))
            for p in doc["value_function"]
        ]
        breakpoints = tuple(as_fraction(b) for b in doc["breakpoints"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidNetworkError(f"malformed solution document: {exc}") from None
    return ParametricSolution(net, {}, breakpoints, [], pieces)


def csv_points(sol: ParametricSolution, grid: int) -> list[Fraction]:
    lam_max = sol.network.lambda_max
    points = set(sol.breakpoints)
    if grid >= 2:
        points.update(lam_max * Fraction(i, grid - 1) for i in range(grid))
    elif grid == 1:
        points.add(Fraction(0))
    return sorted(points)


def write_value_csv(sol: ParametricSolution, path: str | Path, grid: int = 101) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["lambda", "value"])
        for lam in csv_points(sol, grid):
            writer.writerow([format(float(lam), ".12g"), format(float(evaluate_value(sol, lam)), ".12g")])


def dump_json(doc: Any, fh) -> None:
    json.dump(doc, fh, indent=2)
    fh.write("\n")

