"""Parametric discrete-time dynamic networks.

Every arc carries per-time-step tables of transit time ``h``, capacity ``u``
and a lower bound that is affine in the parameter::

    lower(theta, lam) = l0[theta] + lam * L[theta],   0 <= lam <= lambda_max
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Sequence, Union

Number = Union[int, Fraction, str]


class InvalidNetworkError(ValueError):
    """Raised when a network (or an input referring to it) is malformed."""

    def __init__(self, message: str, violations: Sequence["Violation"] = ()):
        super().__init__(message)
        self.violations = list(violations)


def as_fraction(value: Number) -> Fraction:
    """Convert ``value`` to an exact ``Fraction``.

    Accepts ints, Fractions and strings such as ``"3"`` or ``"-4/5"``.
    Floats are rejected since they would silently leak rounding error into
    breakpoint comparisons.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational number: {value!r}") from exc
    raise TypeError(f"expected int, Fraction or 'p/q' string, got {type(value).__name__}")


def _table(values: Sequence[Number]) -> tuple[Fraction, ...]:
    return tuple(as_fraction(v) for v in values)


@dataclass(frozen=True)
class Arc:
    tail: int
    head: int
    h: tuple[int, ...]
    u: tuple[Fraction, ...]
    l0: tuple[Fraction, ...]
    L: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "h", tuple(self.h))
        object.__setattr__(self, "u", _table(self.u))
        object.__setattr__(self, "l0", _table(self.l0))
        object.__setattr__(self, "L", _table(self.L))

    def arrival(self, theta: int) -> int:
        return theta + self.h[theta]


@dataclass(frozen=True)
class DynamicNetwork:
    """Nodes ``1..n``, arcs, source/sink ids, horizon ``T`` and ``lambda_max``."""

    n: int
    arcs: tuple[Arc, ...]
    source: int
    sink: int
    horizon: int
    lambda_max: Fraction = Fraction(1)
    _arc_index: dict = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "arcs", tuple(self.arcs))
        object.__setattr__(self, "lambda_max", as_fraction(self.lambda_max))
        object.__setattr__(
            self, "_arc_index", {(a.tail, a.head): k for k, a in enumerate(self.arcs)}
        )

    @property
    def times(self) -> range:
        return range(self.horizon + 1)

    def arc_index(self, tail: int, head: int) -> int:
        return self._arc_index[(tail, head)]

    def copies(self):
        """Yield ``(arc_index, theta)`` for every arc copy that arrives by ``T``."""
        for k, arc in enumerate(self.arcs):
            for theta in self.times:
                if arc.arrival(theta) <= self.horizon:
                    yield k, theta


@dataclass(frozen=True)
class Violation:
    rule: str
    message: str
    arc: int | None = None
    theta: int | None = None

    def __str__(self):
        where = []
        if self.arc is not None:
            where.append(f"arc #{self.arc}")
        if self.theta is not None:
            where.append(f"theta={self.theta}")
        prefix = f"[{', '.join(where)}] " if where else ""
        return f"{prefix}{self.rule}: {self.message}"


@dataclass
class ValidationReport:
    violations: list[Violation]

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return "ok"
        return "\n".join(str(v) for v in self.violations)


def validate_network(net: DynamicNetwork) -> ValidationReport:
    """Collect every structural and bound violation of ``net``."""
    out: list[Violation] = []
    T, lam_max = net.horizon, net.lambda_max

    if not isinstance(net.n, int) or net.n < 2:
        out.append(Violation("node count", f"need at least 2 nodes, got {net.n!r}"))
    if not isinstance(T, int) or T < 0:
        out.append(Violation("horizon", f"T must be a nonnegative integer, got {T!r}"))
        return ValidationReport(out)
    if lam_max <= 0:
        out.append(Violation("lambda_max", f"lambda_max must be positive, got {lam_max}"))
    for name, node in (("source", net.source), ("sink", net.sink)):
        if not 1 <= node <= net.n:
            out.append(Violation("node id", f"{name} {node} outside 1..{net.n}"))
    if net.source == net.sink:
        out.append(Violation("source equals sink", f"s = t = {net.source}"))

    seen: dict[tuple[int, int], int] = {}
    for k, arc in enumerate(net.arcs):
        pair = (arc.tail, arc.head)
        for node in pair:
            if not 1 <= node <= net.n:
                out.append(Violation("node id", f"endpoint {node} outside 1..{net.n}", arc=k))
        if arc.tail == arc.head:
            out.append(Violation("self loop", f"arc {pair} is a loop", arc=k))
        if pair in seen:
            out.append(Violation("parallel arcs", f"arc {pair} duplicates arc #{seen[pair]}", arc=k))
        elif (arc.head, arc.tail) in seen:
            out.append(Violation(
                "opposite arcs",
                f"arc {pair} is opposite to arc #{seen[(arc.head, arc.tail)]}",
                arc=k,
            ))
        seen.setdefault(pair, k)

        tables = {"h": arc.h, "u": arc.u, "l0": arc.l0, "L": arc.L}
        bad_len = [name for name, tab in tables.items() if len(tab) != T + 1]
        if bad_len:
            out.append(Violation(
                "table length", f"{', '.join(bad_len)} must have T+1 = {T + 1} entries", arc=k
            ))
            continue

        for theta in net.times:
            h = arc.h[theta]
            if isinstance(h, bool) or not isinstance(h, int) or h < 0:
                out.append(Violation("transit time", f"h must be a nonnegative integer, got {h!r}",
                                     arc=k, theta=theta))
                continue
            u, l0, L = arc.u[theta], arc.l0[theta], arc.L[theta]
            if l0 < 0:
                out.append(Violation("l0 negative", f"l0 = {l0} < 0", arc=k, theta=theta))
            if u < l0:
                out.append(Violation("u below l0", f"u = {u} < l0 = {l0}", arc=k, theta=theta))
            if lam_max > 0 and L > (u - l0) / lam_max:
                out.append(Violation(
                    "Lpar exceeds (u-l0)/Lambda",
                    f"L = {L} > (u - l0)/Lambda = {(u - l0) / lam_max}",
                    arc=k, theta=theta,
                ))
            if l0 + lam_max * L < 0:
                out.append(Violation(
                    "negative lower bound at Lambda",
                    f"l0 + Lambda*L = {l0 + lam_max * L} < 0",
                    arc=k, theta=theta,
                ))
            # copies that cannot arrive by T are forced to carry zero flow
            if theta + h > T and max(l0, l0 + lam_max * L) > 0:
                out.append(Violation(
                    "late copy with positive lower bound",
                    f"theta + h = {theta + h} > T but lower bound is positive",
                    arc=k, theta=theta,
                ))
    return ValidationReport(out)


def check_network(net: DynamicNetwork) -> DynamicNetwork:
    """Return ``net`` unchanged or raise ``InvalidNetworkError`` listing every violation."""
    if not isinstance(net, DynamicNetwork):
        raise TypeError(f"expected DynamicNetwork, got {type(net).__name__}")
    report = validate_network(net)
    if not report.ok:
        raise InvalidNetworkError(f"invalid network:\n{report}", report.violations)
    return net


def check_lambda(lam: Number, lambda_max: Fraction) -> Fraction:
    lam = as_fraction(lam)
    if not 0 <= lam <= lambda_max:
        raise ValueError(f"lambda = {lam} outside [0, {lambda_max}]")
    return lam


def lower_bound_at(arc: Arc, theta: int, lam: Number, lambda_max: Number | None = None) -> Fraction:
    """``l0[theta] + lam * L[theta]``; ``lam`` is range-checked when ``lambda_max`` is given."""
    if not 0 <= theta < len(arc.l0):
        raise ValueError(f"theta = {theta} outside 0..{len(arc.l0) - 1}")
    lam = as_fraction(lam)
    if lam < 0 or (lambda_max is not None and lam > as_fraction(lambda_max)):
        raise ValueError(f"lambda = {lam} outside [0, {lambda_max}]")
    return arc.l0[theta] + lam * arc.L[theta]


def tight_lower_bounds(net: DynamicNetwork) -> dict[tuple[int, int], Fraction]:
    """Largest lower bound over ``[0, lambda_max]`` for every arc copy.

    A flow respecting these bounds is feasible for every parameter value.
    """
    out = {}
    for k, arc in enumerate(net.arcs):
        for theta in net.times:
            L = arc.L[theta]
            out[k, theta] = arc.l0[theta] + (net.lambda_max * L if L > 0 else 0)
    return out
