from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from helpers import single_arc
from paramflow.network import (
    Arc,
    DynamicNetwork,
    InvalidNetworkError,
    as_fraction,
    check_network,
    lower_bound_at,
    tight_lower_bounds,
    validate_network,
)


def rules(net):
    return {v.rule for v in validate_network(net).violations}


def test_example_network_is_valid(example_net):
    report = validate_network(example_net)
    assert report.ok, str(report)
    assert str(report) == "ok"


def test_lpar_above_slack():
    net = single_arc(u=5, l0=3, L=3)
    assert "Lpar exceeds (u-l0)/Lambda" in rules(net)


def test_opposite_arcs():
    a = Arc(1, 2, [1, 1], [1, 1], [0, 0], [0, 0])
    b = Arc(2, 1, [1, 1], [1, 1], [0, 0], [0, 0])
    assert "opposite arcs" in rules(DynamicNetwork(2, [a, b], 1, 2, 1))


def test_parallel_arcs_and_bad_ids():
    a = Arc(1, 2, [1, 1], [1, 1], [0, 0], [0, 0])
    net = DynamicNetwork(2, [a, a], 1, 1, 1)
    assert {"parallel arcs", "source equals sink"} <= rules(net)
    net = DynamicNetwork(2, [Arc(1, 3, [1, 1], [1, 1], [0, 0], [0, 0])], 1, 2, 1)
    assert "node id" in rules(net)


def test_table_and_bound_violations():
    bad_len = DynamicNetwork(2, [Arc(1, 2, [1], [1], [0], [0])], 1, 2, 1)
    assert "table length" in rules(bad_len)
    assert "u below l0" in rules(single_arc(u=1, l0=2))
    assert "negative lower bound at Lambda" in rules(single_arc(u=5, l0=1, L=-2))
    assert "transit time" in rules(single_arc(h=-1))


def test_every_violation_is_reported():
    net = DynamicNetwork(2, [Arc(1, 2, [1, 1], [5, 1], [3, 2], [3, 0])], 1, 2, 1)
    found = [(v.rule, v.theta) for v in validate_network(net).violations]
    assert ("Lpar exceeds (u-l0)/Lambda", 0) in found
    assert ("u below l0", 1) in found


def test_late_copy_must_not_have_positive_lower_bound():
    # theta=1 copy arrives at 2 > T, so its flow is forced to zero
    net = DynamicNetwork(2, [Arc(1, 2, [1, 1], [5, 5], [0, 1], [0, 0])], 1, 2, 1)
    assert "late copy with positive lower bound" in rules(net)


def test_check_network_raises_with_violations():
    with pytest.raises(InvalidNetworkError) as info:
        check_network(single_arc(u=5, l0=3, L=3))
    assert info.value.violations


def test_lower_bound_example_rows(example_net):
    arc12, arc13 = example_net.arcs[0], example_net.arcs[1]
    assert lower_bound_at(arc13, 0, Fraction(1, 2)) == 3
    assert lower_bound_at(arc12, 0, 1) == 1
    for arc in example_net.arcs:
        for theta in example_net.times:
            assert lower_bound_at(arc, theta, 0) == arc.l0[theta]


def test_lower_bound_range_checks(example_net):
    arc = example_net.arcs[0]
    with pytest.raises(ValueError):
        lower_bound_at(arc, 4, 0)
    with pytest.raises(ValueError):
        lower_bound_at(arc, 0, -1)
    with pytest.raises(ValueError):
        lower_bound_at(arc, 0, 2, lambda_max=1)


def test_tight_lower_bounds(example_net):
    tight = tight_lower_bounds(example_net)
    assert tight[0, 0] == 3  # L = -2 <= 0 keeps l0
    assert tight[1, 0] == 5  # 1 + 1*4
    assert tight[3, 2] == 0  # L = 0


def test_bounds_hold_at_both_endpoints(example_net):
    for arc in example_net.arcs:
        for theta in example_net.times:
            for lam in (0, example_net.lambda_max):
                assert 0 <= lower_bound_at(arc, theta, lam) <= arc.u[theta]


def test_as_fraction():
    assert as_fraction("3/5") == Fraction(3, 5)
    assert as_fraction(" -4 ") == -4
    with pytest.raises(TypeError):
        as_fraction(0.5)
    with pytest.raises(ValueError):
        as_fraction("abc")


fractions = st.fractions(min_value=0, max_value=1, max_denominator=50)


@given(fractions, fractions, st.integers(0, 3))
def test_lower_bound_is_affine(lam1, lam2, theta):
    from helpers import make_example_network

    for arc in make_example_network().arcs:
        mid = (lam1 + lam2) / 2
        assert lower_bound_at(arc, theta, lam1) + lower_bound_at(arc, theta, lam2) == 2 * lower_bound_at(
            arc, theta, mid
        )
