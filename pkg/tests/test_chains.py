"""Chain builders: frozen routes, structural invariants, lattice oracles."""

import json
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from groupdepth.chains import (
    ChainDescriptor,
    ChainStep,
    JUSTIFICATION_TAGS,
    an_chain,
    ap1_chain,
    l2p_chain,
    prop18_witness,
    thm16_witness,
)
from groupdepth.errors import DomainError, IncompleteFactorization, NotPrime
from groupdepth.families import alternating, alternating_descriptor, psl2, psl_descriptor
from groupdepth.formulas import depth_formula, depth_l2_prime, is_depth3
from groupdepth.lattice import enumerate_subgroups
from groupdepth.numtheory import factorize, is_prime


def primes_in(lo, hi):
    return [p for p in range(lo, hi) if is_prime(p)]


# --- frozen routes -------------------------------------------------------

L2P_ROUTES = {
    5: "L2(5) > D10 > C5 > 1 (length 3)",
    7: "L2(7) > 7:3 > C7 > 1 (length 3)",
    11: "L2(11) > 11:5 > C11 > 1 (length 3)",
    13: "L2(13) > D14 > C7 > 1 (length 3)",
    17: "L2(17) > S4 > A4 > C3 > 1 (length 4)",
    31: "L2(31) > A5 > D10 > C5 > 1 (length 4)",
    37: "L2(37) > D38 > C19 > 1 (length 3)",
    41: "L2(41) > A5 > D10 > C5 > 1 (length 4)",
    43: "L2(43) > A4 > C3 > 1 (length 3)",
    71: "L2(71) > A5 > D10 > C5 > 1 (length 4)",
}


@pytest.mark.parametrize("p,text", sorted(L2P_ROUTES.items()))
def test_l2p_frozen_routes(p, text):
    assert l2p_chain(p).render() == text


AP1_ROUTES = {
    2: "A3 > 1 (length 1)",
    3: "A4 > C3 > 1 (length 2)",
    5: "A6 > L2(5) > D10 > C5 > 1 (length 4)",
    7: "A8 > 2^3:L3(2) > L3(2) > 7:3 > C7 > 1 (length 5)",
    11: "A12 > M12 > L2(11) > 11:5 > C11 > 1 (length 5)",
    13: "A14 > L2(13) > D14 > C7 > 1 (length 4)",
    23: "A24 > M24 > M23 > 23:11 > C11 > 1 (length 5)",
}


@pytest.mark.parametrize("p,text", sorted(AP1_ROUTES.items()))
def test_ap1_frozen_routes(p, text):
    assert ap1_chain(p).render() == text


def test_an_small_table():
    assert an_chain(5).render() == "A5 > D10 > C5 > 1 (length 3)"
    assert an_chain(6).render() == "A6 > L2(5) > D10 > C5 > 1 (length 4)"
    assert an_chain(7).render() == "A7 > L2(7) > 7:3 > C7 > 1 (length 4)"
    assert an_chain(8).total_length == 5
    assert an_chain(9).render() == "A9 > L2(8):3 > L2(8) > 2^3:7 > C7 > 1 (length 5)"
    assert an_chain(10).render() == "A10 > M10 > 5:4 > C4 > C2 > 1 (length 5)"


def test_an_generic_routes():
    c11 = an_chain(11)
    assert c11.render() == (
        "A11 > A10 > (A3 x A7).2 > A3 x A7 > A3 x (A3 x A4).2 > "
        "A3 x A3 x A4 > A3 x A4 > A4 > C3 > 1 (length 9)"
    )
    # 17 = 3 + 3 + 11: the first split peels off A4.
    c20 = an_chain(20)
    assert c20.steps[0].label == "(A4 x A16).2"
    assert "A4 x (A4 x A12).2" in [s.label for s in c20.steps]
    assert c20.total_length == 13
    assert an_chain(24).total_length == 14


def test_an_equal_triple_uses_block_stabilizers():
    # 12 - 3 = 9 = 3 + 3 + 3, so the second split is forced in half.
    labels = [s.label for s in an_chain(12).steps]
    assert "A4 x (A4 x A4).2^2" in labels
    assert "A4 x (A4 x A4).2" in labels
    assert an_chain(12).total_length == 11


def test_an_rejects_tiny_degrees():
    for n in (0, 1, 4):
        with pytest.raises(DomainError):
            an_chain(n)


def test_l2p_domain_checks():
    with pytest.raises(NotPrime):
        l2p_chain(15)
    with pytest.raises(DomainError):
        l2p_chain(3)
    with pytest.raises(NotPrime):
        ap1_chain(6)


# --- coherence with the depth formulas -----------------------------------

def test_l2p_length_matches_exact_depth():
    for p in primes_in(5, 2000):
        chain = l2p_chain(p)
        assert chain.total_length == depth_l2_prime(p).value
        assert (chain.total_length == 3) == is_depth3(psl_descriptor(2, p))


def test_ap1_length_at_most_five():
    for p in primes_in(5, 1200):
        assert 3 <= ap1_chain(p).total_length <= 5


def test_an_length_within_formula_interval():
    for n in (5, 6, 7):
        res = depth_formula(alternating_descriptor(n))
        assert an_chain(n).total_length == res.value
    for n in range(8, 400):
        res = depth_formula(alternating_descriptor(n))
        t = an_chain(n).total_length
        if res.is_exact:
            # Degrees where the classification pins the depth at three;
            # the constructive chain is only an upper bound elsewhere.
            assert res.value == 3 and t >= 3
        else:
            lo, hi = res.value
            assert lo <= t <= hi


def test_an_length_cap_on_larger_sweep():
    worst = max(an_chain(n).total_length for n in range(5, 1500))
    assert worst <= 23


# --- structural validation ----------------------------------------------

def _descriptor(orders, tags=None):
    tags = tags or ["TableCited"] * (len(orders) - 1)
    return ChainDescriptor(
        top_label="G",
        top_order=factorize(orders[0]),
        steps=tuple(
            ChainStep(f"H{i}", factorize(o), t)
            for i, (o, t) in enumerate(zip(orders[1:], tags))
        ),
    )


def test_validate_accepts_good_chain():
    _descriptor([60, 10, 5, 1]).validate()


def test_validate_rejects_non_divisible_orders():
    with pytest.raises(DomainError):
        _descriptor([60, 25, 5, 1]).validate()


def test_validate_rejects_increasing_orders():
    with pytest.raises(DomainError):
        _descriptor([60, 10, 20, 1]).validate()


def test_validate_rejects_chain_not_reaching_identity():
    with pytest.raises(DomainError):
        _descriptor([60, 10, 5]).validate()


def test_validate_rejects_unknown_tag():
    with pytest.raises(DomainError):
        _descriptor([60, 10, 5, 1], ["TableCited", "Guesswork", "TableCited"]).validate()


def test_serialization_shape():
    d = ap1_chain(23).to_dict()
    assert d["top"] == {"label": "A24", "order": str(math.factorial(24) // 2)}
    assert d["total_length"] == 5
    assert [s["index"] for s in d["steps"]] == [1267136462592000, 24, 40320, 23, 11]
    assert all(isinstance(s["order"], str) for s in d["steps"])
    assert all(s["justification"] in JUSTIFICATION_TAGS for s in d["steps"])
    json.dumps(d)  # stays JSON-clean


@given(st.integers(min_value=11, max_value=700))
@settings(max_examples=60, deadline=None)
def test_an_chain_invariants_hold(n):
    chain = an_chain(n)
    chain.validate()
    orders = chain.orders()
    assert orders[0] == math.factorial(n) // 2
    assert orders[-1] == 1
    assert chain.steps[-1].label == "1"
    assert math.prod(chain.indices()) == orders[0]


# --- lattice oracles: the claimed routes exist as maximal chains ---------

def _route_realized(lat, orders):
    assert orders[0] == lat.order_of(lat.top)
    frontier = {lat.top}
    for want in orders[1:]:
        frontier = {
            m
            for h in frontier
            for m in lat.maximal_subgroups_of(h)
            if lat.order_of(m) == want
        }
        if not frontier:
            return False
    return True


@pytest.mark.parametrize("chain,group", [
    (an_chain(5), alternating(5)),
    (an_chain(6), alternating(6)),
    (l2p_chain(7), psl2(7)),
    (l2p_chain(11), psl2(11)),
    (l2p_chain(13), psl2(13)),
])
def test_routes_exist_in_enumerated_lattices(chain, group):
    lat = enumerate_subgroups(group)
    assert _route_realized(lat, chain.orders())
    assert chain.total_length >= lat.depth()


# --- witness reports ------------------------------------------------------

def test_long_chain_witness_frozen_values():
    assert thm16_witness(2).prime == 43
    assert thm16_witness(3).prime == 2003
    assert thm16_witness(4).prime == 2003


def test_long_chain_witness_contract():
    prev = 0
    for n in (2, 3, 4):
        w = thm16_witness(n)
        assert w.depth.value == 3
        assert w.omega_p_minus_1 >= n
        assert w.prime >= prev
        prev = w.prime
        d = w.to_dict()
        assert d["length_exceeds"] == w.omega_p_minus_1
        assert d["prime"] == w.prime


def test_long_chain_witness_rejects_small_n():
    with pytest.raises(DomainError):
        thm16_witness(1)


def test_tower_witness_first_rung():
    w = prop18_witness(1)
    assert w.field_exponent == 3
    assert w.depth.value == 3
    assert w.length_cap == 7
    assert w.log_threshold == pytest.approx(math.log(7, 3) + 1)
    assert w.exceeds


def test_tower_witness_second_rung():
    w = prop18_witness(2)
    assert w.depth.value == 4
    assert w.length_cap == 16
    assert w.exceeds
    assert w.to_dict()["field_size"] == "3^9"


def test_tower_witness_blocked_without_budget():
    with pytest.raises(IncompleteFactorization):
        prop18_witness(4, budget=2000)
    with pytest.raises(DomainError):
        prop18_witness(0)
