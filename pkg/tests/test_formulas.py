"""Formula layer: frozen values, classification, bounds, dispatch.

Exact depth values here were either cross-checked against the lattice
enumeration (small fields, small degrees) or recomputed by hand from the
published character of each chain; they are frozen as plain numbers so a
regression in the arithmetic shows up directly.
"""

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from groupdepth.errors import (
    DomainError,
    IncompleteFactorization,
    NotPrime,
    NotSimple,
    UnknownName,
)
from groupdepth.families import (
    alternating,
    alternating_descriptor,
    cyclic_descriptor,
    dihedral_descriptor,
    lie_descriptor,
    psl2,
    psl_descriptor,
    ree_descriptor,
    sporadic_descriptor,
    suzuki_descriptor,
    symmetric_descriptor,
)
from groupdepth.formulas import (
    ALTERNATING_CHAIN_CAP,
    BoundReport,
    DepthResult,
    canonical_descriptor,
    depth_bound_from_exponent,
    depth_bound_from_length,
    depth_formula,
    depth_l2_pk,
    depth_l2_prime,
    depth_psl2,
    depth_sporadic,
    depth_supersolvable,
    depth_suzuki,
    field_exponent_window,
    is_depth3,
    lie_depth_bound,
    sporadic_depth_table,
)
from groupdepth.lattice import enumerate_subgroups
from groupdepth.numtheory import factorize


# ---------------------------------------------------------------------------
# L2(p) and L2(p^k).


@pytest.mark.parametrize(
    "p, want",
    [
        (3, 2),
        (5, 3), (7, 3), (11, 3), (13, 3), (17, 4), (19, 4), (23, 3),
        (29, 4), (31, 4), (37, 3), (41, 4), (43, 3), (71, 4),
    ],
)
def test_depth_l2_prime_frozen(p, want):
    got = depth_l2_prime(p)
    assert got.value == want
    assert got.method == "Formula"


@pytest.mark.parametrize("bad", [2, 4, 15, 1])
def test_depth_l2_prime_rejects_non_odd_primes(bad):
    with pytest.raises(NotPrime):
        depth_l2_prime(bad)


@pytest.mark.parametrize(
    "p, k, want",
    [
        (2, 2, 3), (2, 3, 3), (2, 4, 3), (2, 5, 3), (2, 6, 4),
        (2, 7, 3), (2, 8, 3), (2, 9, 4), (2, 11, 4), (2, 13, 3), (2, 15, 4),
        (3, 3, 3), (3, 9, 4), (3, 27, 5), (5, 3, 4), (7, 3, 4), (3, 2, 4),
    ],
)
def test_depth_l2_pk_frozen(p, k, want):
    got = depth_l2_pk(p, k)
    assert got.value == want


def test_depth_l2_pk_open_case_reports_unknown():
    for p, k in [(3, 4), (5, 2), (7, 2), (3, 6)]:
        got = depth_l2_pk(p, k)
        assert got.is_unknown
        assert got.value is None
        assert got.rule == "odd-char-even-exponent-open"
    # q = 9 is the exception, settled by enumeration.
    assert depth_l2_pk(3, 2).value == 4


def test_depth_l2_pk_rejects_bad_input():
    with pytest.raises(NotSimple):
        depth_l2_pk(2, 1)
    with pytest.raises(NotPrime):
        depth_l2_pk(4, 1)
    with pytest.raises(DomainError):
        depth_l2_pk(3, 0)


@pytest.mark.parametrize(
    "q, want", [(4, 3), (8, 3), (9, 4), (27, 3), (64, 4), (81, None), (25, None)]
)
def test_depth_psl2_splits_the_field_size(q, want):
    assert depth_psl2(q).value == want


def test_depth_psl2_rejects_non_prime_powers():
    with pytest.raises(NotPrime):
        depth_psl2(6)


def test_l2_towers_match_the_iterated_construction():
    # Depth grows by one per cube of the field exponent over char 3.
    for i, k in enumerate([3, 9, 27, 81, 243], start=1):
        if k % 2 == 0:
            continue
        assert depth_l2_pk(3, k).value == i + 2


# ---------------------------------------------------------------------------
# Suzuki groups.


@pytest.mark.parametrize("k, want", [(3, 3), (5, 3), (7, 3), (9, 4), (15, 4), (25, 4)])
def test_depth_suzuki_frozen(k, want):
    assert depth_suzuki(k).value == want


@pytest.mark.parametrize("bad", [1, 2, 4, 6, 0])
def test_depth_suzuki_rejects_even_or_small_exponent(bad):
    with pytest.raises(DomainError):
        depth_suzuki(bad)


# ---------------------------------------------------------------------------
# Supersolvable orders and the sporadic table.


def test_depth_supersolvable_counts_prime_factors():
    assert depth_supersolvable(360).value == 6
    assert depth_supersolvable(1).value == 0
    assert depth_supersolvable(factorize(1024)).value == 10


def test_depth_supersolvable_refuses_incomplete_factorizations():
    stuck = factorize(2**67 - 1, budget=10)
    assert not stuck.complete
    with pytest.raises(IncompleteFactorization):
        depth_supersolvable(stuck)


FROZEN_SPORADIC = {
    "M11": 4, "M12": 4, "M22": 4, "M23": 3, "M24": 4,
    "J1": 4, "J2": 4, "J3": 5, "J4": 4,
    "HS": 5, "McL": 5, "Suz": 4, "Ru": 5, "He": 6, "Ly": 4, "ON": 5,
    "Co1": 5, "Co2": 4, "Co3": 4,
    "Fi22": 5, "Fi23": 4, "Fi24'": 4,
    "HN": 5, "Th": 4, "B": 3, "M": 4,
}


def test_sporadic_depth_table_is_frozen():
    table = sporadic_depth_table()
    assert table == FROZEN_SPORADIC
    assert len(table) == 26
    assert max(table.values()) == 6
    assert [name for name, v in table.items() if v == 6] == ["He"]
    assert sorted(name for name, v in table.items() if v == 3) == ["B", "M23"]


def test_depth_sporadic_normalizes_names():
    assert depth_sporadic("m23").value == 3
    assert depth_sporadic("O'N").value == 5
    assert depth_sporadic("Baby Monster").value == 3
    assert depth_sporadic("F1").value == 4
    assert depth_sporadic("He").method == "TableLookup"
    with pytest.raises(UnknownName):
        depth_sporadic("XYZ1")


# ---------------------------------------------------------------------------
# The depth-three classification.


@pytest.mark.parametrize(
    "d, want",
    [
        (alternating_descriptor(5), True),
        (alternating_descriptor(6), False),
        (alternating_descriptor(7), False),
        (alternating_descriptor(11), False),
        (alternating_descriptor(13), False),
        (alternating_descriptor(23), False),
        (alternating_descriptor(47), True),
        (alternating_descriptor(59), True),
        (psl_descriptor(2, 4), True),
        (psl_descriptor(2, 5), True),
        (psl_descriptor(2, 7), True),
        (psl_descriptor(2, 8), True),
        (psl_descriptor(2, 9), False),
        (psl_descriptor(2, 11), True),
        (psl_descriptor(2, 13), True),
        (psl_descriptor(2, 27), True),
        (psl_descriptor(2, 31), False),
        (psl_descriptor(2, 32), True),
        (psl_descriptor(2, 29), False),
        (psl_descriptor(2, 43), True),
        (psl_descriptor(3, 2), True),
        (psl_descriptor(3, 3), True),
        (psl_descriptor(3, 4), False),
        (psl_descriptor(5, 2), True),
        (psl_descriptor(4, 2), False),
        (psl_descriptor(3, 3, -1), False),
        (psl_descriptor(3, 5, -1), False),
        (psl_descriptor(5, 2, -1), False),
        (psl_descriptor(3, 8, -1), True),
        (suzuki_descriptor(8), True),
        (suzuki_descriptor(32), True),
        (suzuki_descriptor(512), False),
        (ree_descriptor(27), False),
        (sporadic_descriptor("M23"), True),
        (sporadic_descriptor("B"), True),
        (sporadic_descriptor("M11"), False),
        (sporadic_descriptor("M"), False),
        (lie_descriptor("E8", 7), False),
        (lie_descriptor("G2", 5), False),
        (lie_descriptor("A1", 7), True),
    ],
)
def test_is_depth3_frozen(d, want):
    assert is_depth3(d) is want


def test_is_depth3_requires_a_simple_group():
    for d in [
        alternating_descriptor(4),
        psl_descriptor(2, 2),
        psl_descriptor(2, 3),
        psl_descriptor(3, 2, -1),
        cyclic_descriptor(5),
        symmetric_descriptor(5),
        dihedral_descriptor(10),
    ]:
        with pytest.raises(NotSimple):
            is_depth3(d)


def test_is_depth3_matches_small_lattices():
    for group, d in [
        (alternating(5), alternating_descriptor(5)),
        (psl2(7), psl_descriptor(2, 7)),
        (alternating(6), alternating_descriptor(6)),
    ]:
        lat = enumerate_subgroups(group)
        assert (lat.depth() == 3) == is_depth3(d)


def test_canonical_descriptor_aliases():
    assert canonical_descriptor(psl_descriptor(2, 4)) == alternating_descriptor(5)
    assert canonical_descriptor(psl_descriptor(2, 5)) == alternating_descriptor(5)
    assert canonical_descriptor(psl_descriptor(2, 9)) == alternating_descriptor(6)
    assert canonical_descriptor(psl_descriptor(2, 9, -1)) == alternating_descriptor(6)
    assert canonical_descriptor(psl_descriptor(3, 2)) == psl_descriptor(2, 7)
    assert canonical_descriptor(lie_descriptor("A1", 9)) == alternating_descriptor(6)
    assert canonical_descriptor(lie_descriptor("A3", 2)) == psl_descriptor(4, 2)
    # Everything else is left alone, and the map is idempotent.
    d = psl_descriptor(3, 3)
    assert canonical_descriptor(d) == d
    assert canonical_descriptor(canonical_descriptor(psl_descriptor(3, 2))) == psl_descriptor(2, 7)


# ---------------------------------------------------------------------------
# Whole-descriptor dispatch.


@pytest.mark.parametrize(
    "d, want",
    [
        (cyclic_descriptor(360), 6),
        (cyclic_descriptor(1), 0),
        (dihedral_descriptor(16), 4),
        (dihedral_descriptor(10), 2),
        (alternating_descriptor(4), 2),
        (alternating_descriptor(5), 3),
        (alternating_descriptor(6), 4),
        (alternating_descriptor(7), 4),
        (alternating_descriptor(47), 3),
        (psl_descriptor(2, 9), 4),
        (psl_descriptor(3, 2), 3),
        (psl_descriptor(3, 3), 3),
        (sporadic_descriptor("He"), 6),
        (suzuki_descriptor(8), 3),
        (suzuki_descriptor(512), 4),
    ],
)
def test_depth_formula_exact_cases(d, want):
    got = depth_formula(d)
    assert got.value == want


def test_depth_formula_intervals():
    got = depth_formula(alternating_descriptor(9))
    assert got.value == (4, 5)
    got = depth_formula(alternating_descriptor(100))
    assert got.value == (4, ALTERNATING_CHAIN_CAP)
    got = depth_formula(psl_descriptor(4, 3))
    assert got.is_interval and got.low() == 4
    got = depth_formula(lie_descriptor("E8", 7))
    assert got.value == (4, 36)
    got = depth_formula(ree_descriptor(27))
    assert got.low() == 4


def test_depth_formula_unknown_and_errors():
    assert depth_formula(psl_descriptor(2, 81)).is_unknown
    with pytest.raises(DomainError):
        depth_formula(symmetric_descriptor(6))
    with pytest.raises(NotSimple):
        depth_formula(psl_descriptor(3, 2, -1))


# ---------------------------------------------------------------------------
# Bounds.


def test_lie_depth_bound_cases():
    r = lie_depth_bound(psl_descriptor(2, 2**6))
    assert (r.applicable_case, r.bound_value) == ("case_i", 4)
    r = lie_depth_bound(suzuki_descriptor(8))
    assert (r.applicable_case, r.bound_value) == ("case_i", 3)
    r = lie_depth_bound(psl_descriptor(5, 4, -1))
    assert (r.applicable_case, r.bound_value) == ("case_ii", 40)
    r = lie_depth_bound(psl_descriptor(7, 64, -1))
    assert (r.applicable_case, r.bound_value) == ("case_ii", 43)
    r = lie_depth_bound(lie_descriptor("E8", 7))
    assert (r.applicable_case, r.bound_value) == ("generic", 36)
    r = lie_depth_bound(psl_descriptor(4, 4, -1))
    assert (r.applicable_case, r.bound_value) == ("generic", 39)
    r = lie_depth_bound(lie_descriptor("A1", 64))
    assert (r.applicable_case, r.bound_value) == ("case_i", 4)
    with pytest.raises(DomainError):
        lie_depth_bound(alternating_descriptor(12))


def test_exact_even_char_depths_stay_under_the_bound():
    for k in range(2, 31):
        exact = depth_l2_pk(2, k)
        report = lie_depth_bound(psl_descriptor(2, 2**k))
        assert report.applicable_case == "case_i"
        assert exact.value is not None
        assert exact.value <= report.bound_value
        assert report.bound_value <= report.smooth_bound


def test_depth_bound_from_exponent_frozen():
    assert depth_bound_from_exponent(1) == 37.0
    assert round(depth_bound_from_exponent(36), 4) == 62.1793
    with pytest.raises(DomainError):
        depth_bound_from_exponent(0.5)


def test_depth_bound_from_length_frozen():
    assert depth_bound_from_length(1) == 1.0
    assert depth_bound_from_length(20) == 20.0
    assert depth_bound_from_length(35) == 35.0
    assert depth_bound_from_length(36) == 36.0
    assert round(depth_bound_from_length(100), 4) == 60.6667
    assert round(depth_bound_from_length(1000), 4) == 130.9515
    with pytest.raises(DomainError):
        depth_bound_from_length(0)


@given(st.integers(min_value=1, max_value=100_000))
def test_depth_bound_from_length_never_exceeds_the_length(length):
    assert depth_bound_from_length(length) <= length


def test_field_exponent_window():
    w = field_exponent_window(psl_descriptor(2, 4), 38)
    assert (w.rank, w.weight, w.max_exponent) == (1, 1, 36)
    assert round(w.depth_bound, 4) == 62.1793
    w = field_exponent_window(psl_descriptor(3, 4, -1), 10)
    assert (w.rank, w.weight, w.max_exponent) == (1, 3, 2)
    w = field_exponent_window(lie_descriptor("E8", 2), 136)
    assert (w.max_exponent, w.depth_bound) == (1, 37.0)
    with pytest.raises(DomainError):
        field_exponent_window(lie_descriptor("E8", 2), 135)
    with pytest.raises(DomainError):
        field_exponent_window(sporadic_descriptor("M11"), 100)


# ---------------------------------------------------------------------------
# Result objects.


def test_depth_result_shapes():
    exact = depth_l2_prime(7)
    assert exact.is_exact and exact.low() == exact.high() == 3
    box = depth_formula(alternating_descriptor(9))
    assert box.is_interval and (box.low(), box.high()) == (4, 5)
    unknown = depth_l2_pk(5, 2)
    assert unknown.is_unknown and unknown.low() is None

    d = exact.to_dict()
    assert d == {"value": 3, "method": "Formula", "rule": exact.rule}
    assert box.to_dict()["value"] == [4, 5]
    assert depth_l2_pk(5, 2).to_dict()["value"] == "Unknown"
    rep = lie_depth_bound(psl_descriptor(5, 4, -1)).to_dict()
    assert rep["applicable_case"] == "case_ii"
    assert rep["smooth_bound"] == 40.0
    json.dumps(rep)


@given(st.integers(min_value=5, max_value=400))
@settings(max_examples=60, deadline=None)
def test_alternating_formula_agrees_with_classification(n):
    got = depth_formula(alternating_descriptor(n))
    if is_depth3(alternating_descriptor(n)):
        assert got.value == 3
    elif got.is_exact:
        assert got.value != 3 or n == 5
    else:
        assert got.low() >= 4


@given(st.integers(min_value=3, max_value=500))
@settings(max_examples=80, deadline=None)
def test_l2_prime_depth_agrees_with_classification(p):
    from groupdepth.numtheory import is_prime

    if not is_prime(p) or p < 5:
        return
    got = depth_l2_prime(p)
    assert (got.value == 3) == is_depth3(psl_descriptor(2, p))
    assert got.value in (3, 4)
