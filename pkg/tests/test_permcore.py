import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from groupdepth.errors import DegreeMismatch, OrderCapExceeded
from groupdepth.permcore import (
    FiniteGroup,
    Permutation,
    close,
    compose,
    from_cycles,
    identity,
    is_subgroup,
)


def _random_perm(draw_degree=st.integers(min_value=1, max_value=8)):
    return draw_degree.flatmap(
        lambda d: st.permutations(range(d)).map(lambda im: Permutation(tuple(im)))
    )


perms = _random_perm()


def test_identity_and_call():
    e = identity(4)
    assert e.is_identity
    assert [e(i) for i in range(4)] == [0, 1, 2, 3]


def test_compose_right_to_left():
    # (a*b)(x) = a(b(x)): b acts first
    a = from_cycles(3, [(0, 1)])
    b = from_cycles(3, [(1, 2)])
    ab = a * b
    assert ab(1) == a(b(1)) == a(2) == 2
    assert ab.images == (1, 2, 0)


def test_compose_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        compose(identity(3), identity(4))


def test_from_cycles_and_repr():
    p = from_cycles(5, [(0, 1, 2), (3, 4)])
    assert p.images == (1, 2, 0, 4, 3)
    assert repr(p) == "(0 1 2)(3 4)"
    assert repr(identity(3)) == "()"


def test_cycles_roundtrip():
    p = from_cycles(6, [(0, 3), (1, 4, 5)])
    assert from_cycles(6, p.cycles()) == p


def test_order_and_sign():
    p = from_cycles(6, [(0, 1, 2), (3, 4)])
    assert p.order() == 6
    assert p.sign() == -1
    assert from_cycles(4, [(0, 1), (2, 3)]).sign() == 1


def test_pow_and_inverse():
    p = from_cycles(7, [(0, 1, 2, 3, 4, 5, 6)])
    assert p**7 == identity(7)
    assert p**-1 == p.inverse()
    assert p**3 * p**-3 == identity(7)
    assert p**700 == identity(7)


@given(perms, perms, perms)
@settings(max_examples=100, deadline=None)
def test_compose_associative(a, b, c):
    if not a.degree == b.degree == c.degree:
        return
    assert (a * b) * c == a * (b * c)


@given(perms)
@settings(max_examples=100, deadline=None)
def test_inverse_cancels(p):
    e = identity(p.degree)
    assert p * p.inverse() == e
    assert p.inverse() * p == e


@given(perms, perms)
@settings(max_examples=100, deadline=None)
def test_sign_multiplicative(a, b):
    if a.degree != b.degree:
        return
    assert (a * b).sign() == a.sign() * b.sign()


def test_close_s3():
    gens = [from_cycles(3, [(0, 1)]), from_cycles(3, [(0, 1, 2)])]
    g = close(gens, label="S3")
    assert g.order == 6
    assert g.label == "S3"
    assert identity(3) in g


def test_close_result_canonical_and_generator_order_free():
    a = from_cycles(4, [(0, 1, 2, 3)])
    b = from_cycles(4, [(0, 1)])
    g1 = close([a, b])
    g2 = close([b, a])
    g3 = close([b, a, a * b])
    assert g1.elements == g2.elements == g3.elements
    assert g1.order == 24


def test_close_respects_cap():
    gens = [from_cycles(5, [(0, 1)]), from_cycles(5, [(0, 1, 2, 3, 4)])]
    with pytest.raises(OrderCapExceeded):
        close(gens, max_order=100)


def test_close_trivial():
    g = close([identity(2)])
    assert g.order == 1


def test_elements_sorted_identity_first():
    g = close([from_cycles(3, [(0, 1, 2)])])
    assert g.elements[0].is_identity
    assert list(g.elements) == sorted(g.elements)


def test_is_subgroup():
    s3 = close([from_cycles(3, [(0, 1)]), from_cycles(3, [(0, 1, 2)])])
    c3 = close([from_cycles(3, [(0, 1, 2)])])
    assert is_subgroup(c3.elements, s3)
    # identity plus a 3-cycle without its inverse is not closed
    assert not is_subgroup((identity(3), from_cycles(3, [(0, 1, 2)])), s3)


def test_group_membership_and_iteration():
    g = close([from_cycles(4, [(0, 1), (2, 3)])])
    assert len(g) == 2
    assert from_cycles(4, [(0, 1), (2, 3)]) in g
    assert from_cycles(4, [(0, 1)]) not in g
    assert sorted(g) == list(g.elements)
