import itertools

import pytest
from hypothesis import given, strategies as st

from charp.group_ring import (DivisionError, GroupRingElement, alternating_sum, dimension, divide_exact,
                              freudenthal_character, twist, weyl_character, weyl_dimension)
from charp.root_datum import RootDatum, RootDatumError

weights = st.tuples(st.integers(-5, 5), st.integers(-5, 5))
elements = st.dictionaries(weights, st.integers(-4, 4), max_size=5).map(GroupRingElement)


@given(elements, elements, elements)
def test_ring_laws(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    assert a - a == 0
    assert a * GroupRingElement.one(2) == a


@given(weights, weights)
def test_monomials_multiply(mu, nu):
    e = GroupRingElement.monomial
    assert e(mu) * e(nu) == e(tuple(x + y for x, y in zip(mu, nu)))


@given(elements, st.integers(0, 3), st.integers(0, 3), st.sampled_from([2, 3, 5]))
def test_twist_laws(a, h1, h2, p):
    assert twist(a, p, 0) == a
    assert twist(a, p, h1 + h2) == twist(twist(a, p, h1), p, h2)
    assert dimension(twist(a, p, h1)) == dimension(a)


@given(elements, elements, st.integers(0, 3))
def test_twist_multiplicative(a, b, h):
    assert twist(a * b, 3, h) == twist(a, 3, h) * twist(b, 3, h)


def test_twist_examples():
    one = GroupRingElement.one(1)
    assert twist(one, 5, 3) == one
    x = GroupRingElement({(1,): 1, (-1,): 1})
    assert twist(x, 3, 1) == GroupRingElement({(3,): 1, (-3,): 1})


def test_zero_terms_dropped():
    x = GroupRingElement([((1,), 2), ((1,), -2), ((0,), 0)])
    assert x == 0 and len(x) == 0 and str(x) == "0"


def test_str():
    x = GroupRingElement({(3,): 1, (-3,): 1})
    assert str(x) == "e^(3) + e^(-3)"
    assert str(GroupRingElement({(0, 0): 2, (1, -1): -1})) == "-1*e^(1,-1) + 2"


def test_weyl_character_examples(rd):
    a1, a2 = rd("A1"), rd("A2")
    assert weyl_character(a1, (0,)) == GroupRingElement.one(1)
    assert weyl_character(a1, (3,)) == GroupRingElement({(3,): 1, (1,): 1, (-1,): 1, (-3,): 1})
    chi = weyl_character(a2, (1, 1))
    assert dimension(chi) == 8 and chi[(0, 0)] == 2
    assert dimension(weyl_character(a1, (3,))) == 4
    with pytest.raises(RootDatumError):
        weyl_character(a2, (-1, 0))


def test_freudenthal_examples(rd):
    assert freudenthal_character(rd("A2"), (0, 0)) == GroupRingElement.one(2)
    x = freudenthal_character(rd("A1"), (5,))
    assert len(x) == 6 and all(c == 1 for _, c in x.items())
    assert len(freudenthal_character(rd("A2"), (1, 0))) == 3


@pytest.mark.parametrize("name,bound", [("A3", 3), ("B3", 3), ("C3", 3)])
def test_rank3_oracle(rd, name, bound):
    r = rd(name)
    for lam in itertools.product(range(bound + 1), repeat=3):
        if sum(lam) <= bound:
            chi = weyl_character(r, lam)
            assert chi == freudenthal_character(r, lam)
            assert chi.dimension() == weyl_dimension(r, lam)


def test_division_detects_remainder(rd):
    r = rd("A1")
    den = alternating_sum(r, r.rho)
    with pytest.raises(DivisionError):
        divide_exact(r, GroupRingElement({(2,): 1}), den)
    q = weyl_character(r, (4,))
    assert divide_exact(r, q * den, den) == q


@pytest.mark.parametrize("name", ["A2", "B2", "G2"])
def test_characters_are_invariant(rd, name):
    r = rd(name)
    for lam in itertools.product(range(4), repeat=2):
        assert weyl_character(r, lam).is_weyl_invariant(r)


def test_first_difference():
    a = GroupRingElement({(1,): 1, (2,): 3})
    b = GroupRingElement({(1,): 1, (2,): 2})
    assert a.first_difference(a) is None
    assert a.first_difference(b) == ((2,), 3, 2)
