import itertools
import random

import pytest
from hypothesis import given, strategies as st

from charp.root_datum import (COXETER_NUMBERS, CartanType, PrimeError, RootDatum, RootDatumError,
                              build_root_datum, check_characteristic, digit_head, digit_tail,
                              dominance_flags, dominance_leq, p_adic_digits)

ALL_TYPES = ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "D5",
             "E6", "E7", "E8", "F4", "G2"]


def test_cartan_matrices():
    assert RootDatum.build("A1").cartan_matrix == ((2,),)
    assert RootDatum.build("A2").cartan_matrix == ((2, -1), (-1, 2))
    # G2 with alpha_1 short: <coroot_1, alpha_2> = -3
    assert RootDatum.build("G2").cartan_matrix == ((2, -3), (-1, 2))
    b3 = RootDatum.build("B3").cartan_matrix
    c3 = RootDatum.build("C3").cartan_matrix
    assert tuple(zip(*b3)) == c3


def test_parse_case_insensitive():
    assert CartanType.parse("a2") == CartanType.parse("A2")
    assert CartanType.parse("g2").affine_name == "G~2"
    for bad in ("X3", "A0", "B1", "D2", "E5", "G3", "F2", ""):
        with pytest.raises(RootDatumError):
            CartanType.parse(bad)


@pytest.mark.parametrize("name", ALL_TYPES)
def test_structure(name):
    rd = RootDatum.build(name)
    rd.check()
    assert rd.coxeter_number == COXETER_NUMBERS[name[0]](rd.rank)
    assert len(rd.coroots) == rd.rank * rd.coxeter_number
    for c in rd.simple_coroots:
        assert rd.pairing(c, rd.rho) == 1


@pytest.mark.parametrize("name", ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "D4", "F4", "G2"])
def test_highest_coroot_condition(name):
    rd = RootDatum.build(name)
    top = rd.highest_coroot
    coroot_coords = {c.coords for c in rd.coroots}
    assert top.coords in coroot_coords
    for c in rd.simple_coroots:
        assert tuple(a + b for a, b in zip(top.coords, c.coords)) not in coroot_coords


def test_coxeter_numbers():
    expected = {"A1": 2, "A2": 3, "B2": 4, "G2": 6, "F4": 12, "E8": 30, "D4": 6}
    for name, h in expected.items():
        assert RootDatum.build(name).coxeter_number == h


def test_pairing_examples(rd):
    a1, a2 = rd("A1"), rd("A2")
    assert a2.pairing(a2.simple_coroots[0], a2.rho) == 1
    assert a1.pairing(a1.simple_coroots[0], a1.simple_roots[0]) == 2
    assert a2.pairing(a2.highest_coroot, a2.rho) == 2
    assert a2.highest_coroot.coords == (1, 1)
    assert a1.highest_coroot.coords == (1,)


def test_dominance_flags(rd):
    assert dominance_flags(rd("A1"), (3,), 3) == (True, False)
    assert dominance_flags(rd("A1"), (2,), 3) == (True, True)
    assert dominance_flags(rd("A2"), (-1, 4), 7) == (False, False)


def test_dominance_leq_examples(rd):
    a1, a2 = rd("A1"), rd("A2")
    assert dominance_leq(a1, (1,), (3,))
    assert not dominance_leq(a1, (0,), (3,))
    assert dominance_leq(a2, (0, 0), (1, 1))
    assert not dominance_leq(a2, (1, 1), (0, 0))


@pytest.mark.parametrize("name", ["A2", "B2", "G2"])
def test_dominance_partial_order(rd, name):
    r = rd(name)
    sample = list(itertools.product(range(-2, 3), repeat=2))
    leq = {(a, b): dominance_leq(r, a, b) for a in sample for b in sample}
    for a in sample:
        assert leq[a, a]
    for a, b in itertools.product(sample, repeat=2):
        if a != b:
            assert not (leq[a, b] and leq[b, a])
    for a, b, c in itertools.product(sample[::2], repeat=3):
        if leq[a, b] and leq[b, c]:
            assert leq[a, c]


def test_digit_examples(rd):
    assert p_adic_digits(rd("A1"), (7,), 3) == [(1,), (2,)]
    assert p_adic_digits(rd("A1"), (3,), 3) == [(0,), (1,)]
    assert p_adic_digits(rd("A2"), (5, 1), 5) == [(0, 1), (1, 0)]
    assert p_adic_digits(rd("A2"), (0, 0), 5) == []
    with pytest.raises(RootDatumError):
        p_adic_digits(rd("A1"), (-1,), 3)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_digit_reconstruction(rd, p):
    rng = random.Random(p)
    r = rd("A3")
    for _ in range(1000):
        lam = tuple(rng.randrange(0, 10**rng.randrange(1, 6)) for _ in range(3))
        digits = p_adic_digits(r, lam, p)
        assert all(0 <= x < p for d in digits for x in d)
        assert not digits or any(digits[-1])
        total = tuple(sum(p**k * d[i] for k, d in enumerate(digits)) for i in range(3))
        assert total == lam


@given(st.lists(st.integers(0, 10**6), min_size=1, max_size=4), st.integers(1, 6), st.sampled_from([2, 3, 5]))
def test_head_tail(lam, k, p):
    lam = tuple(lam)
    m = p**k
    head, tail = digit_head(lam, m), digit_tail(lam, m)
    assert tuple(h + m * t for h, t in zip(head, tail)) == lam
    assert all(0 <= h < m for h in head)


def test_characteristic():
    assert check_characteristic(5) == 5
    for bad in (4, 9, 15):
        with pytest.raises(PrimeError):
            check_characteristic(bad)
    for bad in (0, 1, -3):
        with pytest.raises(RootDatumError):
            check_characteristic(bad)


def test_check_weight_rank(rd):
    with pytest.raises(RootDatumError):
        rd("A2").check_weight((1,))


def test_build_root_datum_alias():
    assert build_root_datum("b2") == RootDatum.build(CartanType("B", 2))
