from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from vilenkin.group import (CosetId, DomainError, GroupElement, Side, VilenkinError, character,
                            character_index, h_of, lambda_map, walsh)

PRIMES = st.sampled_from([2, 3, 5])


@st.composite
def elements(draw, p=None, side=Side.PRIMAL, lo=-4, hi=4):
    p = draw(PRIMES) if p is None else p
    digits = draw(st.dictionaries(st.integers(lo, hi), st.integers(0, p - 1), max_size=6))
    return GroupElement.make(p, digits, side)


@st.composite
def triples(draw, side=Side.PRIMAL):
    p = draw(PRIMES)
    return tuple(draw(elements(p, side)) for _ in range(3))


@given(triples())
def test_group_laws(t):
    x, y, z = t
    zero = GroupElement.zero(x.p)
    assert (x + y) + z == x + (y + z)
    assert x + y == y + x
    assert x + zero == x
    assert x + (-x) == zero
    assert x - y == x + (-y)


@given(elements())
def test_digit_string_round_trip(x):
    assert GroupElement.parse(x.to_string(), x.p) == x


@given(elements())
def test_split_into_lattice_and_fraction(x):
    lat, frac = x.split()
    assert lat + frac == x
    assert lat.in_lattice()
    assert frac.in_ball(0)


@given(st.integers(0, 10_000), PRIMES)
def test_lambda_inverts_lattice_enumeration(alpha, p):
    assert lambda_map(h_of(alpha, p)) == alpha


@given(elements(lo=1))
def test_lambda_of_fractional_part_in_unit_interval(x):
    assert 0 <= lambda_map(x) < 1


@given(elements(), st.integers(-3, 3))
def test_shift_moves_digits(x, k):
    y = x.shift(k)
    for j in range(-8, 9):
        assert y.digit(j) == x.digit(j + k)


@given(st.data())
def test_character_bimultiplicative(data):
    p = data.draw(PRIMES)
    x, y = data.draw(elements(p)), data.draw(elements(p))
    w, v = data.draw(elements(p, Side.DUAL)), data.draw(elements(p, Side.DUAL))
    assert character_index(x + y, w) == (character_index(x, w) + character_index(y, w)) % p
    assert character_index(x, w + v) == (character_index(x, w) + character_index(x, v)) % p


@given(st.data())
def test_automorphisms_are_adjoint(data):
    p = data.draw(PRIMES)
    x, w = data.draw(elements(p)), data.draw(elements(p, Side.DUAL))
    for k in (-2, -1, 1, 2):
        assert character_index(x.shift(k), w) == character_index(x, w.shift(k))


@given(st.data())
def test_character_trivial_on_annihilators(data):
    p = data.draw(PRIMES)
    h = data.draw(elements(p, hi=0))
    lam = data.draw(elements(p, Side.DUAL, hi=0))
    assert character_index(h, lam) == 0
    x = data.draw(elements(p, lo=1))
    w = data.draw(elements(p, Side.DUAL, lo=1))
    assert character_index(x, w) == 0


def test_character_values():
    x = GroupElement.parse("0.1", 2)
    w = h_of(1, 2, Side.DUAL)
    assert character(x, w) == -1
    assert walsh(0, x) == 1
    assert walsh(1, x) == -1


def test_walsh_on_dual_side():
    w = GroupElement.parse("0.2", 3, Side.DUAL)
    assert walsh(1, w, Side.DUAL) == character(h_of(1, 3), w)


def test_side_and_prime_mismatch():
    x = GroupElement.parse("1.0", 2)
    with pytest.raises(DomainError):
        x + GroupElement.parse("1.0", 3)
    with pytest.raises(DomainError):
        character_index(x, x)
    with pytest.raises(VilenkinError):
        GroupElement.parse("2.0", 2)
    with pytest.raises(VilenkinError):
        GroupElement.parse("10", 2)
    with pytest.raises(VilenkinError):
        GroupElement.make(4, {1: 1})


@given(elements(lo=-2, hi=3))
def test_coset_contains_its_points(x):
    c = CosetId.of(x, -3, 3)
    assert x in c
    assert CosetId.from_index(c.index, x.p, x.side, -3, 3) == c
    assert c.measure == Fraction(x.p) ** -3


def test_coset_strings_are_padded():
    assert str(CosetId.from_index(4, 2, Side.DUAL, 0, 3)) == "0.100"
    assert str(CosetId.from_index(3, 2, Side.DUAL, -2, 1)) == "01.1"
    assert str(CosetId(2, Side.DUAL, 0, 0, ())) == "0.0"
