import cmath
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from holant.errors import DivisionByZero, FieldTooSmall, ParseError
from holant.field import I, ONE, ZERO, as_scalar, is_pure_imaginary, is_real, parse_scalar, sqrt_if_simple, zeta

orders = st.sampled_from([1, 2, 3, 4, 5, 6, 8, 12, 24])
fractions = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def scalars(draw, terms=3):
    x = ZERO
    for _ in range(draw(st.integers(0, terms))):
        n = draw(orders)
        x = x + as_scalar(draw(fractions)) * zeta(n, draw(st.integers(0, n - 1)))
    return x


def close(x, z, tol=1e-9):
    return abs(x.to_complex() - z) < tol * (1 + abs(z))


@given(scalars(), scalars(), scalars())
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == ZERO
    assert a * ONE == a


@given(scalars())
def test_inverse(a):
    if a:
        assert a * a.inv() == ONE
    else:
        with pytest.raises(DivisionByZero):
            a.inv()


@given(scalars(), scalars())
def test_matches_complex_arithmetic(a, b):
    za, zb = a.to_complex(), b.to_complex()
    assert close(a + b, za + zb)
    assert close(a * b, za * zb)
    assert close(a.conj(), za.conjugate())
    if b:
        assert close(a / b, za / zb)


@given(scalars())
def test_print_parse_round_trip(a):
    assert parse_scalar(str(a)) == a


@given(scalars())
def test_equality_is_canonical(a):
    assert hash(a) == hash(a + ZERO)
    assert hash(a * zeta(24, 0)) == hash(a)


@given(scalars())
def test_reality_predicates(a):
    assert is_real(a) == (a == a.conj())
    assert is_real(a * a.conj())
    if a:
        assert is_pure_imaginary(a * I) == is_real(a)


def test_roots_of_unity():
    assert zeta(4) == I
    assert zeta(24, 6) == I
    assert zeta(8) ** 2 == I
    assert zeta(5) ** 5 == ONE
    assert zeta(7).conj() == zeta(7, 6)
    assert close(zeta(7), cmath.exp(2j * cmath.pi / 7))
    assert (zeta(5) * zeta(3)).minimal_order() == 15


def test_canonical_printing():
    assert str(sqrt_if_simple(2).inv()) == "1/2*zeta(8,1) - 1/2*zeta(8,3)"
    assert str(as_scalar(Fraction(3, 4))) == "3/4"
    assert str((1 + I) ** 3 / 2) == "-1 + i"


@pytest.mark.parametrize("text,value", [
    ("i^2", -1),
    ("(1+i)*(1-i)", 2),
    ("-3/6", Fraction(-1, 2)),
    ("zeta(4,3)", None),
    ("2^-2", Fraction(1, 4)),
])
def test_parse(text, value):
    x = parse_scalar(text)
    if value is None:
        assert x == -I
    else:
        assert x == as_scalar(value)


@pytest.mark.parametrize("text", ["1+", "zeta(0)", "i i", "(1", "foo", "1/0"])
def test_parse_errors(text):
    with pytest.raises((ParseError, DivisionByZero)):
        parse_scalar(text)


def test_field_cap():
    with pytest.raises(FieldTooSmall):
        zeta(241)


@pytest.mark.parametrize("a", [2, 3, -1, -3, 5, Fraction(9, 4), Fraction(-2, 7), 12])
def test_sqrt_rationals(a):
    r = sqrt_if_simple(a)
    assert r is not None and r * r == as_scalar(a)


@given(scalars())
def test_sqrt_of_squares(a):
    r = sqrt_if_simple(a * a)
    if r is not None:
        assert r * r == a * a


def test_sqrt_roots_of_unity():
    for n in (3, 4, 5, 8, 12):
        r = sqrt_if_simple(zeta(n))
        assert r is not None and r * r == zeta(n)


def test_sqrt_nonsimple():
    # sqrt(1 + i) has degree 8 over Q and is not cyclotomic
    assert sqrt_if_simple(1 + I) is None
