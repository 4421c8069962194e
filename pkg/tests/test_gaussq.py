from fractions import Fraction

import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from germnf.gaussq import I, ONE, ZERO, GaussQ, format_rational, parse_rational

from conftest import gaussq, nonzero_gaussq


def test_product_with_conjugate():
    x = GaussQ(Fraction(1, 2), Fraction(1, 3))
    assert x * x.conjugate() == GaussQ(Fraction(13, 36))


def test_i_squared():
    assert I * I == GaussQ(-1)


@given(gaussq)
def test_one_is_neutral(x):
    assert x * ONE == x
    assert x + ZERO == x


@given(gaussq, gaussq, gaussq)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == ZERO


@given(nonzero_gaussq, gaussq)
def test_division_inverts_multiplication(a, b):
    assert (b / a) * a == b
    assert a * a.inverse() == ONE


@given(gaussq, gaussq)
def test_parts_stay_reduced(a, b):
    for x in (a + b, a * b, a - b):
        for part in (x.re, x.im):
            assert part.denominator > 0
            assert Fraction(int(part.numerator), int(part.denominator)).denominator == part.denominator


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()


@given(gaussq)
def test_hash_consistent_with_equality(x):
    y = GaussQ(x.re, x.im)
    assert x == y and hash(x) == hash(y)
    if x.is_real():
        assert x == Fraction(int(x.re.numerator), int(x.re.denominator))


def test_mixed_operands():
    assert GaussQ(1, 1) + 1 == GaussQ(2, 1)
    assert 2 * GaussQ(0, 1) == GaussQ(0, 2)
    assert 1 - GaussQ(0, 1) == GaussQ(1, -1)
    assert GaussQ(1) / 2 == GaussQ(Fraction(1, 2))


@given(nonzero_gaussq, st.integers(-6, 6))
def test_integer_powers(x, n):
    expected = ONE
    for _ in range(abs(n)):
        expected = expected * x
    if n < 0:
        expected = expected.inverse()
    assert x ** n == expected


@given(nonzero_gaussq, st.integers(1, 6))
def test_roots_of_powers_are_found(y, n):
    roots = (y ** n).nth_roots(n)
    assert y in roots
    assert all(r ** n == y ** n for r in roots)
    assert roots == sorted(roots, key=GaussQ.sort_key)


@pytest.mark.parametrize("c, n, count", [
    (GaussQ(1), 4, 4),           # 1, -1, i, -i
    (GaussQ(-1), 2, 2),          # +-i
    (GaussQ(2), 2, 0),           # sqrt 2 is irrational
    (GaussQ(0, 2), 2, 2),        # (1+i)^2 = 2i
    (GaussQ(-4), 4, 4),          # (1+i)^4 = -4
    (GaussQ(Fraction(1, 2)), 2, 0),
    (GaussQ(Fraction(9, 4)), 2, 2),
])
def test_root_counts(c, n, count):
    roots = c.nth_roots(n)
    assert len(roots) == count
    assert all(r ** n == c for r in roots)


def test_root_choice_is_lexicographic():
    assert GaussQ(1).nth_roots(4)[0] == GaussQ(-1)
    assert GaussQ(Fraction(1, 3)).inverse().nth_roots(1) == [GaussQ(3)]


@pytest.mark.parametrize("text, value", [
    ("3/6", mpq(1, 2)), ("-4/2", mpq(-2)), ("0/5", mpq(0)), ("7", mpq(7)), (" +2/3 ", mpq(2, 3)),
])
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("text", ["1/0", "a/2", "1.5", "", "1/-2", "1//2"])
def test_parse_rational_rejects(text):
    with pytest.raises(ValueError):
        parse_rational(text)


@given(gaussq)
def test_string_roundtrip(x):
    re, im = x.to_strings()
    assert GaussQ.from_strings(re, im) == x
    assert format_rational(parse_rational(re)) == re


def test_immutable():
    with pytest.raises(AttributeError):
        ONE.re = mpq(2)


def test_no_float_coercion():
    with pytest.raises(TypeError):
        GaussQ(0.5)
