from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from forminv.coefficients import (
    I,
    ONE,
    ZERO,
    CoefficientSyntaxError,
    GaussianRational,
    add,
    format,
    inverse,
    mul,
    parse,
)

G = GaussianRational
rationals = st.fractions(max_denominator=50).filter(lambda q: abs(q.numerator) < 10**6)
gaussians = st.builds(G, rationals, rationals)


@pytest.mark.parametrize(
    "a, b, expected",
    [
        (G(Fraction(1, 2)), G(Fraction(1, 3)), G(Fraction(5, 6))),
        (G(0, 1), G(0, -1), ZERO),
        (G(Fraction(2, 3), Fraction(1, 4)), G(Fraction(1, 3), Fraction(3, 4)), G(1, 1)),
    ],
)
def test_add_examples(a, b, expected):
    assert add(a, b) == expected


def test_mul_examples():
    assert mul(I, I) == G(-1)
    x = G(Fraction(3, 7), -2)
    assert mul(ONE, x) == x
    assert mul(G(1, 1), G(1, -1)) == G(2)


def test_inverse_examples():
    assert inverse(G(2)) == G(Fraction(1, 2))
    assert inverse(I) == G(0, -1)
    assert inverse(G(1, 1)) == G(Fraction(1, 2), Fraction(-1, 2))
    with pytest.raises(ZeroDivisionError):
        inverse(ZERO)


def test_parse_and_format_examples():
    c = parse("3/4+1/2i")
    assert (Fraction(c.re), Fraction(c.im)) == (Fraction(3, 4), Fraction(1, 2))
    assert parse("-2") == G(-2)
    assert format(ZERO) == "0"
    assert format(G(0, -1)) == "0-1i"
    assert format(G(Fraction(6, 8))) == "3/4"


@pytest.mark.parametrize("bad", ["", "1/", "i", "1+i", "1.5", "1/0", "2/3+1/0i", "1e3", "1 + 2i", "--1"])
def test_parse_rejects(bad):
    with pytest.raises((CoefficientSyntaxError, ZeroDivisionError)):
        parse(bad)


def test_floats_are_rejected():
    with pytest.raises(TypeError):
        G(0.5)


def test_zero_is_unique():
    assert G(0, 0) == ZERO == G(Fraction(0, 5))
    assert hash(G(Fraction(2, 4))) == hash(G(Fraction(1, 2)))


@given(gaussians)
def test_format_round_trip(a):
    assert parse(format(a)) == a


@given(gaussians, gaussians, gaussians)
def test_field_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == ZERO
    if a:
        assert a * inverse(a) == ONE


@given(gaussians)
def test_matches_complex_fraction_oracle(a):
    # (x + iy)^2 = x^2 - y^2 + 2xy i, computed with Fraction
    x, y = Fraction(a.re), Fraction(a.im)
    sq = a * a
    assert (Fraction(sq.re), Fraction(sq.im)) == (x * x - y * y, 2 * x * y)
    assert a.conjugate() * a == G(x * x + y * y)


def test_surrounding_whitespace_is_ignored():
    assert parse(" 1/2-3i\n") == G(Fraction(1, 2), -3)
