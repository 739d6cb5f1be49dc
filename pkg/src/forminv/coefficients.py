"""Exact arithmetic in the Gaussian rationals Q(i).

Both parts are ``gmpy2.mpq`` values, which are always kept in lowest terms with
a positive denominator, so equal numbers have equal representations and can be
used as dictionary keys.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational

from gmpy2 import mpq

__all__ = [
    "GaussianRational",
    "CoefficientSyntaxError",
    "add",
    "mul",
    "inverse",
    "parse",
    "format",
    "ZERO",
    "ONE",
    "I",
]

_MPQ_ZERO = mpq(0)

_GRAMMAR = re.compile(
    r"""^\s*
    (?P<re>[+-]?\d+)(?:/(?P<red>\d+))?
    (?:(?P<im>[+-]\d+)(?:/(?P<imd>\d+))?i)?
    \s*$""",
    re.VERBOSE,
)


class CoefficientSyntaxError(ValueError):
    """Raised for text that does not match ``[+-]N[/D][+-M[/D2]i]``."""


_MPQ = type(_MPQ_ZERO)


def _to_mpq(x):
    if isinstance(x, _MPQ):
        return x
    if isinstance(x, int):
        return mpq(x)
    if isinstance(x, Rational):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, str):
        return mpq(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


class GaussianRational:
    """An element ``re + im*i`` of Q(i). Immutable."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _to_mpq(re))
        object.__setattr__(self, "im", _to_mpq(im))

    @classmethod
    def _raw(cls, re, im=_MPQ_ZERO):
        # trusted constructor for mpq parts
        obj = object.__new__(cls)
        object.__setattr__(obj, "re", re)
        object.__setattr__(obj, "im", im)
        return obj

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, cls):
            return x
        if isinstance(x, complex):
            raise TypeError("floating complex numbers are not exact; use GaussianRational")
        if isinstance(x, str):
            return parse(x)
        return cls._raw(_to_mpq(x))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    def __reduce__(self):
        return (GaussianRational, (Fraction(int(self.re.numerator), int(self.re.denominator)),
                                   Fraction(int(self.im.numerator), int(self.im.denominator))))

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        try:
            other = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational._raw(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational._raw(-self.re, -self.im)

    def __pos__(self):
        return self

    def __sub__(self, other):
        try:
            other = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational._raw(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        try:
            other = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        try:
            other = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return GaussianRational._raw(a * c)
        return GaussianRational._raw(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def inverse(self) -> "GaussianRational":
        a, b = self.re, self.im
        norm = a * a + b * b
        if not norm:
            raise ZeroDivisionError("inverse of zero in Q(i)")
        return GaussianRational._raw(a / norm, -b / norm)

    def __truediv__(self, other):
        try:
            other = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        try:
            other = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> "GaussianRational":
        return GaussianRational._raw(self.re, -self.im)

    # comparison / hashing ---------------------------------------------------

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Rational)):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def is_real(self) -> bool:
        return not self.im

    def __repr__(self):
        return f"GaussianRational({format(self)!r})"

    def __str__(self):
        return format(self)


ZERO = GaussianRational._raw(_MPQ_ZERO)
ONE = GaussianRational._raw(mpq(1))
I = GaussianRational._raw(_MPQ_ZERO, mpq(1))


def add(a: GaussianRational, b: GaussianRational) -> GaussianRational:
    return GaussianRational.coerce(a) + GaussianRational.coerce(b)


def mul(a: GaussianRational, b: GaussianRational) -> GaussianRational:
    return GaussianRational.coerce(a) * GaussianRational.coerce(b)


def inverse(a: GaussianRational) -> GaussianRational:
    return GaussianRational.coerce(a).inverse()


def _fmt_rational(q) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format(a: GaussianRational) -> str:  # noqa: A001 - mirrors parse()
    """Canonical text: real part always present, imaginary part only if nonzero.

    >>> format(GaussianRational(Fraction(3, 4), Fraction(1, 2)))
    '3/4+1/2i'
    """
    a = GaussianRational.coerce(a)
    text = _fmt_rational(a.re)
    if a.im:
        im = _fmt_rational(a.im)
        text += im if im.startswith("-") else "+" + im
        text += "i"
    return text


def parse(text: str) -> GaussianRational:
    m = _GRAMMAR.match(text)
    if m is None:
        raise CoefficientSyntaxError(f"malformed coefficient {text!r}")
    re_den = int(m["red"]) if m["red"] is not None else 1
    im_den = int(m["imd"]) if m["imd"] is not None else 1
    if re_den == 0 or im_den == 0:
        raise CoefficientSyntaxError(f"zero denominator in {text!r}")
    re_part = mpq(int(m["re"]), re_den)
    im_part = mpq(int(m["im"]), im_den) if m["im"] is not None else _MPQ_ZERO
    return GaussianRational._raw(re_part, im_part)
