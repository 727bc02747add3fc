"""Exact scalars: rationals and Gaussian rationals.

Rationals are plain :class:`fractions.Fraction` values (always reduced, with a
positive denominator).  :class:`GaussianRational` adds a square root of -1 on
top of them.  Both kinds mix freely in arithmetic, and a Gaussian rational with
zero imaginary part compares and hashes equal to the matching Fraction.

Text forms::

    "-27/2", "3", "6/4"            rationals (the last parses to 3/2)
    {"re": "1/2", "im": "-3"}      Gaussian rationals (JSON object)
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

from .errors import DivisionByZero, ParseError

__all__ = [
    "Fraction",
    "GaussianRational",
    "Scalar",
    "I",
    "as_scalar",
    "to_gaussian",
    "inv",
    "power",
    "try_parse",
    "parse_scalar",
    "format_scalar",
    "FIELDS",
]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return try_parse(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


class GaussianRational:
    """An element re + im*i of Q(i)."""

    __slots__ = ("_re", "_im")

    def __init__(self, re=0, im=0):
        self._re = _frac(re)
        self._im = _frac(im)

    @property
    def re(self) -> Fraction:
        return self._re

    @property
    def im(self) -> Fraction:
        return self._im

    @property
    def real(self) -> Fraction:
        return self._re

    @property
    def imag(self) -> Fraction:
        return self._im

    def conjugate(self) -> GaussianRational:
        return GaussianRational(self._re, -self._im)

    def norm(self) -> Fraction:
        return self._re * self._re + self._im * self._im

    @staticmethod
    def _coerce(other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussianRational(other, 0)
        return None

    def __repr__(self) -> str:
        return f"GaussianRational({str(self._re)!r}, {str(self._im)!r})"

    def __str__(self) -> str:
        if self._im == 0:
            return str(self._re)
        sign = "-" if self._im < 0 else "+"
        mag = abs(self._im)
        im = "i" if mag == 1 else f"{mag}*i"
        if self._re == 0:
            return f"-{im}" if sign == "-" else im
        return f"{self._re}{sign}{im}"

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._re == o._re and self._im == o._im

    def __hash__(self) -> int:
        if self._im == 0:
            return hash(self._re)
        return hash((self._re, self._im))

    def __bool__(self) -> bool:
        return bool(self._re) or bool(self._im)

    def __neg__(self) -> GaussianRational:
        return GaussianRational(-self._re, -self._im)

    def __pos__(self) -> GaussianRational:
        return self

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self._re + o._re, self._im + o._im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self._re - o._re, self._im - o._im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(
            self._re * o._re - self._im * o._im,
            self._re * o._im + self._im * o._re,
        )

    __rmul__ = __mul__

    def inverse(self) -> GaussianRational:
        n = self.norm()
        if n == 0:
            raise DivisionByZero("inverse of zero")
        return GaussianRational(self._re / n, -self._im / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = GaussianRational(1, 0)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result


Scalar = Union[Fraction, GaussianRational]

I = GaussianRational(0, 1)


def as_scalar(x) -> Scalar:
    """Coerce ints and strings to Fractions; leave exact scalars alone."""
    if isinstance(x, (Fraction, GaussianRational)):
        return x
    if isinstance(x, (int, str)):
        return _frac(x)
    raise TypeError(f"not an exact scalar: {x!r}")


def to_gaussian(x) -> GaussianRational:
    if isinstance(x, GaussianRational):
        return x
    return GaussianRational(as_scalar(x), 0)


def inv(x: Scalar) -> Scalar:
    if x == 0:
        raise DivisionByZero("inverse of zero")
    if isinstance(x, GaussianRational):
        return x.inverse()
    return 1 / as_scalar(x)


def power(x: Scalar, n: int) -> Scalar:
    if n < 0 and x == 0:
        raise DivisionByZero(f"zero raised to negative power {n}")
    return as_scalar(x) ** n


_MINUS = "-−"


def _digits(text: str, pos: int) -> int:
    while pos < len(text) and "0" <= text[pos] <= "9":
        pos += 1
    return pos


def try_parse(text: str) -> Fraction:
    """Parse ``[-]p[/q]`` into a reduced Fraction.

    The ASCII hyphen and the Unicode minus sign are both accepted.
    """
    if not isinstance(text, str):
        raise ParseError(f"expected a string, got {type(text).__name__}", None, repr(text))
    pos = 1 if text[:1] in tuple(_MINUS) else 0
    end = _digits(text, pos)
    if end == pos:
        raise ParseError(f"expected a digit at position {end} in {text!r}", end, text)
    num, den = text[pos:end], "1"
    if end < len(text) and text[end] == "/":
        start = end + 1
        end = _digits(text, start)
        if end == start:
            raise ParseError(f"expected a digit at position {end} in {text!r}", end, text)
        den = text[start:end]
    if end != len(text):
        raise ParseError(f"unexpected character at position {end} in {text!r}", end, text)
    p, q = int(num), int(den)
    if q == 0:
        if p == 0:
            raise ParseError(f"indeterminate rational {text!r}", text.index("/"), text)
        raise DivisionByZero(f"zero denominator in {text!r}")
    value = Fraction(p, q)
    return -value if pos else value


def parse_scalar(obj, field: str = "rational") -> Scalar:
    """Parse a JSON scalar (string, int or ``{"re", "im"}`` object).

    With ``field="gaussian"`` every result is a GaussianRational; with
    ``field="rational"`` a Gaussian object is only accepted when its
    imaginary part is zero.
    """
    if field not in FIELDS:
        raise ParseError(f"unknown field {field!r}")
    if isinstance(obj, bool):
        raise ParseError(f"booleans are not scalars: {obj!r}")
    if isinstance(obj, int):
        value: Scalar = Fraction(obj)
    elif isinstance(obj, str):
        value = try_parse(obj)
    elif isinstance(obj, dict):
        if set(obj) != {"re", "im"}:
            raise ParseError(f"Gaussian scalar needs exactly the keys 're' and 'im', got {sorted(obj)}")
        value = GaussianRational(parse_scalar(obj["re"]), parse_scalar(obj["im"]))
    else:
        raise ParseError(f"not a scalar: {obj!r}")
    if field == "gaussian":
        return to_gaussian(value)
    if isinstance(value, GaussianRational):
        if value.im != 0:
            raise ParseError(f"non-real scalar {value} requires the gaussian field")
        return value.re
    return value


def format_scalar(x: Scalar):
    """JSON-ready text form; inverse of :func:`parse_scalar`."""
    if isinstance(x, GaussianRational):
        return {"re": str(x.re), "im": str(x.im)}
    return str(as_scalar(x))


FIELDS = ("rational", "gaussian")
