"""Exact Gaussian rationals, the scalar field of the matrix backend.

A value is stored as ``(a + b i) / d`` with integers ``a, b`` and ``d > 0``
reduced so that ``gcd(a, b, d) == 1``.  That form is canonical, so equality
and hashing are structural.  The real and imaginary parts are exposed as
:class:`fractions.Fraction` in lowest terms.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from numbers import Rational
from typing import Union

Scalar = Union["GaussianRational", int, Fraction]


def _from_parts(re: Fraction, im: Fraction) -> tuple[int, int, int]:
    d = re.denominator * im.denominator // gcd(re.denominator, im.denominator)
    return re.numerator * (d // re.denominator), im.numerator * (d // im.denominator), d


class GaussianRational:
    __slots__ = ("_a", "_b", "_d")

    def __init__(self, re: Union[int, Fraction, str] = 0, im: Union[int, Fraction, str] = 0):
        re = Fraction(re)
        im = Fraction(im)
        self._a, self._b, self._d = _from_parts(re, im)

    @classmethod
    def _raw(cls, a: int, b: int, d: int) -> "GaussianRational":
        # caller guarantees d != 0
        if d < 0:
            a, b, d = -a, -b, -d
        g = gcd(a, b, d)
        if g != 1:
            a //= g
            b //= g
            d //= g
        obj = object.__new__(cls)
        obj._a = a
        obj._b = b
        obj._d = d
        return obj

    @classmethod
    def coerce(cls, value: Scalar) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, int):
            return cls._raw(value, 0, 1)
        if isinstance(value, Rational):
            return cls._raw(value.numerator, 0, value.denominator)
        if isinstance(value, complex):
            raise TypeError("floating complex values are not exact; pass re/im as Fractions")
        raise TypeError(f"cannot interpret {value!r} as a Gaussian rational")

    @property
    def re(self) -> Fraction:
        return Fraction(self._a, self._d)

    @property
    def im(self) -> Fraction:
        return Fraction(self._b, self._d)

    def as_integer_triple(self) -> tuple[int, int, int]:
        """``(a, b, d)`` with value ``(a + b i) / d``, reduced, ``d > 0``."""
        return self._a, self._b, self._d

    def conjugate(self) -> "GaussianRational":
        if self._b == 0:
            return self
        obj = object.__new__(GaussianRational)
        obj._a, obj._b, obj._d = self._a, -self._b, self._d
        return obj

    def is_zero(self) -> bool:
        return self._a == 0 and self._b == 0

    def norm(self) -> Fraction:
        """Squared modulus ``re^2 + im^2``."""
        return Fraction(self._a * self._a + self._b * self._b, self._d * self._d)

    # arithmetic ------------------------------------------------------------

    def __add__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        d = self._d * o._d
        return GaussianRational._raw(self._a * o._d + o._a * self._d, self._b * o._d + o._b * self._d, d)

    __radd__ = __add__

    def __neg__(self):
        obj = object.__new__(GaussianRational)
        obj._a, obj._b, obj._d = -self._a, -self._b, self._d
        return obj

    def __pos__(self):
        return self

    def __sub__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        a, b, c, e = self._a, self._b, o._a, o._b
        return GaussianRational._raw(a * c - b * e, a * e + b * c, self._d * o._d)

    __rmul__ = __mul__

    def inverse(self) -> "GaussianRational":
        if self.is_zero():
            raise ZeroDivisionError("Gaussian rational division by zero")
        # d / (a + b i) = d (a - b i) / (a^2 + b^2)
        n = self._a * self._a + self._b * self._b
        return GaussianRational._raw(self._d * self._a, -self._d * self._b, n)

    def __truediv__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return o * self.inverse()

    # comparison / hashing ----------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self._a == other._a and self._b == other._b and self._d == other._d
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self._a == o._a and self._b == o._b and self._d == o._d

    def __hash__(self):
        if self._b == 0:
            return hash(Fraction(self._a, self._d))
        return hash((self._a, self._b, self._d))

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"GaussianRational({str(self.re)!r}, {str(self.im)!r})"

    def __str__(self):
        re, im = self.re, self.im
        if im == 0:
            return str(re)
        sign = "-" if im < 0 else "+"
        mag = abs(im)
        im_s = "i" if mag == 1 else f"{mag}i"
        if re == 0:
            return ("-" if im < 0 else "") + im_s
        return f"{re}{sign}{im_s}"


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I_UNIT = GaussianRational(0, 1)
