"""Gaussian rationals Q(i).

Polynomial coefficients are stored as plain ``gmpy2.mpq`` whenever the
imaginary part vanishes and as :class:`GaussRat` otherwise, so real data
never pays for complex arithmetic.  Use :func:`coeff` to build a
coefficient in canonical form.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from gmpy2 import mpq

from ..errors import DivisionByZeroField

_REAL = (int, Rational, type(mpq(0)))


def _q(x) -> mpq:
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


class GaussRat:
    """Exact complex rational ``re + im*i`` with ``im != 0``.

    Instances created directly may have a zero imaginary part; arithmetic
    always returns the canonical representation via :func:`coeff`.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _q(re)
        self.im = _q(im)

    def _parts(self, other):
        if isinstance(other, GaussRat):
            return other.re, other.im
        if isinstance(other, _REAL):
            return _q(other), mpq(0)
        return None

    def __add__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return coeff(self.re + p[0], self.im + p[1])

    __radd__ = __add__

    def __sub__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return coeff(self.re - p[0], self.im - p[1])

    def __rsub__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return coeff(p[0] - self.re, p[1] - self.im)

    def __mul__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        c, d = p
        return coeff(self.re * c - self.im * d, self.re * d + self.im * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        c, d = p
        n = c * c + d * d
        if n == 0:
            raise DivisionByZeroField("division by zero Gaussian rational")
        return coeff((self.re * c + self.im * d) / n, (self.im * c - self.re * d) / n)

    def __rtruediv__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return GaussRat(*p) / self

    def __neg__(self):
        return coeff(-self.re, -self.im)

    def __pos__(self):
        return self

    def __eq__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return self.re == p[0] and self.im == p[1]

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def conjugate(self):
        return coeff(self.re, -self.im)

    def __repr__(self):
        return f"GaussRat({self.re}, {self.im})"

    def __str__(self):
        return coeff_str(self)


def coeff(re, im=0):
    """Canonical coefficient: an ``mpq`` if real, else a :class:`GaussRat`."""
    if im == 0:
        return _q(re)
    return GaussRat(re, im)


def to_coeff(x):
    """Normalize an int / Fraction / mpq / complex-like value to a coefficient."""
    if isinstance(x, GaussRat):
        return coeff(x.re, x.im)
    if isinstance(x, _REAL):
        return _q(x)
    if isinstance(x, complex):
        # only exact small values are meaningful here
        return coeff(Fraction(x.real), Fraction(x.imag))
    raise TypeError(f"cannot use {type(x).__name__} as an exact coefficient")


def as_gaussrat(c) -> GaussRat:
    if isinstance(c, GaussRat):
        return c
    return GaussRat(c, 0)


def is_real(c) -> bool:
    return not isinstance(c, GaussRat) or c.im == 0


def _rat_str(q) -> str:
    q = _q(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def coeff_str(c) -> str:
    """Render a coefficient in the expression grammar (parseable back)."""
    if not isinstance(c, GaussRat) or c.im == 0:
        return _rat_str(c.re if isinstance(c, GaussRat) else c)
    im = c.im
    if im == 1:
        ipart = "i"
    elif im == -1:
        ipart = "-i"
    else:
        ipart = f"{_rat_str(im)}*i"
    if c.re == 0:
        return ipart
    sign = " - " if ipart.startswith("-") else " + "
    return f"({_rat_str(c.re)}{sign}{ipart.lstrip('-')})"
