"""Exact rational functions ``num / den`` over Q(i).

The denominator is kept as a product of monic "atoms" with multiplicities.
Sums use the least common multiple of the two atom multisets and every
result is reduced by trial division of the numerator by its atoms.  No
multivariate GCD is needed: two atoms may share a factor without harming
correctness, since equality is always decided by cross-multiplying and
testing the expanded numerator for emptiness.

All values are *generic-point* objects: a field is zero iff it vanishes as
a rational function, i.e. on a dense open subset of the chart.
"""
from __future__ import annotations

from typing import Sequence

from ..errors import DimensionMismatch, DivisionByZeroField
from .gaussrat import to_coeff
from .poly import Poly, poly_str


def _atom_key(atom: Poly) -> str:
    return poly_str(atom)


def _split_denominator(den: Poly):
    """Factor ``den`` as ``c * prod(atom**m)``; returns ``(c, {atom: m})``."""
    if den.is_zero():
        raise DivisionByZeroField("zero denominator")
    atoms: dict[Poly, int] = {}
    lows = den.monomial_factor()
    if any(lows):
        mono = Poly(den.nvars, {tuple(lows): 1})
        den = den.exact_div(mono)
        for i, e in enumerate(lows):
            if e:
                atoms[Poly.var(den.nvars, i)] = e
    c, rest = den.monic()
    if not rest.is_const():
        atoms[rest] = atoms.get(rest, 0) + 1
    return c, atoms


def _cancel(num: Poly, atoms: dict[Poly, int]):
    if num.is_zero():
        return num, {}
    out = {}
    for atom, m in atoms.items():
        while m:
            q = num.exact_div(atom)
            if q is None:
                break
            num = q
            m -= 1
        if m:
            out[atom] = m
    return num, out


def _freeze(atoms: dict[Poly, int]) -> tuple:
    return tuple(sorted(atoms.items(), key=lambda am: _atom_key(am[0])))


def _product(nvars: int, atoms) -> Poly:
    p = Poly.one(nvars)
    for a, m in atoms:
        p = p * a ** m
    return p


class ScalarField:
    """Immutable exact rational function in ``nvars`` chart variables."""

    __slots__ = ("num", "dens")

    def __init__(self, num: Poly, den: Poly | None = None):
        if den is None or den.is_const():
            if den is not None:
                c = den.const_value()
                if not c:
                    raise DivisionByZeroField("zero denominator")
                num = num.scale(1 / c)
            self.num = num
            self.dens = ()
            return
        if den.nvars != num.nvars:
            raise DimensionMismatch("numerator and denominator live on different charts")
        c, atoms = _split_denominator(den)
        num, atoms = _cancel(num.scale(1 / c), atoms)
        self.num = num
        self.dens = _freeze(atoms)

    @classmethod
    def _raw(cls, num: Poly, dens: tuple) -> "ScalarField":
        f = object.__new__(cls)
        f.num = num
        f.dens = dens
        return f

    @classmethod
    def _reduced(cls, num: Poly, atoms: dict) -> "ScalarField":
        if not atoms:
            return cls._raw(num, ())
        num, atoms = _cancel(num, atoms)
        return cls._raw(num, _freeze(atoms))

    # -- constructors -----------------------------------------------------

    @classmethod
    def const(cls, nvars: int, c) -> "ScalarField":
        return cls._raw(Poly.const(nvars, c), ())

    @classmethod
    def zero(cls, nvars: int) -> "ScalarField":
        return cls._raw(Poly.zero(nvars), ())

    @classmethod
    def one(cls, nvars: int) -> "ScalarField":
        return cls._raw(Poly.one(nvars), ())

    @classmethod
    def var(cls, nvars: int, i: int) -> "ScalarField":
        return cls._raw(Poly.var(nvars, i), ())

    @classmethod
    def parse(cls, text: str, nvars: int) -> "ScalarField":
        from .parser import parse_expr

        return parse_expr(text, nvars)

    # -- inspection -------------------------------------------------------

    @property
    def nvars(self) -> int:
        return self.num.nvars

    @property
    def den(self) -> Poly:
        return _product(self.num.nvars, self.dens)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_const(self) -> bool:
        return not self.dens and self.num.is_const()

    def const_value(self):
        if not self.is_const():
            raise ValueError(f"{self} is not constant")
        return self.num.const_value()

    def is_polynomial(self) -> bool:
        return not self.dens

    def evaluate(self, point: Sequence):
        d = self.den.evaluate(point)
        if not d:
            raise DivisionByZeroField(f"denominator of {self} vanishes at {tuple(point)}")
        return self.num.evaluate(point) / d

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "ScalarField":
        if isinstance(other, ScalarField):
            if other.num.nvars != self.num.nvars:
                raise DimensionMismatch(f"{self.num.nvars} vs {other.num.nvars} variables")
            return other
        if isinstance(other, Poly):
            return ScalarField._raw(other, ())
        return ScalarField._raw(Poly.const(self.num.nvars, to_coeff(other)), ())

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        if other.num.is_zero():
            return self
        if self.num.is_zero():
            return other
        if self.dens == other.dens:
            if not self.dens:
                return ScalarField._raw(self.num + other.num, ())
            return ScalarField._reduced(self.num + other.num, dict(self.dens))
        a, b = dict(self.dens), dict(other.dens)
        lcm = dict(a)
        for atom, m in b.items():
            if lcm.get(atom, 0) < m:
                lcm[atom] = m
        na, nb = self.num, other.num
        for atom, m in lcm.items():
            ea, eb = m - a.get(atom, 0), m - b.get(atom, 0)
            if ea:
                na = na * atom ** ea
            if eb:
                nb = nb * atom ** eb
        return ScalarField._reduced(na + nb, lcm)

    __radd__ = __add__

    def __neg__(self):
        return ScalarField._raw(-self.num, self.dens)

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        if self.num.is_zero() or other.num.is_zero():
            return ScalarField.zero(self.num.nvars)
        if not other.dens and not self.dens:
            return ScalarField._raw(self.num * other.num, ())
        atoms = dict(self.dens)
        for atom, m in other.dens:
            atoms[atom] = atoms.get(atom, 0) + m
        return ScalarField._reduced(self.num * other.num, atoms)

    __rmul__ = __mul__

    def inverse(self) -> "ScalarField":
        if self.num.is_zero():
            raise DivisionByZeroField("inverse of the zero field")
        c, atoms = _split_denominator(self.num)
        num = _product(self.num.nvars, self.dens).scale(1 / c)
        return ScalarField._reduced(num, atoms)

    def __truediv__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        if other.num.is_zero():
            raise DivisionByZeroField(f"division of {self} by the zero field")
        if other.is_const():
            return ScalarField._raw(self.num.scale(1 / other.num.const_value()), self.dens)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = ScalarField.one(self.num.nvars)
        for _ in range(e):
            out = out * self
        return out

    def diff(self, i: int) -> "ScalarField":
        """Partial derivative with respect to chart variable ``i`` (0-based)."""
        n = self.num.nvars
        if not 0 <= i < n:
            raise DimensionMismatch(f"variable index {i} out of range for {n} variables")
        if not self.dens:
            return ScalarField._raw(self.num.diff(i), ())
        # (N/D)' = (N' P - N * sum m_j a_j' P / a_j) / (D P),  P = prod a_j
        live = [(a, m) for a, m in self.dens if not a.diff(i).is_zero()]
        if not live:
            return ScalarField._raw(self.num.diff(i), self.dens)
        P = _product(n, [(a, 1) for a, _ in live])
        acc = self.num.diff(i) * P
        for a, m in live:
            cof = _product(n, [(b, 1) for b, _ in live if b is not a])
            acc = acc - self.num * a.diff(i) * cof * m
        atoms = dict(self.dens)
        for a, _ in live:
            atoms[a] += 1
        return ScalarField._reduced(acc, atoms)

    # -- comparison -------------------------------------------------------

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except (TypeError, DimensionMismatch):
            return NotImplemented
        if self.dens == other.dens:
            return self.num == other.num
        return (self - other).is_zero()

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    __hash__ = None

    def __bool__(self):
        return not self.num.is_zero()

    def __repr__(self):
        return f"ScalarField({self})"

    def __str__(self):
        num = poly_str(self.num)
        if not self.dens:
            return num
        parts = []
        for a, m in self.dens:
            s = poly_str(a)
            if len(a.t) > 1:
                s = f"({s})"
            parts.append(s if m == 1 else f"{s}^{m}")
        den = "*".join(parts)
        if len(parts) > 1:
            den = f"({den})"
        if len(self.num.t) > 1:
            num = f"({num})"
        return f"{num}/{den}"


def sf(nvars: int, value) -> ScalarField:
    """Coerce a number, Poly, ScalarField or expression string to a ScalarField."""
    if isinstance(value, ScalarField):
        if value.nvars != nvars:
            raise DimensionMismatch(f"{value.nvars} vs {nvars} variables")
        return value
    if isinstance(value, Poly):
        return ScalarField._raw(value, ())
    if isinstance(value, str):
        return ScalarField.parse(value, nvars)
    return ScalarField.const(nvars, value)

