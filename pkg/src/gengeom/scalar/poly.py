"""Sparse multivariate polynomials over the Gaussian rationals.

Monomials are packed into a single Python int, ``BITS`` bits per variable
with variable 0 in the most significant field.  Integer comparison of two
packed keys is then lexicographic order with x1 > x2 > ... and monomial
multiplication is integer addition.  The top bit of every field is kept
clear so divisibility can be tested with one subtraction.
"""
from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from gmpy2 import mpq

from ..errors import DimensionMismatch, DivisionByZeroField
from .gaussrat import coeff_str, to_coeff

BITS = 16
_FIELD = (1 << BITS) - 1
_MAXDEG = (1 << (BITS - 1)) - 1

_guard_cache: dict[int, int] = {}


def _guard(nvars: int) -> int:
    g = _guard_cache.get(nvars)
    if g is None:
        g = 0
        for i in range(nvars):
            g |= 1 << (BITS * i + BITS - 1)
        _guard_cache[nvars] = g
    return g


def _shift(nvars: int, i: int) -> int:
    return BITS * (nvars - 1 - i)


def pack(exps: Sequence[int]) -> int:
    n = len(exps)
    key = 0
    for i, e in enumerate(exps):
        if e < 0 or e > _MAXDEG:
            raise ValueError(f"exponent {e} out of range")
        key |= e << _shift(n, i)
    return key


def unpack(key: int, nvars: int) -> tuple[int, ...]:
    return tuple((key >> _shift(nvars, i)) & _FIELD for i in range(nvars))


class Poly:
    """Immutable sparse polynomial in ``nvars`` variables.

    ``t`` maps packed monomial keys to nonzero coefficients.  Do not mutate
    it; every operation builds a fresh dict.
    """

    __slots__ = ("nvars", "t", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Sequence[int], object] | None = None):
        self.nvars = nvars
        self._hash = None
        t = {}
        if terms:
            for exps, c in terms.items():
                if len(exps) != nvars:
                    raise DimensionMismatch(f"exponent {tuple(exps)} has length != {nvars}")
                c = to_coeff(c)
                if c:
                    k = pack(exps)
                    v = t.get(k, 0) + c
                    if v:
                        t[k] = v
                    else:
                        t.pop(k, None)
        self.t = t

    @classmethod
    def _raw(cls, nvars: int, t: dict) -> "Poly":
        p = object.__new__(cls)
        p.nvars = nvars
        p.t = t
        p._hash = None
        return p

    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls._raw(nvars, {})

    @classmethod
    def const(cls, nvars: int, c) -> "Poly":
        c = to_coeff(c)
        return cls._raw(nvars, {0: c} if c else {})

    @classmethod
    def one(cls, nvars: int) -> "Poly":
        return cls._raw(nvars, {0: mpq(1)})

    @classmethod
    def var(cls, nvars: int, i: int) -> "Poly":
        if not 0 <= i < nvars:
            raise DimensionMismatch(f"variable index {i} out of range for {nvars} variables")
        return cls._raw(nvars, {1 << _shift(nvars, i): mpq(1)})

    # -- inspection -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.t

    def is_const(self) -> bool:
        return not self.t or (len(self.t) == 1 and 0 in self.t)

    def const_value(self):
        return self.t.get(0, mpq(0))

    def terms(self) -> Iterable[tuple[tuple[int, ...], object]]:
        for k in sorted(self.t, reverse=True):
            yield unpack(k, self.nvars), self.t[k]

    def leading(self) -> tuple[int, object]:
        k = max(self.t)
        return k, self.t[k]

    def total_degree(self) -> int:
        if not self.t:
            return -1
        return max(sum(unpack(k, self.nvars)) for k in self.t)

    def degree_in(self, i: int) -> int:
        if not self.t:
            return -1
        s = _shift(self.nvars, i)
        return max((k >> s) & _FIELD for k in self.t)

    def is_monomial(self) -> bool:
        return len(self.t) == 1

    # -- arithmetic -------------------------------------------------------

    def _check(self, other: "Poly"):
        if other.nvars != self.nvars:
            raise DimensionMismatch(f"{self.nvars} vs {other.nvars} variables")

    def __add__(self, other):
        if not isinstance(other, Poly):
            return self + Poly.const(self.nvars, other)
        self._check(other)
        if len(other.t) > len(self.t):
            self, other = other, self
        t = dict(self.t)
        for k, c in other.t.items():
            v = t.get(k)
            if v is None:
                t[k] = c
            else:
                v = v + c
                if v:
                    t[k] = v
                else:
                    del t[k]
        return Poly._raw(self.nvars, t)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.nvars, {k: -c for k, c in self.t.items()})

    def __sub__(self, other):
        if not isinstance(other, Poly):
            return self + Poly.const(self.nvars, -to_coeff(other))
        self._check(other)
        t = dict(self.t)
        for k, c in other.t.items():
            v = t.get(k)
            if v is None:
                t[k] = -c
            else:
                v = v - c
                if v:
                    t[k] = v
                else:
                    del t[k]
        return Poly._raw(self.nvars, t)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Poly":
        if not c:
            return Poly._raw(self.nvars, {})
        return Poly._raw(self.nvars, {k: v * c for k, v in self.t.items()})

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(to_coeff(other))
        self._check(other)
        a, b = self.t, other.t
        if not a or not b:
            return Poly._raw(self.nvars, {})
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            (kb, cb), = b.items()
            if kb == 0:
                return self.scale(cb) if b is other.t else other.scale(cb)
            return Poly._raw(self.nvars, {ka + kb: ca * cb for ka, ca in a.items()})
        t: dict = {}
        get = t.get
        for kb, cb in b.items():
            for ka, ca in a.items():
                k = ka + kb
                v = get(k)
                t[k] = ca * cb if v is None else v + ca * cb
        return Poly._raw(self.nvars, {k: v for k, v in t.items() if v})

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result = Poly.one(self.nvars)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def diff(self, i: int) -> "Poly":
        if not 0 <= i < self.nvars:
            raise DimensionMismatch(f"variable index {i} out of range")
        s = _shift(self.nvars, i)
        one = 1 << s
        t = {}
        for k, c in self.t.items():
            e = (k >> s) & _FIELD
            if e:
                t[k - one] = c * e
        return Poly._raw(self.nvars, t)

    def exact_div(self, d: "Poly") -> "Poly | None":
        """Quotient ``self / d`` if ``d`` divides ``self`` exactly, else None.

        Lex-order division by a single polynomial: {d} is a Groebner basis of
        its ideal, so a zero remainder is equivalent to divisibility.
        """
        self._check(d)
        if not d.t:
            raise DivisionByZeroField("division by the zero polynomial")
        if not self.t:
            return self
        kd, cd = d.leading()
        if len(d.t) == 1:
            g = _guard(self.nvars)
            out = {}
            for k, c in self.t.items():
                if ((k | g) - kd) & g != g:
                    return None
                out[k - kd] = c / cd
            return Poly._raw(self.nvars, out)
        g = _guard(self.nvars)
        r = dict(self.t)
        q = {}
        dt = [(k, c) for k, c in d.t.items() if k != kd]
        while r:
            kr = max(r)
            if ((kr | g) - kd) & g != g:
                return None
            m = kr - kd
            c = r.pop(kr) / cd
            q[m] = c
            for k, cc in dt:
                kk = k + m
                v = r.get(kk)
                if v is None:
                    r[kk] = -c * cc
                else:
                    v = v - c * cc
                    if v:
                        r[kk] = v
                    else:
                        del r[kk]
        return Poly._raw(self.nvars, q)

    def monic(self) -> tuple[object, "Poly"]:
        """Return ``(lc, p/lc)`` where ``lc`` is the leading coefficient."""
        _, lc = self.leading()
        if lc == 1:
            return lc, self
        inv = 1 / lc
        return lc, Poly._raw(self.nvars, {k: c * inv for k, c in self.t.items()})

    def evaluate(self, point: Sequence) -> object:
        if len(point) != self.nvars:
            raise DimensionMismatch("point has wrong dimension")
        pt = [to_coeff(x) for x in point]
        total = mpq(0)
        for k, c in self.t.items():
            term = c
            for i, e in enumerate(unpack(k, self.nvars)):
                if e:
                    term = term * pt[i] ** e
            total = total + term
        return total

    def monomial_factor(self) -> tuple[int, ...]:
        """Exponents of the largest monomial dividing every term."""
        if not self.t:
            return (0,) * self.nvars
        lows = None
        for k in self.t:
            e = unpack(k, self.nvars)
            lows = e if lows is None else tuple(map(min, lows, e))
        return lows

    # -- comparison -------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.t == other.t
        try:
            c = to_coeff(other)
        except TypeError:
            return NotImplemented
        return self.t == ({0: c} if c else {})

    def __hash__(self):
        h = self._hash
        if h is None:
            h = self._hash = hash((self.nvars, frozenset(self.t.items())))
        return h

    def sort_key(self):
        return (len(self.t), sorted(self.t), [str(c) for _, c in sorted(self.t.items())])

    def __repr__(self):
        return f"Poly({self.nvars}, {self})"

    def __str__(self):
        return poly_str(self)


def _mono_str(exps: tuple[int, ...]) -> str:
    parts = []
    for i, e in enumerate(exps):
        if e == 1:
            parts.append(f"x{i + 1}")
        elif e > 1:
            parts.append(f"x{i + 1}^{e}")
    return "*".join(parts)


def _graded_keys(p: Poly):
    return sorted(p.t, key=lambda k: (sum(unpack(k, p.nvars)), k), reverse=True)


def poly_str(p: Poly) -> str:
    if not p.t:
        return "0"
    out = []
    for k in _graded_keys(p):
        c = p.t[k]
        mono = _mono_str(unpack(k, p.nvars))
        cs = coeff_str(c)
        neg = cs.startswith("-")
        if neg:
            cs = cs[1:]
        if mono:
            body = mono if cs == "1" else f"{cs}*{mono}"
        else:
            body = cs
        if not out:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)
