"""Sections of ``E = TM + T*M``, the neutral pairing and the brackets on E.

The pairing is ``<X + xi, Y + eta> = 1/2 (eta(X) + xi(Y))``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Sequence

from .calculus import (
    KForm,
    VectorField,
    ext_d,
    interior,
    lie_bracket,
    lie_derivative,
    one_form_apply,
)
from .errors import DegreeError, DimensionMismatch
from .scalar import ScalarField, sf

if TYPE_CHECKING:
    from .connections import AffineConnection
    from .endo import EndoE

HALF = Fraction(1, 2)


class GenSection:
    """A section ``X + xi`` of the generalized tangent bundle."""

    __slots__ = ("vec", "form")

    def __init__(self, vec: VectorField, form: KForm | None = None):
        if form is None:
            form = KForm.zero(vec.nvars, 1)
        if form.degree != 1:
            raise DegreeError("the form part of a section must be a 1-form")
        if form.nvars != vec.nvars:
            raise DimensionMismatch("vector and form parts on different charts")
        self.vec = vec
        self.form = form

    @classmethod
    def from_components(cls, vec: Sequence, form: Sequence) -> "GenSection":
        n = len(vec)
        return cls(VectorField(n, vec), KForm.one_form(n, form))

    @classmethod
    def from_form(cls, form: KForm) -> "GenSection":
        return cls(VectorField.zero(form.nvars), form)

    @classmethod
    def zero(cls, n: int) -> "GenSection":
        return cls(VectorField.zero(n), KForm.zero(n, 1))

    @classmethod
    def coord_vec(cls, n: int, i: int) -> "GenSection":
        return cls(VectorField.coord(n, i))

    @classmethod
    def coord_form(cls, n: int, i: int) -> "GenSection":
        return cls.from_form(KForm.dx(n, i))

    @property
    def nvars(self) -> int:
        return self.vec.nvars

    def components(self) -> tuple:
        """``(X^1..X^n, xi_1..xi_n)`` as one column."""
        return self.vec.comps + self.form.vector()

    def __add__(self, other: "GenSection") -> "GenSection":
        return GenSection(self.vec + other.vec, self.form + other.form)

    def __sub__(self, other: "GenSection") -> "GenSection":
        return GenSection(self.vec - other.vec, self.form - other.form)

    def __neg__(self) -> "GenSection":
        return GenSection(-self.vec, -self.form)

    def scale(self, f) -> "GenSection":
        return GenSection(self.vec.scale(f), self.form.scale(f))

    def __rmul__(self, f) -> "GenSection":
        return self.scale(f)

    def is_zero(self) -> bool:
        return self.vec.is_zero() and self.form.is_zero()

    def __eq__(self, other):
        if not isinstance(other, GenSection):
            return NotImplemented
        return self.vec == other.vec and self.form == other.form

    __hash__ = None

    def __repr__(self):
        return f"GenSection({self})"

    def __str__(self):
        v, f = self.vec.is_zero(), self.form.is_zero()
        if v and f:
            return "0"
        if f:
            return str(self.vec)
        if v:
            return str(self.form)
        f = str(self.form)
        return f"{self.vec} - {f[1:]}" if f.startswith("-") else f"{self.vec} + {f}"


def anchor(u: GenSection) -> VectorField:
    """Projection ``pi: E -> TM``."""
    return u.vec


def pairing(u: GenSection, v: GenSection) -> ScalarField:
    s = one_form_apply(v.form, u.vec) + one_form_apply(u.form, v.vec)
    return s * HALF


def _iota1(X: VectorField, xi: KForm) -> ScalarField:
    return one_form_apply(xi, X)


def _d0(f: ScalarField) -> KForm:
    return ext_d(KForm.function(f))


def h_term(H: KForm, X: VectorField, Y: VectorField) -> KForm:
    """The twist ``i_X i_Y H``, i.e. the 1-form ``Z -> H(Y, X, Z)``."""
    return interior(X, interior(Y, H))


@dataclass(frozen=True)
class BracketKind:
    """Which bracket to use; ``payload`` is the 3-form H or the connection."""

    tag: str
    payload: object = None

    def __post_init__(self):
        if self.tag not in ("dorfman", "courant", "dorfman_twisted", "courant_twisted", "connection"):
            raise ValueError(f"unknown bracket kind {self.tag!r}")
        if self.tag.endswith("twisted") and (not isinstance(self.payload, KForm) or self.payload.degree != 3):
            raise DegreeError("twisted brackets need a 3-form")

    @property
    def skew(self) -> bool:
        return self.tag in ("courant", "courant_twisted", "connection")


DORFMAN = BracketKind("dorfman")
COURANT = BracketKind("courant")


def Dorfman() -> BracketKind:
    return DORFMAN


def Courant() -> BracketKind:
    return COURANT


def DorfmanTwisted(H: KForm) -> BracketKind:
    return BracketKind("dorfman_twisted", H)


def CourantTwisted(H: KForm) -> BracketKind:
    return BracketKind("courant_twisted", H)


def ConnBracket(nabla: "AffineConnection") -> BracketKind:
    return BracketKind("connection", nabla)


def dorfman(u: GenSection, v: GenSection) -> GenSection:
    """``[X,Y] + L_X eta - i_Y d xi``."""
    X, xi, Y, eta = u.vec, u.form, v.vec, v.form
    form = lie_derivative(X, eta)
    if xi.comps:
        form = form - interior(Y, ext_d(xi))
    return GenSection(lie_bracket(X, Y), form)


def courant(u: GenSection, v: GenSection) -> GenSection:
    """``[X,Y] + L_X eta - L_Y xi - 1/2 d(i_X eta - i_Y xi)``."""
    X, xi, Y, eta = u.vec, u.form, v.vec, v.form
    form = lie_derivative(X, eta) - lie_derivative(Y, xi)
    form = form - _d0(_iota1(X, eta) - _iota1(Y, xi)).scale(HALF)
    return GenSection(lie_bracket(X, Y), form)


def conn_bracket(nabla: "AffineConnection", u: GenSection, v: GenSection) -> GenSection:
    """``[X,Y] + nabla_X eta - nabla_Y xi``."""
    from .connections import cov_deriv

    X, xi, Y, eta = u.vec, u.form, v.vec, v.form
    return GenSection(lie_bracket(X, Y), cov_deriv(nabla, X, eta) - cov_deriv(nabla, Y, xi))


def bracket(kind: BracketKind, u: GenSection, v: GenSection) -> GenSection:
    if u.nvars != v.nvars:
        raise DimensionMismatch("sections on different charts")
    t = kind.tag
    if t == "dorfman":
        return dorfman(u, v)
    if t == "courant":
        return courant(u, v)
    if t == "connection":
        return conn_bracket(kind.payload, u, v)
    base = dorfman(u, v) if t == "dorfman_twisted" else courant(u, v)
    return GenSection(base.vec, base.form + h_term(kind.payload, u.vec, v.vec))


def b_transform(b: KForm, u: GenSection) -> GenSection:
    """``e^b (X + xi) = X + xi + i_X b``."""
    if b.degree != 2:
        raise DegreeError("b-transform needs a 2-form")
    return GenSection(u.vec, u.form + interior(u.vec, b))


def nijenhuis(kind: BracketKind, J: "EndoE", u: GenSection, v: GenSection) -> GenSection:
    """``[Ju,Jv] - J[Ju,v] - J[u,Jv] + J^2[u,v]``."""
    ju, jv = J(u), J(v)
    br = lambda a, c: bracket(kind, a, c)
    return br(ju, jv) - J(br(ju, v) + br(u, jv)) + J(J(br(u, v)))


def jacobiator(u: GenSection, v: GenSection, w: GenSection, kind: BracketKind = COURANT) -> GenSection:
    c = lambda a, b: bracket(kind, a, b)
    return c(c(u, v), w) + c(c(v, w), u) + c(c(w, u), v)


def nijenhuis_operator(u: GenSection, v: GenSection, w: GenSection) -> ScalarField:
    """``1/3 (<[u,v]_C, w> + cyclic)``."""
    s = pairing(courant(u, v), w) + pairing(courant(v, w), u) + pairing(courant(w, u), v)
    return s * Fraction(1, 3)


def jacobiator_defect(u: GenSection, v: GenSection, w: GenSection) -> GenSection:
    """Courant Jacobiator minus the exact term ``d Nij(u,v,w)``; identically zero."""
    jac = jacobiator(u, v, w)
    return GenSection(jac.vec, jac.form - _d0(nijenhuis_operator(u, v, w)))


def dorfman_jacobi_defect(u: GenSection, v: GenSection, w: GenSection) -> GenSection:
    """``[u,[v,w]] - [[u,v],w] - [v,[u,w]]`` for the Dorfman bracket."""
    return dorfman(u, dorfman(v, w)) - dorfman(dorfman(u, v), w) - dorfman(v, dorfman(u, w))


def section_frame(n: int) -> list[GenSection]:
    """``d_1 .. d_n, dx1 .. dxn``."""
    return [GenSection.coord_vec(n, i) for i in range(n)] + [GenSection.coord_form(n, i) for i in range(n)]


def section_label(n: int, k: int) -> str:
    return f"d{k + 1}" if k < n else f"dx{k - n + 1}"


__all__ = [
    "GenSection",
    "BracketKind",
    "Dorfman",
    "Courant",
    "DorfmanTwisted",
    "CourantTwisted",
    "ConnBracket",
    "DORFMAN",
    "COURANT",
    "anchor",
    "pairing",
    "bracket",
    "dorfman",
    "courant",
    "conn_bracket",
    "h_term",
    "b_transform",
    "nijenhuis",
    "jacobiator",
    "jacobiator_defect",
    "dorfman_jacobi_defect",
    "nijenhuis_operator",
    "section_frame",
    "section_label",
]
