"""Generalized metrics ``(g, b)``, the endomorphism G and the induced connections.

``V+`` is the graph of ``g + b`` where ``g`` and ``b`` act on a vector field
by their matrices ``g_ij`` and ``b_ij = b(d_i, d_j)``: ``(bX)_i = b_ij X^j``, so
``bX = b(., X) = -i_X b``.  Then ``X+ = X + gX + bX``, ``X- = X - gX + bX`` and::

    G = [[ -g^-1 b,         g^-1    ],
         [ g - b g^-1 b,    b g^-1  ]]  =  e^-b G_g e^b

for the b-transform ``e^b(X + xi) = X + xi + i_X b``.  This orientation of
``b`` is the one for which ``nabla+`` has torsion ``-db``.
"""
from __future__ import annotations

from itertools import product

from .calculus import (
    KForm,
    MetricTensor,
    VectorField,
    ext_d,
    flat,
    interior,
    lie_bracket,
    lie_derivative,
    one_form_apply,
)
from .connections import (
    AffineConnection,
    GeneralizedConnection,
    cov_deriv,
    gen_cov_deriv_endo,
    torsion,
)
from .courant import (
    COURANT,
    BracketKind,
    ConnBracket,
    CourantTwisted,
    GenSection,
    bracket,
    nijenhuis,
    pairing,
    section_frame,
    section_label,
)
from .endo import EndoE
from .errors import DegreeError
from .report import Finding, Report, scan
from .scalar import FieldMatrix, ScalarField


class GeneralizedMetric:
    __slots__ = ("g", "b", "n", "bmat", "_endo")

    def __init__(self, g: MetricTensor, b: KForm | None = None):
        n = g.nvars
        if b is None:
            b = KForm.zero(n, 2)
        if b.degree != 2 or b.nvars != n:
            raise DegreeError("b must be a 2-form on the chart of g")
        self.g, self.b, self.n = g, b, n
        self.bmat = b.matrix()
        self._endo = None

    @property
    def G(self) -> EndoE:
        if self._endo is None:
            gi, bh, g = self.g.inverse, self.bmat, self.g.matrix
            self._endo = EndoE(-(gi @ bh), gi, g - bh @ gi @ bh, bh @ gi)
        return self._endo

    def with_b(self, b: KForm) -> "GeneralizedMetric":
        return GeneralizedMetric(self.g, b)

    def g_only(self) -> "GeneralizedMetric":
        return GeneralizedMetric(self.g)

    def b_of(self, X: VectorField) -> KForm:
        """The 1-form ``bX = b(., X)``."""
        return KForm.one_form(self.n, self.bmat.apply(X.comps))

    def plus(self, X: VectorField) -> GenSection:
        return GenSection(X, flat(self.g, X) + self.b_of(X))

    def minus(self, X: VectorField) -> GenSection:
        return GenSection(X, self.b_of(X) - flat(self.g, X))

    def project_plus(self, u: GenSection) -> GenSection:
        return (u + self.G(u)).scale(ScalarField.const(self.n, 1) / 2)

    def project_minus(self, u: GenSection) -> GenSection:
        return (u - self.G(u)).scale(ScalarField.const(self.n, 1) / 2)

    def __repr__(self):
        return f"GeneralizedMetric(g={self.g.matrix}, b={self.b})"


def gm_blocks(gm: GeneralizedMetric) -> EndoE:
    """Blocks of G; checks ``G^2 = Id`` on the way."""
    G = gm.G
    if not (G @ G) == EndoE.identity(gm.n):
        raise ArithmeticError("G does not square to the identity")
    return G


def _twist(H: KForm | None) -> BracketKind:
    return COURANT if H is None else CourantTwisted(H)


def _christoffel_from(n: int, fn) -> AffineConnection:
    frame = [VectorField.coord(n, i) for i in range(n)]
    gamma = [[[None] * n for _ in range(n)] for _ in range(n)]
    for i, j in product(range(n), repeat=2):
        v = fn(frame[i], frame[j])
        for k in range(n):
            gamma[k][i][j] = v.comps[k]
    return AffineConnection(n, gamma)


def nabla_plus_bracket(gm: GeneralizedMetric, H: KForm | None = None) -> AffineConnection:
    """``nabla+_X Y = pi((([X-, Y+]_C)_+)`` evaluated with the section calculus."""
    kind = _twist(H)
    return _christoffel_from(gm.n, lambda X, Y: gm.project_plus(bracket(kind, gm.minus(X), gm.plus(Y))).vec)


def nabla_minus_bracket(gm: GeneralizedMetric, H: KForm | None = None) -> AffineConnection:
    """``nabla-_X Y = pi((([X+, Y-]_C)_-)``."""
    kind = _twist(H)
    return _christoffel_from(gm.n, lambda X, Y: gm.project_minus(bracket(kind, gm.plus(X), gm.minus(Y))).vec)


def _closed_form(gm: GeneralizedMetric, X: VectorField, Y: VectorField, sign: int, H: KForm | None) -> VectorField:
    # 1/2 ([X,Y] - s g^-1 b [X,Y] + s g^-1 (L_X(s gY + bY) - L_Y(-s gX + bX)
    #      - 1/2 d(i_X(s gY + bY) - i_Y(-s gX + bX)) + i_X i_Y H))
    g = gm.g
    gy = flat(g, Y).scale(sign) + gm.b_of(Y)
    gx = gm.b_of(X) - flat(g, X).scale(sign)
    XY = lie_bracket(X, Y)
    form = lie_derivative(X, gy) - lie_derivative(Y, gx)
    half = ScalarField.const(gm.n, 1) / 2
    form = form - ext_d(KForm.function(one_form_apply(gy, X) - one_form_apply(gx, Y))).scale(half)
    if H is not None:
        form = form + interior(X, interior(Y, H))
    corr = gm.g.inverse.apply(tuple(a - c for a, c in zip(form.vector(), gm.bmat.apply(XY.comps))))
    if sign < 0:
        corr = tuple(-c for c in corr)
    return VectorField._raw(gm.n, tuple((a + c) * half for a, c in zip(XY.comps, corr)))


def nabla_plus(gm: GeneralizedMetric, H: KForm | None = None) -> AffineConnection:
    """Christoffel symbols of ``nabla+`` from its closed Lie-derivative form."""
    return _christoffel_from(gm.n, lambda X, Y: _closed_form(gm, X, Y, 1, H))


def nabla_minus(gm: GeneralizedMetric, H: KForm | None = None) -> AffineConnection:
    return _christoffel_from(gm.n, lambda X, Y: _closed_form(gm, X, Y, -1, H))


# -- parallelism and the b-form identities -------------------------------------


def nabla_b_components(nb: AffineConnection, b: KForm):
    """Yield ``((i, j, k), (nabla_{d_i} b)(d_j, d_k))`` for ``j < k``."""
    n = b.nvars
    for i in range(n):
        w = cov_deriv(nb, VectorField.coord(n, i), b)
        for j in range(n):
            for k in range(j + 1, n):
                yield (i, j, k), w[(j, k)]


def parallel_G_check(gm: GeneralizedMetric, nb: AffineConnection | None = None) -> Report:
    """``nabla+ b = 0`` versus ``nabla~ G = 0`` (blockwise, on coordinate directions)."""
    nb = nb or nabla_plus(gm)
    n = gm.n
    rep = Report("parallel G")
    rep.add(
        "nabla_b_zero",
        scan(nabla_b_components(nb, gm.b), lambda k, v: f"(nabla_d{k[0] + 1} b)(d{k[1] + 1},d{k[2] + 1}) = {v}"),
    )
    nt = GeneralizedConnection(nb)

    def blocks():
        for i in range(n):
            D = gen_cov_deriv_endo(nt, GenSection.coord_vec(n, i), gm.G)
            nz = D.nonzero_block()
            yield i, _Nz(nz)

    rep.add("nabla_G_zero", scan(blocks(), lambda i, v: f"(nabla~_d{i + 1} G).{v.nz[0]}[{v.nz[1] + 1},{v.nz[2] + 1}] = {v.nz[3]}"))
    rep.add("equivalence", Finding(rep["nabla_b_zero"].ok == rep["nabla_G_zero"].ok))
    return rep


class _Nz:
    __slots__ = ("nz",)

    def __init__(self, nz):
        self.nz = nz

    def is_zero(self) -> bool:
        return self.nz is None


def cyclic_nabla_b(nb: AffineConnection, b: KForm, X: VectorField, Y: VectorField, Z: VectorField) -> ScalarField:
    return (
        cov_deriv(nb, X, b)(Y, Z) + cov_deriv(nb, Y, b)(Z, X) + cov_deriv(nb, Z, b)(X, Y)
    )


def db_identity_defect(nb: AffineConnection, w: KForm, X, Y, Z) -> ScalarField:
    """``dw(X,Y,Z) - sum_cyc[(nabla_X w)(Y,Z) + w(T(X,Y), Z)]``; zero for every connection."""
    s = cyclic_nabla_b(nb, w, X, Y, Z)
    s = s + w(torsion(nb, X, Y), Z) + w(torsion(nb, Y, Z), X) + w(torsion(nb, Z, X), Y)
    return ext_d(w)(X, Y, Z) - s


def db_identity_literal_defect(nb: AffineConnection, w: KForm, X, Y, Z) -> ScalarField:
    """``dw(X,Y,Z) - sum_cyc[(nabla_X w)(Y,Z) - w(T(X,Y), Z)]`` with the minus sign taken literally."""
    s = cyclic_nabla_b(nb, w, X, Y, Z)
    s = s - w(torsion(nb, X, Y), Z) - w(torsion(nb, Y, Z), X) - w(torsion(nb, Z, X), Y)
    return ext_d(w)(X, Y, Z) - s


def parallel_b_torsion_literal(nb: AffineConnection, b: KForm, X, Y, Z) -> ScalarField:
    """``b(T(X,Y),Z) - b(T(Z,X),Y) - b(T(Y,Z),X) - db(X,Y,Z)`` as printed."""
    return b(torsion(nb, X, Y), Z) - b(torsion(nb, Z, X), Y) - b(torsion(nb, Y, Z), X) - ext_d(b)(X, Y, Z)


# -- Nijenhuis tensors of G ---------------------------------------------------


def frame_pairs(n: int, skew: bool = True):
    fr = section_frame(n)
    for a in range(2 * n):
        for c in range(a + 1 if skew else 0, 2 * n):
            yield (a, c), fr[a], fr[c]


def _pair_label(n: int, a: int, c: int) -> str:
    return f"({section_label(n, a)}, {section_label(n, c)})"


def nijenhuis_on_frame(kind: BracketKind, J: EndoE, n: int, skew: bool = True):
    for (a, c), u, v in frame_pairs(n, skew):
        yield (a, c), nijenhuis(kind, J, u, v)


def nijenhuis_finding(kind: BracketKind, J: EndoE, n: int, name: str = "N", skew: bool = True) -> Finding:
    return scan(nijenhuis_on_frame(kind, J, n, skew), lambda k, v: f"{name}{_pair_label(n, *k)} = {v}")


def probe_linearity(kind: BracketKind, J: EndoE, n: int) -> Finding:
    """``N(f u, v) - f N(u, v)`` for ``f = x_k`` on the coordinate frame."""
    def items():
        for (a, c), u, v in frame_pairs(n):
            base = nijenhuis(kind, J, u, v)
            for k in range(n):
                f = ScalarField.var(n, k)
                yield (a, c, k), nijenhuis(kind, J, u.scale(f), v) - base.scale(f)

    return scan(items(), lambda key, v: f"N(x{key[2] + 1}*{section_label(n, key[0])}, {section_label(n, key[1])}) - x{key[2] + 1}*N = {v}")


def eigenframe(gm: GeneralizedMetric) -> list[GenSection]:
    fr = [VectorField.coord(gm.n, i) for i in range(gm.n)]
    return [gm.plus(X) for X in fr] + [gm.minus(X) for X in fr]


def eigenframe_nijenhuis(gm: GeneralizedMetric, kind: BracketKind = COURANT) -> Finding:
    n = gm.n
    fr = eigenframe(gm)
    lab = [f"d{i + 1}+" for i in range(n)] + [f"d{i + 1}-" for i in range(n)]

    def items():
        for a in range(2 * n):
            for c in range(a + 1, 2 * n):
                yield (a, c), nijenhuis(kind, gm.G, fr[a], fr[c])

    return scan(items(), lambda k, v: f"N({lab[k[0]]}, {lab[k[1]]}) = {v}")


def involutivity_identity_defect(g: MetricTensor, nb: AffineConnection, X, Y, Z) -> ScalarField:
    """``(i_X d(gY) - i_Y d(gX))(Z) - g([X,Y],Z) - g(nabla_Z X, Y) + g(nabla_Z Y, X)``."""
    lhs = interior(X, ext_d(flat(g, Y))) - interior(Y, ext_d(flat(g, X)))
    return (
        one_form_apply(lhs, Z)
        - g(lie_bracket(X, Y), Z)
        - g(cov_deriv(nb, Z, X), Y)
        + g(cov_deriv(nb, Z, Y), X)
    )


def beta_defect(g: MetricTensor, nb: AffineConnection, Z, X, Y) -> ScalarField:
    """``beta(Z)(X,Y) = g(nabla_Z X, Y) - g(nabla_Z Y, X)``."""
    return g(cov_deriv(nb, Z, X), Y) - g(cov_deriv(nb, Z, Y), X)


def _coord_triples(n: int):
    fr = [VectorField.coord(n, i) for i in range(n)]
    for i, j, k in product(range(n), repeat=3):
        yield (i, j, k), fr[i], fr[j], fr[k]


def courant_integrability_report(gm: GeneralizedMetric) -> Report:
    """Frame-based Courant integrability diagnostics for ``G``.

    ``frame_nijenhuis`` is the verdict on the coordinate sections; the probe
    entry records whether N behaved function-linearly on them.
    """
    n = gm.n
    rep = Report("Courant integrability")
    rep.add("frame_nijenhuis", nijenhuis_finding(COURANT, gm.G, n))
    rep.add("eigenframe_nijenhuis", eigenframe_nijenhuis(gm))
    rep.add("probe_linearity", probe_linearity(COURANT, gm.G, n))
    lc = nabla_plus(gm.g_only())
    nb = nabla_plus(gm)
    g = gm.g
    rep.add(
        "involutivity_identity",
        scan(
            ((ijk, involutivity_identity_defect(g, lc, X, Y, Z)) for ijk, X, Y, Z in _coord_triples(n)),
            lambda k, v: f"identity(d{k[0] + 1},d{k[1] + 1},d{k[2] + 1}) = {v}",
        ),
    )
    rep.add(
        "beta_criterion",
        scan(
            ((ijk, beta_defect(g, nb, Z, X, Y)) for ijk, Z, X, Y in _coord_triples(n)),
            lambda k, v: f"beta(d{k[0] + 1})(d{k[1] + 1},d{k[2] + 1}) = {v}",
        ),
    )
    return rep


def dorfman_symmetry_defect(G: EndoE, u: GenSection, v: GenSection) -> GenSection:
    """``N^D(u,v) - N^D(v,u) - 2 N_C(u,v)``."""
    from .courant import DORFMAN

    return nijenhuis(DORFMAN, G, u, v) - nijenhuis(DORFMAN, G, v, u) - nijenhuis(COURANT, G, u, v).scale(2)


def dorfman_symmetrization_defect(G: EndoE, u: GenSection, v: GenSection, factor) -> GenSection:
    """``N^D(u,v) + N^D(v,u) - factor (d<u,v> - G d<Gu,v>)``.

    The exact value of ``factor`` is 4 with the 1/2-normalized pairing.
    """
    from .courant import DORFMAN

    d = lambda f: GenSection.from_form(ext_d(KForm.function(f)))
    rhs = d(pairing(u, v)) - G(d(pairing(G(u), v)))
    return nijenhuis(DORFMAN, G, u, v) + nijenhuis(DORFMAN, G, v, u) - rhs.scale(factor)


# -- integrability for the connection bracket --------------------------------


def nabla_nijenhuis_closed_form(gm: GeneralizedMetric, nb: AffineConnection, u: GenSection, v: GenSection) -> GenSection:
    """Predicted ``N_{G_g}`` for ``[.,.]_nabla`` when ``nabla g = 0``.

    ``N(X+xi, Y+eta) = -T(X,Y) - T(g^-1 xi, g^-1 eta) + g(T(g^-1 xi, Y) + T(X, g^-1 eta))``.
    """
    gi = gm.g.inverse
    X, Y = u.vec, v.vec
    xs = VectorField._raw(gm.n, gi.apply(u.form.vector()))
    ys = VectorField._raw(gm.n, gi.apply(v.form.vector()))
    vec = -torsion(nb, X, Y) - torsion(nb, xs, ys)
    form = flat(gm.g, torsion(nb, xs, Y) + torsion(nb, X, ys))
    return GenSection(vec, form)


def nabla_integrability_check(gm: GeneralizedMetric, nb: AffineConnection | None = None) -> Report:
    """``[.,.]_{nabla+}``-integrability of ``G_g`` (verdict) and of the full ``G`` (reported)."""
    nb = nb or nabla_plus(gm)
    n = gm.n
    kind = ConnBracket(nb)
    Gg = gm.g_only().G
    rep = Report("nabla+ integrability")

    def mixed_first():
        # vector/form pairs first: there the value is the closed form g(T(X, g^-1 eta))
        pairs = sorted(frame_pairs(n), key=lambda p: not (p[0][0] < n <= p[0][1]))
        for (a, c), u, v in pairs:
            yield (a, c, u, v), nijenhuis(kind, Gg, u, v)

    rep.add(
        "G_g_nijenhuis",
        scan(
            mixed_first(),
            lambda k, v: f"N{_pair_label(n, k[0], k[1])} = {v}; closed form T(g^-1 xi, Y) + T(X, g^-1 eta) "
            f"-> {nabla_nijenhuis_closed_form(gm, nb, k[2], k[3])}",
        ),
    )

    def closed():
        for (a, c), u, v in frame_pairs(n):
            yield (a, c), nijenhuis(kind, Gg, u, v) - nabla_nijenhuis_closed_form(gm, nb, u, v)

    rep.add("closed_form_agrees", scan(closed(), lambda k, v: f"N - closed form at {_pair_label(n, *k)} = {v}"))
    rep.add("full_G_nijenhuis", nijenhuis_finding(kind, gm.G, n))
    rep.add("db_zero", scan([("db", ext_d(gm.b))], lambda k, v: f"db = {v}"))
    rep.add("matches_db_criterion", Finding(rep["G_g_nijenhuis"].ok == rep["db_zero"].ok))
    return rep


__all__ = [
    "GeneralizedMetric",
    "gm_blocks",
    "nabla_plus",
    "nabla_minus",
    "nabla_plus_bracket",
    "nabla_minus_bracket",
    "parallel_G_check",
    "nabla_b_components",
    "cyclic_nabla_b",
    "db_identity_defect",
    "db_identity_literal_defect",
    "parallel_b_torsion_literal",
    "frame_pairs",
    "nijenhuis_on_frame",
    "nijenhuis_finding",
    "probe_linearity",
    "eigenframe",
    "eigenframe_nijenhuis",
    "involutivity_identity_defect",
    "beta_defect",
    "courant_integrability_report",
    "dorfman_symmetry_defect",
    "dorfman_symmetrization_defect",
    "nabla_nijenhuis_closed_form",
    "nabla_integrability_check",
]
