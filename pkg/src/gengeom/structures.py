"""Block-matrix structures on ``E``: complex, product and para-complex endomorphisms,
isotropic subbundles of pseudo-Riemannian metrics, weak Hermitian data and
generalized Hermitian / Kaehler pairs.

Blocks follow :class:`~gengeom.endo.EndoE`.  A 2-form ``w`` is turned into the
map ``TM -> T*M`` by ``X -> w(., X)`` (its matrix ``w_ij``), the orientation used
for ``b`` in :mod:`gengeom.genmetric`.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .calculus import (
    KForm,
    MetricTensor,
    VectorField,
    ext_d,
    interior,
    lie_bracket,
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
    ConnBracket,
    GenSection,
    bracket,
    nijenhuis,
    pairing,
    section_frame,
    section_label,
)
from .endo import EndoE
from .errors import (
    DegenerateB,
    DimensionOdd,
    FrameNotIsotropic,
    NotCompatible,
    NotHermitianInput,
    RankMismatch,
)
from .genmetric import (
    GeneralizedMetric,
    _christoffel_from,
    eigenframe_nijenhuis,
    frame_pairs,
    nabla_b_components,
    nabla_plus,
    nijenhuis_finding,
)
from .report import Finding, Report, scan
from .scalar import FieldMatrix, ScalarField

__all__ = [
    "EndoE",
    "Classification",
    "classify_endo",
    "gacs_system",
    "strong_system",
    "product_system",
    "product_system_literal",
    "eigen_ranks",
    "para_plus",
    "para_minus",
    "para_connection",
    "para_two_form",
    "para_torsion_formula",
    "para_integrability",
    "IsotropicFrame",
    "signature",
    "build_Vi",
    "in_span",
    "jg_integrability",
    "WeakHermitian",
    "weak_from_metric",
    "metric_from_weak",
    "fundamental_form",
    "torsion_conditions",
    "lemma_identity",
    "nearly_kahler_defect",
    "induced_complex_structures",
    "hermitian_suite",
    "gualtieri_pair",
    "kahler_report",
]


def _eye(n: int) -> FieldMatrix:
    return FieldMatrix.identity(n, n)


def _matrix_finding(m: FieldMatrix, name: str) -> Finding:
    for i in range(m.rows):
        for j in range(m.cols):
            if m[i, j]:
                return Finding(False, f"{name}[{i + 1},{j + 1}] = {m[i, j]}")
    return Finding(True)


def _endo_finding(e: EndoE, name: str) -> Finding:
    nz = e.nonzero_block()
    if nz is None:
        return Finding(True)
    return Finding(False, f"{name}.{nz[0]}[{nz[1] + 1},{nz[2] + 1}] = {nz[3]}")


# -- classification -------------------------------------------------------------


def gacs_system(J: EndoE) -> Report:
    """Block form of ``J^2 = -Id``."""
    H, a, b, K = J.blocks()
    I = _eye(J.n)
    rep = Report("J^2 = -Id")
    rep.add("beta_alpha", _matrix_finding(b @ a + I + K @ K, "beta alpha + I + K^2"))
    rep.add("alpha_beta", _matrix_finding(a @ b + I + H @ H, "alpha beta + I + H^2"))
    rep.add("H_alpha", _matrix_finding(H @ a + a @ K, "H alpha + alpha K"))
    rep.add("beta_H", _matrix_finding(b @ H + K @ b, "beta H + K beta"))
    return rep


def strong_system(J: EndoE) -> Report:
    """Pairing invariance of a complex structure: ``K = -H^T``, ``alpha``, ``beta`` skew."""
    H, a, b, K = J.blocks()
    rep = Report("strong conditions")
    rep.add("K_minus_Ht", _matrix_finding(K + H.T, "K + H^T"))
    rep.add("alpha_skew", _matrix_finding(a + a.T, "alpha + alpha^T"))
    rep.add("beta_skew", _matrix_finding(b + b.T, "beta + beta^T"))
    return rep


def _square_identity(P: EndoE, rep: Report) -> None:
    H, a, b, K = P.blocks()
    I = _eye(P.n)
    rep.add("beta_alpha", _matrix_finding(b @ a - I + K @ K, "beta alpha - I + K^2"))
    rep.add("alpha_beta", _matrix_finding(a @ b - I + H @ H, "alpha beta - I + H^2"))
    rep.add("H_alpha", _matrix_finding(H @ a + a @ K, "H alpha + alpha K"))
    rep.add("beta_H", _matrix_finding(b @ H + K @ b, "beta H + K beta"))


def product_system(P: EndoE) -> Report:
    """``P^2 = Id`` and ``P* = P`` (orthogonality), written blockwise.

    With ``P^2 = Id`` orthogonality is ``K = H^T`` with ``alpha`` and ``beta``
    symmetric.
    """
    H, a, b, K = P.blocks()
    rep = Report("product system")
    _square_identity(P, rep)
    rep.add("K_Ht", _matrix_finding(K - H.T, "K - H^T"))
    rep.add("alpha_sym", _matrix_finding(a - a.T, "alpha - alpha^T"))
    rep.add("beta_sym", _matrix_finding(b - b.T, "beta - beta^T"))
    return rep


def product_system_literal(P: EndoE) -> Report:
    """The block system with skew ``alpha`` and ``beta``; violated by every generalized metric."""
    _, a, b, _ = P.blocks()
    rep = Report("product system, skew variant")
    _square_identity(P, rep)
    rep.add("beta_skew", _matrix_finding(b + b.T, "beta + beta^T"))
    rep.add("alpha_skew", _matrix_finding(a + a.T, "alpha + alpha^T"))
    return rep


def eigen_ranks(P: EndoE) -> tuple[int, int]:
    """Generic ranks of the ``+1`` and ``-1`` eigenbundles."""
    M, I = P.matrix(), FieldMatrix.identity(P.n, 2 * P.n)
    return len((M - I).kernel()), len((M + I).kernel())


@dataclass(frozen=True)
class Classification:
    """Every class an endomorphism belongs to; ``kind`` is the most specific one.

    ``"product" in classify_endo(G)`` holds for a generalized metric even though
    its ``kind`` is ``"paracomplex"``.
    """

    kind: str
    labels: frozenset

    def __contains__(self, label: str) -> bool:
        return label in self.labels

    def __str__(self):
        return self.kind


def classify_endo(J: EndoE) -> Classification:
    """Sort ``J`` into ``not_gacs``, ``weak_gacs``, ``strong_gacs``, ``product``, ``paracomplex``."""
    if gacs_system(J).ok():
        if strong_system(J).ok():
            return Classification("strong_gacs", frozenset({"weak_gacs", "strong_gacs"}))
        return Classification("weak_gacs", frozenset({"weak_gacs"}))
    if product_system(J).ok():
        plus, minus = eigen_ranks(J)
        if plus == minus == J.n:
            return Classification("paracomplex", frozenset({"product", "paracomplex"}))
        return Classification("product", frozenset({"product"}))
    return Classification("not_gacs", frozenset({"not_gacs"}))


# -- para-complex structures --------------------------------------------------


def _form(n: int, comps) -> KForm:
    return KForm.one_form(n, comps)


def para_plus(P: EndoE, X: VectorField, alpha_inv: FieldMatrix | None = None) -> GenSection:
    """``X+ = X + alpha^-1 X - alpha^-1 H X``."""
    ai = alpha_inv if alpha_inv is not None else P.alpha.inv()
    hx = P.H.apply(X.comps)
    return GenSection(X, _form(P.n, ai.apply(tuple(x - h for x, h in zip(X.comps, hx)))))


def para_minus(P: EndoE, X: VectorField, alpha_inv: FieldMatrix | None = None) -> GenSection:
    """``X- = X - alpha^-1 X - alpha^-1 H X``."""
    ai = alpha_inv if alpha_inv is not None else P.alpha.inv()
    hx = P.H.apply(X.comps)
    return GenSection(X, _form(P.n, ai.apply(tuple(-x - h for x, h in zip(X.comps, hx)))))


def para_connection(P: EndoE) -> AffineConnection:
    """``nabla_X Y = pi(1/2 (Id + P) [X-, Y+]_C)``; raises SingularMatrix when alpha is."""
    ai = P.alpha.inv()
    half = Fraction(1, 2)

    def value(X, Y):
        u = bracket(COURANT, para_minus(P, X, ai), para_plus(P, Y, ai))
        return (u + P(u)).scale(half).vec

    return _christoffel_from(P.n, value)


def para_two_form(P: EndoE) -> KForm:
    """The 2-form ``w`` with ``i_X w = alpha^-1 H X``.

    Raises NotCompatible if ``alpha^-1 H`` is not skew (``P`` not orthogonal).
    """
    s = P.alpha.inv() @ P.H
    try:
        return KForm.from_matrix(s.T)
    except ValueError:
        raise NotCompatible("alpha^-1 H is not skew-symmetric", witness=str(s)) from None


def para_torsion_formula(P: EndoE) -> tuple:
    """``T^k_ij`` predicted by ``alpha(i_{d_i} i_{d_j} d w)``, as ``[k][i][j]``."""
    n = P.n
    dw = ext_d(para_two_form(P))
    fr = [VectorField.coord(n, i) for i in range(n)]
    out = [[[None] * n for _ in range(n)] for _ in range(n)]
    for i, j in product(range(n), repeat=2):
        v = P.alpha.apply(interior(fr[i], interior(fr[j], dw)).vector())
        for k in range(n):
            out[k][i][j] = v[k]
    return tuple(tuple(tuple(r) for r in plane) for plane in out)


def _partial_endo(n: int, nb: AffineConnection, J: EndoE, name: str) -> Finding:
    nt = GeneralizedConnection(nb)
    for i in range(n):
        D = gen_cov_deriv_endo(nt, GenSection.coord_vec(n, i), J)
        nz = D.nonzero_block()
        if nz is not None:
            return Finding(False, f"(nabla_d{i + 1} {name}).{nz[0]}[{nz[1] + 1},{nz[2] + 1}] = {nz[3]}")
    return Finding(True)


def para_integrability(P: EndoE, nb: AffineConnection | None = None) -> Report:
    """Hypotheses and conclusions of the para-complex integrability statements.

    Hypotheses: ``nabla alpha = 0``, ``nabla H = 0``, ``d(alpha^-1 H) = 0`` and
    ``<nabla~_u v, w> = <nabla~_{Pu} v, P w>`` on frame triples.  Conclusions:
    ``nabla~ P = 0`` and the Nijenhuis tensors for ``[.,.]_nabla`` and Courant.
    """
    n = P.n
    nb = nb or para_connection(P)
    z = FieldMatrix.zeros(n, n, n)
    rep = Report("para-complex integrability")
    rep.add("alpha_parallel", _partial_endo(n, nb, EndoE(z, P.alpha, z, z), "alpha"))
    rep.add("H_parallel", _partial_endo(n, nb, EndoE(P.H, z, z, z), "H"))
    rep.add("d_omega_zero", scan([("dw", ext_d(para_two_form(P)))], lambda k, v: f"d(alpha^-1 H) = {v}"))
    nt = GeneralizedConnection(nb)
    fr = section_frame(n)

    def triples():
        for a, c, e in product(range(2 * n), repeat=3):
            u, v, w = fr[a], fr[c], fr[e]
            yield (a, c, e), pairing(nt(u, v), w) - pairing(nt(P(u), v), P(w))

    rep.add(
        "pairing_hypothesis",
        scan(triples(), lambda k, v: "<nabla~_u v, w> - <nabla~_Pu v, Pw> at ("
             + ", ".join(section_label(n, t) for t in k) + f") = {v}"),
    )
    rep.add("P_parallel", _partial_endo(n, nb, P, "P"))
    rep.add("nabla_nijenhuis", nijenhuis_finding(ConnBracket(nb), P, n, "N_nabla"))
    ai = P.alpha.inv()
    eig = [para_plus(P, VectorField.coord(n, i), ai) for i in range(n)]
    eig += [para_minus(P, VectorField.coord(n, i), ai) for i in range(n)]
    lab = [f"d{i + 1}+" for i in range(n)] + [f"d{i + 1}-" for i in range(n)]

    def eig_pairs():
        for a in range(2 * n):
            for c in range(a + 1, 2 * n):
                yield (a, c), nijenhuis(COURANT, P, eig[a], eig[c])

    rep.add("courant_nijenhuis", scan(eig_pairs(), lambda k, v: f"N_C({lab[k[0]]}, {lab[k[1]]}) = {v}"))
    rep.add("courant_nijenhuis_frame", nijenhuis_finding(COURANT, P, n, "N_C"))
    return rep


# -- isotropic subbundles ---------------------------------------------------------


def _charpoly(m: list[list]) -> list:
    """Coefficients ``c_0 = 1, c_1, .., c_n`` of ``det(t I - m)`` (Faddeev-LeVerrier)."""
    n = len(m)
    coeffs = [Fraction(1)]
    M = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        for i in range(n):
            M[i][i] += coeffs[-1]
        AM = [[sum(m[i][t] * M[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        c = -sum(AM[i][i] for i in range(n)) / k
        coeffs.append(c)
        M = AM
    return coeffs


def _sign_changes(seq) -> int:
    signs = [1 if c > 0 else -1 for c in seq if c != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _sample_points(n: int):
    primes = [2, 3, 5, 7, 11, 13, 17, 19]
    for shift in range(50):
        yield [Fraction(primes[(i + shift) % len(primes)] + shift, i + 2) for i in range(n)]


def signature(g: MetricTensor) -> tuple[int, int]:
    """``(p, q)`` at a generic sample point.

    The characteristic polynomial of a real symmetric matrix has only real roots,
    so Descartes' rule counts its positive and negative roots exactly.
    """
    n = g.nvars
    det = g.det()
    for pt in _sample_points(n):
        try:
            if not det.evaluate(pt):
                continue
            m = [[Fraction(str(g[i, j].evaluate(pt))) for j in range(n)] for i in range(n)]
        except ZeroDivisionError:
            continue
        c = _charpoly(m)
        p = _sign_changes(c)
        q = _sign_changes([x if k % 2 == 0 else -x for k, x in enumerate(c)])
        return p, q
    raise ArithmeticError("no regular sample point found for the metric")


class IsotropicFrame:
    """``k`` vector fields spanning a ``g``-isotropic distribution of generic rank ``k``."""

    __slots__ = ("g", "vectors")

    def __init__(self, g: MetricTensor, vectors):
        vectors = list(vectors)
        for a, X in enumerate(vectors):
            for c in range(a, len(vectors)):
                v = g(X, vectors[c])
                if v:
                    raise FrameNotIsotropic(f"g(X{a + 1}, X{c + 1}) = {v}")
        if vectors and self._rank(vectors) != len(vectors):
            raise RankMismatch(f"frame of {len(vectors)} fields has generic rank {self._rank(vectors)}")
        p, _ = signature(g)
        if len(vectors) > min(p, g.nvars - p):
            raise RankMismatch(f"isotropic rank {len(vectors)} exceeds min(p, q) for signature ({p},{g.nvars - p})")
        self.g, self.vectors = g, vectors

    @staticmethod
    def _rank(vectors) -> int:
        n = vectors[0].nvars
        return FieldMatrix._raw(n, tuple(zip(*(X.comps for X in vectors))), len(vectors)).rank()

    @property
    def k(self) -> int:
        return len(self.vectors)

    def matrix(self) -> FieldMatrix:
        """Rows are the frame vectors."""
        n = self.g.nvars
        return FieldMatrix._raw(n, tuple(X.comps for X in self.vectors), n)


def build_Vi(gm: GeneralizedMetric, D: IsotropicFrame) -> list[GenSection]:
    """``X_i+`` for the frame of ``D`` followed by a kernel basis of ``Ann(D)``."""
    p, q = signature(gm.g)
    if D.k != min(p, q):
        raise RankMismatch(f"D has rank {D.k}, maximal isotropic rank is {min(p, q)}")
    n = gm.n
    secs = [gm.plus(X) for X in D.vectors]
    secs += [GenSection.from_form(_form(n, v)) for v in D.matrix().kernel()]
    for a, s in enumerate(secs):
        for c in range(a, len(secs)):
            v = pairing(s, secs[c])
            if v:
                raise FrameNotIsotropic(f"<s{a + 1}, s{c + 1}> = {v}")
    if len(secs) != n or _section_rank(secs) != n:
        raise RankMismatch(f"V_i spanned by {len(secs)} sections of rank {_section_rank(secs)}, expected {n}")
    return secs


def _section_matrix(secs) -> FieldMatrix:
    n = secs[0].nvars
    return FieldMatrix._raw(n, tuple(zip(*(s.components() for s in secs))), len(secs))


def _section_rank(secs) -> int:
    return _section_matrix(secs).rank()


def in_span(frame, x) -> bool:
    """Generic-rank membership test for a vector field or section in the span of ``frame``."""
    if isinstance(x, GenSection):
        return _section_rank(list(frame) + [x]) == _section_rank(list(frame))
    base = IsotropicFrame._rank(list(frame))
    return IsotropicFrame._rank(list(frame) + [x]) == base


def jg_integrability(gm: GeneralizedMetric, D: IsotropicFrame) -> Report:
    n = gm.n
    secs = build_Vi(gm, D)
    rep = Report("J_G integrability")
    rep.add("Vi_isotropic", Finding(True, note=f"{len(secs)} sections"))
    X = D.vectors
    bad = None
    for a in range(len(X)):
        for c in range(a + 1, len(X)):
            if not in_span(X, lie_bracket(X[a], X[c])):
                bad = f"[X{a + 1}, X{c + 1}] = {lie_bracket(X[a], X[c])} not in D"
                break
        if bad:
            break
    rep.add("D_involutive", Finding(bad is None, bad))
    rep.add("G_courant_integrable", eigenframe_nijenhuis(gm))
    ann = [s for s in secs if s.vec.is_zero()]
    rep.add(
        "annihilator_brackets",
        scan((((a, c), bracket(COURANT, ann[a], ann[c])) for a in range(len(ann)) for c in range(len(ann))),
             lambda k, v: f"[a{k[0] + 1}, a{k[1] + 1}]_C = {v}"),
    )
    bad = None
    for a in range(len(secs)):
        for c in range(a + 1, len(secs)):
            br = bracket(COURANT, secs[a], secs[c])
            if not in_span(secs, br):
                bad = f"[s{a + 1}, s{c + 1}]_C = {br} not in V_i"
                break
        if bad:
            break
    rep.add("Vi_involutive", Finding(bad is None, bad))
    return rep


# -- weak Hermitian structures ------------------------------------------------


@dataclass(frozen=True, eq=False)
class WeakHermitian:
    """``(g, A, Q)`` with ``A`` g-skew and nonsingular and ``Q = -A^2``."""

    g: MetricTensor
    A: FieldMatrix
    Q: FieldMatrix

    def __post_init__(self):
        gA = self.g.matrix @ self.A
        f = _matrix_finding(gA + gA.T, "gA + (gA)^T")
        if not f:
            raise NotCompatible("A is not g-skew", f.witness)
        if not self.A.det():
            raise NotCompatible("A is singular")
        f = _matrix_finding(self.Q + self.A @ self.A, "Q + A^2")
        if not f:
            raise NotCompatible("Q differs from -A^2", f.witness)

    @property
    def n(self) -> int:
        return self.g.nvars


def weak_from_metric(gm: GeneralizedMetric) -> WeakHermitian:
    """``A`` with ``g(AX, Y) = b(X, Y)``, i.e. ``A = -g^-1 b`` in matrix form, and ``Q = -A^2``."""
    if gm.n % 2:
        raise DimensionOdd(f"nondegenerate 2-forms need even dimension, got {gm.n}")
    if not gm.bmat.det():
        raise DegenerateB("det b vanishes identically")
    A = -(gm.g.inverse @ gm.bmat)
    return WeakHermitian(gm.g, A, -(A @ A))


def fundamental_form(wh: WeakHermitian) -> KForm:
    """``F(X, Y) = g(AX, Y)``."""
    return KForm.from_matrix((wh.g.matrix @ wh.A).T)


def metric_from_weak(wh: WeakHermitian) -> GeneralizedMetric:
    return GeneralizedMetric(wh.g, fundamental_form(wh))


def _vec(n: int, comps) -> VectorField:
    return VectorField._raw(n, tuple(comps))


def _frame(n: int) -> list[VectorField]:
    return [VectorField.coord(n, i) for i in range(n)]


def lemma_identity(wh: WeakHermitian, X, Y, Z, reading: str = "grouped") -> ScalarField:
    """The b-db identity assumed for the A-torsion lemma, evaluated at ``(X, Y, Z)``.

    ``D(U, V) = g^-1(db(U, V, .))``; the ``"interior"`` reading contracts by
    ``i_U i_V db`` instead, which flips every term.
    """
    n = wh.n
    b = fundamental_form(wh)
    db = ext_d(b)
    gi = wh.g.inverse
    sign = -1 if reading == "interior" else 1
    if reading not in ("grouped", "interior"):
        raise ValueError(f"unknown reading {reading!r}")
    A = lambda V: _vec(n, wh.A.apply(V.comps))

    def D(U, V):
        return _vec(n, gi.apply(interior(V, interior(U, db)).vector())).scale(sign)

    AX, AY = A(X), A(Y)
    return (
        b(D(X, AY) - D(AX, Y), Z)
        + b(D(AY, Z), X)
        - b(D(Y, Z), AX)
        - b(D(Z, AX), Y)
        + b(D(Z, X), AY)
    )


def torsion_conditions(wh: WeakHermitian, nb: AffineConnection, reading: str = "grouped") -> Report:
    """A- and Q-torsion conditions of ``nb`` and the hypotheses of the two lemmas."""
    n = wh.n
    fr = _frame(n)
    A = lambda V: _vec(n, wh.A.apply(V.comps))
    Q = lambda V: _vec(n, wh.Q.apply(V.comps))
    b = fundamental_form(wh)
    db = ext_d(b)
    T = lambda U, V: torsion(nb, U, V)
    pairs = [((i, j), fr[i], fr[j]) for i in range(n) for j in range(n)]
    triples = [((i, j, k), fr[i], fr[j], fr[k]) for i, j, k in product(range(n), repeat=3)]
    lab2 = lambda k: f"(d{k[0] + 1},d{k[1] + 1})"
    lab3 = lambda k: f"(d{k[0] + 1},d{k[1] + 1},d{k[2] + 1})"
    rep = Report("torsion conditions")
    rep.add("a_torsion", scan(((k, T(A(X), Y) - T(X, A(Y))) for k, X, Y in pairs),
                              lambda k, v: f"T(AX,Y) - T(X,AY) at {lab2(k)} = {v}"))
    rep.add("q_torsion_sym", scan(((k, T(Q(X), Y) - T(X, Q(Y))) for k, X, Y in pairs),
                                  lambda k, v: f"T(QX,Y) - T(X,QY) at {lab2(k)} = {v}"))
    rep.add("q_torsion_commute", scan(((k, T(Q(X), Y) - Q(T(X, Y))) for k, X, Y in pairs),
                                      lambda k, v: f"T(QX,Y) - Q T(X,Y) at {lab2(k)} = {v}"))
    rep.add("nabla_b_zero", scan(nabla_b_components(nb, b),
                                 lambda k, v: f"(nabla_d{k[0] + 1} b)(d{k[1] + 1},d{k[2] + 1}) = {v}"))
    rep.add("lemma_identity", scan(((k, lemma_identity(wh, X, Y, Z, reading)) for k, X, Y, Z in triples),
                                   lambda k, v: f"identity at {lab3(k)} = {v}"))
    rep.add("db_Q", scan(((k, db(Q(X), Y, Z) - db(X, Y, Q(Z))) for k, X, Y, Z in triples),
                         lambda k, v: f"db(QX,Y,Z) - db(X,Y,QZ) at {lab3(k)} = {v}"))
    rep.add("a_torsion_db", scan(((k, db(A(X), Y, Z) - db(X, A(Y), Z)) for k, X, Y, Z in triples),
                                 lambda k, v: f"db(AX,Y,Z) - db(X,AY,Z) at {lab3(k)} = {v}"))
    return rep


def nearly_kahler_defect(wh: WeakHermitian, lc: AffineConnection) -> list[tuple[tuple[int, int], VectorField]]:
    """``S(d_i, d_j) = (nabla_i A) d_j + (nabla_j A) d_i`` for ``i <= j``."""
    n = wh.n
    fr = _frame(n)
    dA = [cov_deriv(lc, X, wh.A) for X in fr]
    out = []
    for i in range(n):
        for j in range(i, n):
            out.append(((i, j), _vec(n, dA[i].col(j)) + _vec(n, dA[j].col(i))))
    return out


def nabla_A_finding(wh: WeakHermitian, lc: AffineConnection) -> Finding:
    for i, X in enumerate(_frame(wh.n)):
        f = _matrix_finding(cov_deriv(lc, X, wh.A), f"nabla_d{i + 1} A")
        if not f:
            return f
    return Finding(True)


# -- generalized Hermitian and Kaehler structures -------------------------------------


def induced_complex_structures(gm: GeneralizedMetric, J: EndoE) -> tuple[FieldMatrix, FieldMatrix]:
    """``J+-`` with ``J+- X = pi(J X+-)``, as matrices acting on columns."""
    n = gm.n
    fr = _frame(n)
    cp = [J(gm.plus(X)).vec.comps for X in fr]
    cm = [J(gm.minus(X)).vec.comps for X in fr]
    return FieldMatrix._raw(n, tuple(zip(*cp)), n), FieldMatrix._raw(n, tuple(zip(*cm)), n)


def _parallel_tm(nb: AffineConnection, M: FieldMatrix, name: str) -> Finding:
    n = nb.nvars
    for i, X in enumerate(_frame(n)):
        f = _matrix_finding(cov_deriv(nb, X, M), f"nabla_d{i + 1} {name}")
        if not f:
            return f
    return Finding(True)


def hermitian_suite(gm: GeneralizedMetric, J: EndoE, nb: AffineConnection | None = None) -> Report:
    """Compatibility of ``J`` with ``G`` and the induced ``J+-``.

    Raises NotCompatible when ``J`` is not a strong complex structure or does not commute with ``G``.
    """
    kind = classify_endo(J).kind
    if kind != "strong_gacs":
        raise NotCompatible(f"J classifies as {kind}, not strong_gacs")
    G = gm.G
    comm = G @ J - J @ G
    nz = comm.nonzero_block()
    if nz is not None:
        raise NotCompatible("G J != J G", witness=f"(GJ - JG).{nz[0]}[{nz[1] + 1},{nz[2] + 1}] = {nz[3]}")
    n = gm.n
    rep = Report("generalized Hermitian")
    rep.add("commute", Finding(True))
    fr = section_frame(n)
    rep.add(
        "hermitian_metric",
        scan((((a, c), pairing(G(J(fr[a])), J(fr[c])) - pairing(G(fr[a]), fr[c]))
              for a in range(2 * n) for c in range(2 * n)),
             lambda k, v: f"<GJu,Jv> - <Gu,v> at ({section_label(n, k[0])}, {section_label(n, k[1])}) = {v}"),
    )
    Jp, Jm = induced_complex_structures(gm, J)
    I = _eye(n)
    rep.add("J_plus_square", _matrix_finding(Jp @ Jp + I, "J+^2 + I"))
    rep.add("J_minus_square", _matrix_finding(Jm @ Jm + I, "J-^2 + I"))

    def lifts():
        for i, X in enumerate(_frame(n)):
            yield (i, "+"), J(gm.plus(X)) - gm.plus(_vec(n, Jp.col(i)))
            yield (i, "-"), J(gm.minus(X)) - gm.minus(_vec(n, Jm.col(i)))

    rep.add("eigenbundles_invariant", scan(lifts(), lambda k, v: f"J d{k[0] + 1}{k[1]} - (J{k[1]} d{k[0] + 1}){k[1]} = {v}"))
    g = gm.g.matrix
    rep.add("g_hermitian_plus", _matrix_finding(Jp.T @ g @ Jp - g, "J+^T g J+ - g"))
    rep.add("g_hermitian_minus", _matrix_finding(Jm.T @ g @ Jm - g, "J-^T g J- - g"))
    nb = nb or nabla_plus(gm)
    rep.add("nabla_b_zero", scan(nabla_b_components(nb, gm.b),
                                 lambda k, v: f"(nabla_d{k[0] + 1} b)(d{k[1] + 1},d{k[2] + 1}) = {v}"))
    rep.add("parallel_J", _partial_endo(n, nb, J, "J"))
    rep.add("parallel_J_plus", _parallel_tm(nb, Jp, "J+"))
    rep.add("parallel_J_minus", _parallel_tm(nb, Jm, "J-"))
    both = rep["parallel_J_plus"].ok and rep["parallel_J_minus"].ok
    rep.add("parallel_equivalence", Finding(rep["parallel_J"].ok == both))
    return rep


def gualtieri_pair(g: MetricTensor, b: KForm, Jp: FieldMatrix, Jm: FieldMatrix) -> tuple[EndoE, EndoE]:
    """The two commuting structures built from a bi-Hermitian triple ``(g, J+, J-)``.

    With ``w+- = g J+-`` (so ``w(X, .) = g(JX, .)``)::

        J1,2 = 1/2 e^-b [[J+ +- J-, -(w+^-1 -+ w-^-1)], [w+ -+ w-, -(J+^T +- J-^T)]] e^b

    conjugated so that ``-J1 J2`` is the block form of ``(g, b)``.
    """
    n = g.nvars
    I, gm = _eye(n), g.matrix
    for name, Jx in (("J+", Jp), ("J-", Jm)):
        f = _matrix_finding(Jx @ Jx + I, f"{name}^2 + I")
        if not f:
            raise NotHermitianInput(f"{name} does not square to -Id: {f.witness}")
        f = _matrix_finding(Jx.T @ gm @ Jx - gm, f"{name}^T g {name} - g")
        if not f:
            raise NotHermitianInput(f"g is not {name}-Hermitian: {f.witness}")
    wp, wm = gm @ Jp, gm @ Jm
    wpi, wmi = wp.inv(), wm.inv()
    half = Fraction(1, 2)
    J1 = EndoE(Jp + Jm, -(wpi - wmi), wp - wm, -(Jp.T + Jm.T)).scale(half)
    J2 = EndoE(Jp - Jm, -(wpi + wmi), wp + wm, -(Jp.T - Jm.T)).scale(half)
    if not b.is_zero():
        e, einv = EndoE.b_transform(b), EndoE.b_transform(-b)
        J1, J2 = einv @ J1 @ e, einv @ J2 @ e
    return J1, J2


def kahler_report(gm: GeneralizedMetric, J: EndoE, nb: AffineConnection | None = None) -> Report:
    """Hypotheses (``db``, ``nabla+ b``, ``nabla+ J+-``) and each Kaehler conclusion."""
    n = gm.n
    nb = nb or nabla_plus(gm)
    G = gm.G
    GJ = G @ J
    Jp, Jm = induced_complex_structures(gm, J)
    rep = Report("generalized Kaehler")
    rep.add("db_zero", scan([("db", ext_d(gm.b))], lambda k, v: f"db = {v}"))
    rep.add("nabla_b_zero", scan(nabla_b_components(nb, gm.b),
                                 lambda k, v: f"(nabla_d{k[0] + 1} b)(d{k[1] + 1},d{k[2] + 1}) = {v}"))
    rep.add("parallel_J_plus", _parallel_tm(nb, Jp, "J+"))
    rep.add("parallel_J_minus", _parallel_tm(nb, Jm, "J-"))
    rep.add("courant_N_J", nijenhuis_finding(COURANT, J, n, "N_J"))
    rep.add("courant_N_GJ", nijenhuis_finding(COURANT, GJ, n, "N_GJ"))
    kind = ConnBracket(nb)
    rep.add("nabla_N_G", nijenhuis_finding(kind, G, n, "N_G"))
    rep.add("nabla_N_J", nijenhuis_finding(kind, J, n, "N_J"))
    rep.add("nabla_N_GJ", nijenhuis_finding(kind, GJ, n, "N_GJ"))
    rep.add("parallel_G", _partial_endo(n, nb, G, "G"))
    rep.add("parallel_J", _partial_endo(n, nb, J, "J"))
    rep.add("parallel_GJ", _partial_endo(n, nb, GJ, "GJ"))
    return rep
