"""Affine connections by Christoffel symbols and the induced generalized connection.

``gamma[k][i][j]`` is ``Gamma^k_ij``, the ``d_k`` component of ``nabla_{d_i} d_j``.
"""
from __future__ import annotations

from itertools import combinations, product
from typing import Callable, Mapping, Sequence

from .calculus import KForm, MetricTensor, VectorField, lie_bracket, one_form_apply
from .courant import GenSection, courant, dorfman, pairing, conn_bracket
from .endo import EndoE
from .errors import DimensionMismatch
from .scalar import FieldMatrix, ScalarField, sf

Array3 = Sequence[Sequence[Sequence[ScalarField]]]


class AffineConnection:
    __slots__ = ("nvars", "gamma")

    def __init__(self, nvars: int, gamma: Array3 | Mapping | None = None):
        z = ScalarField.zero(nvars)
        if gamma is None or isinstance(gamma, Mapping):
            g = [[[z] * nvars for _ in range(nvars)] for _ in range(nvars)]
            for (k, i, j), v in (gamma or {}).items():
                g[k][i][j] = sf(nvars, v)
        else:
            if len(gamma) != nvars or any(len(r) != nvars or any(len(c) != nvars for c in r) for r in gamma):
                raise DimensionMismatch("Christoffel array must be n x n x n")
            g = [[[sf(nvars, v) for v in c] for c in r] for r in gamma]
        self.nvars = nvars
        self.gamma = tuple(tuple(tuple(c) for c in r) for r in g)

    @classmethod
    def flat(cls, n: int) -> "AffineConnection":
        return cls(n)

    def __eq__(self, other):
        if not isinstance(other, AffineConnection):
            return NotImplemented
        return self.nvars == other.nvars and all(
            self.gamma[k][i][j] == other.gamma[k][i][j] for k, i, j in product(range(self.nvars), repeat=3)
        )

    __hash__ = None

    def difference(self, other: "AffineConnection") -> list[tuple[tuple[int, int, int], ScalarField]]:
        """Nonzero entries of ``Gamma - Gamma'`` keyed by ``(k, i, j)``."""
        out = []
        for k, i, j in product(range(self.nvars), repeat=3):
            d = self.gamma[k][i][j] - other.gamma[k][i][j]
            if d:
                out.append(((k, i, j), d))
        return out

    def apply(self, X: VectorField, j: int) -> VectorField:
        """``nabla_X d_j``."""
        n = self.nvars
        comps = []
        for k in range(n):
            acc = ScalarField.zero(n)
            for i, x in enumerate(X.comps):
                if x and self.gamma[k][i][j]:
                    acc = acc + x * self.gamma[k][i][j]
            comps.append(acc)
        return VectorField._raw(n, tuple(comps))

    def __repr__(self):
        terms = [f"G^{k + 1}_{i + 1}{j + 1}={v}" for (k, i, j), v in self.difference(AffineConnection(self.nvars))]
        return "AffineConnection(" + ", ".join(terms) + ")"


def _nabla_vec(nb: AffineConnection, X: VectorField, Y: VectorField) -> VectorField:
    n = nb.nvars
    out = list(X(y) for y in Y.comps)
    for k, i, j in product(range(n), repeat=3):
        g = nb.gamma[k][i][j]
        if g and X.comps[i] and Y.comps[j]:
            out[k] = out[k] + g * X.comps[i] * Y.comps[j]
    return VectorField._raw(n, tuple(out))


def _nabla_form(nb: AffineConnection, X: VectorField, w: KForm) -> KForm:
    """``(nabla_X w)(d_J) = X(w_J) - sum_a w(.., nabla_X d_{j_a}, ..)``."""
    n, k = w.nvars, w.degree
    if k == 0:
        return KForm.function(X(w[()]))
    cols = [nb.apply(X, j) for j in range(n)]
    out = {}
    for J in combinations(range(n), k):
        acc = X(w[J])
        for a, ja in enumerate(J):
            for m, c in enumerate(cols[ja].comps):
                if c:
                    wm = w[J[:a] + (m,) + J[a + 1:]]
                    if wm:
                        acc = acc - c * wm
        out[J] = acc
    return KForm._raw(n, k, out)


def _nabla_metric(nb: AffineConnection, X: VectorField, g: MetricTensor) -> FieldMatrix:
    n = nb.nvars
    cols = [nb.apply(X, j) for j in range(n)]
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = X(g[i, j])
            for m in range(n):
                if cols[i].comps[m]:
                    acc = acc - cols[i].comps[m] * g[m, j]
                if cols[j].comps[m]:
                    acc = acc - cols[j].comps[m] * g[i, m]
            row.append(acc)
        rows.append(tuple(row))
    return FieldMatrix._raw(n, tuple(rows), n)


def _nabla_endo_tm(nb: AffineConnection, X: VectorField, A: FieldMatrix) -> FieldMatrix:
    """``(nabla_X A) e_j = nabla_X (A e_j) - A (nabla_X e_j)`` for ``A: TM -> TM``."""
    n = nb.nvars
    cols = []
    for j in range(n):
        Aej = VectorField._raw(n, A.col(j))
        lhs = _nabla_vec(nb, X, Aej)
        rhs = A.apply(nb.apply(X, j).comps)
        cols.append(tuple(a - b for a, b in zip(lhs.comps, rhs)))
    return FieldMatrix._raw(n, tuple(zip(*cols)), n)


def cov_deriv(nb: AffineConnection, X: VectorField, T):
    """Covariant derivative of a vector field, form, metric, (1,1)-tensor or EndoE."""
    if X.nvars != nb.nvars:
        raise DimensionMismatch("vector field and connection on different charts")
    if isinstance(T, VectorField):
        return _nabla_vec(nb, X, T)
    if isinstance(T, KForm):
        return _nabla_form(nb, X, T)
    if isinstance(T, MetricTensor):
        return _nabla_metric(nb, X, T)
    if isinstance(T, FieldMatrix):
        return _nabla_endo_tm(nb, X, T)
    if isinstance(T, EndoE):
        return gen_cov_deriv_endo(GeneralizedConnection(nb), GenSection(X), T)
    if isinstance(T, GenSection):
        return GeneralizedConnection(nb)(GenSection(X), T)
    raise TypeError(f"cannot differentiate {type(T).__name__}")


def torsion(nb: AffineConnection, X: VectorField, Y: VectorField) -> VectorField:
    """``T(X,Y) = nabla_X Y - nabla_Y X - [X,Y]``."""
    return _nabla_vec(nb, X, Y) - _nabla_vec(nb, Y, X) - lie_bracket(X, Y)


def torsion3(nb: AffineConnection, g: MetricTensor, X: VectorField, Y: VectorField, Z: VectorField) -> ScalarField:
    """``g(T(X,Y), Z)``."""
    return g(torsion(nb, X, Y), Z)


def torsion_array(nb: AffineConnection) -> tuple:
    """``T^k_ij = Gamma^k_ij - Gamma^k_ji`` as ``[k][i][j]``."""
    n = nb.nvars
    return tuple(tuple(tuple(nb.gamma[k][i][j] - nb.gamma[k][j][i] for j in range(n)) for i in range(n)) for k in range(n))


def torsion3_array(nb: AffineConnection, g: MetricTensor) -> tuple:
    """``g(T(d_i, d_j), d_k)`` as ``[i][j][k]``."""
    n = nb.nvars
    t = torsion_array(nb)
    out = []
    for i in range(n):
        plane = []
        for j in range(n):
            row = []
            for k in range(n):
                acc = ScalarField.zero(n)
                for m in range(n):
                    if t[m][i][j] and g[m, k]:
                        acc = acc + t[m][i][j] * g[m, k]
                row.append(acc)
            plane.append(tuple(row))
        out.append(tuple(plane))
    return tuple(out)


def form_array3(w: KForm) -> tuple:
    """``w(d_i, d_j, d_k)`` of a 3-form as ``[i][j][k]``."""
    n = w.nvars
    return tuple(tuple(tuple(w[(i, j, k)] for k in range(n)) for j in range(n)) for i in range(n))


def is_torsion_free(nb: AffineConnection) -> bool:
    return all(e.is_zero() for plane in torsion_array(nb) for row in plane for e in row)


def curvature(nb: AffineConnection) -> dict[tuple[int, int, int, int], ScalarField]:
    """Nonzero ``R^l_{kij}`` with ``R(d_i,d_j) d_k = R^l_{kij} d_l``."""
    n = nb.nvars
    G = nb.gamma
    out = {}
    for l, k, i, j in product(range(n), repeat=4):
        if i >= j:
            continue
        v = G[l][j][k].diff(i) - G[l][i][k].diff(j)
        for m in range(n):
            v = v + G[l][i][m] * G[m][j][k] - G[l][j][m] * G[m][i][k]
        if v:
            out[(l, k, i, j)] = v
    return out


def is_flat(nb: AffineConnection) -> bool:
    return not curvature(nb)


def koszul_with_torsion(g: MetricTensor, T: Array3 | KForm | Callable | None = None) -> AffineConnection:
    """The metric connection with prescribed torsion 3-tensor ``T(X,Y,Z) = g(T(X,Y),Z)``.

    ``T`` may be an ``[i][j][k]`` array, a 3-form (totally skew torsion) or
    None for the Levi-Civita connection.
    """
    n = g.nvars
    if isinstance(T, KForm):
        T = form_array3(T)
    ginv = g.inverse
    zero = ScalarField.zero(n)
    tv = (lambda i, j, k: zero) if T is None else (lambda i, j, k: T[i][j][k])
    first = [[[None] * n for _ in range(n)] for _ in range(n)]
    for i, j, k in product(range(n), repeat=3):
        v = g[j, k].diff(i) + g[i, k].diff(j) - g[i, j].diff(k)
        v = v + tv(i, j, k) - tv(i, k, j) - tv(j, k, i)
        first[i][j][k] = v / 2
    gamma = [[[zero] * n for _ in range(n)] for _ in range(n)]
    for m, i, j in product(range(n), repeat=3):
        acc = zero
        for k in range(n):
            if ginv[m, k] and first[i][j][k]:
                acc = acc + ginv[m, k] * first[i][j][k]
        gamma[m][i][j] = acc
    return AffineConnection(n, gamma)


def koszul_value(g: MetricTensor, T: Callable, X: VectorField, Y: VectorField, Z: VectorField) -> ScalarField:
    """Right side of the Koszul formula with torsion for arbitrary fields.

    ``T(X, Y)`` must return the torsion vector field.
    """
    val = (
        X(g(Y, Z)) + Y(g(X, Z)) - Z(g(X, Y))
        + g(Z, lie_bracket(X, Y)) - g(Y, lie_bracket(X, Z)) - g(X, lie_bracket(Y, Z))
        + g(Z, T(X, Y)) - g(Y, T(X, Z)) - g(X, T(Y, Z))
    )
    return val / 2


class GeneralizedConnection:
    """``nabla~_{X + xi}(Y + eta) = nabla_X Y + nabla_X eta`` induced by an affine connection."""

    __slots__ = ("base",)

    def __init__(self, base: AffineConnection):
        self.base = base

    def __call__(self, u: GenSection, v: GenSection) -> GenSection:
        X = u.vec
        return GenSection(_nabla_vec(self.base, X, v.vec), _nabla_form(self.base, X, v.form))


def gen_cov_deriv_endo(nt: GeneralizedConnection, u: GenSection, J: EndoE) -> EndoE:
    """``(nabla~_u J) v = nabla~_u (J v) - J (nabla~_u v)`` assembled on the coordinate frame."""
    from .courant import section_frame

    n = J.n
    cols = []
    for e in section_frame(n):
        cols.append((nt(u, J(e)) - J(nt(u, e))).components())
    return EndoE.from_matrix(FieldMatrix._raw(n, tuple(zip(*cols)), 2 * n))


def gen_torsion_courant(nt: GeneralizedConnection, v: GenSection, w: GenSection, u: GenSection) -> ScalarField:
    """``<nabla_v w - nabla_w v - [v,w]_C, u> + 1/2 (<nabla_u v, w> - <nabla_u w, v>)``."""
    first = pairing(nt(v, w) - nt(w, v) - courant(v, w), u)
    return first + (pairing(nt(u, v), w) - pairing(nt(u, w), v)) / 2


def gen_torsion_dorfman(nt: GeneralizedConnection, v: GenSection, w: GenSection, u: GenSection) -> ScalarField:
    """The same torsion written with the Dorfman bracket: ``<.. - [v,w]_D, u> + <nabla_u v, w>``."""
    return pairing(nt(v, w) - nt(w, v) - dorfman(v, w), u) + pairing(nt(u, v), w)


def gen_torsion_nabla(nt: GeneralizedConnection, nb: AffineConnection, v: GenSection, w: GenSection) -> GenSection:
    """``nabla~_v w - nabla~_w v - [v,w]_nabla``."""
    return nt(v, w) - nt(w, v) - conn_bracket(nb, v, w)


def torsion_equality_defect(
    nt: GeneralizedConnection, nb: AffineConnection, v: GenSection, w: GenSection, u: GenSection
) -> ScalarField:
    """Left minus right side of the criterion for the two generalized torsions to agree.

    With ``v = X+xi``, ``w = Y+eta``, ``u = Z+zeta`` the left side is
    ``1/2 (eta(T(X,Z) + nabla_Z X) - xi(T(Y,Z) + nabla_Z Y) + Z(xi(Y)))`` and the
    right side is ``<nabla~_u v, w>``.
    """
    X, xi, Y, eta, Z = v.vec, v.form, w.vec, w.form, u.vec
    lhs = (
        one_form_apply(eta, torsion(nb, X, Z) + _nabla_vec(nb, Z, X))
        - one_form_apply(xi, torsion(nb, Y, Z) + _nabla_vec(nb, Z, Y))
        + Z(one_form_apply(xi, Y))
    ) / 2
    return lhs - pairing(nt(u, v), w)


__all__ = [
    "AffineConnection",
    "GeneralizedConnection",
    "cov_deriv",
    "torsion",
    "torsion3",
    "torsion_array",
    "torsion3_array",
    "form_array3",
    "is_torsion_free",
    "curvature",
    "is_flat",
    "koszul_with_torsion",
    "koszul_value",
    "gen_cov_deriv_endo",
    "gen_torsion_courant",
    "gen_torsion_dorfman",
    "gen_torsion_nabla",
    "torsion_equality_defect",
]
