"""Vector fields, differential forms and metrics on one coordinate chart.

Forms use the determinant convention without factorials:
``dx^i ^ dx^j (d_k, d_l) = delta^i_k delta^j_l - delta^i_l delta^j_k``.
A k-form stores one component per strictly increasing index tuple, and
``(d w)_J = sum_a (-1)^a d_{j_a} w_{J minus j_a}``.
Indices are 0-based in code; ``d_0`` prints as ``d1``.
"""
from __future__ import annotations

from itertools import combinations, permutations
from typing import Iterable, Mapping, Sequence

from .errors import DegreeError, DimensionMismatch
from .scalar import FieldMatrix, ScalarField, sf


def _sort_sign(idx: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Sign of the permutation sorting ``idx`` and the sorted tuple (sign 0 on repeats)."""
    idx = list(idx)
    if len(set(idx)) != len(idx):
        return 0, ()
    sign = 1
    for i in range(len(idx)):
        for j in range(len(idx) - 1 - i):
            if idx[j] > idx[j + 1]:
                idx[j], idx[j + 1] = idx[j + 1], idx[j]
                sign = -sign
    return sign, tuple(idx)


class VectorField:
    """``X = sum_i X^i d_i`` with ScalarField components."""

    __slots__ = ("nvars", "comps")

    def __init__(self, nvars: int, comps: Sequence):
        if len(comps) != nvars:
            raise DimensionMismatch(f"{len(comps)} components on a {nvars}-dimensional chart")
        self.nvars = nvars
        self.comps = tuple(sf(nvars, c) for c in comps)

    @classmethod
    def _raw(cls, nvars: int, comps: tuple) -> "VectorField":
        v = object.__new__(cls)
        v.nvars = nvars
        v.comps = comps
        return v

    @classmethod
    def zero(cls, nvars: int) -> "VectorField":
        return cls._raw(nvars, (ScalarField.zero(nvars),) * nvars)

    @classmethod
    def coord(cls, nvars: int, i: int) -> "VectorField":
        """The coordinate field ``d_i`` (0-based ``i``)."""
        z, o = ScalarField.zero(nvars), ScalarField.one(nvars)
        return cls._raw(nvars, tuple(o if j == i else z for j in range(nvars)))

    def __getitem__(self, i: int) -> ScalarField:
        return self.comps[i]

    def _check(self, other):
        if other.nvars != self.nvars:
            raise DimensionMismatch(f"{self.nvars} vs {other.nvars} dimensional charts")

    def __add__(self, other: "VectorField") -> "VectorField":
        self._check(other)
        return VectorField._raw(self.nvars, tuple(a + b for a, b in zip(self.comps, other.comps)))

    def __sub__(self, other: "VectorField") -> "VectorField":
        self._check(other)
        return VectorField._raw(self.nvars, tuple(a - b for a, b in zip(self.comps, other.comps)))

    def __neg__(self) -> "VectorField":
        return VectorField._raw(self.nvars, tuple(-a for a in self.comps))

    def scale(self, f) -> "VectorField":
        f = sf(self.nvars, f)
        return VectorField._raw(self.nvars, tuple(f * a for a in self.comps))

    def __rmul__(self, f) -> "VectorField":
        return self.scale(f)

    def __call__(self, f: ScalarField) -> ScalarField:
        """Directional derivative ``X(f)``."""
        acc = ScalarField.zero(self.nvars)
        for i, c in enumerate(self.comps):
            if c:
                d = f.diff(i)
                if d:
                    acc = acc + c * d
        return acc

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.comps)

    def __eq__(self, other):
        if not isinstance(other, VectorField):
            return NotImplemented
        return self.nvars == other.nvars and all(a == b for a, b in zip(self.comps, other.comps))

    __hash__ = None

    def __repr__(self):
        return f"VectorField({self})"

    def __str__(self):
        return _join([_term(c, f"d{i + 1}") for i, c in enumerate(self.comps) if c])


def _join(terms: list[str]) -> str:
    if not terms:
        return "0"
    out = terms[0]
    for t in terms[1:]:
        out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
    return out


def _term(c: ScalarField, basis: str) -> str:
    s = str(c)
    if s == "1":
        return basis
    if s == "-1":
        return f"-{basis}"
    if " " in s and not (s.startswith("(") and s.endswith(")") and "/" not in s):
        s = f"({s})"
    return f"{s}*{basis}"


class KForm:
    """Differential k-form; ``comps`` maps sorted index tuples to nonzero fields."""

    __slots__ = ("nvars", "degree", "comps")

    def __init__(self, nvars: int, degree: int, comps: Mapping[Sequence[int], object] | None = None):
        if not 0 <= degree <= nvars:
            raise DegreeError(f"degree {degree} on a {nvars}-dimensional chart")
        self.nvars = nvars
        self.degree = degree
        out: dict[tuple, ScalarField] = {}
        for idx, c in (comps or {}).items():
            idx = (idx,) if isinstance(idx, int) else tuple(idx)
            if len(idx) != degree or any(not 0 <= i < nvars for i in idx):
                raise DimensionMismatch(f"index {idx} invalid for a {degree}-form in {nvars} variables")
            s, key = _sort_sign(idx)
            if not s:
                continue
            c = sf(nvars, c) if s > 0 else -sf(nvars, c)
            out[key] = out[key] + c if key in out else c
        self.comps = {k: v for k, v in out.items() if v}

    @classmethod
    def _raw(cls, nvars: int, degree: int, comps: dict) -> "KForm":
        w = object.__new__(cls)
        w.nvars = nvars
        w.degree = degree
        w.comps = {k: v for k, v in comps.items() if v}
        return w

    @classmethod
    def zero(cls, nvars: int, degree: int) -> "KForm":
        if not 0 <= degree <= nvars:
            raise DegreeError(f"degree {degree} on a {nvars}-dimensional chart")
        return cls._raw(nvars, degree, {})

    @classmethod
    def function(cls, f: ScalarField) -> "KForm":
        return cls._raw(f.nvars, 0, {(): f})

    @classmethod
    def dx(cls, nvars: int, *idx: int) -> "KForm":
        """``dx^{i1} ^ ... ^ dx^{ik}`` with 0-based indices."""
        return cls(nvars, len(idx), {tuple(idx): 1})

    @classmethod
    def one_form(cls, nvars: int, comps: Sequence) -> "KForm":
        return cls(nvars, 1, {(i,): c for i, c in enumerate(comps)})

    @classmethod
    def from_matrix(cls, m: FieldMatrix) -> "KForm":
        """2-form with ``w(d_i, d_j) = m[i, j]``; ``m`` must be skew."""
        n = m.rows
        for i in range(n):
            for j in range(i, n):
                if m[i, j] != -m[j, i]:
                    raise ValueError("matrix is not skew-symmetric")
        return cls._raw(m.nvars, 2, {(i, j): m[i, j] for i in range(n) for j in range(i + 1, n)})

    def __getitem__(self, idx) -> ScalarField:
        idx = (idx,) if isinstance(idx, int) else tuple(idx)
        s, key = _sort_sign(idx)
        if not s:
            return ScalarField.zero(self.nvars)
        v = self.comps.get(key)
        if v is None:
            return ScalarField.zero(self.nvars)
        return v if s > 0 else -v

    def vector(self) -> tuple:
        """Components of a 1-form as a tuple."""
        if self.degree != 1:
            raise DegreeError("vector() needs a 1-form")
        return tuple(self[(i,)] for i in range(self.nvars))

    def matrix(self) -> FieldMatrix:
        """``[w(d_i, d_j)]`` of a 2-form."""
        if self.degree != 2:
            raise DegreeError("matrix() needs a 2-form")
        n = self.nvars
        return FieldMatrix._raw(n, tuple(tuple(self[(i, j)] for j in range(n)) for i in range(n)), n)

    def scalar(self) -> ScalarField:
        if self.degree != 0:
            raise DegreeError("scalar() needs a 0-form")
        return self[()]

    def _check(self, other: "KForm"):
        if other.nvars != self.nvars or other.degree != self.degree:
            raise DimensionMismatch("forms of different degree or chart")

    def __add__(self, other: "KForm") -> "KForm":
        self._check(other)
        out = dict(self.comps)
        for k, v in other.comps.items():
            out[k] = out[k] + v if k in out else v
        return KForm._raw(self.nvars, self.degree, out)

    def __sub__(self, other: "KForm") -> "KForm":
        return self + (-other)

    def __neg__(self) -> "KForm":
        return KForm._raw(self.nvars, self.degree, {k: -v for k, v in self.comps.items()})

    def scale(self, f) -> "KForm":
        f = sf(self.nvars, f)
        return KForm._raw(self.nvars, self.degree, {k: f * v for k, v in self.comps.items()})

    def __rmul__(self, f) -> "KForm":
        return self.scale(f)

    def __call__(self, *vectors: VectorField) -> ScalarField:
        """Evaluate on ``degree`` vector fields (determinant convention)."""
        if len(vectors) != self.degree:
            raise DegreeError(f"{self.degree}-form evaluated on {len(vectors)} vectors")
        acc = ScalarField.zero(self.nvars)
        if self.degree == 0:
            return self[()]
        for idx, c in self.comps.items():
            for perm in permutations(range(self.degree)):
                s, _ = _sort_sign(perm)
                prod = c if s > 0 else -c
                for a, p in enumerate(perm):
                    x = vectors[a].comps[idx[p]]
                    if not x:
                        prod = None
                        break
                    prod = prod * x
                if prod is not None:
                    acc = acc + prod
        return acc

    def is_zero(self) -> bool:
        return not self.comps

    def __eq__(self, other):
        if not isinstance(other, KForm):
            return NotImplemented
        if self.nvars != other.nvars or self.degree != other.degree:
            return False
        keys = set(self.comps) | set(other.comps)
        z = ScalarField.zero(self.nvars)
        return all(self.comps.get(k, z) == other.comps.get(k, z) for k in keys)

    __hash__ = None

    def __repr__(self):
        return f"KForm({self.degree}, {self})"

    def __str__(self):
        if self.degree == 0:
            return str(self[()])
        terms = []
        for idx in sorted(self.comps):
            basis = "^".join(f"dx{i + 1}" for i in idx)
            terms.append(_term(self.comps[idx], basis))
        return _join(terms)


def lie_bracket(X: VectorField, Y: VectorField) -> VectorField:
    """``[X,Y]^k = X(Y^k) - Y(X^k)``."""
    X._check(Y)
    return VectorField._raw(X.nvars, tuple(X(yk) - Y(xk) for xk, yk in zip(X.comps, Y.comps)))


def ext_d(w: KForm) -> KForm:
    n, k = w.nvars, w.degree
    if k >= n:
        # above top degree only the zero form exists
        return KForm._raw(n, k + 1, {})
    out: dict[tuple, ScalarField] = {}
    for idx, c in w.comps.items():
        for i in range(n):
            if i in idx:
                continue
            d = c.diff(i)
            if not d:
                continue
            pos = sum(1 for j in idx if j < i)
            key = tuple(sorted(idx + (i,)))
            d = d if pos % 2 == 0 else -d
            out[key] = out[key] + d if key in out else d
    return KForm._raw(n, k + 1, out)


def interior(X: VectorField, w: KForm) -> KForm:
    """``(i_X w)(Y_1, ...) = w(X, Y_1, ...)``."""
    if w.degree == 0:
        raise DegreeError("interior product of a 0-form")
    if X.nvars != w.nvars:
        raise DimensionMismatch("vector field and form on different charts")
    out: dict[tuple, ScalarField] = {}
    for idx, c in w.comps.items():
        for a, i in enumerate(idx):
            x = X.comps[i]
            if not x:
                continue
            term = x * c
            if a % 2:
                term = -term
            key = idx[:a] + idx[a + 1:]
            out[key] = out[key] + term if key in out else term
    return KForm._raw(w.nvars, w.degree - 1, out)


def lie_derivative(X: VectorField, w: KForm) -> KForm:
    """Cartan formula ``L_X = d i_X + i_X d``."""
    if w.degree == 0:
        return KForm.function(X(w[()]))
    out = ext_d(interior(X, w))
    if w.degree < w.nvars:
        out = out + interior(X, ext_d(w))
    return out


def wedge(a: KForm, b: KForm) -> KForm:
    if a.nvars != b.nvars:
        raise DimensionMismatch("forms on different charts")
    n, k = a.nvars, a.degree + b.degree
    if k > n:
        raise DegreeError(f"wedge of degree {k} on a {n}-dimensional chart")
    out: dict[tuple, ScalarField] = {}
    for i1, c1 in a.comps.items():
        for i2, c2 in b.comps.items():
            s, key = _sort_sign(i1 + i2)
            if not s:
                continue
            t = c1 * c2 if s > 0 else -(c1 * c2)
            out[key] = out[key] + t if key in out else t
    return KForm._raw(n, k, out)


def one_form_apply(xi: KForm, X: VectorField) -> ScalarField:
    """``xi(X)`` for a 1-form."""
    acc = ScalarField.zero(X.nvars)
    for (i,), c in xi.comps.items():
        x = X.comps[i]
        if x:
            acc = acc + c * x
    return acc


class MetricTensor:
    """Symmetric nondegenerate bilinear form ``g_ij`` (any signature)."""

    __slots__ = ("nvars", "matrix", "_inv")

    def __init__(self, matrix: FieldMatrix):
        n = matrix.rows
        if matrix.cols != n:
            raise DimensionMismatch("metric must be square")
        if n != matrix.nvars:
            raise DimensionMismatch("metric size differs from chart dimension")
        for i in range(n):
            for j in range(i + 1, n):
                if matrix[i, j] != matrix[j, i]:
                    raise ValueError(f"metric is not symmetric at ({i + 1},{j + 1})")
        self.nvars = n
        self.matrix = matrix
        self._inv = None

    @classmethod
    def from_rows(cls, nvars: int, rows) -> "MetricTensor":
        return cls(FieldMatrix(nvars, rows))

    @classmethod
    def euclidean(cls, n: int) -> "MetricTensor":
        return cls(FieldMatrix.identity(n, n))

    @property
    def inverse(self) -> FieldMatrix:
        if self._inv is None:
            self._inv = self.matrix.inv()
        return self._inv

    def det(self) -> ScalarField:
        return self.matrix.det()

    def __call__(self, X: VectorField, Y: VectorField) -> ScalarField:
        return _dot(X.comps, self.matrix.apply(Y.comps))

    def __getitem__(self, ij) -> ScalarField:
        return self.matrix[ij]

    def __eq__(self, other):
        if not isinstance(other, MetricTensor):
            return NotImplemented
        return self.matrix == other.matrix

    __hash__ = None


def _dot(a: Sequence[ScalarField], b: Sequence[ScalarField]) -> ScalarField:
    acc = None
    for x, y in zip(a, b):
        if x and y:
            acc = x * y if acc is None else acc + x * y
    return acc if acc is not None else ScalarField.zero(a[0].nvars if a else 0)


def flat(g: MetricTensor, X: VectorField) -> KForm:
    """The 1-form ``g(X, .)``."""
    return KForm.one_form(g.nvars, g.matrix.apply(X.comps))


def sharp(g: MetricTensor, xi: KForm) -> VectorField:
    """``g^{-1} xi``; raises SingularMatrix for a degenerate metric."""
    if xi.degree != 1:
        raise DegreeError("sharp needs a 1-form")
    return VectorField._raw(g.nvars, g.inverse.apply(xi.vector()))


def coordinate_frame(n: int) -> list[VectorField]:
    return [VectorField.coord(n, i) for i in range(n)]


def coframe(n: int) -> list[KForm]:
    return [KForm.dx(n, i) for i in range(n)]


def index_tuples(n: int, k: int) -> Iterable[tuple[int, ...]]:
    return combinations(range(n), k)


__all__ = [
    "VectorField",
    "KForm",
    "MetricTensor",
    "lie_bracket",
    "ext_d",
    "interior",
    "lie_derivative",
    "wedge",
    "flat",
    "sharp",
    "one_form_apply",
    "coordinate_frame",
    "coframe",
    "index_tuples",
]
