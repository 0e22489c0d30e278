"""Dense matrices over the rational-function field.

Ranks, kernels and invertibility are generic-point notions: an entry counts
as nonzero when it is not the zero rational function.
"""
from __future__ import annotations

from typing import Iterable, Sequence

from ..errors import DimensionMismatch, SingularMatrix
from .field import ScalarField, sf


def _weight(f: ScalarField) -> tuple[int, int]:
    # cheaper pivots first: constants, then short numerators and denominators
    return (0 if f.is_const() else 1, len(f.num.t) + sum(len(a.t) for a, _ in f.dens))


class FieldMatrix:
    """Immutable ``rows x cols`` matrix of ScalarFields on an ``nvars`` chart."""

    __slots__ = ("nvars", "rows", "cols", "entries")

    def __init__(self, nvars: int, entries: Iterable[Sequence]):
        rows = tuple(tuple(sf(nvars, e) for e in row) for row in entries)
        widths = {len(r) for r in rows}
        if len(widths) > 1:
            raise DimensionMismatch("ragged matrix rows")
        self.nvars = nvars
        self.rows = len(rows)
        self.cols = widths.pop() if widths else 0
        self.entries = rows

    @classmethod
    def _raw(cls, nvars: int, rows: tuple, cols: int | None = None) -> "FieldMatrix":
        m = object.__new__(cls)
        m.nvars = nvars
        m.rows = len(rows)
        m.cols = len(rows[0]) if rows else (cols or 0)
        m.entries = rows
        return m

    @classmethod
    def zeros(cls, nvars: int, rows: int, cols: int) -> "FieldMatrix":
        z = ScalarField.zero(nvars)
        return cls._raw(nvars, tuple((z,) * cols for _ in range(rows)), cols)

    @classmethod
    def identity(cls, nvars: int, n: int) -> "FieldMatrix":
        z, o = ScalarField.zero(nvars), ScalarField.one(nvars)
        return cls._raw(nvars, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)), n)

    @classmethod
    def diag(cls, nvars: int, values: Sequence) -> "FieldMatrix":
        n = len(values)
        z = ScalarField.zero(nvars)
        vals = [sf(nvars, v) for v in values]
        return cls._raw(nvars, tuple(tuple(vals[i] if i == j else z for j in range(n)) for i in range(n)), n)

    @classmethod
    def blocks(cls, top_left, top_right, bottom_left, bottom_right) -> "FieldMatrix":
        top = [a + b for a, b in zip(top_left.entries, top_right.entries)]
        bot = [a + b for a, b in zip(bottom_left.entries, bottom_right.entries)]
        return cls._raw(top_left.nvars, tuple(top + bot))

    # -- access -----------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij):
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"entry ({i}, {j}) outside {self.rows}x{self.cols}")
        return self.entries[i][j]

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self.entries)

    def submatrix(self, r0: int, r1: int, c0: int, c1: int) -> "FieldMatrix":
        return FieldMatrix._raw(self.nvars, tuple(r[c0:c1] for r in self.entries[r0:r1]), c1 - c0)

    def transpose(self) -> "FieldMatrix":
        return FieldMatrix._raw(self.nvars, tuple(zip(*self.entries)), self.rows)

    T = property(transpose)

    def map(self, fn) -> "FieldMatrix":
        return FieldMatrix._raw(self.nvars, tuple(tuple(fn(e) for e in r) for r in self.entries), self.cols)

    def is_zero(self) -> bool:
        return all(e.is_zero() for r in self.entries for e in r)

    def is_square(self) -> bool:
        return self.rows == self.cols

    # -- arithmetic -------------------------------------------------------

    def _same_shape(self, other: "FieldMatrix"):
        if self.shape != other.shape:
            raise DimensionMismatch(f"shapes {self.shape} and {other.shape} differ")

    def __add__(self, other: "FieldMatrix") -> "FieldMatrix":
        self._same_shape(other)
        return FieldMatrix._raw(
            self.nvars,
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)),
            self.cols,
        )

    def __sub__(self, other: "FieldMatrix") -> "FieldMatrix":
        self._same_shape(other)
        return FieldMatrix._raw(
            self.nvars,
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)),
            self.cols,
        )

    def __neg__(self) -> "FieldMatrix":
        return self.map(lambda e: -e)

    def scale(self, c) -> "FieldMatrix":
        c = sf(self.nvars, c)
        return self.map(lambda e: e * c)

    def __matmul__(self, other: "FieldMatrix") -> "FieldMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        cols = other.transpose().entries if other.rows else ((),) * other.cols
        z = ScalarField.zero(self.nvars)
        out = []
        for r in self.entries:
            row = []
            for c in cols:
                acc = z
                for a, b in zip(r, c):
                    if a.num.t and b.num.t:
                        acc = acc + a * b
                row.append(acc)
            out.append(tuple(row))
        return FieldMatrix._raw(self.nvars, tuple(out), other.cols)

    def apply(self, vec: Sequence[ScalarField]) -> tuple:
        if len(vec) != self.cols:
            raise DimensionMismatch(f"vector of length {len(vec)} for {self.cols} columns")
        z = ScalarField.zero(self.nvars)
        out = []
        for r in self.entries:
            acc = z
            for a, b in zip(r, vec):
                if a.num.t and b.num.t:
                    acc = acc + a * b
            out.append(acc)
        return tuple(out)

    def __eq__(self, other):
        if not isinstance(other, FieldMatrix):
            return NotImplemented
        return self.shape == other.shape and all(
            a == b for r, s in zip(self.entries, other.entries) for a, b in zip(r, s)
        )

    __hash__ = None

    # -- elimination ------------------------------------------------------

    def det(self) -> ScalarField:
        """Bareiss fraction-free elimination; every division is exact."""
        if not self.is_square():
            raise DimensionMismatch("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return ScalarField.one(self.nvars)
        a = [list(r) for r in self.entries]
        sign = 1
        prev = ScalarField.one(self.nvars)
        for k in range(n - 1):
            cands = [i for i in range(k, n) if not a[i][k].is_zero()]
            if not cands:
                return ScalarField.zero(self.nvars)
            p = min(cands, key=lambda i: _weight(a[i][k]))
            if p != k:
                a[k], a[p] = a[p], a[k]
                sign = -sign
            piv = a[k][k]
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (piv * a[i][j] - a[i][k] * a[k][j]) / prev
                a[i][k] = ScalarField.zero(self.nvars)
            prev = piv
        d = a[n - 1][n - 1]
        return -d if sign < 0 else d

    def rref(self) -> tuple["FieldMatrix", list[int]]:
        """Reduced row echelon form and the list of pivot columns."""
        a = [list(r) for r in self.entries]
        pivots = []
        r = 0
        for c in range(self.cols):
            cands = [i for i in range(r, self.rows) if not a[i][c].is_zero()]
            if not cands:
                continue
            p = min(cands, key=lambda i: _weight(a[i][c]))
            a[r], a[p] = a[p], a[r]
            inv = a[r][c].inverse()
            a[r] = [e * inv for e in a[r]]
            for i in range(self.rows):
                if i != r and not a[i][c].is_zero():
                    f = a[i][c]
                    a[i] = [e - f * q for e, q in zip(a[i], a[r])]
            pivots.append(c)
            r += 1
            if r == self.rows:
                break
        return FieldMatrix._raw(self.nvars, tuple(tuple(x) for x in a), self.cols), pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def inv(self) -> "FieldMatrix":
        if not self.is_square():
            raise DimensionMismatch("inverse of a non-square matrix")
        n = self.rows
        eye = FieldMatrix.identity(self.nvars, n)
        aug = FieldMatrix._raw(self.nvars, tuple(r + e for r, e in zip(self.entries, eye.entries)))
        red, pivots = aug.rref()
        if pivots[:n] != list(range(n)):
            raise SingularMatrix("matrix is singular as a rational function")
        return red.submatrix(0, n, n, 2 * n)

    def kernel(self) -> list[tuple]:
        """Basis of the right null space; each vector has first nonzero entry 1."""
        red, pivots = self.rref()
        z, o = ScalarField.zero(self.nvars), ScalarField.one(self.nvars)
        basis = []
        for free in range(self.cols):
            if free in pivots:
                continue
            v = [z] * self.cols
            v[free] = o
            for row, pc in enumerate(pivots):
                v[pc] = -red.entries[row][free]
            lead = next(e for e in v if not e.is_zero())
            if lead != 1:
                v = [e / lead for e in v]
            basis.append(tuple(v))
        return basis

    def __repr__(self):
        return f"FieldMatrix({self.rows}x{self.cols})"

    def __str__(self):
        return "[" + ", ".join("[" + ", ".join(str(e) for e in r) + "]" for r in self.entries) + "]"
