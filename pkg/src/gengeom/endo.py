"""Block endomorphisms of the generalized tangent bundle ``E = TM + T*M``.

An endomorphism acts on component columns ``(X, xi)`` as::

    [ H      alpha ] [ X  ]
    [ beta   K     ] [ xi ]

so ``H: TM -> TM``, ``alpha: T*M -> TM``, ``beta: TM -> T*M`` and
``K: T*M -> T*M``.  The pairing has Gram matrix ``S = 1/2 [[0, I], [I, 0]]``.
"""
from __future__ import annotations

from .errors import DimensionMismatch
from .scalar import FieldMatrix, ScalarField


class EndoE:
    __slots__ = ("n", "H", "alpha", "beta", "K")

    def __init__(self, H: FieldMatrix, alpha: FieldMatrix, beta: FieldMatrix, K: FieldMatrix):
        n = H.rows
        for m in (H, alpha, beta, K):
            if m.shape != (n, n):
                raise DimensionMismatch("all four blocks must be n x n")
        self.n = n
        self.H, self.alpha, self.beta, self.K = H, alpha, beta, K

    @classmethod
    def identity(cls, n: int) -> "EndoE":
        i, z = FieldMatrix.identity(n, n), FieldMatrix.zeros(n, n, n)
        return cls(i, z, z, i)

    @classmethod
    def zero(cls, n: int) -> "EndoE":
        z = FieldMatrix.zeros(n, n, n)
        return cls(z, z, z, z)

    @classmethod
    def from_matrix(cls, m: FieldMatrix) -> "EndoE":
        n = m.rows // 2
        return cls(m.submatrix(0, n, 0, n), m.submatrix(0, n, n, 2 * n),
                   m.submatrix(n, 2 * n, 0, n), m.submatrix(n, 2 * n, n, 2 * n))

    @classmethod
    def b_transform(cls, b) -> "EndoE":
        """``e^b``: ``X + xi -> X + xi + i_X b`` for a 2-form ``b``."""
        n = b.nvars
        i, z = FieldMatrix.identity(n, n), FieldMatrix.zeros(n, n, n)
        return cls(i, z, b.matrix().transpose(), i)

    def matrix(self) -> FieldMatrix:
        return FieldMatrix.blocks(self.H, self.alpha, self.beta, self.K)

    def blocks(self) -> tuple[FieldMatrix, FieldMatrix, FieldMatrix, FieldMatrix]:
        return self.H, self.alpha, self.beta, self.K

    def __call__(self, u):
        from .courant import GenSection

        X, xi = u.vec.comps, u.form.vector()
        hx, ax = self.H.apply(X), self.alpha.apply(xi)
        bx, kx = self.beta.apply(X), self.K.apply(xi)
        return GenSection.from_components(
            [a + b for a, b in zip(hx, ax)], [a + b for a, b in zip(bx, kx)]
        )

    def __matmul__(self, other: "EndoE") -> "EndoE":
        H = self.H @ other.H + self.alpha @ other.beta
        A = self.H @ other.alpha + self.alpha @ other.K
        B = self.beta @ other.H + self.K @ other.beta
        K = self.beta @ other.alpha + self.K @ other.K
        return EndoE(H, A, B, K)

    def __add__(self, other: "EndoE") -> "EndoE":
        return EndoE(self.H + other.H, self.alpha + other.alpha, self.beta + other.beta, self.K + other.K)

    def __sub__(self, other: "EndoE") -> "EndoE":
        return EndoE(self.H - other.H, self.alpha - other.alpha, self.beta - other.beta, self.K - other.K)

    def __neg__(self) -> "EndoE":
        return EndoE(-self.H, -self.alpha, -self.beta, -self.K)

    def scale(self, c) -> "EndoE":
        return EndoE(self.H.scale(c), self.alpha.scale(c), self.beta.scale(c), self.K.scale(c))

    def adjoint(self) -> "EndoE":
        """Adjoint for the pairing: ``<J u, v> = <u, J* v>``."""
        return EndoE(self.K.T, self.alpha.T, self.beta.T, self.H.T)

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.blocks())

    def map(self, fn) -> "EndoE":
        return EndoE(*(m.map(fn) for m in self.blocks()))

    def __eq__(self, other):
        if not isinstance(other, EndoE):
            return NotImplemented
        return all(a == b for a, b in zip(self.blocks(), other.blocks()))

    __hash__ = None

    def nonzero_block(self) -> tuple[str, int, int, ScalarField] | None:
        """First nonzero entry as ``(block, row, col, value)``, or None."""
        for name, m in zip(("H", "alpha", "beta", "K"), self.blocks()):
            for i in range(m.rows):
                for j in range(m.cols):
                    if m[i, j]:
                        return name, i, j, m[i, j]
        return None

    def __repr__(self):
        return f"EndoE(H={self.H}, alpha={self.alpha}, beta={self.beta}, K={self.K})"
