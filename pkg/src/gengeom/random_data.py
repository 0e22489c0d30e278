"""Seeded samplers for polynomial test data (``random.Random`` based)."""
from __future__ import annotations

import random
from itertools import combinations

from .calculus import KForm, MetricTensor, VectorField
from .courant import GenSection
from .scalar import FieldMatrix, Poly, ScalarField


def _monomials(n: int, max_degree: int) -> list[tuple[int, ...]]:
    out = [()]
    for _ in range(n):
        out = [m + (e,) for m in out for e in range(max_degree + 1)]
    return [m for m in out if sum(m) <= max_degree]


def random_poly(rng: random.Random, n: int, max_degree: int = 2, terms: int = 3, coeff_range: int = 3) -> ScalarField:
    monos = _monomials(n, max_degree)
    picked = rng.sample(monos, min(terms, len(monos)))
    t = {}
    for m in picked:
        c = 0
        while c == 0:
            c = rng.randint(-coeff_range, coeff_range)
        t[m] = c
    return ScalarField(Poly(n, t))


def random_vector(rng: random.Random, n: int, max_degree: int = 2) -> VectorField:
    return VectorField(n, [random_poly(rng, n, max_degree, rng.randint(0, 2)) for _ in range(n)])


def random_form(rng: random.Random, n: int, k: int, max_degree: int = 2) -> KForm:
    return KForm(n, k, {idx: random_poly(rng, n, max_degree, rng.randint(0, 2)) for idx in combinations(range(n), k)})


def random_section(rng: random.Random, n: int, max_degree: int = 2) -> GenSection:
    return GenSection(random_vector(rng, n, max_degree), random_form(rng, n, 1, max_degree))


def random_metric(rng: random.Random, n: int, max_degree: int = 1) -> MetricTensor:
    """Identity plus a symmetric polynomial perturbation with nonzero determinant."""
    while True:
        rows = [[ScalarField.zero(n)] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                p = random_poly(rng, n, max_degree, rng.randint(0, 1), 1) if rng.random() < 0.5 else ScalarField.zero(n)
                if i == j:
                    p = p + 1
                rows[i][j] = rows[j][i] = p
        m = FieldMatrix(n, rows)
        if not m.det().is_zero():
            return MetricTensor(m)


def make_rng(seed: int, *salt) -> random.Random:
    """Independent stream for ``(seed, salt...)``; stable across runs."""
    return random.Random(repr((seed,) + salt))
