from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from conftest import SYMS, rng_for, seeds, sympy_equal, to_sympy
from gengeom.errors import (
    DivisionByZeroField,
    ExpressionSyntaxError,
    SingularMatrix,
    UnknownVariable,
)
from gengeom.random_data import random_poly
from gengeom.scalar import FieldMatrix, GaussRat, ScalarField, coeff, parse_expr

x1, x2, x3 = SYMS[:3]


def p(text, n=3):
    return parse_expr(text, n)


class TestArithmetic:
    def test_self_quotient_is_one(self):
        assert p("x1") / p("x1") == 1

    def test_rational_sum(self):
        assert p("1/2") + p("1/3") == p("5/6")
        assert (p("1/2") + p("1/3")).const_value() == Fraction(5, 6)

    def test_reciprocal_product(self):
        assert p("x1/x2") * p("x2/x1") == 1

    def test_cancellation_to_zero(self):
        assert (p("x1^2 - x1*x1")).is_zero()

    def test_common_factor(self):
        assert p("(x1^2-1)/(x1-1)") == p("x1+1")

    def test_distinct_variables(self):
        assert p("x1") != p("x2")

    def test_division_by_zero(self):
        with pytest.raises(DivisionByZeroField):
            p("x1") / p("x2 - x2")

    def test_gaussian_coefficients(self):
        i = p("i")
        assert i * i == -1
        assert (p("1+i") * p("1-i")) == 2
        assert coeff(1, 0) == 1 and isinstance(coeff(1, 2), GaussRat)


class TestDiff:
    def test_power_rule(self):
        assert p("x1^2*x2").diff(0) == p("2*x1*x2")

    def test_quotient_rule(self):
        assert p("1/x1").diff(0) == p("-1/x1^2")

    def test_constant_direction(self):
        assert p("x2").diff(0).is_zero()

    @given(seeds)
    def test_matches_sympy(self, seed):
        rng = rng_for(seed, "diff")
        f = random_poly(rng, 3, 2) / (random_poly(rng, 3, 1) + 5)
        for i in range(3):
            assert sympy_equal(f.diff(i), sympy.diff(to_sympy(f), SYMS[i]))


class TestParse:
    def test_grammar(self):
        f = p("3/2*x1^2 - x2")
        assert f == p("x1^2") * p("3/2") - p("x2")
        assert sympy_equal(f, sympy.Rational(3, 2) * x1**2 - x2)

    def test_fraction(self):
        f = p("x1/(x2+1)")
        assert f.den == p("x2+1").num

    def test_trailing_operator(self):
        with pytest.raises(ExpressionSyntaxError) as e:
            p("x1 +")
        assert e.value.offset is not None

    def test_unknown_variable(self):
        with pytest.raises(UnknownVariable):
            p("x9")

    @given(seeds)
    def test_print_parse_roundtrip(self, seed):
        rng = rng_for(seed, "roundtrip")
        f = random_poly(rng, 3, 2) / (random_poly(rng, 3, 2, 2) + 1)
        assert p(str(f)) == f


@given(seeds)
def test_field_axioms(seed):
    rng = rng_for(seed, "axioms")
    a, b, c = (random_poly(rng, 3, 2) for _ in range(3))
    assert (a + b) * c == a * c + b * c
    assert a * (b * c) == (a * b) * c
    if not b.is_zero():
        assert (a / b) * b == a


@given(seeds)
def test_evaluation_is_a_homomorphism(seed):
    rng = rng_for(seed, "eval")
    a, b = random_poly(rng, 3, 2), random_poly(rng, 3, 2)
    pt = [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(3)]
    assert (a * b).evaluate(pt) == a.evaluate(pt) * b.evaluate(pt)
    assert (a - b).evaluate(pt) == a.evaluate(pt) - b.evaluate(pt)


class TestMatrix:
    def test_identity(self):
        eye = FieldMatrix.identity(3, 3)
        assert eye.det() == 1
        assert eye.inv() == eye

    def test_diag_inverse(self):
        m = FieldMatrix.diag(2, ["x1", "1"])
        assert m.inv() == FieldMatrix.diag(2, [p("1/x1", 2), "1"])

    def test_rank_one_kernel(self):
        k = FieldMatrix(2, [[1, 1], [1, 1]]).kernel()
        assert len(k) == 1 and list(k[0]) == [1, -1]

    def test_singular_inverse(self):
        with pytest.raises(SingularMatrix):
            FieldMatrix(2, [["x1", "x2"], ["2*x1", "2*x2"]]).inv()

    @given(seeds)
    def test_det_matches_sympy(self, seed):
        rng = rng_for(seed, "det")
        rows = [[random_poly(rng, 3, 1, 2) for _ in range(3)] for _ in range(3)]
        m = FieldMatrix(3, rows)
        oracle = sympy.Matrix([[to_sympy(e) for e in r] for r in rows]).det()
        assert sympy_equal(m.det(), oracle)

    @given(seeds)
    def test_inverse_and_kernel(self, seed):
        rng = rng_for(seed, "inv")
        rows = [[random_poly(rng, 2, 1, 2) for _ in range(3)] for _ in range(3)]
        m = FieldMatrix(2, rows)
        if m.det().is_zero():
            return
        assert m @ m.inv() == FieldMatrix.identity(2, 3)
        # a rank-2 matrix: last row is a combination of the first two
        r = [rows[0], rows[1], [a + b * p("x1", 2) for a, b in zip(rows[0], rows[1])]]
        sing = FieldMatrix(2, r)
        for v in sing.kernel():
            assert all(e.is_zero() for e in sing.apply(v))
