import pytest
from hypothesis import given

from conftest import rng_for, seeds
from gengeom.calculus import (
    KForm,
    MetricTensor,
    VectorField,
    ext_d,
    flat,
    interior,
    lie_bracket,
    lie_derivative,
    one_form_apply,
    sharp,
    wedge,
)
from gengeom.errors import DegreeError
from gengeom.random_data import random_form, random_metric, random_poly, random_vector
from gengeom.scalar import parse_expr


def d(i, n=3):
    return VectorField.coord(n, i)


def vf(*comps):
    return VectorField(len(comps), list(comps))


def dx(*idx, n=3):
    return KForm.dx(n, *idx)


class TestLieBracket:
    def test_coordinate_fields_commute(self):
        assert lie_bracket(d(0), d(1)).is_zero()

    def test_product_rule(self):
        assert lie_bracket(d(0), vf("0", "x1", "0")) == d(1)

    def test_hand_expansion(self):
        X = vf("0", "x1", "0")
        Y = vf("x2", "0", "0")
        assert lie_bracket(X, Y) == vf("x1", "-x2", "0")

    @given(seeds)
    def test_derivation_oracle(self, seed):
        # [X,Y] f = X(Y f) - Y(X f) on random f
        rng = rng_for(seed, "lie")
        X, Y = random_vector(rng, 3), random_vector(rng, 3)
        f = random_poly(rng, 3, 3, 4)
        assert lie_bracket(X, Y)(f) == X(Y(f)) - Y(X(f))


class TestExteriorDerivative:
    def test_coordinate_function(self):
        assert ext_d(KForm.function(parse_expr("x1", 3))) == dx(0)

    def test_scaled_area_form(self):
        w = KForm(3, 2, {(0, 1): "x3"})
        assert ext_d(w) == dx(0, 1, 2)
        assert ext_d(w) == KForm(3, 3, {(2, 0, 1): 1})

    def test_constant_form_closed(self):
        assert ext_d(dx(0, 1)).is_zero()

    def test_top_degree(self):
        assert ext_d(KForm(2, 2, {(0, 1): "x1"})).is_zero()

    @given(seeds)
    def test_d_squared(self, seed):
        rng = rng_for(seed, "dd")
        for k in (0, 1):
            assert ext_d(ext_d(random_form(rng, 3, k))).is_zero()

    @given(seeds)
    def test_invariant_formula_one_form(self, seed):
        # dw(X,Y) = X w(Y) - Y w(X) - w([X,Y])
        rng = rng_for(seed, "inv1")
        w = random_form(rng, 3, 1)
        X, Y = random_vector(rng, 3, 1), random_vector(rng, 3, 1)
        rhs = X(one_form_apply(w, Y)) - Y(one_form_apply(w, X)) - one_form_apply(w, lie_bracket(X, Y))
        assert ext_d(w)(X, Y) == rhs

    @given(seeds)
    def test_invariant_formula_two_form(self, seed):
        rng = rng_for(seed, "inv2")
        w = random_form(rng, 3, 2)
        X, Y, Z = (random_vector(rng, 3, 1) for _ in range(3))
        rhs = (
            X(w(Y, Z)) - Y(w(X, Z)) + Z(w(X, Y))
            - w(lie_bracket(X, Y), Z) + w(lie_bracket(X, Z), Y) - w(lie_bracket(Y, Z), X)
        )
        assert ext_d(w)(X, Y, Z) == rhs

    @given(seeds)
    def test_leibniz(self, seed):
        rng = rng_for(seed, "leib")
        a, b = random_form(rng, 3, 1), random_form(rng, 3, 1)
        assert ext_d(wedge(a, b)) == wedge(ext_d(a), b) - wedge(a, ext_d(b))


class TestInterior:
    def test_first_slot(self):
        assert interior(d(0), dx(0, 1)) == dx(1)

    def test_missing_direction(self):
        assert interior(d(2), dx(0, 1)).is_zero()

    def test_zero_form(self):
        with pytest.raises(DegreeError):
            interior(d(0), KForm.function(parse_expr("x1", 3)))

    @given(seeds)
    def test_twice_vanishes(self, seed):
        rng = rng_for(seed, "ii")
        X, w = random_vector(rng, 3), random_form(rng, 3, 2)
        assert interior(X, interior(X, w)).is_zero()
        assert interior(X, interior(X, random_form(rng, 3, 3))).is_zero()


class TestLieDerivative:
    def test_coefficient_derivative(self):
        assert lie_derivative(d(0), KForm(3, 1, {(1,): "x1"})) == dx(1)

    @given(seeds)
    def test_commutes_with_d(self, seed):
        rng = rng_for(seed, "Ld")
        X, a = random_vector(rng, 3), random_form(rng, 3, 1)
        assert lie_derivative(X, ext_d(a)) == ext_d(lie_derivative(X, a))

    @given(seeds)
    def test_cartan_formula(self, seed):
        rng = rng_for(seed, "cartan")
        X, w = random_vector(rng, 3), random_form(rng, 3, 2)
        assert lie_derivative(X, w) == interior(X, ext_d(w)) + ext_d(interior(X, w))

    @given(seeds)
    def test_bracket_commutator(self, seed):
        rng = rng_for(seed, "LiXY")
        X, Y, w = random_vector(rng, 3), random_vector(rng, 3), random_form(rng, 3, 2)
        lhs = lie_derivative(X, interior(Y, w)) - interior(Y, lie_derivative(X, w))
        assert lhs == interior(lie_bracket(X, Y), w)


class TestMetric:
    def test_flat_identity(self):
        assert flat(MetricTensor.euclidean(3), d(0)) == dx(0)

    def test_sharp_diag(self):
        g = MetricTensor.from_rows(2, [[2, 0], [0, 1]])
        assert sharp(g, KForm.dx(2, 0)) == VectorField(2, ["1/2", "0"])

    def test_not_symmetric(self):
        with pytest.raises(ValueError):
            MetricTensor.from_rows(2, [[1, "x1"], [0, 1]])

    @given(seeds)
    def test_sharp_flat_inverse(self, seed):
        rng = rng_for(seed, "sharp")
        g, X = random_metric(rng, 3), random_vector(rng, 3)
        assert sharp(g, flat(g, X)) == X


def test_forms_print_in_expression_grammar():
    w = KForm(3, 1, {(0,): 1, (1,): -1})
    assert str(w) == "dx1 - dx2"
