from itertools import product

from hypothesis import given

from conftest import rng_for, seeds
from gengeom.calculus import KForm, MetricTensor, VectorField, ext_d, lie_bracket, one_form_apply
from gengeom.connections import (
    AffineConnection,
    GeneralizedConnection,
    cov_deriv,
    curvature,
    gen_torsion_courant,
    gen_torsion_dorfman,
    gen_torsion_nabla,
    koszul_with_torsion,
    torsion,
    torsion3,
    torsion3_array,
    torsion_equality_defect,
)
from gengeom.courant import GenSection, section_frame
from gengeom.genmetric import GeneralizedMetric, nabla_plus, nabla_plus_bracket
from gengeom.random_data import random_form, random_metric, random_poly, random_section, random_vector
from gengeom.scalar import parse_expr

E3 = MetricTensor.euclidean(3)
WARPED = MetricTensor.from_rows(3, [["1+x2^2", 0, 0], [0, 1, 0], [0, 0, 1]])
TORSIONFUL = AffineConnection(3, {(2, 0, 1): 1})


def d(i, n=3):
    return VectorField.coord(n, i)


def metric_defect(nb, g):
    n = g.nvars
    return [cov_deriv(nb, d(i, n), g) for i in range(n)]


class TestCovariantDerivative:
    def test_flat(self):
        X = VectorField(3, ["0", "x1", "0"])
        assert cov_deriv(AffineConnection.flat(3), d(0), X) == d(1)

    @given(seeds)
    def test_duality(self, seed):
        rng = rng_for(seed, "dual")
        g = random_metric(rng, 3)
        nb = koszul_with_torsion(g)
        X, Y, eta = random_vector(rng, 3, 1), random_vector(rng, 3, 1), random_form(rng, 3, 1, 1)
        lhs = one_form_apply(cov_deriv(nb, X, eta), Y) + one_form_apply(eta, cov_deriv(nb, X, Y))
        assert lhs == X(one_form_apply(eta, Y))


class TestTorsion:
    def test_symmetric_gamma(self):
        nb = AffineConnection(3, {(0, 0, 1): "x3", (0, 1, 0): "x3"})
        assert all(torsion(nb, d(i), d(j)).is_zero() for i, j in product(range(3), repeat=2))

    def test_nabla_plus_of_nonclosed_b(self):
        gm = GeneralizedMetric(E3, KForm(3, 2, {(0, 1): "x3"}))
        assert torsion3(nabla_plus(gm), E3, d(0), d(1), d(2)) == -1
        assert torsion3(nabla_plus_bracket(gm), E3, d(0), d(1), d(2)) == -1

    @given(seeds)
    def test_function_linear(self, seed):
        rng = rng_for(seed, "tlin")
        X, Y, f = random_vector(rng, 3), random_vector(rng, 3), random_poly(rng, 3)
        assert torsion(TORSIONFUL, X.scale(f), Y) == torsion(TORSIONFUL, X, Y).scale(f)


class TestKoszul:
    def test_flat_levi_civita(self):
        assert koszul_with_torsion(E3) == AffineConnection.flat(3)

    def test_prescribed_torsion_matches_bracket_construction(self):
        b = KForm(3, 2, {(0, 1): "x3"})
        gm = GeneralizedMetric(E3, b)
        assert koszul_with_torsion(E3, -ext_d(b)) == nabla_plus_bracket(gm)

    def test_warped_metric_compatible(self):
        assert all(m.is_zero() for m in metric_defect(koszul_with_torsion(WARPED), WARPED))

    @given(seeds)
    def test_random_torsion(self, seed):
        rng = rng_for(seed, "kt")
        g = random_metric(rng, 3)
        T = random_form(rng, 3, 3, 1)
        nb = koszul_with_torsion(g, T)
        assert all(m.is_zero() for m in metric_defect(nb, g))
        arr = torsion3_array(nb, g)
        for i, j, k in product(range(3), repeat=3):
            assert arr[i][j][k] == T[(i, j, k)]


def test_curvature_of_flat_and_curved():
    assert not curvature(AffineConnection.flat(3))
    assert curvature(AffineConnection(3, {(0, 0, 0): "x2"}))


class TestGeneralizedTorsion:
    def test_torsion_free_vanishes(self):
        nt = GeneralizedConnection(koszul_with_torsion(WARPED))
        fr = section_frame(3)
        for u, v, w in product(fr, repeat=3):
            assert gen_torsion_courant(nt, u, v, w).is_zero()

    def test_torsionful_witness(self):
        nt = GeneralizedConnection(TORSIONFUL)
        fr = section_frame(3)
        assert any(not gen_torsion_courant(nt, u, v, w).is_zero() for u, v, w in product(fr, repeat=3))

    @given(seeds)
    def test_two_forms_agree(self, seed):
        rng = rng_for(seed, "cd")
        nt = GeneralizedConnection(TORSIONFUL)
        u, v, w = (random_section(rng, 3, 1) for _ in range(3))
        assert gen_torsion_courant(nt, v, w, u) == gen_torsion_dorfman(nt, v, w, u)

    def test_nabla_torsion(self):
        nb = koszul_with_torsion(E3)
        nt = GeneralizedConnection(nb)
        rng = rng_for(0, "tn")
        u, v = random_section(rng, 3), random_section(rng, 3)
        assert gen_torsion_nabla(nt, nb, u, v).is_zero()
        nt = GeneralizedConnection(TORSIONFUL)
        val = gen_torsion_nabla(nt, TORSIONFUL, GenSection.coord_vec(3, 0), GenSection.coord_vec(3, 1))
        assert val == GenSection(torsion(TORSIONFUL, d(0), d(1)))
        forms = gen_torsion_nabla(nt, TORSIONFUL, GenSection.coord_form(3, 0), GenSection.coord_form(3, 1))
        assert forms.is_zero()

    def test_equality_criterion(self):
        fr = section_frame(3)
        free = koszul_with_torsion(WARPED)
        nt = GeneralizedConnection(free)
        assert all(torsion_equality_defect(nt, free, u, v, w).is_zero() for u, v, w in product(fr, repeat=3))
        nt = GeneralizedConnection(TORSIONFUL)
        assert any(not torsion_equality_defect(nt, TORSIONFUL, u, v, w).is_zero() for u, v, w in product(fr, repeat=3))
        z = GenSection.zero(3)
        assert torsion_equality_defect(nt, TORSIONFUL, z, z, z).is_zero()


def test_nabla_of_section_with_function_coefficients():
    nt = GeneralizedConnection(koszul_with_torsion(E3))
    u = GenSection.coord_vec(3, 0)
    v = GenSection(VectorField(3, ["x1", "0", "0"]), KForm(3, 1, {(2,): "x1^2"}))
    out = nt(u, v)
    assert out == GenSection(d(0), KForm(3, 1, {(2,): parse_expr("2*x1", 3)}))
