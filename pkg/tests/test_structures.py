from itertools import product

import pytest
from hypothesis import given, settings

from conftest import rng_for, seeds
from gengeom.calculus import KForm, MetricTensor, VectorField, ext_d
from gengeom.connections import koszul_with_torsion, torsion_array
from gengeom.courant import COURANT, GenSection, nijenhuis, pairing, section_frame
from gengeom.endo import EndoE
from gengeom.errors import (
    DegenerateB,
    DimensionOdd,
    FrameNotIsotropic,
    NotCompatible,
    NotHermitianInput,
    RankMismatch,
)
from gengeom.genmetric import GeneralizedMetric, nabla_plus
from gengeom.random_data import random_form, random_metric, random_vector
from gengeom.scalar import FieldMatrix, parse_expr
from gengeom.structures import (
    IsotropicFrame,
    WeakHermitian,
    build_Vi,
    classify_endo,
    eigen_ranks,
    fundamental_form,
    gualtieri_pair,
    hermitian_suite,
    induced_complex_structures,
    jg_integrability,
    kahler_report,
    lemma_identity,
    metric_from_weak,
    nearly_kahler_defect,
    para_connection,
    para_integrability,
    para_torsion_formula,
    product_system,
    product_system_literal,
    signature,
    torsion_conditions,
    weak_from_metric,
)

E2, E4 = MetricTensor.euclidean(2), MetricTensor.euclidean(4)


def M(n, rows):
    return FieldMatrix(n, rows)


def zero(n):
    return FieldMatrix.zeros(n, n, n)


def eye(n):
    return FieldMatrix.identity(n, n)


J0 = M(4, [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]])
J0B = M(4, [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]])
JQ = M(4, [[0, 0, -1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, -1, 0, 0]])
J2D = M(2, [[0, -1], [1, 0]])


def complex_block(J):
    n = J.rows
    return EndoE(J, zero(n), zero(n), -J.T)


class TestClassification:
    def test_minus_identity_alpha_is_weak(self):
        J = EndoE(zero(2), -eye(2), eye(2), zero(2))
        cls = classify_endo(J)
        assert cls.kind == "weak_gacs"
        # J is self-adjoint for the pairing, so it cannot be strong
        assert J.adjoint() == J

    def test_symplectic_block_is_strong(self):
        w = M(2, [[0, 1], [-1, 0]])
        assert classify_endo(EndoE(zero(2), -w.inv(), w, zero(2))).kind == "strong_gacs"

    def test_complex_block_is_strong(self):
        assert classify_endo(complex_block(J2D)).kind == "strong_gacs"

    @given(seeds)
    def test_generalized_metric_is_product(self, seed):
        rng = rng_for(seed, "prod")
        G = GeneralizedMetric(random_metric(rng, 3), random_form(rng, 3, 2, 1)).G
        cls = classify_endo(G)
        assert "product" in cls and cls.kind == "paracomplex"
        assert product_system(G).ok()
        assert not product_system_literal(G).ok()

    def test_identity_not_paracomplex(self):
        cls = classify_endo(EndoE.identity(2))
        assert cls.kind == "product" and "paracomplex" not in cls
        assert eigen_ranks(EndoE.identity(2)) == (4, 0)

    def test_not_gacs(self):
        assert classify_endo(EndoE.zero(2)).kind == "not_gacs"


class TestPara:
    @settings(max_examples=8)
    @given(seeds)
    def test_metric_para_connection_is_nabla_plus(self, seed):
        rng = rng_for(seed, "pc")
        gm = GeneralizedMetric(random_metric(rng, 3), random_form(rng, 3, 2, 1))
        assert para_connection(gm.G) == nabla_plus(gm)

    def test_constant_blocks_flat(self):
        P = GeneralizedMetric(MetricTensor.from_rows(2, [[2, 1], [1, 3]]), KForm.dx(2, 0, 1)).G
        assert para_connection(P) == koszul_with_torsion(E2)

    @settings(max_examples=8)
    @given(seeds)
    def test_torsion_formula(self, seed):
        rng = rng_for(seed, "ptf")
        P = GeneralizedMetric(random_metric(rng, 3), random_form(rng, 3, 2)).G
        T, F = torsion_array(para_connection(P)), para_torsion_formula(P)
        for k, i, j in product(range(3), repeat=3):
            assert T[k][i][j] == F[k][i][j]

    def test_constant_integrable(self):
        P = GeneralizedMetric(MetricTensor.from_rows(2, [[1, 0], [0, -1]]), KForm.dx(2, 0, 1)).G
        rep = para_integrability(P)
        assert rep.ok()

    def test_nonclosed_b(self):
        P = GeneralizedMetric(MetricTensor.euclidean(3), KForm(3, 2, {(0, 1): "x3"})).G
        rep = para_integrability(P)
        assert not rep["d_omega_zero"]
        assert not rep["nabla_nijenhuis"] and rep["nabla_nijenhuis"].witness

    def test_diagonal_nijenhuis(self):
        P = GeneralizedMetric(MetricTensor.euclidean(3), KForm(3, 2, {(0, 1): "x3"})).G
        for u in section_frame(3):
            assert nijenhuis(COURANT, P, u, u).is_zero()


NEUTRAL2 = MetricTensor.from_rows(2, [[1, 0], [0, -1]])
NEUTRAL4 = MetricTensor.from_rows(4, [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]])


class TestIsotropic:
    def test_signature(self):
        assert signature(NEUTRAL4) == (2, 2)
        assert signature(MetricTensor.from_rows(3, [["1+x2^2", 0, 0], [0, 1, 0], [0, 0, -1]])) == (2, 1)

    def test_neutral_plane(self):
        gm = GeneralizedMetric(NEUTRAL2)
        D = IsotropicFrame(NEUTRAL2, [VectorField(2, [1, 1])])
        secs = build_Vi(gm, D)
        assert len(secs) == 2
        assert secs[0] == GenSection.from_components([1, 1], [1, -1])
        assert secs[1] == GenSection.from_components([0, 0], [1, -1])
        assert all(pairing(a, c).is_zero() for a in secs for c in secs)

    def test_not_isotropic(self):
        with pytest.raises(FrameNotIsotropic):
            IsotropicFrame(NEUTRAL2, [VectorField(2, [1, 0])])

    def test_rank_too_large(self):
        with pytest.raises(RankMismatch):
            IsotropicFrame(NEUTRAL4, [VectorField(4, [1, 0, 1, 0]), VectorField(4, [0, 1, 0, 1]), VectorField(4, [1, 1, 1, 1])])

    def test_constant_frame_integrable(self):
        D = IsotropicFrame(NEUTRAL4, [VectorField(4, [1, 0, 1, 0]), VectorField(4, [0, 1, 0, 1])])
        rep = jg_integrability(GeneralizedMetric(NEUTRAL4, KForm(4, 2, {(0, 1): 1, (2, 3): 3})), D)
        assert rep.ok()

    def test_rotating_frame_not_involutive(self):
        t = "x2"
        X1 = VectorField(4, [f"1+{t}^2", 0, f"1-{t}^2", f"2*{t}"])
        X2 = VectorField(4, [0, f"1+{t}^2", f"-2*{t}", f"1-{t}^2"])
        rep = jg_integrability(GeneralizedMetric(NEUTRAL4), IsotropicFrame(NEUTRAL4, [X1, X2]))
        assert not rep["D_involutive"] and "not in D" in rep["D_involutive"].witness
        assert rep["annihilator_brackets"]

    def test_neutral_plane_brackets(self):
        rep = jg_integrability(GeneralizedMetric(NEUTRAL2), IsotropicFrame(NEUTRAL2, [VectorField(2, [1, 1])]))
        assert rep.ok()


B_AREA = KForm.dx(2, 0, 1)


class TestWeak:
    def test_area_form(self):
        wh = weak_from_metric(GeneralizedMetric(E2, B_AREA))
        assert wh.A == J2D
        assert wh.Q == eye(2)
        assert fundamental_form(wh) == B_AREA

    def test_odd_dimension(self):
        with pytest.raises(DimensionOdd):
            weak_from_metric(GeneralizedMetric(MetricTensor.euclidean(3), KForm.dx(3, 0, 1)))

    def test_degenerate(self):
        with pytest.raises(DegenerateB):
            weak_from_metric(GeneralizedMetric(E4, KForm.dx(4, 0, 1)))

    def test_validation(self):
        with pytest.raises(NotCompatible):
            WeakHermitian(E2, eye(2), -eye(2))

    @settings(max_examples=8)
    @given(seeds)
    def test_skew_and_self_adjoint(self, seed):
        rng = rng_for(seed, "weak")
        g = random_metric(rng, 4)
        b = KForm(4, 2, {(0, 1): 1, (2, 3): 1}) + random_form(rng, 4, 2, 1)
        gm = GeneralizedMetric(g, b)
        if not gm.bmat.det():
            return
        wh = weak_from_metric(gm)
        X, Y = random_vector(rng, 4, 1), random_vector(rng, 4, 1)
        AX = VectorField(4, wh.A.apply(X.comps))
        AY = VectorField(4, wh.A.apply(Y.comps))
        QX = VectorField(4, wh.Q.apply(X.comps))
        QY = VectorField(4, wh.Q.apply(Y.comps))
        assert (g(AX, Y) + g(X, AY)).is_zero()
        assert g(QX, Y) == g(X, QY)
        assert g(AX, Y) == b(X, Y)
        assert metric_from_weak(wh).b == b

    def test_closed_b_torsion_conditions(self):
        gm = GeneralizedMetric(E4, KForm(4, 2, {(0, 1): 2, (2, 3): 1}))
        assert torsion_conditions(weak_from_metric(gm), nabla_plus(gm)).ok()

    def test_identity_Q(self):
        gm = GeneralizedMetric(E2, B_AREA)
        rep = torsion_conditions(weak_from_metric(gm), nabla_plus(gm))
        assert rep["q_torsion_sym"] and rep["q_torsion_commute"]

    def test_flat_constant_nearly_kahler(self):
        wh = weak_from_metric(GeneralizedMetric(E4, KForm(4, 2, {(0, 1): 1, (2, 3): 1})))
        assert all(v.is_zero() for _, v in nearly_kahler_defect(wh, koszul_with_torsion(E4)))

    def test_conformal_scenario(self):
        h = "1+x1^2"
        g = MetricTensor.from_rows(4, [[h, 0, 0, 0], [0, h, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
        gm = GeneralizedMetric(g, KForm(4, 2, {(0, 1): "2+2*x1^2", (2, 3): 1}))
        wh = weak_from_metric(gm)
        rep = torsion_conditions(wh, nabla_plus(gm))
        assert rep["nabla_b_zero"] and rep["lemma_identity"] and rep["a_torsion"]
        assert all(v.is_zero() for _, v in nearly_kahler_defect(wh, koszul_with_torsion(g)))

    def test_varying_A_defect(self):
        gm = GeneralizedMetric(E4, KForm(4, 2, {(0, 1): "1+x3", (2, 3): 1}))
        wh = weak_from_metric(gm)
        assert any(not v.is_zero() for _, v in nearly_kahler_defect(wh, koszul_with_torsion(E4)))

    def test_lemma_readings_share_zero_set(self):
        gm = GeneralizedMetric(E4, KForm(4, 2, {(0, 1): "1+x3", (2, 3): 1}))
        wh = weak_from_metric(gm)
        fr = [VectorField.coord(4, i) for i in range(4)]
        for X, Y, Z in product(fr, repeat=3):
            a = lemma_identity(wh, X, Y, Z, "grouped")
            c = lemma_identity(wh, X, Y, Z, "interior")
            assert a.is_zero() == c.is_zero()


def kahler_J(b, Jp=J0, Jm=J0B):
    return gualtieri_pair(E4, b, Jp, Jm)


class TestHermitian:
    def test_plane_complex_block(self):
        gm = GeneralizedMetric(E2)
        Jp, Jm = induced_complex_structures(gm, complex_block(J2D))
        assert Jp == J2D and Jm == J2D

    def test_flat_kahler(self):
        J1, _ = kahler_J(KForm.zero(4, 2))
        rep = hermitian_suite(GeneralizedMetric(E4), J1)
        assert rep.ok()
        assert rep["parallel_J"] and rep["parallel_J_plus"] and rep["parallel_J_minus"]

    def test_incompatible(self):
        J1, _ = kahler_J(KForm.zero(4, 2), J0, J0)
        with pytest.raises(NotCompatible) as e:
            hermitian_suite(GeneralizedMetric(E4, KForm.dx(4, 0, 2)), J1)
        assert e.value.witness

    def test_non_hermitian_input(self):
        with pytest.raises(NotHermitianInput):
            gualtieri_pair(E4, KForm.zero(4, 2), J0, M(4, [[1, 0, 0, 0]] + [[0] * 4] * 3))


class TestGualtieriPair:
    def test_flat_blocks(self):
        J1, J2 = kahler_J(KForm.zero(4, 2), J0, J0)
        assert J1 == complex_block(J0)
        w = J0  # g J0 with g = I
        assert J2 == EndoE(zero(4), -w.inv(), w, zero(4))
        assert -(J1 @ J2) == GeneralizedMetric(E4).G

    def test_sign_flip_swaps_types(self):
        A1, A2 = kahler_J(KForm.zero(4, 2), J0, J0)
        B1, B2 = kahler_J(KForm.zero(4, 2), J0, -J0)
        assert B1 == A2 and B2 == A1

    @pytest.mark.parametrize("Jm", [J0, -J0, J0B])
    def test_constant_b(self, Jm):
        b = KForm(4, 2, {(0, 1): 1, (2, 3): -2, (0, 2): "1/2"})
        J1, J2 = kahler_J(b, J0, Jm)
        gm = GeneralizedMetric(E4, b)
        assert J1 @ J2 == J2 @ J1
        assert -(J1 @ J2) == gm.G
        assert classify_endo(J1).kind == classify_endo(J2).kind == "strong_gacs"
        assert induced_complex_structures(gm, J1) == (J0, Jm)
        assert induced_complex_structures(gm, J2) == (J0, -Jm)


class TestKahlerReport:
    def test_flat(self):
        J1, _ = kahler_J(KForm.zero(4, 2))
        assert kahler_report(GeneralizedMetric(E4), J1).ok()

    def test_nonclosed_b(self):
        b = KForm(4, 2, {(0, 2): "x4"})
        J1, _ = kahler_J(b, J0, J0)
        rep = kahler_report(GeneralizedMetric(E4, b), J1)
        assert not rep["db_zero"]
        assert not rep["nabla_N_J"] and rep["nabla_N_J"].witness

    def test_rotating_J(self):
        t = parse_expr("x1", 4)
        one = parse_expr("1", 4)
        Jt = FieldMatrix(4, [[((one - t * t) * J0[i, j] + 2 * t * JQ[i, j]) / (one + t * t) for j in range(4)] for i in range(4)])
        J1, _ = gualtieri_pair(E4, KForm.zero(4, 2), Jt, J0)
        rep = kahler_report(GeneralizedMetric(E4), J1)
        assert not rep["parallel_J_plus"]
        assert rep["parallel_J_minus"]
        assert "courant_N_J" in rep and "nabla_N_G" in rep
