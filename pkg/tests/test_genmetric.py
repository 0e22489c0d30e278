from itertools import product

from hypothesis import given, settings

from conftest import rng_for, seeds
from gengeom.calculus import KForm, MetricTensor, VectorField, ext_d
from gengeom.connections import AffineConnection, koszul_with_torsion, torsion3_array
from gengeom.courant import GenSection, section_frame
from gengeom.endo import EndoE
from gengeom.genmetric import (
    GeneralizedMetric,
    courant_integrability_report,
    db_identity_defect,
    db_identity_literal_defect,
    dorfman_symmetrization_defect,
    dorfman_symmetry_defect,
    gm_blocks,
    nabla_integrability_check,
    nabla_minus,
    nabla_plus,
    nabla_plus_bracket,
    parallel_G_check,
)
from gengeom.random_data import random_form, random_metric, random_section, random_vector
from gengeom.scalar import FieldMatrix

E2, E3 = MetricTensor.euclidean(2), MetricTensor.euclidean(3)
B_NON = KForm(3, 2, {(0, 1): "x3"})
WARPED = MetricTensor.from_rows(3, [["1+x2^2", 0, 0], [0, 1, 0], [0, 0, 1]])


def blocks(G):
    return tuple(G.blocks())


class TestBlocks:
    def test_euclidean(self):
        H, a, b, K = gm_blocks(GeneralizedMetric(E3)).blocks()
        eye, zero = FieldMatrix.identity(3, 3), FieldMatrix.zeros(3, 3, 3)
        assert (H, a, b, K) == (zero, eye, eye, zero)

    def test_constant_area_form(self):
        bm = FieldMatrix(2, [[0, 1], [-1, 0]])
        eye = FieldMatrix.identity(2, 2)
        G = gm_blocks(GeneralizedMetric(E2, KForm.dx(2, 0, 1)))
        assert G == EndoE(-bm, eye, eye - bm @ bm, bm)

    @given(seeds)
    def test_conjugation_oracle(self, seed):
        # G = e^-b G_g e^b, computed from the b = 0 blocks
        rng = rng_for(seed, "conj")
        g, b = random_metric(rng, 3), random_form(rng, 3, 2, 1)
        gm = GeneralizedMetric(g, b)
        conj = EndoE.b_transform(-b) @ gm.g_only().G @ EndoE.b_transform(b)
        assert gm.G == conj

    @given(seeds)
    def test_eigenbundles(self, seed):
        rng = rng_for(seed, "eig")
        gm = GeneralizedMetric(random_metric(rng, 3), random_form(rng, 3, 2))
        X = random_vector(rng, 3)
        assert gm.G(gm.plus(X)) == gm.plus(X)
        assert gm.G(gm.minus(X)) == -gm.minus(X)


class TestInducedConnections:
    def test_flat(self):
        assert nabla_plus(GeneralizedMetric(E3)) == koszul_with_torsion(E3)

    def test_torsion_of_nonclosed_b(self):
        nb = nabla_plus(GeneralizedMetric(E3, B_NON))
        assert torsion3_array(nb, E3)[0][1][2] == -1

    @settings(max_examples=10)
    @given(seeds)
    def test_bracket_and_closed_forms_agree(self, seed):
        rng = rng_for(seed, "two")
        g, b = random_metric(rng, 3), random_form(rng, 3, 2, 1)
        gm = GeneralizedMetric(g, b)
        nb = nabla_plus(gm)
        assert nb == nabla_plus_bracket(gm)
        assert nb == koszul_with_torsion(g, -ext_d(b))
        assert nabla_minus(gm) == koszul_with_torsion(g, ext_d(b))

    @settings(max_examples=10)
    @given(seeds)
    def test_exact_shift(self, seed):
        rng = rng_for(seed, "exact")
        gm = GeneralizedMetric(E3, B_NON)
        shifted = gm.with_b(B_NON + ext_d(random_form(rng, 3, 1)))
        assert nabla_plus(shifted) == nabla_plus(gm)


class TestCourantIntegrability:
    def test_flat_all_zero(self):
        rep = courant_integrability_report(GeneralizedMetric(E3))
        assert rep.ok("frame_nijenhuis", "eigenframe_nijenhuis", "involutivity_identity", "beta_criterion")
        # the Courant Nijenhuis form is not function-linear, even here
        assert not rep["probe_linearity"]

    def test_warped_beta_witness(self):
        rep = courant_integrability_report(GeneralizedMetric(WARPED))
        assert not rep["beta_criterion"]
        assert "beta(" in rep["beta_criterion"].witness
        assert rep["involutivity_identity"]

    @settings(max_examples=10)
    @given(seeds)
    def test_dorfman_symmetry(self, seed):
        rng = rng_for(seed, "dsym")
        G = GeneralizedMetric(WARPED, random_form(rng, 3, 2, 1)).G
        u, v = random_section(rng, 3, 1), random_section(rng, 3, 1)
        assert dorfman_symmetry_defect(G, u, v).is_zero()
        assert dorfman_symmetrization_defect(G, u, v, 4).is_zero()

    def test_symmetrization_factor(self):
        G = GeneralizedMetric(MetricTensor.euclidean(2)).G
        u = GenSection.from_components(["x2", 0], [0, 0])
        v = GenSection.from_components([0, 0], ["x1", 0])
        assert dorfman_symmetrization_defect(G, u, v, 4).is_zero()
        assert str(dorfman_symmetrization_defect(G, u, v, 2)) == "x2*dx1 + x1*dx2"


class TestNablaIntegrability:
    def test_b_zero(self):
        assert nabla_integrability_check(GeneralizedMetric(E3))["G_g_nijenhuis"]

    def test_constant_b(self):
        rep = nabla_integrability_check(GeneralizedMetric(E3, KForm(3, 2, {(0, 1): 2, (1, 2): -1})))
        assert rep["G_g_nijenhuis"] and rep["db_zero"]

    def test_nonclosed_b_witness(self):
        rep = nabla_integrability_check(GeneralizedMetric(E3, B_NON))
        f = rep["G_g_nijenhuis"]
        assert not f
        assert f.witness.startswith("N(d1, dx2) = -dx3")
        assert rep["closed_form_agrees"] and rep["matches_db_criterion"]


class TestParallelG:
    def test_constant_b(self):
        rep = parallel_G_check(GeneralizedMetric(E3, KForm(3, 2, {(0, 2): 5})))
        assert rep["nabla_b_zero"] and rep["nabla_G_zero"]

    def test_nonclosed_b(self):
        rep = parallel_G_check(GeneralizedMetric(E3, B_NON))
        assert not rep["nabla_b_zero"] and not rep["nabla_G_zero"]

    @settings(max_examples=10)
    @given(seeds)
    def test_equivalence(self, seed):
        rng = rng_for(seed, "pg")
        gm = GeneralizedMetric(random_metric(rng, 3), random_form(rng, 3, 2, 1))
        assert parallel_G_check(gm)["equivalence"]


@settings(max_examples=10)
@given(seeds)
def test_db_identity_any_connection(seed):
    rng = rng_for(seed, "dbid")
    g, b = random_metric(rng, 3), random_form(rng, 3, 2)
    nb = koszul_with_torsion(g, random_form(rng, 3, 3, 1))
    fr = [VectorField.coord(3, i) for i in range(3)]
    for X, Y, Z in product(fr, repeat=3):
        assert db_identity_defect(nb, b, X, Y, Z).is_zero()


def test_db_identity_sign_matters():
    b = KForm(3, 2, {(0, 1): 1, (1, 2): "x1"})
    # a totally skew torsion would hide the sign in three dimensions
    nb = AffineConnection(3, {(0, 0, 2): 1})
    X, Y, Z = VectorField(3, ["1", "x2", "0"]), VectorField(3, ["0", "1", "x1"]), VectorField(3, ["x3", "0", "1"])
    assert db_identity_defect(nb, b, X, Y, Z).is_zero()
    assert not db_identity_literal_defect(nb, b, X, Y, Z).is_zero()


def test_frame_is_ordered_vectors_then_forms():
    fr = section_frame(2)
    assert [str(s) for s in fr] == ["d1", "d2", "dx1", "dx2"]
