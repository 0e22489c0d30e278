"""The check registry: each check turns a scenario into one :class:`CheckResult`.

Statuses: ``pass`` (every hypothesis and conclusion holds), ``fail`` (an
identity or an implication is violated; a witness is always attached),
``hypothesis_not_met`` (the statement does not apply; the failing hypothesis
is named) and ``skipped`` (the scenario lacks the required input).
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import product
from typing import Callable

from ..calculus import KForm, VectorField, ext_d, interior
from ..connections import (
    AffineConnection,
    GeneralizedConnection,
    cov_deriv,
    curvature,
    form_array3,
    gen_torsion_courant,
    gen_torsion_dorfman,
    gen_torsion_nabla,
    koszul_value,
    koszul_with_torsion,
    torsion,
    torsion3_array,
    torsion_array,
    torsion_equality_defect,
)
from ..courant import (
    COURANT,
    ConnBracket,
    DorfmanTwisted,
    GenSection,
    b_transform,
    bracket,
    courant,
    dorfman_jacobi_defect,
    jacobiator,
    jacobiator_defect,
    pairing,
    section_frame,
    section_label,
)
from ..endo import EndoE
from ..errors import GenGeomError, NotCompatible
from ..genmetric import (
    GeneralizedMetric,
    courant_integrability_report,
    db_identity_defect,
    db_identity_literal_defect,
    dorfman_symmetrization_defect,
    dorfman_symmetry_defect,
    eigenframe_nijenhuis,
    frame_pairs,
    gm_blocks,
    nabla_b_components,
    nabla_integrability_check,
    nabla_minus,
    nabla_minus_bracket,
    nabla_plus,
    nabla_plus_bracket,
    nijenhuis_finding,
    parallel_G_check,
    parallel_b_torsion_literal,
    cyclic_nabla_b,
)
from ..random_data import make_rng, random_form, random_poly, random_section
from ..report import Finding, Report, scan
from ..scalar import ScalarField
from ..structures import (
    IsotropicFrame,
    build_Vi,
    classify_endo,
    eigen_ranks,
    fundamental_form,
    gualtieri_pair,
    hermitian_suite,
    induced_complex_structures,
    jg_integrability,
    kahler_report,
    metric_from_weak,
    nabla_A_finding,
    nearly_kahler_defect,
    para_connection,
    para_integrability,
    para_torsion_formula,
    product_system,
    product_system_literal,
    torsion_conditions,
    weak_from_metric,
)
from .scenario import Scenario

DEFAULT_SAMPLES = 25
DEFAULT_MAX_DEGREE = 2


@dataclass
class CheckResult:
    id: str
    status: str
    witness: str | None = None
    details: list[str] = field(default_factory=list)
    elapsed: float = 0.0

    def as_dict(self) -> dict:
        return {"id": self.id, "status": self.status, "witness": self.witness, "details": list(self.details)}


class Skip(Exception):
    """Raised inside a check when the scenario lacks its input."""


@dataclass
class Context:
    scenario: Scenario
    seed: int = 0
    samples: int = DEFAULT_SAMPLES
    max_degree: int = DEFAULT_MAX_DEGREE
    _cache: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.scenario.n

    def cached(self, key: str, fn: Callable):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    @property
    def gm(self) -> GeneralizedMetric:
        return self.cached("gm", lambda: GeneralizedMetric(self.scenario.g, self.scenario.b))

    @property
    def nb(self) -> AffineConnection:
        return self.cached("nb", lambda: nabla_plus(self.gm))

    @property
    def lc(self) -> AffineConnection:
        return self.cached("lc", lambda: koszul_with_torsion(self.scenario.g))

    def rng(self, check_id: str):
        return make_rng(self.seed, self.scenario.name, check_id)

    def sections(self, check_id: str, count: int, k: int = 1):
        rng = self.rng(check_id)
        return [tuple(random_section(rng, self.n, self.max_degree) for _ in range(k)) for _ in range(count)]

    def base_connection(self) -> tuple[AffineConnection, str]:
        if self.scenario.connection is not None:
            return self.scenario.connection, "scenario connection"
        return self.nb, "nabla+"


def _status_from(hyps: dict[str, Finding], concls: dict[str, Finding], details: list[str]) -> tuple[str, str | None]:
    """Implication semantics: all hypotheses true forces every conclusion."""
    for name, f in hyps.items():
        details.append(f"hypothesis {name}: {'holds' if f else 'fails'}" + (f" [{f.witness}]" if f.witness else ""))
    for name, f in concls.items():
        details.append(f"conclusion {name}: {'holds' if f else 'fails'}" + (f" [{f.witness}]" if f.witness else ""))
    bad_hyp = next((n for n, f in hyps.items() if not f), None)
    bad_con = next((n for n, f in concls.items() if not f), None)
    if bad_hyp is None:
        if bad_con is None:
            return "pass", None
        return "fail", f"{bad_con}: {concls[bad_con].witness}"
    return "hypothesis_not_met", f"{bad_hyp}: {hyps[bad_hyp].witness}"


def _identities(found: dict[str, Finding], details: list[str]) -> tuple[str, str | None]:
    """Unconditional identities: pass iff all hold."""
    for name, f in found.items():
        details.append(f"{name}: {'holds' if f else 'fails'}" + (f" [{f.witness}]" if f.witness else ""))
    bad = next((n for n, f in found.items() if not f), None)
    return ("pass", None) if bad is None else ("fail", f"{bad}: {found[bad].witness}")


def _sample_scan(items, label):
    return scan(items, label)


def _lbl(k) -> str:
    return f"sample {k + 1}"


def _db_zero(ctx: Context) -> Finding:
    return scan([("db", ext_d(ctx.scenario.b))], lambda k, v: f"db = {v}")


def _nabla_b(ctx: Context) -> Finding:
    return ctx.cached("nabla_b", lambda: scan(
        nabla_b_components(ctx.nb, ctx.scenario.b),
        lambda k, v: f"(nabla_d{k[0] + 1} b)(d{k[1] + 1},d{k[2] + 1}) = {v}",
    ))


def _coord_triples(n: int):
    fr = [VectorField.coord(n, i) for i in range(n)]
    for i, j, k in product(range(n), repeat=3):
        yield (i, j, k), fr[i], fr[j], fr[k]


def _lab3(k) -> str:
    return f"(d{k[0] + 1},d{k[1] + 1},d{k[2] + 1})"


def _array_diff(a, b, name: str) -> Finding:
    n = len(a)
    for k, i, j in product(range(n), repeat=3):
        d = a[k][i][j] - b[k][i][j]
        if d:
            return Finding(False, f"{name}[{k + 1}][{i + 1}][{j + 1}] differs by {d}")
    return Finding(True)


def _conn_equal(a: AffineConnection, b: AffineConnection, name: str) -> Finding:
    diff = a.difference(b)
    if not diff:
        return Finding(True)
    (k, i, j), v = diff[0]
    return Finding(False, f"{name}: Gamma^{k + 1}_{i + 1}{j + 1} differs by {v}")


def _metric_compatible(nb: AffineConnection, g, name: str = "nabla g") -> Finding:
    n = nb.nvars
    for i in range(n):
        m = cov_deriv(nb, VectorField.coord(n, i), g)
        for a, c in product(range(n), repeat=2):
            if m[a, c]:
                return Finding(False, f"({name})_d{i + 1}[{a + 1},{c + 1}] = {m[a, c]}")
    return Finding(True)


# -- checks -------------------------------------------------------------------------


def check_dorfman_jacobi(ctx: Context, details: list[str]):
    samples = ctx.sections("dorfman_jacobi", ctx.samples, 3)
    details.append(f"{len(samples)} random triples, degree <= {ctx.max_degree}")
    f = scan(((k, dorfman_jacobi_defect(*t)) for k, t in enumerate(samples)), lambda k, v: f"{_lbl(k)}: defect {v}")
    return _identities({"dorfman_jacobi": f}, details)


def check_courant_jacobiator(ctx: Context, details: list[str]):
    samples = ctx.sections("courant_jacobiator", ctx.samples, 3)
    details.append(f"{len(samples)} random triples, degree <= {ctx.max_degree}")
    f = scan(((k, jacobiator_defect(*t)) for k, t in enumerate(samples)), lambda k, v: f"{_lbl(k)}: defect {v}")
    return _identities({"jacobiator_minus_exact_term": f}, details)


def check_bfield_preserves_courant(ctx: Context, details: list[str]):
    b = ctx.scenario.b
    nb_ = -b
    db = ext_d(b)
    samples = ctx.sections("bfield_preserves_courant", max(1, ctx.samples // 5), 2)
    samples += [(u, v) for _, u, v in frame_pairs(ctx.n)]

    def transported(u, v):
        return b_transform(b, courant(b_transform(nb_, u), b_transform(nb_, v)))

    def corrected(k_uv):
        u, v = k_uv
        # e^b [e^-b u, e^-b v]_C = [u, v]_C + i_X i_Y db
        extra = GenSection.from_form(interior(u.vec, interior(v.vec, db)))
        return transported(u, v) - courant(u, v) - extra

    ident = scan(((k, corrected(t)) for k, t in enumerate(samples)), lambda k, v: f"pair {k + 1}: {v}")
    preserved = scan(((k, transported(*t) - courant(*t)) for k, t in enumerate(samples)),
                     lambda k, v: f"e^b[e^-b u, e^-b v]_C - [u,v]_C at pair {k + 1} = {v}")
    status, wit = _identities({"transport_with_db_term": ident}, details)
    if status == "fail":
        return status, wit
    return _status_from({"db_zero": _db_zero(ctx)}, {"bracket_preserved": preserved}, details)


def check_twisted_pairing(ctx: Context, details: list[str]):
    H = ctx.scenario.H
    if H is None:
        if ctx.n < 3:
            raise Skip("no three_form and dimension < 3")
        rng = ctx.rng("twisted_pairing:H")
        H = random_form(rng, ctx.n, 3, ctx.max_degree)
        details.append(f"random H = {H}")
    kind = DorfmanTwisted(H)
    samples = ctx.sections("twisted_pairing", ctx.samples, 3)
    d0 = lambda f: GenSection.from_form(ext_d(KForm.function(f)))

    def axiom(k_t):
        u, v, w = k_t
        return u.vec(pairing(v, w)) - pairing(bracket(kind, u, v), w) - pairing(v, bracket(kind, u, w))

    def variant(k_t):
        u, v, w = k_t
        return u.vec(pairing(v, w)) - pairing(bracket(kind, u, v) + d0(pairing(u, v)), w) - pairing(v, bracket(kind, u, w))

    f = scan(((k, axiom(t)) for k, t in enumerate(samples)), lambda k, v: f"{_lbl(k)}: {v}")
    g = scan(((k, variant(t)) for k, t in enumerate(samples)), lambda k, v: f"{_lbl(k)}: {v}")
    details.append("variant with an extra d<u,v> term: " + ("holds" if g else f"fails [{g.witness}]"))
    return _identities({"pairing_compatibility": f}, details)


def check_conn_bracket_jacobi_flat(ctx: Context, details: list[str]):
    nb, label = ctx.base_connection()
    details.append(f"connection: {label}")
    R = curvature(nb)
    kind = ConnBracket(nb)
    samples = ctx.sections("conn_bracket_jacobi_flat", max(1, ctx.samples // 5), 3)
    fr = section_frame(ctx.n)
    coords = [(a, c, e) for a, c, e in product(range(2 * ctx.n), repeat=3) if a < c]

    def items():
        for a, c, e in coords:
            yield (section_label(ctx.n, a), section_label(ctx.n, c), section_label(ctx.n, e)), jacobiator(fr[a], fr[c], fr[e], kind=kind)
        for k, t in enumerate(samples):
            yield (f"sample {k + 1}",), jacobiator(*t, kind=kind)

    jac = scan(items(), lambda k, v: f"Jac({', '.join(k)}) = {v}")
    if R:
        (l, k, i, j), v = next(iter(R.items()))
        flat = Finding(False, f"R^{l + 1}_{k + 1}{i + 1}{j + 1} = {v}")
    else:
        flat = Finding(True)
    details.append(f"flat: {bool(flat)}; Jacobi on samples: {bool(jac)}")
    if bool(flat) != bool(jac):
        return "fail", f"flat={bool(flat)} but Jacobi {'holds' if jac else 'fails: ' + str(jac.witness)}"
    if not flat:
        return "hypothesis_not_met", f"{flat.witness}; Jacobi: {jac.witness}"
    return "pass", None


def check_gc_axioms(ctx: Context, details: list[str]):
    nb, label = ctx.base_connection()
    details.append(f"connection: {label}")
    nt = GeneralizedConnection(nb)
    rng = ctx.rng("gc_axioms:f")
    samples = ctx.sections("gc_axioms", max(1, ctx.samples // 2), 3)
    fs = [random_poly(rng, ctx.n, ctx.max_degree) for _ in samples]

    def leibniz(k_t):
        k, (u, v, w) = k_t
        f = fs[k]
        return nt(u, v.scale(f)) - v.scale(u.vec(f)) - nt(u, v).scale(f)

    def linear(k_t):
        k, (u, v, w) = k_t
        f = fs[k]
        return nt(u.scale(f), v) - nt(u, v).scale(f)

    def compat(k_t):
        k, (u, v, w) = k_t
        return u.vec(pairing(v, w)) - pairing(nt(u, v), w) - pairing(v, nt(u, w))

    idx = list(enumerate(samples))
    found = {
        "leibniz": scan(((k, leibniz((k, t))) for k, t in idx), lambda k, v: f"{_lbl(k)}: {v}"),
        "function_linear": scan(((k, linear((k, t))) for k, t in idx), lambda k, v: f"{_lbl(k)}: {v}"),
        "pairing_compatible": scan(((k, compat((k, t))) for k, t in idx), lambda k, v: f"{_lbl(k)}: {v}"),
    }
    return _identities(found, details)


def _torsion_matches(ctx: Context, nb: AffineConnection, target: KForm, name: str) -> Finding:
    return _array_diff(torsion3_array(nb, ctx.scenario.g), form_array3(target), name)


def check_torsion_is_minus_db(ctx: Context, details: list[str]):
    g, b = ctx.scenario.g, ctx.scenario.b
    db = ext_d(b)
    nm = nabla_minus(ctx.gm)
    found = {
        "nabla_plus_metric": _metric_compatible(ctx.nb, g, "nabla+ g"),
        "nabla_plus_torsion": _torsion_matches(ctx, ctx.nb, -db, "T+ + db"),
        "nabla_minus_metric": _metric_compatible(nm, g, "nabla- g"),
        "nabla_minus_torsion": _torsion_matches(ctx, nm, db, "T- - db"),
    }
    return _identities(found, details)


def check_twisted_torsion(ctx: Context, details: list[str]):
    H = ctx.scenario.H
    if H is None:
        raise Skip("no three_form")
    g, db = ctx.scenario.g, ext_d(ctx.scenario.b)
    p_closed, m_closed = nabla_plus(ctx.gm, H), nabla_minus(ctx.gm, H)
    found = {
        "plus_routes_agree": _conn_equal(p_closed, nabla_plus_bracket(ctx.gm, H), "nabla+ closed vs bracket"),
        "minus_routes_agree": _conn_equal(m_closed, nabla_minus_bracket(ctx.gm, H), "nabla- closed vs bracket"),
        "plus_metric": _metric_compatible(p_closed, g, "nabla+ g"),
        "plus_torsion": _torsion_matches(ctx, p_closed, -db - H, "T+ + db + H"),
        "minus_torsion": _torsion_matches(ctx, m_closed, db + H, "T- - db - H"),
    }
    return _identities(found, details)


def check_koszul_uniqueness(ctx: Context, details: list[str]):
    g, n = ctx.scenario.g, ctx.n
    rng = ctx.rng("koszul_uniqueness")
    found = {}
    count = max(1, min(3, ctx.samples))
    for s in range(count):
        T = [[[ScalarField.zero(n)] * n for _ in range(n)] for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(n):
                    v = random_poly(rng, n, min(ctx.max_degree, 1), rng.randint(0, 2))
                    T[i][j][k], T[j][i][k] = v, -v
        nb = koszul_with_torsion(g, T)
        fr = [VectorField.coord(n, i) for i in range(n)]
        Tfn = lambda X, Y: VectorField._raw(n, g.inverse.apply(tuple(
            sum((X.comps[i] * Y.comps[j] * T[i][j][k] for i in range(n) for j in range(n)), ScalarField.zero(n))
            for k in range(n))))
        # second route: Gamma from the pointwise Koszul formula, lowered index raised by g^-1
        first = [[[koszul_value(g, Tfn, fr[i], fr[j], fr[k]) for k in range(n)] for j in range(n)] for i in range(n)]
        gamma = [[[sum((g.inverse[m, k] * first[i][j][k] for k in range(n)), ScalarField.zero(n))
                   for j in range(n)] for i in range(n)] for m in range(n)]
        other = AffineConnection(n, gamma)
        t3 = torsion3_array(nb, g)
        found[f"sample{s + 1}_metric"] = _metric_compatible(nb, g)
        found[f"sample{s + 1}_torsion"] = _array_diff(t3, T, "torsion3 - T")
        found[f"sample{s + 1}_unique"] = _conn_equal(nb, other, "array vs pointwise Koszul")
    found["nabla_plus_unique"] = _conn_equal(koszul_with_torsion(g, torsion3_array(ctx.nb, g)), ctx.nb,
                                             "Koszul(torsion of nabla+) vs nabla+")
    return _identities(found, details)


def check_nabla_plus_two_constructions(ctx: Context, details: list[str]):
    g, db = ctx.scenario.g, ext_d(ctx.scenario.b)
    found = {
        "closed_vs_koszul": _conn_equal(ctx.nb, koszul_with_torsion(g, -db), "nabla+ vs Koszul(-db)"),
        "bracket_vs_closed": _conn_equal(nabla_plus_bracket(ctx.gm), ctx.nb, "bracket vs closed form"),
        "minus_vs_koszul": _conn_equal(nabla_minus(ctx.gm), koszul_with_torsion(g, db), "nabla- vs Koszul(db)"),
    }
    return _identities(found, details)


def check_db_cyclic_identity(ctx: Context, details: list[str]):
    nb, b, n = ctx.nb, ctx.scenario.b, ctx.n
    trip = list(_coord_triples(n))
    ident = scan(((k, db_identity_defect(nb, b, X, Y, Z)) for k, X, Y, Z in trip), lambda k, v: f"at {_lab3(k)}: {v}")
    literal = scan(((k, db_identity_literal_defect(nb, b, X, Y, Z)) for k, X, Y, Z in trip), lambda k, v: f"at {_lab3(k)}: {v}")
    details.append("identity with -b(T(X,Y),Z) as printed: " + ("holds" if literal else f"fails [{literal.witness}]"))
    status, wit = _identities({"db_identity": ident}, details)
    if status == "fail":
        return status, wit
    cyc = scan(((k, cyclic_nabla_b(nb, b, X, Y, Z)) for k, X, Y, Z in trip), lambda k, v: f"cyclic nabla b at {_lab3(k)}: {v}")
    s1, w1 = _status_from({"db_zero": _db_zero(ctx)}, {"cyclic_nabla_b_zero": cyc}, details)
    if s1 == "fail":
        return s1, w1

    def corrected(X, Y, Z):
        T = lambda U, V: torsion(nb, U, V)
        return b(T(X, Y), Z) + b(T(Y, Z), X) + b(T(Z, X), Y) - ext_d(b)(X, Y, Z)

    two = scan(((k, corrected(X, Y, Z)) for k, X, Y, Z in trip), lambda k, v: f"at {_lab3(k)}: {v}")
    lit2 = scan(((k, parallel_b_torsion_literal(nb, b, X, Y, Z)) for k, X, Y, Z in trip), lambda k, v: f"at {_lab3(k)}: {v}")
    details.append("(ii) with the printed signs: " + ("holds" if lit2 else f"fails [{lit2.witness}]"))
    s2, w2 = _status_from({"nabla_b_zero": _nabla_b(ctx)}, {"cyclic_torsion_equals_db": two}, details)
    if s2 == "fail":
        return s2, w2
    return "pass", None


def check_parallel_b_iff_parallel_G(ctx: Context, details: list[str]):
    rep = parallel_G_check(ctx.gm, ctx.nb)
    details.extend(rep.lines())
    if not rep["equivalence"]:
        return "fail", rep.first_witness("nabla_b_zero", "nabla_G_zero")
    return "pass", None


def _gen_torsion_findings(ctx: Context, nb: AffineConnection):
    n = ctx.n
    nt = GeneralizedConnection(nb)
    fr = section_frame(n)
    trip = [(fr[a], fr[c], fr[e]) for a, c, e in product(range(2 * n), repeat=3)]
    trip += ctx.sections("gen_torsions", max(1, ctx.samples // 5), 3)
    labels = lambda k: f"triple {k + 1}"
    tc = scan(((k, gen_torsion_courant(nt, v, w, u)) for k, (v, w, u) in enumerate(trip)), lambda k, v: f"T_C at {labels(k)} = {v}")
    agree = scan(((k, gen_torsion_courant(nt, v, w, u) - gen_torsion_dorfman(nt, v, w, u)) for k, (v, w, u) in enumerate(trip)),
                 lambda k, v: f"Courant vs Dorfman form at {labels(k)}: {v}")
    tn = scan(((k, gen_torsion_nabla(nt, nb, v, w)) for k, (v, w, u) in enumerate(trip)), lambda k, v: f"T_nabla at {labels(k)} = {v}")
    embed = scan(((k, gen_torsion_nabla(nt, nb, v, w) - GenSection(torsion(nb, v.vec, w.vec)))
                  for k, (v, w, u) in enumerate(trip)), lambda k, v: f"T_nabla - T(X,Y) at {labels(k)}: {v}")
    eq = scan(((k, torsion_equality_defect(nt, nb, v, w, u)) for k, (v, w, u) in enumerate(trip)),
              lambda k, v: f"criterion defect at {labels(k)} = {v}")
    free = scan([("T", _TorsionArray(nb))], lambda k, v: v.witness())
    return free, tc, agree, tn, embed, eq


class _TorsionArray:
    def __init__(self, nb):
        self.t = torsion_array(nb)

    def is_zero(self):
        return all(e.is_zero() for p in self.t for r in p for e in r)

    def witness(self):
        n = len(self.t)
        for k, i, j in product(range(n), repeat=3):
            if self.t[k][i][j]:
                return f"T^{k + 1}_{i + 1}{j + 1} = {self.t[k][i][j]}"
        return ""


def check_gen_torsions_vanish_torsionfree(ctx: Context, details: list[str]):
    nb, label = ctx.base_connection()
    details.append(f"connection: {label}")
    free, tc, agree, tn, embed, _ = ctx.cached("gentors:" + label, lambda: _gen_torsion_findings(ctx, nb))
    status, wit = _identities({"courant_dorfman_forms_agree": agree, "nabla_torsion_is_T": embed}, details)
    if status == "fail":
        return status, wit
    return _status_from({"torsion_free": free}, {"courant_torsion_zero": tc, "nabla_torsion_zero": tn}, details)


def check_torsion_equality_criterion(ctx: Context, details: list[str]):
    nb, label = ctx.base_connection()
    details.append(f"connection: {label}")
    free, tc, agree, tn, embed, eq = ctx.cached("gentors:" + label, lambda: _gen_torsion_findings(ctx, nb))
    details.append(f"torsion-free: {bool(free)}; criterion satisfied: {bool(eq)}")
    if bool(free) != bool(eq):
        return "fail", "equivalence with torsion-freeness violated: " + str(free.witness or eq.witness)
    if not eq:
        return "fail", f"torsions differ: {eq.witness}"
    return "pass", None


def check_courant_metric_integrability(ctx: Context, details: list[str]):
    rep = ctx.cached("courant_rep", lambda: courant_integrability_report(ctx.gm))
    details.extend(rep.lines())
    if not rep["involutivity_identity"]:
        return "fail", f"involutivity_identity: {rep['involutivity_identity'].witness}"
    return _status_from({"beta_criterion": rep["beta_criterion"]}, {"eigenframe_nijenhuis": rep["eigenframe_nijenhuis"]}, [])


def check_dorfman_symmetry(ctx: Context, details: list[str]):
    G = ctx.gm.G
    pairs = [(u, v) for _, u, v in frame_pairs(ctx.n, skew=False)]
    pairs += ctx.sections("dorfman_symmetry", max(1, ctx.samples // 5), 2)
    found = {
        "antisymmetric_part": scan(((k, dorfman_symmetry_defect(G, u, v)) for k, (u, v) in enumerate(pairs)),
                                   lambda k, v: f"pair {k + 1}: {v}"),
        "symmetric_part_factor_4": scan(((k, dorfman_symmetrization_defect(G, u, v, 4)) for k, (u, v) in enumerate(pairs)),
                                        lambda k, v: f"pair {k + 1}: {v}"),
    }
    two = scan(((k, dorfman_symmetrization_defect(G, u, v, 2)) for k, (u, v) in enumerate(pairs)), lambda k, v: f"pair {k + 1}: {v}")
    details.append("symmetric part with factor 2: " + ("holds" if two else f"fails [{two.witness}]"))
    return _identities(found, details)


def check_bfield_integrability_transport(ctx: Context, details: list[str]):
    gm = ctx.gm
    gg = gm.g_only()
    n = ctx.n
    e_minus = EndoE.b_transform(-ctx.scenario.b)
    Gg, G = gg.G, gm.G

    def transport():
        for (a, c), u, v in frame_pairs(n):
            from ..courant import nijenhuis
            lhs = nijenhuis(COURANT, G, e_minus(u), e_minus(v))
            yield (a, c), lhs - e_minus(nijenhuis(COURANT, Gg, u, v))

    hyps = {"db_zero": _db_zero(ctx), "G_g_integrable": eigenframe_nijenhuis(gg)}
    concl = {"G_integrable": eigenframe_nijenhuis(gm)}
    if hyps["db_zero"]:
        concl["nijenhuis_transport"] = scan(transport(), lambda k, v: f"N_G(e^-b u, e^-b v) - e^-b N_Gg(u,v) at ({section_label(n, k[0])}, {section_label(n, k[1])}) = {v}")
    return _status_from(hyps, concl, details)


def check_nabla_metric_integrability_iff_db(ctx: Context, details: list[str]):
    rep = nabla_integrability_check(ctx.gm, ctx.nb)
    details.extend(rep.lines())
    if not rep["closed_form_agrees"]:
        return "fail", f"closed_form_agrees: {rep['closed_form_agrees'].witness}"
    if not rep["G_g_nijenhuis"]:
        return "fail", rep["G_g_nijenhuis"].witness
    if not rep["matches_db_criterion"]:
        return "fail", "N vanishes but db does not"
    return "pass", None


def check_connection_cohomology_invariance(ctx: Context, details: list[str]):
    rng = ctx.rng("connection_cohomology_invariance")
    count = max(1, min(5, ctx.samples))
    found = {}
    for s in range(count):
        alpha = random_form(rng, ctx.n, 1, ctx.max_degree)
        shifted = nabla_plus(ctx.gm.with_b(ctx.scenario.b + ext_d(alpha)))
        found[f"alpha{s + 1}"] = _conn_equal(shifted, ctx.nb, f"b + d({alpha})")
    return _identities(found, details)


def _para_target(ctx: Context) -> tuple[EndoE, str]:
    if "P" in ctx.scenario.endos:
        return ctx.scenario.endos["P"], "endos.P"
    return ctx.gm.G, "G"


def check_para_block_system(ctx: Context, details: list[str]):
    found = {}
    try:
        G = gm_blocks(ctx.gm)
        found["G_squares_to_identity"] = Finding(True)
    except ArithmeticError as e:
        return "fail", str(e)
    targets = [("G", G)] + [(f"endos.{k}", v) for k, v in sorted(ctx.scenario.endos.items())]
    for name, J in targets:
        cls = classify_endo(J)
        details.append(f"{name}: {cls.kind}")
        if "product" in cls:
            rep = product_system(J)
            found[f"{name}_product_system"] = Finding(rep.ok(), rep.first_witness())
            lit = product_system_literal(J)
            details.append(f"{name}: skew-alpha/beta variant " + ("holds" if lit.ok() else f"fails [{lit.first_witness()}]"))
    is_prod = "product" in classify_endo(G)
    found["G_is_product"] = Finding(is_prod, None if is_prod else "G is not a product structure")
    plus, minus = eigen_ranks(G)
    found["G_eigen_ranks"] = Finding(plus == minus == ctx.n, f"ranks {plus}, {minus}")
    return _identities(found, details)


def check_para_torsion_formula(ctx: Context, details: list[str]):
    P, label = _para_target(ctx)
    details.append(f"structure: {label}")
    cls = classify_endo(P)
    if "paracomplex" not in cls:
        return "hypothesis_not_met", f"{label} classifies as {cls.kind}"
    if not P.alpha.det():
        raise Skip("alpha is singular")
    pc = para_connection(P)
    found = {"torsion_formula": _array_diff(torsion_array(pc), para_torsion_formula(P), "T - alpha(i i d(alpha^-1 H))")}
    if label == "G":
        found["equals_nabla_plus"] = _conn_equal(pc, ctx.nb, "para connection vs nabla+")
    return _identities(found, details)


def check_para_integrability(ctx: Context, details: list[str]):
    P, label = _para_target(ctx)
    details.append(f"structure: {label}")
    if "paracomplex" not in classify_endo(P):
        return "hypothesis_not_met", f"{label} is not para-complex"
    if not P.alpha.det():
        raise Skip("alpha is singular")
    rep = para_integrability(P)
    details.append("diagnostic " + rep.lines()[-1])
    trivial = {"N(u,u)": scan(((k, _nij_self(P, u)) for k, u in enumerate(section_frame(ctx.n))), lambda k, v: f"{v}")}
    s0, w0 = _identities(trivial, details)
    if s0 == "fail":
        return s0, w0
    base = {"alpha_parallel": rep["alpha_parallel"], "H_parallel": rep["H_parallel"]}
    s1, w1 = _status_from(base, {"P_parallel": rep["P_parallel"]}, details)
    if s1 == "fail":
        return s1, w1
    hyp2 = dict(base, d_omega_zero=rep["d_omega_zero"])
    s2, w2 = _status_from(hyp2, {"nabla_nijenhuis": rep["nabla_nijenhuis"]}, [])
    if s2 == "fail":
        return s2, w2
    hyp3 = dict(hyp2, pairing_hypothesis=rep["pairing_hypothesis"])
    s3, w3 = _status_from(hyp3, {"courant_nijenhuis": rep["courant_nijenhuis"]}, details)
    if s3 == "fail":
        return s3, w3
    return (s1, w1) if s1 != "pass" else (s3, w3)


def _nij_self(P, u):
    from ..courant import nijenhuis

    return nijenhuis(COURANT, P, u, u)


def _frame(ctx: Context) -> IsotropicFrame:
    if ctx.scenario.isotropic_frame is None:
        raise Skip("no isotropic_frame")
    return IsotropicFrame(ctx.scenario.g, ctx.scenario.isotropic_frame)


def check_isotropic_Vi_maximal(ctx: Context, details: list[str]):
    D = _frame(ctx)
    secs = build_Vi(ctx.gm, D)
    for s in secs:
        details.append(f"section: {s}")
    n = ctx.n
    pairs = scan((((a, c), pairing(secs[a], secs[c])) for a in range(len(secs)) for c in range(len(secs))),
                 lambda k, v: f"<s{k[0] + 1}, s{k[1] + 1}> = {v}")
    found = {"pairings_zero": pairs, "dimension": Finding(len(secs) == n, f"{len(secs)} sections for m = {n}")}
    return _identities(found, details)


def check_jg_integrability(ctx: Context, details: list[str]):
    D = _frame(ctx)
    rep = jg_integrability(ctx.gm, D)
    status, wit = _identities({"annihilator_brackets": rep["annihilator_brackets"]}, details)
    if status == "fail":
        return status, wit
    return _status_from({"D_involutive": rep["D_involutive"], "G_courant_integrable": rep["G_courant_integrable"]},
                        {"Vi_involutive": rep["Vi_involutive"]}, details)


def _weak(ctx: Context):
    def build():
        try:
            return weak_from_metric(ctx.gm)
        except GenGeomError as e:
            return e
    wh = ctx.cached("weak", build)
    if isinstance(wh, Exception):
        raise Skip(f"no weak structure: {type(wh).__name__}: {wh}")
    return wh


def check_weak_hermitian_induction(ctx: Context, details: list[str]):
    wh = _weak(ctx)
    g = wh.g.matrix
    gA, gQ = g @ wh.A, g @ wh.Q
    details.append(f"A = {wh.A}")
    details.append(f"Q = {wh.Q}")
    from ..structures import _matrix_finding
    back = metric_from_weak(wh)
    found = {
        "A_g_skew": _matrix_finding(gA + gA.T, "gA + (gA)^T"),
        "Q_self_adjoint": _matrix_finding(gQ - gQ.T, "gQ - (gQ)^T"),
        "Q_is_minus_A_squared": _matrix_finding(wh.Q + wh.A @ wh.A, "Q + A^2"),
        "F_equals_b": scan([("F-b", fundamental_form(wh) - ctx.scenario.b)], lambda k, v: f"F - b = {v}"),
        "converse_metric": Finding((back.G @ back.G) == EndoE.identity(ctx.n) and back.b == ctx.scenario.b,
                                   "(g, F) does not give back G"),
    }
    return _identities(found, details)


def _lemma_reading(ctx: Context) -> str:
    return str(ctx.scenario.options.get("lemma_reading", "grouped"))


def _torsion_rep(ctx: Context):
    wh = _weak(ctx)
    return ctx.cached("tors_rep", lambda: torsion_conditions(wh, ctx.nb, _lemma_reading(ctx)))


def check_a_torsion(ctx: Context, details: list[str]):
    rep = _torsion_rep(ctx)
    details.append(f"lemma reading: {_lemma_reading(ctx)}")
    other = "interior" if _lemma_reading(ctx) == "grouped" else "grouped"
    alt = torsion_conditions(_weak(ctx), ctx.nb, other)
    details.append(f"identity under the {other} reading: " + ("holds" if alt["lemma_identity"] else "fails"))
    if bool(rep["a_torsion"]) != bool(rep["a_torsion_db"]):
        return "fail", "A-torsion of nabla+ disagrees with the db form"
    return _status_from({"nabla_b_zero": rep["nabla_b_zero"], "lemma_identity": rep["lemma_identity"]},
                        {"a_torsion": rep["a_torsion"]}, details)


def check_q_torsion(ctx: Context, details: list[str]):
    rep = _torsion_rep(ctx)
    return _status_from({"a_torsion": rep["a_torsion"], "db_Q": rep["db_Q"]},
                        {"q_torsion_sym": rep["q_torsion_sym"], "q_torsion_commute": rep["q_torsion_commute"]}, details)


def check_nearly_kahler(ctx: Context, details: list[str]):
    wh = _weak(ctx)
    rep = _torsion_rep(ctx)
    S = scan(nearly_kahler_defect(wh, ctx.lc), lambda k, v: f"S(d{k[0] + 1},d{k[1] + 1}) = {v}")
    details.append("weak Kaehler (nabla A = 0): " + ("yes" if nabla_A_finding(wh, ctx.lc) else "no"))
    s1, w1 = _status_from({"nabla_b_zero": rep["nabla_b_zero"], "lemma_identity": rep["lemma_identity"]},
                          {"nearly_kahler": S}, details)
    if s1 == "fail":
        return s1, w1
    if rep["nabla_b_zero"] and bool(rep["a_torsion"]) != bool(S):
        return "fail", f"A-torsion ({bool(rep['a_torsion'])}) and nearly Kaehler ({bool(S)}) disagree with nabla~G = 0"
    return s1, w1


def _J(ctx: Context) -> EndoE:
    if "J" not in ctx.scenario.endos:
        raise Skip("no endos.J")
    return ctx.scenario.endos["J"]


def _hermitian(ctx: Context):
    J = _J(ctx)

    def build():
        try:
            return hermitian_suite(ctx.gm, J, ctx.nb)
        except NotCompatible as e:
            return e
    return ctx.cached("herm", build)


def check_hermitian_compat(ctx: Context, details: list[str]):
    rep = _hermitian(ctx)
    if isinstance(rep, NotCompatible):
        return "hypothesis_not_met", f"{rep}: {rep.witness}" if rep.witness else str(rep)
    details.extend(rep.lines())
    names = ["hermitian_metric", "J_plus_square", "J_minus_square", "eigenbundles_invariant", "g_hermitian_plus", "g_hermitian_minus"]
    status, wit = _identities({k: rep[k] for k in names}, [])
    if status == "fail":
        return status, wit
    return _status_from({"nabla_b_zero": rep["nabla_b_zero"]}, {"parallel_equivalence": rep["parallel_equivalence"]}, [])


def _pair(ctx: Context):
    rep = _hermitian(ctx)
    if isinstance(rep, NotCompatible):
        return None, rep
    Jp, Jm = induced_complex_structures(ctx.gm, ctx.scenario.endos["J"])
    return (Jp, Jm), None


def check_j_pm_induction(ctx: Context, details: list[str]):
    J = _J(ctx)
    pm, err = _pair(ctx)
    if err is not None:
        return "hypothesis_not_met", f"{err}"
    Jp, Jm = pm
    details.append(f"J+ = {Jp}")
    details.append(f"J- = {Jm}")
    rep = _hermitian(ctx)
    J1, J2 = gualtieri_pair(ctx.scenario.g, ctx.scenario.b, Jp, Jm)
    a1, b1 = induced_complex_structures(ctx.gm, J1)
    a2, b2 = induced_complex_structures(ctx.gm, J2)
    found = {
        "J_plus_square": rep["J_plus_square"],
        "J_minus_square": rep["J_minus_square"],
        "eigenbundles_invariant": rep["eigenbundles_invariant"],
        "J1_induces_J_plus_minus": Finding(a1 == Jp and b1 == Jm, "J1 induces a different pair"),
        "J2_induces_J_plus_and_minus_J_minus": Finding(a2 == Jp and b2 == -Jm, "J2 induces a different pair"),
        "J_reconstructed": Finding(J1 == J, "J differs from J1(J+, J-)"),
    }
    return _identities(found, details)


def check_gualtieri_kahler(ctx: Context, details: list[str]):
    _J(ctx)
    pm, err = _pair(ctx)
    if err is not None:
        return "hypothesis_not_met", f"{err}"
    J1, J2 = gualtieri_pair(ctx.scenario.g, ctx.scenario.b, *pm)
    G = ctx.gm.G
    alg = {
        "J1_strong": Finding(classify_endo(J1).kind == "strong_gacs", f"J1 is {classify_endo(J1).kind}"),
        "J2_strong": Finding(classify_endo(J2).kind == "strong_gacs", f"J2 is {classify_endo(J2).kind}"),
        "commute": Finding(J1 @ J2 == J2 @ J1, "J1 J2 != J2 J1"),
        "metric_blocks": Finding(-(J1 @ J2) == G, "-J1 J2 != G"),
    }
    status, wit = _identities(alg, details)
    if status == "fail":
        return status, wit
    rep = ctx.cached("kahler", lambda: kahler_report(ctx.gm, ctx.scenario.endos["J"], ctx.nb))
    hyps = {"db_zero": rep["db_zero"], "parallel_J_plus": rep["parallel_J_plus"], "parallel_J_minus": rep["parallel_J_minus"]}
    concl = {
        "courant_N_J1": nijenhuis_finding(COURANT, J1, ctx.n, "N_J1"),
        "courant_N_J2": nijenhuis_finding(COURANT, J2, ctx.n, "N_J2"),
        "courant_N_J": rep["courant_N_J"],
        "courant_N_GJ": rep["courant_N_GJ"],
    }
    return _status_from(hyps, concl, details)


def _kahler(ctx: Context) -> Report:
    _J(ctx)
    rep = _hermitian(ctx)
    if isinstance(rep, NotCompatible):
        raise _NotMet(f"{rep}")
    return ctx.cached("kahler", lambda: kahler_report(ctx.gm, ctx.scenario.endos["J"], ctx.nb))


class _NotMet(Exception):
    pass


def check_kahler_nabla_integrability(ctx: Context, details: list[str]):
    rep = _kahler(ctx)
    hyps = {k: rep[k] for k in ("nabla_b_zero", "parallel_J_plus", "parallel_J_minus", "db_zero")}
    concl = {k: rep[k] for k in ("nabla_N_G", "nabla_N_J")}
    return _status_from(hyps, concl, details)


def check_parallel_triple(ctx: Context, details: list[str]):
    rep = _kahler(ctx)
    hyps = {k: rep[k] for k in ("courant_N_J", "courant_N_GJ", "nabla_b_zero", "db_zero")}
    concl = {k: rep[k] for k in ("parallel_G", "parallel_J", "parallel_GJ", "nabla_N_G", "nabla_N_J", "nabla_N_GJ")}
    return _status_from(hyps, concl, details)


CHECKS: dict[str, Callable] = {
    "dorfman_jacobi": check_dorfman_jacobi,
    "courant_jacobiator": check_courant_jacobiator,
    "bfield_preserves_courant": check_bfield_preserves_courant,
    "twisted_pairing": check_twisted_pairing,
    "conn_bracket_jacobi_flat": check_conn_bracket_jacobi_flat,
    "gc_axioms": check_gc_axioms,
    "torsion_is_minus_db": check_torsion_is_minus_db,
    "twisted_torsion": check_twisted_torsion,
    "koszul_uniqueness": check_koszul_uniqueness,
    "nabla_plus_two_constructions": check_nabla_plus_two_constructions,
    "db_cyclic_identity": check_db_cyclic_identity,
    "parallel_b_iff_parallel_G": check_parallel_b_iff_parallel_G,
    "gen_torsions_vanish_torsionfree": check_gen_torsions_vanish_torsionfree,
    "torsion_equality_criterion": check_torsion_equality_criterion,
    "courant_metric_integrability": check_courant_metric_integrability,
    "dorfman_symmetry": check_dorfman_symmetry,
    "bfield_integrability_transport": check_bfield_integrability_transport,
    "nabla_metric_integrability_iff_db": check_nabla_metric_integrability_iff_db,
    "connection_cohomology_invariance": check_connection_cohomology_invariance,
    "para_block_system": check_para_block_system,
    "para_torsion_formula": check_para_torsion_formula,
    "para_integrability": check_para_integrability,
    "isotropic_Vi_maximal": check_isotropic_Vi_maximal,
    "jg_integrability": check_jg_integrability,
    "weak_hermitian_induction": check_weak_hermitian_induction,
    "a_torsion": check_a_torsion,
    "q_torsion": check_q_torsion,
    "nearly_kahler": check_nearly_kahler,
    "hermitian_compat": check_hermitian_compat,
    "j_pm_induction": check_j_pm_induction,
    "gualtieri_kahler": check_gualtieri_kahler,
    "kahler_nabla_integrability": check_kahler_nabla_integrability,
    "parallel_triple": check_parallel_triple,
}

ALIASES: dict[str, list[str]] = {
    "nabla_integrability": ["nabla_metric_integrability_iff_db"],
    "kahler_report": ["gualtieri_kahler", "kahler_nabla_integrability", "parallel_triple"],
}


def resolve(ids) -> list[str]:
    """Expand ``all`` and aliases; unknown identifiers raise KeyError. Order follows the registry."""
    wanted = set()
    for i in ids:
        if i == "all":
            wanted.update(CHECKS)
        elif i in ALIASES:
            wanted.update(ALIASES[i])
        elif i in CHECKS:
            wanted.add(i)
        else:
            raise KeyError(i)
    return [c for c in CHECKS if c in wanted]


def run_check(ctx: Context, check_id: str) -> CheckResult:
    details: list[str] = []
    t0 = time.perf_counter()
    try:
        status, witness = CHECKS[check_id](ctx, details)
    except Skip as e:
        status, witness = "skipped", None
        details.append(str(e))
    except _NotMet as e:
        status, witness = "hypothesis_not_met", str(e)
    except GenGeomError as e:
        status, witness = "fail", f"{type(e).__name__}: {e}"
    if status == "fail" and not witness:
        witness = "violation without a recorded value"
    return CheckResult(check_id, status, witness, details, time.perf_counter() - t0)


def run_checks(s: Scenario, checks=None, seed: int | None = None, samples: int | None = None,
               max_degree: int | None = None) -> list[CheckResult]:
    """Run the requested checks (default: those listed in the scenario) sequentially."""
    ids = resolve(checks if checks is not None else s.checks)
    ctx = Context(
        s,
        seed=seed if seed is not None else (s.seed if s.seed is not None else 0),
        samples=samples if samples is not None else (s.samples if s.samples is not None else DEFAULT_SAMPLES),
        max_degree=max_degree if max_degree is not None else (s.max_degree if s.max_degree is not None else DEFAULT_MAX_DEGREE),
    )
    return [run_check(ctx, c) for c in ids]
