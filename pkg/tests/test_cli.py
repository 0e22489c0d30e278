import json
import subprocess
import sys

import pytest

from gengeom.cli import CHECKS, CheckResult, emit_report, exit_code, load_scenario, parse_scenario, resolve, run_checks
from gengeom.cli.main import main
from gengeom.cli.scenario import corpus_dir, corpus_paths
from gengeom.errors import DegenerateMetric, ExpressionSyntaxError, SchemaError, UnknownVariable
from gengeom.scalar import FieldMatrix

CORPUS = corpus_dir()


def scenario(**over):
    doc = {"dimension": 3, "metric": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]}
    doc.update(over)
    return doc


class TestLoad:
    def test_flat3(self):
        s = load_scenario(CORPUS / "flat3.json")
        assert s.n == 3
        assert s.g.matrix == FieldMatrix.identity(3, 3)
        assert s.b.is_zero()

    def test_not_symmetric(self, tmp_path):
        p = tmp_path / "bad.json"
        p.write_text(json.dumps(scenario(metric=[["1", "1", "0"], ["0", "1", "0"], ["0", "0", "1"]])))
        with pytest.raises(SchemaError) as e:
            load_scenario(p)
        assert (e.value.field, e.value.reason) == ("metric", "not symmetric")

    def test_unknown_variable(self):
        with pytest.raises(UnknownVariable):
            parse_scenario(scenario(two_form={"1,2": "x9"}))

    def test_syntax_offset(self):
        with pytest.raises(ExpressionSyntaxError) as e:
            parse_scenario(scenario(two_form={"1,2": "x1 + * x2"}))
        assert e.value.offset is not None

    def test_degenerate(self):
        with pytest.raises(DegenerateMetric):
            parse_scenario(scenario(metric=[["1", "1", "0"], ["1", "1", "0"], ["0", "0", "1"]]))

    @pytest.mark.parametrize(
        "over",
        [{"dimension": 9}, {"bogus": 1}, {"two_form": {"2,1": "1"}}, {"connection": {"1,2": "1"}}, {"expect": {"gc_axioms": "ok"}}],
    )
    def test_schema_errors(self, over):
        with pytest.raises(SchemaError):
            parse_scenario(scenario(**over))

    def test_missing_file(self, tmp_path):
        with pytest.raises(OSError):
            load_scenario(tmp_path / "nope.json")

    def test_corpus_expectations_are_known_checks(self):
        for p in corpus_paths():
            s = load_scenario(p)
            assert set(s.expect) <= set(CHECKS), p.name


class TestRun:
    def test_flat3_all(self):
        results = run_checks(load_scenario(CORPUS / "flat3.json"))
        assert [r.id for r in results] == list(CHECKS)
        assert all(r.status in ("pass", "skipped") for r in results)
        assert exit_code(results) == 0

    def test_nonclosed_b_integrability(self):
        (r,) = run_checks(load_scenario(CORPUS / "bnon3.json"), ["nabla_integrability"])
        assert r.id == "nabla_metric_integrability_iff_db"
        assert r.status == "fail"
        assert r.witness.startswith("N(d1, dx2) = -dx3")
        assert "T(g^-1 xi, Y) + T(X, g^-1 eta)" in r.witness

    def test_kahler_without_endos(self):
        results = run_checks(load_scenario(CORPUS / "flat3.json"), ["kahler_report"])
        assert results and all(r.status == "skipped" for r in results)

    def test_unknown_check(self):
        with pytest.raises(KeyError):
            resolve(["no_such_check"])

    def test_errors_stay_per_check(self):
        s = load_scenario(CORPUS / "hermitian_incompat.json")
        results = run_checks(s, ["hermitian_compat", "j_pm_induction", "gc_axioms"])
        by_id = {r.id: r for r in results}
        assert by_id["hermitian_compat"].status == "hypothesis_not_met"
        assert by_id["gc_axioms"].status == "pass"

    def test_results_follow_catalogue_order(self):
        s = parse_scenario(scenario(endos={"Z": {"alpha": [["0", "0", "0"]] * 3}}))
        results = run_checks(s, ["para_block_system", "gc_axioms"])
        assert [r.id for r in results] == ["gc_axioms", "para_block_system"]
        assert "endos.Z: not_gacs" in results[1].details

    def test_seeded_determinism(self):
        s = load_scenario(CORPUS / "warped3.json")
        a = emit_report(run_checks(s, ["dorfman_jacobi", "db_cyclic_identity"], seed=3, samples=4), "json")
        b = emit_report(run_checks(s, ["dorfman_jacobi", "db_cyclic_identity"], seed=3, samples=4), "json")
        assert a == b


def _result(status, witness=None):
    return CheckResult("gc_axioms", status, witness, "", 0.0)


class TestReport:
    def test_empty(self):
        doc = json.loads(emit_report([], "json"))
        assert doc["results"] == [] and doc["exit_code"] == 0
        assert emit_report([], "text").decode().strip()

    def test_fail_witness(self):
        doc = json.loads(emit_report([_result("fail", "N(d1, dx2) = -dx3")], "json"))
        (entry,) = doc["results"]
        assert entry["status"] == "fail" and entry["witness"] == "N(d1, dx2) = -dx3"
        assert "witness: N(d1, dx2) = -dx3" in emit_report([_result("fail", "N(d1, dx2) = -dx3")], "text").decode()

    @pytest.mark.parametrize(
        "statuses, code",
        [(["pass", "skipped"], 0), (["pass", "hypothesis_not_met"], 0), (["pass", "fail", "skipped"], 1)],
    )
    def test_exit_codes(self, statuses, code):
        rs = [_result(s, "w" if s == "fail" else None) for s in statuses]
        assert exit_code(rs) == code
        assert json.loads(emit_report(rs, "json"))["exit_code"] == code

    def test_round_trip(self):
        results = run_checks(load_scenario(CORPUS / "torsionful3.json"), ["gen_torsions_vanish_torsionfree", "torsion_equality_criterion", "gc_axioms"])
        doc = json.loads(emit_report(results, "json"))
        assert {d["id"]: d["status"] for d in doc["results"]} == {r.id: r.status for r in results}

    def test_fail_results_have_witness(self):
        for r in run_checks(load_scenario(CORPUS / "bnon3.json")):
            if r.status == "fail":
                assert r.witness


class TestCommandLine:
    def test_list_checks(self, capsys):
        assert main(["list-checks"]) == 0
        out = capsys.readouterr().out.split("\n")
        assert out[: len(CHECKS)] == list(CHECKS)

    def test_check_fail_exit(self, capsys):
        code = main(["check", str(CORPUS / "bnon3.json"), "--checks", "nabla_integrability", "--format", "json"])
        assert code == 1
        assert json.loads(capsys.readouterr().out)["results"][0]["status"] == "fail"

    def test_check_pass_exit(self, capsys):
        assert main(["check", str(CORPUS / "flat3.json"), "--checks", "gc_axioms,kahler_report"]) == 0
        assert "PASS" in capsys.readouterr().out

    def test_input_errors(self, tmp_path, capsys):
        assert main(["check", str(tmp_path / "missing.json")]) == 2
        assert main(["check", str(CORPUS / "flat3.json"), "--checks", "nope"]) == 2
        p = tmp_path / "x9.json"
        p.write_text(json.dumps(scenario(two_form={"1,2": "x9"})))
        assert main(["check", str(p)]) == 2

    def test_module_entry(self):
        out = subprocess.run([sys.executable, "-m", "gengeom", "list-checks"], capture_output=True, check=True)
        assert b"dorfman_jacobi" in out.stdout
