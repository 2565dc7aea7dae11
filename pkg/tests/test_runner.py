import os

import pytest

from drtcalc.dsl import parse
from drtcalc.errors import ParError
from drtcalc.harness import AXIOMS
from drtcalc.pipeline import PAR_CHECKS, AxiomSuite, ParPipeline
from drtcalc.reporting import ReportManager
from drtcalc.runner import CheckRunner

MODEL = """
actions a, b, c, d;

check rb-ts u(a) . u(tau) . u(b) ~ u(a) . u(b) expect yes;
check strong u(a) . u(tau) . u(b) ~ u(a) . u(b) expect no;
check strong u(a) ~ u(b) expect yes;
check strong u(a) ~ u(b);
check strong u(a) + u(a) ~ u(a);
"""


class TestCheckRunner:
    """Tests for evaluating check directives."""

    def test_results_in_file_order(self):
        results = CheckRunner(parse(MODEL)).run()
        assert [r.directive.line for r in results] == [4, 5, 6, 7, 8]
        assert [r.verdict.answer for r in results] == ["yes", "no", "no", "no", "yes"]

    def test_passed_against_expect(self):
        results = CheckRunner(parse(MODEL)).run()
        assert [r.passed for r in results] == [True, True, False, False, True]
        assert not CheckRunner.all_passed(results)

    def test_filter_by_relation(self):
        results = CheckRunner(parse(MODEL)).run(relation="rb-ts")
        assert len(results) == 1
        assert CheckRunner.all_passed(results)

    def test_to_dict(self):
        model = parse(MODEL)
        result = CheckRunner(model).run()[2]
        out = result.to_dict(model.specs)
        assert out["line"] == 6
        assert out["lhs"] == "u(a)"
        assert out["expect"] == "yes"
        assert out["passed"] is False
        assert out["verdict"]["answer"] == "no"


TIME_MODEL = """
actions a, b;

proc P = tf(u(a) . b);
proc Q = a . b;
proc R = <X | X = u(a) . sigma^2(X); >;

check untimed-rb P ~ Q expect yes;
check untimed-rb tf(R) ~ <Y | Y = a . Y; > expect yes;
check untimed-rb tf(R) ~ Q expect no;
"""


class TestTimeFreeChecks:
    """Time-free projection of delayable actions and recursion inside models."""

    def test_checks_pass(self):
        results = CheckRunner(parse(TIME_MODEL)).run()
        assert [r.verdict.answer for r in results] == ["yes", "yes", "no"]
        assert CheckRunner.all_passed(results)


class TestParPipeline:
    """Tests for the PAR analysis pipeline."""

    def test_unknown_check(self, par_params):
        with pytest.raises(ValueError):
            ParPipeline(par_params, ["liveness"])

    def test_all_checks(self, par_params):
        pipeline = ParPipeline(par_params)
        results = pipeline.run()
        assert set(results) == set(PAR_CHECKS)
        assert results["functional"].holds
        assert results["performance"].answers() == ("yes", "yes", "no", "yes")
        assert results["timing"]["delivery_delays"] == [3, 8, 13, 18]
        assert pipeline.passed()

    def test_premature_timeout_skips(self, premature_params):
        pipeline = ParPipeline(premature_params, ["functional", "timing"])
        results = pipeline.run()
        assert results["functional"].answer == "no"
        assert "skipped" in results["timing"]
        # a failing functional check is the expected outcome here
        assert pipeline.passed()

    def test_single_premature_check_raises(self, premature_params):
        with pytest.raises(ParError):
            ParPipeline(premature_params, ["timing"]).run()

    def test_reports_written(self, par_params, tmp_path):
        reports = ReportManager(str(tmp_path), run_name="par")
        ParPipeline(par_params, ["functional"], reports=reports).run()
        assert os.path.exists(os.path.join(reports.run_dir, "run_config.yaml"))
        assert os.path.exists(os.path.join(reports.run_dir, "par.json"))


class TestAxiomSuite:
    """Tests for the sampled axiom suite."""

    def test_selected_ids(self):
        suite = AxiomSuite(samples=2, seed=1, ids=["A1", "CM1"])
        frame = suite.run()
        assert list(frame["id"]) == ["A1", "CM1"]
        assert suite.passed()

    def test_ids_exclude_meta(self):
        suite = AxiomSuite(samples=1, seed=1, ids=["A1"], include_meta=True)
        assert len(suite.run()) == 1

    def test_without_meta(self):
        suite = AxiomSuite(samples=1, seed=2, include_meta=False)
        frame = suite.run()
        assert list(frame["id"]) == list(AXIOMS)

    def test_reports_written(self, tmp_path):
        reports = ReportManager(str(tmp_path), run_name="axioms")
        AxiomSuite(samples=1, seed=3, ids=["A1"], reports=reports).run()
        for name in ("run_config.yaml", "axioms.json", "axioms.csv"):
            assert os.path.exists(os.path.join(reports.run_dir, name))
