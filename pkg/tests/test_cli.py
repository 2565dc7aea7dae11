import json
from pathlib import Path

import pytest

from drtcalc.cli import EXIT_ERROR, EXIT_FAILED, EXIT_OK, build_parser, main

MODELS = Path(__file__).resolve().parent.parent / "models"


@pytest.fixture
def failing_model(tmp_path):
    path = tmp_path / "failing.drt"
    path.write_text("actions a, b;\ncheck strong u(a) ~ u(b);\n", encoding="utf-8")
    return str(path)


class TestParser:
    """Tests for the argument parser."""

    def test_command_required(self):
        with pytest.raises(SystemExit):
            build_parser().parse_args([])

    def test_par_defaults(self):
        args = build_parser().parse_args(["par"])
        assert args.check == "all"
        assert (args.data, args.tS, args.tSp) == (1, 1, 5)
        assert args.horizon == 20


class TestModelCommands:
    """Tests for parse, lts, normalize and check."""

    def test_parse_summary(self, capsys):
        assert main(["parse", str(MODELS / "coarsening.drt")]) == EXIT_OK
        summary = json.loads(capsys.readouterr().out)
        assert summary["procs"] == ["Left", "Right"]
        assert summary["checks"] == 5

    def test_parse_pretty(self, capsys):
        assert main(["parse", str(MODELS / "timeout.drt"), "--pretty"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "proc Patient" in out

    def test_lts_to_file(self, tmp_path):
        target = tmp_path / "left.lts"
        assert main(["lts", str(MODELS / "coarsening.drt"), "--proc", "Left", "-o", str(target)]) == EXIT_OK
        assert target.read_text(encoding="utf-8").startswith("lts ")

    def test_normalize_basic(self, capsys):
        assert main(["normalize", str(MODELS / "coarsening.drt"), "--proc", "Right", "--form", "basic"]) == EXIT_OK
        out = capsys.readouterr().out.strip()
        assert out.startswith("u(a) . (")
        assert "sigma(u(b))" in out

    def test_normalize_linear(self, capsys):
        assert main(["normalize", str(MODELS / "coarsening.drt"), "--proc", "Left", "--form", "linear"]) == EXIT_OK
        assert capsys.readouterr().out.startswith("<X0 | X0 = ")

    def test_linear_refuses_abstraction(self, capsys):
        args = ["normalize", str(MODELS / "buffer.drt"), "--proc", "Sys", "--form", "linear"]
        assert main(args) == EXIT_ERROR
        assert "error:" in capsys.readouterr().err

    @pytest.mark.parametrize("model", ["coarsening.drt", "timeout.drt"])
    def test_check_passes(self, capsys, model):
        assert main(["check", str(MODELS / model)]) == EXIT_OK
        results = json.loads(capsys.readouterr().out)
        assert all(r["passed"] for r in results)

    def test_check_fails(self, capsys, failing_model):
        assert main(["check", failing_model]) == EXIT_FAILED
        results = json.loads(capsys.readouterr().out)
        assert results[0]["verdict"]["answer"] == "no"


class TestErrors:
    """Errors map to exit code 2 with a message on stderr."""

    def test_missing_file(self, capsys, tmp_path):
        assert main(["parse", str(tmp_path / "absent.drt")]) == EXIT_ERROR
        assert capsys.readouterr().err.startswith("error:")

    def test_syntax_error(self, capsys, tmp_path):
        path = tmp_path / "broken.drt"
        path.write_text("actions a;\nproc P = u(a) . ;\n", encoding="utf-8")
        assert main(["parse", str(path)]) == EXIT_ERROR
        assert "line 2" in capsys.readouterr().err

    def test_unknown_proc(self):
        assert main(["lts", str(MODELS / "coarsening.drt"), "--proc", "Nope"]) == EXIT_ERROR

    def test_unknown_axiom(self, capsys):
        assert main(["axioms", "--axiom", "A99", "--samples", "1"]) == EXIT_ERROR
        assert "A99" in capsys.readouterr().err


class TestParCommand:
    """Tests for the PAR subcommand."""

    def test_timing(self, capsys):
        assert main(["par", "--check", "timing"]) == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert payload["results"]["timing"]["delivery_delays"] == [3, 8, 13, 18]
        assert payload["results"]["timing"]["post_delivery_gaps"] == [2, 6, 11, 16]
        assert payload["passed"] is True

    def test_functional_premature(self, capsys):
        assert main(["par", "--check", "functional", "--tSp", "4"]) == EXIT_FAILED
        payload = json.loads(capsys.readouterr().out)
        assert payload["results"]["functional"]["answer"] == "no"

    def test_timing_premature(self):
        assert main(["par", "--check", "timing", "--tSp", "4"]) == EXIT_ERROR

    def test_report_file(self, capsys, tmp_path):
        report = tmp_path / "par.json"
        assert main(["par", "--check", "functional", "--report", str(report)]) == EXIT_OK
        data = json.loads(report.read_text(encoding="utf-8"))
        assert data["results"]["functional"]["answer"] == "yes"
        assert data["params"]["t_s_prime"] == 5


class TestAxiomsCommand:
    """Tests for the axioms subcommand."""

    def test_single_axiom(self, capsys):
        assert main(["axioms", "--axiom", "A1", "--samples", "2"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "A1" in out
        assert "failed" in out

    def test_output_dir(self, tmp_path):
        assert main(["axioms", "--axiom", "CM1", "--samples", "1", "--output-dir", str(tmp_path)]) == EXIT_OK
        assert list(tmp_path.glob("run_*/axioms.csv"))
