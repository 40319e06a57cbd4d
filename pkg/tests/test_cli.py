from importlib import resources

import pytest

from tileverify.cli import main
from tileverify.ingest import write_native
from tileverify import fixtures
from tileverify.report import Report, ReportFormatError, parse_report
from tileverify.transition import AssemblySequence

DATA = resources.files("tileverify") / "data"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


class TestReportFormat:
    def test_round_trip(self):
        rep = Report().add("verdict", "UniqueTerminal").add("location", (1, 0)).add("ok", True)
        rep.traces.append(AssemblySequence((("a+b", (0, 1)), ("c", (2, 0)))))
        back = parse_report(rep.render())
        assert back.fields == {"verdict": "UniqueTerminal", "location": "(1,0)", "ok": "true"}
        assert back.traces == rep.traces

    @pytest.mark.parametrize("text", ["", "tileverify-report 2\n", "tileverify-report 1\nnoequals\n",
                                      "tileverify-report 1\ntrace 1\nstep 1: a @ (0,1)\n",
                                      "tileverify-report 1\ntrace 1\nstep 2: a @ (0,1)\nend trace\n"])
    def test_rejects(self, text):
        with pytest.raises(ReportFormatError):
            parse_report(text)

    def test_bad_key(self):
        with pytest.raises(ValueError):
            Report().add("two words", 1)


class TestVerifyCommand:
    def test_files(self, capsys):
        code, out, _ = run(capsys, "verify", "--tileset", DATA / "sierpinski.tds", "--seed", DATA / "sierpinski.seed",
                           "--size", 50, "--format", "structured")
        rep = parse_report(out)
        assert code == 0
        assert rep.fields["verdict"] == "UniqueTerminal" and rep.fields["budget"] == "2549"

    def test_ambiguous(self, capsys):
        code, out, _ = run(capsys, "verify", "--fixture", "ambiguous", "-n", 4, "--format", "structured")
        assert code == 3 and len(parse_report(out).traces) == 2

    def test_exit_codes(self, capsys):
        assert run(capsys, "verify", "--fixture", "drop", "-n", 4)[0] == 2
        assert run(capsys, "verify", "--fixture", "overbind", "-n", 4, "--strict-rectilinearity")[0] == 4

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run(capsys, "verify", "--tileset", tmp_path / "none.tds", "--seed", tmp_path / "s", "-n", 3)
        assert code == 1 and "error" in err

    def test_parse_error(self, capsys, tmp_path):
        bad = tmp_path / "bad.tds"
        bad.write_text("TILENAME a\nNORTHBIND 9\nCREATE\n")
        code, _, err = run(capsys, "verify", "--tileset", bad, "--seed", DATA / "sierpinski.seed", "-n", 3)
        assert code == 1 and "2:11" in err

    def test_usage(self, capsys):
        assert run(capsys, "verify", "-n", 3)[0] == 1
        assert run(capsys, "frobnicate")[0] == 1

    def test_native_input(self, capsys, tmp_path):
        path = tmp_path / "sys.tas"
        path.write_text(write_native(fixtures.carpet_mod3()))
        assert run(capsys, "verify", "--native", path, "-n", 6)[0] == 0

    def test_figure_and_out(self, capsys, tmp_path):
        fig, out = tmp_path / "a.png", tmp_path / "r.txt"
        code, stdout, _ = run(capsys, "verify", "--fixture", "ambiguous", "-n", 5, "--figure", fig, "--out", out,
                              "--format", "structured")
        assert code == 3 and stdout == ""
        assert fig.read_bytes()[:4] == b"\x89PNG"
        assert parse_report(out.read_text()).fields["verdict"] == "NonUniqueTerminal"


class TestOtherCommands:
    def test_modelcheck(self, capsys):
        code, out, _ = run(capsys, "modelcheck", "--fixture", "sierpinski", "-n", 3, "AF terminal", "--format",
                           "structured")
        assert code == 0 and parse_report(out).fields["holds"] == "true"
        code, out, _ = run(capsys, "modelcheck", "--fixture", "sierpinski", "-n", 3, "AG !t[3][0][0]")
        assert "holds: true" in out

    def test_modelcheck_counterexample(self, capsys):
        code, out, _ = run(capsys, "modelcheck", "--fixture", "ambiguous", "-n", 2, "AG !terminal", "--format", "structured")
        rep = parse_report(out)
        assert rep.fields["holds"] == "false" and rep.fields["path_kind"] == "counterexample"

    def test_modelcheck_errors(self, capsys):
        code, _, err = run(capsys, "modelcheck", "--fixture", "sierpinski", "-n", 3, "AG (t[3]")
        assert code == 1 and "column" in err
        assert run(capsys, "modelcheck", "--fixture", "sierpinski", "-n", 6, "AF terminal", "--state-budget", 50)[0] == 5
        assert run(capsys, "modelcheck", "--fixture", "sierpinski", "-n", 3, "t[9][0][0]")[0] == 1

    def test_count(self, capsys, tmp_path):
        code, out, _ = run(capsys, "count", "-n", 3)
        assert code == 0 and out == "formula=19 diamond=19 explicit=19\n"
        code, out, _ = run(capsys, "count", "-n", 30, "--figure", tmp_path / "c.png")
        assert out.startswith("formula=118264581564861423 diamond=118264581564861423\n")
        assert (tmp_path / "c.png").exists()

    def test_export(self, capsys, tmp_path):
        code, out, _ = run(capsys, "export-smart", "--fixture", "sierpinski", "-n", 4, "--model-name", "SierpTri")
        assert code == 0 and out.startswith("pn SierpTri := {\n")
        target = tmp_path / "m.sm"
        run(capsys, "export-smart", "--fixture", "sierpinski", "-n", 4, "--out", target)
        assert target.read_text().startswith("pn TAS := {")

    def test_simulate_deterministic(self, capsys):
        args = ("simulate", "--fixture", "carpet", "-n", 6, "--rng-seed", 3, "--format", "structured")
        first = run(capsys, *args)[1]
        assert first == run(capsys, *args)[1]
        rep = parse_report(first)
        assert rep.traces[0].replay(fixtures.carpet_mod3(), 6).is_full()
