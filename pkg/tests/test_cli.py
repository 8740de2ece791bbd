"""CLI subcommands and the exit-code contract: 0 pass, 1 verification failure, 2 usage."""

from __future__ import annotations

import pytest

from richdist.cli import main
from richdist.geometry import regular_ngon
from richdist.pointsfile import serialize


@pytest.fixture()
def nine(tmp_path):
    path = tmp_path / "nine.pts"
    assert main(["generate", "--theorem", "1", "--n", "9", "-o", str(path)]) == 0
    return path


def test_generate_then_verify_passes(nine):
    assert main(["verify", str(nine), "--classes", "2", "--multiplicity", "10"]) == 0


def test_generate_theorem2_then_verify(tmp_path):
    path = tmp_path / "eight.pts"
    assert main(["generate", "--theorem", "2", "--n", "8", "--m", "3",
                 "-o", str(path)]) == 0
    assert main(["verify", str(path), "--classes", "1", "--multiplicity", "11"]) == 0


def test_generate_to_stdout(capsys):
    assert main(["generate", "--theorem", "1", "--n", "9"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("richdist 1\ncyclo 10\npoints 9\n")


def test_verify_failure_exit_code(tmp_path):
    path = tmp_path / "square.pts"
    path.write_text(serialize(regular_ngon(4)), encoding="utf-8")
    assert main(["verify", str(path), "--classes", "1", "--multiplicity", "5"]) == 1


def test_verify_prints_witnesses(nine, capsys):
    main(["verify", str(nine), "--classes", "2", "--multiplicity", "10"])
    out = capsys.readouterr().out
    assert out.startswith("PASS")
    assert out.count("multiplicity 10") == 2


def test_spectrum_report(nine, capsys):
    assert main(["spectrum", str(nine), "--histogram"]) == 0
    out = capsys.readouterr().out
    assert "9 points" in out and "36 pairs" in out
    assert "histogram" in out


def test_spectrum_machine_format(nine, capsys):
    assert main(["spectrum", str(nine), "--machine"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert "n=9" in lines and "pairs=36" in lines
    assert any(line.startswith("class.0.multiplicity=") for line in lines)


def test_spectrum_byte_determinism(nine, capsys):
    main(["spectrum", str(nine), "--machine"])
    first = capsys.readouterr().out
    main(["spectrum", str(nine), "--machine"])
    assert capsys.readouterr().out == first


def test_svg_command(nine, tmp_path):
    out = tmp_path / "nine.svg"
    assert main(["svg", str(nine), "-o", str(out), "--highlight", "2"]) == 0
    assert out.read_text(encoding="utf-8").startswith("<?xml")


def test_oracle_command(nine, capsys):
    assert main(["oracle", str(nine)]) == 0
    assert capsys.readouterr().out.startswith("match")


def test_oracle_inconclusive_does_not_fail(nine, capsys):
    assert main(["oracle", str(nine), "--tol", "10.0"]) == 0
    assert capsys.readouterr().out.startswith("inconclusive")


def test_reproduce_figures(tmp_path, capsys):
    outdir = tmp_path / "figs"
    assert main(["reproduce-figures", "--outdir", str(outdir)]) == 0
    out = capsys.readouterr().out
    assert out.count("PASS") == 4 and "FAIL" not in out
    assert sorted(p.name for p in outdir.glob("*.svg")) == [
        "figure-08-1x11.svg", "figure-09-2x10.svg",
        "figure-10-2x11.svg", "figure-11-2x12.svg"]


def test_usage_error_exit_code():
    assert main(["generate", "--theorem", "7", "--n", "9"]) == 2
    assert main(["no-such-command"]) == 2
    assert main(["verify"]) == 2


def test_below_threshold_is_usage_error(capsys):
    assert main(["generate", "--theorem", "1", "--n", "3"]) == 2
    assert "error:" in capsys.readouterr().err


def test_missing_file_is_usage_error(capsys):
    assert main(["spectrum", "no-such-file.pts"]) == 2


def test_parse_error_reports_location(tmp_path, capsys):
    bad = tmp_path / "bad.pts"
    bad.write_text("richdist 1\ncyclo 4\npoints 1\n3/0 0\n", encoding="utf-8")
    assert main(["verify", str(bad), "--classes", "1", "--multiplicity", "1"]) == 2
    assert "line 4" in capsys.readouterr().err


def test_m_flag_rejected_for_theorem_1(capsys):
    assert main(["generate", "--theorem", "1", "--n", "9", "--m", "2"]) == 2


def test_help_exits_cleanly(capsys):
    assert main(["--help"]) == 0
    assert "richdist" in capsys.readouterr().out
