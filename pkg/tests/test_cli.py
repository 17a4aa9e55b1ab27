import io
from pathlib import Path

import pytest

from polaris.cli import main

GOLDEN = Path(__file__).parent / "golden"
GOOD = "space X = P1\nchain a in X = (whole, 1/(z*(z - 1))*dz)\nboundary a\nhp X\n"


@pytest.fixture
def good(tmp_path):
    p = tmp_path / "good.pol"
    p.write_text(GOOD)
    return p


def test_machine_format_is_result_lines_only(good, capsys):
    assert main(["run", str(good), "--format", "machine"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines == ["RESULT boundary (2πi)*[-(point(0),1) + (point(1),1)]",
                     "RESULT hp HP_0=1, HP_1=0"]


def test_text_format_echoes_statements(good, capsys):
    assert main(["run", str(good)]) == 0
    out = capsys.readouterr().out
    assert "> boundary a" in out and "RESULT boundary" in out


def test_errors_set_exit_code(tmp_path, capsys):
    p = tmp_path / "bad.pol"
    p.write_text("space X = P2\neuler X\nresidue nope along x\n")
    assert main(["run", str(p), "--format", "machine"]) == 1
    captured = capsys.readouterr()
    assert captured.out.startswith("ERROR euler UndeterminedHomology:")
    assert f"{p}:3:9: error: undefined name 'nope'" in captured.err


def test_check_only_parses(good, tmp_path, capsys):
    assert main(["check", str(good)]) == 0
    assert capsys.readouterr().out.strip() == "OK 4 statements"
    bad = tmp_path / "bad.pol"
    bad.write_text("space M = P4\n")
    assert main(["check", str(bad)]) == 1
    assert ":1:11: error: unknown space 'P4'" in capsys.readouterr().err


def test_stdin(monkeypatch, capsys):
    monkeypatch.setattr("sys.stdin", io.StringIO(GOOD))
    assert main(["run", "-", "--format", "machine"]) == 0
    assert capsys.readouterr().out.count("RESULT") == 2


def test_missing_file(capsys):
    assert main(["run", "/nonexistent/x.pol"]) == 2


def test_seed_makes_verify_reproducible(tmp_path, capsys):
    p = tmp_path / "v.pol"
    p.write_text("verify residue-theorem 5\nverify d2 3\n")
    runs = []
    for seed in ("3", "3", "4"):
        main(["run", str(p), "--format", "machine", "--seed", seed])
        runs.append(capsys.readouterr().out)
    assert runs[0] == runs[1]
    assert all("RESULT verify" in r for r in runs)


@pytest.mark.parametrize("path", sorted(GOLDEN.glob("*.pol")), ids=lambda p: p.stem)
def test_golden(path, capsys):
    code = main(["run", str(path), "--format", "machine", "--seed", "7"])
    assert capsys.readouterr().out == path.with_suffix(".out").read_text()
    assert code == (1 if "ERROR" in path.with_suffix(".out").read_text() else 0)
