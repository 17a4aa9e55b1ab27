from pathlib import Path

import pytest

from polaris import parse

GOLDEN = sorted((Path(__file__).parent / "golden").glob("*.pol"))


@pytest.mark.parametrize("path", GOLDEN, ids=lambda p: p.stem)
def test_render_round_trip(path):
    first = parse(path.read_text())
    assert not first.diagnostics
    text = first.render()
    again = parse(text)
    assert not again.diagnostics
    assert again.render() == text
    assert len(again.statements) == len(first.statements)


def test_one_diagnostic_per_statement_and_recovery():
    s = parse("space M = P1xP1\n"
              "chain a in M = (whole, q*dx^^dy)\n"
              "chain b in M = (whole, 1/(x*y)*dx^dy)\n"
              "residue b x\n"
              "foo b\n")
    assert [str(d) for d in s.diagnostics] == [
        "2:24: error: unknown symbol 'q'",
        "4:11: error: expected 'along', found 'x'",
        "5:1: error: unknown statement 'foo'",
    ]
    assert [type(t).__name__ for t in s.statements] == ["SpaceStmt", "ChainStmt"]


@pytest.mark.parametrize("text,where,message", [
    ("space M = P1xP1\nchain a in M = (whole, 1/(x*y)*dx^^dy)\n", "2:35", "expected a differential after '^'"),
    ("space M = P4\n", "1:11", "unknown space 'P4'"),
    ("space M = P1\nresidue a along z\n", "2:9", "undefined name 'a'"),
])
def test_diagnostic_spans(text, where, message):
    [d] = parse(text).diagnostics
    assert str(d).startswith(f"{where}: error: {message}")


def test_caret_is_power_between_scalars():
    s = parse("space L = P1\nchain w in L = (whole, 1/(z^2 + 1)*dz)\n")
    assert not s.diagnostics
    assert "z^2 + 1" in s.render()


def test_comments_and_bracket_newlines():
    s = parse("# a line\nspace L = P1  # trailing\n"
              "chain w in L = (whole, 1/(z*(z - 1))*dz poles [z,\n    z - 1])\n")
    assert not s.diagnostics and len(s.statements) == 2


def test_tau_literal_and_keyword_agree():
    a = parse("space L = P1\nchain w in L = (whole, 2πi/z*dz)\n").render()
    b = parse("space L = P1\nchain w in L = (whole, tau/z*dz)\n").render()
    assert a == b
