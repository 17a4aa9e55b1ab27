import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from builders import mp, rf, top
from oracles import residue_at
from polaris import (DifferentialForm, infinity, p1_residue_sum, poincare_residue, point_residue, pole,
                     repeated_residue, residue_all)
from polaris.algebra import to_sympy_expr
from polaris.errors import ComponentNotDeclared, NotAdmissible, NotTopDegree

Z = sp.Symbol("z")


def test_worked_example_signs():
    w = top("x y", "1/(x*y)")
    assert poincare_residue(w, pole(mp("x"))) == top("y", "-1/y")
    assert poincare_residue(w, pole(mp("y"))) == top("x", "1/x")
    assert repeated_residue(w, pole(mp("x")), pole(mp("y"))).top_coefficient() == rf("1")
    assert repeated_residue(w, pole(mp("y")), pole(mp("x"))).top_coefficient() == rf("-1")


def test_quadratic_pole_gives_class_modulo():
    r = poincare_residue(top("z", "1/(z**2 + 2)", ["z**2 + 2"]), pole(mp("z**2 + 2")))
    assert r.relation is not None and str(r.relation[0]) == "z^2 + 2"
    assert r.top_coefficient() == rf("-z/4")      # 1/(2z) = -z/4 modulo z^2 + 2


def test_residue_at_infinity():
    w = top("z", "1/(z*(z - 1))", ["z", "z - 1", "inf:z"])
    assert poincare_residue(w, infinity("z")).top_coefficient() == rf("0")
    w = top("z", "3/z", ["z", "inf:z"])
    assert poincare_residue(w, infinity("z")).top_coefficient() == rf("-3")


def test_residue_errors():
    with pytest.raises(NotTopDegree):
        poincare_residue(DifferentialForm.scalar(("z",), rf("1/z")), pole(mp("z")))
    with pytest.raises(ComponentNotDeclared):
        poincare_residue(top("z", "1/z", ["z", "inf:z"]), pole(mp("z - 5")))
    with pytest.raises(NotAdmissible):
        residue_all(top("z", "1/z**2"))


def test_residue_all_sums_to_zero_on_p1():
    w = top("z", "(z + 3)/(z*(z - 1)*(z + 1))")
    values = [r.top_coefficient() for _, r in residue_all(w)]
    assert sum(values[1:], values[0]).is_zero()
    assert p1_residue_sum(w).is_zero()


laurent = st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(1, 4),
                    st.lists(st.integers(-4, 4), min_size=1, max_size=4))


@settings(max_examples=40, deadline=None)
@given(laurent)
def test_point_residue_matches_sympy(case):
    a, b, m, num = case
    expr = sum(c * Z**k for k, c in enumerate(num)) / ((Z - a) ** m * (Z - b - 7))
    G = rf(expr)
    for z0, mine in ((a, point_residue(G, "z", a)), (sp.oo, point_residue(G, "z", None))):
        assert sp.simplify(to_sympy_expr(mine) - residue_at(expr, Z, z0)) == 0
