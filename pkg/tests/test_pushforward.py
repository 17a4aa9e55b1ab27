import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from builders import rf, top
from oracles import pushforward_value
from polaris import check_residue_commute, pullback, pushforward
from polaris.algebra import to_sympy_expr
from polaris.errors import ConstantMap

Z = sp.Symbol("z")
MAPS = ["z**2", "z**3 - z", "(z**2 + 1)/z", "1/(z - 1)", "(z**2 - 2)/(z + 3)"]
FORMS = ["1/z", "1/(z*(z - 1))", "(z + 2)/((z - 3)*(z + 1))", "1/(z**2 + 1)"]


def test_square_kills_dz():
    assert pushforward(rf("z**2"), top("z", "1")).is_zero()
    assert pushforward(rf("z**2"), top("z", "1/z")) == top("z", "1/z")


@pytest.mark.parametrize("F", MAPS)
@pytest.mark.parametrize("g", FORMS)
def test_pushforward_matches_root_sum(F, g):
    pushed = to_sympy_expr(pushforward(rf(F), top("z", g)).top_coefficient())
    for w0 in (sp.Rational(7, 3), 5 + 2 * sp.I):
        exact = sp.N(pushed.subs(Z, w0), 40)
        assert abs(exact - pushforward_value(sp.sympify(F), sp.sympify(g), Z, w0)) < 1e-25


LOW = ["z**2", "1/(z - 1)", "(z**2 - 2)/(z + 3)"]


@settings(max_examples=12, deadline=None)
@given(st.sampled_from(LOW), st.sampled_from(LOW), st.sampled_from(FORMS))
def test_pushforward_is_functorial(F, G, g):
    composite = rf(sp.sympify(F).subs(Z, sp.sympify(G)))
    omega = top("z", g)
    assert pushforward(composite, omega) == pushforward(rf(F), pushforward(rf(G), omega))


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(MAPS), st.sampled_from(FORMS), st.sampled_from(["z", "1/(z - 5)", "z**2 + 1"]))
def test_projection_formula(F, g, phi):
    f, omega = rf(F), top("z", g)
    lhs = pushforward(f, omega.scale(rf(phi).subs({"z": f})))
    assert lhs == pushforward(f, omega).scale(rf(phi))


@pytest.mark.parametrize("F,degree", [("z**2", 2), ("z**3 - z", 3), ("(z**2 + 1)/z", 2), ("1/(z - 1)", 1)])
def test_push_of_pull_is_degree(F, degree):
    eta = top("z", "1/(z*(z - 4))")
    assert pushforward(rf(F), pullback(rf(F), eta)) == eta.scale(degree)


def test_commutes_with_residue_at_infinity():
    assert check_residue_commute(rf("(z**2 + 1)/z"), top("z", "1/(z*(z - 1))"), None)


def test_constant_map_rejected():
    with pytest.raises(ConstantMap):
        pushforward(rf("3"), top("z", "1/z"))
