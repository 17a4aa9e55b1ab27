import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from builders import chain, dlog_orientation, mp, rf, top
from polaris import (catalog_space, graph, hypersurface, intersection_number, intersection_product, linking_number,
                     whole)
from polaris.errors import BoundaryHit, NotABoundingChain, NotAdmissible

Q2 = catalog_space("P1xP1")
MU = dlog_orientation("P1xP1")
vals = st.integers(-4, 4).filter(bool)
forms = st.sampled_from(["1/{v}", "2/({v} - 7)", "({v} + 1)/({v}*({v} - 6))", "-1/(3*{v})"])


def vertical(a, f):
    return chain(hypersurface(Q2.chart0, mp(f"x - {a}")), top("y", f.format(v="y")))


def horizontal(b, g):
    return chain(hypersurface(Q2.chart0, mp(f"y - {b}")), top("x", g.format(v="x")))


def oracle(a, f, b, g):
    """alpha(d/dy) beta(d/dx) / mu(d/dy, d/dx) at (a, b), with mu = dx^dy/(xy)."""
    fb = rf(f.format(v="y")).subs({"y": rf(b)})
    ga = rf(g.format(v="x")).subs({"x": rf(a)})
    return fb * ga * rf(-a * b)


@settings(max_examples=25, deadline=None)
@given(vals, forms, vals, forms)
def test_line_pairs_match_oracle(a, f, b, g):
    A, B = vertical(a, f), horizontal(b, g)
    assert intersection_number(A, B, MU).value == oracle(a, f, b, g)


@settings(max_examples=15, deadline=None)
@given(vals, forms, vals, forms)
def test_graded_symmetry(a, f, b, g):
    A, B = vertical(a, f), horizontal(b, g)
    assert intersection_number(B, A, MU).value == -intersection_number(A, B, MU).value


@settings(max_examples=15, deadline=None)
@given(vals, vals, vals, forms, forms)
def test_bilinear(a1, a2, b, f, g):
    assume(a1 != a2)
    A1, A2, B = vertical(a1, f), vertical(a2, f), horizontal(b, g)
    c = rf("2 + I")
    lhs = intersection_number(A1.scale(c) + A2, B, MU).value
    assert lhs == c * intersection_number(A1, B, MU).value + intersection_number(A2, B, MU).value


def test_disjoint_cycles_give_zero():
    assert intersection_number(vertical(2, "1/{v}"), vertical(3, "1/{v}"), MU).value.is_zero()


def test_point_on_a_pole_is_rejected():
    with pytest.raises(BoundaryHit):
        intersection_number(vertical(2, "1/({v} - 3)"), horizontal(3, "1/{v}"), MU)


def test_dimension_mismatch():
    with pytest.raises(NotAdmissible):
        intersection_number(vertical(2, "1/{v}"), chain(whole(Q2), top("x y", "1/(x*y)")), MU)


def test_product_of_surfaces_is_a_curve():
    Q3 = catalog_space("P1xP1xP1")
    mu = dlog_orientation("P1xP1xP1")
    A = chain(hypersurface(Q3.chart0, mp("x - 2")), top("y z", "1/(y*z)"))
    B = chain(hypersurface(Q3.chart0, mp("y - 3")), top("x z", "1/(x*z)"))
    cycle = intersection_product(A, B, mu).cycle
    assert cycle.dimension == 1
    assert str(cycle) == "[-(graph(z; x=2, y=3, z=z),1/z*dz)]"


def test_linking_rejects_a_wrong_bounding_chain():
    Q3 = catalog_space("P1xP1xP1")
    mu = dlog_orientation("P1xP1xP1")
    t = rf("t")
    C1 = chain(graph(Q3.chart0, ["t"], {"x": t, "y": t, "z": rf(5)}), top("t", "1/t"))
    C2 = chain(graph(Q3.chart0, ["z"], {"x": rf(9), "y": rf(4), "z": rf("z")}), top("z", "-1/z"))
    wrong = chain(hypersurface(Q3.chart0, mp("y - 4")), top("x z", "2/(tau*(x - 9)*z)"))
    with pytest.raises(NotABoundingChain):
        linking_number(C1, C2, wrong, mu)
    with pytest.raises(NotAdmissible):
        linking_number(C1, C2, wrong, dlog_orientation("P1xP1"))
