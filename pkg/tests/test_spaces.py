import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from polaris import catalog_space, graph, hypersurface, point, transition_point, validate_smooth, whole
from polaris.algebra import GaussianRational, MultiPoly
from polaris.errors import NotMonic, OutOfOverlap, PointNotOnVariety, UnknownSpace, UnpresentableVariety
from polaris.spaces import contains_point, hypersurface_in_chart, parametrize, tangent_frame

CATALOG = ["P1", "P2", "P3", "P1xP1", "P1xP1xP1"]
x, y, z = (MultiPoly.var(v) for v in "xyz")
small = st.builds(GaussianRational, st.fractions(-5, 5, max_denominator=3),
                  st.fractions(-5, 5, max_denominator=3))


def test_catalog_shapes():
    assert [len(catalog_space(n).charts()) for n in CATALOG] == [2, 3, 4, 4, 8]
    assert catalog_space("P2").chart(1).coordinates == ("s_1", "y_1")
    assert catalog_space("P1xP1").chart((1, 1)).coordinates == ("u", "v")
    with pytest.raises(UnknownSpace):
        catalog_space("P4")


@pytest.mark.parametrize("name", CATALOG)
@settings(max_examples=25, deadline=None)
@given(data=st.data())
def test_transition_round_trip(name, data):
    space = catalog_space(name)
    charts = space.charts()
    a = data.draw(st.sampled_from(charts))
    b = data.draw(st.sampled_from(charts))
    P = tuple(data.draw(small) for _ in a.coordinates)
    try:
        Q = transition_point(P, a, b)
    except OutOfOverlap:
        assume(False)
    assert transition_point(Q, b, a) == P


def test_transition_out_of_overlap():
    P2 = catalog_space("P2")
    assert transition_point((2, 3), P2.chart(0), P2.chart(1)) == (GaussianRational(1, 0) / 2,
                                                                    GaussianRational(3, 0) / 2)
    with pytest.raises(OutOfOverlap):
        transition_point((0, 3), P2.chart(0), P2.chart(1))


def test_conic_closure_and_smoothness():
    P2 = catalog_space("P2")
    V = hypersurface(P2.chart0, y - x**2)
    assert str(hypersurface_in_chart(V.h, P2.chart(0), P2.chart(1))) == "s_1*y_1 - 1"
    assert validate_smooth(V)
    cusp = hypersurface(P2.chart0, y**2 - x**3, strict=False)
    report = validate_smooth(cusp)
    assert not report and "singular" in report.reasons[0]
    assert not validate_smooth(hypersurface(P2.chart0, (y - x) ** 2, variable="y"))


def test_tangent_frames():
    P2 = catalog_space("P2")
    V = hypersurface(P2.chart0, y - x**2)
    [v] = tangent_frame(V, (1, 1))
    assert v == (GaussianRational(1), GaussianRational(2))
    t = MultiPoly.var("t")
    G = graph(P2.chart0, ["t"], {"x": t, "y": t**3})
    assert tangent_frame(G, (2, 8)) == [(GaussianRational(1), GaussianRational(12))]
    assert len(tangent_frame(whole(P2), (0, 0))) == 2
    with pytest.raises(PointNotOnVariety):
        tangent_frame(V, (1, 2))


def test_membership():
    S = catalog_space("P1xP1xP1")
    plane = hypersurface(S.chart0, y - 3)
    assert contains_point(plane, (7, 3, 1)) and not contains_point(plane, (7, 2, 1))
    assert contains_point(point(S.chart0, (1, 2, 3)), (1, 2, 3))


def test_parametrizations():
    P2 = catalog_space("P2")
    par = parametrize(hypersurface(P2.chart0, y - x**2))
    assert par.source.label == "P1"
    assert [str(p) for p in par.hom[0]] == ["1", "x", "x^2"]
    assert parametrize(point(P2.chart0, (1, 2))).source.dimension == 0
    with pytest.raises(UnpresentableVariety):
        parametrize(hypersurface(P2.chart0, y**2 - x**3 - 1, variable="y"))
    with pytest.raises(NotMonic):
        hypersurface(P2.chart0, x * y - 1, variable="y")
