import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from builders import chain, mp, rf, top
from polaris import (Curve, PolarChain, RelativeContext, boundary, boundary_squared, catalog_space, graph,
                     hp0_class, hp_report, hypersurface, normalize, point, polar_euler, reduce_relative,
                     tau, whole)
from polaris.errors import NotAdmissible, UndeterminedHomology
from polaris.verify import random_one_chain, random_two_chain

P2 = catalog_space("P2")
C0 = P2.chart0
LINE_FORM = top("x", "1/(x*(x - 1))", ["x", "x - 1"])
seeds = st.integers(0, 10**6)
scalars = st.sampled_from([1, -1, 2, "1/3", "2 + I", "tau"])


def line_chain():
    return chain(graph(C0, ["x"], {"x": rf("x"), "y": rf("2*x + 1")}), LINE_FORM)


def test_presentations_of_one_line_agree():
    as_hyp = chain(hypersurface(C0, mp("y - 2*x - 1"), "y"), LINE_FORM)
    assert line_chain() == as_hyp
    assert str(line_chain()) == "[(graph(x; x=x, y=2*x + 1),1/(x^2 - x)*dx)]"


def test_boundary_of_line():
    d = boundary(line_chain())
    assert str(d) == "(2πi)*[-(point(0,1),1) + (point(1,3),1)]"
    assert hp0_class(d).is_zero()
    assert boundary(d).is_zero()


@settings(max_examples=15, deadline=None)
@given(seeds)
def test_normalize_idempotent(seed):
    c = random_one_chain(random.Random(seed))
    n = normalize(c)
    assert normalize(n) == n and (c + c - c) == c
    assert (c - c).is_zero()


@settings(max_examples=12, deadline=None)
@given(seeds, seeds, scalars, scalars)
def test_boundary_is_linear(s1, s2, a, b):
    rng = random.Random(s1)
    c1 = random_one_chain(rng, "P2")
    c2 = random_one_chain(random.Random(s2), "P2")
    a, b = rf(a), rf(b)
    assert boundary(c1.scale(a) + c2.scale(b)) == boundary(c1).scale(a) + boundary(c2).scale(b)


@settings(max_examples=8, deadline=None)
@given(seeds)
def test_random_two_chains_satisfy_d2(seed):
    assert boundary_squared(random_two_chain(random.Random(seed))).is_zero()


@settings(max_examples=15, deadline=None)
@given(seeds)
def test_hp0_of_boundaries_vanishes(seed):
    assert hp0_class(boundary(random_one_chain(random.Random(seed)))).is_zero()


def test_boundary_carries_tau():
    d = boundary(chain(whole(catalog_space("P1")), top("z", "1/z", ["z", "inf:z"])))
    assert [t.value() for t in d] == [tau(), -tau()] or [t.value() for t in d] == [-tau(), tau()]


def test_reduce_relative():
    d = boundary(line_chain())
    kept = reduce_relative(d, RelativeContext([point(C0, (0, 1))]))
    assert str(kept) == "(2πi)*[(point(1,3),1)]"
    assert reduce_relative(d, RelativeContext([hypersurface(C0, mp("y - 2*x - 1"), "y")])).is_zero()
    assert reduce_relative(line_chain(), RelativeContext([hypersurface(C0, mp("y"))])) == line_chain()


def test_hp0_needs_points():
    with pytest.raises(NotAdmissible):
        hp0_class(line_chain())
    assert hp0_class(PolarChain(P2)).is_zero()


@pytest.mark.parametrize("g", range(5))
def test_curve_reports(g):
    r = hp_report(Curve(g))
    assert r.complete and r.dims == {0: 1, 1: g}
    assert polar_euler(Curve(g)) == 1 - g


def test_catalog_reports():
    assert hp_report("P1").dims == {0: 1, 1: 0} and polar_euler("P1") == 1
    r = hp_report("P2")
    assert not r.complete and r.dims == {0: 1, 2: 0}
    with pytest.raises(UndeterminedHomology):
        polar_euler("P1xP1")
