"""Small constructors shared by the test modules."""

from __future__ import annotations

import random
from fractions import Fraction

import sympy as sp

from polaris import (DifferentialForm, MultiPoly, PolarChain, PolarOrientation, PrimeChain,
                     RationalFunction, catalog_space, graph, hypersurface, infinity, point, pole,
                     whole)
from polaris.algebra import GaussianRational, from_sympy_expr

R = RationalFunction
z = sp.Symbol("z")


def rf(expr) -> RationalFunction:
    return from_sympy_expr(sp.sympify(expr))


def mp(expr) -> MultiPoly:
    r = rf(expr)
    assert r.is_polynomial()
    return r.num


def top(coords, expr, poles=None) -> DifferentialForm:
    coords = tuple(coords.split()) if isinstance(coords, str) else tuple(coords)
    ps = None
    if poles is not None:
        ps = [infinity(p[4:]) if p.startswith("inf:") else pole(mp(p)) for p in poles]
    return DifferentialForm.top(coords, rf(expr), poles=ps)


def chain(variety, form, coefficient=1) -> PolarChain:
    return PolarChain.of(PrimeChain.from_presentation(variety, form, coefficient=coefficient))


def dlog_orientation(name: str) -> PolarOrientation:
    """``mu = dlog`` of every affine coordinate; nowhere vanishing on the catalog spaces."""
    space = catalog_space(name)
    coords = space.chart0.coordinates
    expr = "1/(" + "*".join(coords) + ")"
    return PolarOrientation(space, top(coords, expr))


def gaussian(rng: random.Random, height: int = 3, imaginary: bool = True) -> GaussianRational:
    re = Fraction(rng.randint(-height, height), rng.randint(1, 2))
    im = Fraction(rng.randint(-height, height), rng.randint(1, 2)) if imaginary else Fraction(0)
    return GaussianRational(re, im)


def to_sp(g: GaussianRational):
    return sp.Rational(g.re.numerator, g.re.denominator) + sp.I * sp.Rational(g.im.numerator,
                                                                               g.im.denominator)


def random_p1_expr(rng: random.Random, finite: int, at_infinity: bool, quadratic: bool = False):
    """``sum r_i/(z - a_i)`` (plus an optional irreducible quadratic pole) as a sympy expression."""
    if finite == 1 and not quadratic:
        at_infinity = True                  # one residue cannot cancel
    while True:
        pts = set()
        while len(pts) < finite:
            pts.add(to_sp(gaussian(rng)))
        pts = sorted(pts, key=str)
        res = [to_sp(gaussian(rng)) or 1 for _ in pts]
        expr = sum(r / (z - a) for r, a in zip(res, pts))
        lead = sum(res)                     # residue at infinity is minus the 1/z coefficient
        if quadratic:
            m, s = rng.choice([2, 3, -2, 5]), rng.randint(-3, 3)
            expr += (s * z + rng.randint(1, 3)) / (z**2 - m)
            lead += s
        if (sp.expand(lead) != 0) == at_infinity:
            return sp.together(expr)
