"""Random instances and property checks behind the ``verify`` session command.

Every generator takes a :class:`random.Random`, so a seed reproduces a run.
"""

from __future__ import annotations

import random
from typing import Callable, Dict, List, Tuple

from .algebra import GaussianRational, MultiPoly, RationalFunction
from .chains import PolarChain, PrimeChain, boundary, boundary_squared, hp0_class
from .forms import DifferentialForm, pole
from .pushforward import check_residue_commute, pullback, pushforward
from .residue import p1_residue_sum, repeated_residue
from .spaces import catalog_space, graph, hypersurface, whole

Z = RationalFunction.var("z")


def _distinct(rng: random.Random, k: int, lo=-6, hi=6) -> List[int]:
    return rng.sample(range(lo, hi + 1), k)


def _nonzero(rng: random.Random, lo=-5, hi=5) -> int:
    return rng.choice([v for v in range(lo, hi + 1) if v])


def random_p1_form(rng: random.Random, poles: int = 3, at_infinity: bool = True,
                   gaussian: bool = False) -> DifferentialForm:
    """``sum r_i/(z - a_i) dz`` with simple poles; ``sum r_i != 0`` puts one at infinity."""
    at_infinity = at_infinity or poles == 1
    while True:
        a = _distinct(rng, poles)
        r = [_nonzero(rng) for _ in a]
        if gaussian:
            r = [GaussianRational(x, _nonzero(rng)) for x in r]
        total = sum((RationalFunction.const(x) for x in r), RationalFunction())
        if total.is_zero() != at_infinity:
            break
    g = sum((RationalFunction.const(x) / (Z - ai) for x, ai in zip(r, a)), RationalFunction())
    return DifferentialForm(("z",), {(0,): g}, degree=1)


def random_map(rng: random.Random, max_degree: int = 3) -> RationalFunction:
    """A separable rational function of ``z`` of degree 1..max_degree."""
    while True:
        d = rng.randint(1, max_degree)
        num = sum((RationalFunction.const(rng.randint(-3, 3)) * Z ** k for k in range(d)),
                  RationalFunction()) + Z ** d
        if rng.random() < 0.4:
            den = Z - rng.randint(-4, 4)
            F = num / den
        else:
            F = num
        if max(F.num.degree("z"), F.den.degree("z")) >= 1:
            return F


def random_surface_form(rng: random.Random) -> Tuple[DifferentialForm, int, int]:
    a, b = rng.randint(-4, 4), rng.randint(-4, 4)
    x, y = RationalFunction.var("x"), RationalFunction.var("y")
    g = RationalFunction.const(_nonzero(rng)) / ((x - a) * (y - b))
    return DifferentialForm(("x", "y"), {(0, 1): g}, degree=2), a, b


def random_one_chain(rng: random.Random, space_name: str = None) -> PolarChain:
    """Random admissible 1-chains: forms on the whole line, or sums of lines
    and conics in the plane or a product of lines carrying 1-forms with simple poles."""
    space = catalog_space(space_name or rng.choice(["P1", "P2", "P1xP1"]))
    if space.label == "P1":
        return PolarChain(space, [
            PrimeChain.from_presentation(whole(space), random_p1_form(rng, rng.randint(2, 4), rng.random() < 0.6),
                                         coefficient=_nonzero(rng, -2, 2))
            for _ in range(rng.randint(1, 2))])
    ch = space.chart0
    t = RationalFunction.var("t")
    terms = []
    for _ in range(rng.randint(1, 2)):
        kind = rng.random()
        if kind < 0.6 or space.label != "P2":
            al, be = _nonzero(rng, -3, 3), rng.randint(-3, 3)
            ga, de = _nonzero(rng, -3, 3), rng.randint(-3, 3)
            V = graph(ch, ["t"], {"x": al * t + be, "y": ga * t + de})
            var = t
            coords = ("t",)
        else:
            c = _nonzero(rng, -2, 2)
            V = hypersurface(ch, MultiPoly.var("y") - c * MultiPoly.var("x") ** 2)
            var = RationalFunction.var("x")
            coords = ("x",)
        pts = _distinct(rng, rng.randint(2, 3), -4, 4)
        g = sum((RationalFunction.const(_nonzero(rng)) / (var - p) for p in pts), RationalFunction())
        omega = DifferentialForm(coords, {(0,): g}, degree=1)
        terms.append(PrimeChain.from_presentation(V, omega, coefficient=_nonzero(rng, -2, 2)))
    return PolarChain(space, terms)


def random_two_chain(rng: random.Random) -> PolarChain:
    space = catalog_space(rng.choice(["P2", "P1xP1"]))
    omega, _, _ = random_surface_form(rng)
    return PolarChain.of(PrimeChain.from_presentation(whole(space), omega))


# ---------------------------------------------------------------------------
# Properties


def _residue_theorem(rng):
    omega = random_p1_form(rng, rng.randint(2, 4), rng.random() < 0.7, rng.random() < 0.3)
    return p1_residue_sum(omega).is_zero()


def _d2(rng):
    return boundary_squared(random_two_chain(rng)).is_zero()


def _antisymmetry(rng):
    omega, a, b = random_surface_form(rng)
    X = pole(MultiPoly.var("x") - a)
    Y = pole(MultiPoly.var("y") - b)
    return repeated_residue(omega, X, Y).scale(-1) == repeated_residue(omega, Y, X)


def _commute(rng):
    F = random_map(rng)
    omega = random_p1_form(rng, rng.randint(1, 3), rng.random() < 0.5)
    poles = [RationalFunction.const(-RationalFunction(p).num.constant_value())
             for p in _finite_poles(omega)]
    return all(check_residue_commute(F, omega, V0).equal for V0 in poles + [None])


def _finite_poles(omega: DifferentialForm):
    from .algebra import factor_poly

    den = omega.top_coefficient().den
    return [f - MultiPoly.var("z") for f, _ in factor_poly(den) if f.degree("z") == 1]


def _degree(rng):
    F = random_map(rng)
    omega = random_p1_form(rng, rng.randint(1, 3), rng.random() < 0.5)
    d = max(F.num.degree("z"), F.den.degree("z"))
    return pushforward(F, pullback(F, omega)) == omega.scale(d)


def _class0(rng):
    return hp0_class(boundary(random_one_chain(rng))).is_zero()


PROPERTIES: Dict[str, Callable[[random.Random], bool]] = {
    "residue-theorem": _residue_theorem,
    "d2": _d2,
    "antisymmetry": _antisymmetry,
    "commute": _commute,
    "degree": _degree,
    "class0": _class0,
}


def verify(name: str, count: int, seed: int = 0) -> Tuple[int, int]:
    """Run ``count`` random instances of a property; returns (passed, count)."""
    rng = random.Random(f"{name}:{seed}")
    check = PROPERTIES[name]
    passed = sum(bool(check(rng)) for _ in range(count))
    return passed, count
