"""Catalog ambient spaces, their affine charts, and subvariety presentations.

Every catalog space is a product of projective spaces.  A chart picks one
nonvanishing homogeneous coordinate per factor; chart ``(0, ..., 0)`` uses the
affine names given at construction.  For a ``P^1`` factor with coordinate
``c`` the other chart uses :func:`inverse_name`; for a ``P^d`` factor
(``d >= 2``) chart ``j`` uses ``s_j`` for ``X0/Xj`` and ``<name>_j`` for the
remaining ratios.

Maps into a space are stored as *homogeneous tuples*: one tuple of
polynomials per factor, cleared of denominators and common factors, so points
at infinity are as concrete as finite ones.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .algebra import (GaussianRational, MultiPoly, RationalFunction, factor_poly,
                      gcd_many, has_common_zero, poly_gcd, poly_exquo)
from .errors import (OutOfOverlap, PointNotOnVariety, SingularPoint, UnknownSpace,
                     UndecidableSmoothness, BasePoint)

_INVERSE = {"z": "w", "x": "u", "y": "v"}


def inverse_name(c: str) -> str:
    return _INVERSE.get(c, f"{c}_inf")


@dataclass(frozen=True)
class Factor:
    dim: int
    names: Tuple[str, ...]

    def chart_names(self, j: int) -> Tuple[str, ...]:
        if j == 0:
            return self.names
        if self.dim == 1:
            return (inverse_name(self.names[0]),)
        return tuple(f"s_{j}" if i == 0 else f"{self.names[i - 1]}_{j}"
                     for i in range(self.dim + 1) if i != j)


@dataclass(frozen=True)
class AmbientSpace:
    """``ProjectiveSpace(n)`` or ``ProductOfLines(m)`` (``n, m <= 3``)."""

    kind: str
    factors: Tuple[Factor, ...]

    @property
    def dimension(self) -> int:
        return sum(f.dim for f in self.factors)

    @property
    def label(self) -> str:
        if self.kind == "ProjectiveSpace":
            return f"P{self.factors[0].dim}" if self.factors else "P0"
        return "x".join("P1" for _ in self.factors)

    @property
    def coordinates(self) -> Tuple[str, ...]:
        return self.chart0.coordinates

    @property
    def chart0(self) -> "Chart":
        return Chart(self, tuple(0 for _ in self.factors))

    def charts(self) -> List["Chart"]:
        ranges = [range(f.dim + 1) for f in self.factors]
        return [Chart(self, idx) for idx in itertools.product(*ranges)]

    def chart(self, index) -> "Chart":
        """Chart by index tuple; a bare int works for single-factor spaces."""
        return Chart(self, (index,) if isinstance(index, int) else tuple(index))

    def factor_of(self, coord: str) -> int:
        """Index of the factor whose chart-0 names contain ``coord``."""
        for k, f in enumerate(self.factors):
            if coord in f.names:
                return k
        raise KeyError(coord)

    def infinity_divisors(self) -> List[Tuple[int, "Chart", str]]:
        """``(factor, chart, coordinate)`` with the divisor at infinity of the
        factor given by ``coordinate = 0`` in ``chart``."""
        out = []
        for k, f in enumerate(self.factors):
            idx = [0] * len(self.factors)
            idx[k] = 1
            ch = Chart(self, tuple(idx))
            out.append((k, ch, ch.factor_coordinates(k)[0]))
        return out

    def __str__(self):
        return self.label


def projective_space(n: int, names: Optional[Sequence[str]] = None) -> AmbientSpace:
    if not 0 <= n <= 3 and names is None:
        raise UnknownSpace(f"P{n} is not in the catalog")
    if names is None:
        names = {0: (), 1: ("z",), 2: ("x", "y"), 3: ("x", "y", "z")}[n]
    names = tuple(names)
    if len(names) != n:
        raise ValueError("one name per affine coordinate")
    return AmbientSpace("ProjectiveSpace", (Factor(n, names),) if n else ())


def product_of_lines(m: int, names: Optional[Sequence[str]] = None) -> AmbientSpace:
    """``(P^1)^m``; the one-factor case is identified with ``P^1``."""
    if names is None:
        if not 1 <= m <= 3:
            raise UnknownSpace(f"(P1)^{m} is not in the catalog")
        names = ("x", "y", "z")[:m] if m > 1 else ("z",)
    names = tuple(names)
    if len(names) <= 1:
        return projective_space(len(names), names)
    return AmbientSpace("ProductOfLines", tuple(Factor(1, (c,)) for c in names))


def point_space() -> AmbientSpace:
    return projective_space(0)


CATALOG = {
    "P1": lambda: projective_space(1),
    "P2": lambda: projective_space(2),
    "P3": lambda: projective_space(3),
    "P1xP1": lambda: product_of_lines(2),
    "P1xP1xP1": lambda: product_of_lines(3),
}


def catalog_space(name: str) -> AmbientSpace:
    try:
        return CATALOG[name]()
    except KeyError:
        raise UnknownSpace(f"unknown space {name!r}") from None


@dataclass(frozen=True)
class Chart:
    space: AmbientSpace
    index: Tuple[int, ...]

    @property
    def coordinates(self) -> Tuple[str, ...]:
        return tuple(c for k in range(len(self.index)) for c in self.factor_coordinates(k))

    def factor_coordinates(self, k: int) -> Tuple[str, ...]:
        return self.space.factors[k].chart_names(self.index[k])

    def homogeneous(self) -> Tuple[Tuple[RationalFunction, ...], ...]:
        """Homogeneous coordinates of the generic chart point, per factor."""
        out = []
        for k, f in enumerate(self.space.factors):
            names = iter(self.factor_coordinates(k))
            j = self.index[k]
            out.append(tuple(RationalFunction.const(1) if i == j else RationalFunction.var(next(names))
                             for i in range(f.dim + 1)))
        return tuple(out)

    def affine_from_homogeneous(self, hom) -> Dict[str, RationalFunction]:
        """Chart coordinates as ratios of the given homogeneous tuples."""
        out = {}
        for k, f in enumerate(self.space.factors):
            j = self.index[k]
            names = iter(self.factor_coordinates(k))
            den = RationalFunction.coerce(hom[k][j])
            for i in range(f.dim + 1):
                if i != j:
                    out[next(names)] = RationalFunction.coerce(hom[k][i]) / den
        return out

    def transition_to(self, other: "Chart") -> Dict[str, RationalFunction]:
        """Each coordinate of this chart as a rational function of ``other``'s."""
        if other.space != self.space:
            raise ValueError("charts of different spaces")
        return self.affine_from_homogeneous(other.homogeneous())

    def is_chart0(self) -> bool:
        return not any(self.index)

    def __str__(self):
        return f"{self.space.label}[{','.join(map(str, self.index))}]"


# ---------------------------------------------------------------------------
# Homogeneous tuples


def normalize_tuple(entries: Sequence) -> Tuple[MultiPoly, ...]:
    """Clear denominators, cancel common factors, make the first nonzero
    entry's leading coefficient 1."""
    rfs = [RationalFunction.coerce(e) for e in entries]
    den = MultiPoly.const(1)
    for r in rfs:
        if not r.is_zero():
            g = poly_gcd(den, r.den)
            den = poly_exquo(den * r.den, g)
    polys = [poly_exquo(r.num * den, r.den) if not r.is_zero() else MultiPoly() for r in rfs]
    g = gcd_many(polys)
    if g.is_zero():
        raise BasePoint("homogeneous tuple is identically zero")
    if not g.is_constant():
        polys = [poly_exquo(p, g) for p in polys]
    lead = next(p for p in polys if not p.is_zero()).leading_coefficient()
    inv = lead.inverse()
    return tuple(p.scale(inv) for p in polys)


HomMap = Tuple[Tuple[MultiPoly, ...], ...]


def normalize_map(hom) -> HomMap:
    return tuple(normalize_tuple(t) for t in hom)


def substitute_map(hom: HomMap, mapping: Mapping[str, RationalFunction]) -> HomMap:
    """Substitute source coordinates; raises BasePoint if a factor collapses to zero."""
    out = []
    for t in hom:
        out.append(normalize_tuple([RationalFunction.coerce(p).subs(mapping) for p in t]))
    return tuple(out)


def map_is_constant(hom: HomMap) -> bool:
    return all(p.is_constant() for t in hom for p in t)


def point_key(hom: HomMap):
    return tuple(tuple(p.constant_value() for p in t) for t in hom)


def finite_chart(space: AmbientSpace, hom: HomMap) -> Chart:
    """First chart (per factor, smallest index) whose denominator is nonzero on the image."""
    idx = []
    for t in hom:
        idx.append(next(i for i, p in enumerate(t) if not p.is_zero()))
    return Chart(space, tuple(idx))


def map_to_chart(hom: HomMap, chart: Chart) -> Dict[str, RationalFunction]:
    return chart.affine_from_homogeneous(hom)


# ---------------------------------------------------------------------------
# Points


def transition_point(P: Sequence, source: Chart, target: Chart) -> Tuple[GaussianRational, ...]:
    """Coordinates of the same point in ``target``; OutOfOverlap if undefined."""
    values = dict(zip(source.coordinates, (RationalFunction.coerce(GaussianRational.coerce(c))
                                            for c in P)))
    out = []
    for name, expr in target.transition_to(source).items():
        den = expr.den.evaluate({k: v.num for k, v in values.items()})
        num = expr.num.evaluate({k: v.num for k, v in values.items()})
        if den.is_zero():
            raise OutOfOverlap(f"{name} is undefined at {tuple(P)} (chart {source} -> {target})")
        out.append(num.constant_value() / den.constant_value())
    return tuple(out)


def hypersurface_in_chart(h: MultiPoly, source: Chart, target: Chart) -> MultiPoly:
    """Closure of ``{h = 0}`` from ``source`` written in ``target`` coordinates."""
    if source == target:
        return h
    expr = RationalFunction(h).subs(source.transition_to(target))
    p = expr.num
    # strip the hyperplanes outside the source chart
    for k, j in enumerate(source.index):
        if target.index[k] == j:
            continue
        f = source.space.factors[k]
        names = target.factor_coordinates(k)
        # coordinate X_j / X_{target j} of the target chart
        pos = [i for i in range(f.dim + 1) if i != target.index[k]].index(j)
        u = MultiPoly.var(names[pos])
        while not p.is_zero():
            q = poly_exquo(p, u)
            if q is None:
                break
            p = q
    return p


# ---------------------------------------------------------------------------
# Subvariety and morphism presentations


@dataclass(frozen=True)
class SubvarietyPresentation:
    """Point | Graph | Hypersurface | Whole, written in one ambient chart."""

    chart: Chart
    kind: str
    coordinates: Tuple[GaussianRational, ...] = ()
    parameters: Tuple[str, ...] = ()
    assignments: Tuple[Tuple[str, RationalFunction], ...] = ()
    h: Optional[MultiPoly] = None
    variable: Optional[str] = None

    @property
    def dimension(self) -> int:
        n = self.chart.space.dimension
        return {"point": 0, "graph": len(self.parameters), "hypersurface": n - 1,
                "whole": n}[self.kind]

    @property
    def space(self) -> AmbientSpace:
        return self.chart.space

    def assignment_map(self) -> Dict[str, RationalFunction]:
        return dict(self.assignments)

    def __str__(self):
        from .render import render_presentation

        return render_presentation(self)


def point(chart: Chart, coords: Sequence) -> SubvarietyPresentation:
    coords = tuple(GaussianRational.coerce(c) if not isinstance(c, RationalFunction)
                   else c.constant_value() for c in coords)
    if len(coords) != len(chart.coordinates):
        raise ValueError("point needs one value per chart coordinate")
    return SubvarietyPresentation(chart, "point", coordinates=coords)


def graph(chart: Chart, parameters: Sequence[str], assignments: Mapping[str, object]) -> SubvarietyPresentation:
    missing = set(chart.coordinates) - set(assignments)
    if missing:
        raise ValueError(f"graph leaves coordinates unassigned: {sorted(missing)}")
    assigns = tuple((c, RationalFunction.coerce(assignments[c])) for c in chart.coordinates)
    for _, a in assigns:
        extra = set(a.variables) - set(parameters) - {"tau"}
        if extra:
            raise ValueError(f"assignment uses non-parameters {sorted(extra)}")
    return SubvarietyPresentation(chart, "graph", parameters=tuple(parameters), assignments=assigns)


def hypersurface(chart: Chart, h, variable: Optional[str] = None,
                 strict: bool = True) -> SubvarietyPresentation:
    """``{h = 0}``.  With ``strict=False`` a non-monic ``h`` is accepted
    (membership and smoothness still work; restriction does not)."""
    h = RationalFunction.coerce(h).as_polynomial() if not isinstance(h, MultiPoly) else h
    if variable is None:
        try:
            variable = monic_variable(h, chart.coordinates)
        except Exception:
            if strict:
                raise
            variable = None
    else:
        lc = h.leading_coefficient_in(variable)
        if h.degree(variable) <= 0 or not lc.is_constant():
            from .errors import NotMonic

            raise NotMonic(f"{h} is not monic in {variable}")
    return SubvarietyPresentation(chart, "hypersurface", h=h, variable=variable)


def whole(space: AmbientSpace) -> SubvarietyPresentation:
    return SubvarietyPresentation(space.chart0, "whole")


def monic_variable(h: MultiPoly, order: Sequence[str], linear_first: bool = True) -> str:
    """First coordinate in which ``h`` has a unit leading coefficient
    (degree-one choices preferred)."""
    cands = [v for v in order if h.degree(v) > 0 and h.leading_coefficient_in(v).is_constant()]
    if not cands:
        from .errors import NotMonic

        raise NotMonic(f"{h} is not monic in any of {tuple(order)}")
    if linear_first:
        lin = [v for v in cands if h.degree(v) == 1]
        if lin:
            return lin[0]
    return cands[0]


@dataclass(frozen=True)
class MorphismPresentation:
    """``Inclusion`` | ``IdentityOnImage`` | ``RationalSelfMapOfLine(F)``."""

    kind: str = "Inclusion"
    F: Optional[RationalFunction] = None
    variable: Optional[str] = None

    @property
    def degree(self) -> int:
        if self.kind != "RationalSelfMapOfLine":
            return 1
        return max(self.F.num.degree(self.variable), self.F.den.degree(self.variable))


INCLUSION = MorphismPresentation("Inclusion")


def rational_self_map(F, variable: str) -> MorphismPresentation:
    from .errors import ConstantMap

    F = RationalFunction.coerce(F)
    m = MorphismPresentation("RationalSelfMapOfLine", F, variable)
    if m.degree <= 0:
        raise ConstantMap(f"{F} is constant")
    return m


# ---------------------------------------------------------------------------
# Point membership, tangent frames, smoothness


def _values(chart: Chart, P) -> Dict[str, MultiPoly]:
    if isinstance(P, Mapping):
        return {k: MultiPoly.const(GaussianRational.coerce(v)) for k, v in P.items()}
    return {k: MultiPoly.const(GaussianRational.coerce(v)) for k, v in zip(chart.coordinates, P)}


def _eval(expr: RationalFunction, values: Mapping[str, MultiPoly]) -> GaussianRational:
    den = expr.den.evaluate(values)
    if den.is_zero():
        raise OutOfOverlap(f"{expr} is undefined at the point")
    return expr.num.evaluate(values).constant_value() / den.constant_value()


def graph_parameters_at(V: SubvarietyPresentation, P) -> Dict[str, GaussianRational]:
    """Parameter values of a graph point (read off or solved exactly)."""
    values = _values(V.chart, P)
    amap = V.assignment_map()
    params: Dict[str, GaussianRational] = {}
    for c, a in amap.items():
        if a.is_polynomial() and len(a.num.terms) == 1 and a.num.total_degree() == 1 \
                and a.variables[0] in V.parameters and a.num.leading_coefficient() == 1 * a.den.constant_value():
            params[a.variables[0]] = values[c].constant_value()
    if set(params) != set(V.parameters):
        import sympy

        from .algebra import from_sympy_expr, to_sympy_expr

        eqs = [to_sympy_expr((a - RationalFunction(values[c])).num) for c, a in amap.items()]
        sols = sympy.solve(eqs, [sympy.Symbol(p) for p in V.parameters], dict=True)
        if len(sols) != 1 or len(sols[0]) != len(V.parameters):
            raise PointNotOnVariety("cannot determine graph parameters at the point")
        params = {str(k): from_sympy_expr(v).constant_value() for k, v in sols[0].items()}
    for c, a in amap.items():
        if _eval(a, {k: MultiPoly.const(v) for k, v in params.items()}) != values[c].constant_value():
            raise PointNotOnVariety(f"point is not on {V}")
    return params


def contains_point(V: SubvarietyPresentation, P) -> bool:
    values = _values(V.chart, P)
    if V.kind == "whole":
        return True
    if V.kind == "point":
        return all(values[c].constant_value() == x for c, x in zip(V.chart.coordinates, V.coordinates))
    if V.kind == "hypersurface":
        return V.h.evaluate(values).is_zero()
    try:
        graph_parameters_at(V, P)
        return True
    except PointNotOnVariety:
        return False


def tangent_frame(V: SubvarietyPresentation, P) -> List[Tuple[GaussianRational, ...]]:
    """Basis of ``T_P V`` in ambient chart coordinates."""
    coords = V.chart.coordinates
    n = len(coords)
    if not contains_point(V, P):
        raise PointNotOnVariety(f"point is not on {V}")
    if V.kind == "point":
        return []
    if V.kind == "whole":
        return [tuple(GaussianRational(int(i == j)) for i in range(n)) for j in range(n)]
    values = _values(V.chart, P)
    if V.kind == "hypersurface":
        grad = [V.h.diff(c).evaluate(values).constant_value() for c in coords]
        order = [V.variable] + [c for c in coords if c != V.variable]
        piv = next((c for c in order if grad[coords.index(c)]), None)
        if piv is None:
            raise SingularPoint(f"all partials of {V.h} vanish at the point")
        p = coords.index(piv)
        frame = []
        for j, c in enumerate(coords):
            if j == p:
                continue
            vec = [GaussianRational(0)] * n
            vec[j] = GaussianRational(1)
            vec[p] = -grad[j] / grad[p]
            frame.append(tuple(vec))
        return frame
    params = graph_parameters_at(V, P)
    pv = {k: MultiPoly.const(v) for k, v in params.items()}
    amap = V.assignment_map()
    frame = [tuple(_eval(amap[c].diff(t), pv) for c in coords) for t in V.parameters]
    if _rank(frame) < len(frame):
        raise SingularPoint("graph Jacobian drops rank at the point")
    return frame


def _rank(rows) -> int:
    from .linalg import rank

    return rank([list(r) for r in rows])


@dataclass
class SmoothnessReport:
    smooth: bool
    reasons: List[str] = field(default_factory=list)

    def __bool__(self):
        return self.smooth


def validate_smooth(V: SubvarietyPresentation) -> SmoothnessReport:
    """Jacobi criterion on the closure of ``V`` in every chart of the ambient space."""
    if V.kind in ("point", "whole", "graph"):
        return SmoothnessReport(True)
    reasons = []
    for ch in V.space.charts():
        h = hypersurface_in_chart(V.h, V.chart, ch)
        if h.is_constant():
            continue
        if len(factor_poly(h)) != 1 or factor_poly(h)[0][1] != 1:
            if _squarefree_problem(h):
                reasons.append(f"{h} is not squarefree in chart {ch}")
                continue
        polys = [h] + [h.diff(c) for c in ch.coordinates]
        if has_common_zero(polys):
            reasons.append(f"singular point of {h} in chart {ch}")
    return SmoothnessReport(not reasons, reasons)


def _squarefree_problem(h: MultiPoly) -> bool:
    return any(k > 1 for _, k in factor_poly(h))


# ---------------------------------------------------------------------------
# Parametrizations: every presentation becomes a catalog source space with a
# homogeneous map into the ambient space.  The chain form lives on the
# source's chart-0 coordinates.


def chart_strata(space: AmbientSpace) -> List[Tuple[Chart, Tuple[str, ...]]]:
    """Charts paired with the coordinates that vanish on the points of the
    chart not covered by earlier charts.  The strata partition the space."""
    out = []
    for ch in space.charts():
        zeros = []
        for k, j in enumerate(ch.index):
            names = ch.factor_coordinates(k)
            others = [i for i in range(space.factors[k].dim + 1) if i != j]
            zeros.extend(names[pos] for pos, i in enumerate(others) if i < j)
        out.append((ch, tuple(zeros)))
    return out


def hom_in_chart(hom: HomMap, source: AmbientSpace, chart: Chart) -> HomMap:
    """Re-express a map given on the source chart 0 in another source chart."""
    if chart.is_chart0():
        return hom
    return substitute_map(hom, source.chart0.transition_to(chart))


def check_base_points(source: AmbientSpace, hom: HomMap) -> None:
    if source.dimension <= 1:
        return
    for ch in source.charts():
        for t in hom_in_chart(hom, source, ch):
            if all(p.is_constant() for p in t):
                continue
            if has_common_zero([p for p in t if not p.is_zero()]):
                raise BasePoint(f"map is undefined somewhere in source chart {ch}")


@dataclass(frozen=True)
class Parametrization:
    source: AmbientSpace
    hom: HomMap


def _affine_linear(r: RationalFunction) -> bool:
    return r.is_polynomial() and r.num.total_degree() <= 1


def parametrize(V: SubvarietyPresentation,
                morphism: Optional["MorphismPresentation"] = None) -> Parametrization:
    """Source space and homogeneous map realising ``V`` (and ``f``)."""
    from .errors import UnpresentableVariety

    ch = V.chart
    space = ch.space
    hom0 = ch.homogeneous()
    if V.kind == "whole":
        source = space
        hom = normalize_map(space.chart0.homogeneous())
        if morphism is not None and morphism.kind == "RationalSelfMapOfLine":
            if space.dimension != 1:
                raise UnpresentableVariety("rational self-maps are defined on P1 only")
            v = space.coordinates[0]
            F = morphism.F.rename({morphism.variable: v}) if morphism.variable != v else morphism.F
            hom = normalize_map(((F.den, F.num),))
        return Parametrization(source, hom)
    if morphism is not None and morphism.kind == "RationalSelfMapOfLine":
        raise UnpresentableVariety("rational self-maps apply to the whole line only")
    if V.kind == "point":
        sub = {c: RationalFunction.const(x) for c, x in zip(ch.coordinates, V.coordinates)}
        hom = normalize_map(tuple(tuple(e.subs(sub) for e in t) for t in hom0))
        return Parametrization(point_space(), hom)
    if V.kind == "graph":
        params = V.parameters
        amap = V.assignment_map()
        if len(params) <= 1:
            source = projective_space(len(params), params)
        elif space.kind == "ProjectiveSpace" and all(_affine_linear(a) for a in amap.values()):
            source = projective_space(len(params), params)
        else:
            source = product_of_lines(len(params), params)
        hom = normalize_map(tuple(tuple(e.subs(amap) for e in t) for t in hom0))
        check_base_points(source, hom)
        return Parametrization(source, hom)
    # hypersurface
    h, v = V.h, V.variable
    rest = tuple(c for c in ch.coordinates if c != v)
    if h.degree(v) != 1:
        raise UnpresentableVariety(
            f"{h} is not linear in {v}; only linear hypersurfaces have catalog parametrizations")
    lc = h.leading_coefficient_in(v)
    sol = -RationalFunction(h - lc * MultiPoly.var(v)) / RationalFunction(lc)
    deps = [c for c in sol.variables if c in rest]
    n = space.dimension
    if space.kind == "ProjectiveSpace":
        if _affine_linear(sol):
            source = projective_space(n - 1, rest)
        elif n == 2:
            source = projective_space(1, rest)
        else:
            raise UnpresentableVariety(f"{h} = 0 is not a linear subspace")
    else:
        if len(deps) > 1:
            raise UnpresentableVariety(f"{h} = 0 is not a graph over one factor")
        source = product_of_lines(n - 1, rest)
    sub = {c: RationalFunction.var(c) for c in rest}
    sub[v] = sol
    hom = normalize_map(tuple(tuple(e.subs(sub) for e in t) for t in hom0))
    check_base_points(source, hom)
    return Parametrization(source, hom)
