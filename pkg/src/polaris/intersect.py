"""Polar intersection numbers, intersection products and linking numbers.

Intersection points are found by solving ``f_A(a) = f_B(b)`` factor by
factor as proportionality of homogeneous tuples, one source stratum at a
time, so points at infinity are neither missed nor counted twice.  Local
contributions are exterior-algebra evaluations on explicit frames.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

from . import linalg
from .algebra import GaussianRational, MultiPoly, RationalFunction, from_sympy_expr, to_sympy_expr
from .chains import (PolarChain, PrimeChain, RelativeContext, boundary, normalize,
                     reduce_relative)
from .errors import (BoundaryHit, IrrationalIntersection, NotABoundingChain, NotAdmissible,
                     NotTransverse, UnpresentableIntersection)
from .forms import DifferentialForm, polar_components, validate_chain_form
from .spaces import (AmbientSpace, Chart, HomMap, chart_strata, finite_chart, hom_in_chart,
                     hypersurface, map_to_chart, normalize_map, point_space, product_of_lines,
                     substitute_map)


# ---------------------------------------------------------------------------
# Orientation


@dataclass(frozen=True, eq=False)
class PolarOrientation:
    """A nowhere-vanishing meromorphic top form ``mu`` with first-order poles."""

    space: AmbientSpace
    mu: DifferentialForm

    def __post_init__(self):
        report = validate_chain_form(self.mu, self.space)
        if not report.valid:
            raise NotAdmissible("; ".join(report.problems))
        for ch in self.space.charts():
            g = self.mu.to_chart(self.space.chart0, ch).top_coefficient()
            if not RationalFunction(g.num).is_scalar():
                raise NotAdmissible(f"mu vanishes along {g.num} in chart {ch}")
        object.__setattr__(self, "_components", tuple(report.components))

    @property
    def components(self):
        return self._components

    @property
    def is_closed(self) -> bool:
        return not self._components

    def boundary_context(self) -> RelativeContext:
        return RelativeContext(hypersurface(c.chart, c.h, c.variable) for c in self._components)

    def coefficient_at(self, chart: Chart, values: Dict[str, RationalFunction]) -> RationalFunction:
        g = self.mu.to_chart(self.space.chart0, chart).top_coefficient()
        v = _at(g, values, "mu has a pole at the point", BoundaryHit)
        if v.is_zero():
            raise BoundaryHit("mu vanishes at the point")
        return v


def _at(r: RationalFunction, values, message, exc=BoundaryHit) -> RationalFunction:
    if r.den.is_constant():
        return r.subs(values)
    d = RationalFunction(r.den).subs(values)
    if d.is_zero():
        raise exc(message)
    return RationalFunction(r.num).subs(values) / d


# ---------------------------------------------------------------------------
# Solving f_A(a) = f_B(b)


@dataclass(frozen=True)
class _Side:
    chain: PrimeChain
    chart: Chart                     # source chart of the stratum
    zeros: Tuple[str, ...]           # source chart coordinates set to zero
    hom: HomMap                      # map in the stratum, zeros substituted
    unknowns: Tuple[str, ...]        # prefixed free coordinates
    rename: Dict[str, str]           # chart coordinate -> prefixed name


def _sides(t: PrimeChain, prefix: str) -> List[_Side]:
    out = []
    for ch, zeros in chart_strata(t.source):
        hom = hom_in_chart(t.hom, t.source, ch)
        rename = {c: prefix + c for c in ch.coordinates}
        sub = {c: RationalFunction.const(0) if c in zeros else RationalFunction.var(rename[c])
               for c in ch.coordinates}
        hom = substitute_map(hom, sub) if sub else hom
        unknowns = tuple(rename[c] for c in ch.coordinates if c not in zeros)
        out.append(_Side(t, ch, zeros, hom, unknowns, rename))
    return out


def _equations(ha: HomMap, hb: HomMap) -> List[MultiPoly]:
    eqs = []
    for ta, tb in zip(ha, hb):
        for i, j in itertools.combinations(range(len(ta)), 2):
            e = ta[i] * tb[j] - ta[j] * tb[i]
            if not e.is_zero():
                eqs.append(e)
    return eqs


@dataclass(frozen=True)
class _Solution:
    A: _Side
    B: _Side
    values: Dict[str, RationalFunction]   # every unknown, in terms of ``free``
    free: Tuple[str, ...]


def _solve(a: PrimeChain, b: PrimeChain, r: int) -> List[_Solution]:
    import sympy

    sols: List[_Solution] = []
    for A in _sides(a, "a_"):
        for B in _sides(b, "b_"):
            eqs = _equations(A.hom, B.hom)
            unknowns = A.unknowns + B.unknowns
            consts = [e for e in eqs if e.is_constant()]
            if consts:
                continue
            if not unknowns:
                if not eqs:
                    if r:
                        raise NotTransverse("intersection has the wrong dimension")
                    sols.append(_Solution(A, B, {}, ()))
                continue
            if not eqs:
                found = [{}]
            else:
                syms = [sympy.Symbol(u) for u in unknowns]
                found = sympy.solve([to_sympy_expr(e) for e in eqs], syms, dict=True)
            for s in found:
                free = tuple(u for u in unknowns
                             if sympy.Symbol(u) not in s or s[sympy.Symbol(u)] == sympy.Symbol(u))
                values = {}
                for u in unknowns:
                    e = s.get(sympy.Symbol(u), sympy.Symbol(u))
                    try:
                        values[u] = from_sympy_expr(e)
                    except ValueError:
                        if r:
                            raise UnpresentableIntersection(
                                f"intersection component is not rational ({e})") from None
                        raise IrrationalIntersection(f"intersection point {u} = {e} is not in Q(i)") from None
                if len(free) > r:
                    raise NotTransverse("intersection has excess dimension")
                if len(free) < r:
                    continue
                sols.append(_Solution(A, B, values, free))
    return sols


# ---------------------------------------------------------------------------
# Local algebra at a (possibly generic) intersection point


@dataclass
class _Local:
    chart: Chart                          # ambient chart
    point: Dict[str, RationalFunction]    # ambient chart coordinates
    hom: HomMap                           # image (constant for points)
    JA: List[List[RationalFunction]]      # n x p
    JB: List[List[RationalFunction]]      # n x q
    gA: RationalFunction
    gB: RationalFunction
    m: RationalFunction
    cA: List[List[RationalFunction]]      # r vectors in A's source chart
    cB: List[List[RationalFunction]]
    c: List[List[RationalFunction]]       # the same r vectors in the ambient chart


def _source_values(side: _Side, values) -> Dict[str, RationalFunction]:
    return {c: (RationalFunction.const(0) if c in side.zeros else values[side.rename[c]])
            for c in side.chart.coordinates}


def _local(sol: _Solution, orient: PolarOrientation) -> _Local:
    ambient = orient.space
    A, B = sol.A, sol.B
    av = _source_values(A, sol.values)
    bv = _source_values(B, sol.values)
    image = substitute_map(hom_in_chart(A.chain.hom, A.chain.source, A.chart), av) \
        if av else A.chain.hom
    ch = finite_chart(ambient, image)
    point = map_to_chart(image, ch)

    def side_data(side: _Side, vals, what):
        t = side.chain
        src_coords = side.chart.coordinates
        fmap = map_to_chart(hom_in_chart(t.hom, t.source, side.chart), ch)
        J = [[_at(fmap[c].diff(s), vals, f"{what} is not finite at the point", NotTransverse)
              for s in src_coords] for c in ch.coordinates]
        if t.dimension:
            g = t.form.to_chart(t.source.chart0, side.chart).top_coefficient()
        else:
            g = t.form.terms.get((), RationalFunction())
        g = _at(g, vals, f"the point lies on the polar divisor of {what}") * t.coefficient
        cvecs = [[vals[s].diff(f) for s in src_coords] for f in sol.free]
        return J, g, cvecs

    JA, gA, cA = side_data(A, av, "the first cycle")
    JB, gB, cB = side_data(B, bv, "the second cycle")
    c = [[sum((JA[i][j] * v[j] for j in range(len(v))), RationalFunction())
          for i in range(len(JA))] for v in cA]
    m = orient.coefficient_at(ch, point)
    return _Local(ch, point, image, JA, JB, gA, gB, m, cA, cB, c)


def _columns(*vector_lists) -> List[List[RationalFunction]]:
    cols = [v for vl in vector_lists for v in vl]
    n = len(cols[0]) if cols else 0
    return [[col[i] for col in cols] for i in range(n)]


def _det_cols(*vector_lists) -> RationalFunction:
    M = _columns(*vector_lists)
    if not M:
        return RationalFunction.const(1)
    return RationalFunction.coerce(linalg.det(M))


def _matvec(J, v):
    return [sum((J[i][j] * v[j] for j in range(len(v))), RationalFunction()) for i in range(len(J))]


def _complement(basis: List[List[RationalFunction]], dim: int) -> List[List[RationalFunction]]:
    """Standard vectors completing ``basis`` to a basis of the source tangent space."""
    chosen = list(basis)
    extra = []
    for j in range(dim):
        e = [RationalFunction.const(int(i == j)) for i in range(dim)]
        if linalg.rank(chosen + [e]) > len(chosen):
            chosen.append(e)
            extra.append(e)
        if len(chosen) == dim:
            break
    if len(chosen) != dim:
        raise NotTransverse("intersection is not a submanifold of the cycle")
    return extra


def _local_number(L: _Local) -> RationalFunction:
    """``alpha ^ beta / mu`` on the frame (frame of A, frame of B)."""
    p, q = len(L.JA[0]) if L.JA and L.JA[0] else 0, len(L.JB[0]) if L.JB and L.JB[0] else 0
    colsA = [[row[j] for row in L.JA] for j in range(p)]
    colsB = [[row[j] for row in L.JB] for j in range(q)]
    D = _det_cols(colsA, colsB)
    if D.is_zero():
        raise NotTransverse("tangent frames are linearly dependent at an intersection point")
    return L.gA * L.gB / (L.m * D)


# ---------------------------------------------------------------------------
# Conormal frames


@dataclass(frozen=True)
class ConormalFrame:
    """``lambda = nu_1 ^ ... ^ nu_{n-p}``, the covectors annihilating ``T_P A``."""

    covectors: Tuple[Tuple[RationalFunction, ...], ...]

    def evaluate(self, vectors) -> RationalFunction:
        M = [[sum((nu[i] * v[i] for i in range(len(v))), RationalFunction()) for v in vectors]
             for nu in self.covectors]
        return RationalFunction.coerce(linalg.det(M)) if M else RationalFunction.const(1)

    def wedge(self, other: "ConormalFrame") -> "ConormalFrame":
        return ConormalFrame(self.covectors + other.covectors)


def conormal_frame(J, choice: int = 0) -> ConormalFrame:
    """Annihilator of the column span of ``J``; ``choice`` selects one of
    several (equally valid) bases."""
    n = len(J)
    rows = linalg.transpose(J) if J and J[0] else []
    if rows:
        basis = linalg.nullspace(rows)
    else:
        basis = [[RationalFunction.const(int(i == j)) for i in range(n)] for j in range(n)]
    basis = [[RationalFunction.coerce(x) for x in v] for v in basis]
    if choice and basis:
        first = basis[0]
        basis = [[2 * x for x in first]] + [[x + y for x, y in zip(v, first)] for v in basis[1:]]
        if choice > 1:
            basis = basis[::-1]
            if len(basis) > 1:
                basis[0] = [-x for x in basis[0]]
    return ConormalFrame(tuple(tuple(v) for v in basis))


def _gamma(L: _Local, frame_choice: int = 0) -> RationalFunction:
    """Coefficient of the product orientation ``gamma`` on ``d free_1 ^ ...``.

    Solves ``lambda_A ^ lambda_B ^ gamma = (lambda_A^alpha/mu)(lambda_B^beta/mu) mu``
    on the frame ``(b', a', c)``.
    """
    p = len(L.JA[0]) if L.JA and L.JA[0] else 0
    q = len(L.JB[0]) if L.JB and L.JB[0] else 0
    aprime = _complement(L.cA, p)
    bprime = _complement(L.cB, q)
    A_amb = [_matvec(L.JA, v) for v in aprime]
    B_amb = [_matvec(L.JB, v) for v in bprime]
    lamA = conormal_frame(L.JA, frame_choice)
    lamB = conormal_frame(L.JB, frame_choice)
    alpha = L.gA * _det_cols(L.cA, aprime)
    beta = L.gB * _det_cols(L.cB, bprime)
    mu = lambda *vl: L.m * _det_cols(*vl)
    ratio_A = lamA.evaluate(B_amb) * alpha / mu(B_amb, L.c, A_amb)
    ratio_B = lamB.evaluate(A_amb) * beta / mu(A_amb, L.c, B_amb)
    lam = lamA.wedge(lamB).evaluate(B_amb + A_amb)
    if lam.is_zero():
        raise NotTransverse("conormal frames are dependent")
    return ratio_A * ratio_B * mu(B_amb, A_amb, L.c) / lam


# ---------------------------------------------------------------------------
# Public operations


@dataclass(frozen=True)
class IntersectionPoint:
    point: str
    contribution: RationalFunction


@dataclass(frozen=True)
class IntersectionResult:
    kind: str                                   # "Number" | "ProductCycle"
    value: Optional[RationalFunction] = None
    cycle: Optional[PolarChain] = None
    points: Tuple[IntersectionPoint, ...] = ()


def _terms(c) -> List[PrimeChain]:
    if isinstance(c, PrimeChain):
        return [c]
    return list(normalize(c).terms)


def _check_dims(ta: PrimeChain, tb: PrimeChain, orient: PolarOrientation):
    if ta.ambient != orient.space or tb.ambient != orient.space:
        raise NotAdmissible("cycles and orientation live in different spaces")


def _point_label(L: _Local) -> str:
    from .render import render_point_values

    return render_point_values(L.chart, [L.point[c].constant_value() for c in L.chart.coordinates])


def intersection_number(a, b, orient: PolarOrientation) -> IntersectionResult:
    """``sum_P alpha(P) ^ beta(P) / mu(P)`` over transverse intersection points."""
    n = orient.space.dimension
    total = RationalFunction()
    pts = []
    for ta in _terms(a):
        for tb in _terms(b):
            _check_dims(ta, tb, orient)
            if ta.dimension + tb.dimension != n:
                raise NotAdmissible(f"dimensions {ta.dimension} + {tb.dimension} != {n}")
            for sol in _solve(ta, tb, 0):
                L = _local(sol, orient)
                v = _local_number(L)
                total = total + v
                pts.append(IntersectionPoint(_point_label(L), v))
    return IntersectionResult("Number", value=total, points=tuple(pts))


def intersection_product(a, b, orient: PolarOrientation, frame_choice: int = 0) -> IntersectionResult:
    """The product cycle ``(C, gamma)`` with ``C = A ∩ B``."""
    n = orient.space.dimension
    terms: List[PrimeChain] = []
    pts = []
    for ta in _terms(a):
        for tb in _terms(b):
            _check_dims(ta, tb, orient)
            r = ta.dimension + tb.dimension - n
            if r < 0:
                raise NotAdmissible("product needs p + q >= n")
            for sol in _solve(ta, tb, r):
                L = _local(sol, orient)
                g = _gamma(L, frame_choice)
                if r == 0:
                    src = point_space()
                    pts.append(IntersectionPoint(_point_label(L), g))
                else:
                    src = product_of_lines(r, sol.free)
                    if L.hom and all(p.is_constant() for t in L.hom for p in t):
                        raise UnpresentableIntersection("intersection collapsed to a point")
                form = DifferentialForm(src.coordinates, {tuple(range(r)): g}, degree=r)
                terms.append(PrimeChain(orient.space, src, normalize_map(L.hom), form))
    cycle = normalize(PolarChain(orient.space, terms))
    return IntersectionResult("ProductCycle", cycle=cycle, points=tuple(pts))


@dataclass(frozen=True)
class LinkingResult:
    value: RationalFunction
    certificate: PolarChain
    points: Tuple[IntersectionPoint, ...]


def linking_number(c1, c2, s2, orient: PolarOrientation) -> LinkingResult:
    """``lk((C1,a1),(C2,a2)) = <(C1,a1) . (S2,b2)>`` once ``∂S2 = C2`` is verified
    relative to the polar divisor of ``mu``."""
    if orient.space.dimension != 3:
        raise NotAdmissible("linking numbers are defined in dimension 3")
    c1 = c1 if isinstance(c1, PolarChain) else PolarChain.of(c1)
    c2 = c2 if isinstance(c2, PolarChain) else PolarChain.of(c2)
    s2 = s2 if isinstance(s2, PolarChain) else PolarChain.of(s2)
    cert = reduce_relative(boundary(s2), orient.boundary_context())
    if cert != c2:
        raise NotABoundingChain(f"relative boundary is {cert}, expected {normalize(c2)}")
    for ta in _terms(c1):
        for tb in _terms(c2):
            try:
                hits = _solve(ta, tb, 0)
            except NotTransverse:
                hits = [None]
            if hits:
                raise NotAdmissible("the two cycles meet")
    res = intersection_number(c1, s2, orient)
    return LinkingResult(res.value, cert, res.points)
