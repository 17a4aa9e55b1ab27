"""Polar chains, their normalization, boundary and homology reports.

A prime chain ``(A, f, alpha)`` is stored as a catalog *source* space ``A``
(a point, ``P^k`` or ``(P^1)^k``), a homogeneous map ``f`` written in the
source's chart-0 coordinates, and a top-degree form ``alpha`` on those
coordinates.  Presentations (points, graphs, hypersurfaces, whole spaces) are
converted to this shape on construction and recovered for display.

Normalization applies the relations: scalars are folded into forms (R1),
parametrizations are brought to a canonical shape so that equal images with
equal push-forwards merge (R2, restricted to reparametrizations of the
source by Möbius maps), and chains whose image has dimension below ``k`` are
dropped (R3).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import linalg
from .algebra import MultiPoly, RationalFunction, TAU, trace_mod
from .errors import (ChartMismatch, NotAdmissible, UndecidableContainment, UnknownSpace,
                     UnpresentableVariety, UndeterminedHomology)
from .forms import DifferentialForm, polar_components, validate_chain_form
from .residue import residue_along
from .spaces import (AmbientSpace, Chart, HomMap, INCLUSION, MorphismPresentation,
                     SubvarietyPresentation, catalog_space, finite_chart, graph,
                     hom_in_chart, hypersurface, hypersurface_in_chart, map_to_chart,
                     normalize_map, parametrize, point, point_key, product_of_lines,
                     projective_space, substitute_map, whole)


# ---------------------------------------------------------------------------
# Prime chains


@dataclass(frozen=True, eq=False)
class PrimeChain:
    ambient: AmbientSpace
    source: AmbientSpace
    hom: HomMap
    form: DifferentialForm
    coefficient: RationalFunction = field(default_factory=lambda: RationalFunction.const(1))

    @classmethod
    def from_presentation(cls, variety: SubvarietyPresentation, form,
                          morphism: Optional[MorphismPresentation] = None,
                          coefficient=1, validate: bool = True) -> "PrimeChain":
        param = parametrize(variety, morphism)
        if not isinstance(form, DifferentialForm):
            form = DifferentialForm.scalar((), form)
        if form.coords != param.source.coordinates:
            if form.degree == 0 and param.source.dimension == 0:
                form = DifferentialForm.scalar((), form.terms.get((), 0))
            else:
                raise ChartMismatch(
                    f"form is written in {form.coords}, the variety in {param.source.coordinates}")
        if validate:
            report = validate_chain_form(form, param.source)
            if not report.valid:
                raise NotAdmissible("; ".join(report.problems))
        return cls(variety.space, param.source, param.hom, form,
                   RationalFunction.coerce(coefficient))

    @property
    def dimension(self) -> int:
        return self.source.dimension

    def key(self):
        return (self.source, self.hom)

    def folded(self) -> "PrimeChain":
        """R1: move the scalar into the form."""
        if self.coefficient == 1:
            return self
        return PrimeChain(self.ambient, self.source, self.hom, self.form.scale(self.coefficient))

    def scaled(self, c) -> "PrimeChain":
        return PrimeChain(self.ambient, self.source, self.hom, self.form,
                          self.coefficient * RationalFunction.coerce(c))

    def presentation(self) -> SubvarietyPresentation:
        return display_presentation(self.ambient, self.source, self.hom)

    def display(self) -> str:
        from .render import render_presentation

        return render_presentation(self.presentation())

    def value(self) -> RationalFunction:
        """Coefficient of a 0-chain term."""
        if self.dimension:
            raise NotAdmissible("value() is defined for 0-chains only")
        return self.form.terms.get((), RationalFunction()) * self.coefficient

    def __str__(self):
        from .render import render_form

        return f"({self.display()},{render_form(self.folded().form)})"


def display_presentation(ambient: AmbientSpace, source: AmbientSpace, hom: HomMap) -> SubvarietyPresentation:
    """The simplest presentation whose parametrization is ``(source, hom)``."""
    chart = finite_chart(ambient, hom)
    if source.dimension == 0:
        vals = map_to_chart(hom, chart)
        return point(chart, [vals[c].constant_value() for c in chart.coordinates])
    if source == ambient and hom == normalize_map(ambient.chart0.homogeneous()):
        return whole(ambient)
    assigns = map_to_chart(hom, chart)
    S = set(source.coordinates)
    moving = [c for c in chart.coordinates if assigns[c] != RationalFunction.var(c)]
    if len(moving) == 1 and moving[0] not in S and S == set(chart.coordinates) - {moving[0]}:
        v = moving[0]
        a = assigns[v]
        if a.is_polynomial():
            try:
                V = hypersurface(chart, MultiPoly.var(v) - a.num)
                if V.variable == v:
                    p = parametrize(V)
                    if p.source == source and p.hom == hom:
                        return V
            except Exception:
                pass
    return graph(chart, source.coordinates, assigns)


# ---------------------------------------------------------------------------
# Canonical reparametrization (the part of R2 that is decidable here)


def _ratio_name(ambient: AmbientSpace, k: int, i: int, j: int) -> str:
    idx = [0] * len(ambient.factors)
    idx[k] = i
    ch = Chart(ambient, tuple(idx))
    others = [a for a in range(ambient.factors[k].dim + 1) if a != i]
    return ch.factor_coordinates(k)[others.index(j)]


def _mobius(r: RationalFunction, s: str):
    """``(a, b, c, d)`` with ``r = (a s + b)/(c s + d)``, or None."""
    if max(r.num.degree(s), r.den.degree(s)) != 1:
        return None
    nc, dc = r.num.coefficients_in(s), r.den.coefficients_in(s)
    get = lambda co, e: RationalFunction(co.get(e, MultiPoly()))
    a, b, c, d = get(nc, 1), get(nc, 0), get(dc, 1), get(dc, 0)
    if not all(x.is_constant() for x in (a, b, c, d)):
        return None
    return a, b, c, d


def canonical_parametrization(ambient: AmbientSpace, source: AmbientSpace, hom: HomMap,
                              form: DifferentialForm):
    """Reparametrize a line-product source so that every source coordinate
    equals an affine coordinate of the ambient space on the image.

    Returns ``(source, hom, form)``; unchanged when no such choice exists.
    """
    if source.dimension == 0:
        return source, hom, form
    if source.kind == "ProjectiveSpace" and source.dimension >= 2:
        return source, hom, form
    coords = source.coordinates
    found: Dict[str, tuple] = {}
    used = set()
    for k, t in enumerate(hom):
        for i, j in itertools.combinations(range(len(t)), 2):
            if t[i].is_zero() or t[j].is_zero():
                continue
            r = RationalFunction(t[j], t[i])
            vs = r.variables
            if len(vs) != 1 or vs[0] not in coords or vs[0] in found:
                continue
            m = _mobius(r, vs[0])
            if m is None:
                continue
            name = _ratio_name(ambient, k, i, j)
            if name in used:
                continue
            found[vs[0]] = ((k, i, j), name, m)
            used.add(name)
    if set(found) != set(coords):
        return source, hom, form
    order = sorted(coords, key=lambda s: found[s][0])
    names = tuple(found[s][1] for s in order)
    sub = {}
    identity = True
    for s in coords:
        _, name, (a, b, c, d) = found[s]
        new = RationalFunction.var(name)
        sub[s] = (d * new - b) / (a - c * new)
        identity = identity and name == s and sub[s] == RationalFunction.var(s)
    if identity and tuple(order) == coords:
        return source, hom, form
    new_source = product_of_lines(len(names), names)
    new_hom = substitute_map(hom, sub)
    new_form = form.pullback(names, sub)
    return new_source, new_hom, new_form


def image_dimension(ambient: AmbientSpace, source: AmbientSpace, hom: HomMap) -> int:
    if source.dimension == 0:
        return 0
    chart = finite_chart(ambient, hom)
    amap = map_to_chart(hom, chart)
    J = [[amap[c].diff(s) for s in source.coordinates] for c in chart.coordinates]
    return linalg.rank(J)


# ---------------------------------------------------------------------------
# Chains


class PolarChain:
    """A formal sum of prime chains in one ambient space."""

    __slots__ = ("ambient", "terms", "_normal")

    def __init__(self, ambient: AmbientSpace, terms: Iterable[PrimeChain] = (), _normal=False):
        self.ambient = ambient
        self.terms = tuple(terms)
        for t in self.terms:
            if t.ambient != ambient:
                raise ChartMismatch("chain terms live in different spaces")
        self._normal = _normal

    @classmethod
    def of(cls, *terms: PrimeChain) -> "PolarChain":
        return cls(terms[0].ambient, terms)

    @property
    def dimension(self) -> Optional[int]:
        dims = {t.dimension for t in self.terms}
        if len(dims) > 1:
            raise NotAdmissible("chain mixes dimensions")
        return dims.pop() if dims else None

    def is_zero(self) -> bool:
        return not normalize(self).terms

    def __add__(self, other: "PolarChain") -> "PolarChain":
        if other.ambient != self.ambient:
            raise ChartMismatch("chains live in different spaces")
        return PolarChain(self.ambient, self.terms + other.terms)

    def scale(self, c) -> "PolarChain":
        return PolarChain(self.ambient, [t.scaled(c) for t in self.terms])

    __rmul__ = scale

    def __mul__(self, c):
        return self.scale(c)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, PolarChain):
            return NotImplemented
        a, b = normalize(self), normalize(other)
        return a.ambient == b.ambient and len(a.terms) == len(b.terms) and all(
            x.key() == y.key() and x.form == y.form for x, y in zip(a.terms, b.terms))

    def __hash__(self):
        return hash(str(self))

    def __iter__(self):
        return iter(self.terms)

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        return f"PolarChain({self})"

    def __str__(self):
        from .render import render_chain

        return render_chain(normalize(self))


def _sort_key(t: PrimeChain):
    return (t.dimension, t.display(), str(t.hom))


def normalize(c: PolarChain) -> PolarChain:
    """Canonical representative: R1 folding, canonical parametrizations,
    merging of equal keys, R3 and zero removal.  Idempotent."""
    if c._normal:
        return c
    merged: Dict[tuple, PrimeChain] = {}
    order: List[tuple] = []
    for t in c.terms:
        t = t.folded()
        if t.form.is_zero():
            continue
        if t.dimension and image_dimension(t.ambient, t.source, t.hom) < t.dimension:
            continue
        src, hom, form = canonical_parametrization(t.ambient, t.source, t.hom, t.form)
        t = PrimeChain(t.ambient, src, hom, form)
        k = t.key()
        if k in merged:
            merged[k] = PrimeChain(t.ambient, src, hom, merged[k].form + form)
        else:
            merged[k] = t
            order.append(k)
    terms = [merged[k] for k in order if not merged[k].form.is_zero()]
    terms.sort(key=_sort_key)
    return PolarChain(c.ambient, terms, _normal=True)


# ---------------------------------------------------------------------------
# Boundary


def compose(hom: HomMap, source: AmbientSpace, psi: HomMap) -> HomMap:
    """``hom`` after ``psi``, where ``psi`` maps into ``source``."""
    sigma = finite_chart(source, psi)
    inner = map_to_chart(psi, sigma)
    return substitute_map(hom_in_chart(hom, source, sigma), inner)


def _tau() -> RationalFunction:
    return RationalFunction.var(TAU)


def prime_boundary(t: PrimeChain) -> List[PrimeChain]:
    """``2πi * sum_i (V_i, f|V_i, res_{V_i} alpha)`` for one prime chain."""
    t = t.folded()
    if t.dimension == 0 or t.form.is_zero():
        return []
    src = t.source
    comps = polar_components(t.form, src)
    out = []
    for comp in comps:
        form = t.form.to_chart(src.chart0, comp.chart)
        rho = residue_along(form, comp.h, comp.variable)
        if comp.h.degree(comp.variable) != 1:
            raise UnpresentableVariety(
                f"residue along {comp.h} lives on non-rational points; not a catalog chain")
        V = hypersurface(comp.chart, comp.h, comp.variable)
        sub = parametrize(V)
        hom = compose(t.hom, src, sub.hom)
        if rho.coords != sub.source.coordinates:
            rho = DifferentialForm(sub.source.coordinates, rho.terms, degree=rho.degree)
        out.append(PrimeChain(t.ambient, sub.source, hom, rho.scale(_tau())))
    return out


def boundary(c: PolarChain) -> PolarChain:
    terms: List[PrimeChain] = []
    for t in normalize(c).terms:
        terms.extend(prime_boundary(t))
    return normalize(PolarChain(c.ambient, terms))


def boundary_squared(c: PolarChain) -> PolarChain:
    return boundary(boundary(c))


# ---------------------------------------------------------------------------
# Relative chains


@dataclass(frozen=True)
class RelativeContext:
    Z: Tuple[SubvarietyPresentation, ...]

    def __init__(self, Z: Iterable[SubvarietyPresentation]):
        object.__setattr__(self, "Z", tuple(Z))


def _implicit_equations(V: SubvarietyPresentation) -> List[MultiPoly]:
    """Equations of the closure of a graph inside its chart (elimination)."""
    import sympy

    from .algebra import from_sympy_expr, to_sympy_expr

    params = [sympy.Symbol(p) for p in V.parameters]
    coords = [sympy.Symbol(c) for c in V.chart.coordinates]
    aux = sympy.Symbol("_w_")
    eqs = []
    prod = MultiPoly.const(1)
    for c, a in V.assignments:
        eqs.append(to_sympy_expr(a.den * MultiPoly.var(c) - a.num))
        prod = prod * a.den
    eqs.append(1 - aux * to_sympy_expr(prod))
    G = sympy.groebner(eqs, aux, *params, *coords, order="lex", domain="QQ_I")
    elim = set(params) | {aux}
    return [from_sympy_expr(g).num for g in G.exprs if not (g.free_symbols & elim)]


def contained(t: PrimeChain, V: SubvarietyPresentation) -> bool:
    """Whether the image of ``t`` lies in the closure of ``V``."""
    if V.kind == "whole":
        return True
    if V.kind == "point":
        return t.dimension == 0 and point_key(t.hom) == point_key(parametrize(V).hom)
    sigma = finite_chart(t.ambient, t.hom)
    amap = map_to_chart(t.hom, sigma)
    if V.kind == "hypersurface":
        h = hypersurface_in_chart(V.h, V.chart, sigma)
        return RationalFunction(h).subs(amap).is_zero()
    if sigma != V.chart:
        raise UndecidableContainment(
            f"{t.display()} is not generically visible in the chart of {V}")
    return all(RationalFunction(e).subs(amap).is_zero() for e in _implicit_equations(V))


def reduce_relative(c: PolarChain, ctx: RelativeContext) -> PolarChain:
    """Image of ``c`` in ``C_k(X)/C_k(Z)``: drop terms supported in ``Z``."""
    keep = [t for t in normalize(c).terms if not any(contained(t, V) for V in ctx.Z)]
    return PolarChain(c.ambient, keep, _normal=True)


# ---------------------------------------------------------------------------
# Homology


def hp0_class(c: PolarChain) -> RationalFunction:
    """Sum of the coefficients of a 0-chain: its class in ``HP_0 = C``."""
    total = RationalFunction()
    for t in normalize(c).terms:
        if t.dimension:
            raise NotAdmissible("hp0_class needs a 0-chain")
        total = total + t.value()
    return total


@dataclass(frozen=True)
class Curve:
    """A declared smooth projective curve of genus ``g`` (no form machinery)."""

    genus: int

    @property
    def label(self) -> str:
        return f"curve(genus={self.genus})"

    @property
    def dimension(self) -> int:
        return 1


@dataclass(frozen=True)
class HomologyReport:
    space: str
    dims: Dict[int, int]
    complete: bool

    @property
    def euler(self) -> Optional[int]:
        """Alternating sum; None unless every ``HP_k`` is known."""
        if not self.complete:
            return None
        return sum((-1) ** k * d for k, d in self.dims.items())


def hp_report(X) -> HomologyReport:
    """Known polar homology dimensions.

    Curves are complete: ``HP_0 = C``, ``HP_1 = C^g`` and nothing above.  For
    ``P^n`` and products of lines only ``HP_0`` and ``HP_n = H^0(Omega^n) = 0``
    are recorded; the intermediate groups are left undetermined.
    """
    if isinstance(X, str):
        X = catalog_space(X)
    if isinstance(X, Curve):
        if X.genus < 0:
            raise UnknownSpace("genus must be non-negative")
        return HomologyReport(X.label, {0: 1, 1: X.genus}, True)
    if not isinstance(X, AmbientSpace):
        raise UnknownSpace(f"{X!r} is not a catalog space")
    n = X.dimension
    if n == 0:
        return HomologyReport(X.label, {0: 1}, True)
    if n == 1:
        return HomologyReport(X.label, {0: 1, 1: 0}, True)
    return HomologyReport(X.label, {0: 1, n: 0}, False)


def polar_euler(X) -> int:
    r = hp_report(X)
    if r.euler is None:
        raise UndeterminedHomology(
            f"HP_k({r.space}) for 0 < k < {max(r.dims)} are not determined")
    return r.euler
