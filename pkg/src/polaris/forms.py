"""Chart-local meromorphic differential forms.

A form lives on an ordered list of coordinates.  Terms map strictly
increasing index tuples to rational-function coefficients, so
``{(0, 1): 1/(x*y)}`` on ``("x", "y")`` is ``dx^dy/(x*y)``.

Pole components are declared by the caller and validated, not discovered,
except for forms produced internally (residues, push-forwards), whose poles
are read off the factored denominator.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .algebra import (MultiPoly, RationalFunction, factor_poly, has_common_zero,
                      poly_exquo, poly_gcd, remainder_mod, spatial_part)
from .errors import (ChartMismatch, PoleOnRestrictionLocus, SingularSubstitution,
                     NotMonic)
from . import linalg


@dataclass(frozen=True)
class PoleComponent:
    """A declared polar component: ``h = 0`` in the working chart, or the
    divisor at infinity of the factor containing ``infinity``."""

    h: Optional[MultiPoly] = None
    variable: Optional[str] = None
    infinity: Optional[str] = None

    @property
    def label(self) -> str:
        return f"infinity({self.infinity})" if self.infinity else str(self.h)

    @property
    def at_infinity(self) -> bool:
        return self.infinity is not None

    def __str__(self):
        return self.label


def pole(h, variable: Optional[str] = None) -> PoleComponent:
    from .spaces import monic_variable

    h = RationalFunction.coerce(h).as_polynomial() if not isinstance(h, MultiPoly) else h
    if variable is None:
        variable = monic_variable(h, sorted(h.variables))
    return PoleComponent(h=h, variable=variable)


def infinity(coordinate: str) -> PoleComponent:
    return PoleComponent(infinity=coordinate)


def _sort_sign(idx: Sequence[int]):
    """Sign of the permutation sorting ``idx``; 0 on repeats."""
    idx = list(idx)
    if len(set(idx)) != len(idx):
        return 0, ()
    sign = 1
    for i in range(len(idx)):
        for j in range(i + 1, len(idx)):
            if idx[i] > idx[j]:
                sign = -sign
    return sign, tuple(sorted(idx))


class DifferentialForm:
    __slots__ = ("coords", "terms", "poles", "relation", "degree")

    def __init__(self, coords: Sequence[str], terms: Mapping[Tuple[int, ...], object] = None,
                 poles: Optional[Sequence[PoleComponent]] = None, degree: Optional[int] = None,
                 relation: Optional[Tuple[MultiPoly, str]] = None):
        self.coords = tuple(coords)
        clean: Dict[Tuple[int, ...], RationalFunction] = {}
        for idx, c in (terms or {}).items():
            sign, key = _sort_sign(idx)
            if not sign:
                continue
            c = RationalFunction.coerce(c)
            if relation is not None:
                c = remainder_mod(c, relation[0], relation[1])
            s = clean.get(key, RationalFunction()) + (c if sign > 0 else -c)
            if s.is_zero():
                clean.pop(key, None)
            else:
                clean[key] = s
        self.terms = clean
        self.poles = tuple(poles) if poles is not None else None
        self.relation = relation
        if degree is None:
            degree = len(next(iter(clean))) if clean else 0
        self.degree = degree

    # -- construction helpers ----------------------------------------------
    @classmethod
    def scalar(cls, coords, value, poles=None) -> "DifferentialForm":
        return cls(coords, {(): value}, poles=poles, degree=0)

    @classmethod
    def d(cls, coords, name: str) -> "DifferentialForm":
        return cls(coords, {(tuple(coords).index(name),): 1}, degree=1)

    @classmethod
    def top(cls, coords, coefficient, poles=None) -> "DifferentialForm":
        n = len(coords)
        return cls(coords, {tuple(range(n)): coefficient}, poles=poles, degree=n)

    @classmethod
    def from_names(cls, coords, terms: Mapping[Tuple[str, ...], object], poles=None, degree=None):
        coords = tuple(coords)
        return cls(coords, {tuple(coords.index(n) for n in names): c for names, c in terms.items()},
                   poles=poles, degree=degree)

    def with_poles(self, poles) -> "DifferentialForm":
        return DifferentialForm(self.coords, self.terms, poles=poles, degree=self.degree,
                                relation=self.relation)

    # -- inspection ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, names: Sequence[str]) -> RationalFunction:
        sign, key = _sort_sign([self.coords.index(n) for n in names])
        c = self.terms.get(key, RationalFunction())
        return c if sign >= 0 else -c

    def top_coefficient(self) -> RationalFunction:
        if self.degree != len(self.coords):
            from .errors import NotTopDegree

            raise NotTopDegree(f"degree {self.degree} form on {len(self.coords)} coordinates")
        return self.terms.get(tuple(range(len(self.coords))), RationalFunction())

    def __eq__(self, other):
        if not isinstance(other, DifferentialForm):
            return NotImplemented
        return (self.coords == other.coords and self.terms == other.terms
                and (self.degree == other.degree or (self.is_zero() and other.is_zero())))

    def __hash__(self):
        return hash((self.coords, frozenset(self.terms.items())))

    def __repr__(self):
        return f"DifferentialForm({self})"

    def __str__(self):
        from .render import render_form

        return render_form(self)

    # -- linear structure --------------------------------------------------
    def __add__(self, other: "DifferentialForm") -> "DifferentialForm":
        if self.coords != other.coords:
            raise ChartMismatch(f"{self.coords} vs {other.coords}")
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.degree != other.degree:
            raise ValueError("adding forms of different degrees")
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms.get(k, RationalFunction()) + c
        return DifferentialForm(self.coords, terms, poles=_merge_poles(self.poles, other.poles),
                                degree=self.degree, relation=self.relation or other.relation)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "DifferentialForm":
        c = RationalFunction.coerce(c)
        return DifferentialForm(self.coords, {k: v * c for k, v in self.terms.items()},
                                poles=self.poles, degree=self.degree, relation=self.relation)

    __mul__ = scale
    __rmul__ = scale

    # -- exterior product --------------------------------------------------
    def wedge(self, other: "DifferentialForm") -> "DifferentialForm":
        if self.coords != other.coords:
            raise ChartMismatch(f"{self.coords} vs {other.coords}")
        terms: Dict[Tuple[int, ...], RationalFunction] = {}
        for i1, c1 in self.terms.items():
            for i2, c2 in other.terms.items():
                sign, key = _sort_sign(i1 + i2)
                if not sign:
                    continue
                c = c1 * c2
                terms[key] = terms.get(key, RationalFunction()) + (c if sign > 0 else -c)
        poles = _merge_poles(self.poles, other.poles)
        if poles is not None:
            _check_coprime(poles)
        return DifferentialForm(self.coords, terms, poles=poles,
                                degree=self.degree + other.degree,
                                relation=self.relation or other.relation)

    __xor__ = wedge

    # -- pullback ----------------------------------------------------------
    def pullback(self, new_coords: Sequence[str], substitution: Mapping[str, object],
                 poles=None) -> "DifferentialForm":
        """Substitute ``coord -> phi(new_coords)`` and expand differentials."""
        new_coords = tuple(new_coords)
        sub = {c: RationalFunction.coerce(substitution.get(c, RationalFunction.var(c)))
               for c in self.coords}
        jac = {c: [sub[c].diff(t) for t in new_coords] for c in self.coords}
        m = len(new_coords)
        terms: Dict[Tuple[int, ...], RationalFunction] = {}
        for idx, coef in self.terms.items():
            try:
                c = coef.subs(sub)
            except ZeroDivisionError as exc:
                raise SingularSubstitution(str(exc)) from None
            if len(idx) > m:
                continue
            rows = [jac[self.coords[i]] for i in idx]
            for J in itertools.combinations(range(m), len(idx)):
                minor = linalg.det([[r[j] for j in J] for r in rows]) if idx else RationalFunction.const(1)
                minor = RationalFunction.coerce(minor)
                if minor.is_zero():
                    continue
                terms[J] = terms.get(J, RationalFunction()) + c * minor
        return DifferentialForm(new_coords, terms, poles=poles, degree=self.degree)

    def to_chart(self, source, target, poles=None) -> "DifferentialForm":
        """Re-express a form written in chart ``source`` in chart ``target``."""
        if source == target:
            return self
        return self.pullback(target.coordinates, source.transition_to(target), poles=poles)

    # -- restriction --------------------------------------------------------
    def restrict(self, h: MultiPoly, v: str) -> "DifferentialForm":
        """Restrict to ``{h = 0}``, ``h`` monic in ``v``.

        ``dv`` is eliminated by implicit differentiation; coefficients are
        reduced modulo ``h``.  When ``h`` is linear in ``v`` the variable is
        substituted away entirely.
        """
        if self.poles:
            for P in self.poles:
                if P.h is not None and (P.h == h or poly_gcd(P.h, h).total_degree() > 0):
                    raise PoleOnRestrictionLocus(f"{P.h} is a declared pole on {h}")
        for c in self.terms.values():
            if poly_gcd(c.den, h).total_degree() > 0:
                raise PoleOnRestrictionLocus(f"denominator {c.den} vanishes on {h}")
        d = h.degree(v)
        lc = h.leading_coefficient_in(v)
        if d <= 0 or not lc.is_constant():
            raise NotMonic(f"{h} is not monic in {v}")
        rest = tuple(c for c in self.coords if c != v)
        hv = RationalFunction(h.diff(v))
        dv = {c: -RationalFunction(h.diff(c)) / hv for c in rest}
        if d == 1:
            sol = -RationalFunction(h - lc * MultiPoly.var(v)) / RationalFunction(lc)
            sub = {v: sol}
            for c in rest:
                sub[c] = RationalFunction.var(c)
            return self.pullback(rest, sub)
        # keep v as an algebraic function on {h = 0}
        terms: Dict[Tuple[int, ...], RationalFunction] = {}
        for idx, coef in self.terms.items():
            pieces = [[(rest.index(self.coords[i]), RationalFunction.const(1))] if self.coords[i] != v
                      else [(rest.index(c), dv[c]) for c in rest] for i in idx]
            for combo in itertools.product(*pieces):
                sign, key = _sort_sign([k for k, _ in combo])
                if not sign:
                    continue
                val = coef
                for _, f in combo:
                    val = val * f
                terms[key] = terms.get(key, RationalFunction()) + (val if sign > 0 else -val)
        return DifferentialForm(rest, terms, degree=self.degree, relation=(h, v))

    # -- pointwise evaluation ----------------------------------------------
    def at(self, point: Mapping[str, object]) -> "DifferentialForm":
        """Constant-coefficient form at a point."""
        vals = {k: RationalFunction.coerce(v) for k, v in point.items()}
        terms = {}
        for idx, c in self.terms.items():
            try:
                terms[idx] = c.subs(vals)
            except ZeroDivisionError:
                raise SingularSubstitution(f"{c} has a pole at the point") from None
        return DifferentialForm(self.coords, terms, degree=self.degree)

    def evaluate(self, vectors: Sequence[Sequence], point: Optional[Mapping[str, object]] = None):
        """Value on ``vectors`` (determinant expansion over the terms)."""
        form = self.at(point) if point is not None else self
        if len(vectors) != form.degree:
            raise ValueError("need exactly degree-many vectors")
        out = RationalFunction()
        for idx, c in form.terms.items():
            M = [[RationalFunction.coerce(vec[i]) for vec in vectors] for i in idx]
            out = out + c * (linalg.det(M) if idx else 1)
        return out


def _merge_poles(a, b):
    if a is None and b is None:
        return None
    out = list(a or ())
    for p in b or ():
        if p not in out:
            out.append(p)
    return tuple(out)


def _check_coprime(poles):
    hs = [p.h for p in poles if p.h is not None]
    for i in range(len(hs)):
        for j in range(i + 1, len(hs)):
            if poly_gcd(hs[i], hs[j]).total_degree() > 0:
                from .errors import NotAdmissible

                raise NotAdmissible(f"pole components {hs[i]} and {hs[j]} are not coprime")


# ---------------------------------------------------------------------------
# Polar components and chain admissibility


@dataclass(frozen=True)
class Component:
    """A polar component located in a chart where it is visible."""

    chart: object
    h: MultiPoly
    variable: str
    label: str
    infinity: Optional[int] = None
    declared: Optional[PoleComponent] = None


@dataclass
class ValidationReport:
    valid: bool
    problems: List[str] = field(default_factory=list)
    components: List[Component] = field(default_factory=list)

    def __bool__(self):
        return self.valid


def _order_along(p: MultiPoly, u: MultiPoly) -> int:
    k = 0
    while not p.is_zero():
        q = poly_exquo(p, u)
        if q is None:
            break
        p = q
        k += 1
    return k


def polar_components(omega: DifferentialForm, space,
                     problems: Optional[List[str]] = None) -> List[Component]:
    """Polar components of a top-degree form written in ``space.chart0``.

    Declared finite poles are used as given (validated against the
    denominator); undeclared forms have their denominator factored.  Divisors
    at infinity are found by moving to the chart where each is a coordinate
    hyperplane.  Reducible components are split into irreducible factors.
    """
    from .spaces import monic_variable

    strict = problems is None
    problems = [] if problems is None else problems

    def fail(msg):
        if strict:
            from .errors import NotAdmissible

            raise NotAdmissible(msg)
        problems.append(msg)

    chart0 = space.chart0
    g = omega.top_coefficient()
    den = spatial_part(g.den)
    comps: List[Component] = []
    finite = []
    if omega.poles is not None:
        declared = [p for p in omega.poles if p.h is not None]
        for a in range(len(declared)):
            for b in range(a + 1, len(declared)):
                if poly_gcd(declared[a].h, declared[b].h).total_degree() > 0:
                    fail(f"components {declared[a].h} and {declared[b].h} are not coprime")
        prod = MultiPoly.const(1)
        for p in declared:
            prod = prod * p.h
        for p in declared:
            if not den.is_constant() and poly_exquo(den, p.h * p.h) is not None:
                fail(f"pole of multiplicity >= 2 along {p.h}")
        if poly_exquo(prod, den) is None:
            extra = [f for f, _ in factor_poly(den) if poly_exquo(prod, f) is None]
            if extra:
                fail(f"undeclared pole components {', '.join(map(str, extra))}")
            else:
                fail("pole of multiplicity >= 2")
        for p in declared:
            if poly_gcd(p.h, den).total_degree() == 0:
                continue
            for f, _ in factor_poly(p.h):
                finite.append((f, p))
    else:
        for f, k in factor_poly(den):
            if k > 1:
                fail(f"pole of multiplicity {k} along {f}")
            finite.append((f, None))
    for f, decl in finite:
        v = decl.variable if (decl is not None and decl.h == f) else None
        try:
            v = v or monic_variable(f, chart0.coordinates)
        except NotMonic as exc:
            fail(str(exc))
            continue
        comps.append(Component(chart0, f, v, str(f), None, decl))
    declared_inf = {p.infinity for p in (omega.poles or ()) if p.infinity}
    for k, ch, u in space.infinity_divisors():
        g2 = omega.to_chart(chart0, ch).top_coefficient()
        uu = MultiPoly.var(u)
        order = _order_along(g2.den, uu) - _order_along(g2.num, uu)
        names = space.factors[k].names
        label = f"infinity({names[0]})" if names else "infinity"
        if order >= 2:
            fail(f"pole of order {order} at {label}")
        elif order == 1:
            if omega.poles is not None and not (declared_inf & set(names)):
                fail(f"undeclared pole at {label}")
            comps.append(Component(ch, uu, u, label, k,
                                   next((p for p in omega.poles or () if p.infinity in names), None)))
    return comps


def validate_chain_form(omega: DifferentialForm, variety) -> ValidationReport:
    """Check degree, first-order poles and normal crossings of a chain form.

    ``variety`` is a catalog source space or a SubvarietyPresentation.
    """
    from .spaces import AmbientSpace, hypersurface_in_chart, parametrize

    space = variety if isinstance(variety, AmbientSpace) else parametrize(variety).source
    problems: List[str] = []
    if omega.degree != space.dimension and not omega.is_zero():
        problems.append(f"form degree {omega.degree} != dimension {space.dimension}")
        return ValidationReport(False, problems)
    if tuple(omega.coords) != space.chart0.coordinates:
        problems.append(f"form coordinates {omega.coords} != {space.chart0.coordinates}")
        return ValidationReport(False, problems)
    if omega.is_zero() or space.dimension == 0:
        return ValidationReport(True)
    comps = polar_components(omega, space, problems)
    if space.dimension >= 2 and not problems:
        problems.extend(_normal_crossing_problems(comps, space, hypersurface_in_chart))
    return ValidationReport(not problems, problems, comps)


def _normal_crossing_problems(comps, space, hypersurface_in_chart) -> List[str]:
    out = []
    n = space.dimension
    for ch in space.charts():
        local = []
        for c in comps:
            h = hypersurface_in_chart(c.h, c.chart, ch)
            if not h.is_constant():
                local.append((c.label, h))
        if not local:
            continue
        if all(len(h.variables) == 1 for _, h in local):
            # univariate components: squarefree pieces in distinct or equal
            # variables never meet non-transversally
            for lab, h in local:
                if any(k > 1 for _, k in factor_poly(h)):
                    out.append(f"{lab} is not reduced in chart {ch}")
            continue
        coords = ch.coordinates
        for lab, h in local:
            if has_common_zero([h] + [h.diff(c) for c in coords]):
                out.append(f"{lab} is singular in chart {ch}")
        for size in range(2, len(local) + 1):
            for group in itertools.combinations(local, size):
                hs = [h for _, h in group]
                if size > n:
                    if has_common_zero(hs):
                        out.append(f"{', '.join(l for l, _ in group)} meet in chart {ch}")
                    continue
                jac = [[h.diff(c) for c in coords] for h in hs]
                minors = []
                for cols in itertools.combinations(range(len(coords)), size):
                    M = [[RationalFunction(r[j]) for j in cols] for r in jac]
                    minors.append(RationalFunction.coerce(linalg.det(M)).as_polynomial())
                if has_common_zero(hs + minors):
                    out.append(f"{', '.join(l for l, _ in group)} are not transverse in chart {ch}")
    return sorted(set(out))
