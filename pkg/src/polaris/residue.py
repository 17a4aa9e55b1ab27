"""Poincaré residues of top-degree forms along first-order pole components.

For ``omega = g dx_0^...^dx_{k-1}`` and a component ``h`` monic in
``v = x_j``, write ``omega = rho ^ dh/h + eps``.  Only the ``dv`` part of
``dh`` contributes, so

    rho = (-1)^(k-1-j) * g*h / (dh/dv) * dx_0^...^(no dx_j)^...^dx_{k-1}

and the residue is ``rho`` restricted to ``{h = 0}``.
"""

from __future__ import annotations

from typing import List, Optional, Tuple

from .algebra import MultiPoly, RationalFunction, remainder_mod, trace_mod
from .errors import (ComponentNotDeclared, NotAdmissible, NotTopDegree, NotTransverse,
                     SingularSubstitution)
from .forms import (Component, DifferentialForm, PoleComponent, polar_components,
                    validate_chain_form)


def default_space(omega: DifferentialForm):
    """``P^1`` for one coordinate, otherwise the product of lines on the form's coordinates."""
    from .spaces import product_of_lines

    return product_of_lines(len(omega.coords), omega.coords)


def residue_along(omega: DifferentialForm, h: MultiPoly, v: str) -> DifferentialForm:
    """Residue along ``{h = 0}`` in the coordinates the form is written in."""
    k = len(omega.coords)
    if omega.degree != k:
        raise NotTopDegree(f"residues need a top-degree form, got degree {omega.degree}")
    j = omega.coords.index(v)
    g = omega.terms.get(tuple(range(k)), RationalFunction())
    rest = tuple(c for c in omega.coords if c != v)
    lc = h.leading_coefficient_in(v)
    hv = RationalFunction(h.diff(v))
    c = g * RationalFunction(h) / hv
    if (k - 1 - j) % 2:
        c = -c
    if h.degree(v) == 1:
        sol = -RationalFunction(h - lc * MultiPoly.var(v)) / RationalFunction(lc)
        try:
            c = c.subs({v: sol})
        except ZeroDivisionError:
            raise NotAdmissible(f"pole of order >= 2 along {h}") from None
        return DifferentialForm(rest, {tuple(range(k - 1)): c}, degree=k - 1)
    try:
        c = remainder_mod(c, h, v)
    except ZeroDivisionError:
        raise NotAdmissible(f"pole of order >= 2 along {h}") from None
    return DifferentialForm(rest, {tuple(range(k - 1)): c}, degree=k - 1, relation=(h, v))


def _locate(omega: DifferentialForm, V: PoleComponent, space) -> Tuple[DifferentialForm, MultiPoly, str]:
    if V.at_infinity:
        space = space or default_space(omega)
        try:
            k = space.factor_of(V.infinity)
        except KeyError:
            raise ComponentNotDeclared(f"{V.infinity} is not a coordinate of {space}") from None
        _, ch, u = space.infinity_divisors()[k]
        if omega.poles is not None and V not in omega.poles:
            raise ComponentNotDeclared(f"{V.label} is not a declared pole")
        return omega.to_chart(space.chart0, ch), MultiPoly.var(u), u
    if omega.poles is not None:
        if not any(p.h is not None and (p.h == V.h or _divides(V.h, p.h)) for p in omega.poles):
            raise ComponentNotDeclared(f"{V.h} is not a declared pole")
    else:
        from .algebra import poly_exquo

        if omega.degree == len(omega.coords) and \
                poly_exquo(omega.top_coefficient().den, V.h) is None:
            raise ComponentNotDeclared(f"{V.h} is not a pole of the form")
    v = V.variable
    if v is None:
        from .spaces import monic_variable

        v = monic_variable(V.h, omega.coords)
    return omega, V.h, v


def _divides(f: MultiPoly, h: MultiPoly) -> bool:
    from .algebra import poly_exquo

    return poly_exquo(h, f) is not None


def poincare_residue(omega: DifferentialForm, V: PoleComponent, space=None) -> DifferentialForm:
    """Residue of a top-degree form along one declared component.

    Components at infinity are handled by moving the whole form to the chart
    in which the divisor is a coordinate hyperplane; the result is then in
    that chart's remaining coordinates.
    """
    if omega.degree != len(omega.coords):
        raise NotTopDegree(f"residues need a top-degree form, got degree {omega.degree}")
    form, h, v = _locate(omega, V, space)
    return residue_along(form, h, v)


def residue_all(omega: DifferentialForm, space=None) -> List[Tuple[Component, DifferentialForm]]:
    """One residue per polar component, including those at infinity."""
    space = space or default_space(omega)
    report = validate_chain_form(omega, space)
    if not report.valid:
        raise NotAdmissible("; ".join(report.problems))
    out = []
    for comp in report.components:
        form = omega.to_chart(space.chart0, comp.chart)
        out.append((comp, residue_along(form, comp.h, comp.variable)))
    return out


def repeated_residue(omega: DifferentialForm, Vi: PoleComponent, Vj: PoleComponent,
                     space=None) -> DifferentialForm:
    """``res_{i,j} omega``: residue along ``Vj`` first, then along ``Vi`` inside ``Vj``."""
    if Vi.at_infinity or Vj.at_infinity:
        raise NotAdmissible("repeated residues are taken at finite components")
    first = poincare_residue(omega, Vj, space)
    h = Vj.h
    v = Vj.variable
    if v is None:
        from .spaces import monic_variable

        v = monic_variable(h, omega.coords)
    lc = h.leading_coefficient_in(v)
    if h.degree(v) != 1:
        raise NotAdmissible(f"{h} is not linear in {v}")
    sol = -RationalFunction(h - lc * MultiPoly.var(v)) / RationalFunction(lc)
    hi = RationalFunction(Vi.h).subs({v: sol})
    if hi.is_constant():
        raise NotTransverse(f"{Vi.h} and {Vj.h} do not meet")
    hi = hi.num
    from .spaces import monic_variable

    try:
        vi = monic_variable(hi, first.coords)
    except Exception:
        raise NotTransverse(f"{Vi.h} restricted to {Vj.h} is not monic in any coordinate") from None
    return residue_along(first, hi, vi)


def point_residue(G: RationalFunction, z: str, z0=None) -> RationalFunction:
    """Residue of ``G dz`` at ``z = z0`` (``None`` meaning infinity) by Laurent
    expansion; any pole order."""
    if z0 is None:
        u = f"{z}_inf_"
        Gu = G.subs({z: 1 / RationalFunction.var(u)}) * RationalFunction(-1) / RationalFunction.var(u) ** 2
        return point_residue(Gu, u, 0)
    z0 = RationalFunction.coerce(z0)
    t = RationalFunction.var(z) - z0
    m = 0
    den = G.den
    from .algebra import poly_exquo

    tp = t.num
    while True:
        q = poly_exquo(den, tp)
        if q is None:
            break
        den, m = q, m + 1
    if m == 0:
        return RationalFunction()
    H = G * t ** m
    for _ in range(m - 1):
        H = H.diff(z)
    fact = 1
    for i in range(2, m):
        fact *= i
    return H.subs({z: z0}) / fact


def p1_residue_sum(omega: DifferentialForm, space=None) -> RationalFunction:
    """Sum of all residues of a 1-form on ``P^1``, infinity included."""
    from .spaces import projective_space

    space = space or projective_space(1, omega.coords)
    report = validate_chain_form(omega, space)
    if not report.valid:
        raise NotAdmissible("; ".join(report.problems))
    total = RationalFunction()
    for comp in report.components:
        form = omega.to_chart(space.chart0, comp.chart)
        g = form.top_coefficient()
        v = comp.variable
        total = total + trace_mod(g * RationalFunction(comp.h) / RationalFunction(comp.h.diff(v)),
                                  comp.h, v)
    return total
