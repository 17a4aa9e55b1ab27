"""Push-forward of 1-forms along rational self-maps of the line.

``f_* (g dz)`` at a target point ``w`` sums ``g/F'`` over the ``d`` preimages
of ``w``, which is the trace of ``g/F'`` in ``K(w)[z]/(num F - w den F)``.
No roots are ever computed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional

from .algebra import MultiPoly, RationalFunction, factor_poly, poly_gcd, remainder_mod, trace_mod
from .errors import ConstantMap, InseparableFiber
from .forms import DifferentialForm, validate_chain_form
from .residue import point_residue
from .spaces import MorphismPresentation, projective_space, rational_self_map

_W = "w_target_"


def _as_map(f, z: str) -> MorphismPresentation:
    if isinstance(f, MorphismPresentation):
        return f
    return rational_self_map(f, z)


def fiber_polynomial(F: RationalFunction, z: str, w: str = _W) -> MultiPoly:
    """``num(F) - w den(F)``: its roots in ``z`` are the preimages of ``w``."""
    h = F.num - MultiPoly.var(w) * F.den
    if h.degree(z) <= 0:
        raise ConstantMap(f"{F} is constant")
    return h


def pushforward(f, omega: DifferentialForm) -> DifferentialForm:
    """``f_* omega`` for ``omega = g(z) dz`` on ``P^1``; result in the same coordinate."""
    (z,) = omega.coords
    m = _as_map(f, z)
    F = m.F.rename({m.variable: z}) if m.variable != z else m.F
    h = fiber_polynomial(F, z)
    hz = h.diff(z)
    if poly_gcd(h, hz).degree(z) > 0:
        raise InseparableFiber(f"{h} is not squarefree in {z}")
    g = omega.terms.get((0,), RationalFunction())
    coef = trace_mod(g / F.diff(z), h, z)
    return DifferentialForm((z,), {(0,): coef.rename({_W: z})}, degree=1)


def pullback(f, omega: DifferentialForm) -> DifferentialForm:
    """``f^* omega`` for a rational self-map ``f`` of ``P^1``."""
    (z,) = omega.coords
    m = _as_map(f, z)
    F = m.F.rename({m.variable: z}) if m.variable != z else m.F
    return omega.pullback((z,), {z: F})


def _map_value(F: RationalFunction, z: str, z0) -> Optional[RationalFunction]:
    """``F(z0)``, with None standing for infinity (in both slots)."""
    if z0 is None:
        d = max(F.num.degree(z), F.den.degree(z))
        if F.num.degree(z) > F.den.degree(z):
            return None
        if F.num.degree(z) < F.den.degree(z):
            return RationalFunction()
        return RationalFunction(F.num.coefficients_in(z)[d]) / RationalFunction(F.den.coefficients_in(z)[d])
    z0 = RationalFunction.coerce(z0)
    den = RationalFunction(F.den).subs({z: z0})
    if den.is_zero():
        return None
    return RationalFunction(F.num).subs({z: z0}) / den


@dataclass(frozen=True)
class CommuteReport:
    equal: bool
    residue_of_pushforward: RationalFunction
    pushforward_of_residue: RationalFunction
    target: Optional[RationalFunction]

    def __bool__(self):
        return self.equal


def _lands_on(F: RationalFunction, z: str, h: MultiPoly, target) -> bool:
    """Whether every root of the irreducible ``h`` maps to ``target``."""
    if target is None:
        return remainder_mod(RationalFunction(F.den), h, z).is_zero()
    if not remainder_mod(RationalFunction(F.den), h, z).is_zero():
        return remainder_mod(F - target, h, z).is_zero()
    return False


def check_residue_commute(f, omega: DifferentialForm, V0=None) -> CommuteReport:
    """Compare ``res_{f(V)} f_* omega`` with the residues of ``omega`` summed
    over the fiber ``f^{-1}(f(V))``.

    ``V0`` is a pole of ``omega`` given by its ``z`` value (None for infinity).
    """
    (z,) = omega.coords
    m = _as_map(f, z)
    F = m.F.rename({m.variable: z}) if m.variable != z else m.F
    target = _map_value(F, z, V0)
    pushed = pushforward(m, omega)
    lhs = point_residue(pushed.terms.get((0,), RationalFunction()), z, target)
    space = projective_space(1, (z,))
    report = validate_chain_form(omega, space)
    if not report.valid:
        from .errors import NotAdmissible

        raise NotAdmissible("; ".join(report.problems))
    rhs = RationalFunction()
    for comp in report.components:
        form = omega.to_chart(space.chart0, comp.chart)
        g = form.top_coefficient()
        res = trace_mod(g * RationalFunction(comp.h) / RationalFunction(comp.h.diff(comp.variable)),
                        comp.h, comp.variable)
        if comp.infinity is not None:
            hit = _map_value(F, z, None)
            if (hit is None and target is None) or (hit is not None and target is not None
                                                    and hit == target):
                rhs = rhs + res
        elif _lands_on(F, z, comp.h, target):
            rhs = rhs + res
    return CommuteReport(lhs == rhs, lhs, rhs, target)
