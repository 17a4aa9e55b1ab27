"""Independent reference computations in plain sympy.

Nothing here imports the library's algorithms; only converters at the edges.
"""

from __future__ import annotations

import sympy as sp

TAU = sp.Symbol("tau")


def residue_at(expr, z, z0):
    """Residue of ``expr dz`` at ``z0`` (``sp.oo`` allowed)."""
    if z0 is sp.oo:
        u = sp.Symbol("u_", nonzero=True)
        return sp.residue(sp.together(-expr.subs(z, 1 / u) / u**2), u, 0)
    return sp.residue(sp.together(expr), z, z0)


def all_residues(expr, z):
    """Residues at every finite pole (over C) and at infinity."""
    num, den = sp.fraction(sp.together(expr))
    poles = sp.roots(sp.Poly(den, z))
    out = {p: sp.simplify(residue_at(expr, z, p)) for p in poles}
    out[sp.oo] = sp.simplify(residue_at(expr, z, sp.oo))
    return out


def double_residue(g, first, second):
    """``res`` of ``g dx^dy`` along ``first = (var, value)`` and then along ``second``.

    Convention: ``omega = rho ^ dh/h`` for the first divisor; the dx^dy
    ordering fixes the sign, ``(-1)`` when the first variable is ``x``.
    """
    x, y = sp.symbols("x y")
    (v1, a1), (v2, a2) = first, second
    sign = 1 if v1 == y else -1
    rho = sp.cancel(g * (v1 - a1)).subs(v1, a1)
    return sp.simplify(sign * sp.cancel(rho * (v2 - a2)).subs(v2, a2))


def frame_ratio(alpha_vals, beta_vals, mu_coeff, frame_rows):
    """``alpha(TA) * beta(TB) / (mu_coeff * det(frame))`` with the frame given as rows."""
    return sp.simplify(alpha_vals * beta_vals / (mu_coeff * sp.Matrix(frame_rows).det()))


def linking_oracle(c, e, b):
    """C1=(t,t,b), alpha1=dt/t; S2={y=c}, beta2=dx^dz/(tau (x-e) z); mu=dlog x^dlog y^dlog z.

    The single meeting point is t=c, i.e. P=(c,c,b).
    """
    alpha = sp.Rational(1, 1) / c                          # dt/t on d/dt
    beta = 1 / (TAU * (c - e) * b)                          # on (d/dx, d/dz)
    mu = sp.Rational(1, 1) / (c * c * b)                    # 1/(xyz)
    frame = [[1, 1, 0], [1, 0, 0], [0, 0, 1]]               # (T C1, T S2)
    return frame_ratio(alpha, beta, mu, frame)


def pushforward_value(F, g, z, w0, digits=40):
    """``sum g/F'`` over the roots of ``F = w0``, numerically."""
    num, den = sp.fraction(sp.together(F))
    poly = sp.Poly(sp.expand(num - w0 * den), z)
    dF = sp.diff(F, z)
    total = 0
    for r in poly.nroots(n=digits, maxsteps=200):
        total += (g / dF).subs(z, r).evalf(digits)
    return sp.N(total, digits)
