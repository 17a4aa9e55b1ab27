"""Canonical text for scalars, forms, presentations and chains.

The output is also valid session syntax, so rendered objects re-parse to
equal objects.
"""

from __future__ import annotations

from typing import List, Sequence

from .algebra import (TAU, GaussianRational, MultiPoly, RationalFunction, format_gaussian,
                      format_poly, format_rational)


def render_scalar(c) -> str:
    return format_rational(RationalFunction.coerce(c))


def _needs_parens(text: str) -> bool:
    depth = 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif depth == 0 and ch in "+-" and i > 0:
            return True
    return False


def _coefficient_prefix(c: RationalFunction) -> str:
    if c == 1:
        return ""
    if c == -1:
        return "-"
    text = format_rational(c)
    if _needs_parens(text):
        text = f"({text})"
    return text + "*"


def render_form(form) -> str:
    if form.is_zero():
        return "0"
    if form.degree == 0:
        return render_scalar(form.terms.get((), 0))
    parts = []
    for idx in sorted(form.terms):
        wedge = "^".join(f"d{form.coords[i]}" for i in idx)
        parts.append(_coefficient_prefix(form.terms[idx]) + wedge)
    out = parts[0]
    for p in parts[1:]:
        out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
    return out


def render_poles(poles) -> str:
    return "poles [" + ", ".join(p.label for p in poles) + "]"


def render_point_values(chart, values: Sequence[GaussianRational]) -> str:
    vals = [format_gaussian(GaussianRational.coerce(v)) for v in values]
    if chart.is_chart0():
        return "point(" + ",".join(vals) + ")"
    return "point(" + ",".join(f"{c}={v}" for c, v in zip(chart.coordinates, vals)) + ")"


def render_presentation(V) -> str:
    if V.kind == "whole":
        return "whole"
    if V.kind == "point":
        return render_point_values(V.chart, V.coordinates)
    if V.kind == "hypersurface":
        return f"hyp({format_poly(V.h)})"
    assigns = ", ".join(f"{c}={format_rational(a)}" for c, a in V.assignments)
    return f"graph({','.join(V.parameters)}; {assigns})"


def is_negative(c: RationalFunction) -> bool:
    if c.is_zero():
        return False
    lead = c.num.sorted_terms()[0][1]
    return lead.re < 0 or (lead.re == 0 and lead.im < 0)


def tau_power(c: RationalFunction) -> int:
    """Exponent of the largest power of tau dividing ``c`` (negative for poles)."""
    k = 0
    num, den = c.num, c.den
    t = MultiPoly.var(TAU)
    from .algebra import poly_exquo

    while not num.is_zero():
        q = poly_exquo(num, t)
        if q is None:
            break
        num, k = q, k + 1
    while True:
        q = poly_exquo(den, t)
        if q is None:
            break
        den, k = q, k - 1
    return k


def render_chain(chain) -> str:
    """``(2πi)^m*[(variety,form) + ...]`` with the common tau power pulled out."""
    terms = chain.terms
    if not terms:
        return "0"
    powers = [min(tau_power(c) for c in t.form.terms.values()) for t in terms]
    m = min(powers)
    scale = RationalFunction.var(TAU) ** (-m) if m else RationalFunction.const(1)
    parts: List[str] = []
    for t in terms:
        form = t.form.scale(scale)
        first = form.terms[min(form.terms)]
        neg = is_negative(first)
        if neg:
            form = form.scale(-1)
        body = f"({t.display()},{render_form(form)})"
        parts.append(("- " if neg else "+ ") + body)
    text = " ".join(parts)
    text = text[2:] if text.startswith("+ ") else "-" + text[2:]
    if m == 0:
        return f"[{text}]"
    prefix = "(2πi)" if m == 1 else f"(2πi)^{m}" if m > 0 else f"(2πi)^({m})"
    return f"{prefix}*[{text}]"
