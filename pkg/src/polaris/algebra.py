"""Exact arithmetic: Gaussian rationals, sparse polynomials, rational functions.

The formal symbol ``tau`` stands for 2*pi*i.  It is an ordinary polynomial
variable as far as arithmetic goes, so a ``TauScalar`` (a rational function
of ``tau`` over Q(i)) is just a :class:`RationalFunction` whose only variable
is ``tau``.  Rendering prints ``tau`` as ``2πi``.

Polynomials are immutable.  Monomials are tuples of ``(name, exponent)``
pairs sorted by :func:`var_key`; the coefficient dictionary never stores
zeros, so structural equality is mathematical equality.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Mapping, Tuple, Union

from sympy.polys.domains import QQ_I
from sympy.polys.rings import ring as _sympy_ring

from .errors import DivisionByZero, NonInvertibleDenominator, NotMonic

TAU = "tau"


def var_key(name: str):
    """Canonical variable order: alphabetical, ``tau`` last."""
    return (name == TAU, name)


# ---------------------------------------------------------------------------
# Gaussian rationals


class GaussianRational:
    """An element ``re + im*i`` of Q(i) with exact rational parts."""

    __slots__ = ("re", "im", "_hash")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)
        self._hash = None

    @classmethod
    def coerce(cls, value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, complex):
            return cls(Fraction(value.real), Fraction(value.imag))
        return cls(value)

    def __add__(self, other):
        if not isinstance(other, GaussianRational):
            other = GaussianRational.coerce(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        if not isinstance(other, GaussianRational):
            other = GaussianRational.coerce(other)
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, GaussianRational):
            other = GaussianRational.coerce(other)
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return GaussianRational(a * c, 0)
        return GaussianRational(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def inverse(self) -> "GaussianRational":
        n = self.re * self.re + self.im * self.im
        if not n:
            raise DivisionByZero("division by zero in Q(i)")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        return self * GaussianRational.coerce(other).inverse()

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = GaussianRational(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.re, self.im)) if self.im else hash(self.re)
        return self._hash

    def is_real(self) -> bool:
        return not self.im

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        return format_gaussian(self)

    def to_sympy_domain(self):
        return QQ_I(self.re, self.im)

    @classmethod
    def from_sympy_domain(cls, e) -> "GaussianRational":
        return cls(Fraction(int(e.x.numerator), int(e.x.denominator)),
                   Fraction(int(e.y.numerator), int(e.y.denominator)))


GR = GaussianRational
ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I_UNIT = GaussianRational(0, 1)


def format_gaussian(c: GaussianRational) -> str:
    """Canonical text: ``3/2``, ``i``, ``-1/2*i``, ``(1+2*i)``."""
    def rat(q: Fraction) -> str:
        return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"

    if not c.im:
        return rat(c.re)
    if c.im == 1:
        im = "i"
    elif c.im == -1:
        im = "-i"
    else:
        im = f"{rat(c.im)}*i"
    if not c.re:
        return im
    sign = "" if im.startswith("-") else "+"
    return f"({rat(c.re)}{sign}{im})"


# ---------------------------------------------------------------------------
# Polynomials

Monomial = Tuple[Tuple[str, int], ...]
ONE_MONO: Monomial = ()


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items(), key=lambda t: var_key(t[0])))


def _mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


class MultiPoly:
    """Sparse multivariate polynomial over Q(i)."""

    __slots__ = ("terms", "_hash", "_vars")

    def __init__(self, terms: Mapping[Monomial, GaussianRational] = None):
        if terms is None:
            terms = {}
        self.terms: Dict[Monomial, GaussianRational] = {m: c for m, c in terms.items() if c}
        self._hash = None
        self._vars = None

    @classmethod
    def _raw(cls, terms):
        p = cls.__new__(cls)
        p.terms = terms
        p._hash = None
        p._vars = None
        return p

    @classmethod
    def const(cls, c) -> "MultiPoly":
        c = GaussianRational.coerce(c)
        return cls._raw({ONE_MONO: c} if c else {})

    @classmethod
    def var(cls, name: str) -> "MultiPoly":
        return cls._raw({((name, 1),): ONE})

    @classmethod
    def coerce(cls, value) -> "MultiPoly":
        if isinstance(value, MultiPoly):
            return value
        if isinstance(value, str):
            return cls.var(value)
        return cls.const(value)

    # -- inspection ---------------------------------------------------------
    @property
    def variables(self) -> Tuple[str, ...]:
        if self._vars is None:
            vs = {v for m in self.terms for v, _ in m}
            self._vars = tuple(sorted(vs, key=var_key))
        return self._vars

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and ONE_MONO in self.terms)

    def constant_value(self) -> GaussianRational:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.terms.get(ONE_MONO, ZERO)

    def constant_term(self) -> GaussianRational:
        return self.terms.get(ONE_MONO, ZERO)

    def degree(self, v: str) -> int:
        """Degree in ``v``; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(dict(m).get(v, 0) for m in self.terms)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(_mono_degree(m) for m in self.terms)

    def _order_key(self, vs):
        def key(m):
            d = dict(m)
            return (_mono_degree(m), tuple(d.get(v, 0) for v in vs))
        return key

    def sorted_terms(self):
        """Terms in descending graded-lex order."""
        vs = self.variables
        return sorted(self.terms.items(), key=lambda t: self._order_key(vs)(t[0]), reverse=True)

    def leading_coefficient(self) -> GaussianRational:
        if not self.terms:
            return ZERO
        vs = self.variables
        m = max(self.terms, key=self._order_key(vs))
        return self.terms[m]

    def coefficients_in(self, v: str) -> Dict[int, "MultiPoly"]:
        """Split as ``sum_k c_k * v**k`` with ``c_k`` free of ``v``."""
        out: Dict[int, Dict[Monomial, GaussianRational]] = {}
        for m, c in self.terms.items():
            k = 0
            rest = []
            for name, e in m:
                if name == v:
                    k = e
                else:
                    rest.append((name, e))
            out.setdefault(k, {})[tuple(rest)] = c
        return {k: MultiPoly._raw(t) for k, t in out.items()}

    def leading_coefficient_in(self, v: str) -> "MultiPoly":
        cs = self.coefficients_in(v)
        return cs[max(cs)] if cs else MultiPoly()

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = MultiPoly.coerce(other)
        if not other.terms:
            return self
        t = dict(self.terms)
        for m, c in other.terms.items():
            s = t.get(m)
            if s is None:
                t[m] = c
            else:
                s = s + c
                if s:
                    t[m] = s
                else:
                    del t[m]
        return MultiPoly._raw(t)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-MultiPoly.coerce(other))

    def __rsub__(self, other):
        return MultiPoly.coerce(other) - self

    def __mul__(self, other):
        other = MultiPoly.coerce(other)
        if not self.terms or not other.terms:
            return MultiPoly._raw({})
        t: Dict[Monomial, GaussianRational] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                s = t.get(m)
                t[m] = c1 * c2 if s is None else s + c1 * c2
        return MultiPoly._raw({m: c for m, c in t.items() if c})

    __rmul__ = __mul__

    def scale(self, c) -> "MultiPoly":
        c = GaussianRational.coerce(c)
        if not c:
            return MultiPoly._raw({})
        return MultiPoly._raw({m: a * c for m, a in self.terms.items()})

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = MultiPoly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def diff(self, v: str) -> "MultiPoly":
        t: Dict[Monomial, GaussianRational] = {}
        for m, c in self.terms.items():
            d = dict(m)
            e = d.get(v, 0)
            if not e:
                continue
            if e == 1:
                del d[v]
            else:
                d[v] = e - 1
            mono = tuple(sorted(d.items(), key=lambda x: var_key(x[0])))
            t[mono] = t.get(mono, ZERO) + c * e
        return MultiPoly._raw({m: c for m, c in t.items() if c})

    def subs(self, mapping: Mapping[str, "MultiPoly"]) -> "MultiPoly":
        """Polynomial substitution of variables by polynomials."""
        if not any(v in mapping for v in self.variables):
            return self
        powers: Dict[Tuple[str, int], MultiPoly] = {}
        out = MultiPoly()
        for m, c in self.terms.items():
            term = MultiPoly._raw({ONE_MONO: c})
            keep = []
            for v, e in m:
                if v in mapping:
                    key = (v, e)
                    if key not in powers:
                        powers[key] = MultiPoly.coerce(mapping[v]) ** e
                    term = term * powers[key]
                else:
                    keep.append((v, e))
            if keep:
                term = term * MultiPoly._raw({tuple(keep): ONE})
            out = out + term
        return out

    def rename(self, mapping: Mapping[str, str]) -> "MultiPoly":
        return self.subs({a: MultiPoly.var(b) for a, b in mapping.items()})

    def evaluate(self, point: Mapping[str, object]) -> "MultiPoly":
        return self.subs({k: MultiPoly.coerce(v) for k, v in point.items()})

    # -- comparison ---------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self == MultiPoly.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"MultiPoly({self})"

    def __str__(self):
        return format_poly(self)

    # -- sympy bridge (gcd, division) ---------------------------------------
    def _to_ring(self, R, vs):
        idx = {v: i for i, v in enumerate(vs)}
        d = {}
        for m, c in self.terms.items():
            exp = [0] * len(vs)
            for v, e in m:
                exp[idx[v]] = e
            d[tuple(exp)] = c.to_sympy_domain()
        return R.from_dict(d) if d else R.zero

    @staticmethod
    def _from_ring(p, vs) -> "MultiPoly":
        t = {}
        for exp, c in p.to_dict().items():
            mono = tuple((v, e) for v, e in zip(vs, exp) if e)
            t[mono] = GaussianRational.from_sympy_domain(c)
        return MultiPoly._raw({m: c for m, c in t.items() if c})


@lru_cache(maxsize=256)
def _ring_for(vs: Tuple[str, ...]):
    if not vs:
        vs = ("_one",)
    return _sympy_ring(",".join(vs), QQ_I)[0]


def _common_ring(*polys: MultiPoly):
    vs = tuple(sorted({v for p in polys for v in p.variables}, key=var_key))
    return _ring_for(vs or ("_one",)), vs or ("_one",)


def poly_gcd(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """Monic-normalized gcd (leading coefficient 1 in graded-lex order)."""
    if a.is_zero():
        return _monic(b)
    if b.is_zero():
        return _monic(a)
    if a.is_constant() or b.is_constant():
        return MultiPoly.const(1)
    R, vs = _common_ring(a, b)
    g = a._to_ring(R, vs).gcd(b._to_ring(R, vs))
    return _monic(MultiPoly._from_ring(g, vs))


def poly_cofactors(a: MultiPoly, b: MultiPoly):
    """Return ``(g, a/g, b/g)`` with ``g`` the gcd."""
    R, vs = _common_ring(a, b)
    g, ca, cb = a._to_ring(R, vs).cofactors(b._to_ring(R, vs))
    return (MultiPoly._from_ring(g, vs), MultiPoly._from_ring(ca, vs),
            MultiPoly._from_ring(cb, vs))


def poly_exquo(a: MultiPoly, b: MultiPoly):
    """Exact quotient ``a / b`` or ``None`` when ``b`` does not divide ``a``."""
    if b.is_zero():
        raise DivisionByZero("polynomial division by zero")
    if b.is_constant():
        return a.scale(b.constant_value().inverse())
    R, vs = _common_ring(a, b)
    q, r = a._to_ring(R, vs).div(b._to_ring(R, vs))
    if r:
        return None
    return MultiPoly._from_ring(q, vs)


def _monic(p: MultiPoly) -> MultiPoly:
    if p.is_zero():
        return p
    return p.scale(p.leading_coefficient().inverse())


def format_poly(p: MultiPoly) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for m, c in p.sorted_terms():
        mono = "*".join(_tau_name(v) if e == 1 else f"{_tau_name(v)}^{e}" for v, e in m)
        if not mono:
            s = format_gaussian(c)
        elif c == 1:
            s = mono
        elif c == -1:
            s = "-" + mono
        else:
            s = f"{format_gaussian(c)}*{mono}"
        parts.append(s)
    out = parts[0]
    for s in parts[1:]:
        out += f" - {s[1:]}" if s.startswith("-") else f" + {s}"
    return out


def _tau_name(v: str) -> str:
    return "(2πi)" if v == TAU else v


# ---------------------------------------------------------------------------
# Rational functions

Scalarish = Union[int, Fraction, GaussianRational]


class RationalFunction:
    """A reduced fraction of polynomials, denominator leading coefficient 1."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den=1, _normalized=False):
        num = MultiPoly.coerce(num)
        den = MultiPoly.coerce(den)
        if not _normalized:
            num, den = _normalize(num, den)
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def coerce(cls, value) -> "RationalFunction":
        if isinstance(value, RationalFunction):
            return value
        if isinstance(value, str):
            return cls(MultiPoly.var(value), _normalized=True)
        if isinstance(value, MultiPoly):
            return cls(value, _normalized=True)
        return cls(MultiPoly.const(value), _normalized=True)

    @classmethod
    def var(cls, name: str) -> "RationalFunction":
        return cls(MultiPoly.var(name), _normalized=True)

    @classmethod
    def const(cls, c) -> "RationalFunction":
        return cls(MultiPoly.const(c), _normalized=True)

    # -- inspection ---------------------------------------------------------
    @property
    def variables(self) -> Tuple[str, ...]:
        vs = set(self.num.variables) | set(self.den.variables)
        return tuple(sorted(vs, key=var_key))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def is_constant(self) -> bool:
        """Free of every variable, including ``tau``."""
        return self.num.is_constant() and self.den.is_constant()

    def is_scalar(self) -> bool:
        """A ``TauScalar``: depends on no variable other than ``tau``."""
        return all(v == TAU for v in self.variables)

    def constant_value(self) -> GaussianRational:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self.num.constant_value() / self.den.constant_value()

    def as_polynomial(self) -> MultiPoly:
        if not self.is_polynomial():
            raise ValueError(f"{self} is not a polynomial")
        return self.num.scale(self.den.constant_value().inverse())

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = RationalFunction.coerce(other)
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den,
                                self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, _normalized=True)

    def __sub__(self, other):
        return self + (-RationalFunction.coerce(other))

    def __rsub__(self, other):
        return RationalFunction.coerce(other) - self

    def __mul__(self, other):
        other = RationalFunction.coerce(other)
        if self.is_zero() or other.is_zero():
            return RationalFunction()
        if other.is_constant():
            c = other.constant_value()
            return RationalFunction(self.num.scale(c), self.den, _normalized=True)
        if self.is_constant():
            return other * self
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other):
        return self * RationalFunction.coerce(other).inverse()

    def __rtruediv__(self, other):
        return RationalFunction.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RationalFunction(self.num ** k, self.den ** k, _normalized=True)

    def diff(self, v: str) -> "RationalFunction":
        """Partial derivative by the quotient rule."""
        dn = self.num.diff(v)
        dd = self.den.diff(v)
        if dd.is_zero():
            return RationalFunction(dn, self.den)
        return RationalFunction(dn * self.den - self.num * dd, self.den * self.den)

    def subs(self, mapping: Mapping[str, object]) -> "RationalFunction":
        """Substitute variables by rational functions and renormalize."""
        mapping = {k: v for k, v in mapping.items() if k in self.variables}
        if not mapping:
            return self
        rmap = {k: RationalFunction.coerce(v) for k, v in mapping.items()}
        num = _subs_poly(self.num, rmap)
        den = _subs_poly(self.den, rmap)
        if den.is_zero():
            raise DivisionByZero(f"denominator {self.den} vanishes under substitution")
        return num / den

    def rename(self, mapping: Mapping[str, str]) -> "RationalFunction":
        return RationalFunction(self.num.rename(mapping), self.den.rename(mapping),
                                _normalized=False)

    # -- comparison ---------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, RationalFunction):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction, GaussianRational, MultiPoly, str)):
            return self == RationalFunction.coerce(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"RationalFunction({self})"

    def __str__(self):
        return format_rational(self)


TauScalar = RationalFunction


def _subs_poly(p: MultiPoly, rmap: Mapping[str, RationalFunction]) -> RationalFunction:
    out = RationalFunction()
    cache: Dict[Tuple[str, int], RationalFunction] = {}
    for m, c in p.terms.items():
        term = RationalFunction.const(c)
        keep = []
        for v, e in m:
            if v in rmap:
                if (v, e) not in cache:
                    cache[(v, e)] = rmap[v] ** e
                term = term * cache[(v, e)]
            else:
                keep.append((v, e))
        if keep:
            term = term * RationalFunction(MultiPoly._raw({tuple(keep): ONE}), _normalized=True)
        out = out + term
    return out


def _normalize(num: MultiPoly, den: MultiPoly):
    if den.is_zero():
        raise DivisionByZero("rational function with zero denominator")
    if num.is_zero():
        return MultiPoly(), MultiPoly.const(1)
    if not den.is_constant():
        if len(den.terms) == 1 and len(num.terms) == 1:
            (mn, cn), = num.terms.items()
            (md, cd), = den.terms.items()
            dn, dd = dict(mn), dict(md)
            for v in set(dn) & set(dd):
                k = min(dn[v], dd[v])
                dn[v] -= k
                dd[v] -= k
            num = MultiPoly._raw({tuple(sorted(((v, e) for v, e in dn.items() if e),
                                               key=lambda t: var_key(t[0]))): cn})
            den = MultiPoly._raw({tuple(sorted(((v, e) for v, e in dd.items() if e),
                                               key=lambda t: var_key(t[0]))): cd})
        else:
            _, num, den = poly_cofactors(num, den)
    lc = den.leading_coefficient()
    if lc != 1:
        inv = lc.inverse()
        num = num.scale(inv)
        den = den.scale(inv)
    return num, den


def format_rational(r: RationalFunction) -> str:
    if r.den.is_constant():
        return format_poly(r.num)
    num = format_poly(r.num)
    den = format_poly(r.den)
    if len(r.num.terms) > 1:
        num = f"({num})"
    if len(r.den.terms) > 1 or any(len(m) > 1 or (m and m[0][1] > 1) for m in r.den.terms) \
            or r.den.leading_coefficient() != 1:
        den = f"({den})"
    return f"{num}/{den}"


def coerce_rf(x) -> RationalFunction:
    return RationalFunction.coerce(x)


def tau() -> RationalFunction:
    return RationalFunction.var(TAU)


def gaussian(re, im=0) -> RationalFunction:
    return RationalFunction.const(GaussianRational(re, im))


# ---------------------------------------------------------------------------
# Division by a monic polynomial and quotient-ring traces


def _monic_lc(h: MultiPoly, v: str) -> GaussianRational:
    d = h.degree(v)
    if d <= 0:
        raise NotMonic(f"{h} has no positive degree in {v}")
    lc = h.coefficients_in(v)[d]
    if not lc.is_constant():
        raise NotMonic(f"leading {v}-coefficient of {h} is {lc}, not a unit constant")
    return lc.constant_value()


def divmod_monic(p: MultiPoly, h: MultiPoly, v: str):
    """Quotient and remainder of ``p`` by ``h`` with respect to ``v``."""
    lc_inv = _monic_lc(h, v).inverse()
    d = h.degree(v)
    hc = h.coefficients_in(v)
    q = MultiPoly()
    r = p
    while r.degree(v) >= d:
        k = r.degree(v)
        lead = r.coefficients_in(v)[k].scale(lc_inv)
        t = lead * MultiPoly._raw({((v, k - d),) if k > d else ONE_MONO: ONE})
        q = q + t
        r = r - t * h
    return q, r


def reduce_mod_monic(p: MultiPoly, h: MultiPoly, v: str) -> MultiPoly:
    """Remainder of ``p`` on division by ``h`` (monic up to a unit in ``v``)."""
    return divmod_monic(p, h, v)[1]


# Univariate polynomials over the field of rational functions in the other
# variables are plain lists of RationalFunction coefficients, low degree first.

def _upoly(p: MultiPoly, v: str):
    cs = p.coefficients_in(v)
    if not cs:
        return []
    return [RationalFunction(cs.get(k, MultiPoly()), _normalized=True) for k in range(max(cs) + 1)]


def _utrim(a):
    a = list(a)
    while a and a[-1].is_zero():
        a.pop()
    return a


def _umul(a, b):
    if not a or not b:
        return []
    out = [RationalFunction() for _ in range(len(a) + len(b) - 1)]
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return _utrim(out)


def _udivmod(a, b):
    a = _utrim(a)
    b = _utrim(b)
    if not b:
        raise DivisionByZero("univariate division by zero")
    inv = b[-1].inverse()
    q = [RationalFunction() for _ in range(max(len(a) - len(b) + 1, 0))]
    r = list(a)
    while len(r) >= len(b):
        c = r[-1] * inv
        k = len(r) - len(b)
        q[k] = c
        for i, y in enumerate(b):
            r[k + i] = r[k + i] - c * y
        r = _utrim(r[:-1])
    return _utrim(q), r


def _usub(a, b):
    n = max(len(a), len(b))
    z = RationalFunction()
    return _utrim([(a[i] if i < len(a) else z) - (b[i] if i < len(b) else z) for i in range(n)])


def _uinverse_mod(a, h):
    """Inverse of ``a`` modulo ``h`` by the extended Euclidean algorithm."""
    r0, r1 = _utrim(h), _udivmod(a, h)[1]
    s0, s1 = [], [RationalFunction.const(1)]
    while r1:
        q, r = _udivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _usub(s0, _umul(q, s1))
    if len(r0) != 1:
        raise NonInvertibleDenominator("denominator shares a factor with the modulus")
    c = r0[0].inverse()
    return _udivmod([x * c for x in s0], h)[1]


def _field_lc(h: MultiPoly, v: str) -> RationalFunction:
    """Leading ``v``-coefficient, required only to be free of ``v`` and nonzero."""
    d = h.degree(v)
    if d <= 0:
        raise NotMonic(f"{h} has no positive degree in {v}")
    return RationalFunction(h.coefficients_in(v)[d], _normalized=True)


def power_sums(h: MultiPoly, v: str):
    """Newton power sums ``p_0 .. p_{d-1}`` of the roots of ``h``."""
    lc = _field_lc(h, v)
    hs = [c / lc for c in _upoly(h, v)]
    d = len(hs) - 1
    # h = v^d + e_1 v^{d-1} + ... ; e_k = hs[d-k]
    e = [None] + [hs[d - k] for k in range(1, d + 1)]
    p = [RationalFunction.const(d)]
    for k in range(1, d):
        s = e[k] * k
        for i in range(1, k):
            s = s + e[i] * p[k - i]
        p.append(-s)
    return p


def trace_mod(g, h: MultiPoly, v: str) -> RationalFunction:
    """Trace of multiplication by ``g`` on ``K[v]/(h)``.

    Equals the sum of ``g`` over the roots of ``h``; no roots are computed.
    The base field ``K`` is rational functions in every other variable, so
    ``h`` only needs a nonzero leading coefficient free of ``v``.
    """
    g = RationalFunction.coerce(g)
    hu = _upoly(h, v)
    lc = _field_lc(h, v)
    hu = [c / lc for c in hu]
    num = _udivmod(_upoly(g.num, v), hu)[1]
    den = _udivmod(_upoly(g.den, v), hu)[1]
    if not den:
        raise NonInvertibleDenominator(f"denominator {g.den} vanishes modulo {h}")
    if len(den) == 1:
        e = [c / den[0] for c in num]
    else:
        e = _udivmod(_umul(num, _uinverse_mod(den, hu)), hu)[1]
    ps = power_sums(h, v)
    out = RationalFunction()
    for k, c in enumerate(e):
        out = out + c * ps[k]
    return out


def remainder_mod(g, h: MultiPoly, v: str) -> RationalFunction:
    """Canonical representative of ``g`` in ``K[v]/(h)`` (degree < deg h)."""
    g = RationalFunction.coerce(g)
    hu = _upoly(h, v)
    lc = _field_lc(h, v)
    hu = [c / lc for c in hu]
    num = _udivmod(_upoly(g.num, v), hu)[1]
    den = _udivmod(_upoly(g.den, v), hu)[1]
    if not den:
        raise NonInvertibleDenominator(f"denominator {g.den} vanishes modulo {h}")
    e = _udivmod(_umul(num, _uinverse_mod(den, hu)), hu)[1]
    out = RationalFunction()
    x = RationalFunction.var(v)
    for k, c in enumerate(e):
        out = out + c * x ** k
    return out


def is_unit_constant(p: MultiPoly) -> bool:
    return p.is_constant() and not p.is_zero()


def spatial_part(p: MultiPoly) -> MultiPoly:
    """``p`` with its content in ``tau`` alone divided out."""
    if TAU not in p.variables:
        return p
    groups: Dict[Monomial, Dict[Monomial, GaussianRational]] = {}
    for m, c in p.terms.items():
        sp = tuple(t for t in m if t[0] != TAU)
        tm = tuple(t for t in m if t[0] == TAU)
        groups.setdefault(sp, {})[tm] = c
    content = gcd_many(MultiPoly(g) for g in groups.values())
    if content.is_constant():
        return p
    return poly_exquo(p, content)


def gcd_many(polys: Iterable[MultiPoly]) -> MultiPoly:
    g = MultiPoly()
    for p in polys:
        g = poly_gcd(g, p)
        if g.is_constant() and not g.is_zero():
            return MultiPoly.const(1)
    return g


# ---------------------------------------------------------------------------
# sympy expression bridge (solving and ideal membership are delegated)


def to_sympy_expr(p):
    import sympy

    if isinstance(p, RationalFunction):
        return to_sympy_expr(p.num) / to_sympy_expr(p.den)
    out = sympy.Integer(0)
    for m, c in p.terms.items():
        term = sympy.Rational(c.re.numerator, c.re.denominator) + \
            sympy.I * sympy.Rational(c.im.numerator, c.im.denominator)
        for v, e in m:
            term = term * sympy.Symbol(v) ** e
        out += term
    return out


def from_sympy_expr(expr) -> RationalFunction:
    """Convert a sympy expression with Q(i) coefficients; raises ValueError otherwise."""
    import sympy

    expr = sympy.together(sympy.expand(expr))
    num, den = sympy.fraction(expr)
    return RationalFunction(_poly_from_sympy(num), _poly_from_sympy(den))


def _poly_from_sympy(e) -> MultiPoly:
    import sympy

    e = sympy.expand(e)
    syms = sorted(e.free_symbols, key=lambda s: s.name)
    if not syms:
        return MultiPoly.const(_gaussian_from_sympy(e))
    P = sympy.Poly(e, *syms)
    t = {}
    for exp, c in P.terms():
        mono = tuple(sorted(((s.name, k) for s, k in zip(syms, exp) if k), key=lambda x: var_key(x[0])))
        t[mono] = _gaussian_from_sympy(c)
    return MultiPoly(t)


def _gaussian_from_sympy(c) -> GaussianRational:
    import sympy

    re, im = sympy.re(c), sympy.im(c)
    if not (re.is_Rational and im.is_Rational):
        raise ValueError(f"{c} is not in Q(i)")
    return GaussianRational(Fraction(int(re.p), int(re.q)), Fraction(int(im.p), int(im.q)))


def has_common_zero(polys) -> bool:
    """Whether the polynomials have a common complex zero (reduced Groebner basis != [1])."""
    return _has_common_zero(frozenset(p for p in polys if not p.is_zero()))


@lru_cache(maxsize=4096)
def _has_common_zero(polys) -> bool:
    import sympy

    polys = sorted(polys, key=str)
    if any(p.is_constant() for p in polys):
        return False
    if not polys:
        return True
    vs = sorted({v for p in polys for v in p.variables}, key=var_key)
    gens = [sympy.Symbol(v) for v in vs]
    G = sympy.groebner([to_sympy_expr(p) for p in polys], *gens, order="grevlex", domain="QQ_I")
    return not (len(G.exprs) == 1 and G.exprs[0].is_number and G.exprs[0] != 0)


def factor_poly(p: MultiPoly):
    """Irreducible factors over Q(i) with multiplicities, each normalized to leading coefficient 1."""
    if p.is_constant():
        return []
    if p.total_degree() == 1:
        return [(_monic(p), 1)]
    return list(_factor_poly(p))


@lru_cache(maxsize=4096)
def _factor_poly(p: MultiPoly):
    # Factor the rational norm p*conj(p) over Q (fast), then split each rational
    # factor over Q(i) only when it could split: a factor of degree one in some
    # variable with coprime coefficients is irreducible over every field.
    import sympy

    conj = MultiPoly({m: c.conjugate() for m, c in p.terms.items()})
    norm = p if conj == p else p * conj
    vs = sorted(norm.variables, key=var_key)
    gens = [sympy.Symbol(v) for v in vs]
    _, fl = sympy.factor_list(to_sympy_expr(norm), *gens)
    candidates = []
    for f, _ in fl:
        q = _monic(_poly_from_sympy(f))
        if q.is_constant():
            continue
        if _absolutely_irreducible_linear(q):
            candidates.append(q)
            continue
        qv = sorted(q.variables, key=var_key)
        _, ql = sympy.factor_list(to_sympy_expr(q), *[sympy.Symbol(v) for v in qv], gaussian=True)
        candidates.extend(_monic(_poly_from_sympy(r)) for r, _ in ql)
    out = []
    for r in dict.fromkeys(c for c in candidates if not c.is_constant()):
        k, rest = 0, p
        while True:
            q = poly_exquo(rest, r)
            if q is None:
                break
            rest, k = q, k + 1
        if k:
            out.append((r, k))
    out.sort(key=lambda t: str(t[0]))
    return tuple(out)


def _absolutely_irreducible_linear(q: MultiPoly) -> bool:
    for v in q.variables:
        if q.degree(v) == 1:
            coeffs = q.coefficients_in(v).values()
            if gcd_many(c for c in coeffs if not c.is_zero()).is_constant():
                return True
    return False
