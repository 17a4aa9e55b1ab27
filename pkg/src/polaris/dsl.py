"""Session language: lexer, recursive-descent parser and statement rendering.

One statement per line (newlines inside brackets are ignored, ``#`` starts a
comment).  Parsing resolves names and builds the algebraic objects, but does
not validate chains; that happens when the session runs.  Every problem is a
:class:`Diagnostic` with a 1-based line/column span; parsing resumes at the
next statement.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .algebra import TAU, GaussianRational, MultiPoly, RationalFunction
from .chains import Curve
from .errors import PolarisError
from .forms import DifferentialForm, PoleComponent, infinity
from .spaces import (AmbientSpace, CATALOG, Chart, SubvarietyPresentation, catalog_space, graph,
                     hypersurface, monic_variable, point, whole)


# ---------------------------------------------------------------------------
# Diagnostics and tokens


@dataclass(frozen=True)
class Span:
    line: int
    column: int

    def __str__(self):
        return f"{self.line}:{self.column}"


@dataclass(frozen=True)
class Diagnostic:
    severity: str
    message: str
    span: Span

    def __str__(self):
        return f"{self.span}: {self.severity}: {self.message}"


class ParseError(Exception):
    def __init__(self, message: str, span: Span):
        super().__init__(message)
        self.message = message
        self.span = span


@dataclass(frozen=True)
class Token:
    kind: str      # NUM, ID, TAU, DIFF?, SYM, NL, EOF
    text: str
    span: Span


_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<comment>\#[^\n]*)
  | (?P<nl>\n)
  | (?P<tau>2πi)
  | (?P<num>\d+)
  | (?P<id>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<sym>[()\[\],;=+\-*/^])
""", re.VERBOSE)


def tokenize(text: str) -> List[Token]:
    toks: List[Token] = []
    line, col, pos, depth = 1, 1, 0, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", Span(line, col))
        kind = m.lastgroup
        s = m.group()
        span = Span(line, col)
        if kind == "nl":
            if depth == 0:
                toks.append(Token("NL", s, span))
            line, col = line + 1, 1
        else:
            if kind == "sym":
                if s in "([":
                    depth += 1
                elif s in ")]":
                    depth = max(0, depth - 1)
                toks.append(Token("SYM", s, span))
            elif kind in ("num", "id", "tau"):
                toks.append(Token(kind.upper(), s, span))
            col += len(s)
        pos = m.end()
    toks.append(Token("NL", "", Span(line, col)))
    toks.append(Token("EOF", "", Span(line, col)))
    return toks


# ---------------------------------------------------------------------------
# Statements


@dataclass
class SpaceStmt:
    name: str
    label: str
    span: Span

    def render(self) -> str:
        return f"space {self.name} = {self.label}"


@dataclass
class FormLiteral:
    form: DifferentialForm
    poles: Optional[Tuple[PoleComponent, ...]]

    def render(self) -> str:
        from .render import render_form, render_poles

        text = render_form(self.form)
        if self.poles is not None:
            text += " " + render_poles(self.poles)
        return text


@dataclass
class OrientStmt:
    name: str
    space: str
    form: FormLiteral
    span: Span

    def render(self) -> str:
        return f"orient {self.name} in {self.space} with {self.form.render()}"


@dataclass
class ChainTerm:
    coefficient: RationalFunction
    variety: Optional[SubvarietyPresentation] = None
    form: Optional[FormLiteral] = None
    ref: Optional[str] = None

    def render(self) -> str:
        from .render import _coefficient_prefix, render_presentation

        body = self.ref if self.ref else f"({render_presentation(self.variety)}, {self.form.render()})"
        return _coefficient_prefix(self.coefficient) + body


@dataclass
class ChainStmt:
    name: str
    space: str
    terms: List[ChainTerm]
    span: Span

    def render(self) -> str:
        parts = [t.render() for t in self.terms]
        text = parts[0]
        for p in parts[1:]:
            text += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return f"chain {self.name} in {self.space} = {text}"


@dataclass
class RelativeStmt:
    name: str
    space: str
    varieties: List[SubvarietyPresentation]
    span: Span

    def render(self) -> str:
        from .render import render_presentation

        return f"relative {self.name} in {self.space} = [" + \
            ", ".join(render_presentation(v) for v in self.varieties) + "]"


@dataclass
class CommandStmt:
    command: str
    args: Tuple
    span: Span

    def render(self) -> str:
        from .algebra import format_poly, format_rational

        c, a = self.command, self.args
        if c == "residue":
            target = a[1].label if isinstance(a[1], PoleComponent) else format_poly(a[1])
            return f"residue {a[0]} along {target}"
        if c == "push":
            return f"push ({format_rational(a[0])}) {a[1]}"
        if c in ("intersect", "product"):
            return f"{c} {a[0]} {a[1]} in {a[2]}"
        if c == "link":
            return f"link {a[0]} {a[1]} via {a[2]} in {a[3]}"
        if c == "reduce":
            return f"reduce {a[0]} mod {a[1]}"
        if c == "verify":
            return f"verify {a[0]} {a[1]}"
        return f"{c} {a[0]}"


Statement = Union[SpaceStmt, OrientStmt, ChainStmt, RelativeStmt, CommandStmt]


@dataclass
class Session:
    statements: List[Statement] = field(default_factory=list)
    diagnostics: List[Diagnostic] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.diagnostics

    def render(self) -> str:
        return "".join(s.render() + "\n" for s in self.statements)


# ---------------------------------------------------------------------------
# Expression values: linear combinations of wedge monomials


class _FV:
    """``{(): scalar part, ("x","y"): coefficient of dx^dy, ...}``."""

    __slots__ = ("terms",)

    def __init__(self, terms):
        self.terms = {k: v for k, v in terms.items() if not v.is_zero()}

    @classmethod
    def scalar(cls, r) -> "_FV":
        return cls({(): RationalFunction.coerce(r)})

    def is_scalar(self) -> bool:
        return all(k == () for k in self.terms)

    def scalar_value(self) -> RationalFunction:
        return self.terms.get((), RationalFunction())

    def degrees(self):
        return {len(k) for k in self.terms}

    def add(self, other, sign=1):
        t = dict(self.terms)
        for k, v in other.terms.items():
            t[k] = t.get(k, RationalFunction()) + (v if sign > 0 else -v)
        return _FV(t)

    def mul(self, other):
        if not self.is_scalar() and not other.is_scalar():
            raise ValueError("products of differentials are written with ^")
        t = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                k = k1 + k2
                t[k] = t.get(k, RationalFunction()) + v1 * v2
        return _FV(t)


# ---------------------------------------------------------------------------
# Parser


_KEYWORDS = {"space", "orient", "chain", "relative", "in", "with", "along", "via", "mod",
             "point", "graph", "hyp", "whole", "poles", "infinity", "i", "tau"}
COMMANDS = ("residue", "residues", "boundary", "d2", "push", "intersect", "product", "link",
            "class0", "hp", "euler", "reduce", "verify")
VERIFY_PROPERTIES = ("residue-theorem", "d2", "antisymmetry", "commute", "degree", "class0")


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0
        self.names: Dict[str, Tuple[str, object]] = {}   # name -> (kind, payload)
        self.last_space: Optional[str] = None

    # -- token helpers -----------------------------------------------------
    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def advance(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def at(self, text: str) -> bool:
        return self.tok.text == text and self.tok.kind in ("SYM", "ID")

    def expect(self, text: str) -> Token:
        if not self.at(text):
            found = self.tok.text or ("end of line" if self.tok.kind == "NL" else "end of input")
            raise ParseError(f"expected {text!r}, found {found!r}", self.tok.span)
        return self.advance()

    def ident(self, what="name") -> Token:
        if self.tok.kind != "ID":
            found = self.tok.text or "end of line"
            raise ParseError(f"expected {what}, found {found!r}", self.tok.span)
        return self.advance()

    def skip_line(self):
        while self.tok.kind not in ("NL", "EOF"):
            self.advance()

    def end_statement(self):
        if self.tok.kind != "NL":
            raise ParseError(f"unexpected {self.tok.text!r}", self.tok.span)
        self.advance()

    def lookup(self, tok: Token, *kinds: str):
        entry = self.names.get(tok.text)
        if entry is None:
            raise ParseError(f"undefined name {tok.text!r}", tok.span)
        if kinds and entry[0] not in kinds:
            raise ParseError(f"{tok.text!r} is a {entry[0]}, expected {' or '.join(kinds)}", tok.span)
        return entry

    def define(self, tok: Token, kind: str, payload):
        if tok.text in _KEYWORDS or tok.text in COMMANDS:
            raise ParseError(f"{tok.text!r} is reserved", tok.span)
        self.names[tok.text] = (kind, payload)

    # -- session -----------------------------------------------------------
    def parse(self) -> Session:
        session = Session()
        while self.tok.kind != "EOF":
            if self.tok.kind == "NL":
                self.advance()
                continue
            try:
                session.statements.append(self.statement())
            except ParseError as e:
                session.diagnostics.append(Diagnostic("error", e.message, e.span))
                self.skip_line()
        return session

    def statement(self) -> Statement:
        head = self.tok
        if head.kind != "ID":
            raise ParseError(f"expected a statement, found {head.text!r}", head.span)
        word = head.text
        if word == "space":
            return self.space_stmt()
        if word == "orient":
            return self.orient_stmt()
        if word == "chain":
            return self.chain_stmt()
        if word == "relative":
            return self.relative_stmt()
        if word in COMMANDS:
            return self.command_stmt()
        raise ParseError(f"unknown statement {word!r}", head.span)

    def space_stmt(self) -> SpaceStmt:
        span = self.advance().span
        name = self.ident("space name")
        self.expect("=")
        t = self.tok
        if self.at("curve"):
            self.advance()
            self.expect("(")
            if self.tok.kind != "NUM":
                raise ParseError("expected a genus", self.tok.span)
            g = int(self.advance().text)
            self.expect(")")
            label, payload = f"curve({g})", Curve(g)
        else:
            label = self.ident("space kind").text
            if label not in CATALOG:
                raise ParseError(f"unknown space {label!r}; expected one of {', '.join(CATALOG)}", t.span)
            payload = catalog_space(label)
        self.end_statement()
        self.define(name, "space", payload)
        if isinstance(payload, AmbientSpace):
            self.last_space = name.text
        return SpaceStmt(name.text, label, span)

    def _space_clause(self) -> Tuple[str, AmbientSpace]:
        """Optional ``in SPACE``; defaults to the most recent space."""
        if self.at("in"):
            self.advance()
            tok = self.ident("space name")
            kind, payload = self.lookup(tok, "space")
            if not isinstance(payload, AmbientSpace):
                raise ParseError(f"{tok.text!r} has no coordinates", tok.span)
            return tok.text, payload
        if self.last_space is None:
            raise ParseError("no space has been declared", self.tok.span)
        return self.last_space, self.names[self.last_space][1]

    def orient_stmt(self) -> OrientStmt:
        span = self.advance().span
        name = self.ident("orientation name")
        sname, space = self._space_clause()
        self.expect("with")
        form = self.form_literal(space.chart0.coordinates, space)
        self.end_statement()
        self.define(name, "orientation", sname)
        return OrientStmt(name.text, sname, form, span)

    def chain_stmt(self) -> ChainStmt:
        span = self.advance().span
        name = self.ident("chain name")
        sname, space = self._space_clause()
        self.expect("=")
        terms = []
        sign = 1
        if self.at("-"):
            self.advance()
            sign = -1
        elif self.at("+"):
            self.advance()
        while True:
            terms.append(self.chain_term(space, sname, sign))
            if self.at("+") or self.at("-"):
                sign = 1 if self.advance().text == "+" else -1
                continue
            break
        self.end_statement()
        self.define(name, "chain", sname)
        return ChainStmt(name.text, sname, terms, span)

    def chain_term(self, space, sname, sign) -> ChainTerm:
        coef = RationalFunction.const(sign)
        start = self.i
        if not self.at("(") and self.tok.kind != "ID":
            c = self.scalar_factor()
            self.expect("*")
            coef = coef * c
        elif self.at("("):
            # "(2πi)*(...)" and "(3/2)*(...)" are scalars, "(whole, ...)" is a term
            save = self.i
            try:
                c = self.scalar_factor()
                if self.at("*"):
                    self.advance()
                    coef = coef * c
                else:
                    self.i = save
            except ParseError:
                self.i = save
        if self.tok.kind == "ID" and not self.at("("):
            tok = self.advance()
            if tok.text in ("i", "tau"):
                self.i -= 1
                c = self.scalar_factor()
                self.expect("*")
                return self.chain_term_body(space, sname, coef * c)
            _, owner = self.lookup(tok, "chain")
            if owner != sname:
                raise ParseError(f"chain {tok.text!r} lives in {owner}, not {sname}", tok.span)
            return ChainTerm(coef, ref=tok.text)
        return self.chain_term_body(space, sname, coef)

    def chain_term_body(self, space, sname, coef) -> ChainTerm:
        if self.tok.kind == "ID" and not self.at("("):
            tok = self.advance()
            _, owner = self.lookup(tok, "chain")
            if owner != sname:
                raise ParseError(f"chain {tok.text!r} lives in {owner}, not {sname}", tok.span)
            return ChainTerm(coef, ref=tok.text)
        self.expect("(")
        variety, coords = self.variety(space)
        self.expect(",")
        form = self.form_literal(coords, None)
        self.expect(")")
        return ChainTerm(coef, variety, form)

    def relative_stmt(self) -> RelativeStmt:
        span = self.advance().span
        name = self.ident("name")
        sname, space = self._space_clause()
        self.expect("=")
        self.expect("[")
        vs = [self.variety(space)[0]]
        while self.at(","):
            self.advance()
            vs.append(self.variety(space)[0])
        self.expect("]")
        self.end_statement()
        self.define(name, "relative", sname)
        return RelativeStmt(name.text, sname, vs, span)

    def command_stmt(self) -> CommandStmt:
        head = self.advance()
        c = head.text
        span = head.span

        def chain_name():
            tok = self.ident("chain name")
            self.lookup(tok, "chain")
            return tok.text

        def orient_name():
            tok = self.ident("orientation or space name")
            kind, _ = self.lookup(tok, "orientation", "space")
            if kind == "space":
                owned = [n for n, (k, p) in self.names.items() if k == "orientation" and p == tok.text]
                if not owned:
                    raise ParseError(f"space {tok.text!r} has no orientation", tok.span)
                return owned[-1]
            return tok.text

        if c == "residue":
            a = chain_name()
            self.expect("along")
            if self.at("infinity"):
                target = self.infinity_pole()
            else:
                target = self.polynomial(self.expr())
            args = (a, target)
        elif c == "push":
            t = self.tok
            self.expect("(")
            F = self.expr()
            self.expect(")")
            if not F.is_scalar() or not F.degrees() <= {0}:
                raise ParseError("push needs a rational function", t.span)
            F = F.scalar_value()
            if len([v for v in F.variables if v != TAU]) != 1:
                raise ParseError("push needs a rational function of one variable", t.span)
            args = (F, chain_name())
        elif c in ("intersect", "product"):
            a, b = chain_name(), chain_name()
            self.expect("in")
            args = (a, b, orient_name())
        elif c == "link":
            a, b = chain_name(), chain_name()
            self.expect("via")
            s = chain_name()
            self.expect("in")
            args = (a, b, s, orient_name())
        elif c in ("hp", "euler"):
            tok = self.ident("space name")
            if tok.text in self.names:
                self.lookup(tok, "space")
            elif tok.text not in CATALOG:
                raise ParseError(f"undefined name {tok.text!r}", tok.span)
            args = (tok.text,)
        elif c == "reduce":
            a = chain_name()
            self.expect("mod")
            tok = self.ident("relative context")
            self.lookup(tok, "relative")
            args = (a, tok.text)
        elif c == "verify":
            t = self.tok
            words = []
            while self.tok.kind == "ID" or self.at("-"):
                words.append(self.advance().text)
            prop = "".join(words)
            if prop not in VERIFY_PROPERTIES:
                raise ParseError(f"unknown property {prop!r}; expected one of {', '.join(VERIFY_PROPERTIES)}",
                                 t.span)
            count = 20
            if self.tok.kind == "NUM":
                count = int(self.advance().text)
            args = (prop, count)
        else:
            args = (chain_name(),)
        self.end_statement()
        return CommandStmt(c, args, span)

    # -- varieties -----------------------------------------------------------
    def _chart_with(self, space: AmbientSpace, names, span) -> Chart:
        for ch in space.charts():
            if set(names) <= set(ch.coordinates):
                return ch
        raise ParseError(f"no chart of {space.label} has coordinates {sorted(names)}", span)

    def variety(self, space: AmbientSpace):
        """Returns the presentation and the coordinates its forms use."""
        t = self.tok
        if self.at("whole"):
            self.advance()
            return whole(space), space.chart0.coordinates
        if self.at("point"):
            self.advance()
            self.expect("(")
            named, plain = {}, []
            if not self.at(")"):
                while True:
                    if self.tok.kind == "ID" and self.toks[self.i + 1].text == "=":
                        n = self.advance()
                        self.advance()
                        named[n.text] = self.constant(self.expr(), n.span)
                    else:
                        s = self.tok.span
                        plain.append(self.constant(self.expr(), s))
                    if not self.at(","):
                        break
                    self.advance()
            self.expect(")")
            if named and plain:
                raise ParseError("mix of named and positional point coordinates", t.span)
            if named:
                ch = self._chart_with(space, named, t.span)
                if set(named) != set(ch.coordinates):
                    raise ParseError(f"point needs values for {', '.join(ch.coordinates)}", t.span)
                return point(ch, [named[c] for c in ch.coordinates]), ()
            if len(plain) != space.dimension:
                raise ParseError(f"point needs {space.dimension} coordinates", t.span)
            return point(space.chart0, plain), ()
        if self.at("graph"):
            self.advance()
            self.expect("(")
            params = [self.ident("parameter").text]
            while self.at(","):
                self.advance()
                params.append(self.ident("parameter").text)
            self.expect(";")
            assigns = {}
            spans = {}
            while True:
                n = self.ident("coordinate")
                self.expect("=")
                e = self.expr(allowed=set(params))
                if not e.is_scalar():
                    raise ParseError("graph assignments are functions, not forms", n.span)
                assigns[n.text] = e.scalar_value()
                spans[n.text] = n.span
                if not self.at(","):
                    break
                self.advance()
            self.expect(")")
            ch = self._chart_with(space, assigns, t.span)
            if set(assigns) != set(ch.coordinates):
                raise ParseError(f"graph must assign {', '.join(ch.coordinates)}", t.span)
            try:
                return graph(ch, params, assigns), tuple(params)
            except (ValueError, PolarisError) as e:
                raise ParseError(str(e), t.span) from None
        if self.at("hyp"):
            self.advance()
            self.expect("(")
            s = self.tok.span
            h = self.polynomial(self.expr())
            self.expect(")")
            ch = self._chart_with(space, [v for v in h.variables if v != TAU], s)
            try:
                V = hypersurface(ch, h)
            except PolarisError as e:
                raise ParseError(str(e), s) from None
            return V, tuple(c for c in ch.coordinates if c != V.variable)
        raise ParseError("expected a variety: point(...), graph(...), hyp(...) or whole", t.span)

    # -- forms ---------------------------------------------------------------
    def form_literal(self, coords: Sequence[str], space: Optional[AmbientSpace]) -> FormLiteral:
        t = self.tok
        value = self.expr(allowed=set(coords), diffs=set(coords))
        degrees = value.degrees() or {len(coords)}
        if len(degrees) > 1:
            raise ParseError("form mixes degrees", t.span)
        deg = degrees.pop()
        if deg != len(coords) and coords:
            raise ParseError(f"form has degree {deg}, expected {len(coords)}", t.span)
        form = DifferentialForm.from_names(coords, value.terms, degree=deg)
        poles = None
        if self.at("poles"):
            self.advance()
            self.expect("[")
            poles = []
            if not self.at("]"):
                while True:
                    if self.at("infinity"):
                        poles.append(self.infinity_pole(coords))
                    else:
                        s = self.tok.span
                        h = self.polynomial(self.expr(allowed=set(coords)))
                        if h.is_constant():
                            raise ParseError("constant pole component", s)
                        try:
                            v = monic_variable(h, coords)
                        except PolarisError as e:
                            raise ParseError(str(e), s) from None
                        poles.append(PoleComponent(h=h, variable=v))
                    if not self.at(","):
                        break
                    self.advance()
            self.expect("]")
            poles = tuple(poles)
        if poles is not None:
            form = form.with_poles(poles)
        return FormLiteral(form, poles)

    def infinity_pole(self, coords=None) -> PoleComponent:
        tok = self.expect("infinity")
        if self.at("("):
            self.advance()
            name = self.ident("coordinate")
            self.expect(")")
            if coords is not None and name.text not in coords:
                raise ParseError(f"{name.text!r} is not a coordinate here", name.span)
            return infinity(name.text)
        if coords is not None and len(coords) == 1:
            return infinity(coords[0])
        raise ParseError("write infinity(<coordinate>)", tok.span)

    def polynomial(self, v: _FV) -> MultiPoly:
        if not v.is_scalar():
            raise ParseError("expected a polynomial", self.tok.span)
        r = v.scalar_value()
        if not r.is_polynomial():
            raise ParseError(f"{r} is not a polynomial", self.tok.span)
        return r.num

    def constant(self, v: _FV, span) -> GaussianRational:
        r = v.scalar_value() if v.is_scalar() else None
        if r is None or not r.is_constant():
            raise ParseError("expected a constant", span)
        return r.constant_value()

    def scalar_factor(self) -> RationalFunction:
        t = self.tok
        v = self.factor(allowed=set(), diffs=set())
        if not v.is_scalar() or not v.scalar_value().is_scalar():
            raise ParseError("expected a scalar", t.span)
        return v.scalar_value()

    # -- expressions -----------------------------------------------------------
    def expr(self, allowed=None, diffs=frozenset()) -> _FV:
        sign = 1
        if self.at("-"):
            self.advance()
            sign = -1
        elif self.at("+"):
            self.advance()
        v = self.term(allowed, diffs)
        if sign < 0:
            v = _FV.scalar(-1).mul(v)
        while self.at("+") or self.at("-"):
            op = self.advance()
            w = self.term(allowed, diffs)
            v = v.add(w, 1 if op.text == "+" else -1)
        return v

    def term(self, allowed, diffs) -> _FV:
        v = self.factor(allowed, diffs)
        while self.at("*") or self.at("/"):
            op = self.advance()
            t = self.tok
            w = self.factor(allowed, diffs)
            if op.text == "*":
                try:
                    v = v.mul(w)
                except ValueError as e:
                    raise ParseError(str(e), t.span) from None
            else:
                if not w.is_scalar():
                    raise ParseError("cannot divide by a differential", t.span)
                d = w.scalar_value()
                if d.is_zero():
                    raise ParseError("division by zero", t.span)
                v = v.mul(_FV.scalar(1 / d))
        return v

    def factor(self, allowed, diffs) -> _FV:
        t = self.tok
        if t.kind == "ID" and t.text.startswith("d") and t.text[1:] in diffs:
            names = [self.advance().text[1:]]
            while self.at("^"):
                self.advance()
                n = self.tok
                if n.kind != "ID" or not n.text.startswith("d") or n.text[1:] not in diffs:
                    raise ParseError("expected a differential after '^'", n.span)
                names.append(self.advance().text[1:])
            if len(set(names)) != len(names):
                return _FV({})
            return _FV({tuple(names): RationalFunction.const(1)})
        base = self.atom(allowed, diffs)
        if self.at("^"):
            caret = self.advance()
            neg = False
            paren = False
            if self.at("("):
                self.advance()
                paren = True
            if self.at("-"):
                self.advance()
                neg = True
            if self.tok.kind != "NUM":
                raise ParseError("expected an integer exponent", self.tok.span)
            k = int(self.advance().text)
            if paren:
                self.expect(")")
            if not base.is_scalar():
                raise ParseError("cannot raise a differential to a power", caret.span)
            r = base.scalar_value()
            if neg:
                if r.is_zero():
                    raise ParseError("division by zero", caret.span)
                r = 1 / r
            base = _FV.scalar(r ** k)
        return base

    def atom(self, allowed, diffs) -> _FV:
        t = self.tok
        if t.kind == "NUM":
            self.advance()
            return _FV.scalar(int(t.text))
        if t.kind == "TAU":
            self.advance()
            return _FV.scalar(RationalFunction.var(TAU))
        if t.kind == "ID":
            if t.text == "tau":
                self.advance()
                return _FV.scalar(RationalFunction.var(TAU))
            if t.text == "i":
                self.advance()
                return _FV.scalar(RationalFunction.const(GaussianRational(0, 1)))
            if t.text in _KEYWORDS - {"infinity"} or (allowed is not None and t.text not in allowed):
                raise ParseError(f"unknown symbol {t.text!r}", t.span)
            self.advance()
            return _FV.scalar(RationalFunction.var(t.text))
        if self.at("("):
            self.advance()
            v = self.expr(allowed, diffs)
            self.expect(")")
            return v
        found = t.text or ("end of line" if t.kind == "NL" else "end of input")
        raise ParseError(f"unexpected {found!r}", t.span)


def parse(text: str) -> Session:
    """Parse a session; problems are collected in ``Session.diagnostics``."""
    try:
        return _Parser(text).parse()
    except ParseError as e:   # lexer failure
        return Session([], [Diagnostic("error", e.message, e.span)])
