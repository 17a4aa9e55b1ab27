"""Executes parsed sessions and renders their transcripts.

Each command produces exactly one ``RESULT <cmd> <value>`` or
``ERROR <cmd> <code>: <message>`` line.  The text format adds an echo of the
statement and a few indented detail lines; the machine format is the bare
lines, which are deterministic for a given input and seed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .algebra import TAU
from .chains import (Curve, PolarChain, PrimeChain, RelativeContext, boundary, boundary_squared,
                     hp0_class, hp_report, normalize, polar_euler, reduce_relative)
from .dsl import (ChainStmt, CommandStmt, Diagnostic, OrientStmt, RelativeStmt, Session,
                  SpaceStmt, parse)
from .errors import NotAdmissible, PolarisError
from .forms import PoleComponent, pole
from .intersect import (PolarOrientation, intersection_number, intersection_product,
                        linking_number)
from .pushforward import pushforward
from .render import render_form, render_scalar
from .residue import poincare_residue, residue_all
from .spaces import catalog_space, rational_self_map, whole
from .verify import verify


class _Unavailable(PolarisError):
    code = "Unavailable"


class PropertyFailed(PolarisError):
    code = "PropertyFailed"


@dataclass
class Outcome:
    command: str
    ok: bool
    value: str
    details: List[str] = field(default_factory=list)
    code: str = ""

    def line(self) -> str:
        if self.ok:
            return f"RESULT {self.command} {self.value}"
        return f"ERROR {self.command} {self.code}: {self.value}"


@dataclass
class Transcript:
    diagnostics: List[Diagnostic]
    entries: List[Tuple[str, Outcome]]      # (echoed statement, outcome)

    @property
    def ok(self) -> bool:
        return not self.diagnostics and all(o.ok for _, o in self.entries)

    def render(self, fmt: str = "text", filename: str = "<input>") -> str:
        lines = [f"{filename}:{d}" for d in self.diagnostics]
        for echo, o in self.entries:
            if fmt == "text":
                lines.append(f"> {echo}")
                lines.append(o.line())
                lines.extend("  " + d for d in o.details)
            else:
                lines.append(o.line())
        return "".join(l + "\n" for l in lines)


def _format_hp(report) -> str:
    top = max(report.dims)
    parts = [f"HP_{k}={report.dims[k]}" if k in report.dims else f"HP_{k}=?"
             for k in range(top + 1)]
    return ", ".join(parts)


class Runner:
    """Holds the named objects of one session."""

    def __init__(self, seed: int = 0):
        self.seed = seed
        self.spaces: Dict[str, object] = {}
        self.orients: Dict[str, object] = {}
        self.chains: Dict[str, object] = {}
        self.relatives: Dict[str, object] = {}

    # -- definitions -----------------------------------------------------------
    def define(self, stmt) -> Optional[Outcome]:
        try:
            if isinstance(stmt, SpaceStmt):
                self.spaces[stmt.name] = Curve(int(stmt.label[6:-1])) if stmt.label.startswith("curve") \
                    else catalog_space(stmt.label)
            elif isinstance(stmt, OrientStmt):
                self.orients[stmt.name] = _Unavailable(f"orientation {stmt.name!r} is invalid")
                self.orients[stmt.name] = PolarOrientation(self.spaces[stmt.space], stmt.form.form)
            elif isinstance(stmt, ChainStmt):
                self.chains[stmt.name] = _Unavailable(f"chain {stmt.name!r} is invalid")
                self.chains[stmt.name] = self._build_chain(stmt)
            elif isinstance(stmt, RelativeStmt):
                self.relatives[stmt.name] = RelativeContext(stmt.varieties)
            return None
        except PolarisError as e:
            kind = type(stmt).__name__[:-4].lower()
            return Outcome(kind, False, str(e), code=e.code)

    def _build_chain(self, stmt: ChainStmt) -> PolarChain:
        space = self.spaces[stmt.space]
        total = PolarChain(space, [])
        for term in stmt.terms:
            if term.ref is not None:
                part = self._get(self.chains, term.ref)
            else:
                part = PolarChain.of(PrimeChain.from_presentation(term.variety, term.form.form))
            total = total + part.scale(term.coefficient)
        total.dimension   # rejects mixed dimensions
        return total

    @staticmethod
    def _get(table, name):
        obj = table[name]
        if isinstance(obj, PolarisError):
            raise _Unavailable(str(obj))
        return obj

    def _prime(self, name) -> PrimeChain:
        c = normalize(self._get(self.chains, name))
        if len(c.terms) != 1:
            raise NotAdmissible(f"{name} must be a single prime chain")
        return c.terms[0].folded()

    # -- commands --------------------------------------------------------------
    def execute(self, stmt: CommandStmt) -> Outcome:
        c = stmt.command
        try:
            value, details = getattr(self, "_cmd_" + c.replace("-", "_"))(*stmt.args)
            return Outcome(c, True, value, details)
        except PolarisError as e:
            return Outcome(c, False, str(e), code=e.code)
        except ZeroDivisionError as e:
            return Outcome(c, False, str(e) or "division by zero", code="DivisionByZero")

    def _cmd_residue(self, name, target):
        t = self._prime(name)
        V = target if isinstance(target, PoleComponent) else pole(target)
        return render_form(poincare_residue(t.form, V, t.source)), []

    def _cmd_residues(self, name):
        t = self._prime(name)
        parts = [f"{comp.label}: {render_form(res)}" for comp, res in residue_all(t.form, t.source)]
        return "[" + ", ".join(parts) + "]", []

    def _cmd_boundary(self, name):
        return str(boundary(self._get(self.chains, name))), []

    def _cmd_d2(self, name):
        return str(boundary_squared(self._get(self.chains, name))), []

    def _cmd_push(self, F, name):
        t = self._prime(name)
        if t.dimension != 1 or t.ambient.label != "P1" or t.source != t.ambient:
            raise NotAdmissible("push applies to a 1-chain (whole, omega) on P1")
        (v,) = [x for x in F.variables if x != TAU]
        pushed = pushforward(rational_self_map(F, v), t.form)
        chain = PolarChain.of(PrimeChain.from_presentation(whole(t.ambient), pushed, validate=False))
        return str(chain), []

    def _orient(self, name) -> PolarOrientation:
        return self._get(self.orients, name)

    @staticmethod
    def _point_details(points):
        return [f"at {p.point}: {render_scalar(p.contribution)}" for p in points]

    def _cmd_intersect(self, a, b, o):
        res = intersection_number(self._get(self.chains, a), self._get(self.chains, b), self._orient(o))
        return render_scalar(res.value), self._point_details(res.points)

    def _cmd_product(self, a, b, o):
        res = intersection_product(self._get(self.chains, a), self._get(self.chains, b), self._orient(o))
        return str(res.cycle), self._point_details(res.points)

    def _cmd_link(self, c1, c2, s2, o):
        res = linking_number(self._get(self.chains, c1), self._get(self.chains, c2),
                             self._get(self.chains, s2), self._orient(o))
        return render_scalar(res.value), [f"relative boundary of {s2}: {res.certificate}"] + \
            self._point_details(res.points)

    def _cmd_class0(self, name):
        return render_scalar(hp0_class(self._get(self.chains, name))), []

    def _space_named(self, name):
        return self.spaces[name] if name in self.spaces else catalog_space(name)

    def _cmd_hp(self, name):
        r = hp_report(self._space_named(name))
        details = [] if r.complete else ["intermediate groups are not determined"]
        return _format_hp(r), details

    def _cmd_euler(self, name):
        return str(polar_euler(self._space_named(name))), []

    def _cmd_reduce(self, name, ctx):
        return str(reduce_relative(self._get(self.chains, name), self._get(self.relatives, ctx))), []

    def _cmd_verify(self, prop, count):
        passed, total = verify(prop, count, self.seed)
        if passed != total:
            raise PropertyFailed(f"{total - passed} of {total} instances failed (seed {self.seed})")
        return f"{passed}/{total}", [f"seed {self.seed}"]


def run_session(session: Session, seed: int = 0, execute: bool = True) -> Transcript:
    """Define every object and (unless ``execute`` is False) run the commands."""
    runner = Runner(seed)
    entries: List[Tuple[str, Outcome]] = []
    for stmt in session.statements:
        if isinstance(stmt, CommandStmt):
            if execute:
                entries.append((stmt.render(), runner.execute(stmt)))
            continue
        out = runner.define(stmt)
        if out is not None:
            entries.append((stmt.render(), out))
    return Transcript(list(session.diagnostics), entries)


def run_text(text: str, seed: int = 0, execute: bool = True) -> Transcript:
    return run_session(parse(text), seed, execute)
