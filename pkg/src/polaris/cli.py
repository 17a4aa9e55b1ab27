"""``polaris run|check <file> [--format text|machine] [--seed N]``."""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from .dsl import parse
from .session import run_session


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="polaris", description="Polar chains, residues and intersections.")
    sub = p.add_subparsers(dest="action", required=True)
    for name, text in (("run", "execute a session file"),
                       ("check", "parse and validate definitions without running commands")):
        s = sub.add_parser(name, help=text)
        s.add_argument("file", help="session file, or - for stdin")
        s.add_argument("--format", choices=("text", "machine"), default="text")
        s.add_argument("--seed", type=int, default=0, help="seed for verify commands")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.file == "-":
        text, filename = sys.stdin.read(), "<stdin>"
    else:
        try:
            with open(args.file, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as e:
            print(f"polaris: {e}", file=sys.stderr)
            return 2
        filename = args.file
    session = parse(text)
    transcript = run_session(session, seed=args.seed, execute=args.action == "run")
    for d in transcript.diagnostics:
        print(f"{filename}:{d}", file=sys.stderr)
    transcript.diagnostics = []
    out = transcript.render(args.format, filename)
    if args.action == "check" and not out and not session.diagnostics:
        out = f"OK {len(session.statements)} statements\n"
    sys.stdout.write(out)
    return 0 if transcript.ok and not session.diagnostics else 1


if __name__ == "__main__":
    sys.exit(main())
