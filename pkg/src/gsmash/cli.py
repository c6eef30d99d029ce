"""Command-line driver: ``gsmash FILE.gsm [--task NAME] [--seed N] [--json PATH] [--max-dim N]``.

Exit status is 0 when every task passes and 1 when some task fails; usage and parse errors give 2.
"""

from __future__ import annotations

import argparse
import sys

from .dsl import TASK_KINDS, parse_spec
from .errors import GsmError
from .report import DEFAULT_MAX_DIM, emit_json, error_json, run


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gsmash", description="Run the verification tasks of a .gsm file.")
    p.add_argument("file", help="input .gsm file")
    p.add_argument("--task", choices=TASK_KINDS, help="run only tasks of this kind")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized checks (default 0)")
    p.add_argument("--json", metavar="PATH", help="also write the report to PATH")
    p.add_argument("--max-dim", type=int, default=DEFAULT_MAX_DIM,
                   help=f"refuse smash products above this dimension (default {DEFAULT_MAX_DIM})")
    p.add_argument("--jobs", type=int, default=1, help="run tasks on this many threads")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    if args.seed < 0 or args.max_dim < 1 or args.jobs < 1:
        print("gsmash: --seed must be >= 0, --max-dim and --jobs >= 1", file=sys.stderr)
        return 2
    try:
        with open(args.file, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        print(f"gsmash: {e}", file=sys.stderr)
        return 2
    try:
        doc = parse_spec(text)
    except GsmError as e:
        sys.stderr.write(emit_json({"ok": False, "error": error_json(e)}))
        return 2
    if args.task and not any(t.kind == args.task for t in doc.tasks):
        print(f"gsmash: no task of kind {args.task!r} in {args.file}", file=sys.stderr)
        return 2
    report = run(doc, args.task, args.seed, args.max_dim, args.jobs)
    text = emit_json(report)
    sys.stdout.write(text)
    if args.json:
        with open(args.json, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    return 0 if report["ok"] else 1


if __name__ == "__main__":
    sys.exit(main())
