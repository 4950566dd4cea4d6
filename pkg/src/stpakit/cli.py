"""``stpa-kit`` command-line interface.

Artifacts go to stdout, diagnostics to stderr.  Exit codes:

* 0 success
* 1 validation errors, unknown loop or trace id, non-canonical file under ``fmt --check``
* 2 parse errors (these take precedence over validation errors)
* 3 usage errors and unreadable input files
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence, TextIO

from . import __version__
from .analysis import coverage, expand_rubric, stats, trace_back, trace_forward, validate
from .analysis.rubric import CellState, UcaGrid
from .diagnostics import Diagnostic, Severity, StpaError
from .dsl import format_model, parse
from .model import GUIDEWORDS, StpaModel
from .report import export_dot, export_json, render_hazard_table, render_uca_table

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_PARSE = 2
EXIT_USAGE = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on bad usage; this tool reserves 2 for parse errors."""

    def error(self, message: str):  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class _Run:
    def __init__(self, args: argparse.Namespace, out: TextIO, err: TextIO) -> None:
        self.args = args
        self.out = out
        self.err = err
        self.path: str = args.path

    def emit(self, diags: Sequence[Diagnostic]) -> None:
        as_json = getattr(self.args, "format", None) == "json" and self.args.command == "check"
        for d in diags:
            if as_json:
                print(d.to_json_line(self.path), file=self.out)
            else:
                print(d.render(self.path), file=self.err)

    def read(self) -> str:
        try:
            return Path(self.path).read_text(encoding="utf-8")
        except (OSError, UnicodeDecodeError) as exc:
            reason = exc.strerror if isinstance(exc, OSError) and exc.strerror else str(exc)
            raise UsageError(f"cannot read {self.path}: {reason}") from None

    def load(self) -> StpaModel | int:
        """Parse the input; on parse errors report them and return the exit code instead."""
        model, diags = parse(self.read())
        if any(d.is_error for d in diags):
            self.emit(diags)
            return EXIT_PARSE
        return model


def cmd_check(run: _Run) -> int:
    model, parse_diags = parse(run.read())
    if any(d.is_error for d in parse_diags):
        run.emit(parse_diags)
        return EXIT_PARSE
    diags = list(parse_diags) + validate(model)
    run.emit(diags)
    counts = {sev: sum(d.severity is sev for d in diags) for sev in Severity}
    if run.args.format == "text":
        print(f"{run.path}: {counts[Severity.ERROR]} error(s), {counts[Severity.WARNING]} "
              f"warning(s), {counts[Severity.INFO]} info", file=run.err)
    if counts[Severity.ERROR]:
        return EXIT_INVALID
    if run.args.warnings_as_errors and counts[Severity.WARNING]:
        return EXIT_INVALID
    return EXIT_OK


def render_grid(grid: UcaGrid, model: StpaModel) -> str:
    names = {a.id: a.name for a in model.actions}
    header = ["Control Action", *(gw.label for gw in GUIDEWORDS)]
    lines = ["| " + " | ".join(header) + " |", "|" + "|".join([" --- "] * len(header)) + "|"]
    for aid in grid.actions:
        cells = []
        for cell in grid.row(aid):
            if cell.state is CellState.NOT_APPLICABLE:
                cells.append("N/A")
            else:
                cells.append(", ".join(cell.ucas))
        lines.append("| " + " | ".join([f"{aid}: {names.get(aid, '?')}", *cells]) + " |")
    cov = coverage(model).for_loop(grid.loop)
    lines += ["", f"coverage: {cov.ratio:.3f} ({cov.assessed} assessed, {cov.not_applicable} "
                  f"N/A, {cov.unassessed} unassessed of {cov.total} cells)"]
    return "\n".join(lines) + "\n"


def cmd_expand(run: _Run) -> int:
    model = run.load()
    if isinstance(model, int):
        return model
    run.out.write(render_grid(expand_rubric(model, run.args.loop), model))
    return EXIT_OK


def cmd_trace(run: _Run) -> int:
    model = run.load()
    if isinstance(model, int):
        return model
    ident = run.args.from_id
    if run.args.direction == "forward":
        fwd = trace_forward(model, ident)
        print(f"loss: {fwd.loss}", file=run.out)
        for label in ("hazards", "ucas", "scenarios", "requirements"):
            print(f"{label}: {', '.join(getattr(fwd, label))}", file=run.out)
        return EXIT_OK
    paths = trace_back(model, ident)
    for p in paths:
        print(str(p), file=run.out)
    losses = []
    for p in paths:
        if p.loss not in losses:
            losses.append(p.loss)
    order = {loss.id: i for i, loss in enumerate(model.losses)}
    print(f"losses: {', '.join(sorted(losses, key=order.__getitem__))}", file=run.out)
    return EXIT_OK


def _write_artifact(run: _Run, text: str) -> None:
    out = getattr(run.args, "out", None)
    if out:
        try:
            Path(out).write_text(text, encoding="utf-8", newline="\n")
        except OSError as exc:
            raise UsageError(f"cannot write {out}: {exc.strerror or exc}") from None
    else:
        run.out.write(text)


def cmd_report(run: _Run) -> int:
    args = run.args
    if args.table == "ucas" and not args.loop:
        raise UsageError("--table ucas requires --loop")
    if args.table == "hazards" and args.loop:
        raise UsageError("--loop only applies to --table ucas")
    model = run.load()
    if isinstance(model, int):
        return model
    errors = [d for d in validate(model) if d.is_error]
    if errors:
        run.emit(errors)
        raise StpaError("E040", f"{len(errors)} validation error(s); fix them before reporting")
    if args.table == "hazards":
        text = render_hazard_table(model, args.format)
    else:
        text = render_uca_table(model, args.loop, args.format)
    _write_artifact(run, text)
    return EXIT_OK


def cmd_export(run: _Run) -> int:
    model = run.load()
    if isinstance(model, int):
        return model
    _write_artifact(run, export_json(model) if run.args.format == "json" else export_dot(model))
    return EXIT_OK


def cmd_fmt(run: _Run) -> int:
    original = run.read()
    model, diags = parse(original)
    if any(d.is_error for d in diags):
        run.emit(diags)
        return EXIT_PARSE
    formatted = format_model(model)
    if run.args.check:
        if formatted != original:
            print(f"{run.path}: not canonically formatted", file=run.err)
            return EXIT_INVALID
        return EXIT_OK
    if run.args.write:
        if formatted != original:
            try:
                Path(run.path).write_text(formatted, encoding="utf-8", newline="\n")
            except OSError as exc:
                raise UsageError(f"cannot write {run.path}: {exc.strerror or exc}") from None
        return EXIT_OK
    run.out.write(formatted)
    return EXIT_OK


def cmd_stats(run: _Run) -> int:
    model = run.load()
    if isinstance(model, int):
        return model
    run.out.write(stats(model).to_text())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="stpa-kit", description="Validate and query .stpa hazard analyses.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check", help="parse and validate a model")
    p.add_argument("path")
    p.add_argument("--warnings-as-errors", action="store_true")
    p.add_argument("--format", choices=("text", "json"), default="text",
                   help="json prints one diagnostic object per line on stdout")
    p.set_defaults(handler=cmd_check)

    p = sub.add_parser("expand", help="show the guideword grid of one control loop")
    p.add_argument("path")
    p.add_argument("--loop", required=True)
    p.set_defaults(handler=cmd_expand)

    p = sub.add_parser("trace", help="trace towards losses or back from a loss")
    p.add_argument("path")
    p.add_argument("--from", dest="from_id", required=True, metavar="ID")
    p.add_argument("--direction", choices=("back", "forward"), default="back")
    p.set_defaults(handler=cmd_trace)

    p = sub.add_parser("report", help="render the hazard-loss matrix or a UCA table")
    p.add_argument("path")
    p.add_argument("--table", choices=("hazards", "ucas"), required=True)
    p.add_argument("--loop")
    p.add_argument("--format", choices=("md", "csv"), default="md")
    p.add_argument("--out")
    p.set_defaults(handler=cmd_report)

    p = sub.add_parser("export", help="export the model as JSON or a DOT graph")
    p.add_argument("path")
    p.add_argument("--format", choices=("json", "dot"), required=True)
    p.add_argument("--out")
    p.set_defaults(handler=cmd_export)

    p = sub.add_parser("fmt", help="print, check or rewrite the canonical form")
    p.add_argument("path")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--write", action="store_true")
    mode.add_argument("--check", action="store_true")
    p.set_defaults(handler=cmd_fmt)

    p = sub.add_parser("stats", help="print element counts")
    p.add_argument("path")
    p.set_defaults(handler=cmd_stats)
    return parser


def main(argv: Sequence[str] | None = None, out: TextIO | None = None,
         err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    run = _Run(args, out, err)
    try:
        return args.handler(run)
    except UsageError as exc:
        print(f"stpa-kit: error: {exc}", file=err)
        return EXIT_USAGE
    except StpaError as exc:
        run.emit([exc.diagnostic])
        return EXIT_INVALID


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
