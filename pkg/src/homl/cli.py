"""Command-line driver.

Wires parse -> analysis -> audit -> emit with deterministic exit codes
for automation:

* 0 — success / clean
* 1 — diagnostics or audit errors (with ``--strict``, warnings too)
* 2 — usage errors
* 3 — I/O errors

Diagnostics go to stderr; artifacts go to stdout or ``--output``.
Setting ``NO_COLOR`` (or piping stderr) disables severity coloring.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import replace

from . import __version__
from .analysis import analyze
from .audit import Severity, audit_all
from .emit import emit_csv, emit_json, emit_markdown, emit_reference_tables
from .model import OversightModel, ParseError
from .parser import parse
from .render import render_source
from .scaffold import NothingToScaffoldError, scaffold_derivation
from .semantics import validate_semantics
from .trace import build_trace_graph

EXIT_OK = 0
EXIT_FINDINGS = 1
EXIT_USAGE = 2
EXIT_IO = 3

TEMPLATE = '''\
# Oversight scenario model. Fill in the declarations, then run:
#   homl check <file>   homl gaps <file>   homl derive <file>
scenario "example" {
  system {
    control: low
    transparency: low
    # extension sensitivity = high
  }
  role reviewer "Reviewer" {
    authority: supervisory
    interaction: validation
  }
}
'''


def _use_color() -> bool:
    return sys.stderr.isatty() and not os.environ.get("NO_COLOR")


def _style(text: str, code: str) -> str:
    if _use_color():
        return f"\x1b[{code}m{text}\x1b[0m"
    return text


def _error(message: str):
    print(_style(f"error: {message}", "31"), file=sys.stderr)


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        raise _IOFailure(f"cannot read '{path}': {exc.strerror or exc}") from exc


def _write(path: str, data: str | bytes):
    mode = "wb" if isinstance(data, bytes) else "w"
    kwargs = {} if isinstance(data, bytes) else {"encoding": "utf-8"}
    try:
        with open(path, mode, **kwargs) as handle:
            handle.write(data)
    except OSError as exc:
        raise _IOFailure(f"cannot write '{path}': {exc.strerror or exc}") from exc


class _IOFailure(Exception):
    pass


def _load_valid_model(path: str) -> OversightModel | None:
    """Parse and validate; on failure print diagnostics and return None."""
    source = _read(path)
    try:
        model = parse(source)
    except ParseError as exc:
        for diagnostic in exc.diagnostics:
            print(f"{path}:{diagnostic}", file=sys.stderr)
        return None
    diagnostics = validate_semantics(model)
    if diagnostics:
        for diagnostic in diagnostics:
            print(f"{path}:{diagnostic}", file=sys.stderr)
        return None
    return model


def _emit(text: str | bytes, output: str | None):
    if output:
        _write(output, text)
    elif isinstance(text, bytes):
        sys.stdout.buffer.write(text)
        sys.stdout.flush()
    else:
        sys.stdout.write(text)


def cmd_init(args) -> int:
    if os.path.exists(args.path) and not args.force:
        raise _IOFailure(
            f"'{args.path}' already exists (use --force to overwrite)"
        )
    _write(args.path, TEMPLATE)
    print(f"wrote template to {args.path}", file=sys.stderr)
    return EXIT_OK


def cmd_check(args) -> int:
    model = _load_valid_model(args.input)
    return EXIT_OK if model is not None else EXIT_FINDINGS


def cmd_gaps(args) -> int:
    model = _load_valid_model(args.input)
    if model is None:
        return EXIT_FINDINGS
    analysis = analyze(model)
    lines = [
        f"pattern: {analysis.pattern.archetype.display_name}"
        + (f" ({analysis.gaps[0].qualifier})" if analysis.pattern.extensions else "")
    ]
    for gap in analysis.gaps:
        if gap.gap_type is not None:
            label = gap.gap_type.name
            if gap.qualifier:
                label += f" {gap.qualifier}"
        else:
            label = f"no gap type ({gap.role.cell.note})"
        lines.append(f"{gap.gap_id} {gap.role.role_ident}: {label}")
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def cmd_derive(args) -> int:
    model = _load_valid_model(args.input)
    if model is None:
        return EXIT_FINDINGS
    if model.derivation is not None and not args.force:
        _error(
            f"'{args.input}' already has a derivation block; "
            f"use --force to regenerate"
        )
        return EXIT_FINDINGS
    analysis = analyze(model)
    try:
        block = scaffold_derivation(analysis.gaps, analysis.roles)
    except NothingToScaffoldError as exc:
        _error(str(exc))
        return EXIT_FINDINGS
    derived = replace(model, derivation=block)
    _write(args.output or args.input, render_source(derived))
    return EXIT_OK


def cmd_audit(args) -> int:
    model = _load_valid_model(args.input)
    if model is None:
        return EXIT_FINDINGS
    analysis = analyze(model)
    graph = build_trace_graph(model, analysis)
    report = audit_all(model, analysis, graph)
    for finding in report.findings:
        color = "31" if finding.severity is Severity.ERROR else "33"
        print(_style(str(finding), color), file=sys.stderr)
    print(
        f"errors: {report.error_count}, warnings: {report.warning_count}",
        file=sys.stderr,
    )
    if report.error_count:
        return EXIT_FINDINGS
    if args.strict and report.warning_count:
        return EXIT_FINDINGS
    return EXIT_OK


def cmd_render(args) -> int:
    model = _load_valid_model(args.input)
    if model is None:
        return EXIT_FINDINGS
    analysis = analyze(model)
    graph = build_trace_graph(model, analysis)
    report = audit_all(model, analysis, graph)
    if args.format == "json":
        artifact: str | bytes = emit_json(model, analysis, graph, report)
    elif args.format == "md":
        artifact = emit_markdown(model, analysis, graph, report)
    else:
        artifact = emit_csv(analysis)
    _emit(artifact, args.output)
    return EXIT_OK


def cmd_tables(args) -> int:
    _emit(emit_reference_tables(args.format), args.output)
    return EXIT_OK


def build_arg_parser() -> argparse.ArgumentParser:
    root = argparse.ArgumentParser(
        prog="homl",
        description="Oversight requirements compiler for .homl scenario models.",
    )
    root.add_argument("--version", action="version", version=__version__)
    commands = root.add_subparsers(dest="command", required=True)

    init = commands.add_parser("init", help="write a template scenario file")
    init.add_argument("path", nargs="?", default="scenario.homl")
    init.add_argument("--force", action="store_true")
    init.set_defaults(handler=cmd_init)

    def with_input(sub, output=True):
        sub.add_argument("input", help="path to a .homl file")
        if output:
            sub.add_argument("--output", help="write artifact to this path")

    check = commands.add_parser("check", help="parse and validate")
    with_input(check, output=False)
    check.set_defaults(handler=cmd_check)

    gaps = commands.add_parser("gaps", help="print the gap analysis")
    with_input(gaps)
    gaps.set_defaults(handler=cmd_gaps)

    derive = commands.add_parser(
        "derive", help="scaffold a derivation block into the file"
    )
    with_input(derive)
    derive.add_argument(
        "--force", action="store_true",
        help="replace an existing derivation block",
    )
    derive.set_defaults(handler=cmd_derive)

    audit = commands.add_parser("audit", help="run the quality audit")
    with_input(audit, output=False)
    audit.add_argument(
        "--strict", action="store_true", help="warnings also fail the audit"
    )
    audit.set_defaults(handler=cmd_audit)

    render = commands.add_parser("render", help="emit the analysis artifact")
    with_input(render)
    render.add_argument(
        "--format", choices=("json", "md", "csv"), default="json"
    )
    render.set_defaults(handler=cmd_render)

    tables = commands.add_parser(
        "tables", help="print the static reference tables"
    )
    tables.add_argument(
        "--format", choices=("markdown", "json"), default="markdown"
    )
    tables.add_argument("--output", help="write tables to this path")
    tables.set_defaults(handler=cmd_tables)
    return root


def run(argv: list[str]) -> int:
    parser = build_arg_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors, 0 on --help/--version
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except _IOFailure as exc:
        _error(str(exc))
        return EXIT_IO


def main() -> None:
    sys.exit(run(sys.argv[1:]))
