"""Command-line entry point.

    sol2eb translate contract.sol -o out/      # .eb files + translation report
    sol2eb check out/ [--json] [--all]         # discharge POs within bounds
    sol2eb simulate out/                       # terminal animation REPL
    sol2eb serve out/ --port 7007              # HTTP API + web UI

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .checker import DEFAULT_BUDGET, CheckReport, check_all
from .domains import UnsupportedDomain
from .ebeval import Bounds, GuardFailed, WdError, value_to_json
from .ebtext import DanglingReference, EbParseError, parse_project, print_project
from .ebtype import EbTypeError, typecheck
from .sim import (
    InitInvariantViolation, NoConstantModel, NothingToUndo, SimError,
    SimSession, decode_value,
)
from .solcheck import SolCheckError, validate_contract
from .solidity import SolParseError, parse_contract
from .translate import TranslationReport, translate

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_USAGE = 2
EXIT_INPUT = 3


def _color_enabled() -> bool:
    return os.environ.get("SOL2EB_NO_COLOR") is None and sys.stdout.isatty()


def _paint(text: str, code: str) -> str:
    return f"\x1b[{code}m{text}\x1b[0m" if _color_enabled() else text


def _green(text: str) -> str:
    return _paint(text, "32")


def _red(text: str) -> str:
    return _paint(text, "31")


def _bounds_args(parser: argparse.ArgumentParser):
    parser.add_argument("--addr", type=int, default=3,
                        help="number of ADDRESS atoms (default 3)")
    parser.add_argument("--int-lo", type=int, default=0,
                        help="lower end of the integer window (default 0)")
    parser.add_argument("--int-hi", type=int, default=4,
                        help="upper end of the integer window (default 4)")


def _bounds_of(args) -> Bounds:
    return Bounds(addr_count=args.addr, int_lo=args.int_lo, int_hi=args.int_hi)


def _collect_eb_files(paths: list[str]) -> list[tuple[str, str]]:
    files: list[tuple[str, str]] = []
    for raw in paths:
        p = Path(raw)
        if p.is_dir():
            found = sorted(p.glob("*.eb"))
            if not found:
                raise FileNotFoundError(f"no .eb files in {p}")
            files += [(str(f), f.read_text(encoding="utf-8")) for f in found]
        else:
            files.append((str(p), p.read_text(encoding="utf-8")))
    return files


def _load_translation_report(paths: list[str]) -> TranslationReport | None:
    for raw in paths:
        p = Path(raw)
        root = p if p.is_dir() else p.parent
        for report in sorted(root.glob("*_report.json")):
            return TranslationReport.from_json(
                json.loads(report.read_text(encoding="utf-8")))
    return None


def _load_typed(paths: list[str]):
    files = _collect_eb_files(paths)
    return typecheck(parse_project(files))


# ---------------------------------------------------------------------------
# subcommands


def cmd_translate(args) -> int:
    source_path = Path(args.source)
    try:
        text = source_path.read_text(encoding="utf-8")
    except OSError as exc:
        print(f"sol2eb: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        ast = parse_contract(text, str(source_path))
        checked = validate_contract(ast)
        project, report = translate(checked)
    except SolParseError as exc:
        print(exc.diagnostic(), file=sys.stderr)
        return EXIT_INPUT
    except SolCheckError as exc:
        print(exc.diagnostic(str(source_path)), file=sys.stderr)
        return EXIT_INPUT

    report.source_file = str(source_path)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    for filename, content in print_project(project):
        (out_dir / filename).write_text(content, encoding="utf-8")
        print(f"wrote {out_dir / filename}")
    report_path = out_dir / f"{project.name}_report.json"
    report_path.write_text(
        json.dumps(report.to_json(), indent=2, sort_keys=True) + "\n",
        encoding="utf-8")
    print(f"wrote {report_path}")
    for span, reason in report.skipped:
        print(f"{source_path}:{span.line}:{span.col}: note: skipped: {reason}",
              file=sys.stderr)
    return EXIT_OK


def _print_verdict_table(report: CheckReport):
    width = max((len(v.po.name) for v in report.verdicts), default=10) + 2
    print(f"project {report.project}  bounds addr={report.bounds.addr_count} "
          f"ints=[{report.bounds.int_lo},{report.bounds.int_hi}]")
    for v in report.verdicts:
        if v.status == "discharged":
            status = _green("discharged")
        elif v.status == "violated":
            status = _red("VIOLATED")
        else:
            status = _red(v.status)
        line = f"  {v.po.name:<{width}} {v.po.kind:4} {status:<12} cases={v.cases}"
        print(line)
        if v.counterexample is not None:
            ce = {n: value_to_json(x) for n, x in v.counterexample.items()}
            print(f"      counterexample: {json.dumps(ce)}")
            span = report.source_span(v.po)
            if span and span.get("file"):
                print(f"      source: {span['file']}:{span['line']}:{span['col']}")
        if v.detail and v.status == "unsupported":
            print(f"      {v.detail}")
    discharged = sum(1 for v in report.verdicts if v.status == "discharged")
    print(f"  {discharged} discharged, {len(report.violated)} violated, "
          f"{len(report.unsupported)} unsupported")


def cmd_check(args) -> int:
    try:
        typed = _load_typed(args.paths)
    except (EbParseError, DanglingReference, EbTypeError, FileNotFoundError, OSError) as exc:
        print(f"sol2eb: {exc}", file=sys.stderr)
        return EXIT_INPUT
    translation = _load_translation_report(args.paths)
    report = check_all(typed, _bounds_of(args), include_trivial=args.all,
                       budget=args.budget, translation=translation)
    if args.json:
        print(json.dumps(report.to_json(), indent=2, sort_keys=True))
    else:
        _print_verdict_table(report)
    return EXIT_OK if report.ok() else EXIT_VERIFICATION


def _print_sim_state(session: SimSession):
    result = session.step_result()
    prev = result.previous or {}
    print(f"step {result.step}  machine {session.machine.name}")
    name_w = max(len(n) for n in session.machine.variables) + 2
    for name in session.machine.variables:
        value = json.dumps(value_to_json(result.state[name]))
        before = json.dumps(value_to_json(prev[name])) if name in prev else ""
        print(f"  {name:<{name_w}} {value:<28} {before}")
    bad = [label for label, holds in result.invariants if not holds]
    if bad:
        print(_red(f"  invariant violation: {', '.join(bad)}"))
    else:
        print(_green("  invariants ok") + "  no event errors detected")


def cmd_simulate(args) -> int:
    try:
        typed = _load_typed(args.paths)
    except (EbParseError, DanglingReference, EbTypeError, FileNotFoundError, OSError) as exc:
        print(f"sol2eb: {exc}", file=sys.stderr)
        return EXIT_INPUT
    bounds = _bounds_of(args)
    constants = {}
    for item in args.const or []:
        if "=" not in item:
            print(f"sol2eb: --const expects name=value, got {item!r}", file=sys.stderr)
            return EXIT_USAGE
        name, raw = item.split("=", 1)
        ty = typed.const_types.get(name)
        if ty is None:
            print(f"sol2eb: not a constant: {name}", file=sys.stderr)
            return EXIT_USAGE
        try:
            constants[name] = decode_value(raw, ty, bounds)
        except SimError as exc:
            print(f"sol2eb: {exc}", file=sys.stderr)
            return EXIT_USAGE
    try:
        session = SimSession(typed, machine=args.machine, constants=constants,
                             bounds=bounds)
    except (NoConstantModel, InitInvariantViolation, SimError) as exc:
        print(f"sol2eb: {exc}", file=sys.stderr)
        return EXIT_VERIFICATION
    except KeyError as exc:
        print(f"sol2eb: no machine named {exc}", file=sys.stderr)
        return EXIT_USAGE

    print(f"constants: "
          f"{ {n: value_to_json(v) for n, v in session.constants.items()} }")
    _print_sim_state(session)
    offers: list[tuple[str, dict]] = []

    def list_offers():
        offers.clear()
        for offer in session.enabled_events():
            for valuation in offer.valuations:
                offers.append((offer.event, valuation))
        if not offers:
            print("  no enabled events (deadlock)")
        for i, (event, valuation) in enumerate(offers, 1):
            shown = {n: value_to_json(v) for n, v in valuation.items()}
            print(f"  [{i:3}] {event} {json.dumps(shown) if shown else ''}")

    list_offers()
    print("commands: fire N | list | state | undo | reset | trace | quit")
    stream = sys.stdin
    while True:
        print("sol2eb> ", end="", flush=True)
        line = stream.readline()
        if not line:
            break
        words = line.split()
        if not words:
            continue
        cmd = words[0].lower()
        try:
            if cmd in ("quit", "exit", "q"):
                break
            elif cmd == "list":
                list_offers()
            elif cmd == "state":
                _print_sim_state(session)
            elif cmd == "undo":
                session.undo()
                _print_sim_state(session)
                list_offers()
            elif cmd == "reset":
                session.reset()
                _print_sim_state(session)
                list_offers()
            elif cmd == "trace":
                print(json.dumps(session.export_trace(), indent=2))
            elif cmd == "fire":
                if len(words) != 2 or not words[1].isdigit():
                    print("usage: fire N")
                    continue
                index = int(words[1])
                if not 1 <= index <= len(offers):
                    print(f"no offer [{index}]")
                    continue
                event, params = offers[index - 1]
                session.fire(event, params)
                print(f"fired {event}")
                _print_sim_state(session)
                list_offers()
            else:
                print(f"unknown command {cmd!r}")
        except GuardFailed as exc:
            print(_red(f"guard failed: {exc.label}"))
        except WdError as exc:
            print(_red(f"event error: {exc.site}"))
        except (NothingToUndo, SimError) as exc:
            print(_red(str(exc)))
    return EXIT_OK


def cmd_serve(args) -> int:
    from .server import LoadedProject, create_app, load_project_dir, load_project_files

    projects: dict[str, LoadedProject] = {}
    try:
        for raw in args.paths:
            p = Path(raw)
            if p.is_dir():
                proj = load_project_dir(p)
            else:
                proj = load_project_files(_collect_eb_files([raw]),
                                          _load_translation_report([raw]))
            projects[proj.name] = proj
    except (EbParseError, DanglingReference, EbTypeError, FileNotFoundError, OSError) as exc:
        print(f"sol2eb: {exc}", file=sys.stderr)
        return EXIT_INPUT

    ui_dir = args.ui_dir
    if ui_dir is None:
        for candidate in (Path(__file__).resolve().parents[2] / "frontend" / "dist",
                          Path("frontend") / "dist"):
            if candidate.is_dir():
                ui_dir = str(candidate)
                break
    app = create_app(projects, ui_dir=ui_dir)
    print(f"projects: {', '.join(sorted(projects))}")
    if ui_dir:
        print(f"ui assets: {ui_dir}")
    import uvicorn

    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sol2eb",
        description="Translate a Solidity subset to Event-B, check proof "
                    "obligations by bounded enumeration, and animate machines.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_tr = sub.add_parser("translate", help="translate a .sol file to .eb files")
    p_tr.add_argument("source", help="Solidity source file")
    p_tr.add_argument("-o", "--out", default=".", help="output directory")
    p_tr.set_defaults(func=cmd_translate)

    p_ck = sub.add_parser("check", help="generate and discharge proof obligations")
    p_ck.add_argument("paths", nargs="+", help=".eb files or a project directory")
    _bounds_args(p_ck)
    p_ck.add_argument("--json", action="store_true", help="JSON report on stdout")
    p_ck.add_argument("--all", action="store_true",
                      help="include trivially-discharged obligations")
    p_ck.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                      help="per-obligation case budget")
    p_ck.set_defaults(func=cmd_check)

    p_sim = sub.add_parser("simulate", help="animate a machine in a terminal REPL")
    p_sim.add_argument("paths", nargs="+", help=".eb files or a project directory")
    _bounds_args(p_sim)
    p_sim.add_argument("--machine", help="machine to animate (default: most abstract)")
    p_sim.add_argument("--const", action="append", metavar="NAME=VALUE",
                       help="fix a context constant")
    p_sim.set_defaults(func=cmd_simulate)

    p_srv = sub.add_parser("serve", help="serve the HTTP API and web UI")
    p_srv.add_argument("paths", nargs="+", help=".eb files or project directories")
    _bounds_args(p_srv)
    p_srv.add_argument("--port", type=int, default=7007)
    p_srv.add_argument("--host", default="127.0.0.1")
    p_srv.add_argument("--ui-dir", help="directory of built web-ui assets")
    p_srv.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UnsupportedDomain as exc:
        print(f"sol2eb: {exc}", file=sys.stderr)
        return EXIT_VERIFICATION


if __name__ == "__main__":
    sys.exit(main())
