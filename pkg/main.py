"""
Command-line entry point.

    uv run python main.py run scenarios/reference/muon.scn --format json
    uv run python main.py validate my.scn
    uv run python main.py list-kinds
    uv run python main.py paper-suite --out output/reference --jobs 4

Exit codes: 0 success, 1 usage/validation, 2 numerical/domain, 3 I/O.
"""

import argparse
import multiprocessing as mp
import os
import sys
from pathlib import Path

from config import CONSTANTS_ENV_VAR, Settings, constants_profile
from errors import EXIT_OK, EXIT_USAGE, LabError, exit_code_for
from scenarios import FORMATS, KINDS, RESERVED_KEYS, emit, parse_scenario, run_scenario


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"error: {message}\n")


def _fail(exc: BaseException) -> int:
    print(f"error: {exc}", file=sys.stderr)
    return exit_code_for(exc)


def _default_output(settings: Settings, scenario_path: Path, fmt: str) -> Path:
    return settings.output_dir / f"{scenario_path.stem}.{fmt}"


def cmd_run(args, settings: Settings) -> int:
    constants = constants_profile(args.constants)
    path = Path(args.file)
    scenario = parse_scenario(path, constants)
    table = run_scenario(scenario, constants, settings)
    out = args.out or scenario.output_path or _default_output(settings, path, args.format)
    written = emit(table, args.format, out)
    for done in [*table.exports, written]:
        print(f"Wrote: {done}")
    return EXIT_OK


def cmd_validate(args, settings: Settings) -> int:
    constants = constants_profile(args.constants)
    scenario = parse_scenario(Path(args.file), constants)
    print(f"OK: {scenario.kind} ({len(scenario.parameters)} parameters)")
    return EXIT_OK


def cmd_list_kinds(args, settings: Settings) -> int:
    print(f"reserved keys: {', '.join(RESERVED_KEYS)}")
    for kind in sorted(KINDS):
        spec = KINDS[kind]
        print(f"{kind}: {spec.summary}")
        print(f"  required: {', '.join(spec.required()) or '-'}")
        print(f"  optional: {', '.join(spec.optional()) or '-'}")
    return EXIT_OK


def _run_suite_entry(task: tuple[str, str, str, str]) -> tuple[str, str | None, str | None, int]:
    """Worker: one scenario in, (source, written path, error, exit code) out."""
    scenario_path, out_dir, fmt, constants_name = task
    settings = Settings()
    try:
        constants = constants_profile(constants_name)
        scenario = parse_scenario(Path(scenario_path), constants)
        table = run_scenario(scenario, constants, settings)
        out = Path(out_dir) / f"{Path(scenario_path).stem}.{fmt}"
        return scenario_path, str(emit(table, fmt, out)), None, EXIT_OK
    except (LabError, OSError) as e:
        return scenario_path, None, str(e), exit_code_for(e)


def cmd_paper_suite(args, settings: Settings) -> int:
    constants_profile(args.constants)
    suite_dir = Path(args.suite_dir or settings.suite_dir)
    files = sorted(suite_dir.glob("*.scn"))
    if not files:
        raise FileNotFoundError(f"no .scn files in {suite_dir}")
    out_dir = Path(args.out or settings.output_dir / "reference")
    jobs = max(1, args.jobs or settings.jobs)
    tasks = [(str(f), str(out_dir), args.format, args.constants) for f in files]

    if jobs == 1:
        results = [_run_suite_entry(t) for t in tasks]
    else:
        with mp.Pool(processes=jobs) as pool:
            results = list(pool.imap(_run_suite_entry, tasks))

    worst = EXIT_OK
    failed = 0
    for source, written, error, code in results:
        if error is None:
            print(f"Wrote: {written}")
        else:
            failed += 1
            print(f"error: {source}: {error}", file=sys.stderr)
            worst = max(worst, code)
    print(f"\n{len(results) - failed}/{len(results)} scenarios succeeded")
    return worst


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(description="Relativity, dynamide lattice and optics scenarios.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument(
            "--constants",
            choices=("si", "natural"),
            default="si",
            help="Physical constants profile (default: si).",
        )

    p_run = sub.add_parser("run", help="Run one scenario file and write its result table.")
    p_run.add_argument("file", help="Scenario file.")
    p_run.add_argument("--format", choices=FORMATS, default=None, help="Output format (default: csv).")
    p_run.add_argument("--out", type=Path, default=None, help="Output file path.")
    add_common(p_run)
    p_run.set_defaults(func=cmd_run)

    p_validate = sub.add_parser("validate", help="Parse and validate a scenario without running it.")
    p_validate.add_argument("file", help="Scenario file.")
    add_common(p_validate)
    p_validate.set_defaults(func=cmd_validate)

    p_kinds = sub.add_parser("list-kinds", help="List scenario kinds and their parameters.")
    p_kinds.set_defaults(func=cmd_list_kinds)

    p_suite = sub.add_parser("paper-suite", help="Run every bundled reference scenario.")
    p_suite.add_argument("--format", choices=FORMATS, default=None, help="Output format (default: csv).")
    p_suite.add_argument("--out", type=Path, default=None, help="Output directory.")
    p_suite.add_argument("--suite-dir", type=Path, default=None, help="Directory of .scn files.")
    p_suite.add_argument("--jobs", type=int, default=None, help="Worker processes (default: 1).")
    add_common(p_suite)
    p_suite.set_defaults(func=cmd_paper_suite)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if os.environ.get(CONSTANTS_ENV_VAR) is not None:
        print(
            f"error: {CONSTANTS_ENV_VAR} is not honoured; choose constants with --constants",
            file=sys.stderr,
        )
        return EXIT_USAGE
    try:
        settings = Settings()
        if getattr(args, "format", "csv") is None:
            args.format = settings.default_format
        return args.func(args, settings)
    except (LabError, OSError, ValueError) as e:
        return _fail(e)


if __name__ == "__main__":
    sys.exit(main())
