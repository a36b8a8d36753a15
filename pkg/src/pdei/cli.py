"""Command-line interface.

Subcommands: di (derive disparity table), rank, select, audit, reproduce,
serve.  Data goes to --out files or standard output; diagnostics go to
standard error.  Exit codes: 0 success, 1 validation error, 2 computation
error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from pdei.datasets import ALL_TABLES, BUILTIN_DATASETS, REPRODUCTION_TOL, load_dataset
from pdei.errors import InputError, PdeiError
from pdei.labor import (
    DisparityProfile,
    LaborForceTable,
    SectorRecord,
    build_disparity_profile,
    parse_labor_force,
    parse_sector_stats,
)
from pdei.pipeline import (
    Candidate,
    audit_four_fifths,
    compute_pdei,
    group_key_for_scenario,
    rank,
    rank_payload,
    scores_to_csv,
    select_top_k,
    uniform_pool,
)
from pdei.reproduce import STATUS_FAIL, render_report, reproduce_table

SCENARIO_FLAGS = {"race": "race_only", "race_gender": "race_and_gender"}
SCHEME_FLAGS = {"raw": "raw_score", "pdei": "pdei", "equal": "equal_per_group"}


class CliUsageError(InputError):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with code 2 on bad usage; the contract here is 1.
    def error(self, message):
        raise CliUsageError(f"{self.prog}: {message}")


def _add_dataset_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--dataset",
        default="bls-2022-mgmt",
        help=f"built-in dataset name (available: {', '.join(BUILTIN_DATASETS)})",
    )
    parser.add_argument("--sectors", help="sector_stats.csv path (overrides --dataset)")
    parser.add_argument("--labor", help="labor_force.csv path (with --sectors; defaults to built-in totals)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pdei", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_di = sub.add_parser("di", help="derive the disparity table and write di.csv")
    _add_dataset_flags(p_di)
    p_di.add_argument("--out", help="output path (default: standard output)")

    p_rank = sub.add_parser("rank", help="rank a candidate pool by adjusted score")
    _add_dataset_flags(p_rank)
    p_rank.add_argument("--sector", required=True)
    p_rank.add_argument("--scenario", choices=sorted(SCENARIO_FLAGS), default="race")
    p_rank.add_argument("--candidates", help="candidates.json path (default: built-in uniform pool)")
    p_rank.add_argument("--out", help="output path (default: standard output)")
    p_rank.add_argument("--json", action="store_true", help="emit the canonical JSON payload instead of scores.csv")

    p_select = sub.add_parser("select", help="select the top k under a scheme")
    _add_dataset_flags(p_select)
    p_select.add_argument("--sector", required=True)
    p_select.add_argument("--scenario", choices=sorted(SCENARIO_FLAGS), default="race")
    p_select.add_argument("--scheme", choices=sorted(SCHEME_FLAGS), required=True)
    p_select.add_argument("--k", type=int, required=True)
    p_select.add_argument("--candidates")
    p_select.add_argument("--out")

    p_audit = sub.add_parser("audit", help="select, then audit the selection under the 4/5 rule")
    _add_dataset_flags(p_audit)
    p_audit.add_argument("--sector", required=True)
    p_audit.add_argument("--scenario", choices=sorted(SCENARIO_FLAGS), default="race")
    p_audit.add_argument("--scheme", choices=sorted(SCHEME_FLAGS), required=True)
    p_audit.add_argument("--k", type=int, required=True)
    p_audit.add_argument("--candidates")
    p_audit.add_argument("--out")

    p_rep = sub.add_parser("reproduce", help="recompute the reference tables and report deviations")
    p_rep.add_argument("--table", type=int, choices=ALL_TABLES, action="append",
                       help="table number (repeatable; default: all)")
    p_rep.add_argument("--tol", type=float, default=REPRODUCTION_TOL)

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    _add_dataset_flags(p_serve)
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--console", help="directory with the built decision console (served at /)")

    return parser


def _load_inputs(args) -> tuple[list[SectorRecord], LaborForceTable]:
    if args.sectors:
        sectors = parse_sector_stats(Path(args.sectors).read_bytes())
        if args.labor:
            labor = parse_labor_force(Path(args.labor).read_bytes())
        else:
            labor = load_dataset()[1]
        return sectors, labor
    return load_dataset(args.dataset)


def _load_profile(args) -> DisparityProfile:
    sectors, labor = _load_inputs(args)
    return build_disparity_profile(sectors, labor)


def _load_pool(args, scenario: str) -> list[Candidate]:
    if not args.candidates:
        return uniform_pool(scenario)
    try:
        raw = json.loads(Path(args.candidates).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise InputError(f"{args.candidates}: not valid JSON ({exc})") from exc
    if not isinstance(raw, list):
        raise InputError(f"{args.candidates}: expected a JSON array of candidates")
    pool = []
    for i, entry in enumerate(raw):
        if not isinstance(entry, dict):
            raise InputError(f"candidates[{i}]: expected an object")
        missing = [f for f in ("id", "race_group", "gender_group", "scores") if f not in entry]
        if missing:
            raise InputError(f"candidates[{i}]: missing fields {missing}")
        if not isinstance(entry["scores"], list):
            raise InputError(f"candidates[{i}].scores: expected an array of numbers")
        pool.append(
            Candidate(
                id=str(entry["id"]),
                race_group=entry["race_group"],
                gender_group=entry["gender_group"],
                scores=tuple(entry["scores"]),
            )
        )
    return pool


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _canonical_json(payload) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"


def _cmd_di(args) -> int:
    profile = _load_profile(args)
    _emit(profile.to_csv(), args.out)
    return 0


def _cmd_rank(args) -> int:
    scenario = SCENARIO_FLAGS[args.scenario]
    profile = _load_profile(args)
    pool = _load_pool(args, scenario)
    scores = compute_pdei(pool, profile, args.sector, scenario)
    if args.json:
        _emit(_canonical_json(rank_payload(scores)), args.out)
    else:
        _emit(scores_to_csv(rank(scores)), args.out)
    return 0


def _selection(args):
    scenario = SCENARIO_FLAGS[args.scenario]
    profile = _load_profile(args)
    pool = _load_pool(args, scenario)
    scores = compute_pdei(pool, profile, args.sector, scenario)
    ranked = rank(scores)
    selection = select_top_k(ranked, args.k, SCHEME_FLAGS[args.scheme])
    return pool, scenario, selection


def _cmd_select(args) -> int:
    _, _, selection = _selection(args)
    payload = {
        "selected": [
            {
                "candidate_id": s.candidate_id,
                "race_group": s.race_group,
                "gender_group": s.gender_group,
                "mean_score": s.mean_score,
                "pdei": s.pdei,
            }
            for s in selection
        ]
    }
    _emit(_canonical_json(payload), args.out)
    return 0


def _cmd_audit(args) -> int:
    pool, scenario, selection = _selection(args)
    audit = audit_four_fifths(
        pool, [s.candidate_id for s in selection], group_key_for_scenario(scenario)
    )
    _emit(_canonical_json(audit.to_dict()), args.out)
    return 0


def _cmd_reproduce(args) -> int:
    tables = args.table or list(ALL_TABLES)
    any_failed = False
    chunks = []
    for table in tables:
        reports = reproduce_table(table, args.tol)
        chunks.append(render_report(table, reports, args.tol))
        any_failed = any_failed or any(r.status == STATUS_FAIL for r in reports)
    sys.stdout.write("\n".join(chunks))
    return 2 if any_failed else 0


def _cmd_serve(args) -> int:
    import os

    import uvicorn

    from pdei.server import create_app

    sectors, labor = _load_inputs(args)
    console = args.console or os.environ.get("PDEI_CONSOLE_DIR")
    if console is None and Path("frontend/dist").is_dir():
        console = "frontend/dist"
    app = create_app(sectors=sectors, labor=labor, console_dir=console)
    try:
        uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    except (OSError, SystemExit) as exc:
        print(f"error: could not serve on {args.host}:{args.port}: {exc}", file=sys.stderr)
        return 1
    return 0


_COMMANDS = {
    "di": _cmd_di,
    "rank": _cmd_rank,
    "select": _cmd_select,
    "audit": _cmd_audit,
    "reproduce": _cmd_reproduce,
    "serve": _cmd_serve,
}


def cli_main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except CliUsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        print("run 'pdei --help' for usage", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: file not found: {exc.filename}", file=sys.stderr)
        return 1
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except PdeiError as exc:
        print(f"computation error: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:  # argparse --help
        return int(exc.code or 0)


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
