"""Command-line interface: batch summarization, evaluation, and the server.

Results go to stdout, diagnostics to stderr.  Exit codes: 0 success, 1 for
input parse/validation failures, 2 for bad flags (argparse's convention).
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .errors import SetsummError
from .evalkit import evaluate, read_choice_records, read_likert_summaries
from .ingest import load_table
from .pipeline import SummaryConfig, summarize
from .realize import SummaryMode

DEFAULT_PORT = 8000
DEFAULT_DATA_DIR = "./data"
ENV_PORT = "SETSUMM_PORT"
ENV_DATA_DIR = "SETSUMM_DATA_DIR"


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="setsumm",
        description="Generate natural-language overviews of product catalogs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("summarize", help="summarize a catalog CSV")
    s.add_argument("--input", required=True, type=Path, help="catalog CSV file")
    s.add_argument(
        "--category",
        help="display name of the product set (default: input file stem)",
    )
    s.add_argument(
        "--mode",
        choices=[m.value for m in SummaryMode],
        default=SummaryMode.FULL.value,
    )
    s.add_argument(
        "--superset",
        type=Path,
        help="superset catalog CSV for extended-mode contrast",
    )
    s.add_argument("--superset-category", help="display name of the superset")
    s.add_argument("--price-column", help="name of the price column")
    s.add_argument("--top-k", type=int, default=SummaryConfig().top_k)
    s.add_argument("--mad-cutoff", type=float, default=SummaryConfig().mad_cutoff)
    s.add_argument("--min-support", type=int, default=SummaryConfig().min_support)

    e = sub.add_parser("eval", help="compute the evaluation report")
    e.add_argument("--choices", required=True, type=Path, help="choice records CSV")
    e.add_argument("--likert", required=True, type=Path, help="Likert summaries CSV")

    v = sub.add_parser("serve", help="run the HTTP service")
    v.add_argument("--host", default="127.0.0.1")
    v.add_argument("--port", type=int, default=None, help=f"listen port (env {ENV_PORT})")
    v.add_argument(
        "--data-dir",
        type=Path,
        default=None,
        help=f"dataset storage directory (env {ENV_DATA_DIR})",
    )
    v.add_argument(
        "--static-dir",
        type=Path,
        default=None,
        help="serve a built web UI from this directory under /ui",
    )
    return parser


def _load(path: Path, category: str | None, price_column: str | None):
    name = category if category is not None else path.stem
    table = load_table(path.read_bytes(), name, price_column)
    if table.dropped_rows:
        print(
            f"note: dropped {table.dropped_rows} row(s) with a missing or "
            f"unusable price from {path}",
            file=sys.stderr,
        )
    return table


def _cmd_summarize(args: argparse.Namespace) -> int:
    if args.mode != SummaryMode.EXTENDED.value and args.superset:
        print("error: --superset only applies to --mode extended", file=sys.stderr)
        return 2
    table = _load(args.input, args.category, args.price_column)
    superset = None
    if args.superset:
        superset = _load(args.superset, args.superset_category, args.price_column)
    config = SummaryConfig(
        top_k=args.top_k,
        mad_cutoff=args.mad_cutoff,
        min_support=args.min_support,
    )
    print(summarize(table, SummaryMode(args.mode), config, superset))
    return 0


def _cmd_eval(args: argparse.Namespace) -> int:
    records = read_choice_records(args.choices.read_text(encoding="utf-8"))
    likert = read_likert_summaries(args.likert.read_text(encoding="utf-8"))
    report = evaluate(records, likert)
    print(report.to_json())
    return 0


def resolve_service_config(
    port: int | None, data_dir: Path | None, static_dir: Path | None = None
):
    """Explicit flags win, then SETSUMM_* environment variables, then defaults."""
    from .server import ServiceConfig

    if port is None:
        port = int(os.environ.get(ENV_PORT, DEFAULT_PORT))
    if data_dir is None:
        data_dir = Path(os.environ.get(ENV_DATA_DIR, DEFAULT_DATA_DIR))
    return ServiceConfig(port=port, data_dir=data_dir, static_dir=static_dir)


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .server import create_app

    config = resolve_service_config(args.port, args.data_dir, args.static_dir)
    app = create_app(config)
    uvicorn.run(app, host=args.host, port=config.port)
    return 0


_COMMANDS = {
    "summarize": _cmd_summarize,
    "eval": _cmd_eval,
    "serve": _cmd_serve,
}


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (SetsummError, OSError, UnicodeDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
