"""Command-line entry point: validate data, render plans, run the service.

Exit codes: 0 success, 1 user error (bad arguments, bad data, unknown
names), 2 internal error.  Flags override the config file; the config file
path falls back to the SONIFY_CONFIG environment variable.
"""

from __future__ import annotations

import argparse
import csv
import socket
import sys
from dataclasses import replace
from pathlib import Path

from . import dataset as ds
from .config import AppConfig, ConfigError, default_config_path, load_config
from .mapping import SEQUENTIAL_MODES
from .pipeline import (
    SelectionError,
    load_workspace,
    render_comparative,
    render_sequential,
)
from .preprocess import preprocess_dataset
from .spatial import artifact_name

USER_ERROR = 1
INTERNAL_ERROR = 2


class UserError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage problems; this tool reserves 2 for bugs.
    def error(self, message: str):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USER_ERROR)


def _load_app_config(args: argparse.Namespace) -> AppConfig:
    config_path = getattr(args, "config", None) or default_config_path()
    config = load_config(config_path) if config_path else AppConfig()
    overrides = {}
    if getattr(args, "crime", None):
        overrides["crime_csv"] = Path(args.crime)
    if getattr(args, "growth", None):
        overrides["growth_csv"] = Path(args.growth)
    if getattr(args, "sample_bank", None):
        overrides["sample_bank_dir"] = Path(args.sample_bank)
    return replace(config, **overrides) if overrides else config


def cmd_validate(args: argparse.Namespace) -> int:
    crime_path = Path(args.crime)
    growth_path = Path(args.growth)
    checks: list[tuple[str, str]] = []

    def ok(name: str, detail: str = "") -> None:
        checks.append((name, detail))
        print(f"ok: {name}" + (f" ({detail})" if detail else ""))

    try:
        dataset = ds.load_crime_table(crime_path)
    except (OSError, ds.DatasetError) as exc:
        print(f"FAIL: crime table: {exc}", file=sys.stderr)
        return USER_ERROR
    ok("crime table parses", f"{len(dataset.regions)}x{len(dataset.categories)}x{len(dataset.years)} cells")
    ok("counts finite and non-negative")

    try:
        growth = ds.load_growth_table(growth_path)
    except (OSError, ds.DatasetError) as exc:
        print(f"FAIL: growth table: {exc}", file=sys.stderr)
        return USER_ERROR
    ok("growth table parses", f"{len(growth.growth_by_region)} regions")

    try:
        preprocess_dataset(dataset, growth)
    except ds.DatasetError as exc:
        print(f"FAIL: preprocessing: {exc}", file=sys.stderr)
        return USER_ERROR
    ok("growth covers every region and adjustment stays positive")
    ok("all series normalize to a 2001 value of 0")
    print(f"{len(checks)} checks passed")
    return 0


def _resolve_out(out: str, region: str, category: str, mode: str) -> Path:
    path = Path(out)
    if path.is_dir():
        return path / artifact_name(region, category, mode)
    return path


def cmd_render_seq(args: argparse.Namespace) -> int:
    config = _load_app_config(args)
    ws = load_workspace(config)
    result = render_sequential(ws, args.region, args.category, args.mode)
    out_path = _resolve_out(args.out, args.region, args.category, args.mode)
    out_path.write_bytes(result.wav_bytes)
    print(f"wrote {out_path} ({len(result.wav_bytes)} bytes)")
    if args.graph:
        with open(args.graph, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["year", "value"])
            writer.writerows(result.graph)
        print(f"wrote {args.graph} ({len(result.graph)} rows)")
    return 0


def _parse_fix(pairs: list[str]) -> dict:
    fixed = {}
    for pair in pairs:
        key, sep, value = pair.partition("=")
        if not sep or not key or not value:
            raise UserError(f"--fix expects key=value, got {pair!r}")
        if key in fixed:
            raise UserError(f"--fix {key} given twice")
        fixed[key] = value
    return fixed


def cmd_render_cmp(args: argparse.Namespace) -> int:
    config = _load_app_config(args)
    fixed = _parse_fix(args.fix or [])
    compare = [item.strip() for item in args.compare.split(",")]
    if len(compare) != 2 or not all(compare):
        raise UserError(f"--compare expects two comma-separated cases, got {args.compare!r}")
    ws = load_workspace(config)
    result = render_comparative(ws, fixed, compare)
    Path(args.out).write_bytes(result.wav_bytes)
    print(f"wrote {args.out} ({len(result.wav_bytes)} bytes)")
    (label_a, label_b) = result.labels
    print(f"{label_a}: {result.values[0]:g}")
    print(f"{label_b}: {result.values[1]:g}")
    if result.louder == "equal":
        print("equal")
    else:
        print(f"louder: {label_a if result.louder == 'a' else label_b}")
    return 0


def _check_port_free(host: str, port: int) -> None:
    with socket.socket(socket.AF_INET, socket.SOCK_STREAM) as sock:
        sock.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
        try:
            sock.bind((host, port))
        except OSError as exc:
            raise UserError(f"cannot bind {host}:{port}: {exc}") from exc


def cmd_serve(args: argparse.Namespace) -> int:
    config = _load_app_config(args)
    # Fail on bad data or an occupied port before the server starts.
    ws = load_workspace(config)
    _check_port_free(config.bind_host, config.bind_port)

    from .service import create_app

    static_dir = Path(args.static_dir) if args.static_dir else None
    if static_dir is not None and not static_dir.is_dir():
        raise UserError(f"static dir {static_dir} does not exist")
    app = create_app(workspace=ws, static_dir=static_dir)

    import uvicorn

    print(f"serving on http://{config.bind_host}:{config.bind_port}")
    uvicorn.run(app, host=config.bind_host, port=config.bind_port, log_level="warning")
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="sonify", description="Crime-statistics sonification toolkit")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p_validate = sub.add_parser("validate", help="check both data tables and their invariants")
    p_validate.add_argument("--crime", default=str(ds.bundled_crime_csv_path()), help="crime CSV path")
    p_validate.add_argument("--growth", default=str(ds.bundled_growth_csv_path()), help="growth CSV path")
    p_validate.set_defaults(func=cmd_validate)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", help="JSON config file (or set SONIFY_CONFIG)")
        p.add_argument("--crime", help="crime CSV path (overrides config)")
        p.add_argument("--growth", help="growth CSV path (overrides config)")
        p.add_argument("--sample-bank", dest="sample_bank", help="directory with scream_0..5.wav")

    p_seq = sub.add_parser("render-seq", help="render one region/category across the years")
    add_common(p_seq)
    p_seq.add_argument("--region", required=True)
    p_seq.add_argument("--category", required=True)
    p_seq.add_argument("--mode", required=True, choices=SEQUENTIAL_MODES)
    p_seq.add_argument("--out", required=True, help="output WAV file (or directory)")
    p_seq.add_argument("--graph", help="also write year,value rows to this CSV")
    p_seq.set_defaults(func=cmd_render_seq)

    p_cmp = sub.add_parser("render-cmp", help="render a two-case comparison")
    add_common(p_cmp)
    p_cmp.add_argument(
        "--fix",
        action="append",
        metavar="KEY=VALUE",
        help="fix a variable (region=..., category=..., year=...); repeat for the second",
    )
    p_cmp.add_argument("--compare", required=True, help="two cases of the free variable, comma separated")
    p_cmp.add_argument("--out", required=True, help="output WAV file")
    p_cmp.set_defaults(func=cmd_render_cmp)

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    add_common(p_serve)
    p_serve.add_argument("--static-dir", dest="static_dir", help="built web UI to serve at /")
    p_serve.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code or 0
    try:
        return args.func(args)
    except (UserError, ConfigError, ds.DatasetError, SelectionError, OSError) as exc:
        print(f"sonify: error: {exc}", file=sys.stderr)
        return USER_ERROR
    except Exception as exc:  # noqa: BLE001 - last-resort guard for exit code 2
        print(f"sonify: internal error: {exc}", file=sys.stderr)
        return INTERNAL_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
