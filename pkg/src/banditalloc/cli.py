"""Command-line surface for running experiments and tracing oracles.

Exit codes: 0 on success, 2 on configuration errors (including unknown
flags, via argparse), 1 on runtime failures.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .harness import (
    AGGREGATE_COLUMNS,
    RESULT_COLUMNS,
    ConfigError,
    ExperimentConfig,
    PRESETS,
    load_config,
    read_csv,
    run_experiment,
    trace_oracle,
    write_csv,
)

_TRACE_COLUMNS = ["oracle", "t", "abs_err_mean", "abs_err_stderr"]


def _default_threads() -> int:
    raw = os.environ.get("BWK_ADVICE_THREADS", "1")
    try:
        return max(int(raw), 1)
    except ValueError:
        return 1


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="JSON experiment config (schema 1)")
    parser.add_argument("--preset", help="named preset (see `presets`)")
    parser.add_argument("--out", default="results", help="output directory")
    parser.add_argument("--seed", type=int, help="master seed")
    parser.add_argument("--reps", type=int, help="replications per cell")
    parser.add_argument("--threads", type=int, default=None, help="worker processes")


def _build_config(args: argparse.Namespace, default_reps: int = 20) -> ExperimentConfig:
    if args.config:
        config = load_config(args.config)
    elif args.preset:
        config = ExperimentConfig(preset=args.preset, reps=default_reps)
    else:
        raise ConfigError("either --config or --preset is required")
    if args.preset and args.config:
        raise ConfigError("pass --config or --preset, not both")
    if args.seed is not None:
        config.seed = args.seed
    if args.reps is not None:
        config.reps = args.reps
        if config.reps < 1:
            raise ConfigError("reps must be at least 1")
    if args.out:
        config.out_dir = args.out
    config.threads = args.threads if args.threads is not None else _default_threads()
    return config


def _parse_axes(pairs: list[str]) -> dict[str, list[float]]:
    sweep: dict[str, list[float]] = {}
    for pair in pairs:
        if "=" not in pair:
            raise ConfigError(f"bad --axis {pair!r}; expected name=v1,v2,...")
        name, _, values = pair.partition("=")
        if name not in ("b", "T", "x"):
            raise ConfigError(f"unknown sweep axis {name!r} (expected b, T, or x)")
        try:
            sweep[name] = [float(v) for v in values.split(",") if v]
        except ValueError as exc:
            raise ConfigError(f"bad --axis values {values!r}: {exc}") from exc
        if not sweep[name]:
            raise ConfigError(f"--axis {name} needs at least one value")
    return sweep


def _cmd_run(args: argparse.Namespace) -> int:
    config = _build_config(args)
    rows, aggregates = run_experiment(config)
    out = Path(config.out_dir)
    write_csv(out / "results.csv", rows, RESULT_COLUMNS)
    write_csv(out / "aggregates.csv", aggregates, AGGREGATE_COLUMNS)
    print(f"wrote {out / 'results.csv'} ({len(rows)} rows)")
    print(f"wrote {out / 'aggregates.csv'} ({len(aggregates)} rows)")
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    config = _build_config(args)
    sweep = _parse_axes(args.axis or [])
    if not sweep:
        raise ConfigError("sweep requires at least one --axis")
    if "T" in sweep:
        sweep["T"] = [int(v) for v in sweep["T"]]
    config.sweep = {**config.sweep, **sweep}
    rows, aggregates = run_experiment(config)
    out = Path(config.out_dir)
    write_csv(out / "results.csv", rows, RESULT_COLUMNS)
    write_csv(out / "aggregates.csv", aggregates, AGGREGATE_COLUMNS)
    print(f"wrote {out / 'results.csv'} ({len(rows)} rows)")
    print(f"wrote {out / 'aggregates.csv'} ({len(aggregates)} rows)")
    return 0


def _cmd_trace_oracle(args: argparse.Namespace) -> int:
    config = _build_config(args, default_reps=50)
    rows = trace_oracle(config)
    out = Path(config.out_dir)
    write_csv(out / "estimation_error.csv", rows, _TRACE_COLUMNS)
    print(f"wrote {out / 'estimation_error.csv'} ({len(rows)} rows)")
    return 0


def _cmd_table(args: argparse.Namespace) -> int:
    path = Path(args.out) / "aggregates.csv"
    if not path.exists():
        raise ConfigError(f"no aggregates at {path}; run an experiment first")
    rows = read_csv(path)
    if not rows:
        print("(no aggregate rows)")
        return 0
    header = f"{'algo':<10} {'oracle':<12} {'b':>6} {'T':>7} {'regret':>16} {'CR':>16} {'tau':>9}"
    print(header)
    print("-" * len(header))
    for row in rows:
        regret = f"{row['regret_mean']:.1f} ± {row['regret_stderr']:.1f}"
        ratio = f"{row['cr_mean']:.3f} ± {row['cr_stderr']:.3f}"
        print(
            f"{row['algo']:<10} {row['oracle']:<12} {row['b']:>6g} {row['T']:>7d} "
            f"{regret:>16} {ratio:>16} {row['tau_mean']:>9.1f}"
        )
    return 0


def _cmd_presets(args: argparse.Namespace) -> int:
    for name, preset in PRESETS.items():
        print(f"{name:<24} [{preset.kind}] T={preset.default_horizon} b={preset.default_budget}")
        print(f"{'':<24} {preset.description}")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="banditalloc",
        description="Budgeted allocation experiments with demand predictions",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one experiment cell grid")
    _add_common(p_run)
    p_run.set_defaults(func=_cmd_run)

    p_sweep = sub.add_parser("sweep", help="run a sweep over b, T, or oracle offset x")
    _add_common(p_sweep)
    p_sweep.add_argument("--axis", action="append", help="axis values, e.g. b=10,15,20")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_trace = sub.add_parser("trace-oracle", help="log oracle estimation error, no bandit")
    _add_common(p_trace)
    p_trace.set_defaults(func=_cmd_trace_oracle)

    p_table = sub.add_parser("table", help="pretty-print aggregates.csv")
    p_table.add_argument("--out", default="results", help="directory holding aggregates.csv")
    p_table.set_defaults(func=_cmd_table)

    p_presets = sub.add_parser("presets", help="list named presets")
    p_presets.set_defaults(func=_cmd_presets)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
