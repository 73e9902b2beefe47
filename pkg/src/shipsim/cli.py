"""Command-line entry point: ``shipsim run | check | fit-kt | fit-ar | version``."""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__
from .config import ConfigError, load_scenario, load_ship
from .identification import KNOT, fit_ar, fit_kt, read_csv_columns, series_from_csv, training_length_metric
from .integrate import IntegrationError, RealTimeBudgetExceeded
from .response import nondim_kt

OUT_DIR_ENV = "SHIPSIM_OUT_DIR"


def _out_dir(arg: str | None) -> Path:
    return Path(arg or os.environ.get(OUT_DIR_ENV) or ".")


def cmd_run(args) -> int:
    from .scenario import format_summary, run_scenario, write_csv

    scenario = load_scenario(args.scenario)
    result = run_scenario(scenario)
    out = _out_dir(args.out)
    out.mkdir(parents=True, exist_ok=True)
    path = write_csv(result.trajectory, out / f"{scenario.name}.csv")
    print(f"scenario: {scenario.name}")
    print(f"csv: {path}")
    print(format_summary(result.summary))
    return 0


def cmd_check(args) -> int:
    from .requirements import check_requirements

    ship = load_ship(args.ship, strict=not args.lenient)
    if ship.mmg is None:
        raise ConfigError(str(args.ship), "", "the requirement check needs the MMG sections ([mass], [hull], ...)")
    report = check_requirements(ship.mmg, ship.actuators)
    print(report.format())
    if args.report:
        Path(args.report).write_text(json.dumps(report.to_dict(), indent=2) + "\n")
    return 0 if report.passed else 1


def cmd_fit_kt(args) -> int:
    series = series_from_csv(args.csv)
    fit = fit_kt(series, smooth=args.smooth)
    print(f"K: {fit.model.K!r} 1/s")
    print(f"T: {fit.model.T!r} s")
    print(f"residual_rms: {fit.residual_rms!r} rad/s")
    if args.speed_kn is not None and args.length is not None:
        V = args.speed_kn * KNOT
        K_, T_ = nondim_kt(fit.model, V, args.length)
        record = (len(series) - 1) * series.dt
        print(f"K_nondim: {K_!r}")
        print(f"T_nondim: {T_!r}")
        print(f"training_length_nondim: {training_length_metric(record, V, args.length)!r}")
    return 0


def cmd_fit_ar(args) -> int:
    cols = read_csv_columns(args.csv)
    if args.channel not in cols:
        raise ValueError(f"{args.csv}: no column {args.channel!r}; available: {', '.join(cols)}")
    model = fit_ar(cols[args.channel], args.max_order)
    print(f"order: {model.order}")
    print("coefficients: " + " ".join(repr(c) for c in model.coefficients))
    print("stderr: " + " ".join(repr(s) for s in model.stderr))
    print(f"sigma2: {model.sigma2!r}")
    print("aic: " + " ".join(f"{k}:{v!r}" for k, v in model.aic.items()))
    return 0


def cmd_version(args) -> int:
    print(f"shipsim {__version__}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="shipsim", description="Ship maneuvering simulation")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run a scenario file and write the trajectory CSV")
    p.add_argument("scenario", type=Path)
    p.add_argument("--out", help=f"output directory (default: ${OUT_DIR_ENV} or the current directory)")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("check", help="run the functional-requirement probes on a ship file")
    p.add_argument("ship", type=Path)
    p.add_argument("--report", help="also write the report as JSON to this path")
    p.add_argument("--lenient", action="store_true", help="skip the resistance-sign check so faulty ships can be probed")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("fit-kt", help="fit K and T to a trajectory CSV")
    p.add_argument("csv", type=Path)
    p.add_argument("--smooth", type=int, default=1, help="odd moving-average window in samples (default 1: none)")
    p.add_argument("--speed-kn", type=float, help="ship speed in knots, for non-dimensional output")
    p.add_argument("--length", type=float, help="ship length in m, for non-dimensional output")
    p.set_defaults(func=cmd_fit_kt)

    p = sub.add_parser("fit-ar", help="fit an autoregressive model to one CSV column")
    p.add_argument("csv", type=Path)
    p.add_argument("--channel", default="r")
    p.add_argument("--max-order", type=int, default=10)
    p.set_defaults(func=cmd_fit_ar)

    p = sub.add_parser("version", help="print the version")
    p.set_defaults(func=cmd_version)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (IntegrationError, RealTimeBudgetExceeded) as exc:
        print(f"simulation error: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
