"""``spmld`` command line.

Usage:
    spmld train --config runs/business.yaml --seed 3 --out runs/business-s3
    spmld evaluate --checkpoint runs/business-s3/checkpoint.json --data business_test.txt
    spmld experiment --config config/experiments/synthetic_directional.yaml --workers 4
    spmld gridsearch --config runs/business.yaml
    spmld plot-radar runs/exp/report_rho0.3_spmld.csv runs/exp/report_rho0.3_glocal.csv
    spmld synth --out data/synthetic --seed 0
    spmld plot-trace runs/business-s3/trace.csv
"""

import argparse
import logging
import sys

from src.core.config import get_system_config, setup_logging
from src.core.errors import SPMLDError

from . import commands
from .run_config import MODES, RunConfig

logger = logging.getLogger(__name__)


def _run_options() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--config", help="run config YAML merged over config/main.yaml")
    parent.add_argument("--seed", type=int, help="single run seed (replaces the seeds list)")
    parent.add_argument("--out", help="output directory")
    parent.add_argument("--mode", choices=MODES, help="spmld or the glocal host model")
    parent.add_argument("--rho", type=float, help="observed fraction of label entries")
    parent.add_argument("--workers", type=int, help="job pool size for seeds and grid cells")
    return parent


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spmld", description="Self-paced multi-label learning with missing labels"
    )
    parser.add_argument("--log-level", help="DEBUG, INFO, WARNING, ...")
    sub = parser.add_subparsers(dest="command", required=True)
    run = _run_options()

    sub.add_parser("train", parents=[run], help="train one model")
    sub.add_parser("experiment", parents=[run], help="multi-seed comparison with t-tests")
    sub.add_parser("gridsearch", parents=[run], help="pace-parameter grid search")

    evaluate = sub.add_parser("evaluate", help="evaluate a checkpoint on a test set")
    evaluate.add_argument("--checkpoint", required=True)
    evaluate.add_argument("--data", required=True, help="test dataset file")
    evaluate.add_argument("--out", default="report.csv", help="report CSV path")
    evaluate.add_argument("--format", default="auto", choices=("auto", "sparse", "arff"))
    evaluate.add_argument("--label-count", type=int, help="label attributes (ARFF)")

    radar = sub.add_parser("plot-radar", help="radar chart of two or more report CSVs")
    radar.add_argument("reports", nargs="+")
    radar.add_argument("--out", default="radar.svg")
    radar.add_argument("--title", default="")

    trace = sub.add_parser("plot-trace", help="objective and pace trace chart")
    trace.add_argument("trace")
    trace.add_argument("--out", default="trace.svg")

    synth = sub.add_parser("synth", help="generate a synthetic dataset")
    synth.add_argument("--out", required=True, help="output directory")
    synth.add_argument("--d", type=int, default=30)
    synth.add_argument("--n", type=int, default=600)
    synth.add_argument("--l", type=int, default=15)
    synth.add_argument("--k", type=int, default=4)
    synth.add_argument("--g", type=int, default=3)
    synth.add_argument("--noise-rate", type=float, default=0.4)
    synth.add_argument("--hard-fraction", type=float, default=0.2)
    synth.add_argument("--seed", type=int, default=0)
    return parser


def _load_run_config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig.load(args.config)
    return cfg.with_overrides(seed=args.seed, out=args.out, mode=args.mode, rho=args.rho)


def _workers(args: argparse.Namespace) -> int:
    return args.workers if args.workers else get_system_config()["workers"]


def dispatch(args: argparse.Namespace) -> None:
    """Run the selected subcommand."""
    if args.command == "train":
        commands.cmd_train(_load_run_config(args))
    elif args.command == "experiment":
        commands.cmd_experiment(_load_run_config(args), workers=_workers(args))
    elif args.command == "gridsearch":
        commands.cmd_gridsearch(_load_run_config(args), workers=_workers(args))
    elif args.command == "evaluate":
        commands.cmd_evaluate(
            args.checkpoint, args.data, args.out, fmt=args.format, label_count=args.label_count
        )
    elif args.command == "plot-radar":
        commands.cmd_plot_radar(args.reports, args.out, title=args.title)
    elif args.command == "plot-trace":
        commands.cmd_plot_trace(args.trace, args.out)
    elif args.command == "synth":
        commands.cmd_synth(
            args.out,
            d=args.d,
            n=args.n,
            l=args.l,
            k=args.k,
            g=args.g,
            noise_rate=args.noise_rate,
            hard_fraction=args.hard_fraction,
            seed=args.seed,
        )


def format_error(error: SPMLDError) -> str:
    """``error [<module>]: <message>`` on one line."""
    module = error.module
    cause = error.__cause__
    if isinstance(cause, SPMLDError) and cause.module:
        module = cause.module
    message = " ".join(str(error).split())
    return f"error [{module or 'cli'}]: {message}"


def main(argv: list[str] | None = None) -> int:
    """Parse arguments, run the command and map failures to exit codes.

    Returns:
        0 on success, 1 on user error, 2 on numerical failure.
    """
    args = build_parser().parse_args(argv)
    setup_logging(args.log_level)
    try:
        dispatch(args)
    except SPMLDError as e:
        print(format_error(e), file=sys.stderr)
        return e.exit_code
    except OSError as e:
        print(f"error [cli]: {e}", file=sys.stderr)
        return 1
    return 0


def run() -> None:
    """Console-script entry point."""
    sys.exit(main())


if __name__ == "__main__":
    run()
