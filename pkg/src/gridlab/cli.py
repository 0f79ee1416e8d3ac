"""Command-line interface.

    gridlab sample --strategy S --n N --domain a,b [--seed K] [--out FILE]
    gridlab train  --config FILE [--out DIR] [--log-every N]
    gridlab sweep  --config FILE --out DIR [--workers W]
    gridlab plot   --in results.csv --out DIR

Exit codes: 0 success, 1 configuration error, 2 run failures present,
3 I/O error.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys

from gridlab import runner
from gridlab.network import save_checkpoint
from gridlab.runner import ConfigError
from gridlab.sampler import Interval, STRATEGIES, generate, write_pointset_csv

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_RUN_FAILURES = 2
EXIT_IO = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gridlab",
        description="train shallow PINNs under different training-point distributions",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sample = sub.add_parser("sample", help="dump a 1D point set as CSV")
    p_sample.add_argument("--strategy", required=True, choices=STRATEGIES)
    p_sample.add_argument("--n", required=True, type=int)
    p_sample.add_argument("--domain", required=True, help="interval as a,b")
    p_sample.add_argument("--seed", type=int, default=None)
    p_sample.add_argument("--out", default=None, help="output file (default stdout)")

    p_train = sub.add_parser("train", help="run one training configuration")
    p_train.add_argument("--config", required=True)
    p_train.add_argument("--out", default=None, help="directory for results/checkpoint")
    p_train.add_argument("--log-every", type=int, default=None,
                         help="dump loss history CSV at this epoch stride")

    p_sweep = sub.add_parser("sweep", help="run the full configured product of runs")
    p_sweep.add_argument("--config", required=True)
    p_sweep.add_argument("--out", required=True)
    p_sweep.add_argument("--workers", type=int, default=1)

    p_plot = sub.add_parser("plot", help="charts + summary from an existing results.csv")
    p_plot.add_argument("--in", dest="infile", required=True)
    p_plot.add_argument("--out", required=True)
    return parser


def _cmd_sample(args) -> int:
    try:
        a, b = (float(part) for part in args.domain.split(","))
        pointset = generate(args.strategy, Interval(a, b), args.n, args.seed)
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    if args.out is None:
        write_pointset_csv(pointset, sys.stdout)
        return EXIT_OK
    try:
        with open(args.out, "w", encoding="ascii") as fh:
            write_pointset_csv(pointset, fh)
    except OSError as err:
        print(f"error: cannot write {args.out}: {err}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def _cmd_train(args) -> int:
    cfg = runner.load_config(args.config).resolved()
    plan = runner.plan_runs(cfg)
    if len(plan) != 1:
        raise ConfigError(
            f"train runs a single configuration but this one expands to {len(plan)} "
            "runs; trim the lists or use `gridlab sweep`"
        )
    strategy, size, widths, seed = plan[0]
    task = (cfg.kind, cfg.lam, cfg.epochs, strategy, size, widths, seed,
            cfg.boundary_per_edge)
    record, trained = runner.execute_run(task)
    print(f"{record.problem} strategy={record.strategy} grid={record.grid} "
          f"widths={record.widths} seed={record.seed} epochs={record.epochs} "
          f"final_loss={record.final_loss:.6e} mae={record.mae:.6e} "
          f"status={record.status}")
    outdir = args.out or cfg.out_dir
    if outdir:
        try:
            os.makedirs(outdir, exist_ok=True)
            runner.write_results_csv([record], os.path.join(outdir, "results.csv"))
            if trained is not None:
                net, report = trained
                save_checkpoint(net, os.path.join(outdir, "checkpoint.txt"))
                if args.log_every:
                    _write_loss_history(report, os.path.join(outdir, "loss_history.csv"),
                                        args.log_every)
        except OSError as err:
            print(f"error: {err}", file=sys.stderr)
            return EXIT_IO
    return EXIT_OK if record.status == "ok" else EXIT_RUN_FAILURES


def _write_loss_history(report, path, log_every) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write("epoch,loss\n")
        for epoch in range(0, report.epochs_run, log_every):
            fh.write(f"{epoch},{report.loss_history[epoch]:.17g}\n")
        last = report.epochs_run - 1
        if last % log_every != 0:
            fh.write(f"{last},{report.loss_history[last]:.17g}\n")


def _cmd_sweep(args) -> int:
    cfg = runner.load_config(args.config)
    records = runner.run_experiment(cfg, workers=args.workers)
    summary = runner.build_summary(records)
    try:
        paths = runner.emit_outputs(records, summary, args.out)
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_IO
    for path in paths:
        print(f"wrote {path}")
    failed = sum(1 for r in records if r.status != "ok")
    if failed:
        print(f"{failed} of {len(records)} runs failed", file=sys.stderr)
        return EXIT_RUN_FAILURES
    return EXIT_OK


def _cmd_plot(args) -> int:
    try:
        records = runner.read_results_csv(args.infile)
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_IO
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    summary = runner.build_summary(records)
    try:
        paths = runner.emit_outputs(records, summary, args.out)
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_IO
    for path in paths:
        print(f"wrote {path}")
    return EXIT_OK


def main(argv=None) -> int:
    logging.basicConfig(level=os.environ.get("GRIDLAB_LOGLEVEL", "WARNING"),
                        format="%(levelname)s %(name)s: %(message)s")
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "sample":
            return _cmd_sample(args)
        if args.command == "train":
            return _cmd_train(args)
        if args.command == "sweep":
            return _cmd_sweep(args)
        return _cmd_plot(args)
    except ConfigError as err:
        print(f"config error: {err}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
