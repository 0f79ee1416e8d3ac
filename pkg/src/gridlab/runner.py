"""Experiment orchestration.

A sweep is the Cartesian product strategies x grid sizes x architectures x
seeds.  Each run derives every random stream from its own seed (weights,
training points, boundary edges), trains with full-batch Adam, evaluates on
the problem's default grid, and yields one ResultRecord.  Runs are
independent, so a worker pool may execute them in any order; records are
emitted in configuration order regardless.

Aborted runs (non-finite loss) are flagged in the ``status`` column and the
sweep continues.  Numbers are serialised with 17 significant digits so the
CSV round-trips exactly.
"""

from __future__ import annotations

import configparser
import csv
import itertools
import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

from gridlab import svgchart
from gridlab.diffengine import NonFiniteError
from gridlab.metrics import Aggregate, aggregate, evaluate
from gridlab.network import NetLayout, init_glorot
from gridlab.optimizer import train
from gridlab.problems import (
    KINDS,
    default_config,
    default_eval_grid,
    make_problem,
    make_training_data,
)
from gridlab.sampler import STRATEGIES
from gridlab.seeding import derive_subseed

log = logging.getLogger(__name__)

CSV_COLUMNS = ("problem", "strategy", "depth", "widths", "grid", "boundary_n",
               "seed", "epochs", "final_loss", "mae", "wall_time_s", "status")

DEFAULT_ARCHITECTURES = ((100,), (50, 50))


class ConfigError(Exception):
    """Invalid or unreadable experiment configuration."""


@dataclass(frozen=True)
class ExperimentConfig:
    kind: str
    lam: float = 0.25
    epochs: int | None = None          # None: the problem's default budget
    strategies: tuple[str, ...] = STRATEGIES
    grid_sizes: tuple[int, ...] | None = None  # None: the problem's defaults
    architectures: tuple[tuple[int, ...], ...] = DEFAULT_ARCHITECTURES
    seeds: tuple[int, ...] = (42,)
    boundary_per_edge: int = 30
    out_dir: str = "results"

    def resolved(self) -> "ExperimentConfig":
        """Fill problem-dependent defaults."""
        defaults = default_config(self.kind)
        out = self
        if out.epochs is None:
            out = replace(out, epochs=defaults.epochs)
        if out.grid_sizes is None:
            out = replace(out, grid_sizes=defaults.train_sizes)
        return out


@dataclass(frozen=True)
class ResultRecord:
    problem: str
    strategy: str
    depth: int
    widths: tuple[int, ...]
    grid: str
    boundary_n: int
    seed: int
    epochs: int
    final_loss: float
    mae: float
    wall_time_s: float
    status: str


# ---------------------------------------------------------------------------
# config file parsing

_SCHEMA = {
    "problem": ("kind", "lambda", "epochs"),
    "sampling": ("strategies", "grid_sizes", "boundary_per_edge"),
    "network": ("architectures",),
    "run": ("seeds", "out_dir"),
}


def _parse_seeds(text: str) -> tuple[int, ...]:
    text = text.strip()
    if ".." in text:
        lo, hi = text.split("..")
        lo, hi = int(lo), int(hi)
        if hi < lo:
            raise ConfigError(f"seed range {text!r} is empty")
        return tuple(range(lo, hi + 1))
    return tuple(int(part) for part in text.split(","))


def _parse_architectures(text: str) -> tuple[tuple[int, ...], ...]:
    archs = []
    for chunk in text.split("|"):
        widths = tuple(int(w) for w in chunk.split(","))
        if len(widths) not in (1, 2) or any(w < 1 for w in widths):
            raise ConfigError(f"architecture {chunk.strip()!r} must be 1 or 2 positive widths")
        archs.append(widths)
    return tuple(archs)


def load_config(path) -> ExperimentConfig:
    """Read a sweep config: INI-style sections, unknown keys are errors."""
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    try:
        with open(path, encoding="utf-8") as fh:
            parser.read_file(fh)
    except OSError as err:
        raise ConfigError(f"cannot read config {path}: {err}") from err
    except configparser.Error as err:
        raise ConfigError(f"malformed config {path}: {err}") from err

    for section in parser.sections():
        if section not in _SCHEMA:
            raise ConfigError(f"unknown config section [{section}]")
        for key in parser[section]:
            if key not in _SCHEMA[section]:
                raise ConfigError(f"unknown key {key!r} in section [{section}]")

    def get(section, key, fallback=None):
        return parser.get(section, key, fallback=fallback) if parser.has_section(section) else fallback

    kind = get("problem", "kind")
    if kind is None:
        raise ConfigError("config needs [problem] kind = decay|oscillator|laplace|poisson")
    if kind not in KINDS:
        raise ConfigError(f"unknown problem kind {kind!r}, expected one of {KINDS}")

    try:
        cfg = ExperimentConfig(kind=kind)
        if get("problem", "lambda") is not None:
            if kind != "decay":
                raise ConfigError("lambda is only meaningful for the decay problem")
            cfg = replace(cfg, lam=float(get("problem", "lambda")))
        if get("problem", "epochs") is not None:
            cfg = replace(cfg, epochs=int(get("problem", "epochs")))
        if get("sampling", "strategies") is not None:
            strategies = tuple(s.strip() for s in get("sampling", "strategies").split(","))
            unknown = [s for s in strategies if s not in STRATEGIES]
            if unknown:
                raise ConfigError(f"unknown strategies {unknown}, expected subset of {STRATEGIES}")
            cfg = replace(cfg, strategies=strategies)
        if get("sampling", "grid_sizes") is not None:
            sizes = tuple(int(v) for v in get("sampling", "grid_sizes").split(","))
            if not sizes or any(v < 2 for v in sizes):
                raise ConfigError(f"grid_sizes must be >= 2, got {sizes}")
            cfg = replace(cfg, grid_sizes=sizes)
        if get("sampling", "boundary_per_edge") is not None:
            cfg = replace(cfg, boundary_per_edge=int(get("sampling", "boundary_per_edge")))
        if get("network", "architectures") is not None:
            cfg = replace(cfg, architectures=_parse_architectures(get("network", "architectures")))
        if get("run", "seeds") is not None:
            cfg = replace(cfg, seeds=_parse_seeds(get("run", "seeds")))
        if get("run", "out_dir") is not None:
            cfg = replace(cfg, out_dir=get("run", "out_dir"))
    except ValueError as err:
        raise ConfigError(f"bad value in config {path}: {err}") from err

    if cfg.epochs is not None and cfg.epochs < 1:
        raise ConfigError(f"epochs must be >= 1, got {cfg.epochs}")
    if cfg.boundary_per_edge < 2:
        raise ConfigError(f"boundary_per_edge must be >= 2, got {cfg.boundary_per_edge}")
    if not cfg.seeds:
        raise ConfigError("seeds must be nonempty")
    return cfg


# ---------------------------------------------------------------------------
# execution

def execute_run(task):
    """Run one (problem, strategy, grid, arch, seed) task.

    Returns (record, trained_network_or_None); the network is None for
    aborted runs.
    """
    kind, lam, epochs, strategy, size, widths, seed, boundary_per_edge = task
    problem = make_problem(kind, lam) if kind == "decay" else make_problem(kind)
    is_pde = problem.dimension == 2
    grid_desc = f"{size}x{size}" if is_pde else str(size)
    record = ResultRecord(
        problem=kind, strategy=strategy, depth=len(widths), widths=widths,
        grid=grid_desc, boundary_n=boundary_per_edge if is_pde else 0,
        seed=seed, epochs=epochs, final_loss=math.nan, mae=math.nan,
        wall_time_s=0.0, status="failed",
    )
    try:
        data = make_training_data(problem, strategy, size, seed, boundary_per_edge)
        net0 = init_glorot(NetLayout(problem.dimension, widths),
                           derive_subseed(seed, "weights"))
        report = train(problem, net0, data, epochs)
        net = net0.with_theta(report.final_theta)
        result = evaluate(problem, net, default_eval_grid(problem))
        record = replace(record, final_loss=report.final_loss, mae=result.mae,
                         wall_time_s=report.wall_time_seconds, status="ok")
        return record, (net, report)
    except NonFiniteError as err:
        log.warning("run %s/%s/%s/seed=%d aborted: %s", kind, strategy, grid_desc, seed, err)
        return record, None


def _run_one(task) -> ResultRecord:
    return execute_run(task)[0]


def plan_runs(cfg: ExperimentConfig):
    """The (strategy, grid, architecture, seed) tuples in iteration order."""
    cfg = cfg.resolved()
    return list(itertools.product(cfg.strategies, cfg.grid_sizes,
                                  cfg.architectures, cfg.seeds))


def run_experiment(cfg: ExperimentConfig, workers: int = 1) -> list[ResultRecord]:
    """Execute every configured run; one record per run, in plan order."""
    cfg = cfg.resolved()
    tasks = [
        (cfg.kind, cfg.lam, cfg.epochs, strategy, size, widths, seed, cfg.boundary_per_edge)
        for strategy, size, widths, seed in plan_runs(cfg)
    ]
    log.info("sweep: %d runs (%s), workers=%d", len(tasks), cfg.kind, workers)
    if workers <= 1:
        records = [_run_one(task) for task in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_run_one, tasks))
    failed = sum(1 for r in records if r.status != "ok")
    if failed:
        log.warning("sweep finished with %d failed runs out of %d", failed, len(records))
    return records


# ---------------------------------------------------------------------------
# aggregation

def summarize(records) -> dict[str, Aggregate]:
    """Per-strategy MAE aggregates for records sharing problem/arch/grid."""
    keys = {(r.problem, r.depth, r.widths, r.grid) for r in records}
    if len(keys) > 1:
        raise ValueError(f"summarize needs records sharing problem/architecture/grid, got {keys}")
    groups: dict[str, list[float]] = {}
    for record in records:
        groups.setdefault(record.strategy, [])
        if record.status == "ok":
            groups[record.strategy].append(record.mae)
    table = {}
    for strategy, maes in groups.items():
        if not maes:
            log.warning("strategy %s has no successful runs; omitted from summary", strategy)
            continue
        table[strategy] = aggregate(maes)
    return table


def build_summary(records):
    """Flatten per-(problem, arch, grid) summaries into summary.csv rows."""
    order = []
    grouped = {}
    for record in records:
        key = (record.problem, record.depth, record.widths, record.grid)
        if key not in grouped:
            grouped[key] = []
            order.append(key)
        grouped[key].append(record)
    rows = []
    for key in order:
        for strategy, agg in summarize(grouped[key]).items():
            rows.append((*key, strategy, agg))
    return rows


# ---------------------------------------------------------------------------
# persistence

def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _widths_str(widths) -> str:
    return "x".join(str(w) for w in widths)


def write_results_csv(records, path) -> None:
    try:
        with open(path, "w", newline="", encoding="ascii") as fh:
            writer = csv.writer(fh)
            writer.writerow(CSV_COLUMNS)
            for r in records:
                writer.writerow([
                    r.problem, r.strategy, r.depth, _widths_str(r.widths), r.grid,
                    r.boundary_n, r.seed, r.epochs, _fmt(r.final_loss), _fmt(r.mae),
                    _fmt(r.wall_time_s), r.status,
                ])
    except OSError as err:
        raise OSError(f"cannot write results to {path}: {err}") from err


def read_results_csv(path) -> list[ResultRecord]:
    records = []
    try:
        with open(path, newline="", encoding="ascii") as fh:
            reader = csv.reader(fh)
            header = next(reader)
            if tuple(header) != CSV_COLUMNS:
                raise ValueError(f"unexpected results.csv header in {path}: {header}")
            for row in reader:
                records.append(ResultRecord(
                    problem=row[0], strategy=row[1], depth=int(row[2]),
                    widths=tuple(int(w) for w in row[3].split("x")), grid=row[4],
                    boundary_n=int(row[5]), seed=int(row[6]), epochs=int(row[7]),
                    final_loss=float(row[8]), mae=float(row[9]),
                    wall_time_s=float(row[10]), status=row[11],
                ))
    except OSError as err:
        raise OSError(f"cannot read results from {path}: {err}") from err
    return records


def write_summary_csv(rows, path) -> None:
    try:
        with open(path, "w", newline="", encoding="ascii") as fh:
            writer = csv.writer(fh)
            writer.writerow(("problem", "depth", "widths", "grid", "strategy",
                             "runs", "mean_mae", "sd_mae"))
            for problem, depth, widths, grid, strategy, agg in rows:
                writer.writerow([problem, depth, _widths_str(widths), grid, strategy,
                                 agg.runs, _fmt(agg.mean_mae), _fmt(agg.sd)])
    except OSError as err:
        raise OSError(f"cannot write summary to {path}: {err}") from err


# ---------------------------------------------------------------------------
# chart emission

def _grid_size_number(grid: str) -> int:
    return int(grid.split("x")[0])


def _line_chart_series(records):
    ok = [r for r in records if r.status == "ok"]
    multi_arch = len({r.widths for r in ok}) > 1
    series = {}
    for r in ok:
        label = r.strategy if not multi_arch else f"{r.strategy} ({_widths_str(r.widths)})"
        series.setdefault(label, {}).setdefault(_grid_size_number(r.grid), []).append(r.mae)
    out = []
    for label, by_grid in series.items():
        xs = sorted(by_grid)
        ys = [aggregate(by_grid[x]).mean_mae for x in xs]
        out.append((label, xs, ys))
    return out


def emit_outputs(records, summary_rows, outdir) -> list[str]:
    """Write results.csv, summary.csv, and the two charts; returns paths."""
    try:
        os.makedirs(outdir, exist_ok=True)
    except OSError as err:
        raise OSError(f"cannot create output directory {outdir}: {err}") from err
    written = []

    results_path = os.path.join(outdir, "results.csv")
    write_results_csv(records, results_path)
    written.append(results_path)
    summary_path = os.path.join(outdir, "summary.csv")
    write_summary_csv(summary_rows, summary_path)
    written.append(summary_path)

    if not records:
        log.warning("no records: wrote header-only CSVs, skipping charts")
        return written

    series = _line_chart_series(records)
    grids = {x for _, xs, _ in series for x in xs}
    if series and len(grids) > 1:
        problem = records[0].problem
        svg = svgchart.line_chart(series, f"MAE vs grid size ({problem})",
                                  "grid size", "MAE")
        path = os.path.join(outdir, "mae_vs_grid.svg")
        _write_text(path, svg)
        written.append(path)

    # bar chart for the group with the most successful runs
    by_group = {}
    for row in summary_rows:
        by_group.setdefault(row[:4], []).append(row)
    if by_group:
        best = max(by_group, key=lambda key: sum(row[5].runs for row in by_group[key]))
        rows = by_group[best]
        labels = [row[4] for row in rows]
        means = [row[5].mean_mae for row in rows]
        sds = [row[5].sd for row in rows]
        problem, depth, widths, grid = best
        svg = svgchart.bar_chart(
            labels, means, sds,
            f"mean MAE by strategy ({problem}, {_widths_str(widths)} net, grid {grid})",
            "mean MAE",
        )
        path = os.path.join(outdir, "mae_by_strategy.svg")
        _write_text(path, svg)
        written.append(path)
    return written


def _write_text(path, text) -> None:
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as err:
        raise OSError(f"cannot write {path}: {err}") from err
