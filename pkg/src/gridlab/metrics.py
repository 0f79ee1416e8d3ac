"""Evaluation metrics: MAE against the exact solution, multi-run aggregates.

Sums here use compensated summation (``math.fsum``) so results do not
depend on evaluation-grid ordering; training losses deliberately keep plain
ordered summation instead.  The across-run standard deviation uses the
population normalisation 1/O.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from gridlab.network import ShallowNet, forward_many
from gridlab.problems import ProblemSpec, exact_solution


@dataclass(frozen=True)
class EvalResult:
    mae: float
    n_eval_points: int
    per_point_abs_errors: np.ndarray | None = None


@dataclass(frozen=True)
class Aggregate:
    mean_mae: float
    sd: float
    runs: int


def mae(pred, exact) -> float:
    """Mean absolute error (1/N) sum |pred_i - exact_i|."""
    pred = np.asarray(pred, dtype=np.float64)
    exact = np.asarray(exact, dtype=np.float64)
    if pred.shape != exact.shape or pred.size == 0:
        raise ValueError(f"mae needs equal nonzero lengths, got {pred.shape} vs {exact.shape}")
    return math.fsum(np.abs(pred - exact)) / pred.size


def evaluate(p: ProblemSpec, net: ShallowNet, eval_grid: np.ndarray,
             keep_errors: bool = False) -> EvalResult:
    """MAE of the network against the exact solution over a fixed grid."""
    grid = np.asarray(eval_grid, dtype=np.float64)
    pred = forward_many(net, grid)
    errors = np.abs(pred - exact_solution(p, grid))
    return EvalResult(
        mae=math.fsum(errors) / errors.size,
        n_eval_points=errors.size,
        per_point_abs_errors=errors if keep_errors else None,
    )


def aggregate(maes) -> Aggregate:
    """Mean and population standard deviation over independent runs."""
    values = [float(v) for v in maes]
    if not values:
        raise ValueError("aggregate needs a nonempty list")
    runs = len(values)
    mean = math.fsum(values) / runs
    sd = math.sqrt(math.fsum((v - mean) ** 2 for v in values) / runs)
    return Aggregate(mean, sd, runs)
