"""Benchmark the numba kernels against the pure-numpy fallback.

Times one loss+gradient evaluation (the per-epoch cost of training) for the
benchmark problems at their study sizes, and checks that both backends agree.

    python benchmarks/bench_backends.py [--repeats N]
"""

import argparse
import time

import numpy as np

from gridlab import backend
from gridlab.diffengine import loss_gradient
from gridlab.network import NetLayout, init_glorot
from gridlab.problems import make_problem, make_training_data

CASES = [
    ("oscillator", "sine_based", 400, (100,)),
    ("oscillator", "sine_based", 400, (50, 50)),
    ("decay", "chebyshev", 200, (100,)),
    ("poisson", "equidistant", 20, (100,)),
    ("poisson", "equidistant", 40, (100,)),
    ("laplace", "equidistant", 20, (50, 50)),
]


def time_backend(name, problem, net, data, repeats):
    backend.set_backend(name)
    loss, grad = loss_gradient(problem, net, data)  # warm-up / JIT
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        loss_gradient(problem, net, data)
        best = min(best, time.perf_counter() - start)
    return best, loss, grad


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=20)
    args = parser.parse_args()

    print(f"{'problem':12s} {'strategy':12s} {'grid':>6s} {'net':>8s} "
          f"{'numpy ms':>10s} {'numba ms':>10s} {'speedup':>8s} {'max grad diff':>14s}")
    for kind, strategy, size, widths in CASES:
        problem = make_problem(kind)
        data = make_training_data(problem, strategy, size, seed=42)
        net = init_glorot(NetLayout(problem.dimension, widths), 42)
        t_np, l_np, g_np = time_backend("numpy", problem, net, data, args.repeats)
        t_nb, l_nb, g_nb = time_backend("numba", problem, net, data, args.repeats)
        # max abs difference scaled by the gradient magnitude
        diff = np.max(np.abs(g_np - g_nb)) / np.max(np.abs(g_np))
        grid = f"{size}x{size}" if problem.dimension == 2 else str(size)
        arch = "x".join(str(w) for w in widths)
        print(f"{kind:12s} {strategy:12s} {grid:>6s} {arch:>8s} "
              f"{t_np * 1e3:10.3f} {t_nb * 1e3:10.3f} {t_np / t_nb:8.1f} {diff:14.2e}")


if __name__ == "__main__":
    main()
