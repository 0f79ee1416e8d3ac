"""Acceptance suite.

One test per release criterion; each prints a PASS/FAIL line (visible with
``pytest -s``).  The training-scale criteria take a few minutes together and
carry the ``slow`` marker; run ``pytest -m "not slow"`` to skip them during
development.
"""

import math
import os

import numpy as np
import pytest
from scipy import special

from conftest import fd_jet_d1, fd_jet_d2, fd_loss_gradient, random_net
from gridlab import jets
from gridlab.diffengine import loss_gradient
from gridlab.metrics import evaluate
from gridlab.network import NetLayout, init_glorot, forward_jet
from gridlab.optimizer import AdamState, adam_init, adam_step, train
from gridlab.problems import (
    default_eval_grid,
    make_problem,
    make_training_data,
    residual_from_jets,
)
from gridlab.runner import (
    ExperimentConfig,
    read_results_csv,
    run_experiment,
    summarize,
    write_results_csv,
)
from gridlab.sampler import (
    Interval,
    arc_length_sine,
    chebyshev,
    random_sorted,
    random_uniform,
    sine_based,
)
from gridlab.seeding import derive_subseed
from test_jets import CATALOGUE
from test_problems import exact_solution_jets, random_interior_point

KINDS = ("decay", "oscillator", "laplace", "poisson")


def report(number: int, name: str, ok: bool, detail: str) -> None:
    print(f"ACCEPTANCE {number:02d} {name}: {'PASS' if ok else 'FAIL'} ({detail})")
    assert ok, f"criterion {number} failed: {detail}"


def test_criterion_01_gradient_correctness():
    # The finite-difference oracle itself carries cancellation noise of about
    # eps * loss / (2h) per component (~1e-8 absolute for the decay loss of
    # 1e4), so components that small cannot be certified at 1e-5 relative by
    # any central difference at h = 1e-4.  Each component must therefore
    # match to 1e-5 relative or sit inside the oracle's provable noise
    # floor; a wrong gradient term would overshoot both by orders.
    eps = np.finfo(np.float64).eps
    worst_resolvable = 0.0
    violations = 0
    for kind in KINDS:
        p = make_problem(kind)
        data = make_training_data(p, "random", 10 if p.dimension == 1 else 4,
                                  seed=3, boundary_per_edge=3)
        for widths in ((8,), (6, 6)):
            for draw in range(10):
                net = random_net(NetLayout(p.dimension, widths), 1000 * draw + 7)
                loss, grad = loss_gradient(p, net, data)
                ref = fd_loss_gradient(p, net, data, h_scale=1e-4, richardson=True)
                noise = 32.0 * eps * max(1.0, loss) / (2.0 * 1e-4)
                mask = np.abs(grad) > 1e-6
                diff = np.abs(grad[mask] - ref[mask])
                allowed = np.maximum(1e-5 * np.abs(grad[mask]), noise)
                violations += int(np.sum(diff > allowed))
                resolvable = 1e-5 * np.abs(grad[mask]) > noise
                if resolvable.any():
                    rel = diff[resolvable] / np.abs(grad[mask][resolvable])
                    worst_resolvable = max(worst_resolvable, float(rel.max()))
    ok = violations == 0 and worst_resolvable < 1e-5
    report(1, "gradient correctness", ok,
           f"max rel err {worst_resolvable:.3e} < 1e-5 on oracle-resolvable components, "
           f"{violations} components outside the FD noise floor")


def test_criterion_02_jet_correctness(rng):
    worst_fd = 0.0
    for trial in range(100):
        dim = 1 if trial % 2 == 0 else 2
        net = random_net(NetLayout(dim, (8,)), trial, spread=0.5)
        x = rng.uniform(-2, 2, dim)
        axis = int(rng.integers(dim))
        jet = forward_jet(net, x, axis)
        rel1 = abs(fd_jet_d1(net, x, axis) - jet.d1) / max(abs(jet.d1), 1e-300)
        rel2 = abs(fd_jet_d2(net, x, axis) - jet.d2) / max(abs(jet.d2), 1e-300)
        worst_fd = max(worst_fd, rel1, rel2)

    worst_cat = 0.0
    for name, build, closed in CATALOGUE:
        for _ in range(100):
            s = float(rng.uniform(-2, 2))
            a = float(rng.uniform(0.5, 2.5))
            b = float(rng.uniform(-1, 1))
            out = build(jets.seed(s), a, b)
            _, d1, d2 = closed(s, a, b)
            worst_cat = max(worst_cat,
                            abs(out.d1 - d1) / max(abs(d1), 1.0),
                            abs(out.d2 - d2) / max(abs(d2), 1.0))
    ok = worst_fd < 1e-6 and worst_cat < 1e-10
    report(2, "jet correctness", ok,
           f"fd rel {worst_fd:.3e} < 1e-6, catalogue {worst_cat:.3e} < 1e-10")


def test_criterion_03_exact_solution_residuals(rng):
    worst = 0.0
    for kind in KINDS:
        p = make_problem(kind)
        for _ in range(100):
            point = random_interior_point(p, rng)
            value = residual_from_jets(p, point, exact_solution_jets(p, point))
            worst = max(worst, abs(value))
    report(3, "exact-solution residuals", worst < 1e-8,
           f"max |residual| {worst:.3e} at 100 random interior points per problem")


def test_criterion_04_sampler_oracles(rng):
    # chebyshev nodes against the closed formula
    worst_cheb = 0.0
    for _ in range(20):
        a, b = sorted(rng.uniform(-5, 5, 2))
        n = int(rng.integers(1, 50))
        pts = chebyshev(Interval(a, b), n).points
        i = np.arange(n)
        formula = (a + b) / 2 + (b - a) / 2 * np.cos((2 * i + 1) * np.pi / (2 * n))
        worst_cheb = max(worst_cheb, float(np.max(np.abs(pts - formula))))

    # arc length on [0,1]: independent oracle = elliptic-integral closed form
    m = math.pi ** 2 / (1 + math.pi ** 2)
    oracle = (2 / math.pi) * math.sqrt(1 + math.pi ** 2) * special.ellipe(m)
    arc = arc_length_sine(Interval(0.0, 1.0))
    arc_ok = abs(arc - 2.30496) < 1e-3 and abs(arc - oracle) < 1e-10

    worst_sym = 0.0
    for n in (3, 10, 37):
        pts = sine_based(Interval(0.0, 1.0), n).points
        worst_sym = max(worst_sym, float(np.max(np.abs(pts + pts[::-1] - 1.0))))

    multiset_ok = True
    for seed in range(10):
        raw = random_uniform(Interval(0, 1), 40, seed).points
        srt = random_sorted(Interval(0, 1), 40, seed).points
        multiset_ok &= bool(np.array_equal(np.sort(raw), srt))

    ok = worst_cheb < 1e-12 and arc_ok and worst_sym < 1e-9 and multiset_ok
    report(4, "sampler oracles", ok,
           f"cheb {worst_cheb:.2e}, arc {arc:.6f} (oracle {oracle:.6f}), "
           f"symmetry {worst_sym:.2e}, multisets {'ok' if multiset_ok else 'BAD'}")


def test_criterion_05_adam_oracle(rng):
    worst = 0.0
    for _ in range(1000):
        m, v = float(rng.uniform(0, 2)), float(rng.uniform(0, 2))
        k = int(rng.integers(0, 200))
        theta, g = float(rng.normal()), float(rng.normal(0, 3))
        state = AdamState(np.array([m]), np.array([v]), k)
        new, out = adam_step(state, np.array([theta]), np.array([g]))
        # scalar re-implementation of the moment update in plain floats
        b1, b2, alpha, eps = 0.9, 0.999, 1e-3, 1e-8
        em = b1 * m + (1 - b1) * g
        ev = b2 * v + (1 - b2) * g * g
        e_theta = theta - alpha * (em / (1 - b1 ** (k + 1))) / (
            math.sqrt(ev / (1 - b2 ** (k + 1))) + eps)
        worst = max(worst,
                    abs(new.m[0] - em) / max(abs(em), 1.0),
                    abs(new.v[0] - ev) / max(abs(ev), 1.0),
                    abs(out[0] - e_theta) / max(abs(e_theta), 1.0))

    _, theta1 = adam_step(adam_init(1), np.zeros(1), np.array([2.0]))
    first_ok = abs(theta1[0] - (-1e-3 * 2.0 / (2.0 + 1e-8))) < 1e-18
    report(5, "adam oracle", worst <= 1e-15 and first_ok,
           f"max rel diff {worst:.2e} over 1000 pairs; first step {theta1[0]:.10e}")


@pytest.mark.slow
def test_criterion_06_oscillator_reproduction():
    p = make_problem("oscillator")
    data = make_training_data(p, "sine_based", 400, seed=42)
    net0 = init_glorot(NetLayout(1, (100,)), derive_subseed(42, "weights"))
    rep = train(p, net0, data, epochs=100_000)
    mae = evaluate(p, net0.with_theta(rep.final_theta), default_eval_grid(p)).mae
    ok = (1e-7 <= rep.final_loss <= 1e-3 and 5e-4 <= mae <= 2e-2
          and rep.final_loss < rep.loss_history[0])
    report(6, "oscillator reproduction", ok,
           f"final loss {rep.final_loss:.3e} in [1e-7,1e-3], mae {mae:.3e} in [5e-4,2e-2]")


@pytest.mark.slow
def test_criterion_07_poisson_reproduction():
    p = make_problem("poisson")
    data = make_training_data(p, "equidistant", 20, seed=42, boundary_per_edge=30)
    net0 = init_glorot(NetLayout(2, (100,)), derive_subseed(42, "weights"))
    rep = train(p, net0, data, epochs=50_000)
    mae = evaluate(p, net0.with_theta(rep.final_theta), default_eval_grid(p)).mae
    ok = mae < 5e-2 and rep.final_loss < rep.loss_history[0]
    report(7, "poisson reproduction (20x20)", ok,
           f"mae {mae:.3e} < 5e-2, final loss {rep.final_loss:.3e}")


@pytest.mark.slow
@pytest.mark.skipif(not os.environ.get("GRIDLAB_FULL_POISSON"),
                    reason="80x80 run takes tens of minutes; set GRIDLAB_FULL_POISSON=1")
def test_criterion_07_poisson_full_scale():
    p = make_problem("poisson")
    data = make_training_data(p, "equidistant", 80, seed=42, boundary_per_edge=30)
    net0 = init_glorot(NetLayout(2, (100,)), derive_subseed(42, "weights"))
    rep = train(p, net0, data, epochs=50_000)
    mae = evaluate(p, net0.with_theta(rep.final_theta), default_eval_grid(p)).mae
    report(7, "poisson reproduction (80x80)", 5e-4 <= mae <= 2e-2,
           f"mae {mae:.3e} in [5e-4,2e-2]")


@pytest.mark.slow
def test_criterion_08_decay_sanity():
    p = make_problem("decay", lam=0.25)
    data = make_training_data(p, "chebyshev", 200, seed=42)
    net0 = init_glorot(NetLayout(1, (100,)), derive_subseed(42, "weights"))
    rep = train(p, net0, data, epochs=50_000)
    mae = evaluate(p, net0.with_theta(rep.final_theta), default_eval_grid(p)).mae
    ok = mae < 1.0 and rep.final_loss < rep.loss_history[0]
    report(8, "decay sanity", ok,
           f"mae {mae:.3e} < 1.0, loss {rep.loss_history[0]:.3e} -> {rep.final_loss:.3e}")


SMOKE = ExperimentConfig(
    kind="oscillator", epochs=200, strategies=("equidistant", "chebyshev"),
    grid_sizes=(16,), architectures=((6,),), seeds=(0, 1),
)


@pytest.mark.slow
def test_criterion_09_sweep_mechanics(tmp_path):
    # the 200-seed replication layout: 5 strategies x 1 grid x 1 architecture
    # x 200 seeds = 1000 records (1 epoch per run; the count is epoch-free)
    replication = ExperimentConfig(
        kind="oscillator", epochs=1, grid_sizes=(400,), architectures=((100,),),
        seeds=tuple(range(200)),
    )
    records = run_experiment(replication)
    count_ok = len(records) == 1000

    smoke = run_experiment(SMOKE)
    path = tmp_path / "results.csv"
    write_results_csv(smoke, path)
    round_trip_ok = read_results_csv(path) == smoke

    table = summarize(smoke)
    maes = {s: [r.mae for r in smoke if r.strategy == s] for s in table}
    exact_ok = True
    for strategy, agg in table.items():
        a, b = maes[strategy]
        mean = (a + b) / 2
        sd = math.sqrt(((a - mean) ** 2 + (b - mean) ** 2) / 2)
        exact_ok &= agg.mean_mae == mean and agg.sd == sd and agg.runs == 2
    ok = count_ok and round_trip_ok and exact_ok
    report(9, "sweep mechanics", ok,
           f"replication records {len(records)}, csv round-trip "
           f"{'exact' if round_trip_ok else 'LOSSY'}, hand-computed mean/sd "
           f"{'exact' if exact_ok else 'MISMATCH'}")


@pytest.mark.slow
def test_criterion_10_determinism(tmp_path):
    def csv_without_walltime(records, path):
        write_results_csv(records, path)
        rows = path.read_text().splitlines()
        return [",".join(r.split(",")[:10] + r.split(",")[11:]) for r in rows]

    first = csv_without_walltime(run_experiment(SMOKE, workers=1), tmp_path / "a.csv")
    second = csv_without_walltime(run_experiment(SMOKE, workers=1), tmp_path / "b.csv")
    third = csv_without_walltime(run_experiment(SMOKE, workers=2), tmp_path / "c.csv")
    ok = first == second == third
    report(10, "determinism", ok,
           "bit-identical results.csv (wall_time_s excluded) across reruns and worker counts")
