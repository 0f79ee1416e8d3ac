"""The four benchmark differential equations.

==========  =========================  ==========  ====================
kind        equation                   domain      exact solution
==========  =========================  ==========  ====================
decay       x' + lam*x = 0             [0, 20]     x0 * exp(-lam*t)
oscillator  x'' + omega^2 x = 0        [0, 10]     x0 cos + (v0/om) sin
laplace     u_xx + u_yy = 0            [-1, 1]^2   x^2 - y^2
poisson     u_xx + u_yy = f            [0, 1]^2    exp(x*y)
==========  =========================  ==========  ====================

with f(x, y) = (x^2 + y^2) exp(x*y).  Each problem carries a composite
mean-squared loss: residual over interior points, plus the initial condition
at t = 0 (ODEs) or the prescribed Dirichlet data on the boundary (PDEs).
All loss terms have weight 1, and boundary targets come from the prescribed
boundary formulas, never from the exact solution.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from gridlab import diffengine
from gridlab.jets import Jet2
from gridlab.network import ShallowNet, forward_jet
from gridlab.sampler import (
    Interval,
    Rect,
    boundary_points,
    equidistant,
    generate,
    grid_2d,
    tensor_grid,
)
from gridlab.seeding import derive_subseed

KINDS = ("decay", "oscillator", "laplace", "poisson")

# decay rate is not pinned by the benchmark definition; this default makes
# x(20) = 100 e^-5, visually converged to zero at the domain end
DEFAULT_DECAY_RATE = 0.25


@dataclass(frozen=True)
class ProblemSpec:
    """One benchmark: domain, parameters, epoch budget."""

    kind: str
    domain: Interval | Rect
    default_epochs: int
    lam: float = 0.0       # decay rate
    omega: float = 0.0     # oscillator angular velocity
    x0: float = 0.0        # ODE initial value
    v0: float = 0.0        # oscillator initial velocity

    @property
    def dimension(self) -> int:
        return 1 if isinstance(self.domain, Interval) else 2


def make_problem(kind: str, lam: float = DEFAULT_DECAY_RATE) -> ProblemSpec:
    if kind == "decay":
        if lam <= 0:
            raise ValueError(f"decay rate must be positive, got {lam}")
        return ProblemSpec("decay", Interval(0.0, 20.0), 50_000, lam=lam, x0=100.0)
    if kind == "oscillator":
        return ProblemSpec("oscillator", Interval(0.0, 10.0), 100_000,
                           omega=1.0, x0=1.0, v0=0.0)
    if kind == "laplace":
        return ProblemSpec("laplace", Rect(Interval(-1.0, 1.0), Interval(-1.0, 1.0)), 50_000)
    if kind == "poisson":
        return ProblemSpec("poisson", Rect(Interval(0.0, 1.0), Interval(0.0, 1.0)), 50_000)
    raise ValueError(f"unknown problem kind {kind!r}, expected one of {KINDS}")


def exact_solution(p: ProblemSpec, point):
    """Closed-form solution; accepts scalars, (2,) points, or batches."""
    if p.kind == "decay":
        return p.x0 * np.exp(-p.lam * np.asarray(point, dtype=np.float64))
    if p.kind == "oscillator":
        t = np.asarray(point, dtype=np.float64)
        return p.x0 * np.cos(p.omega * t) + (p.v0 / p.omega) * np.sin(p.omega * t)
    pts = np.asarray(point, dtype=np.float64)
    x, y = pts[..., 0], pts[..., 1]
    if p.kind == "laplace":
        return x * x - y * y
    return np.exp(x * y)


def source_term(p: ProblemSpec, points) -> np.ndarray:
    """Right-hand side f of the PDE at the given (N, 2) points."""
    pts = np.asarray(points, dtype=np.float64)
    if p.kind == "laplace":
        return np.zeros(pts.shape[0])
    if p.kind == "poisson":
        x, y = pts[:, 0], pts[:, 1]
        return (x * x + y * y) * np.exp(x * y)
    raise ValueError(f"{p.kind} has no source term")


def boundary_values(p: ProblemSpec, points) -> np.ndarray:
    """Prescribed Dirichlet data at (M, 2) points lying on the boundary."""
    pts = np.asarray(points, dtype=np.float64)
    x, y = pts[:, 0], pts[:, 1]
    rect = p.domain
    on_vertical = (x == rect.x.a) | (x == rect.x.b)
    on_horizontal = (y == rect.y.a) | (y == rect.y.b)
    if not np.all(on_vertical | on_horizontal):
        raise ValueError("boundary_values: some points are not on the boundary")
    if p.kind == "laplace":
        return np.where(on_vertical, 1.0 - y * y, x * x - 1.0)
    if p.kind == "poisson":
        out = np.empty(pts.shape[0])
        out[:] = np.where(y == 1.0, np.exp(x), 1.0)       # top e^x, bottom 1
        vertical = np.where(x == 1.0, np.exp(y), 1.0)     # right e^y, left 1
        out[on_vertical] = vertical[on_vertical]
        return out
    raise ValueError(f"{p.kind} has no boundary data")


def residual_from_jets(p: ProblemSpec, point, jets: tuple[Jet2, ...]) -> float:
    """Differential operator applied to jets of a candidate solution.

    ``jets[k]`` holds (value, first, second derivative) along input axis k
    at ``point``; zero everywhere iff the candidate solves the equation.
    """
    if p.kind == "decay":
        return jets[0].d1 + p.lam * jets[0].v
    if p.kind == "oscillator":
        return jets[0].d2 + p.omega * p.omega * jets[0].v
    lap = jets[0].d2 + jets[1].d2
    if p.kind == "laplace":
        return lap
    x, y = point
    return lap - (x * x + y * y) * np.exp(x * y)


def residual(p: ProblemSpec, net: ShallowNet, point) -> float:
    """PDE residual of the network at one point."""
    if net.layout.input_dim != p.dimension:
        raise ValueError(
            f"network input_dim {net.layout.input_dim} does not match "
            f"{p.kind} dimension {p.dimension}"
        )
    jets = tuple(forward_jet(net, point, axis) for axis in range(p.dimension))
    return float(residual_from_jets(p, point, jets))


# ---------------------------------------------------------------------------
# training data

@dataclass(frozen=True)
class TrainingData:
    """Points and targets feeding the composite loss.

    ODEs: residual_points (N,), the initial point with its target value (and
    target slope for the oscillator).  PDEs: residual_points (N, 2) plus
    boundary points with their prescribed values; source_values caches the
    right-hand side at the residual points.
    """

    residual_points: np.ndarray
    ic_point: float | None = None
    ic_value: float | None = None
    ic_slope: float | None = None
    bc_points: np.ndarray | None = None
    bc_values: np.ndarray | None = None
    source_values: np.ndarray | None = None


def make_training_data(p: ProblemSpec, strategy: str, size: int, seed: int | None = None,
                       boundary_per_edge: int = 30) -> TrainingData:
    """Assemble a training set; ``size`` is the point count (ODE) or the
    per-axis count (PDE).  Random strategies sub-seed from the run seed."""
    if p.dimension == 1:
        sub = None
        if strategy in ("random", "random_sorted"):
            if seed is None:
                raise ValueError(f"strategy {strategy!r} needs a seed")
            sub = derive_subseed(seed, "points-x")
        pts = generate(strategy, p.domain, size, sub).points
        return TrainingData(
            residual_points=pts,
            ic_point=0.0,
            ic_value=p.x0,
            ic_slope=p.v0 if p.kind == "oscillator" else None,
        )
    grid = grid_2d(strategy, p.domain, size, size, seed)
    bc_pts = boundary_points(p.domain, boundary_per_edge, strategy, seed)
    return TrainingData(
        residual_points=grid.points,
        bc_points=bc_pts,
        bc_values=boundary_values(p, bc_pts),
        source_values=source_term(p, grid.points),
    )


def loss_terms(p: ProblemSpec, net: ShallowNet, data: TrainingData):
    """(residual, IC, BC) mean-squared loss terms; absent terms are 0."""
    lr, lic, lbc, _ = diffengine.loss_terms_and_gradient(p, net, data)
    return lr, lic, lbc


def total_loss(p: ProblemSpec, net: ShallowNet, data: TrainingData) -> float:
    """Composite loss L_R + L_IC + L_BC, summed in that order."""
    lr, lic, lbc, _ = diffengine.loss_terms_and_gradient(p, net, data)
    return (lr + lic) + lbc


# ---------------------------------------------------------------------------
# experiment defaults

@dataclass(frozen=True)
class ProblemDefaults:
    epochs: int
    train_sizes: tuple[int, ...]
    eval_points: int | tuple[int, int]
    boundary_per_edge: int = 30


def default_config(kind: str) -> ProblemDefaults:
    """Epoch budget, training sizes, and evaluation grid per benchmark."""
    if kind in ("decay", "oscillator"):
        return ProblemDefaults(
            epochs=100_000 if kind == "oscillator" else 50_000,
            train_sizes=(100, 200, 400),
            eval_points=500,
        )
    if kind in ("laplace", "poisson"):
        return ProblemDefaults(
            epochs=50_000,
            train_sizes=(20, 40, 80),
            eval_points=(100, 100),
        )
    raise ValueError(f"unknown problem kind {kind!r}")


def default_eval_grid(p: ProblemSpec) -> np.ndarray:
    """Equidistant evaluation grid: 500 points (ODE) or 100x100 closed (PDE)."""
    cfg = default_config(p.kind)
    if p.dimension == 1:
        return equidistant(p.domain, cfg.eval_points).points
    nx, ny = cfg.eval_points
    return tensor_grid(equidistant(p.domain.x, nx), equidistant(p.domain.y, ny)).points
