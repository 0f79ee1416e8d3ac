"""Training-point generation.

Five 1D strategies over an interval [a, b]:

* ``equidistant``   -- evenly spaced, both endpoints included
* ``random``        -- i.i.d. uniform draws, kept in draw order
* ``random_sorted`` -- the same draws, sorted ascending
* ``chebyshev``     -- cos((2i+1)pi/(2n)) nodes, endpoints never included,
                       kept in their natural (decreasing) order
* ``sine_based``    -- equal arc-length steps along one full sine wave of
                       amplitude (b-a)/2; densest where the wave is flattest
                       (both endpoints and the midpoint)

2D grids are tensor products of per-axis 1D sets; boundary points apply a 1D
strategy along each rectangle edge independently.

Point order is meaningful (random vs random_sorted differ only by order), so
no function reorders its output silently.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from gridlab.seeding import derive_subseed, make_rng

STRATEGIES = ("equidistant", "random", "random_sorted", "chebyshev", "sine_based")


@dataclass(frozen=True)
class Interval:
    a: float
    b: float

    def __post_init__(self):
        if not self.a < self.b:
            raise ValueError(f"interval needs a < b, got [{self.a}, {self.b}]")

    @property
    def width(self) -> float:
        return self.b - self.a


@dataclass(frozen=True)
class Rect:
    x: Interval
    y: Interval


@dataclass(frozen=True)
class PointSet1D:
    points: np.ndarray
    strategy: str
    seed: int | None = None

    def __len__(self):
        return self.points.shape[0]


@dataclass(frozen=True)
class PointSet2D:
    points: np.ndarray  # (nx*ny, 2), row-major in x
    nx: int
    ny: int
    strategy: str
    seed: tuple[int, int] | None = None

    def __len__(self):
        return self.points.shape[0]


def equidistant(iv: Interval, n: int) -> PointSet1D:
    """n evenly spaced points t_i = a + i*(b-a)/(n-1), endpoints included."""
    if n < 2:
        raise ValueError(f"equidistant needs n >= 2, got {n}")
    return PointSet1D(np.linspace(iv.a, iv.b, n), "equidistant")


def random_uniform(iv: Interval, n: int, seed: int) -> PointSet1D:
    """n i.i.d. uniform draws on [a, b], kept in order of appearance."""
    if n < 1:
        raise ValueError(f"random needs n >= 1, got {n}")
    return PointSet1D(make_rng(seed).uniform(iv.a, iv.b, n), "random", seed)


def random_sorted(iv: Interval, n: int, seed: int) -> PointSet1D:
    """The random draws for this seed, sorted ascending."""
    draws = random_uniform(iv, n, seed)
    return PointSet1D(np.sort(draws.points), "random_sorted", seed)


def chebyshev(iv: Interval, n: int, sort: bool = False) -> PointSet1D:
    """Chebyshev nodes (a+b)/2 + (b-a)/2 * cos((2i+1)pi/(2n)), i = 0..n-1.

    The natural index order is decreasing in t; endpoints are never hit and
    points cluster toward both boundaries.
    """
    if n < 1:
        raise ValueError(f"chebyshev needs n >= 1, got {n}")
    i = np.arange(n)
    pts = 0.5 * (iv.a + iv.b) + 0.5 * (iv.b - iv.a) * np.cos((2 * i + 1) * np.pi / (2 * n))
    if sort:
        pts = np.sort(pts)
    return PointSet1D(pts, "chebyshev")


# ---------------------------------------------------------------------------
# sine-based strategy: equal steps in arc length along a full sine period

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(20)
_N_PANELS = 64  # 20-point Gauss-Legendre per panel resolves the integrand
                # to machine precision, far below the 1e-12 contract


def _sine_speed(iv: Interval, s):
    """|curve speed| sqrt(1 + pi^2 cos^2(2pi (s-a)/(b-a))) of the sine wave."""
    c = np.cos(2.0 * np.pi * (s - iv.a) / iv.width)
    return np.sqrt(1.0 + np.pi * np.pi * c * c)


def _gl_panel(iv: Interval, lo: float, hi: float) -> float:
    mid = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    return half * float(np.dot(_GL_WEIGHTS, _sine_speed(iv, mid + half * _GL_NODES)))


def _cumulative_panels(iv: Interval):
    edges = np.linspace(iv.a, iv.b, _N_PANELS + 1)
    cum = np.zeros(_N_PANELS + 1)
    for k in range(_N_PANELS):
        cum[k + 1] = cum[k] + _gl_panel(iv, edges[k], edges[k + 1])
    return edges, cum


def arc_length_sine(iv: Interval) -> float:
    """Arc length of one full sine wave of amplitude (b-a)/2 over [a, b]."""
    return _cumulative_panels(iv)[1][-1]


def _invert_arclength(iv: Interval, edges, cum, target: float) -> float:
    """Solve cumulative-arc-length(t) = target by bisection + Newton."""
    k = int(np.searchsorted(cum, target, side="right") - 1)
    k = min(max(k, 0), _N_PANELS - 1)
    lo, hi = edges[k], edges[k + 1]
    base = cum[k]
    t = 0.5 * (lo + hi)
    tol = 1e-13 * iv.width
    for _ in range(200):
        f = base + _gl_panel(iv, edges[k], t) - target
        if f > 0.0:
            hi = t
        else:
            lo = t
        step = f / _sine_speed(iv, t)
        t_new = t - step
        if not lo < t_new < hi:  # Newton left the bracket; bisect instead
            t_new = 0.5 * (lo + hi)
        done = abs(t_new - t) < tol
        t = t_new
        if done:
            break
    return t


def sine_based(iv: Interval, n: int) -> PointSet1D:
    """Points at arc lengths l_i = i/(n-1) * L_arc along the sine wave."""
    if n < 2:
        raise ValueError(f"sine_based needs n >= 2, got {n}")
    edges, cum = _cumulative_panels(iv)
    total = cum[-1]
    pts = np.empty(n)
    pts[0] = iv.a
    pts[n - 1] = iv.b
    for i in range(1, n - 1):
        pts[i] = _invert_arclength(iv, edges, cum, total * i / (n - 1))
    return PointSet1D(pts, "sine_based")


# ---------------------------------------------------------------------------
# dispatch, 2D grids, boundaries

def generate(strategy: str, iv: Interval, n: int, seed: int | None = None) -> PointSet1D:
    """Generate a 1D point set by strategy name."""
    if strategy == "equidistant":
        return equidistant(iv, n)
    if strategy == "random":
        _require_seed(strategy, seed)
        return random_uniform(iv, n, seed)
    if strategy == "random_sorted":
        _require_seed(strategy, seed)
        return random_sorted(iv, n, seed)
    if strategy == "chebyshev":
        return chebyshev(iv, n)
    if strategy == "sine_based":
        return sine_based(iv, n)
    raise ValueError(f"unknown strategy {strategy!r}, expected one of {STRATEGIES}")


def _require_seed(strategy, seed):
    if seed is None:
        raise ValueError(f"strategy {strategy!r} needs a seed")


def tensor_grid(xs: PointSet1D, ys: PointSet1D) -> PointSet2D:
    """Row-major Cartesian product in the given axis orders."""
    if len(xs) == 0 or len(ys) == 0:
        raise ValueError("tensor_grid needs nonempty axis sets")
    nx, ny = len(xs), len(ys)
    pts = np.empty((nx * ny, 2))
    pts[:, 0] = np.repeat(xs.points, ny)
    pts[:, 1] = np.tile(ys.points, nx)
    seeds = None
    if xs.seed is not None or ys.seed is not None:
        seeds = (xs.seed, ys.seed)
    return PointSet2D(pts, nx, ny, xs.strategy, seeds)


def grid_2d(strategy: str, rect: Rect, nx: int, ny: int, seed: int | None = None) -> PointSet2D:
    """Tensor grid with each axis sampled independently by the 1D strategy."""
    seed_x = seed_y = None
    if strategy in ("random", "random_sorted"):
        _require_seed(strategy, seed)
        seed_x = derive_subseed(seed, "points-x")
        seed_y = derive_subseed(seed, "points-y")
    xs = generate(strategy, rect.x, nx, seed_x)
    ys = generate(strategy, rect.y, ny, seed_y)
    return tensor_grid(xs, ys)


def boundary_points(rect: Rect, n_per_edge: int, strategy: str,
                    seed: int | None = None) -> np.ndarray:
    """Ordered (4*n_per_edge, 2) points on the rectangle boundary.

    The 1D strategy runs along each edge independently, sub-seeded per edge
    for random strategies.  Edge order: bottom, top, left, right.
    """
    edge_seeds = [None] * 4
    if strategy in ("random", "random_sorted"):
        _require_seed(strategy, seed)
        edge_seeds = [derive_subseed(seed, f"boundary-e{k}") for k in range(4)]
    bottom = generate(strategy, rect.x, n_per_edge, edge_seeds[0]).points
    top = generate(strategy, rect.x, n_per_edge, edge_seeds[1]).points
    left = generate(strategy, rect.y, n_per_edge, edge_seeds[2]).points
    right = generate(strategy, rect.y, n_per_edge, edge_seeds[3]).points
    out = np.empty((4 * n_per_edge, 2))
    n = n_per_edge
    out[0:n, 0] = bottom
    out[0:n, 1] = rect.y.a
    out[n:2 * n, 0] = top
    out[n:2 * n, 1] = rect.y.b
    out[2 * n:3 * n, 0] = rect.x.a
    out[2 * n:3 * n, 1] = left
    out[3 * n:4 * n, 0] = rect.x.b
    out[3 * n:4 * n, 1] = right
    return out


def write_pointset_csv(pointset, fh) -> None:
    """Dump a PointSet as ``index,x[,y]`` rows for external inspection."""
    pts = pointset.points
    if pts.ndim == 1:
        fh.write("index,x\n")
        for i, x in enumerate(pts):
            fh.write(f"{i},{x:.17g}\n")
    else:
        fh.write("index,x,y\n")
        for i, (x, y) in enumerate(pts):
            fh.write(f"{i},{x:.17g},{y:.17g}\n")
