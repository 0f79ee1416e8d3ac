"""Shallow feed-forward networks.

One or two tanh hidden layers, a linear scalar output, and a flat parameter
vector ``theta`` in a fixed canonical order:

    for each hidden layer:  input weights row-major (H x fan_in), then the
                            H bias weights;
    output layer:           the H output weights, then the output bias.

Weight initialisation is Glorot-uniform with zero biases, driven by a seeded
generator so identical (layout, seed) pairs give bit-identical networks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from gridlab.jets import Jet2
from gridlab.seeding import make_rng


@dataclass(frozen=True)
class NetLayout:
    """Network shape: input dimension and 1 or 2 hidden widths."""

    input_dim: int
    hidden_widths: tuple[int, ...]

    def __post_init__(self):
        if self.input_dim not in (1, 2):
            raise ValueError(f"input_dim must be 1 or 2, got {self.input_dim}")
        widths = tuple(int(w) for w in self.hidden_widths)
        object.__setattr__(self, "hidden_widths", widths)
        if len(widths) not in (1, 2) or any(w < 1 for w in widths):
            raise ValueError(f"hidden_widths must be 1 or 2 positive ints, got {widths}")

    @property
    def depth(self) -> int:
        return len(self.hidden_widths)

    @property
    def param_count(self) -> int:
        count = 0
        fan_in = self.input_dim
        for width in self.hidden_widths:
            count += (fan_in + 1) * width
            fan_in = width
        return count + fan_in + 1  # linear output neuron


@dataclass(frozen=True)
class ShallowNet:
    """Immutable network: layout plus flat parameter vector."""

    layout: NetLayout
    theta: np.ndarray = field(repr=False)

    def __post_init__(self):
        theta = np.ascontiguousarray(self.theta, dtype=np.float64)
        if theta.shape != (self.layout.param_count,):
            raise ValueError(
                f"theta has {theta.shape[0] if theta.ndim == 1 else 'bad'} "
                f"components, layout needs {self.layout.param_count}"
            )
        object.__setattr__(self, "theta", theta)

    def with_theta(self, theta: np.ndarray) -> "ShallowNet":
        return ShallowNet(self.layout, theta)


def split_params(layout: NetLayout, theta: np.ndarray):
    """Views into theta: ([(W, b) per hidden layer], out_weights, out_bias)."""
    layers = []
    offset = 0
    fan_in = layout.input_dim
    for width in layout.hidden_widths:
        w = theta[offset:offset + width * fan_in].reshape(width, fan_in)
        offset += width * fan_in
        b = theta[offset:offset + width]
        offset += width
        layers.append((w, b))
        fan_in = width
    out_w = theta[offset:offset + fan_in]
    out_b = float(theta[offset + fan_in])
    return layers, out_w, out_b


def init_glorot(layout: NetLayout, seed: int) -> ShallowNet:
    """Glorot-uniform weights on [-sqrt(6/(fan_in+fan_out)), +], zero biases.

    Weight matrices are drawn layer by layer in row-major order from a
    generator seeded with ``seed``; biases are never drawn.
    """
    rng = make_rng(seed)
    theta = np.zeros(layout.param_count)
    offset = 0
    fan_in = layout.input_dim
    for width in layout.hidden_widths:
        limit = math.sqrt(6.0 / (fan_in + width))
        theta[offset:offset + width * fan_in] = rng.uniform(-limit, limit, width * fan_in)
        offset += width * fan_in + width  # skip biases, already zero
        fan_in = width
    limit = math.sqrt(6.0 / (fan_in + 1))
    theta[offset:offset + fan_in] = rng.uniform(-limit, limit, fan_in)
    return ShallowNet(layout, theta)


def _as_batch(layout: NetLayout, x) -> np.ndarray:
    pts = np.asarray(x, dtype=np.float64)
    if pts.ndim == 0:
        pts = pts.reshape(1, 1)
    elif pts.ndim == 1:
        # one point of matching dimension, or a batch of scalar inputs
        if pts.shape[0] == layout.input_dim:
            pts = pts.reshape(1, layout.input_dim)
        else:
            pts = pts.reshape(-1, 1)
    if pts.ndim != 2 or pts.shape[1] != layout.input_dim:
        raise ValueError(
            f"input shape {np.shape(x)} does not fit input_dim {layout.input_dim}"
        )
    return pts


def forward_many(net: ShallowNet, points: np.ndarray) -> np.ndarray:
    """Network output for a (N, input_dim) batch of points."""
    layers, out_w, out_b = split_params(net.layout, net.theta)
    h = _as_batch(net.layout, points)
    for w, b in layers:
        h = np.tanh(h @ w.T + b)
    return h @ out_w + out_b


def forward(net: ShallowNet, x) -> float:
    """Network output at a single point."""
    return float(forward_many(net, x)[0])


def forward_jet_many(net: ShallowNet, points: np.ndarray, axis: int = 0):
    """Batched (value, d1, d2) of the output along one input axis.

    The value component repeats the exact operation sequence of
    ``forward_many``, so both agree bit for bit.
    """
    layout = net.layout
    if not 0 <= axis < layout.input_dim:
        raise ValueError(f"axis {axis} out of range for input_dim {layout.input_dim}")
    layers, out_w, out_b = split_params(layout, net.theta)
    h = _as_batch(layout, points)
    # input jet: unit first derivative along the active axis
    hp = np.zeros_like(h)
    hp[:, axis] = 1.0
    hq = np.zeros_like(h)
    for w, b in layers:
        a = h @ w.T + b
        ap = hp @ w.T
        aq = hq @ w.T
        h = np.tanh(a)
        s = 1.0 - h * h
        hp = s * ap
        hq = s * aq - 2.0 * h * s * ap * ap
    return h @ out_w + out_b, hp @ out_w, hq @ out_w


def forward_jet(net: ShallowNet, x, axis: int = 0) -> Jet2:
    """(value, first, second derivative) along ``axis`` at a single point."""
    v, d1, d2 = forward_jet_many(net, x, axis)
    return Jet2(float(v[0]), float(d1[0]), float(d2[0]))


def save_checkpoint(net: ShallowNet, path) -> None:
    """Plain-text checkpoint: layout line, then one component per line."""
    widths = ",".join(str(w) for w in net.layout.hidden_widths)
    with open(path, "w", encoding="ascii") as fh:
        fh.write(f"{net.layout.input_dim};{widths}\n")
        for value in net.theta:
            fh.write(f"{value:.16e}\n")


def load_checkpoint(path) -> ShallowNet:
    with open(path, encoding="ascii") as fh:
        header = fh.readline().strip()
        dim_part, widths_part = header.split(";")
        layout = NetLayout(int(dim_part), tuple(int(w) for w in widths_part.split(",")))
        theta = np.array([float(line) for line in fh if line.strip()])
    return ShallowNet(layout, theta)
