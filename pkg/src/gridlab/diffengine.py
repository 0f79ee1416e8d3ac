"""Derivative engine: exact parameter gradients of the composite loss.

Input derivatives (u_t, u_tt, u_xx, u_yy) come from second-order forward
jets pushed through the network; the parameter gradient comes from reverse
accumulation over that jet computation, so residual terms containing
derivatives stay differentiable in theta.  The arithmetic lives in the
kernel backends (see ``gridlab.backend``); this module validates, prepares
the point arrays, and dispatches.

The loss value returned by ``loss_gradient`` is computed by the same kernel
call as ``problems.total_loss``, so the two agree bit for bit.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np

from gridlab import backend
from gridlab.network import ShallowNet

if TYPE_CHECKING:
    from gridlab.problems import ProblemSpec, TrainingData


class NonFiniteError(RuntimeError):
    """Loss or gradient left the finite range; the run must abort."""

    def __init__(self, message: str, epoch: int | None = None):
        super().__init__(message)
        self.epoch = epoch


def _layer_sizes(net: ShallowNet) -> tuple[int, int]:
    widths = net.layout.hidden_widths
    return widths[0], widths[1] if len(widths) == 2 else 0


def loss_terms_and_gradient(p: "ProblemSpec", net: ShallowNet, data: "TrainingData"):
    """(L_R, L_IC, L_BC, grad) for the problem's composite loss."""
    if net.layout.input_dim != p.dimension:
        raise ValueError(
            f"network input_dim {net.layout.input_dim} does not match "
            f"{p.kind} dimension {p.dimension}"
        )
    pts = np.ascontiguousarray(data.residual_points, dtype=np.float64)
    if pts.shape[0] == 0:
        raise ValueError("residual point set is empty")
    h1, h2 = _layer_sizes(net)
    kern = backend.kernels()

    if p.dimension == 1:
        if data.ic_point is None or data.ic_value is None:
            raise ValueError(f"{p.kind} training data needs the initial point")
        order2 = p.kind == "oscillator"
        coef = p.omega * p.omega if order2 else p.lam
        v0 = data.ic_slope if data.ic_slope is not None else 0.0
        lr, lic, grad = kern.ode_loss_grad(
            net.theta, h1, h2, pts, order2, coef,
            float(data.ic_point), float(data.ic_value), float(v0),
        )
        return lr, lic, 0.0, grad

    if data.bc_points is None or data.bc_values is None:
        raise ValueError(f"{p.kind} training data needs boundary points and values")
    if data.bc_points.shape[0] == 0:
        raise ValueError("boundary point set is empty")
    fvals = data.source_values
    if fvals is None:
        from gridlab.problems import source_term
        fvals = source_term(p, pts)
    lr, lbc, grad = kern.pde_loss_grad(
        net.theta, h1, h2,
        np.ascontiguousarray(pts[:, 0]), np.ascontiguousarray(pts[:, 1]),
        np.ascontiguousarray(fvals, dtype=np.float64),
        np.ascontiguousarray(data.bc_points[:, 0], dtype=np.float64),
        np.ascontiguousarray(data.bc_points[:, 1], dtype=np.float64),
        np.ascontiguousarray(data.bc_values, dtype=np.float64),
    )
    return lr, 0.0, lbc, grad


def loss_gradient(p: "ProblemSpec", net: ShallowNet, data: "TrainingData"):
    """Total loss and its gradient with respect to theta."""
    lr, lic, lbc, grad = loss_terms_and_gradient(p, net, data)
    return (lr + lic) + lbc, grad
