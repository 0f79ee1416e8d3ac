import numpy as np
import pytest

from gridlab.network import NetLayout, ShallowNet, forward, init_glorot
from gridlab.problems import total_loss


@pytest.fixture
def rng():
    return np.random.default_rng(2024)


def random_net(layout: NetLayout, seed: int, spread: float = 0.4) -> ShallowNet:
    """Glorot net perturbed so biases and every loss term are exercised."""
    gen = np.random.default_rng(seed)
    base = init_glorot(layout, seed)
    return ShallowNet(layout, base.theta + gen.normal(0.0, spread, layout.param_count))


def fd_loss_gradient(problem, net, data, h_scale=1e-4, richardson=False):
    """Central finite differences of the total loss, component by component.

    With ``richardson=True`` the h and h/2 central differences are
    extrapolated, removing the h^2 truncation term that otherwise drowns
    gradient components several orders below the loss scale.
    """
    theta = net.theta

    def central(i, h):
        plus, minus = theta.copy(), theta.copy()
        plus[i] += h
        minus[i] -= h
        return (total_loss(problem, net.with_theta(plus), data)
                - total_loss(problem, net.with_theta(minus), data)) / (2.0 * h)

    grad = np.zeros_like(theta)
    for i in range(theta.size):
        h = h_scale * max(1.0, abs(theta[i]))
        if richardson:
            grad[i] = (4.0 * central(i, h / 2.0) - central(i, h)) / 3.0
        else:
            grad[i] = central(i, h)
    return grad


def fd_jet_d1(net, x, axis, h=1e-5):
    xp, xm = np.array(x, dtype=float), np.array(x, dtype=float)
    xp[axis] += h
    xm[axis] -= h
    return (forward(net, xp) - forward(net, xm)) / (2.0 * h)


def fd_jet_d2(net, x, axis, h=1e-2):
    """Richardson-extrapolated central second difference.

    A plain second difference at h=1e-5 has a rounding floor near
    2e-6 * |f|, too coarse to certify 1e-6 relative accuracy; the
    extrapolated stencil reaches ~1e-7.
    """
    def second(hh):
        xp, xm = np.array(x, dtype=float), np.array(x, dtype=float)
        xp[axis] += hh
        xm[axis] -= hh
        return (forward(net, xp) - 2.0 * forward(net, x) + forward(net, xm)) / (hh * hh)

    return (4.0 * second(h / 2.0) - second(h)) / 3.0
