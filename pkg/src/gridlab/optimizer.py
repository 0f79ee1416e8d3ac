"""Full-batch Adam training loop.

Every epoch computes the composite loss and its gradient over the entire
training set, then takes one Adam step:

    m_k = b1 m_{k-1} + (1 - b1) g_k        v_k = b2 v_{k-1} + (1 - b2) g_k^2
    m^ = m_k / (1 - b1^k)                  v^ = v_k / (1 - b2^k)
    theta_k = theta_{k-1} - alpha * m^ / (sqrt(v^) + eps)

with k counted from 1, so the first step uses 1 - b^1.  Defaults
alpha=1e-3, b1=0.9, b2=0.999, eps=1e-8.  A non-finite loss or gradient
aborts the run with the epoch index.
"""

from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass, field

import numpy as np

from gridlab.diffengine import NonFiniteError, loss_gradient
from gridlab.network import ShallowNet
from gridlab.problems import ProblemSpec, TrainingData

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class AdamHyper:
    alpha: float = 1e-3
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8


@dataclass(frozen=True)
class AdamState:
    m: np.ndarray
    v: np.ndarray
    k: int = 0
    hyper: AdamHyper = field(default_factory=AdamHyper)


def adam_init(n_params: int, hyper: AdamHyper | None = None) -> AdamState:
    """Zero-moment state for a parameter vector of length n_params."""
    return AdamState(np.zeros(n_params), np.zeros(n_params), 0, hyper or AdamHyper())


def adam_step(state: AdamState, theta: np.ndarray, grad: np.ndarray):
    """One Adam update; returns (new_state, new_theta)."""
    if theta.shape != grad.shape or theta.shape != state.m.shape:
        raise ValueError(
            f"shape mismatch: theta {theta.shape}, grad {grad.shape}, m {state.m.shape}"
        )
    if not np.all(np.isfinite(grad)):
        raise NonFiniteError("non-finite gradient in adam_step")
    hp = state.hyper
    k = state.k + 1
    m = hp.beta1 * state.m + (1.0 - hp.beta1) * grad
    v = hp.beta2 * state.v + (1.0 - hp.beta2) * grad * grad
    m_hat = m / (1.0 - hp.beta1 ** k)
    v_hat = v / (1.0 - hp.beta2 ** k)
    theta_new = theta - hp.alpha * m_hat / (np.sqrt(v_hat) + hp.eps)
    return AdamState(m, v, k, hp), theta_new


@dataclass(frozen=True)
class TrainReport:
    final_theta: np.ndarray
    loss_history: np.ndarray  # one entry per epoch, recorded before the step
    epochs_run: int
    wall_time_seconds: float

    @property
    def final_loss(self) -> float:
        return float(self.loss_history[-1])


def train(p: ProblemSpec, net0: ShallowNet, data: TrainingData, epochs: int,
          log_every: int = 100) -> TrainReport:
    """Run ``epochs`` full-batch Adam steps from net0.

    Deterministic for identical inputs (wall time aside).  ``log_every``
    controls debug-level progress logging only.
    """
    if epochs < 1:
        raise ValueError(f"epochs must be >= 1, got {epochs}")
    theta = net0.theta
    state = adam_init(theta.shape[0])
    history = np.empty(epochs)
    started = time.perf_counter()
    for epoch in range(epochs):
        loss, grad = loss_gradient(p, net0.with_theta(theta), data)
        history[epoch] = loss
        if not math.isfinite(loss):
            raise NonFiniteError(f"non-finite loss at epoch {epoch}", epoch=epoch)
        try:
            state, theta = adam_step(state, theta, grad)
        except NonFiniteError as err:
            raise NonFiniteError(f"non-finite gradient at epoch {epoch}", epoch=epoch) from err
        if log_every and epoch % log_every == 0:
            log.debug("epoch %d loss %.6e", epoch, loss)
    elapsed = time.perf_counter() - started
    return TrainReport(theta, history, epochs, elapsed)
