"""Pure-numpy loss/gradient kernels (fallback backend).

Vectorised over the point batch.  The jet chain rule through a tanh layer,
with A the pre-activation jet and H = tanh(A):

    H.v  = tanh(A.v),  S = 1 - H.v**2
    H.d1 = S * A.d1
    H.d2 = S * A.d2 - 2 * H.v * S * A.d1**2

and the matching adjoint rules (bar = dLoss/d component):

    A.d2_bar = S * H.d2_bar
    A.d1_bar = S * H.d1_bar - 4 H S A.d1 * H.d2_bar
    A.v_bar  = S * H.v_bar - 2 H S A.d1 * H.d1_bar
               - (2 H S A.d2 + 2 S (S - 2 H^2) A.d1**2) * H.d2_bar

Ordered sums use ``np.cumsum`` (a sequential left-to-right scan), matching
the summation order of the numba backend.
"""

import numpy as np


def _views(theta, h1, h2, d):
    w1 = theta[: h1 * d].reshape(h1, d)
    b1 = theta[h1 * d: h1 * d + h1]
    off = h1 * d + h1
    if h2 == 0:
        return w1, b1, None, None, theta[off: off + h1], theta[off + h1]
    w2 = theta[off: off + h2 * h1].reshape(h2, h1)
    b2 = theta[off + h2 * h1: off + h2 * h1 + h2]
    off += h2 * h1 + h2
    return w1, b1, w2, b2, theta[off: off + h2], theta[off + h2]


def _ordered_sum(values):
    return float(np.cumsum(values)[-1])


def _forward(theta, h1, h2, d, x, axes):
    """Jet forward pass along each axis in ``axes``; returns output jets
    plus the cache needed by ``_backward``."""
    w1, b1, w2, b2, wo, bo = _views(theta, h1, h2, d)
    a1 = x @ w1.T + b1
    t1 = np.tanh(a1)
    s1 = 1.0 - t1 * t1
    p1 = [s1 * w1[:, k] for k in axes]
    q1 = [-2.0 * t1 * s1 * w1[:, k] * w1[:, k] for k in axes]
    if h2 == 0:
        u = t1 @ wo + bo
        up = [p @ wo for p in p1]
        uq = [q @ wo for q in q1]
        cache = (x, w1, wo, t1, s1, p1, q1, None)
        return cache, u, up, uq
    cp = [p @ w2.T for p in p1]
    cq = [q @ w2.T for q in q1]
    a2 = t1 @ w2.T + b2
    t2 = np.tanh(a2)
    s2 = 1.0 - t2 * t2
    p2 = [s2 * cp[k] for k in range(len(axes))]
    q2 = [s2 * cq[k] - 2.0 * t2 * s2 * cp[k] * cp[k] for k in range(len(axes))]
    u = t2 @ wo + bo
    up = [p @ wo for p in p2]
    uq = [q @ wo for q in q2]
    cache = (x, w1, wo, t1, s1, p1, q1, (w2, t2, s2, cp, cq, p2, q2))
    return cache, u, up, uq


def _backward(theta, h1, h2, d, axes, cache, gu, gup, guq):
    """Adjoint pass: gradient of sum(gu*u + gup[k]*up[k] + guq[k]*uq[k])."""
    x, w1, wo, t1, s1, p1, q1, second = cache
    grad = np.zeros(theta.shape[0])
    gw1, gb1, gw2, gb2, gwo, _ = _views(grad, h1, h2, d)
    off_bo = grad.shape[0] - 1

    if second is None:
        hb = gu[:, None] * wo
        hbp = [gp[:, None] * wo for gp in gup]
        hbq = [gq[:, None] * wo for gq in guq]
        gwo_acc = t1.T @ gu
        for k in range(len(axes)):
            gwo_acc = gwo_acc + p1[k].T @ gup[k] + q1[k].T @ guq[k]
        gwo[:] = gwo_acc
        grad[off_bo] = np.sum(gu)
        av, aps = _tanh_adjoint(t1, s1, w1, axes, hb, hbp, hbq)
        gw1[:] = av.T @ x
        for k, axis in enumerate(axes):
            gw1[:, axis] += aps[k].sum(axis=0)
        gb1[:] = av.sum(axis=0)
        return grad

    w2, t2, s2, cp, cq, p2, q2 = second
    hb = gu[:, None] * wo
    hbp = [gp[:, None] * wo for gp in gup]
    hbq = [gq[:, None] * wo for gq in guq]
    gwo_acc = t2.T @ gu
    for k in range(len(axes)):
        gwo_acc = gwo_acc + p2[k].T @ gup[k] + q2[k].T @ guq[k]
    gwo[:] = gwo_acc
    grad[off_bo] = np.sum(gu)

    av2, ap2, aq2 = _tanh_adjoint_full(t2, s2, cp, cq, axes, hb, hbp, hbq)
    gw2_acc = av2.T @ t1
    for k in range(len(axes)):
        gw2_acc = gw2_acc + ap2[k].T @ p1[k] + aq2[k].T @ q1[k]
    gw2[:] = gw2_acc
    gb2[:] = av2.sum(axis=0)

    kb = av2 @ w2
    kbp = [ap @ w2 for ap in ap2]
    kbq = [aq @ w2 for aq in aq2]
    av1, aps = _tanh_adjoint(t1, s1, w1, axes, kb, kbp, kbq)
    gw1[:] = av1.T @ x
    for k, axis in enumerate(axes):
        gw1[:, axis] += aps[k].sum(axis=0)
    gb1[:] = av1.sum(axis=0)
    return grad


def _tanh_adjoint(t, s, w1, axes, hb, hbp, hbq):
    """Adjoints through a first-layer tanh whose jet slopes are the input
    weights (A.d1 = w1[:, axis], A.d2 = 0)."""
    av = hb * s
    aps = []
    for k, axis in enumerate(axes):
        wk = w1[:, axis]
        av = av - 2.0 * t * s * wk * hbp[k] - 2.0 * s * (s - 2.0 * t * t) * wk * wk * hbq[k]
        aps.append(hbp[k] * s - 4.0 * t * s * wk * hbq[k])
    return av, aps


def _tanh_adjoint_full(t, s, cp, cq, axes, hb, hbp, hbq):
    """Adjoints through a tanh layer with general pre-activation jets."""
    av = hb * s
    ap, aq = [], []
    for k in range(len(axes)):
        av = av - 2.0 * t * s * cp[k] * hbp[k] \
             - (2.0 * t * s * cq[k] + 2.0 * s * (s - 2.0 * t * t) * cp[k] * cp[k]) * hbq[k]
        ap.append(hbp[k] * s - 4.0 * t * s * cp[k] * hbq[k])
        aq.append(hbq[k] * s)
    return av, ap, aq


def _value_backward(theta, h1, h2, d, cache, gu):
    """Value-only adjoint pass (standard MLP backprop)."""
    x, w1, wo, t1, s1, _, _, second = cache
    grad = np.zeros(theta.shape[0])
    gw1, gb1, gw2, gb2, gwo, _ = _views(grad, h1, h2, d)
    off_bo = grad.shape[0] - 1
    if second is None:
        gwo[:] = t1.T @ gu
        grad[off_bo] = np.sum(gu)
        av = gu[:, None] * wo * s1
        gw1[:] = av.T @ x
        gb1[:] = av.sum(axis=0)
        return grad
    w2, t2, s2, _, _, _, _ = second
    gwo[:] = t2.T @ gu
    grad[off_bo] = np.sum(gu)
    av2 = gu[:, None] * wo * s2
    gw2[:] = av2.T @ t1
    gb2[:] = av2.sum(axis=0)
    av1 = (av2 @ w2) * s1
    gw1[:] = av1.T @ x
    gb1[:] = av1.sum(axis=0)
    return grad


def ode_loss_grad(theta, h1, h2, t, order2, coef, t0, x0, v0):
    n = t.shape[0]
    x = t[:, None]
    cache, u, up, uq = _forward(theta, h1, h2, 1, x, (0,))
    r = (uq[0] if order2 else up[0]) + coef * u
    lr = _ordered_sum(r * r) / n
    c = (2.0 / n) * r
    zero = np.zeros(n)
    if order2:
        grad = _backward(theta, h1, h2, 1, (0,), cache, coef * c, [zero], [c])
    else:
        grad = _backward(theta, h1, h2, 1, (0,), cache, coef * c, [c], [zero])

    x_ic = np.array([[t0]])
    cache0, u0, up0, _ = _forward(theta, h1, h2, 1, x_ic, (0,))
    e = u0[0] - x0
    lic = e * e
    gu0 = np.array([2.0 * e])
    if order2:
        ep = up0[0][0] - v0
        lic = lic + ep * ep
        gup0 = np.array([2.0 * ep])
    else:
        gup0 = np.array([0.0])
    grad += _backward(theta, h1, h2, 1, (0,), cache0, gu0, [gup0], [np.array([0.0])])
    return lr, float(lic), grad


def pde_loss_grad(theta, h1, h2, xi, yi, fvals, xb, yb, gvals):
    n = xi.shape[0]
    m = xb.shape[0]
    x = np.stack([xi, yi], axis=1)
    cache, u, up, uq = _forward(theta, h1, h2, 2, x, (0, 1))
    r = uq[0] + uq[1] - fvals
    lr = _ordered_sum(r * r) / n
    c = (2.0 / n) * r
    zero = np.zeros(n)
    grad = _backward(theta, h1, h2, 2, (0, 1), cache, zero, [zero, zero], [c, c])

    xbpts = np.stack([xb, yb], axis=1)
    cache_b, ub, _, _ = _forward(theta, h1, h2, 2, xbpts, ())
    e = ub - gvals
    lbc = _ordered_sum(e * e) / m
    grad += _value_backward(theta, h1, h2, 2, cache_b, (2.0 / m) * e)
    return lr, lbc, grad
