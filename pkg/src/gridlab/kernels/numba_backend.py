"""Numba-compiled loss/gradient kernels (default backend).

Same math as ``numpy_backend`` written as scalar loops: one pass per point
computes the jet forward values, the point's loss contribution, and the
adjoint accumulation into the flat gradient.  All reductions run left to
right in dataset order.  Kernels are cached on disk after the first compile.
"""

import math

import numpy as np
from numba import njit


@njit(cache=True)
def _ode_d1(theta, h1, t, order2, coef, t0, x0, v0):
    n = t.shape[0]
    ob1 = h1
    owo = 2 * h1
    obo = 3 * h1
    grad = np.zeros(theta.shape[0])
    tb = np.empty(h1)
    sb = np.empty(h1)
    pb = np.empty(h1)
    qb = np.empty(h1)
    lr = 0.0
    lic = 0.0
    for idx in range(n + 1):
        ic = idx == n
        tn = t0 if ic else t[idx]
        u = theta[obo]
        u1 = 0.0
        u2 = 0.0
        for j in range(h1):
            w = theta[j]
            a = w * tn + theta[ob1 + j]
            tj = math.tanh(a)
            sj = 1.0 - tj * tj
            p = sj * w
            q = -2.0 * tj * sj * w * w
            tb[j] = tj
            sb[j] = sj
            pb[j] = p
            qb[j] = q
            wo = theta[owo + j]
            u += wo * tj
            u1 += wo * p
            u2 += wo * q
        if ic:
            e = u - x0
            lic = e * e
            gu = 2.0 * e
            gu1 = 0.0
            gu2 = 0.0
            if order2:
                ep = u1 - v0
                lic += ep * ep
                gu1 = 2.0 * ep
        else:
            r = (u2 if order2 else u1) + coef * u
            lr += r * r
            c = 2.0 * r / n
            gu = coef * c
            gu1 = 0.0 if order2 else c
            gu2 = c if order2 else 0.0
        for j in range(h1):
            tj = tb[j]
            sj = sb[j]
            w = theta[j]
            wo = theta[owo + j]
            grad[owo + j] += gu * tj + gu1 * pb[j] + gu2 * qb[j]
            hb = gu * wo
            hb1 = gu1 * wo
            hb2 = gu2 * wo
            ap = hb1 * sj - 4.0 * tj * sj * w * hb2
            av = hb * sj - 2.0 * tj * sj * w * hb1 \
                - 2.0 * sj * (sj - 2.0 * tj * tj) * w * w * hb2
            grad[j] += av * tn + ap
            grad[ob1 + j] += av
        grad[obo] += gu
    lr /= n
    return lr, lic, grad


@njit(cache=True)
def _ode_d2(theta, h1, h2, t, order2, coef, t0, x0, v0):
    n = t.shape[0]
    ob1 = h1
    ow2 = 2 * h1
    ob2 = ow2 + h2 * h1
    owo = ob2 + h2
    obo = owo + h2
    grad = np.zeros(theta.shape[0])
    t1 = np.empty(h1)
    s1 = np.empty(h1)
    p1 = np.empty(h1)
    q1 = np.empty(h1)
    t2 = np.empty(h2)
    s2 = np.empty(h2)
    cp = np.empty(h2)
    cq = np.empty(h2)
    p2 = np.empty(h2)
    q2 = np.empty(h2)
    kb = np.empty(h1)
    kbp = np.empty(h1)
    kbq = np.empty(h1)
    lr = 0.0
    lic = 0.0
    for idx in range(n + 1):
        ic = idx == n
        tn = t0 if ic else t[idx]
        for j in range(h1):
            w = theta[j]
            a = w * tn + theta[ob1 + j]
            tj = math.tanh(a)
            sj = 1.0 - tj * tj
            t1[j] = tj
            s1[j] = sj
            p1[j] = sj * w
            q1[j] = -2.0 * tj * sj * w * w
        u = theta[obo]
        u1 = 0.0
        u2 = 0.0
        for m in range(h2):
            a = theta[ob2 + m]
            apx = 0.0
            aqx = 0.0
            base = ow2 + m * h1
            for j in range(h1):
                w2 = theta[base + j]
                a += w2 * t1[j]
                apx += w2 * p1[j]
                aqx += w2 * q1[j]
            tm = math.tanh(a)
            sm = 1.0 - tm * tm
            t2[m] = tm
            s2[m] = sm
            cp[m] = apx
            cq[m] = aqx
            pm = sm * apx
            qm = sm * aqx - 2.0 * tm * sm * apx * apx
            p2[m] = pm
            q2[m] = qm
            wo = theta[owo + m]
            u += wo * tm
            u1 += wo * pm
            u2 += wo * qm
        if ic:
            e = u - x0
            lic = e * e
            gu = 2.0 * e
            gu1 = 0.0
            gu2 = 0.0
            if order2:
                ep = u1 - v0
                lic += ep * ep
                gu1 = 2.0 * ep
        else:
            r = (u2 if order2 else u1) + coef * u
            lr += r * r
            c = 2.0 * r / n
            gu = coef * c
            gu1 = 0.0 if order2 else c
            gu2 = c if order2 else 0.0
        for j in range(h1):
            kb[j] = 0.0
            kbp[j] = 0.0
            kbq[j] = 0.0
        for m in range(h2):
            tm = t2[m]
            sm = s2[m]
            wo = theta[owo + m]
            grad[owo + m] += gu * tm + gu1 * p2[m] + gu2 * q2[m]
            hb = gu * wo
            hb1 = gu1 * wo
            hb2 = gu2 * wo
            aq = hb2 * sm
            ap = hb1 * sm - 4.0 * tm * sm * cp[m] * hb2
            av = hb * sm - 2.0 * tm * sm * cp[m] * hb1 \
                - (2.0 * tm * sm * cq[m] + 2.0 * sm * (sm - 2.0 * tm * tm) * cp[m] * cp[m]) * hb2
            base = ow2 + m * h1
            for j in range(h1):
                w2 = theta[base + j]
                grad[base + j] += av * t1[j] + ap * p1[j] + aq * q1[j]
                kb[j] += av * w2
                kbp[j] += ap * w2
                kbq[j] += aq * w2
            grad[ob2 + m] += av
        for j in range(h1):
            tj = t1[j]
            sj = s1[j]
            w = theta[j]
            ap = kbp[j] * sj - 4.0 * tj * sj * w * kbq[j]
            av = kb[j] * sj - 2.0 * tj * sj * w * kbp[j] \
                - 2.0 * sj * (sj - 2.0 * tj * tj) * w * w * kbq[j]
            grad[j] += av * tn + ap
            grad[ob1 + j] += av
        grad[obo] += gu
    lr /= n
    return lr, lic, grad


@njit(cache=True)
def _pde_d1(theta, h1, xi, yi, fvals, xb, yb, gvals):
    n = xi.shape[0]
    m = xb.shape[0]
    ob1 = 2 * h1
    owo = 3 * h1
    obo = 4 * h1
    grad = np.zeros(theta.shape[0])
    tb = np.empty(h1)
    sb = np.empty(h1)
    qxb = np.empty(h1)
    qyb = np.empty(h1)
    lr = 0.0
    for idx in range(n):
        x = xi[idx]
        y = yi[idx]
        uxx = 0.0
        uyy = 0.0
        for j in range(h1):
            wx = theta[2 * j]
            wy = theta[2 * j + 1]
            a = wx * x + wy * y + theta[ob1 + j]
            tj = math.tanh(a)
            sj = 1.0 - tj * tj
            qx = -2.0 * tj * sj * wx * wx
            qy = -2.0 * tj * sj * wy * wy
            tb[j] = tj
            sb[j] = sj
            qxb[j] = qx
            qyb[j] = qy
            wo = theta[owo + j]
            uxx += wo * qx
            uyy += wo * qy
        r = uxx + uyy - fvals[idx]
        lr += r * r
        c = 2.0 * r / n
        # residual has no value or first-derivative term: only the two
        # second-derivative adjoints are nonzero
        for j in range(h1):
            tj = tb[j]
            sj = sb[j]
            wx = theta[2 * j]
            wy = theta[2 * j + 1]
            wo = theta[owo + j]
            grad[owo + j] += c * (qxb[j] + qyb[j])
            hb2 = c * wo
            apx = -4.0 * tj * sj * wx * hb2
            apy = -4.0 * tj * sj * wy * hb2
            av = -2.0 * sj * (sj - 2.0 * tj * tj) * (wx * wx + wy * wy) * hb2
            grad[2 * j] += av * x + apx
            grad[2 * j + 1] += av * y + apy
            grad[ob1 + j] += av
    lr /= n
    lbc = 0.0
    for idx in range(m):
        x = xb[idx]
        y = yb[idx]
        u = theta[obo]
        for j in range(h1):
            a = theta[2 * j] * x + theta[2 * j + 1] * y + theta[ob1 + j]
            tj = math.tanh(a)
            tb[j] = tj
            sb[j] = 1.0 - tj * tj
            u += theta[owo + j] * tj
        e = u - gvals[idx]
        lbc += e * e
        gu = 2.0 * e / m
        for j in range(h1):
            grad[owo + j] += gu * tb[j]
            av = gu * theta[owo + j] * sb[j]
            grad[2 * j] += av * x
            grad[2 * j + 1] += av * y
            grad[ob1 + j] += av
        grad[obo] += gu
    lbc /= m
    return lr, lbc, grad


@njit(cache=True)
def _pde_d2(theta, h1, h2, xi, yi, fvals, xb, yb, gvals):
    n = xi.shape[0]
    m = xb.shape[0]
    ob1 = 2 * h1
    ow2 = 3 * h1
    ob2 = ow2 + h2 * h1
    owo = ob2 + h2
    obo = owo + h2
    grad = np.zeros(theta.shape[0])
    t1 = np.empty(h1)
    s1 = np.empty(h1)
    px1 = np.empty(h1)
    qx1 = np.empty(h1)
    py1 = np.empty(h1)
    qy1 = np.empty(h1)
    t2 = np.empty(h2)
    s2 = np.empty(h2)
    cpx = np.empty(h2)
    cqx = np.empty(h2)
    cpy = np.empty(h2)
    cqy = np.empty(h2)
    qx2 = np.empty(h2)
    qy2 = np.empty(h2)
    kb = np.empty(h1)
    kbpx = np.empty(h1)
    kbqx = np.empty(h1)
    kbpy = np.empty(h1)
    kbqy = np.empty(h1)
    lr = 0.0
    for idx in range(n):
        x = xi[idx]
        y = yi[idx]
        for j in range(h1):
            wx = theta[2 * j]
            wy = theta[2 * j + 1]
            a = wx * x + wy * y + theta[ob1 + j]
            tj = math.tanh(a)
            sj = 1.0 - tj * tj
            t1[j] = tj
            s1[j] = sj
            px1[j] = sj * wx
            qx1[j] = -2.0 * tj * sj * wx * wx
            py1[j] = sj * wy
            qy1[j] = -2.0 * tj * sj * wy * wy
        uxx = 0.0
        uyy = 0.0
        for mm in range(h2):
            a = theta[ob2 + mm]
            apx = 0.0
            aqx = 0.0
            apy = 0.0
            aqy = 0.0
            base = ow2 + mm * h1
            for j in range(h1):
                w2 = theta[base + j]
                a += w2 * t1[j]
                apx += w2 * px1[j]
                aqx += w2 * qx1[j]
                apy += w2 * py1[j]
                aqy += w2 * qy1[j]
            tm = math.tanh(a)
            sm = 1.0 - tm * tm
            t2[mm] = tm
            s2[mm] = sm
            cpx[mm] = apx
            cqx[mm] = aqx
            cpy[mm] = apy
            cqy[mm] = aqy
            qxm = sm * aqx - 2.0 * tm * sm * apx * apx
            qym = sm * aqy - 2.0 * tm * sm * apy * apy
            qx2[mm] = qxm
            qy2[mm] = qym
            wo = theta[owo + mm]
            uxx += wo * qxm
            uyy += wo * qym
        r = uxx + uyy - fvals[idx]
        lr += r * r
        c = 2.0 * r / n
        for j in range(h1):
            kb[j] = 0.0
            kbpx[j] = 0.0
            kbqx[j] = 0.0
            kbpy[j] = 0.0
            kbqy[j] = 0.0
        for mm in range(h2):
            tm = t2[mm]
            sm = s2[mm]
            wo = theta[owo + mm]
            grad[owo + mm] += c * (qx2[mm] + qy2[mm])
            hb2 = c * wo
            aqx = hb2 * sm
            aqy = hb2 * sm
            apx = -4.0 * tm * sm * cpx[mm] * hb2
            apy = -4.0 * tm * sm * cpy[mm] * hb2
            av = -(2.0 * tm * sm * cqx[mm] + 2.0 * sm * (sm - 2.0 * tm * tm) * cpx[mm] * cpx[mm]) * hb2 \
                - (2.0 * tm * sm * cqy[mm] + 2.0 * sm * (sm - 2.0 * tm * tm) * cpy[mm] * cpy[mm]) * hb2
            base = ow2 + mm * h1
            for j in range(h1):
                w2 = theta[base + j]
                grad[base + j] += av * t1[j] + apx * px1[j] + aqx * qx1[j] \
                    + apy * py1[j] + aqy * qy1[j]
                kb[j] += av * w2
                kbpx[j] += apx * w2
                kbqx[j] += aqx * w2
                kbpy[j] += apy * w2
                kbqy[j] += aqy * w2
            grad[ob2 + mm] += av
        for j in range(h1):
            tj = t1[j]
            sj = s1[j]
            wx = theta[2 * j]
            wy = theta[2 * j + 1]
            apx = kbpx[j] * sj - 4.0 * tj * sj * wx * kbqx[j]
            apy = kbpy[j] * sj - 4.0 * tj * sj * wy * kbqy[j]
            av = kb[j] * sj \
                - 2.0 * tj * sj * wx * kbpx[j] - 2.0 * sj * (sj - 2.0 * tj * tj) * wx * wx * kbqx[j] \
                - 2.0 * tj * sj * wy * kbpy[j] - 2.0 * sj * (sj - 2.0 * tj * tj) * wy * wy * kbqy[j]
            grad[2 * j] += av * x + apx
            grad[2 * j + 1] += av * y + apy
            grad[ob1 + j] += av
    lr /= n
    lbc = 0.0
    for idx in range(m):
        x = xb[idx]
        y = yb[idx]
        u = theta[obo]
        for j in range(h1):
            a = theta[2 * j] * x + theta[2 * j + 1] * y + theta[ob1 + j]
            tj = math.tanh(a)
            t1[j] = tj
            s1[j] = 1.0 - tj * tj
        for mm in range(h2):
            a = theta[ob2 + mm]
            base = ow2 + mm * h1
            for j in range(h1):
                a += theta[base + j] * t1[j]
            tm = math.tanh(a)
            t2[mm] = tm
            s2[mm] = 1.0 - tm * tm
            u += theta[owo + mm] * tm
        e = u - gvals[idx]
        lbc += e * e
        gu = 2.0 * e / m
        for j in range(h1):
            kb[j] = 0.0
        for mm in range(h2):
            grad[owo + mm] += gu * t2[mm]
            av = gu * theta[owo + mm] * s2[mm]
            base = ow2 + mm * h1
            for j in range(h1):
                grad[base + j] += av * t1[j]
                kb[j] += av * theta[base + j]
            grad[ob2 + mm] += av
        for j in range(h1):
            av = kb[j] * s1[j]
            grad[2 * j] += av * x
            grad[2 * j + 1] += av * y
            grad[ob1 + j] += av
        grad[obo] += gu
    lbc /= m
    return lr, lbc, grad


def ode_loss_grad(theta, h1, h2, t, order2, coef, t0, x0, v0):
    if h2 == 0:
        return _ode_d1(theta, h1, t, order2, coef, t0, x0, v0)
    return _ode_d2(theta, h1, h2, t, order2, coef, t0, x0, v0)


def pde_loss_grad(theta, h1, h2, xi, yi, fvals, xb, yb, gvals):
    if h2 == 0:
        return _pde_d1(theta, h1, xi, yi, fvals, xb, yb, gvals)
    return _pde_d2(theta, h1, h2, xi, yi, fvals, xb, yb, gvals)
