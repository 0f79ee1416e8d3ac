"""Second-order forward jets.

A ``Jet2`` carries a value together with its first and second derivatives
along one active input axis, and propagates them through arithmetic by the
chain rule.  Lifting rules: a constant ``c`` becomes ``(c, 0, 0)``; the
active variable ``s`` becomes ``(s, 1, 0)``.

Components may be floats or numpy arrays (broadcasting elementwise), so a
whole batch of points can be pushed through one expression.
"""

from __future__ import annotations

import numpy as np


class Jet2:
    """(value, d/ds, d2/ds2) triple along one active axis."""

    __slots__ = ("v", "d1", "d2")

    def __init__(self, v, d1=0.0, d2=0.0):
        self.v = v
        self.d1 = d1
        self.d2 = d2

    def __repr__(self):
        return f"Jet2(v={self.v!r}, d1={self.d1!r}, d2={self.d2!r})"

    # operators mirror the module-level combinators
    def __add__(self, other):
        return add(self, _lift(other))

    __radd__ = __add__

    def __sub__(self, other):
        return sub(self, _lift(other))

    def __rsub__(self, other):
        return sub(_lift(other), self)

    def __mul__(self, other):
        if isinstance(other, Jet2):
            return mul(self, other)
        return scale(other, self)

    __rmul__ = __mul__

    def __neg__(self):
        return scale(-1.0, self)


def _lift(x) -> Jet2:
    return x if isinstance(x, Jet2) else const(x)


def const(c) -> Jet2:
    """Lift a constant: derivatives vanish."""
    return Jet2(c, 0.0 * c, 0.0 * c)


def seed(s) -> Jet2:
    """Lift the active variable: unit first derivative."""
    return Jet2(s, 1.0 + 0.0 * s, 0.0 * s)


def add(u: Jet2, w: Jet2) -> Jet2:
    return Jet2(u.v + w.v, u.d1 + w.d1, u.d2 + w.d2)


def sub(u: Jet2, w: Jet2) -> Jet2:
    return Jet2(u.v - w.v, u.d1 - w.d1, u.d2 - w.d2)


def mul(u: Jet2, w: Jet2) -> Jet2:
    # (uw)'' = u''w + 2u'w' + uw''
    return Jet2(
        u.v * w.v,
        u.v * w.d1 + u.d1 * w.v,
        u.v * w.d2 + 2.0 * u.d1 * w.d1 + u.d2 * w.v,
    )


def scale(c, u: Jet2) -> Jet2:
    return Jet2(c * u.v, c * u.d1, c * u.d2)


def tanh(u: Jet2) -> Jet2:
    f = np.tanh(u.v)
    s = 1.0 - f * f
    return Jet2(f, s * u.d1, s * u.d2 - 2.0 * f * s * u.d1 * u.d1)


def exp(u: Jet2) -> Jet2:
    e = np.exp(u.v)
    return Jet2(e, e * u.d1, e * (u.d2 + u.d1 * u.d1))


def sin(u: Jet2) -> Jet2:
    s, c = np.sin(u.v), np.cos(u.v)
    return Jet2(s, c * u.d1, c * u.d2 - s * u.d1 * u.d1)


def cos(u: Jet2) -> Jet2:
    s, c = np.sin(u.v), np.cos(u.v)
    return Jet2(c, -s * u.d1, -s * u.d2 - c * u.d1 * u.d1)


def square(u: Jet2) -> Jet2:
    return Jet2(u.v * u.v, 2.0 * u.v * u.d1, 2.0 * (u.d1 * u.d1 + u.v * u.d2))
