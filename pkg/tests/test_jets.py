import math

import numpy as np
import pytest

from gridlab import jets
from gridlab.jets import Jet2


def jet_of(expr, s: float) -> Jet2:
    return expr(jets.seed(s))


# closed-form (f, f', f'') catalogue used across the derivative tests
CATALOGUE = [
    (
        "tanh(a*s+b)",
        lambda s, a, b: jets.tanh(jets.add(jets.scale(a, s), jets.const(b))),
        lambda s, a, b: (
            math.tanh(a * s + b),
            a * (1 - math.tanh(a * s + b) ** 2),
            -2 * a * a * math.tanh(a * s + b) * (1 - math.tanh(a * s + b) ** 2),
        ),
    ),
    (
        "exp(a*s)",
        lambda s, a, b: jets.exp(jets.scale(a, s)),
        lambda s, a, b: (math.exp(a * s), a * math.exp(a * s), a * a * math.exp(a * s)),
    ),
    (
        "sin(a*s)",
        lambda s, a, b: jets.sin(jets.scale(a, s)),
        lambda s, a, b: (math.sin(a * s), a * math.cos(a * s), -a * a * math.sin(a * s)),
    ),
    (
        "s*tanh(s)",
        lambda s, a, b: jets.mul(s, jets.tanh(s)),
        lambda s, a, b: (
            s * math.tanh(s),
            math.tanh(s) + s * (1 - math.tanh(s) ** 2),
            2 * (1 - math.tanh(s) ** 2) - 2 * s * math.tanh(s) * (1 - math.tanh(s) ** 2),
        ),
    ),
    (
        "(a*s+b)^2",
        lambda s, a, b: jets.square(jets.add(jets.scale(a, s), jets.const(b))),
        lambda s, a, b: ((a * s + b) ** 2, 2 * a * (a * s + b), 2 * a * a),
    ),
]


class TestLifting:
    def test_constant_lifts_with_zero_derivatives(self):
        c = jets.const(4.5)
        assert (c.v, c.d1, c.d2) == (4.5, 0.0, 0.0)

    def test_seed_lifts_with_unit_first_derivative(self):
        s = jets.seed(3.0)
        assert (s.v, s.d1, s.d2) == (3.0, 1.0, 0.0)


class TestCombinators:
    def test_tanh_of_seed_at_zero(self):
        out = jets.tanh(jets.seed(0.0))
        assert (out.v, out.d1, out.d2) == (0.0, 1.0, 0.0)

    def test_square_of_seed(self):
        out = jets.square(jets.seed(3.0))
        assert (out.v, out.d1, out.d2) == (9.0, 6.0, 2.0)

    def test_tanh_affine_matches_finite_differences(self):
        # d/ds tanh(3s+1) at s=0, central differences with h=1e-5
        f = lambda s: math.tanh(3 * s + 1)
        h = 1e-5
        out = jets.tanh(jets.add(jets.scale(3.0, jets.seed(0.0)), jets.const(1.0)))
        assert out.v == f(0.0)
        assert out.d1 == pytest.approx((f(h) - f(-h)) / (2 * h), rel=1e-9)
        assert out.d2 == pytest.approx((f(h) - 2 * f(0) + f(-h)) / h ** 2, rel=1e-5)

    def test_tanh_affine_matches_closed_form(self):
        out = jets.tanh(jets.add(jets.scale(3.0, jets.seed(0.0)), jets.const(1.0)))
        t1 = math.tanh(1.0)
        assert out.d1 == pytest.approx(3 * (1 - t1 * t1), rel=1e-14)
        assert out.d2 == pytest.approx(-18 * t1 * (1 - t1 * t1), rel=1e-14)

    def test_mul_product_rule(self, rng):
        for _ in range(50):
            uv, u1, u2, wv, w1, w2 = rng.normal(0, 2, 6)
            u, w = Jet2(uv, u1, u2), Jet2(wv, w1, w2)
            out = jets.mul(u, w)
            assert out.v == pytest.approx(uv * wv, rel=1e-14, abs=1e-14)
            assert out.d1 == pytest.approx(uv * w1 + u1 * wv, rel=1e-14, abs=1e-14)
            assert out.d2 == pytest.approx(uv * w2 + 2 * u1 * w1 + u2 * wv,
                                           rel=1e-14, abs=1e-14)

    def test_catalogue_against_closed_forms(self, rng):
        for name, build, closed in CATALOGUE:
            for _ in range(100):
                s = float(rng.uniform(-2, 2))
                a = float(rng.uniform(0.5, 2.5))
                b = float(rng.uniform(-1, 1))
                out = build(jets.seed(s), a, b)
                v, d1, d2 = closed(s, a, b)
                assert out.v == pytest.approx(v, rel=1e-12, abs=1e-12), name
                assert out.d1 == pytest.approx(d1, rel=1e-10, abs=1e-10), name
                assert out.d2 == pytest.approx(d2, rel=1e-10, abs=1e-10), name

    def test_cos_is_derivative_consistent_with_sin(self, rng):
        # d/ds sin = cos propagates: jet(sin).d1 equals cos value
        for s in rng.uniform(-3, 3, 20):
            sj = jets.seed(float(s))
            assert jets.sin(sj).d1 == pytest.approx(jets.cos(sj).v, rel=1e-14)
            assert jets.cos(sj).d1 == pytest.approx(-jets.sin(sj).v, rel=1e-14)


class TestProperties:
    def test_linearity(self, rng):
        # jet(a*f + b*g) == a*jet(f) + b*jet(g), componentwise
        for _ in range(100):
            s = float(rng.uniform(-2, 2))
            a, b = float(rng.uniform(-3, 3)), float(rng.uniform(-3, 3))
            f = jets.tanh(jets.scale(1.3, jets.seed(s)))
            g = jets.sin(jets.seed(s))
            combined = jets.add(jets.scale(a, f), jets.scale(b, g))
            for field in ("v", "d1", "d2"):
                lhs = getattr(combined, field)
                rhs = a * getattr(f, field) + b * getattr(g, field)
                assert lhs == pytest.approx(rhs, rel=1e-13, abs=1e-13)

    def test_operators_mirror_combinators(self):
        u, w = Jet2(1.0, 2.0, 3.0), Jet2(4.0, 5.0, 6.0)
        add = u + w
        assert (add.v, add.d1, add.d2) == (5.0, 7.0, 9.0)
        sub = u - w
        assert (sub.v, sub.d1, sub.d2) == (-3.0, -3.0, -3.0)
        scaled = 2.0 * u
        assert (scaled.v, scaled.d1, scaled.d2) == (2.0, 4.0, 6.0)
        neg = -u
        assert (neg.v, neg.d1, neg.d2) == (-1.0, -2.0, -3.0)
        prod = u * w
        ref = jets.mul(u, w)
        assert (prod.v, prod.d1, prod.d2) == (ref.v, ref.d1, ref.d2)

    def test_array_payloads_broadcast(self):
        s = jets.seed(np.linspace(-1, 1, 7))
        out = jets.tanh(s)
        expected = 1.0 - np.tanh(s.v) ** 2
        np.testing.assert_allclose(out.d1, expected, rtol=1e-14)

    def test_finite_for_finite_inputs(self, rng):
        for _ in range(50):
            s = jets.seed(float(rng.uniform(-5, 5)))
            out = jets.exp(jets.sin(jets.tanh(s)))
            assert np.isfinite([out.v, out.d1, out.d2]).all()
