import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from interfpdf import (
    DomainError,
    Nakagami,
    NetworkParams,
    Rayleigh,
    Rician,
    fractional_moment,
    kww_scale,
    laplace_transform,
    rayleigh_lt_identity_check,
    rician_as_nakagami,
)

mp.mp.dps = 30

SQRT_PI_HALF = 0.88622692545275801  # Gamma(3/2)
PI_SQUARED = 9.869604401089358


class TestFractionalMoment:
    def test_rayleigh_eta4(self):
        assert fractional_moment(Rayleigh(mu=1.0), 4) == pytest.approx(
            SQRT_PI_HALF, rel=1e-13
        )

    def test_nakagami_m1_equals_rayleigh(self):
        for eta in (3, 4, 5, 6, 8, 12):
            for pr in (0.5, 1.0, 2.0):
                a = fractional_moment(Nakagami(m=1.0, pr=pr), eta)
                b = fractional_moment(Rayleigh(mu=1.0 / pr), eta)
                assert a == pytest.approx(b, rel=1e-13)

    def test_rician_k0_equals_rayleigh(self):
        for eta in (3, 4, 6):
            a = fractional_moment(Rician(k=0.0, pr=1.0), eta)
            b = fractional_moment(Rayleigh(mu=1.0), eta)
            assert a == pytest.approx(b, abs=1e-8)

    @pytest.mark.parametrize("k", [1.0, 5.0, 10.0])
    def test_rician_close_to_nakagami_standin(self, k):
        f = Rician(k=k, pr=1.0)
        approx = rician_as_nakagami(f)
        for eta in (3, 4):
            exact = fractional_moment(f, eta)
            stand_in = fractional_moment(approx, eta)
            assert abs(stand_in - exact) / exact < 0.02

    def test_rician_moment_against_quadrature_oracle(self):
        # independent high-precision integral of g^(1/2) * density, K = 2
        k, q = 2.0, 0.5
        dens = lambda g: (1 + k) * mp.exp(-k - (1 + k) * g) * mp.besseli(0, 2 * mp.sqrt(k * (1 + k) * g))
        ref = float(mp.quad(lambda g: g ** q * dens(g), [0, 1, 5, 40]))
        assert fractional_moment(Rician(k=k, pr=1.0), 4) == pytest.approx(ref, rel=1e-8)

    @given(st.floats(min_value=0.6, max_value=5.0), st.floats(min_value=1.05, max_value=4.0))
    def test_monotone_in_mean_power(self, pr, factor):
        a = fractional_moment(Nakagami(m=2.5, pr=pr), 4)
        b = fractional_moment(Nakagami(m=2.5, pr=pr * factor), 4)
        assert b > a

    def test_no_fading_limit(self):
        for eta in (3, 4, 6):
            for pr in (0.5, 2.0):
                got = fractional_moment(Nakagami(m=1e4, pr=pr), eta)
                assert got == pytest.approx(pr ** (2.0 / eta), rel=1e-3)

    def test_parameter_validation(self):
        with pytest.raises(DomainError):
            Rayleigh(mu=0.0)
        with pytest.raises(DomainError):
            Nakagami(m=0.4)
        with pytest.raises(DomainError):
            Rician(k=-0.5)
        with pytest.raises(DomainError):
            Nakagami(m=1.0, pr=-1.0)


class TestKwwScale:
    def test_benchmark_scale_is_pi_squared(self):
        scale = kww_scale(NetworkParams(lam=2.0, eta=4), Rayleigh(mu=1.0))
        assert float(scale.beta) == 0.5
        assert scale.t == pytest.approx(PI_SQUARED, rel=1e-13)

    def test_scale_linear_in_density(self):
        t1 = kww_scale(NetworkParams(lam=1.0, eta=3), Nakagami(m=10.0)).t
        t4 = kww_scale(NetworkParams(lam=4.0, eta=3), Nakagami(m=10.0)).t
        assert t4 == pytest.approx(4.0 * t1, rel=1e-13)

    def test_vanishing_density(self):
        scale = kww_scale(NetworkParams(lam=1e-12, eta=4), Rayleigh(mu=1.0))
        assert scale.t < 1e-10
        for s in (0.5, 1.0, 5.0):
            assert laplace_transform(scale, s) == pytest.approx(1.0, abs=1e-9)

    def test_fig2_interference_scale(self):
        # eta=3, Nakagami m=10: t = 2 pi G(10+2/3)/(G(10) 10^(2/3)) G(1/3)
        ref = float(
            2
            * mp.pi
            * mp.gamma(10 + mp.mpf(2) / 3)
            / (mp.gamma(10) * mp.mpf(10) ** (mp.mpf(2) / 3))
            * mp.gamma(mp.mpf(1) / 3)
        )
        scale = kww_scale(NetworkParams(lam=2.0, eta=3), Nakagami(m=10.0, pr=1.0))
        assert scale.t == pytest.approx(ref, rel=1e-12)

    def test_eta_validation(self):
        with pytest.raises(DomainError):
            NetworkParams(lam=1.0, eta=2)
        with pytest.raises(DomainError):
            NetworkParams(lam=0.0, eta=4)


class TestLaplaceTransform:
    def test_at_zero(self):
        scale = kww_scale(NetworkParams(lam=2.0, eta=4), Rayleigh(mu=1.0))
        assert laplace_transform(scale, 0.0) == 1.0

    def test_benchmark_value(self):
        scale = kww_scale(NetworkParams(lam=2.0, eta=4), Rayleigh(mu=1.0))
        assert laplace_transform(scale, 1.0) == pytest.approx(
            math.exp(-PI_SQUARED), rel=1e-12
        )

    def test_monotone_and_loglinear(self):
        scale = kww_scale(NetworkParams(lam=2.0, eta=5), Rayleigh(mu=1.0))
        s = np.linspace(0.1, 5.0, 30)
        vals = np.array([laplace_transform(scale, float(v)) for v in s])
        assert np.all(np.diff(vals) < 0.0)
        # log L is linear in s^beta
        z = s ** float(scale.beta)
        slope = np.diff(np.log(vals)) / np.diff(z)
        assert np.allclose(slope, -scale.t, rtol=1e-9)

    def test_negative_s_rejected(self):
        scale = kww_scale(NetworkParams(lam=2.0, eta=4), Rayleigh(mu=1.0))
        with pytest.raises(DomainError):
            laplace_transform(scale, -0.5)


class TestRayleighIdentity:
    def test_deviation_tiny_on_grid(self):
        for eta in (3, 4, 5, 6, 8, 10, 12):
            for mu in (0.5, 1.0, 2.0):
                for lam in (0.5, 2.0):
                    dev = rayleigh_lt_identity_check(NetworkParams(lam=lam, eta=eta), mu)
                    assert dev < 1e-12

    def test_symbolic_exponent_eta4(self):
        # exponent at s=1, mu=1, lam=2 equals -pi^2 on both routes
        scale = kww_scale(NetworkParams(lam=2.0, eta=4), Rayleigh(mu=1.0))
        direct = -math.pi * 2.0 * math.pi * 0.5 / math.sin(math.pi * 0.5)
        assert -scale.t == pytest.approx(direct, rel=1e-13)
