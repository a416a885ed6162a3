import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from interfpdf import (
    BesselOrder,
    ConvergenceError,
    DomainError,
    HypergeometricSpec,
    PoleError,
    bessel_i0,
    bessel_k,
    gamma,
    kummer_1f1,
    phyp,
)
from interfpdf.specfun import phyp_full

mp.mp.dps = 50

# frozen oracle values (50-digit arithmetic, rounded to double)
GAMMA_THIRDS_PRODUCT = 3.6275987284684357  # Gamma(1/3)*Gamma(2/3) = 2*pi/sqrt(3)
K_HALF_AT_1 = 0.46106850444789456  # sqrt(pi/2)*exp(-1)
K_THIRD_AT_HALF = 0.98903107424672429
I0_AT_1 = 1.2660658777520084
HYP_0F2_AT_MINUS_1 = -1.1828926594545649  # 0F2(;1/2,3/4;-1)
HYP_1F1_56_23_M10 = -0.033020731832731651  # 1F1(5/6;2/3;-10)


class TestGamma:
    def test_anchors(self):
        assert gamma(1.0) == pytest.approx(1.0, rel=1e-14)
        assert gamma(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-14)
        assert gamma(1.0 / 3.0) * gamma(2.0 / 3.0) == pytest.approx(
            GAMMA_THIRDS_PRODUCT, rel=1e-13
        )

    def test_accuracy_grid(self):
        xs = np.linspace(0.1, 30.0, 300)
        for x in xs:
            ref = float(mp.gamma(float(x)))
            assert gamma(float(x)) == pytest.approx(ref, rel=1e-13)

    def test_reflection(self):
        for z in np.arange(0.1, 0.95, 0.1):
            prod = gamma(float(z)) * gamma(1.0 - float(z)) * math.sin(math.pi * z) / math.pi
            assert abs(prod - 1.0) < 1e-12

    @given(st.floats(min_value=0.1, max_value=29.0))
    def test_recurrence(self, x):
        assert gamma(x + 1.0) == pytest.approx(x * gamma(x), rel=1e-13)

    @pytest.mark.parametrize("x", [0.0, -1.0, -7.0])
    def test_poles(self, x):
        with pytest.raises(PoleError):
            gamma(x)

    def test_negative_non_integer(self):
        assert gamma(-0.25) == pytest.approx(float(mp.gamma(-0.25)), rel=1e-13)


class TestBesselK:
    def test_half_order_identity_anchor(self):
        assert bessel_k(0.5, 1.0) == pytest.approx(K_HALF_AT_1, rel=1e-12)

    def test_half_order_identity_range(self):
        # K_{1/2}(z) = sqrt(pi/(2z)) e^-z exactly
        for z in np.logspace(math.log10(0.1), math.log10(20.0), 40):
            z = float(z)
            exact = math.sqrt(math.pi / (2.0 * z)) * math.exp(-z)
            assert abs(bessel_k(0.5, z) / exact - 1.0) < 1e-10

    def test_third_order_series_oracle(self):
        # independent 50-term ascending series at 50 digits
        v = mp.mpf(1) / 3
        z = mp.mpf(1) / 2
        acc = mp.mpf(0)
        for k in range(50):
            acc += (z / 2) ** (2 * k - v) / (mp.factorial(k) * mp.gamma(k + 1 - v))
            acc -= (z / 2) ** (2 * k + v) / (mp.factorial(k) * mp.gamma(k + 1 + v))
        ref = float(mp.pi / 2 / mp.sin(v * mp.pi) * acc)
        assert ref == pytest.approx(K_THIRD_AT_HALF, rel=1e-15)
        assert bessel_k(1.0 / 3.0, 0.5) == pytest.approx(ref, rel=1e-12)

    @pytest.mark.parametrize("v", [1.0 / 3.0, 2.0 / 3.0])
    def test_accuracy_grid(self, v):
        for z in np.logspace(-3, math.log10(50.0), 80):
            ref = float(mp.besselk(v, float(z)))
            assert bessel_k(v, float(z)) == pytest.approx(ref, rel=1e-10)

    def test_large_z_universal_asymptotic(self):
        for z in (60.0, 120.0, 300.0):
            lead = math.sqrt(math.pi / (2.0 * z)) * math.exp(-z)
            assert bessel_k(1.0 / 3.0, z) / lead == pytest.approx(1.0, rel=1e-2)

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            bessel_k(1.0 / 3.0, 0.0)
        with pytest.raises(DomainError):
            bessel_k(1.0 / 3.0, -1.0)
        with pytest.raises(DomainError):
            bessel_k(1.0, 2.0)  # integer order out of scope
        with pytest.raises(DomainError):
            BesselOrder(-0.5)


class TestBesselI0:
    def test_at_zero(self):
        assert bessel_i0(0.0) == 1.0

    def test_series_oracle_at_1(self):
        acc = mp.mpf(0)
        for k in range(60):
            acc += (mp.mpf(1) / 2) ** (2 * k) / mp.factorial(k) ** 2
        assert float(acc) == pytest.approx(I0_AT_1, rel=1e-15)
        assert bessel_i0(1.0) == pytest.approx(I0_AT_1, rel=1e-12)

    def test_accuracy_to_30(self):
        for z in np.linspace(0.0, 30.0, 31):
            ref = float(mp.besseli(0, float(z)))
            assert bessel_i0(float(z)) == pytest.approx(ref, rel=1e-12)

    @given(st.floats(min_value=0.0, max_value=100.0))
    def test_at_least_one(self, z):
        assert bessel_i0(z) >= 1.0

    def test_negative_rejected(self):
        with pytest.raises(DomainError):
            bessel_i0(-0.1)


class TestPhyp:
    def test_at_zero(self):
        spec = HypergeometricSpec((0.3, 1.7), (0.4, 0.9, 2.2))
        assert phyp(spec, 0.0) == 1.0

    @pytest.mark.parametrize("z", [-3.0, -1.0, 0.5, 2.0])
    def test_parameter_cancellation_gives_exp(self, z):
        spec = HypergeometricSpec((1.3,), (1.3,))
        assert phyp(spec, z) == pytest.approx(math.exp(z), rel=1e-13)

    def test_0f2_oracle(self):
        spec = HypergeometricSpec((), (0.5, 0.75))
        assert phyp(spec, -1.0) == pytest.approx(HYP_0F2_AT_MINUS_1, rel=1e-13)

    def test_against_brute_force_summation(self):
        cases = [
            ((), (1.0 / 3.0, 0.5, 2.0 / 3.0, 5.0 / 6.0), -35.0),
            ((1.0, 1.4), (0.4, 0.6, 0.8, 1.0, 1.4), 12.0),
            ((0.75,), (1.5, 2.25), -8.0),
        ]
        for up, lo, z in cases:
            ref = float(mp.hyper([mp.mpf(a) for a in up], [mp.mpf(b) for b in lo], z))
            assert phyp(HypergeometricSpec(up, lo), z) == pytest.approx(ref, rel=1e-12)

    def test_converged_flag_on_working_args(self):
        value, converged, _ = phyp_full(HypergeometricSpec((), (0.5, 0.75)), -120.0)
        assert converged

    def test_nonconvergence_signals(self):
        # 1F1 at large positive argument needs ~z terms: past the budget
        value, converged, _ = phyp_full(HypergeometricSpec((0.25,), (0.75,)), 9000.0)
        assert not converged
        with pytest.raises(ConvergenceError):
            phyp(HypergeometricSpec((0.25,), (0.75,)), 9000.0)

    def test_spec_validation(self):
        with pytest.raises(DomainError):
            HypergeometricSpec((0.5, 0.5), (0.5,))  # p > q
        with pytest.raises(PoleError):
            HypergeometricSpec((0.5,), (0.0,))
        with pytest.raises(PoleError):
            HypergeometricSpec((0.5,), (-2.0,))


class TestKummer1F1:
    def test_at_zero(self):
        assert kummer_1f1(0.7, 1.9, 0.0) == 1.0

    @pytest.mark.parametrize("z", [-1.0, 1.0])
    def test_closed_form_1_2(self, z):
        # 1F1(1;2;z) = (e^z - 1)/z
        assert kummer_1f1(1.0, 2.0, z) == pytest.approx(math.expm1(z) / z, rel=1e-13)

    def test_negative_argument_oracle(self):
        assert kummer_1f1(5.0 / 6.0, 2.0 / 3.0, -10.0) == pytest.approx(
            HYP_1F1_56_23_M10, rel=1e-10
        )

    def test_matches_direct_series_where_stable(self):
        for z in np.linspace(-5.0, 5.0, 11):
            z = float(z)
            direct = phyp(HypergeometricSpec((5.0 / 6.0,), (2.0 / 3.0,)), z)
            assert kummer_1f1(5.0 / 6.0, 2.0 / 3.0, z) == pytest.approx(
                direct, rel=1e-9, abs=1e-12
            )

    def test_pole_parameter(self):
        with pytest.raises(PoleError):
            kummer_1f1(0.5, -1.0, 1.0)
