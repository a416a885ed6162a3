import math
import warnings
from fractions import Fraction

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.integrate import quad
from scipy.optimize import minimize_scalar

from interfpdf import (
    CLOSED_FORM_BETAS,
    Backend,
    BackendError,
    DomainError,
    KwwScale,
    StablePdf,
    cdf,
    compose_pdf,
    eta_to_beta,
    pdf,
    survival,
)
from interfpdf._backend import kernels
from interfpdf.stable import TalbotFallbackWarning

mp.mp.dps = 30

LEVY_AT_1 = 0.21969564473386120  # exp(-1/4) / (2 sqrt(pi))
ERFC_HALF = 0.47950012218695346
TAIL_COEF_THIRD = 0.24619651336734724  # Gamma(4/3) sin(pi/3) / pi


def mp_pdf(beta: Fraction, t: float, x: float, degree: int = 60) -> float:
    """Independent arbitrary-precision inversion oracle."""
    b = mp.mpf(beta.numerator) / beta.denominator
    return float(
        mp.invertlaplace(lambda s: mp.exp(-t * s ** b), x, method="talbot", degree=degree)
    )


class TestEtaToBeta:
    def test_table_values(self):
        assert eta_to_beta(4) == (Fraction(1, 2), True)
        assert eta_to_beta(3) == (Fraction(2, 3), True)
        assert eta_to_beta(12) == (Fraction(1, 6), True)

    def test_outside_table(self):
        beta, closed = eta_to_beta(7)
        assert beta == Fraction(2, 7)
        assert not closed

    @pytest.mark.parametrize("eta", [2, 1, 0, -3])
    def test_diverging_exponents_rejected(self, eta):
        with pytest.raises(DomainError):
            eta_to_beta(eta)

    def test_non_integer_rejected(self):
        with pytest.raises(DomainError):
            eta_to_beta(3.5)


class TestClosedFormAgainstOracle:
    @pytest.mark.parametrize("beta", sorted(CLOSED_FORM_BETAS))
    def test_pdf_matches_high_precision_inversion(self, beta):
        for t in (1.0, 3.0):
            scale = KwwScale(beta, t)
            c = scale.pdf_scale
            # stay clear of the deep left tail where the oracle itself
            # needs hundreds of digits
            for f in (0.3, 1.0, 4.0, 20.0):
                x = c * f
                got = StablePdf(scale).pdf(x)
                ref = mp_pdf(beta, t, x)
                assert got == pytest.approx(ref, abs=1e-10, rel=1e-9)

    def test_levy_spot_value(self):
        d = StablePdf(KwwScale(Fraction(1, 2), 1.0))
        assert d.pdf(1.0) == pytest.approx(LEVY_AT_1, abs=1e-12)

    def test_levy_mode_at_t2_over_6(self):
        for t in (1.0, 2.5):
            d = StablePdf(KwwScale(Fraction(1, 2), t))
            res = minimize_scalar(
                lambda x: -d.pdf(x), bracket=(t * t / 10.0, t * t / 6.0, t * t)
            )
            assert res.x == pytest.approx(t * t / 6.0, rel=1e-6)

    def test_third_heavy_tail_exponent(self):
        d = StablePdf(KwwScale(Fraction(1, 3), 1.0))
        for x, tol in ((1e6, 1e-2), (1e9, 1e-3)):
            ratio = d.pdf(x) / (TAIL_COEF_THIRD * x ** (-4.0 / 3.0))
            assert ratio == pytest.approx(1.0, abs=tol)

    def test_two_thirds_bessel_variant_agrees(self):
        for t in (0.7, 1.0, 2.0):
            d = StablePdf(KwwScale(Fraction(2, 3), t))
            for x in (0.4, 1.0, 3.0, 10.0):
                if 2.0 * t ** 3 / (27.0 * x * x) > 600.0:
                    continue
                assert kernels.pdf_two_thirds_bessel(t, x) == pytest.approx(
                    d.pdf(x), rel=1e-10, abs=1e-13
                )

    def test_domain_errors(self):
        d = StablePdf(KwwScale(Fraction(1, 2), 1.0))
        with pytest.raises(DomainError):
            d.pdf(0.0)
        with pytest.raises(DomainError):
            d.pdf(-1.0)
        with pytest.raises(DomainError):
            KwwScale(Fraction(1, 2), 0.0)
        with pytest.raises(DomainError):
            KwwScale(Fraction(3, 2), 1.0)

    def test_closed_backend_requires_table_beta(self):
        with pytest.raises(BackendError):
            StablePdf(KwwScale(Fraction(2, 7), 1.0), backend=Backend.CLOSED_FORM)

    def test_talbot_backend_serves_other_rationals(self):
        scale = KwwScale(Fraction(2, 7), 1.0)
        d = StablePdf(scale)
        assert d.backend is Backend.TALBOT
        val = d.pdf(1.0)
        assert val == pytest.approx(mp_pdf(Fraction(2, 7), 1.0, 1.0), abs=1e-9)


class TestPrecisionGuard:
    def test_extreme_tail_falls_back_to_talbot(self):
        # beta = 1/5 at t = pi^2: x in the working grid sits ~5 orders of
        # magnitude below the distribution scale; the alternating families
        # cancel past double precision there.
        d = StablePdf(KwwScale(Fraction(1, 5), math.pi ** 2))
        with pytest.warns(TalbotFallbackWarning):
            warnings.simplefilter("always")
            val = d.pdf(0.05)
        assert d.fallbacks > 0
        assert val == pytest.approx(mp_pdf(Fraction(1, 5), math.pi ** 2, 0.05, 80), abs=1e-9)

    def test_no_fallback_on_working_grid_at_unit_scale(self):
        for beta in sorted(CLOSED_FORM_BETAS):
            d = StablePdf(KwwScale(beta, 1.0))
            with warnings.catch_warnings():
                warnings.simplefilter("error", TalbotFallbackWarning)
                for x in np.logspace(math.log10(0.05), math.log10(50.0), 30):
                    d.pdf(float(x))
            assert d.fallbacks == 0


class TestScalingLaw:
    @given(
        t=st.floats(min_value=0.3, max_value=4.0),
        f=st.floats(min_value=0.05, max_value=30.0),
    )
    def test_dilation_identity(self, t, f):
        for beta in (Fraction(1, 2), Fraction(2, 3), Fraction(1, 5)):
            c = t ** (1.0 / float(beta))
            x = f * c
            lhs = StablePdf(KwwScale(beta, t)).pdf(x)
            rhs = StablePdf(KwwScale(beta, 1.0)).pdf(x / c) / c
            assert lhs == pytest.approx(rhs, rel=1e-9, abs=1e-300)


class TestNonNegativity:
    def test_random_draws(self):
        rng = np.random.default_rng(1234)
        betas = sorted(CLOSED_FORM_BETAS)
        dists = {b: StablePdf(KwwScale(b, 1.0)) for b in betas}
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", TalbotFallbackWarning)
            for _ in range(10_000):
                beta = betas[rng.integers(len(betas))]
                t = float(10.0 ** rng.uniform(-1.0, 1.0))
                x = float(10.0 ** rng.uniform(-2.0, 3.0))
                assert StablePdf(KwwScale(beta, t)).pdf(x) >= 0.0
        del dists


class TestCdf:
    def test_levy_closed_form(self):
        d = StablePdf(KwwScale(Fraction(1, 2), 1.0))
        assert d.cdf(1.0) == pytest.approx(ERFC_HALF, abs=1e-10)

    def test_limits(self):
        for beta in (Fraction(1, 2), Fraction(2, 3), Fraction(1, 6)):
            d = StablePdf(KwwScale(beta, 1.0))
            c = d.scale.pdf_scale
            b = float(beta)
            e = b / (1.0 - b)
            # left tail decays like exp(-a y^-e): pick y with exponent 45
            a = (1.0 - b) * b ** e
            y_small = (45.0 / a) ** (-1.0 / e)
            assert d.cdf(c * y_small) < 1e-6
            # far right: distribution function complements the tail series
            x_big = c * 1e3
            s, bound = kernels.survival_series(b, 1.0, x_big)
            assert bound < 1e-9
            val = d.cdf(x_big)
            assert val <= 1.0
            assert val + s == pytest.approx(1.0, abs=1e-6)

    def test_matches_quadrature_of_pdf(self):
        d = StablePdf(KwwScale(Fraction(2, 3), 2.0))
        for x in (0.5, 2.0, 10.0):
            ref, _ = quad(d.pdf, 0.0, x, limit=300)
            assert d.cdf(x) == pytest.approx(ref, abs=1e-8)

    def test_survival_complements_cdf(self):
        for beta in (Fraction(1, 3), Fraction(2, 5)):
            d = StablePdf(KwwScale(beta, 1.0))
            for x in (20.0, 200.0):
                assert survival(d, x) == pytest.approx(1.0 - d.cdf(x), abs=2e-7)

    def test_monotone(self):
        d = StablePdf(KwwScale(Fraction(1, 4), 1.0))
        grid = np.logspace(-2, 3, 24)
        vals = [d.cdf(float(x)) for x in grid]
        assert all(b >= a - 1e-12 for a, b in zip(vals, vals[1:]))


class TestComposition:
    def test_quarter_from_two_halves(self):
        d = StablePdf(KwwScale(Fraction(1, 4), 1.0))
        for x in np.logspace(math.log10(0.05), math.log10(20.0), 12):
            x = float(x)
            got = compose_pdf(Fraction(1, 2), Fraction(1, 2), 1.0, x)
            assert abs(got - d.pdf(x)) < 1e-4

    def test_sixth_from_half_and_third(self):
        d = StablePdf(KwwScale(Fraction(1, 6), 1.0))
        for x in (0.05, 0.5, 2.0, 20.0):
            got = compose_pdf(Fraction(1, 2), Fraction(1, 3), 1.0, x)
            assert abs(got - d.pdf(x)) < 1e-4

    def test_order_symmetric(self):
        for x in (0.1, 1.0, 10.0):
            a = compose_pdf(Fraction(1, 2), Fraction(1, 3), 1.0, x)
            b = compose_pdf(Fraction(1, 3), Fraction(1, 2), 1.0, x)
            assert a == pytest.approx(b, abs=1e-9)

    def test_scaled_composition(self):
        t = 2.0
        d = StablePdf(KwwScale(Fraction(1, 4), t))
        for x in (1.0, 30.0):
            assert compose_pdf(Fraction(1, 2), Fraction(1, 2), t, x) == pytest.approx(
                d.pdf(x), abs=1e-6
            )

    def test_composition_backend(self):
        d = StablePdf(KwwScale(Fraction(1, 4), 1.0), backend=Backend.COMPOSITION)
        ref = StablePdf(KwwScale(Fraction(1, 4), 1.0))
        assert d.pdf(1.0) == pytest.approx(ref.pdf(1.0), abs=1e-6)

    def test_unfactorable_beta_rejected(self):
        with pytest.raises(BackendError):
            StablePdf(KwwScale(Fraction(2, 7), 1.0), backend=Backend.COMPOSITION)


class TestNormalizationAndRoundTrip:
    @pytest.mark.parametrize("beta", sorted(CLOSED_FORM_BETAS))
    def test_normalization(self, beta):
        d = StablePdf(KwwScale(beta, 1.0))
        c = d.scale.pdf_scale
        upper = c * 0.35 ** (-1.0 / float(beta))
        body, _ = quad(
            d.pdf,
            0.0,
            upper,
            points=[c * f for f in (0.01, 0.1, 0.5, 2.0, 10.0) if c * f < upper],
            epsabs=1e-9,
            epsrel=1e-9,
            limit=400,
        )
        tail, bound = kernels.survival_series(float(beta), 1.0, upper)
        assert bound < 1e-9
        assert body + tail == pytest.approx(1.0, abs=1e-6)

    def test_lt_round_trip_subset(self):
        # full grid runs in the acceptance suite; spot-check here
        for beta in (Fraction(1, 2), Fraction(2, 5)):
            d = StablePdf(KwwScale(beta, 1.0))
            for s in (0.5, 2.0):
                val, _ = quad(
                    lambda x: math.exp(-s * x) * d.pdf(x),
                    0.0,
                    np.inf,
                    epsabs=1e-10,
                    limit=400,
                )
                assert val == pytest.approx(math.exp(-(s ** float(beta))), abs=1e-6)
