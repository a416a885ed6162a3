"""Scaled one-sided stable densities: inverse transforms of exp(-t*s^beta).

The closed-form backend covers beta in {1/2, 1/3, 2/3, 1/4, 1/5, 2/5, 1/6};
every other beta in (0, 1) is served by the fixed-Talbot backend, and
products of two supported exponents by the composition integral.

Closed-form evaluations carry a running absolute-error estimate (largest
intermediate magnitude times machine epsilon).  When that estimate exceeds
``FALLBACK_GUARD`` - deep tails at extreme scales, where the alternating
hypergeometric families cancel catastrophically - the evaluation silently
falls back to Talbot inversion and the fallback is counted on the
distribution object.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from scipy.integrate import quad

from ._backend import kernels
from .errors import BackendError, DomainError, QuadratureError

__all__ = [
    "CLOSED_FORM_BETAS",
    "FALLBACK_GUARD",
    "Backend",
    "KwwScale",
    "StablePdf",
    "TalbotFallbackWarning",
    "eta_to_beta",
    "pdf",
    "cdf",
    "survival",
    "compose_pdf",
]

CLOSED_FORM_BETAS = frozenset(Fraction(n, d) for n, d in kernels.CLOSED_FORM_BETAS)

# Absolute-error estimate beyond which a closed-form evaluation defers to
# Talbot inversion (whose own noise floor is ~1e-9 at 32 nodes).
FALLBACK_GUARD = 1e-9

_DEFAULT_TALBOT_NODES = 32


class TalbotFallbackWarning(UserWarning):
    """A closed-form evaluation was replaced by Talbot inversion."""


class Backend(Enum):
    CLOSED_FORM = "closed-form"
    TALBOT = "talbot"
    COMPOSITION = "composition"


def _as_beta(beta) -> Fraction:
    if isinstance(beta, Fraction):
        frac = beta
    elif isinstance(beta, int):
        raise DomainError("beta must lie strictly inside (0, 1)")
    elif isinstance(beta, float):
        frac = Fraction(beta).limit_denominator(1_000_000)
        if abs(float(frac) - beta) > 1e-12:
            raise DomainError(f"beta={beta} is not recognizably rational")
    else:
        frac = Fraction(beta)
    if not (0 < frac < 1):
        raise DomainError(f"beta must lie in (0, 1), got {frac}")
    return frac


@dataclass(frozen=True)
class KwwScale:
    """Parameters (beta, t) of the stretched-exponential transform exp(-t*s^beta)."""

    beta: Fraction
    t: float

    def __init__(self, beta, t: float):
        object.__setattr__(self, "beta", _as_beta(beta))
        t = float(t)
        if not (t > 0.0) or math.isinf(t):
            raise DomainError(f"scale t must be positive and finite, got {t}")
        object.__setattr__(self, "t", t)

    @property
    def has_closed_form(self) -> bool:
        return self.beta in CLOSED_FORM_BETAS

    @property
    def pdf_scale(self) -> float:
        """t**(1/beta): the x-axis dilation relative to the unit density."""
        return self.t ** (1.0 / float(self.beta))


def eta_to_beta(eta: int) -> tuple[Fraction, bool]:
    """Map a path-loss exponent to (beta = 2/eta, closed-form availability).

    eta <= 2 is rejected: the interference diverges (Gamma(1 - 2/eta) pole).
    """
    if eta != int(eta):
        raise DomainError(f"eta must be an integer, got {eta}")
    eta = int(eta)
    if eta <= 2:
        raise DomainError(
            f"eta={eta} is out of range: the aggregate interference only has a "
            "distribution for eta > 2 (Gamma(1 - 2/eta) pole at eta = 2)"
        )
    beta = Fraction(2, eta)
    return beta, beta in CLOSED_FORM_BETAS


def _composition_factors(beta: Fraction):
    for a in sorted(CLOSED_FORM_BETAS, reverse=True):
        for b in sorted(CLOSED_FORM_BETAS, reverse=True):
            if a * b == beta:
                return a, b
    return None


@dataclass
class StablePdf:
    """Evaluable density of the inverse transform of exp(-t*s^beta).

    Immutable in all evaluation-relevant state; ``fallbacks`` only counts
    closed-form evaluations that deferred to Talbot inversion.
    """

    scale: KwwScale
    backend: Backend | None = None
    talbot_nodes: int = _DEFAULT_TALBOT_NODES
    fallbacks: int = field(default=0, init=False, repr=False)

    def __post_init__(self):
        if self.backend is None:
            self.backend = (
                Backend.CLOSED_FORM if self.scale.has_closed_form else Backend.TALBOT
            )
        if self.backend is Backend.CLOSED_FORM and not self.scale.has_closed_form:
            raise BackendError(
                f"no closed form for beta={self.scale.beta}; use the Talbot or "
                "composition backend"
            )
        if self.backend is Backend.COMPOSITION:
            if _composition_factors(self.scale.beta) is None:
                raise BackendError(
                    f"beta={self.scale.beta} does not factor into two "
                    "closed-form exponents"
                )

    def pdf(self, x: float) -> float:
        return pdf(self, x)

    def cdf(self, x: float) -> float:
        return cdf(self, x)

    def record_fallback(self):
        self.fallbacks += 1
        warnings.warn(
            f"closed form for beta={self.scale.beta} lost too much precision; "
            "using Talbot inversion for this point",
            TalbotFallbackWarning,
            stacklevel=3,
        )


def _talbot_point(d: StablePdf, x: float) -> float:
    beta = float(d.scale.beta)
    return kernels.talbot_kww(beta, d.scale.t, x, d.talbot_nodes)


def pdf(d: StablePdf, x: float) -> float:
    """Density at interference power x > 0 (non-negative by construction)."""
    x = float(x)
    if x <= 0.0:
        raise DomainError(f"interference power must be positive, got x={x}")
    if d.backend is Backend.TALBOT:
        return max(0.0, _talbot_point(d, x))
    if d.backend is Backend.COMPOSITION:
        ba, bb = _composition_factors(d.scale.beta)
        return compose_pdf(ba, bb, d.scale.t, x)
    frac = d.scale.beta
    value, err = kernels.closed_pdf(frac.numerator, frac.denominator, d.scale.t, x)
    if not (err <= FALLBACK_GUARD):
        d.record_fallback()
        return max(0.0, _talbot_point(d, x))
    return max(0.0, value)


def survival(d: StablePdf, x: float) -> float:
    """Upper-tail probability P[I > x] via the stable tail series.

    Falls back to quadrature through ``cdf`` when the series is unreliable
    at this x (scale variable t*x^-beta too large).
    """
    x = float(x)
    if x <= 0.0:
        return 1.0
    beta = float(d.scale.beta)
    if beta == 0.5:
        return math.erf(d.scale.t / (2.0 * math.sqrt(x)))
    s, bound = kernels.survival_series(beta, d.scale.t, x)
    if bound < 1e-10 and 0.0 <= s <= 1.0:
        return s
    return 1.0 - cdf(d, x)


def cdf(d: StablePdf, x: float) -> float:
    """P[I <= x] by adaptive quadrature of the density (abs tol 1e-9).

    beta = 1/2 uses the closed form erfc(t / (2 sqrt(x))).  Far in the
    right tail, where a quadrature interval would dwarf the distribution
    scale, the convergent tail series takes over (same series as the
    normalization tail handling).
    """
    x = float(x)
    if x <= 0.0:
        raise DomainError(f"interference power must be positive, got x={x}")
    if d.backend is not Backend.COMPOSITION and float(d.scale.beta) == 0.5:
        return math.erfc(d.scale.t / (2.0 * math.sqrt(x)))
    s, bound = kernels.survival_series(float(d.scale.beta), d.scale.t, x)
    if bound < 1e-10 and 0.0 <= s <= 1.0:
        return 1.0 - s
    c = d.scale.pdf_scale
    pts = [p for p in (1e-2 * c, 0.1 * c, 0.5 * c, 2.0 * c, 10.0 * c) if 0.0 < p < x]
    val, abserr = quad(
        lambda u: pdf(d, u), 0.0, x, points=pts or None, epsabs=1e-9, epsrel=1e-8, limit=200
    )
    if abserr > 1e-6:
        raise QuadratureError(
            f"cdf quadrature error estimate {abserr:.2e} exceeds budget at x={x}"
        )
    return min(1.0, max(0.0, val))


def cdf_grid(d: StablePdf, xs) -> list[float]:
    """CDF on an increasing grid by cumulative segment quadrature."""
    if float(d.scale.beta) == 0.5 and d.backend is not Backend.COMPOSITION:
        return [cdf(d, x) for x in xs]
    out = []
    total = 0.0
    prev = 0.0
    for x in xs:
        if x <= prev:
            raise DomainError("cdf_grid needs a strictly increasing positive grid")
        seg, _ = quad(lambda u: pdf(d, u), prev, float(x), epsabs=1e-10, epsrel=1e-8, limit=200)
        total += seg
        out.append(min(1.0, max(0.0, total)))
        prev = float(x)
    return out


def compose_pdf(beta_a, beta_b, t: float, x: float) -> float:
    """Density of the product-exponent law from two lower-order ones.

    Evaluates f_{beta_a * beta_b} at x through the mixing integral
    int_0^inf u^(-1/beta_a) f_a(x' u^(-1/beta_a)) f_b(u) du on the unit
    scale, then applies the dilation for the requested t.
    """
    fa = Fraction(_as_beta(beta_a))
    fb = Fraction(_as_beta(beta_b))
    prod = fa * fb
    if not (0 < prod < 1):
        raise DomainError(f"product exponent {prod} outside (0, 1)")
    x = float(x)
    if x <= 0.0:
        raise DomainError(f"interference power must be positive, got x={x}")
    da = StablePdf(KwwScale(fa, 1.0))
    db = StablePdf(KwwScale(fb, 1.0))
    c = float(t) ** (1.0 / float(prod))
    y = x / c
    inv_a = 1.0 / float(fa)

    def integrand(u: float) -> float:
        if u <= 0.0:
            return 0.0
        scale = u ** (-inv_a)
        return scale * pdf(da, y * scale) * pdf(db, u)

    val, abserr = quad(integrand, 0.0, math.inf, epsabs=1e-9, epsrel=1e-8, limit=400)
    if abserr > 1e-6:
        raise QuadratureError(
            f"composition quadrature error {abserr:.2e} exceeds budget at x={x}"
        )
    return max(0.0, val / c)
