"""Physical network model: fading power laws and the interference transform.

Maps (transmitter density, path-loss exponent, fading) to the
stretched-exponential transform of the aggregate interference power,

    L_I(s) = exp(-pi * lam * E[g^(2/eta)] * Gamma(1 - 2/eta) * s^(2/eta)),

i.e. a KwwScale with beta = 2/eta and t = pi*lam*E[g^(2/eta)]*Gamma(1-2/eta).
Units: distances in km, density per km^2, powers relative to the mean
received power (transmit power is absorbed into the fading mean).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

from scipy.integrate import quad

from ._backend import kernels
from .errors import DomainError, QuadratureError
from .stable import KwwScale, eta_to_beta

__all__ = [
    "NetworkParams",
    "Rayleigh",
    "Nakagami",
    "Rician",
    "FadingModel",
    "fractional_moment",
    "rician_as_nakagami",
    "kww_scale",
    "laplace_transform",
    "rayleigh_lt_identity_check",
]


@dataclass(frozen=True)
class NetworkParams:
    """Homogeneous Poisson field: density per km^2 and path-loss exponent."""

    lam: float
    eta: int

    def __post_init__(self):
        if not self.lam > 0.0:
            raise DomainError(f"density must be positive, got {self.lam}")
        eta_to_beta(self.eta)  # validates eta >= 3
        object.__setattr__(self, "eta", int(self.eta))


@dataclass(frozen=True)
class Rayleigh:
    """Exponential fading power with rate mu (mean 1/mu)."""

    mu: float = 1.0

    def __post_init__(self):
        if not self.mu > 0.0:
            raise DomainError(f"Rayleigh rate must be positive, got {self.mu}")

    @property
    def mean_power(self) -> float:
        return 1.0 / self.mu

    def power_pdf(self, g: float) -> float:
        return self.mu * math.exp(-self.mu * g) if g >= 0.0 else 0.0

    def power_survival(self, g: float) -> float:
        return math.exp(-self.mu * g) if g > 0.0 else 1.0

    def survival_inverse(self, p: float) -> float:
        return -math.log(p) / self.mu

    def sample_power(self, rng, n: int):
        return rng.exponential(1.0 / self.mu, size=n)


@dataclass(frozen=True)
class Nakagami:
    """Gamma-distributed fading power: shape m, mean pr."""

    m: float
    pr: float = 1.0

    def __post_init__(self):
        if not self.m >= 0.5:
            raise DomainError(f"Nakagami shape must be >= 0.5, got {self.m}")
        if not self.pr > 0.0:
            raise DomainError(f"mean power must be positive, got {self.pr}")

    @property
    def mean_power(self) -> float:
        return self.pr

    def power_pdf(self, g: float) -> float:
        if g <= 0.0:
            return 0.0
        rate = self.m / self.pr
        return math.exp(
            self.m * math.log(rate)
            + (self.m - 1.0) * math.log(g)
            - rate * g
            - kernels.lgamma(self.m)
        )

    def power_survival(self, g: float) -> float:
        from scipy.special import gammaincc

        return float(gammaincc(self.m, self.m * g / self.pr)) if g > 0.0 else 1.0

    def survival_inverse(self, p: float) -> float:
        from scipy.special import gammainccinv

        return float(gammainccinv(self.m, p)) * self.pr / self.m

    def sample_power(self, rng, n: int):
        return rng.gamma(shape=self.m, scale=self.pr / self.m, size=n)


@dataclass(frozen=True)
class Rician:
    """Line-of-sight fading with K-factor k >= 0 and mean power pr.

    Power density ((1+k)/pr) exp(-k - (1+k) g / pr) I_0(2 sqrt(k (1+k) g / pr)).
    """

    k: float
    pr: float = 1.0

    def __post_init__(self):
        if self.k < 0.0:
            raise DomainError(f"K-factor must be >= 0, got {self.k}")
        if not self.pr > 0.0:
            raise DomainError(f"mean power must be positive, got {self.pr}")

    @property
    def mean_power(self) -> float:
        return self.pr

    def power_pdf(self, g: float) -> float:
        if g <= 0.0:
            return 0.0
        a = (1.0 + self.k) / self.pr
        arg = -self.k - a * g
        if arg < -700.0:
            return 0.0
        return a * math.exp(arg) * kernels.bessel_i0(2.0 * math.sqrt(self.k * (1.0 + self.k) * g / self.pr))

    def power_survival(self, g: float) -> float:
        from scipy.stats import ncx2

        if g <= 0.0:
            return 1.0
        # power = pr/(2(1+k)) * noncentral chi^2(2 dof, nc = 2k)
        return float(ncx2.sf(2.0 * (1.0 + self.k) * g / self.pr, df=2, nc=2.0 * self.k))

    def survival_inverse(self, p: float) -> float:
        from scipy.stats import ncx2

        return float(ncx2.isf(p, df=2, nc=2.0 * self.k)) * self.pr / (2.0 * (1.0 + self.k))

    def sample_power(self, rng, n: int):
        # exact noncentral chi-square construction (2 dof)
        nu = math.sqrt(self.k * self.pr / (1.0 + self.k))
        sigma = math.sqrt(self.pr / (2.0 * (1.0 + self.k)))
        x = nu + sigma * rng.standard_normal(n)
        y = sigma * rng.standard_normal(n)
        return x * x + y * y


FadingModel = Union[Rayleigh, Nakagami, Rician]


def rician_as_nakagami(f: Rician) -> Nakagami:
    """Moment-matched Nakagami stand-in: m = (K+1)^2 / (2K+1), same mean.

    The match is approximate; fractional moments differ by up to a few
    percent from the exact line-of-sight law.
    """
    return Nakagami(m=(f.k + 1.0) ** 2 / (2.0 * f.k + 1.0), pr=f.pr)


def fractional_moment(f: FadingModel, eta: int) -> float:
    """E[g^(2/eta)] of the fading power.

    Closed forms for the gamma-type laws; the line-of-sight law integrates
    its density numerically (absolute tolerance 1e-9).
    """
    beta, _ = eta_to_beta(eta)
    q = float(beta)
    if isinstance(f, Rayleigh):
        return kernels.gamma(1.0 + q) / f.mu ** q
    if isinstance(f, Nakagami):
        return math.exp(
            kernels.lgamma(f.m + q) - kernels.lgamma(f.m) - q * math.log(f.m / f.pr)
        )
    if isinstance(f, Rician):
        upper = f.survival_inverse(1e-12)
        val, abserr = quad(
            lambda g: g ** q * f.power_pdf(g), 0.0, upper, epsabs=1e-9, epsrel=1e-10, limit=400
        )
        if abserr > 1e-8:
            raise QuadratureError(
                f"Rician moment quadrature error {abserr:.2e} exceeds budget"
            )
        return val
    raise DomainError(f"unsupported fading model {f!r}")


def kww_scale(net: NetworkParams, f: FadingModel) -> KwwScale:
    """Transform parameters of the aggregate interference for this network."""
    beta, _ = eta_to_beta(net.eta)
    q = float(beta)
    t = math.pi * net.lam * fractional_moment(f, net.eta) * kernels.gamma(1.0 - q)
    return KwwScale(beta, t)


def laplace_transform(scale: KwwScale, s: float) -> float:
    """exp(-t * s^beta) for s >= 0."""
    s = float(s)
    if s < 0.0:
        raise DomainError(f"transform variable must be >= 0, got {s}")
    if s == 0.0:
        return 1.0
    return math.exp(-scale.t * s ** float(scale.beta))


def rayleigh_lt_identity_check(
    net: NetworkParams, mu: float, s_grid=(0.1, 0.5, 1.0, 2.0, 5.0)
) -> float:
    """Max relative deviation between the two Rayleigh transform routes.

    Route one goes through the generic moment pipeline; route two is the
    specialized form exp(-pi*lam*(s/mu)^(2/eta) * pi*(2/eta)/sin(pi*2/eta)).
    The two coincide exactly through Gamma(1+x)Gamma(1-x) = pi x / sin(pi x);
    the returned deviation measures accumulated rounding only.
    """
    scale = kww_scale(net, Rayleigh(mu=mu))
    q = 2.0 / net.eta
    worst = 0.0
    for s in s_grid:
        generic = laplace_transform(scale, s)
        direct = math.exp(
            -math.pi * net.lam * (s / mu) ** q * math.pi * q / math.sin(math.pi * q)
        )
        denom = max(abs(direct), 1e-300)
        worst = max(worst, abs(generic - direct) / denom)
    return worst
