"""Self-contained special functions: Gamma, modified Bessel, pFq series.

Public wrappers around the kernel backend; this layer owns argument
validation and the documented accuracy contracts:

* ``gamma``: relative error <= 1e-13 on [0.1, 30] (Lanczos, g=7).
* ``bessel_k``: relative error <= 1e-10 on [1e-3, 50] for orders 1/3, 2/3.
  Regimes: ascending reflection series for z < 2, Steed continued fraction
  for 2 <= z < 40, asymptotic expansion beyond.
* ``bessel_i0``: relative error <= 1e-12 up to z = 30.
* ``phyp``: direct pFq series (p <= q), compensated accumulation, at most
  500 terms; reliable for |z| <= 1e4 (callers switch to the Talbot backend
  past that).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from ._backend import kernels
from .errors import ConvergenceError, DomainError, PoleError

__all__ = [
    "HypergeometricSpec",
    "BesselOrder",
    "gamma",
    "lgamma",
    "bessel_k",
    "bessel_i0",
    "phyp",
    "phyp_full",
    "kummer_1f1",
    "MAX_SERIES_TERMS",
    "RELIABLE_ARG_BOUND",
]

MAX_SERIES_TERMS = kernels.MAX_SERIES_TERMS
RELIABLE_ARG_BOUND = kernels.RELIABLE_ARG_BOUND


def _is_nonpositive_integer(x: float) -> bool:
    return x <= 0.0 and x == math.floor(x)


@dataclass(frozen=True)
class HypergeometricSpec:
    """Parameter block of a generalized hypergeometric series pFq."""

    upper: tuple[float, ...]
    lower: tuple[float, ...]

    def __init__(self, upper: Sequence[float], lower: Sequence[float]):
        upper = tuple(float(a) for a in upper)
        lower = tuple(float(b) for b in lower)
        if len(upper) > len(lower):
            raise DomainError(
                f"pFq with p={len(upper)} > q={len(lower)} is not supported "
                "(only everywhere-convergent series)"
            )
        for b in lower:
            if _is_nonpositive_integer(b):
                raise PoleError(f"lower parameter {b} is a non-positive integer")
        object.__setattr__(self, "upper", upper)
        object.__setattr__(self, "lower", lower)


@dataclass(frozen=True)
class BesselOrder:
    """Order of a modified Bessel function of the second kind."""

    order: float

    def __post_init__(self):
        if self.order < 0.0:
            raise DomainError(f"Bessel order must be >= 0, got {self.order}")
        if self.order == math.floor(self.order):
            raise DomainError(
                "integer Bessel orders are out of scope (reflection "
                "construction has a pole there)"
            )


def gamma(x: float) -> float:
    """Gamma(x) for real x away from the poles at 0, -1, -2, ..."""
    x = float(x)
    if _is_nonpositive_integer(x):
        raise PoleError(f"gamma pole at x={x}")
    return kernels.gamma(x)


def lgamma(x: float) -> float:
    """log Gamma(x) for x > 0."""
    x = float(x)
    if x <= 0.0:
        raise DomainError(f"lgamma requires x > 0, got {x}")
    return kernels.lgamma(x)


def bessel_k(v: float | BesselOrder, z: float) -> float:
    """Modified Bessel function of the second kind K_v(z), z > 0."""
    if isinstance(v, BesselOrder):
        v = v.order
    else:
        v = BesselOrder(float(v)).order
    z = float(z)
    if z <= 0.0:
        raise DomainError(f"bessel_k requires z > 0, got {z}")
    return kernels.bessel_k(v, z)


def bessel_i0(z: float) -> float:
    """Modified Bessel function of the first kind I_0(z), z >= 0."""
    z = float(z)
    if z < 0.0:
        raise DomainError(f"bessel_i0 requires z >= 0, got {z}")
    return kernels.bessel_i0(z)


def phyp_full(spec: HypergeometricSpec, z: float):
    """pFq value plus diagnostics: ``(value, converged, max_abs_term)``."""
    if not isinstance(spec, HypergeometricSpec):
        spec = HypergeometricSpec(*spec)
    return kernels.phyp(spec.upper, spec.lower, float(z))


def phyp(spec: HypergeometricSpec, z: float) -> float:
    """Generalized hypergeometric series pFq(upper; lower; z).

    Raises ConvergenceError when the term budget is exhausted; callers that
    can should then switch to the Talbot backend.
    """
    value, converged, _ = phyp_full(spec, z)
    if not converged:
        raise ConvergenceError(
            f"pFq series did not converge within {MAX_SERIES_TERMS} terms at z={z}"
        )
    return value


def kummer_1f1(a: float, b: float, z: float) -> float:
    """Confluent 1F1(a; b; z) with the Kummer transform for z < 0."""
    if _is_nonpositive_integer(b):
        raise PoleError(f"1F1 lower parameter {b} is a non-positive integer")
    value, converged, _ = kernels.hyp1f1(float(a), float(b), float(z))
    if not converged:
        raise ConvergenceError(f"1F1({a};{b};{z}) did not converge")
    return value
