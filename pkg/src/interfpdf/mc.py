"""Monte-Carlo ground truth: Poisson transmitter fields with fading.

Each trial drops N ~ Poisson(lam * window^2) transmitters uniformly in a
window centered on the receiver, applies i.i.d. fading, and sums powers
g_i * R_i^(-eta).  The serving transmitter is an extra point at the fixed
serving distance (it is not drawn from the Poisson field and does not
contribute interference); no exclusion zone is applied.

Determinism: trial i uses the child stream i of SeedSequence(seed), so
results are bit-identical for a given (seed, trials) on any platform and
trials can be evaluated in parallel without changing the draw.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError
from .interference import FadingModel, NetworkParams, Rayleigh

__all__ = [
    "SimConfig",
    "TrialRecord",
    "GUARD_RADIUS_KM",
    "trial_rng",
    "sample_field",
    "run_trials",
    "EmpiricalCdf",
    "empirical_cdf",
    "empirical_coverage",
    "ks_statistic",
    "truncation_tail_mean",
]

# Points closer than 1 m are clamped to 1 m so a single draw cannot blow up
# the unbounded r^-eta law; activation probability < lam * pi * 1e-6 per trial.
GUARD_RADIUS_KM = 1e-3

_FIELDS = [("interference", float), ("signal", float), ("sinr", float)]


@dataclass(frozen=True)
class TrialRecord:
    interference: float
    signal: float
    sinr: float


@dataclass(frozen=True)
class SimConfig:
    """One simulated scenario; ``window_km`` is the full square width."""

    net: NetworkParams
    interference_fading: FadingModel
    signal_fading: FadingModel
    window_km: float = 40.0
    trials: int = 2000
    seed: int = 0
    serving_distance_km: float = 0.25
    noise: float = 0.0

    def __post_init__(self):
        if not self.window_km > 0.0:
            raise DomainError(f"window must be positive, got {self.window_km}")
        if self.trials < 1:
            raise DomainError(f"need at least one trial, got {self.trials}")
        if not 0.0 < self.serving_distance_km < 0.5 * self.window_km:
            raise DomainError(
                f"serving distance {self.serving_distance_km} must sit inside the window"
            )
        if self.noise < 0.0:
            raise DomainError(f"noise power must be >= 0, got {self.noise}")


def trial_rng(seed: int, index: int) -> np.random.Generator:
    """Deterministic per-trial substream (seed, trial-index)."""
    child = np.random.SeedSequence(seed).spawn(index + 1)[index]
    return np.random.Generator(np.random.PCG64(child))


def _spawn_streams(seed: int, n: int):
    return [
        np.random.Generator(np.random.PCG64(s))
        for s in np.random.SeedSequence(seed).spawn(n)
    ]


def sample_field(cfg: SimConfig, rng: np.random.Generator) -> TrialRecord:
    """Draw one trial: aggregate interference, serving signal, SINR."""
    half = 0.5 * cfg.window_km
    area = cfg.window_km * cfg.window_km
    n = rng.poisson(cfg.net.lam * area)
    if n > 0:
        xy = rng.uniform(-half, half, size=(n, 2))
        r = np.hypot(xy[:, 0], xy[:, 1])
        np.maximum(r, GUARD_RADIUS_KM, out=r)
        g = cfg.interference_fading.sample_power(rng, n)
        interference = float(np.sum(g * r ** (-float(cfg.net.eta))))
    else:
        interference = 0.0
    h = float(cfg.signal_fading.sample_power(rng, 1)[0])
    signal = h * cfg.serving_distance_km ** (-float(cfg.net.eta))
    denom = interference + cfg.noise
    sinr = signal / denom if denom > 0.0 else math.inf
    return TrialRecord(interference=interference, signal=signal, sinr=sinr)


def run_trials(cfg: SimConfig) -> np.ndarray:
    """All trials as a structured array (interference, signal, sinr)."""
    out = np.empty(cfg.trials, dtype=_FIELDS)
    for i, rng in enumerate(_spawn_streams(cfg.seed, cfg.trials)):
        rec = sample_field(cfg, rng)
        out[i] = (rec.interference, rec.signal, rec.sinr)
    return out


def _extract(records, fieldname: str | None) -> np.ndarray:
    if isinstance(records, np.ndarray) and records.dtype.names:
        if fieldname is None:
            raise DomainError("field name required for structured records")
        return np.asarray(records[fieldname], dtype=float)
    if fieldname is not None and len(records) and isinstance(records[0], TrialRecord):
        return np.array([getattr(rec, fieldname) for rec in records], dtype=float)
    return np.asarray(records, dtype=float)


class EmpiricalCdf:
    """Right-continuous empirical step function of a sample."""

    def __init__(self, samples: np.ndarray):
        if len(samples) == 0:
            raise DomainError("empirical CDF needs at least one sample")
        self.samples = np.sort(np.asarray(samples, dtype=float))
        self.n = len(self.samples)

    def __call__(self, x) -> np.ndarray | float:
        idx = np.searchsorted(self.samples, x, side="right")
        return idx / self.n


def empirical_cdf(records, fieldname: str = "interference") -> EmpiricalCdf:
    """Empirical CDF of one trial field ('interference' or 'sinr')."""
    if fieldname not in ("interference", "sinr", "signal"):
        raise DomainError(f"unknown field {fieldname!r}")
    return EmpiricalCdf(_extract(records, fieldname))


def empirical_coverage(records, thresholds: Sequence[float]) -> np.ndarray:
    """Fraction of trials with SINR above each threshold (linear units)."""
    if len(thresholds) == 0:
        raise DomainError("threshold grid must be non-empty")
    sinr = _extract(records, "sinr")
    t = np.asarray(thresholds, dtype=float)
    return (sinr[None, :] > t[:, None]).mean(axis=1)


def ks_statistic(samples, cdf_callable) -> float:
    """Kolmogorov-Smirnov distance between a sample and a model CDF."""
    xs = np.sort(_extract(samples, None))
    n = len(xs)
    model = np.array([cdf_callable(x) for x in xs], dtype=float)
    upper = np.abs(np.arange(1, n + 1) / n - model)
    lower = np.abs(np.arange(0, n) / n - model)
    return float(np.max(np.maximum(upper, lower)))


def truncation_tail_mean(cfg: SimConfig) -> float:
    """Mean interference arriving from beyond the simulated window,
    2*pi*lam*E[g] * int_{W/2}^inf r^(1-eta) dr (far-field bound)."""
    half = 0.5 * cfg.window_km
    eta = float(cfg.net.eta)
    return (
        2.0
        * math.pi
        * cfg.net.lam
        * cfg.interference_fading.mean_power
        * half ** (2.0 - eta)
        / (eta - 2.0)
    )
