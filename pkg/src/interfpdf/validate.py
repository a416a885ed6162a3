"""Self-validation suite: every analytic identity the library promises.

Each check returns a measured error against its budget; the CLI `validate`
command prints one line per check and exits nonzero on any failure.  The
full grids mirror the acceptance suite; ``quick=True`` thins them to run
in a few seconds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.integrate import quad

from ._backend import kernels
from .interference import (
    Nakagami,
    NetworkParams,
    Rayleigh,
    fractional_moment,
    kww_scale,
    laplace_transform,
    rayleigh_lt_identity_check,
)
from .stable import CLOSED_FORM_BETAS, KwwScale, StablePdf, compose_pdf, survival
from .talbot import TalbotConfig, invert_kww

__all__ = ["CheckResult", "run_validation", "format_report"]


@dataclass
class CheckResult:
    name: str
    measured: float
    budget: float
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.measured <= self.budget


def _log_grid(lo: float, hi: float, n: int) -> np.ndarray:
    return np.logspace(math.log10(lo), math.log10(hi), n)


def _betas(quick: bool):
    betas = sorted(CLOSED_FORM_BETAS)
    return betas[::2] if quick else betas


def _ts(quick: bool):
    return (1.0,) if quick else (0.5, 1.0, math.pi ** 2)


def check_normalization(quick: bool = False) -> CheckResult:
    """int pdf = 1 within 1e-6 (quadrature to A plus the analytic tail)."""
    worst = 0.0
    detail = ""
    for beta in _betas(quick):
        for t in _ts(quick):
            d = StablePdf(KwwScale(beta, t))
            c = d.scale.pdf_scale
            upper = c * 0.35 ** (-1.0 / float(beta))  # tail series arg ~0.35 there
            pts = [c * f for f in (1e-2, 0.1, 0.5, 2.0, 10.0) if c * f < upper]
            body, _ = quad(d.pdf, 0.0, upper, points=pts, epsabs=1e-9, epsrel=1e-9, limit=400)
            tail, bound = kernels.survival_series(float(beta), t, upper)
            err = abs(body + tail - 1.0) + bound
            if err > worst:
                worst, detail = err, f"beta={beta} t={t:g}"
    return CheckResult("normalization", worst, 1e-6, detail)


def check_lt_roundtrip(quick: bool = False) -> CheckResult:
    """Numerical transform of each closed form reproduces exp(-t s^beta)."""
    s_grid = (0.5, 1.0) if quick else (0.1, 0.5, 1.0, 2.0, 5.0)
    worst = 0.0
    detail = ""
    for beta in _betas(quick):
        for t in _ts(quick):
            d = StablePdf(KwwScale(beta, t))
            c = d.scale.pdf_scale
            for s in s_grid:
                target = laplace_transform(d.scale, s)
                split = min(10.0 * c + 10.0 / s, 1e6)
                # anchor both the distribution scale and the transform
                # scale 1/s: whichever is smaller carries the integrand
                pts = sorted(
                    p
                    for p in (
                        [c * f for f in (1e-2, 0.1, 0.5, 2.0)]
                        + [f / s for f in (0.1, 1.0, 5.0, 20.0)]
                    )
                    if 0.0 < p < split
                )
                a, _ = quad(
                    lambda x: math.exp(-s * x) * d.pdf(x),
                    0.0,
                    split,
                    points=pts,
                    epsabs=1e-9,
                    epsrel=1e-9,
                    limit=400,
                )
                b, _ = quad(
                    lambda x: math.exp(-s * x) * d.pdf(x),
                    split,
                    math.inf,
                    epsabs=1e-10,
                    limit=200,
                )
                err = abs(a + b - target)
                if err > worst:
                    worst, detail = err, f"beta={beta} t={t:g} s={s}"
    return CheckResult("lt-roundtrip", worst, 1e-6, detail)


def check_talbot_agreement(quick: bool = False) -> CheckResult:
    """Closed-form vs Talbot backend over the working grid, abs diff."""
    grid = _log_grid(0.05, 50.0, 40 if quick else 200)
    worst = 0.0
    detail = ""
    for beta in _betas(quick):
        for t in _ts(quick):
            d = StablePdf(KwwScale(beta, t))
            tal = invert_kww(d.scale, grid, TalbotConfig(nodes=d.talbot_nodes))
            closed = np.array([d.pdf(x) for x in grid])
            err = float(np.max(np.abs(tal - closed)))
            if err > worst:
                worst, detail = err, f"beta={beta} t={t:g}"
    return CheckResult("talbot-agreement", worst, 1e-6, detail)


def check_talbot_self_convergence(quick: bool = False) -> CheckResult:
    """Node-count sensitivity of the Talbot oracle on the reference grid.

    32 nodes sit at the double-precision truncation/roundoff valley floor;
    the 64-node estimate carries ~1e-8 contour roundoff, which sets this
    budget (5e-8: measured floor with margin).
    """
    grid = _log_grid(0.05, 50.0, 40 if quick else 200)
    worst = 0.0
    detail = ""
    for eta in (3, 4, 5, 6):
        scale = kww_scale(NetworkParams(lam=2.0, eta=eta), Rayleigh(mu=1.0))
        a32 = invert_kww(scale, grid, TalbotConfig(nodes=32))
        a64 = invert_kww(scale, grid, TalbotConfig(nodes=64))
        err = float(np.max(np.abs(a32 - a64)))
        if err > worst:
            worst, detail = err, f"eta={eta}"
    return CheckResult("talbot-self-convergence", worst, 5e-8, detail)


def check_composition(beta: Fraction | None = None, quick: bool = False) -> CheckResult:
    """Product-exponent mixing integral vs the direct closed form."""
    targets = {
        Fraction(1, 4): (Fraction(1, 2), Fraction(1, 2)),
        Fraction(1, 6): (Fraction(1, 2), Fraction(1, 3)),
    }
    if beta is not None:
        targets = {beta: targets[beta]}
    grid = _log_grid(0.05, 20.0, 8 if quick else 25)
    worst = 0.0
    detail = ""
    for prod, (ba, bb) in targets.items():
        d = StablePdf(KwwScale(prod, 1.0))
        for x in grid:
            err = abs(compose_pdf(ba, bb, 1.0, float(x)) - d.pdf(float(x)))
            if err > worst:
                worst, detail = err, f"beta={prod} x={x:.3g}"
    return CheckResult("composition", worst, 1e-4, detail)


def check_composition_symmetry(quick: bool = False) -> CheckResult:
    """Swapping the two factor exponents leaves the integral unchanged."""
    grid = (0.2, 1.0, 5.0) if quick else (0.05, 0.2, 1.0, 5.0, 20.0)
    worst = 0.0
    for x in grid:
        a = compose_pdf(Fraction(1, 2), Fraction(1, 3), 1.0, x)
        b = compose_pdf(Fraction(1, 3), Fraction(1, 2), 1.0, x)
        worst = max(worst, abs(a - b))
    return CheckResult("composition-symmetry", worst, 1e-6)


def check_rayleigh_identity(quick: bool = False) -> CheckResult:
    """Specialized Rayleigh transform equals the generic moment pipeline."""
    worst = 0.0
    detail = ""
    for eta in (3, 4) if quick else (3, 4, 5, 6, 8, 10, 12):
        for mu in (0.5, 1.0, 2.0):
            for lam in (0.5, 2.0):
                err = rayleigh_lt_identity_check(NetworkParams(lam=lam, eta=eta), mu)
                if err > worst:
                    worst, detail = err, f"eta={eta} mu={mu} lam={lam}"
    return CheckResult("rayleigh-lt-identity", worst, 1e-12, detail)


def check_nakagami_rayleigh_reduction(quick: bool = False) -> CheckResult:
    """Nakagami with m=1 carries the same fractional moment as Rayleigh."""
    worst = 0.0
    for eta in (3, 4) if quick else (3, 4, 5, 6, 8, 10, 12):
        for pr in (0.5, 1.0, 2.0):
            a = fractional_moment(Nakagami(m=1.0, pr=pr), eta)
            b = fractional_moment(Rayleigh(mu=1.0 / pr), eta)
            worst = max(worst, abs(a - b) / b)
    return CheckResult("nakagami-m1-rayleigh", worst, 1e-13)


def check_no_fading_limit(quick: bool = False) -> CheckResult:
    """m -> infinity Nakagami moment approaches pr^(2/eta) (no fading)."""
    worst = 0.0
    for eta in (3, 4) if quick else (3, 4, 6):
        for pr in (0.5, 2.0):
            m = 1e4
            a = fractional_moment(Nakagami(m=m, pr=pr), eta)
            b = pr ** (2.0 / eta)
            worst = max(worst, abs(a - b) / b)
    return CheckResult("no-fading-limit", worst, 1e-3)


def check_nonnegativity(quick: bool = False) -> CheckResult:
    """Density never negative over random (beta, t, x) draws."""
    rng = np.random.default_rng(20260810)
    n = 1000 if quick else 10_000
    betas = sorted(CLOSED_FORM_BETAS)
    worst = 0.0
    for _ in range(n):
        beta = betas[rng.integers(len(betas))]
        t = float(10.0 ** rng.uniform(-1.0, 1.0))
        x = float(10.0 ** rng.uniform(-2.0, 3.0))
        v = StablePdf(KwwScale(beta, t)).pdf(x)
        worst = max(worst, -min(v, 0.0))
    return CheckResult("non-negativity", worst, 0.0)


def check_cdf_monotone(quick: bool = False) -> CheckResult:
    """CDF non-decreasing with correct limits on a sample of scales."""
    worst = 0.0
    for beta in _betas(True):
        d = StablePdf(KwwScale(beta, 1.0))
        grid = _log_grid(1e-2, 1e3, 10 if quick else 25)
        vals = [d.cdf(float(x)) for x in grid]
        drops = max(
            (a - b for a, b in zip(vals, vals[1:])), default=0.0
        )
        worst = max(worst, drops, -vals[0], vals[0] - 1.0)
        # far tail reaches 1
        worst = max(worst, abs(1.0 - (vals[-1] + survival(d, float(grid[-1])))))
    return CheckResult("cdf-monotone", worst, 1e-6)


def check_coverage_monotone(quick: bool = False) -> CheckResult:
    """Coverage non-increasing in T and in the noise power."""
    from .coverage import CoverageScenario, coverage_analytic

    net = NetworkParams(lam=2.0, eta=3)
    thresholds = tuple(10.0 ** (db / 10.0) for db in np.linspace(-10, 20, 7 if quick else 13))
    worst = 0.0
    prev = None
    for noise in (0.0, 0.1, 1.0):
        sc = CoverageScenario(
            net=net,
            signal_fading=Nakagami(m=10.0, pr=1.0),
            interference_fading=Rayleigh(mu=1.0),
            r_km=0.25,
            noise=noise,
            thresholds=thresholds,
        )
        pc = coverage_analytic(sc)
        worst = max(worst, float(np.max(np.diff(pc))))
        if prev is not None:
            worst = max(worst, float(np.max(pc - prev)))
        prev = pc
    return CheckResult("coverage-monotone", worst, 1e-4)


def run_validation(quick: bool = False, composition_beta: Fraction | None = None):
    checks = [
        check_normalization(quick),
        check_lt_roundtrip(quick),
        check_talbot_agreement(quick),
        check_talbot_self_convergence(quick),
        check_composition(composition_beta, quick),
        check_composition_symmetry(quick),
        check_rayleigh_identity(quick),
        check_nakagami_rayleigh_reduction(quick),
        check_no_fading_limit(quick),
        check_nonnegativity(quick),
        check_cdf_monotone(quick),
        check_coverage_monotone(quick),
    ]
    return checks


def format_report(checks) -> str:
    lines = []
    width = max(len(c.name) for c in checks)
    for c in checks:
        status = "PASS" if c.passed else "FAIL"
        extra = f"  [{c.detail}]" if c.detail else ""
        lines.append(
            f"{status}  {c.name:<{width}}  measured {c.measured:.3e}  "
            f"budget {c.budget:.1e}{extra}"
        )
    ok = all(c.passed for c in checks)
    lines.append(f"{'OK' if ok else 'FAILED'}: {sum(c.passed for c in checks)}/{len(checks)} checks passed")
    return "\n".join(lines)
