"""Exact interference-power distributions for Poisson-field networks.

The aggregate interference seen by a receiver in a homogeneous Poisson
field of transmitters has a Laplace transform of stretched-exponential
form exp(-t*s^beta) with beta = 2/eta.  This package evaluates the
corresponding densities in closed form for the common path-loss exponents,
validates them against a fixed-Talbot numerical inversion and Monte-Carlo
simulation, and computes coverage probability for arbitrary
signal/interference fading combinations.

Hot kernels run in a compiled Cython core when available, with an
identical pure-Python fallback (see ``interfpdf.backend_name``).
"""

from ._backend import COMPILED as using_compiled_kernels
from ._backend import backend_name
from .coverage import (
    CoverageScenario,
    coverage_analytic,
    coverage_lt_shortcut,
    coverage_mc_compare,
    coverage_xi_eta3,
)
from .errors import (
    BackendError,
    ConvergenceError,
    DomainError,
    ParameterMismatchError,
    PoleError,
    QuadratureError,
)
from .interference import (
    FadingModel,
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
from .mc import (
    SimConfig,
    TrialRecord,
    empirical_cdf,
    empirical_coverage,
    ks_statistic,
    run_trials,
    sample_field,
    trial_rng,
)
from .specfun import (
    BesselOrder,
    HypergeometricSpec,
    bessel_i0,
    bessel_k,
    gamma,
    kummer_1f1,
    phyp,
)
from .stable import (
    CLOSED_FORM_BETAS,
    Backend,
    KwwScale,
    StablePdf,
    cdf,
    compose_pdf,
    eta_to_beta,
    pdf,
    survival,
)
from .talbot import TalbotConfig, invert, invert_kww

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "backend_name",
    "using_compiled_kernels",
    # errors
    "BackendError",
    "ConvergenceError",
    "DomainError",
    "ParameterMismatchError",
    "PoleError",
    "QuadratureError",
    # special functions
    "BesselOrder",
    "HypergeometricSpec",
    "bessel_i0",
    "bessel_k",
    "gamma",
    "kummer_1f1",
    "phyp",
    # stable densities
    "CLOSED_FORM_BETAS",
    "Backend",
    "KwwScale",
    "StablePdf",
    "cdf",
    "compose_pdf",
    "eta_to_beta",
    "pdf",
    "survival",
    # network model
    "FadingModel",
    "Nakagami",
    "NetworkParams",
    "Rayleigh",
    "Rician",
    "fractional_moment",
    "kww_scale",
    "laplace_transform",
    "rayleigh_lt_identity_check",
    "rician_as_nakagami",
    # Talbot inversion
    "TalbotConfig",
    "invert",
    "invert_kww",
    # Monte Carlo
    "SimConfig",
    "TrialRecord",
    "empirical_cdf",
    "empirical_coverage",
    "ks_statistic",
    "run_trials",
    "sample_field",
    "trial_rng",
    # coverage
    "CoverageScenario",
    "coverage_analytic",
    "coverage_lt_shortcut",
    "coverage_mc_compare",
    "coverage_xi_eta3",
]
