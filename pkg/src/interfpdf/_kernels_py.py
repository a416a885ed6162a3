"""Pure-Python numerical kernels (fallback backend).

This module is the reference implementation of the numerical core: the
special functions, the seven closed-form stable densities, the stable tail
series and the fixed-Talbot inversion of exp(-t*s**beta).  The compiled
extension ``interfpdf._kernels`` mirrors it function for function;
``interfpdf._backend`` picks whichever is importable.

Everything here is plain double precision, pure, and thread-safe.  Argument
validation lives one layer up (``specfun``, ``stable``, ...); kernels assume
preconditions hold.
"""

from __future__ import annotations

import math

COMPILED = False

MAX_SERIES_TERMS = 500
SERIES_STOP = 1e-16
RELIABLE_ARG_BOUND = 1e4

_EPS = 2.220446049250313e-16
_PI = math.pi
_SQRT_PI = math.sqrt(math.pi)

# Lanczos g=7, 9 coefficients (double precision, ~15 significant digits).
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


# ---------------------------------------------------------------------------
# gamma
# ---------------------------------------------------------------------------

def gamma(x: float) -> float:
    """Gamma function for real non-pole arguments (Lanczos, g=7)."""
    if x < 0.5:
        # reflection; sin(pi*x) is nonzero away from poles
        return _PI / (math.sin(_PI * x) * gamma(1.0 - x))
    x -= 1.0
    acc = _LANCZOS[0]
    for i in range(1, 9):
        acc += _LANCZOS[i] / (x + i)
    t = x + 7.5
    return math.sqrt(2.0 * _PI) * t ** (x + 0.5) * math.exp(-t) * acc


def lgamma(x: float) -> float:
    """log(Gamma(x)) for x > 0, overflow-free for large x."""
    if x < 0.5:
        return math.log(_PI / math.sin(_PI * x)) - lgamma(1.0 - x)
    x -= 1.0
    acc = _LANCZOS[0]
    for i in range(1, 9):
        acc += _LANCZOS[i] / (x + i)
    t = x + 7.5
    return 0.5 * math.log(2.0 * _PI) + (x + 0.5) * math.log(t) - t + math.log(acc)


# ---------------------------------------------------------------------------
# modified Bessel functions
# ---------------------------------------------------------------------------

def bessel_i0(z: float) -> float:
    """I_0(z) by its ascending power series (entire function)."""
    q = 0.25 * z * z
    term = 1.0
    s = 1.0
    for k in range(1, 500):
        term *= q / (k * k)
        s += term
        if term < 1e-17 * s:
            break
    return s


def _bessel_k_series(v: float, z: float) -> float:
    # K_v = (pi/2) (I_{-v} - I_v) / sin(v pi); fine in doubles for z <= 2
    # where the e^{2z} cancellation costs < 2 digits.
    h = 0.5 * z
    lh = math.log(h)
    tm = math.exp(-v * lh) / gamma(1.0 - v)
    tp = math.exp(v * lh) / gamma(1.0 + v)
    q = h * h
    s = tm - tp
    for k in range(1, 400):
        tm *= q / (k * (k - v))
        tp *= q / (k * (k + v))
        s += tm - tp
        if abs(tm) + abs(tp) < 1e-17 * abs(s):
            break
    return 0.5 * _PI / math.sin(v * _PI) * s


def _bessel_k_cf2(v: float, z: float) -> float:
    # Steed/Thompson-Barnett continued fraction for the middle range.
    # Delivers K_mu and K_{mu+1} for mu in [-1/2, 1/2]; recur upward to v.
    n = int(math.floor(v + 0.5))
    mu = v - n
    mu2 = mu * mu
    b = 2.0 * (1.0 + z)
    d = 1.0 / b
    h = delh = d
    q1 = 0.0
    q2 = 1.0
    a1 = 0.25 - mu2
    q = c = a1
    a = -a1
    s = 1.0 + q * delh
    for i in range(2, 2000):
        a -= 2.0 * (i - 1)
        c = -a * c / i
        qnew = (q1 - b * q2) / a
        q1 = q2
        q2 = qnew
        q += c * qnew
        b += 2.0
        d = 1.0 / (b + a * d)
        delh = (b * d - 1.0) * delh
        h += delh
        dels = q * delh
        s += dels
        if abs(dels / s) < 1e-16:
            break
    h = a1 * h
    k_mu = math.sqrt(_PI / (2.0 * z)) * math.exp(-z) / s
    k_mu1 = k_mu * (mu + z + 0.5 - h) / z
    if n == 0:
        return k_mu
    km1, k0 = k_mu, k_mu1
    for j in range(1, n):
        km1, k0 = k0, 2.0 * (mu + j) / z * k0 + km1
    return k0


def _bessel_k_asym(v: float, z: float) -> float:
    if z > 745.0:
        return 0.0
    mu = 4.0 * v * v
    term = 1.0
    s = 1.0
    prev = math.inf
    for k in range(1, 80):
        term *= (mu - (2.0 * k - 1.0) ** 2) / (8.0 * k * z)
        at = abs(term)
        if at >= prev:
            break
        s += term
        prev = at
        if at < 1e-17 * abs(s):
            break
    return math.sqrt(_PI / (2.0 * z)) * math.exp(-z) * s


# Regime switch points; documented in specfun.bessel_k.
BESSEL_K_SERIES_MAX = 2.0
BESSEL_K_ASYM_MIN = 40.0


def bessel_k(v: float, z: float) -> float:
    """K_v(z) for z > 0 and non-integer order v > 0."""
    if z < BESSEL_K_SERIES_MAX:
        return _bessel_k_series(v, z)
    if z < BESSEL_K_ASYM_MIN:
        return _bessel_k_cf2(v, z)
    return _bessel_k_asym(v, z)


# ---------------------------------------------------------------------------
# generalized hypergeometric series
# ---------------------------------------------------------------------------

def phyp(upper, lower, z):
    """Sum pFq(upper; lower; z) by its power series.

    Returns ``(value, converged, max_abs_term)``; compensated (Kahan)
    accumulation; stops once two consecutive terms fall below
    ``SERIES_STOP * |partial sum|`` or the term budget runs out.
    The running maximum term magnitude lets callers bound the absolute
    rounding error of an alternating sum.
    """
    if z == 0.0:
        return 1.0, True, 1.0
    term = 1.0
    s = 1.0
    comp = 0.0
    max_abs = 1.0
    small = 0
    for n in range(MAX_SERIES_TERMS):
        fn = float(n)
        num = z
        for a in upper:
            num *= a + fn
        den = fn + 1.0
        for b in lower:
            den *= b + fn
        term *= num / den
        if term == 0.0:
            return s, True, max_abs
        y = term - comp
        t = s + y
        comp = (t - s) - y
        s = t
        at = abs(term)
        if at > max_abs:
            max_abs = at
        if at < SERIES_STOP * abs(s):
            small += 1
            if small >= 2:
                return s, True, max_abs
        else:
            small = 0
    return s, False, max_abs


def hyp1f1(a: float, b: float, z: float):
    """1F1(a; b; z); applies the Kummer transformation for z < 0.

    The transform turns the alternating series into a same-sign one,
    removing catastrophic cancellation for large negative arguments.
    """
    if z < 0.0:
        v, conv, mt = phyp((b - a,), (b,), -z)
        e = math.exp(z) if z > -745.0 else 0.0
        return e * v, conv, e * mt
    return phyp((a,), (b,), z)


# ---------------------------------------------------------------------------
# closed-form scaled stable densities (inverse transforms of exp(-t s^beta))
# ---------------------------------------------------------------------------
#
# All rows with a hypergeometric representation share one shape:
#
#   p(I) = sum_m  coef_m * t^m * I^(-1 - m*beta) * pFq(up_m; lo_m; sign * w)
#   w    = num^num * t^den / (den^den * I^num)          (beta = num/den)
#
# beta = 1/2 is the elementary exponential form and beta = 1/3 the
# K-Bessel form; they are handled separately.

_ROWS: dict = {}


def _build_rows():
    g = gamma
    s5 = math.sqrt(5.0)
    sin36 = math.sin(0.2 * _PI)
    sin72 = math.sin(0.4 * _PI)

    rows = {}

    # beta = 2/3: two-term 1F1 form (the K-Bessel variant is kept as a
    # cross-check, see pdf_two_thirds_bessel).
    rows[(2, 3)] = (
        (g(2.0 / 3.0) / (math.sqrt(3.0) * _PI), (5.0 / 6.0,), (2.0 / 3.0,)),
        ((2.0 / 9.0) / g(2.0 / 3.0), (7.0 / 6.0,), (4.0 / 3.0,)),
    )

    # beta = 1/4: three 0F2 families.
    rows[(1, 4)] = (
        (math.sqrt(2.0) * g(0.25) / (8.0 * _PI), (), (0.5, 0.75)),
        (-1.0 / (4.0 * _SQRT_PI), (), (0.75, 1.25)),
        (math.sqrt(2.0) * g(0.75) / (16.0 * _PI), (), (1.25, 1.5)),
    )

    # beta = 1/5: four families; the duplicated upper/lower parameter
    # (1 + m/5) cancels term-by-term inside phyp.
    b51 = (
        s5 * g(0.2) / (20.0 * _PI * sin72),
        -s5 * g(0.4) / (20.0 * _PI * sin36),
        s5 * g(0.6) / (40.0 * _PI * sin36),
        -s5 * g(0.8) / (120.0 * _PI * sin72),
    )
    rows[(1, 5)] = tuple(
        (
            b51[m - 1],
            (1.0, 1.0 + m / 5.0),
            tuple((m + j) / 5.0 for j in range(1, 6)),
        )
        for m in (1, 2, 3, 4)
    )

    # beta = 2/5: four families.
    b52 = (
        2.0 ** 0.4 * s5 * g(0.2) / (10.0 * _SQRT_PI * g(0.3) * sin72),
        -(2.0 ** 0.8) * s5 * g(0.4) / (10.0 * _SQRT_PI * g(0.1) * sin36),
        -(2.0 ** 0.2) * s5 * g(0.6) / (100.0 * _SQRT_PI * g(0.9) * sin36),
        2.0 ** 0.6 * s5 * g(0.8) / (100.0 * _SQRT_PI * g(0.7) * sin72),
    )
    rows[(2, 5)] = tuple(
        (
            b52[m - 1],
            (1.0, (5.0 + 2.0 * m) / 10.0, (5.0 + m) / 5.0),
            tuple((m + j) / 5.0 for j in range(1, 6)),
        )
        for m in (1, 2, 3, 4)
    )

    # beta = 1/6: five 0F4 families.
    g23 = g(2.0 / 3.0)
    c16 = (
        2.0 ** (-1.0 / 3.0) * 3.0 ** (-1.5) * _SQRT_PI / (g23 * g23),
        -1.0 / (6.0 * g23),
        1.0 / (12.0 * _SQRT_PI),
        -math.sqrt(3.0) * g23 / (72.0 * _PI),
        3.0 ** (-1.5) * g23 * g23 / (2.0 ** (17.0 / 3.0) * _PI ** 1.5),
    )
    b16 = (
        (1.0 / 3.0, 0.5, 2.0 / 3.0, 5.0 / 6.0),
        (0.5, 2.0 / 3.0, 5.0 / 6.0, 7.0 / 6.0),
        (2.0 / 3.0, 5.0 / 6.0, 7.0 / 6.0, 4.0 / 3.0),
        (5.0 / 6.0, 7.0 / 6.0, 4.0 / 3.0, 1.5),
        (7.0 / 6.0, 4.0 / 3.0, 1.5, 5.0 / 3.0),
    )
    rows[(1, 6)] = tuple((c16[m], (), b16[m]) for m in range(5))

    return rows


_ROWS = _build_rows()

# Sign of the hypergeometric argument per row: negative for beta = p/q
# with odd q - p (the stable tail series alternates within each family).
# Note the 2/5 row: the tabulated source drops this minus sign; the
# alternation of the k = m + 5j tail terms (and Talbot inversion) fix it.
_ROW_SIGN = {(2, 3): -1.0, (1, 4): -1.0, (1, 5): 1.0, (2, 5): -1.0, (1, 6): -1.0}

CLOSED_FORM_BETAS = ((1, 2), (1, 3), (2, 3), (1, 4), (1, 5), (2, 5), (1, 6))


def pdf_levy(t: float, x: float):
    """beta = 1/2 scaled density with its rounding-error estimate."""
    a = t * t / (4.0 * x)
    if a > 745.0:
        return 0.0, 1e-300
    v = t * math.exp(-a) / (2.0 * _SQRT_PI * x * math.sqrt(x))
    return v, 8.0 * _EPS * v + 1e-300


def _pdf_third(t: float, x: float):
    z = 2.0 * t * math.sqrt(t) / math.sqrt(27.0 * x)
    if z > 745.0:
        return 0.0, 1e-300
    kv = bessel_k(1.0 / 3.0, z)
    v = t * math.sqrt(t) / (3.0 * _PI * x * math.sqrt(x)) * kv
    return v, 1e-13 * v + 1e-300


def closed_pdf(num: int, den: int, t: float, x: float):
    """Evaluate one Table row at interference x with scale t.

    Returns ``(value, abs_error_estimate)``.  The estimate is infinite when
    a series failed to converge or the argument is past the reliable bound;
    callers fall back to Talbot inversion in that case.
    """
    if num == 1 and den == 2:
        return pdf_levy(t, x)
    if num == 1 and den == 3:
        return _pdf_third(t, x)
    fams = _ROWS[(num, den)]
    sign = _ROW_SIGN[(num, den)]
    beta = num / den
    w = float(num) ** num * t ** den / (float(den) ** den * x ** num)
    if num == 2 and den == 3 and w > 200.0:
        # This row decays as exp(-w): below every working tolerance, and
        # the Kummer-transformed series would need ~w terms.
        return 0.0, 1e-300
    if w > RELIABLE_ARG_BOUND:
        return 0.0, math.inf
    acc = 0.0
    errsum = 0.0
    m = 0
    for coef, up, lo in fams:
        m += 1
        if num == 2 and den == 3:
            f, conv, mt = hyp1f1(up[0], lo[0], sign * w)
        else:
            f, conv, mt = phyp(up, lo, sign * w)
        if not conv:
            return acc, math.inf
        pref = coef * t ** m * x ** (-1.0 - m * beta)
        acc += pref * f
        errsum += abs(pref) * (mt if mt > abs(f) else abs(f))
    if math.isnan(acc) or math.isinf(acc):
        return 0.0, math.inf
    err = 8.0 * _EPS * (errsum + abs(acc)) + 1e-300
    return acc, err


def pdf_two_thirds_bessel(t: float, x: float) -> float:
    """K-Bessel variant of the beta = 2/3 row (cross-check path).

    Unusable for small x where the Bessel argument overflows the
    exponential scale; the 1F1 form is the primary route.
    """
    z = 2.0 * t ** 3 / (27.0 * x * x)
    if z > 700.0:
        return 0.0
    pref = 2.0 * math.sqrt(3.0) * t ** 3 / (27.0 * _PI * x ** 3)
    return pref * math.exp(-z) * (bessel_k(1.0 / 3.0, z) + bessel_k(2.0 / 3.0, z))


def survival_series(beta: float, t: float, x: float):
    """Upper tail P[I > x] from the stable tail series.

    Returns ``(survival, error_bound)``; reliable when t * x^-beta is
    order one or less.  Error bound combines the first omitted term and
    the rounding of the largest retained term.
    """
    arg = t * x ** (-beta)
    s = 0.0
    mx = 0.0
    sign = 1.0
    kfac = 1.0
    argk = 1.0
    term = math.inf
    small = 0
    for k in range(1, 80):
        kb = k * beta
        if kb > 170.0:
            break
        argk *= arg
        kfac *= k
        sn = math.sin(_PI * k * beta)
        if abs(sn) < 1e-9:
            # sin(k pi beta) vanishes identically for these k (rational
            # beta); skip without touching the convergence state
            sign = -sign
            continue
        term = sign * gamma(kb) * sn / (_PI * kfac) * argk
        s += term
        at = abs(term)
        if at > mx:
            mx = at
        if at < 1e-15 * max(abs(s), 1e-30):
            small += 1
            if small >= 2 and k > 2:
                return s, at + _EPS * mx
        else:
            small = 0
        sign = -sign
    return s, abs(term) + _EPS * mx


# ---------------------------------------------------------------------------
# fixed-Talbot inversion of exp(-t s^beta)
# ---------------------------------------------------------------------------

def talbot_kww(beta: float, t: float, x: float, M: int) -> float:
    """Fixed-Talbot inverse Laplace transform of exp(-t*s^beta) at x > 0.

    Contour s(theta) = r*theta*(cot theta + i) with r = 2M/(5x), sampled at
    theta_k = k*pi/M; principal branch of s^beta (branch cut on the negative
    real axis, where the transform's singularities live).

    For beta > 1/2 the transform grows along contour rays with
    |arg s| > pi/(2 beta), so deep in the left tail the quadrature turns
    into a difference of astronomically large terms.  The left tail is
    bounded by the saddle-point decay exp(-(1-beta) beta^(beta/(1-beta))
    y^(-beta/(1-beta))), y = x t^(-1/beta); once that exponent passes 60
    the density is far below every tolerance used here and 0 is returned
    without touching the contour.
    """
    e = beta / (1.0 - beta)
    y = x * t ** (-1.0 / beta)
    if (1.0 - beta) * beta ** e * y ** (-e) > 60.0:
        return 0.0
    r = 0.4 * M / x
    # theta = 0 node: s = r on the real axis, half weight.
    acc = 0.5 * math.exp(r * x - t * r ** beta)
    for k in range(1, M):
        th = k * _PI / M
        co = math.cos(th)
        sn = math.sin(th)
        ct = co / sn
        sre = r * th * ct
        sim = r * th
        # F(s) = exp(-t s^beta), principal branch
        mod = math.hypot(sre, sim)
        rb = t * mod ** beta
        ang = beta * math.atan2(sim, sre)
        ere = x * sre - rb * math.cos(ang)
        if ere < -745.0:
            continue
        if ere > 705.0:
            return 0.0
        eim = x * sim - rb * math.sin(ang)
        mag = math.exp(ere)
        tre = mag * math.cos(eim)
        tim = mag * math.sin(eim)
        sig = th + (th * ct - 1.0) * ct
        acc += tre - tim * sig
    return r / M * acc
