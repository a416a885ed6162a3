"""Dev scratch: pick Talbot M meeting <=1e-6 abs agreement on invariant grids."""
import math
import sys

sys.path.insert(0, "src")
from interfpdf import _kernels_py as K

BETAS = K.CLOSED_FORM_BETAS

def grid(n=40):
    return [10 ** (math.log10(0.05) + (math.log10(50) - math.log10(0.05)) * i / (n - 1)) for i in range(n)]

for M in (24, 32, 40, 48, 64):
    worst = (0.0, None)
    for (num, den) in BETAS:
        beta = num / den
        for t in (0.5, 1.0, math.pi ** 2):
            for x in grid():
                v, err = K.closed_pdf(num, den, t, x)
                if not math.isfinite(err) or err > 1e-9:
                    continue  # closed form itself falls back there
                tb = K.talbot_kww(beta, t, x, M)
                d = abs(tb - v)
                if d > worst[0]:
                    worst = (d, (num, den, t, x))
    print(f"M={M}: worst abs diff {worst[0]:.3e} at {worst[1]}")

# how often does the closed form fall back on this grid?
nfall = 0
ntot = 0
for (num, den) in BETAS:
    for t in (0.5, 1.0, math.pi ** 2):
        for x in grid():
            ntot += 1
            v, err = K.closed_pdf(num, den, t, x)
            if not math.isfinite(err) or err > 1e-9:
                nfall += 1
print(f"closed-form fallback points: {nfall}/{ntot}")

# self-convergence on the Fig-1 acceptance grid (eta in 3..6, lambda=2, mu=1)
def t_rayleigh(eta, lam=2.0, mu=1.0):
    b = 2.0 / eta
    return math.pi * lam * K.gamma(1.0 + b) / mu ** b * K.gamma(1.0 - b)

pairs = {3: (2, 3), 4: (1, 2), 5: (2, 5), 6: (1, 3)}
worst_sc = 0.0
worst_ag = 0.0
for eta, (num, den) in pairs.items():
    t = t_rayleigh(eta)
    beta = num / den
    for x in grid(60):
        a32 = K.talbot_kww(beta, t, x, 32)
        a64 = K.talbot_kww(beta, t, x, 64)
        worst_sc = max(worst_sc, abs(a32 - a64))
        v, err = K.closed_pdf(num, den, t, x)
        if math.isfinite(err) and err < 1e-9:
            worst_ag = max(worst_ag, abs(a32 - v))
print(f"Fig-1 grid: |M32-M64| worst {worst_sc:.3e}; closed-vs-talbot32 worst {worst_ag:.3e}")
