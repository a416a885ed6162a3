"""Dev scratch: verify kernels against mpmath (not part of the package)."""
import math
import sys

sys.path.insert(0, "src")
import mpmath as mp

from interfpdf import _kernels_py as K

mp.mp.dps = 40

# --- gamma accuracy on [0.1, 30]
worst = 0.0
for i in range(300):
    x = 0.1 + i * 0.1
    rel = abs(K.gamma(x) - float(mp.gamma(x))) / float(mp.gamma(x))
    worst = max(worst, rel)
print(f"gamma worst rel err on [0.1,30]: {worst:.3e}")

# negative args
for x in (-0.25, -1.5, -4.7):
    rel = abs(K.gamma(x) - float(mp.gamma(x))) / abs(float(mp.gamma(x)))
    print(f"gamma({x}) rel: {rel:.3e}")

# --- lgamma
for x in (0.3, 5.0, 100.0, 1e4):
    rel = abs(K.lgamma(x) - float(mp.loggamma(x))) / max(1.0, abs(float(mp.loggamma(x))))
    print(f"lgamma({x}) rel: {rel:.3e}")

# --- bessel_k on log grid [1e-3, 60] for v in {1/3, 2/3, 1/2}
for v in (1.0 / 3.0, 2.0 / 3.0, 0.5):
    worst = (0.0, 0.0)
    for i in range(121):
        z = 10 ** (-3 + 4.8 * i / 120)
        ref = float(mp.besselk(v, z))
        if ref == 0.0:
            continue
        rel = abs(K.bessel_k(v, z) - ref) / ref
        if rel > worst[0]:
            worst = (rel, z)
    print(f"bessel_k v={v:.4f} worst rel {worst[0]:.3e} at z={worst[1]:.4f}")

# --- bessel_i0
for z in (0.0, 1.0, 10.0, 30.0, 47.0):
    ref = float(mp.besseli(0, z))
    rel = abs(K.bessel_i0(z) - ref) / ref
    print(f"I0({z}) rel: {rel:.3e}")

# --- phyp vs mpmath.hyper
cases = [
    ((), (0.5, 0.75), -1.0),
    ((), (0.5, 0.75), -50.0),
    ((5.0 / 6.0,), (2.0 / 3.0,), -10.0),
    ((1.0, 1.2), (0.4, 0.6, 0.8, 1.0, 1.2), 3.0),
    ((), (1.0 / 3.0, 0.5, 2.0 / 3.0, 5.0 / 6.0), -20.0),
]
for up, lo, z in cases:
    ref = float(mp.hyper(list(up), list(lo), z))
    v, conv, mt = K.phyp(up, lo, z)
    print(f"phyp{up}{lo}({z}): rel {abs(v-ref)/abs(ref):.3e} conv={conv} maxterm={mt:.2e}")

# --- kummer
for (a, b, z) in ((5.0 / 6.0, 2.0 / 3.0, -10.0), (7.0 / 6.0, 4.0 / 3.0, -200.0), (1.0, 2.0, 1.0)):
    ref = float(mp.hyp1f1(a, b, z))
    v, conv, mt = K.hyp1f1(a, b, z)
    print(f"hyp1f1({a},{b},{z}): rel {abs(v-ref)/abs(ref):.3e}")

# --- closed-form rows vs mpmath.invertlaplace (independent oracle)
def ref_pdf(beta, t, x):
    f = lambda s: mp.exp(-t * s ** mp.mpf(beta))
    return float(mp.invertlaplace(f, x, method="talbot", degree=60))

print("\nrow checks (abs diff closed-form vs mpmath talbot, then our talbot):")
for (num, den) in K.CLOSED_FORM_BETAS:
    beta = num / den
    for t in (1.0, 3.0):
        worst_c = 0.0
        worst_t = 0.0
        for x in (0.05, 0.2, 1.0, 5.0, 20.0, 50.0):
            ref = ref_pdf(mp.mpf(num) / den, t, x)
            v, err = K.closed_pdf(num, den, t, x)
            tb = K.talbot_kww(beta, t, x, 64)
            worst_c = max(worst_c, abs(v - ref))
            worst_t = max(worst_t, abs(tb - ref))
        print(f"  beta={num}/{den} t={t}: closed maxdiff {worst_c:.2e}  talbot maxdiff {worst_t:.2e}")

# --- 2/3 Bessel variant agreement
for x in (0.5, 1.0, 5.0):
    a = K.closed_pdf(2, 3, 1.0, x)[0]
    b = K.pdf_two_thirds_bessel(1.0, x)
    print(f"2/3 1F1 vs bessel at x={x}: {abs(a-b):.2e}")

# --- survival series vs mpmath numeric integral for beta=1/2 (erfc known)
for x in (4.0, 10.0, 100.0):
    s, e = K.survival_series(0.5, 1.0, x)
    ref = float(mp.erfc(1.0 / (2.0 * mp.sqrt(x))))
    print(f"survival beta=1/2 x={x}: diff {abs(s-ref):.2e} (bound {e:.1e})")

# --- anchors for the spec examples
print("\nanchors:")
print("pdf(1/2,t=1,x=1) =", repr(K.pdf_levy(1.0, 1.0)[0]), "expect", float(mp.exp(mp.mpf(-0.25)) / (2 * mp.sqrt(mp.pi))))
mp.mp.dps = 25
print("e^-1/4/(2 sqrt pi) =", mp.nstr(mp.exp(mp.mpf(1) / -4) / (2 * mp.sqrt(mp.pi)), 20))
print("erfc(0.5) =", mp.nstr(mp.erfc(mp.mpf(1) / 2), 20))
print("K_1/2(1) =", mp.nstr(mp.sqrt(mp.pi / 2) * mp.exp(-1), 20))
print("K_1/3(0.5) =", mp.nstr(mp.besselk(mp.mpf(1) / 3, mp.mpf(1) / 2), 20))
print("I0(1) =", mp.nstr(mp.besseli(0, 1), 20))
print("0F2(;1/2,3/4;-1) =", mp.nstr(mp.hyper([], [mp.mpf(1) / 2, mp.mpf(3) / 4], -1), 20))
print("1F1(5/6;2/3;-10) =", mp.nstr(mp.hyp1f1(mp.mpf(5) / 6, mp.mpf(2) / 3, -10), 20))
print("G(1/3)G(2/3) =", mp.nstr(mp.gamma(mp.mpf(1) / 3) * mp.gamma(mp.mpf(2) / 3), 20))
