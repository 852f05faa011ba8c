"""Independent evaluation of the planning coefficients and thresholds.

Population moments of LN(0,1) come from numerical integration, not the
closed forms used by the library.
"""
from mpmath import mp, mpf, sqrt, exp, log, npdf, quad, inf, ceil, pi

mp.dps = 30


def ln_density(x):
    return exp(-log(x) ** 2 / 2) / (x * sqrt(2 * pi))


def ln_moments():
    m = quad(lambda x: x * ln_density(x), [0, 1, 10, 100, inf])
    c = lambda r: quad(lambda x: (x - m) ** r * ln_density(x), [0, 1, 10, 100, 1000, inf])
    v = c(2)
    return m, v, c(3) / v ** mpf(1.5), c(4) / v ** 2


def lower_quantile(p):
    lo, hi = mpf(-40), mpf(0)
    for _ in range(200):
        mid = (lo + hi) / 2
        if mp.ncdf(mid) < p:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def coefficients(alpha, k, vx, gx, tx, vy, gy, ty):
    z = lower_quantile(mpf(alpha) / 2)
    k = mpf(k)
    mix = k * vx + vy
    a1 = (2 * z**2 + 1) * npdf(z) / 6 * sqrt((1 + k) / k) * (
        gy * vy ** mpf(1.5) - k**2 * gx * vx ** mpf(1.5)) / mix ** mpf(1.5)
    # N * gamma_D^2 and N * (tau_D - 3)
    g2 = (1 + k) / k * (gy * vy ** mpf(1.5) - k**2 * gx * vx ** mpf(1.5)) ** 2 / mix**3
    t3 = (1 + k) / k * ((ty - 3) * vy**2 + k**3 * (tx - 3) * vx**2) / mix**2
    stud = (1 + k) / 4 * ((k**3 * vx**2 + vy**2) * (z**3 + 3 * z)
                          + 2 * k * (1 + k) * vx * vy * z) / (k * mix**2)
    a2 = npdf(z) * (t3 / 12 * (z**3 - 3 * z) - g2 / 18 * (z**5 + 2 * z**3 - 3 * z) - stud)
    return a1, a2


def thresholds(a1, a2, eps):
    eps = mpf(eps)
    n1 = ceil((a1 / eps) ** 2) if a1 != 0 else None
    d = a1**2 - 4 * abs(a2) * eps
    s = 1 if d >= 0 else -1
    n2 = ceil(((abs(a1) + sqrt(a1**2 - 4 * abs(a2) * eps * s)) / (2 * eps)) ** 2)
    return n1, n2


m, v, g, t = ln_moments()
print(f"LN(0,1): mean={mp.nstr(m, 20)} var={mp.nstr(v, 20)} skew={mp.nstr(g, 20)} kurt={mp.nstr(t, 20)}")

cases = [
    ("lognormal k=5", 0.05, 0.01, 5, g, t),
    ("publish k=5", 0.05, 0.01, 5, mpf("14.94"), mpf("490.7")),
    ("live k=10", 0.05, 0.01, 10, mpf("5.09"), mpf("41.9")),
    ("publish k=9", 0.1, 0.03, 9, mpf("14.94"), mpf("490.7")),
    ("live k=99", 0.1, 0.03, 99, mpf("5.09"), mpf("41.9")),
    ("normal k=1", 0.05, 0.01, 1, mpf(0), mpf(3)),
]
for name, alpha, eps, k, gg, tt in cases:
    a1, a2 = coefficients(alpha, k, mpf(1), gg, tt, mpf(1), gg, tt)
    n1, n2 = thresholds(a1, a2, eps)
    print(f"{name}: a1={mp.nstr(a1, 17)} a2={mp.nstr(a2, 17)} n1={n1} n2={n2}")
