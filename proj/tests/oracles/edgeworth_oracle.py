"""Straight-line transcription of the corrected p-value for a fixed data pair.

Written without reference to the C++ sources; prints values that are
frozen into the unit tests.
"""
from mpmath import mp, mpf, sqrt, ncdf, npdf

mp.dps = 40

X = [1, 2, 3, 4, 100]
Y = [2, 3, 4, 5, 6, 7, 8, 9, 10, 200]


def summary(v):
    n = len(v)
    m = sum(mpf(a) for a in v) / n
    s2 = sum((a - m) ** 2 for a in v) / n
    g = sum((a - m) ** 3 for a in v) / (n * s2 ** mpf(1.5))
    t = sum((a - m) ** 4 for a in v) / (n * s2 ** 2)
    return n, m, s2, g, t


nx, mx, vx, gx, tx = summary(X)
ny, my, vy, gy, ty = summary(Y)
k = mpf(ny) / nx
N = nx + ny
sx, sy = sqrt(vx), sqrt(vy)

T = (my - mx) / sqrt(vx / nx + vy / ny)

gD = sqrt(1 + k) / sqrt(N * k) * (gy * sy**3 - k**2 * gx * sx**3) / (k * vx + vy) ** mpf(1.5)
tD = 3 + (1 + k) / (k * N) * ((ty - 3) * vy**2 + k**3 * (tx - 3) * vx**2) / (vy + k * vx) ** 2

z = T
q1 = gD / 6 * (2 * z**2 + 1)
q2 = ((tD - 3) / 12 * (z**3 - 3 * z)
      - gD**2 / 18 * (z**5 + 2 * z**3 - 3 * z)
      - (1 + k) / (4 * N) * ((k**3 * vx**2 + vy**2) * (z**3 + 3 * z)
                             + 2 * k * (1 + k) * vx * vy * z) / (k * (k * vx + vy) ** 2))
G = ncdf(z) + npdf(z) * (q1 + q2)
Gtr = min(max(G, mpf(0)), mpf(1))
pc = 2 * min(Gtr, 1 - Gtr)
pt = 2 * (1 - ncdf(abs(T)))

for name, val in [("T", T), ("gamma_D", gD), ("tau_D", tD), ("q1", q1), ("q2", q2),
                  ("G", G), ("p_t", pt), ("p_c", pc)]:
    print(f"{name} = {mp.nstr(val, 20)}")
