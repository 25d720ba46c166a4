#!/usr/bin/env python3
"""Writes the synthetic daily-rainfall fixture used by the golden tests.

The file mimics the layout of a station-pair export (date, station, two rain
columns) with missing-value markers and dry days. Rerunning the script
reproduces the committed files byte for byte. It also prints reference
estimates computed with an independent numpy implementation.
"""
import datetime as dt
import pathlib

import numpy as np
from scipy.stats import rankdata

OUT = pathlib.Path(__file__).resolve().parent.parent / "tests" / "data"


def simulate(n, rng):
    u = rng.random((3, n))
    z1 = (1 - u[0]) ** -0.3
    z2 = (1 - u[1]) ** -0.35
    z3 = (1 - u[2]) ** -0.35
    wet = rng.random(n) < 0.55
    x = np.where(wet, np.round(4.0 * (np.maximum(z1, z2) - 1.0), 1), 0.0)
    y = np.where(wet, np.round(4.0 * (np.maximum(z1, z3) - 1.0), 1), 0.0)
    return x, y


def hill(v, k):
    s = np.sort(v)
    n = len(s)
    return np.mean(np.log(s[n - k:])) - np.log(s[n - k - 1])


def eta(x, y, k):
    n = len(x)
    rx = rankdata(x, method="ordinal")
    ry = rankdata(y, method="ordinal")
    t = np.minimum((n + 1) / (n + 1 - rx), (n + 1) / (n + 1 - ry))
    return min(max(hill(t, k), 1e-6), 1.0)


def theta_kn(x, y, k):
    thr = np.sort(y)[len(y) - k - 1]
    return x[y > thr].sum() / k


def main():
    rng = np.random.default_rng(20161231)
    n = 3000
    x, y = simulate(n, rng)
    start = dt.date(1990, 8, 1)
    markers = ["NA", "", "-"]
    raw_rows, clean = [], []
    for i in range(n):
        day = (start + dt.timedelta(days=i)).strftime("%Y%m%d")
        fx, fy = f"{x[i]:.1f}", f"{y[i]:.1f}"
        r = rng.random()
        if r < 0.01:
            fx = markers[i % 3]
        elif r < 0.02:
            fy = markers[(i + 1) % 3]
        else:
            clean.append((x[i], y[i]))
        raw_rows.append(f"{day},348,{fx},{fy}")
    OUT.mkdir(parents=True, exist_ok=True)
    (OUT / "knmi_like.csv").write_text("date,station,rain_cabauw,rain_rotterdam\n" + "\n".join(raw_rows) + "\n")
    (OUT / "knmi_like_clean.csv").write_text(
        "x,y\n" + "\n".join(f"{a:.1f},{b:.1f}" for a, b in clean) + "\n")

    cx = np.array([c[0] for c in clean])
    cy = np.array([c[1] for c in clean])
    m = len(cx)
    print("n", m, "dropped", n - m)
    g = hill(cx, 200)
    e = eta(cx, cy, 200)
    print("gamma1_hat(k1=200)", repr(g))
    print("eta_hat(k2=200)", repr(e))
    for k in (50, 100):
        print(f"theta_kn(k={k})", repr(theta_kn(cx, cy, k)))
    for years in (50, 100):
        p = 1.0 / (365 * years)
        t = theta_kn(cx, cy, 50)
        d = 50 / (m * p)
        print(f"theta_p(M={years},k=50)", repr(t * d ** (-1 / e + 1 + g)))


if __name__ == "__main__":
    main()
