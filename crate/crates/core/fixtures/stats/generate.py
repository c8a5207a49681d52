"""Writes the statistics fixtures and prints reference values from scipy.

Usage: python3 generate.py   (run from this directory)
"""

import numpy as np
from scipy.stats import mannwhitneyu


def a_measure(x, y):
    x = np.asarray(x)[:, None]
    y = np.asarray(y)[None, :]
    return ((x > y).sum() + 0.5 * (x == y).sum()) / (x.size * y.size)


def write(name, x, y):
    with open(name, "w") as f:
        f.write("x,y\n")
        for a, b in zip(x, y):
            f.write(f"{a!r},{b!r}\n")


def report(name, x, y, method):
    r = mannwhitneyu(x, y, alternative="two-sided", method=method, use_continuity=True)
    print(f"{name}: U={r.statistic!r} p={r.pvalue!r} A={a_measure(x, y)!r}")


rng = np.random.default_rng(7)
gx = [round(float(v), 4) for v in rng.normal(0.0, 1.0, 30)]
gy = [round(float(v), 4) for v in rng.normal(0.6, 1.0, 30)]
write("gauss30.csv", gx, gy)
report("gauss30", gx, gy, "asymptotic")

# APFD-like values on a 0.5-point grid, so ties are common.
base = rng.beta(2.0, 2.0, 542) * 100
sx = [float(np.clip(np.round(v * 2) / 2, 0.5, 99.5)) for v in base]
sy = [float(np.clip(np.round((v - 6 + rng.normal(0, 15)) * 2) / 2, 0.5, 99.5)) for v in rng.beta(2.0, 2.0, 542) * 100]
write("stm542.csv", sx, sy)
report("stm542", sx, sy, "asymptotic")

report("exact 1,2,3 vs 4,5,6", [1, 2, 3], [4, 5, 6], "exact")
report("exact 5x7", [1.5, 3.2, 4.1, 8.0, 9.9], [2.2, 2.9, 5.5, 6.1, 7.3, 10.4, 11.0], "exact")
report("exact 20x20", list(range(0, 40, 2)), list(range(1, 41, 2)), "exact")
