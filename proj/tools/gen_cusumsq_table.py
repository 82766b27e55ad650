#!/usr/bin/env python3
"""Regenerates data/cusumsq_c0.txt.

Under a correctly specified Gaussian linear model the m = n - k recursive
residuals are i.i.d. N(0, sigma^2), so the CUSUMSQ path

    s_r = sum_{j<=r} w_j^2 / sum_{j<=m} w_j^2,   r = 1..m

has a null distribution that depends on m only. c0(m, alpha) is the
(1 - alpha) quantile of max_r |s_r - r/m|, i.e. the half-width of the
two-sided parallel band around the expected path.

Usage: gen_cusumsq_table.py > data/cusumsq_c0.txt
"""

import numpy as np

SEED = 20240917
LEVELS = (("1%", 0.99), ("5%", 0.95), ("10%", 0.90))
GRID = list(range(3, 101)) + list(range(110, 201, 10)) + list(range(250, 501, 50)) + \
    list(range(600, 1001, 100))


def quantiles(m, reps, rng):
    out = []
    batch = max(1, min(reps, 4_000_000 // m))
    done = 0
    while done < reps:
        b = min(batch, reps - done)
        z = rng.standard_normal((b, m)) ** 2
        s = np.cumsum(z, axis=1)
        s /= s[:, -1:]
        expected = np.arange(1, m + 1) / m
        out.append(np.abs(s - expected).max(axis=1))
        done += b
    stats = np.concatenate(out)
    return [np.quantile(stats, q) for _, q in LEVELS]


def main():
    rng = np.random.default_rng(SEED)
    print("# cointkit critical-value table: CUSUM-of-squares band half-widths c0")
    print("# version: 1")
    print("# m = number of recursive residuals (n - k); level = two-sided significance")
    print("# c0 = upper quantile of max_r |s_r - r/m| under i.i.d. Gaussian errors,")
    print(f"# simulated by tools/gen_cusumsq_table.py (numpy PCG64, seed {SEED};")
    print("# 400000 replications for m <= 100, 100000 beyond)")
    print("# beyond the largest m the loader extrapolates with c0 * sqrt(m_max / m)")
    print("# columns: m level c0")
    for m in GRID:
        reps = 400_000 if m <= 100 else 100_000
        for (label, _), c0 in zip(LEVELS, quantiles(m, reps, rng)):
            print(f"{m} {label} {c0:.5f}")


if __name__ == "__main__":
    main()
