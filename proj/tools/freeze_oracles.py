#!/usr/bin/env python3
"""Prints the statsmodels/numpy reference values frozen into tests/unit/.

The fixture data are literal arrays (rounded to 3 decimals) so the C++ tests
need no RNG agreement with numpy. Rerun only when a fixture changes.
"""

import warnings

import numpy as np
import statsmodels.api as sm
from statsmodels.stats.diagnostic import (acorr_breusch_godfrey, het_breuschpagan, linear_reset,
                                          recursive_olsresiduals)
from statsmodels.stats.stattools import jarque_bera
from statsmodels.tsa.adfvalues import mackinnoncrit
from statsmodels.tsa.stattools import adfuller

warnings.filterwarnings("ignore")
rng = np.random.default_rng(20240601)

N = 40
x1 = np.round(rng.normal(size=N), 3)
x2 = np.round(rng.normal(1.0, 2.0, size=N), 3)
e = np.round(rng.normal(size=N), 3)
y = np.round(1.0 + 0.8 * x1 - 0.5 * x2 + e + 0.3 * x1 ** 2, 3)
shocks = rng.normal(size=60)
for t in range(1, 60):
    shocks[t] += 0.6 * shocks[t - 1] - 0.25 * shocks[t - 2] * (t > 1)
walk = np.round(np.cumsum(shocks), 3)


def arr(name, v):
    print(f"const std::vector<double> {name}{{" + ", ".join(repr(float(a)) for a in v) + "};")


arr("kX1", x1)
arr("kX2", x2)
arr("kY", y)
arr("kWalk", walk)

X = sm.add_constant(np.column_stack([x1, x2]))
res = sm.OLS(y, X).fit()
print("// OLS", res.params.tolist(), res.bse.tolist(), res.rsquared, res.rsquared_adj, res.fvalue, res.f_pvalue,
      res.llf, res.aic, res.bic)
print("// DW", sm.stats.durbin_watson(res.resid))
bg = acorr_breusch_godfrey(res, nlags=2)
print("// BG lm p", bg[0], bg[1])
rs = linear_reset(res, power=2, test_type="fitted", use_f=True)
print("// RESET F p", rs.fvalue, rs.pvalue)
rs3 = linear_reset(res, power=3, test_type="fitted", use_f=True)
print("// RESET(2,3) F p", rs3.fvalue, rs3.pvalue)
jb = jarque_bera(res.resid)
print("// JB p", jb[0], jb[1])
bp = het_breuschpagan(res.resid, X)
print("// BP lm p", bp[0], bp[1])
rr = recursive_olsresiduals(res)
print("// recursive standardized first/last", rr[4][3:6].tolist(), rr[4][-1])

for reg in ("c", "ct"):
    a = adfuller(walk, maxlag=4, regression=reg, autolag="AIC")
    print(f"// ADF {reg} AIC stat lag nobs", a[0], a[2], a[3])
    a = adfuller(walk, maxlag=4, regression=reg, autolag="BIC")
    print(f"// ADF {reg} BIC stat lag nobs", a[0], a[2], a[3])
    a = adfuller(walk, maxlag=2, regression=reg, autolag=None)
    print(f"// ADF {reg} fixed2 stat", a[0])
    for nobs in (25, 100, 228, 500):
        print(f"// MacKinnon {reg} nobs={nobs}", mackinnoncrit(1, reg, nobs).tolist())


def pp(y, reg, bw):
    """Textbook Phillips-Perron Z_t (Hamilton 17.6) with a Bartlett window."""
    dy = np.diff(y)
    ylag = y[:-1]
    cols = [np.ones_like(ylag)]
    if reg == "ct":
        cols.append(np.arange(1, len(ylag) + 1, dtype=float))
    cols.append(ylag)
    Z = np.column_stack(cols)
    f = sm.OLS(dy, Z).fit()
    u = f.resid
    n = len(u)
    g0 = u @ u / n
    lam2 = g0 + 2 * sum((1 - j / (bw + 1)) * (u[j:] @ u[:-j]) / n for j in range(1, bw + 1))
    s = np.sqrt(f.ssr / (n - Z.shape[1]))
    se = f.bse[-1]
    t = f.tvalues[-1]
    return np.sqrt(g0 / lam2) * t - 0.5 * (lam2 - g0) / np.sqrt(lam2) * n * se / s


for reg in ("c", "ct"):
    for bw in (0, 3):
        print(f"// PP {reg} bw={bw}", pp(walk, reg, bw))
