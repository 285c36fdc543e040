"""
Scale regimes and the lambda limits
===================================

How fast do increments shrink as the grid refines?  The pointwise exponent
ln(mu |Delta F|) / ln(mu) answers per level; its supremum over a range of
levels is the regime of the function there.  A multiscale pattern can switch
regime block by block, and a log-log slope fit recovers each block's exponent.

The second half estimates lambda^2 = lim mu * C^2 on a midpoint-displacement
construction whose values live in Q(sqrt 2), so the limit is exact with zero
spread rather than a fitted number.

Run with:  python3 demos/regime_and_lambda.py
"""

import math
from fractions import Fraction

from scaledyn import (INFINITE, MultiscalePattern, ScaleRange,
                      binomial_fluctuation, build_multiscale, build_okamoto,
                      estimate_lambda, extend, global_regime,
                      pointwise_regime, slope_fit)

LN3 = math.log(3)

# --- a single-parameter function has one regime ---------------------------

a = Fraction(5, 6)
F = build_okamoto(a, 8)
print(f"okamoto a = {a}: pointwise exponent at t = 0 "
      f"(expect ln(1/a)/ln3 = {math.log(1 / float(a)) / LN3:.6f})")
for m, e in pointwise_regime(F, 0, ScaleRange(1, 8)):
    print(f"  level {m}: {e:.15f}")

# --- a three-block pattern switches regimes -------------------------------

pattern = MultiscalePattern([Fraction(2, 9), Fraction(2, 3), Fraction(5, 6)],
                            (4, 3, INFINITE))
M = build_multiscale(pattern, 10)
rep = global_regime(M, ScaleRange(1, 10))
print(f"\nMSO (2/9, 2/3, 5/6) / (4, 3, inf): global exponent "
      f"{rep.exponent:.12f} [{rep.label}]")
print(f"  expected ln(9/2)/ln3 = {math.log(4.5) / LN3:.12f}")

print("per-block slope fits at t = 0:")
for rng, name in ((ScaleRange(1, 4), "ln(9/2)/ln3"),
                  (ScaleRange(4, 7), "ln(3/2)/ln3"),
                  (ScaleRange(7, 10), "ln(6/5)/ln3")):
    fit = slope_fit(M, 0, rng)
    print(f"  levels {rng.m0}-{rng.m1}: slope {fit.slope:.12f} "
          f"(target {name}), residual {fit.residual:.2e}")

# fitting across a block boundary is a diagnosable mistake: the residual
# jumps by many orders of magnitude
bad = slope_fit(M, 0, ScaleRange(2, 6))
print(f"  levels 2-6 (crosses a boundary): residual {bad.residual:.2e}")

# --- exact lambda estimation on the binomial oracle -----------------------

lam = Fraction(3, 2)
B = binomial_fluctuation(10, lam)
dec = extend(B, ScaleRange(1, 10), 10)
est = estimate_lambda(dec, 0.5, "plus")
print(f"\nbinomial displacement lam = {lam}: j_alpha = {est.j_alpha}")
print(f"  estimated lambda^2 = {est.estimate}  (target {lam * lam})")
print(f"  spread over the last levels: {est.spread}")
