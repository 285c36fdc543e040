"""
The Okamoto family on nested triadic scales
===========================================

One parameter a in (0, 1) controls a whole family of self-affine functions.
Each refinement step replaces every segment by three, with values
(F0, F0 + a*gap, F0 + (1-a)*gap, F1).  Three regimes coexist in this family:

  a = 1/3   the identity: every level samples t -> t
  a = 1/2   plateaus: forward differences die on a growing set of points
  a > 1/2   wild growth: the corner derivative blows up like (3a)^m

Run with:  python3 demos/okamoto_family.py
"""

from fractions import Fraction

from scaledyn import (build_okamoto, dq_delta, derivability_probe,
                      left_reduced_points, save_scale_function)

DEPTH = 6

for a in (Fraction(1, 4), Fraction(1, 3), Fraction(1, 2), Fraction(2, 3),
          Fraction(5, 6)):
    F = build_okamoto(a, DEPTH)
    print(f"a = {a}")

    # the corner slope at t = 0 is exactly (3a)^m; watch it shrink, sit
    # still, or explode depending on a
    slopes = [dq_delta(F.layers[m], 0) for m in range(1, DEPTH + 1)]
    print("  corner slopes:", ", ".join(str(s) for s in slopes))

    # the probe classifies the per-level trend and reports a limit when the
    # quotients settle
    rep = derivability_probe(F, 0)
    line = f"  probe at 0: delta {rep.delta.label}"
    if rep.derivative is not None:
        line += f", derivative = {rep.derivative}"
    print(line)
    print()

# the a = 1/2 plateau set: every left-reduced point keeps a zero forward
# difference from the level where it first appears
H = build_okamoto(Fraction(1, 2), DEPTH)
reduced = left_reduced_points(H)
print(f"a = 1/2 has {len(reduced)} left-reduced points at depth {DEPTH};")
t, entry = reduced[1]
print(f"for example t = {t} enters at level {entry} and from there on:")
for m in range(entry, DEPTH + 1):
    print(f"  level {m}: forward quotient = {dq_delta(H.layers[m], t)}")

# dump one member for plotting; each level becomes its own CSV
paths = save_scale_function(build_okamoto(Fraction(2, 3), 4), "okamoto_2_3")
print("\nwrote", len(paths), "files for the a = 2/3 stack, e.g.", paths[-1])
