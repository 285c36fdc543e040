"""
The scale effect: what refinement does to derivatives
=====================================================

Restricting a fine function to a coarse grid and differentiating is not the
same as differentiating on the fine grid.  The difference is not noise: it is
carried exactly by a correction field built from half-differences, and the
identities

    Delta F = Delta F* + eps * C_right(F)
    nabla F = nabla F* + eps * C_left(F)

hold with zero residual on any dyadic refinement (F* is the chord reference,
eps the +/-1 coarse/fine indicator).  A chain rule with Taylor-style
correction terms follows and is exact on polynomials.

Run with:  python3 demos/scale_effect.py
"""

from fractions import Fraction

from scaledyn import (build_okamoto, chain_rule_delta, correction_right,
                      okamoto_correction, okamoto_identity_residual,
                      polynomial_x, random_dyadic, scale_effect_residuals,
                      sin_x)

# --- triadic: the Okamoto correction in closed form -----------------------

a = Fraction(2, 3)
F = build_okamoto(a, 6)
C = okamoto_correction(F)
print(f"okamoto a = {a}: correction at level 1 is (3a-1) * coarse slope")
print("  C_1(0) =", C.layer(1)(0))
print("  identity residuals per level:", okamoto_identity_residual(F, C))

# --- dyadic: the general identities on a rough random function ------------

G = random_dyadic(8, seed=21)
print("\nrandom dyadic function, depth 8:")
for r in scale_effect_residuals(G):
    print(f"  level {r.level}: delta residual {r.delta_max}, "
          f"nabla residual {r.nabla_max}")

# --- the chain rule, exact for polynomials --------------------------------

f = polynomial_x([Fraction(1), Fraction(-2), Fraction(0), Fraction(3)],
                 orders=3)
checks = chain_rule_delta(f, G, J=3)
print("\nchain rule residuals for a cubic observable (J = 3):")
print(" ", [c.max_residual for c in checks])

# for a non-polynomial observable the truncation order matters; the residual
# drops at the factorial rate of the Taylor tail
f = sin_x(orders=16)
for J in (4, 8, 12):
    worst = max(float(c.max_residual) for c in chain_rule_delta(f, G, J=J))
    print(f"sin observable, J = {J:2d}: max residual {worst:.3e}")

# the correction magnitude itself is worth staring at: it does not shrink
# for rough functions, which is the whole point
Cr = correction_right(G)
print("\nmax |C_right| per level:",
      [float(lay.max_abs()) for lay in Cr.layers])
