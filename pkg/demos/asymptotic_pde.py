"""
Asymptotic operators and the equations they satisfy
===================================================

When the regular part of a scale function carries fractional fluctuations,
the limit derivatives pick up correction terms weighted by the lambda limits.
The complex combination Box = (D+ + D-)/2 + i eta (D+ - D-)/2 turns the
second-order scale equation into familiar PDEs:

  gamma = -lam^2/2  ->  the diffusion equation
  gamma = hbar/2    ->  the Schroedinger equation

This script checks those statements the way a desk calculation can: evaluate
each displayed equation on an exact solution and print the residual.

Run with:  python3 demos/asymptotic_pde.py
"""

from fractions import Fraction

from scaledyn import (AsymptoticContext, Grid, ModelParameters, Potential,
                      box_infinity, box_infinity_closed_form,
                      box_nonlinear_residual, delta_infinity,
                      diffusion_residual, harmonic_ground_state, heat_kernel,
                      nabla_infinity, plane_wave, scale_newton_residual,
                      schrodinger_residual, sin_x, smooth_dyadic)

# --- the operators in their classical and fractional modes ----------------

ctx_classical = AsymptoticContext(lambda t: t * t, lambda t: 2 * t,
                                  lambda t: 2 * t, alpha=1.0)
ctx_fractional = AsymptoticContext(lambda t: t * t, lambda t: 2 * t,
                                   lambda t: 2 * t, alpha=0.5,
                                   lam_plus=0.3, lam_minus=0.3, eta="-1")
f = sin_x()
t = 0.8
print("at t = 0.8 along X*(t) = t^2 with observable sin(x):")
print(f"  classical  Delta_inf = {delta_infinity(ctx_classical, f, t):+.12f}")
print(f"  fractional Delta_inf = {delta_infinity(ctx_fractional, f, t):+.12f}")
print(f"  fractional nabla_inf = {nabla_infinity(ctx_fractional, f, t):+.12f}")
bx = box_infinity(ctx_fractional, f, t)
cf = box_infinity_closed_form(ctx_fractional, f, t)
print(f"  Box_inf (combination) = {bx:.12f}")
print(f"  Box_inf (closed form) = {cf:.12f}   |diff| = {abs(bx - cf):.2e}")

# --- the scale Newton equation is level blind -----------------------------

X = smooth_dyadic(5, fn=lambda t: t * t)  # X'' = 2, matches U'(x) = 2
res = scale_newton_residual(X, Potential.linear(2))
print("\nscale Newton residual for X(t) = t^2 against U'(x) = 2:")
print(" ", [(r.level, r.max_abs) for r in res])

# --- exact solutions against the asymptotic PDEs --------------------------

grid = Grid.parse("0.2:1.5:9,-2:2:17")

lam_sq = 0.8
p_diff = ModelParameters.diffusion(lam_sq)
r = diffusion_residual(heat_kernel(lam_sq / 2), p_diff, Potential.zero(), grid)
print(f"\nheat kernel vs diffusion (lam^2 = {lam_sq}): residual {r:.2e}")

hbar = 1.0
p_sch = ModelParameters.schrodinger(hbar)
r = schrodinger_residual(plane_wave(hbar, 1.3), p_sch, Potential.zero(), grid)
print(f"plane wave vs free Schroedinger: residual {r:.2e}")

r = schrodinger_residual(harmonic_ground_state(hbar), p_sch,
                         Potential.harmonic(), grid)
print(f"harmonic ground state vs Schroedinger: residual {r:.2e}")

# the gamma = hbar/2 specialization collapses the nonlinear Box form onto
# the Schroedinger residual pointwise
rb = box_nonlinear_residual(harmonic_ground_state(hbar), p_sch,
                            Potential.harmonic(), grid)
print(f"Box nonlinear form, same field: residual {rb:.2e} "
      f"(equal to the Schroedinger value)")
