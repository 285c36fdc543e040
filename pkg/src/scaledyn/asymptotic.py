"""Asymptotic operators on observables of the regular part.

In a fractional regime of order alpha the discrete derivatives of f(t, X) do
not converge to a classical chain rule: a persistent correction of order
j_alpha = floor(1/alpha) survives, quantified by the lambda limits of the
correction fields.  The operators here evaluate that augmented chain rule on
the regular part X_star, represented by deepest-level samples; no continuum
object is constructed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .errors import ScaleDynError
from .observables import Observable
from .timescale import DiscreteFunction, as_fraction

ETA_VALUES = {"+1": 1, "-1": -1, "+i": 1j, "-i": -1j}


@dataclass(frozen=True)
class AsymptoticContext:
    """X_star with one-sided derivatives, the regime order, and the lambda data.

    ``lam_plus`` and ``lam_minus`` hold lambda^{j_alpha} (the limits of the
    correction fields raised to j_alpha), not lambda itself.  alpha = 1 selects
    the classical mode: correction terms absent, pure one-sided chain rules.
    """

    x_star: Callable
    d_plus: Callable
    d_minus: Callable
    alpha: float
    lam_plus: complex = 0.0
    lam_minus: complex = 0.0
    eta: str = "-1"

    def __post_init__(self):
        if not 0 < self.alpha <= 1:
            raise ScaleDynError(f"alpha must lie in (0, 1], got {self.alpha}")
        if self.eta not in ETA_VALUES:
            raise ScaleDynError(f"eta must be one of {sorted(ETA_VALUES)}")

    @property
    def classical(self) -> bool:
        return self.alpha == 1

    @property
    def j_alpha(self) -> int:
        return math.floor(1 / self.alpha)

    @property
    def eta_value(self) -> complex:
        return ETA_VALUES[self.eta]

    @classmethod
    def from_samples(cls, samples: DiscreteFunction, alpha: float,
                     lam_plus=0.0, lam_minus=0.0, eta: str = "-1"):
        """Context whose x_star and one-sided derivatives are sample lookups
        and one-sided difference quotients on the sample grid."""
        ts = samples.domain

        def x_star(t):
            return samples(t)

        def d_plus(t):
            t = as_fraction(t)
            s = ts.sigma(t)
            if s == t:
                raise ScaleDynError(f"no forward neighbor at {t}")
            return (samples(s) - samples(t)) / (s - t)

        def d_minus(t):
            t = as_fraction(t)
            r = ts.rho(t)
            if r == t:
                raise ScaleDynError(f"no backward neighbor at {t}")
            return (samples(t) - samples(r)) / (t - r)

        return cls(x_star, d_plus, d_minus, alpha, lam_plus, lam_minus, eta)


def _drift(ctx: AsymptoticContext, f: Observable, t, one_sided: Callable):
    """Total one-sided derivative of t -> f(t, X_star(t)):
    partial_t f + partial_x f * dX_star."""
    x = ctx.x_star(t)
    return f.partial_t(t, x) + f.partial_x(1)(t, x) * one_sided(t)


def delta_infinity(ctx: AsymptoticContext, f: Observable, t):
    """Right drift plus the lambda-plus correction of order j_alpha."""
    value = _drift(ctx, f, t, ctx.d_plus)
    if ctx.classical:
        return value
    j = ctx.j_alpha
    x = ctx.x_star(t)
    return value + ctx.lam_plus / math.factorial(j) * f.partial_x(j)(t, x)


def nabla_infinity(ctx: AsymptoticContext, f: Observable, t):
    """Left drift minus the lambda-minus correction of order j_alpha."""
    value = _drift(ctx, f, t, ctx.d_minus)
    if ctx.classical:
        return value
    j = ctx.j_alpha
    x = ctx.x_star(t)
    return value - ctx.lam_minus / math.factorial(j) * f.partial_x(j)(t, x)


def box_infinity(ctx: AsymptoticContext, f: Observable, t) -> complex:
    """The complex combination (1/2)(D+ + D-) + i(eta/2)(D+ - D-) of the two
    asymptotic derivatives.  This linear-combination path is the defining one;
    see ``box_infinity_closed_form`` for the expanded equivalent."""
    dp = delta_infinity(ctx, f, t)
    dn = nabla_infinity(ctx, f, t)
    return (dp + dn) / 2 + 1j * ctx.eta_value / 2 * (dp - dn)


def lambda_alpha(ctx: AsymptoticContext, halved: bool = True) -> complex:
    """The Box correction coefficient
    (lam+ - lam-) + i*eta*(lam+ + lam-), times 1/2 when ``halved``.

    The halved value is what direct substitution into the Box combination
    produces and is the one the closed form uses; the unhalved variant is
    exposed for comparison with the coefficient as conventionally printed.
    """
    lam = (ctx.lam_plus - ctx.lam_minus) \
        + 1j * ctx.eta_value * (ctx.lam_plus + ctx.lam_minus)
    return lam / 2 if halved else lam


def box_infinity_closed_form(ctx: AsymptoticContext, f: Observable, t) -> complex:
    """Box drift of f plus (lambda_alpha / j_alpha!) times the j_alpha-th
    x-partial; agrees with ``box_infinity`` exactly."""
    dp = _drift(ctx, f, t, ctx.d_plus)
    dn = _drift(ctx, f, t, ctx.d_minus)
    box_drift = (dp + dn) / 2 + 1j * ctx.eta_value / 2 * (dp - dn)
    if ctx.classical:
        return box_drift
    j = ctx.j_alpha
    x = ctx.x_star(t)
    return box_drift + lambda_alpha(ctx) / math.factorial(j) * f.partial_x(j)(t, x)
