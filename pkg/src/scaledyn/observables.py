"""Observables f(t, x) with analytic partial derivatives.

Chain-rule and asymptotic-operator checks need exact partials: finite
differences would pollute identities that hold with residual zero.  An
Observable therefore carries its own partial-derivative callables, with a
finite-difference self-check available to guard against inconsistent inputs.
Polynomial helpers keep Fraction inputs exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .errors import ScaleDynError


@dataclass(frozen=True)
class Observable:
    evaluate: Callable
    partial_t: Callable
    partials_x: tuple  # entry j-1 holds d^j f / dx^j
    name: str = "f"

    def partial_x(self, j: int) -> Callable:
        if not 1 <= j <= len(self.partials_x):
            raise ScaleDynError(
                f"{self.name} carries x-partials up to order {len(self.partials_x)}, "
                f"order {j} requested")
        return self.partials_x[j - 1]


def x_power(d: int, orders: int | None = None) -> Observable:
    """f(t, x) = x**d with exact partials (Fraction in, Fraction out)."""
    if d < 0:
        raise ScaleDynError("exponent must be >= 0")
    orders = d + 1 if orders is None else orders

    def deriv(j):
        coeff = 1
        for i in range(j):
            coeff *= d - i
        def pj(t, x, coeff=coeff, p=d - j):
            if coeff == 0:
                return 0 * x if not isinstance(x, (int, float)) else 0
            return coeff * x ** p
        return pj

    return Observable(lambda t, x: x ** d, lambda t, x: 0,
                      tuple(deriv(j) for j in range(1, orders + 1)),
                      name=f"x^{d}")


def polynomial_x(coeffs: Sequence, orders: int = 4) -> Observable:
    """f(t, x) = sum coeffs[d] * x**d, exact for rational coefficients."""
    cs = tuple(coeffs)

    def eval_(t, x):
        total = 0
        for d, c in enumerate(cs):
            total = total + c * x ** d
        return total

    def deriv(j):
        def pj(t, x):
            total = 0
            for d, c in enumerate(cs):
                if d < j:
                    continue
                coeff = c
                for i in range(j):
                    coeff *= d - i
                total = total + coeff * x ** (d - j)
            return total
        return pj

    return Observable(eval_, lambda t, x: 0,
                      tuple(deriv(j) for j in range(1, orders + 1)),
                      name="poly")


def sin_x(orders: int = 12) -> Observable:
    """f(t, x) = sin x; partials cycle through cos, -sin, -cos, sin."""
    cycle = (math.cos, lambda x: -math.sin(x), lambda x: -math.cos(x), math.sin)
    return Observable(lambda t, x: math.sin(float(x)), lambda t, x: 0.0,
                      tuple((lambda t, x, g=cycle[(j - 1) % 4]: g(float(x)))
                            for j in range(1, orders + 1)),
                      name="sin")


def separable(g_t: Callable, g_t_prime: Callable, h: Observable) -> Observable:
    """f(t, x) = g(t) + h(x) for drift-plus-shape observables."""
    return Observable(lambda t, x: g_t(t) + h.evaluate(t, x),
                      lambda t, x: g_t_prime(t),
                      h.partials_x, name=f"g(t)+{h.name}")


def check_partials(f: Observable, points: Sequence[tuple], tol: float = 1e-6,
                   h: float = 1e-5) -> float:
    """Central finite-difference probe of partial_t and the first x-partial.

    Returns the worst absolute deviation; raises if it exceeds tol.
    """
    worst = 0.0
    for t, x in points:
        t, x = float(t), float(x)
        fd_t = (f.evaluate(t + h, x) - f.evaluate(t - h, x)) / (2 * h)
        fd_x = (f.evaluate(t, x + h) - f.evaluate(t, x - h)) / (2 * h)
        worst = max(worst,
                    abs(fd_t - float(f.partial_t(t, x))),
                    abs(fd_x - float(f.partial_x(1)(t, x))))
    if worst > tol:
        raise ScaleDynError(f"partials inconsistent with evaluate: {worst} > {tol}")
    return worst
