"""Synthetic dyadic scale functions used as oracles and property-test fodder.

The binomial fluctuation displaces each new midpoint off the chord by
lam * sqrt(mu_m), with mu_m the fine-level graininess.  Squaring the
half-difference there gives mu * C**2 = lam**2 with no error term at all,
which is why the values are kept in Q(sqrt 2): sqrt(2**-m) is irrational at
odd m and the identity must survive exact comparison.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .errors import ScaleDynError
from .exactnum import sqrt_dyadic
from .scale_functions import ScaleFunction, ScaleSequence
from .timescale import DiscreteFunction, TimeScale, as_fraction


def _refine_dyadic(layer: DiscreteFunction, displace) -> DiscreteFunction:
    """One dyadic refinement; ``displace(i, t0, t1, f0, f1)`` gives the offset
    from the chord at the midpoint of interval i."""
    pts, vals = [], []
    dom = layer.domain
    for i in range(dom.card - 1):
        t0, t1 = dom.points[i], dom.points[i + 1]
        f0, f1 = layer.values[i], layer.values[i + 1]
        pts.append(t0)
        vals.append(f0)
        pts.append((t0 + t1) / 2)
        vals.append((f0 + f1) / 2 + displace(i, t0, t1, f0, f1))
    pts.append(dom.b)
    vals.append(layer.values[-1])
    return DiscreteFunction(TimeScale(pts), vals)


def _assemble(layers, kind: str) -> ScaleFunction:
    seq = ScaleSequence([ly.domain for ly in layers], "dyadic")
    return ScaleFunction(seq, layers, kind=kind)


def binomial_fluctuation(depth: int, lam, sign_mode: str = "alternating",
                         seed: int | None = None,
                         base: DiscreteFunction | None = None) -> ScaleFunction:
    """Midpoint-displacement function with offsets +/- lam*sqrt(mu_m) in
    Q(sqrt 2), on the dyadic levels of [0, 1].

    ``sign_mode``: "alternating" flips the sign interval by interval
    (deterministic), "random" draws signs from the seeded generator.
    """
    if depth < 1:
        raise ScaleDynError("binomial fluctuation needs depth >= 1")
    lam = as_fraction(lam)
    if sign_mode not in ("alternating", "random"):
        raise ScaleDynError(f"unknown sign mode {sign_mode!r}")
    rng = random.Random(0 if seed is None else seed)
    layers = [base if base is not None else
              DiscreteFunction(TimeScale([0, 1]), [Fraction(0), Fraction(0)])]
    for m in range(1, depth + 1):
        root_mu = sqrt_dyadic(Fraction(1, 2 ** m))

        def displace(i, t0, t1, f0, f1, root_mu=root_mu):
            if sign_mode == "alternating":
                sign = 1 if i % 2 == 0 else -1
            else:
                sign = rng.choice((1, -1))
            return sign * lam * root_mu

        layers.append(_refine_dyadic(layers[-1], displace))
    return _assemble(layers, "binomial")


def random_dyadic(depth: int, seed: int, denominator: int = 2048,
                  base: DiscreteFunction | None = None) -> ScaleFunction:
    """Dyadic scale function whose midpoint values sit at i.i.d. uniform
    rational offsets from the chord; exact Fraction values throughout."""
    if depth < 1:
        raise ScaleDynError("random dyadic construction needs depth >= 1")
    rng = random.Random(seed)
    layers = [base if base is not None else
              DiscreteFunction(TimeScale([0, 1]),
                               [Fraction(0), Fraction(rng.randint(-4, 4))])]

    def displace(i, t0, t1, f0, f1):
        return Fraction(rng.randint(-denominator, denominator), denominator)

    for _ in range(depth):
        layers.append(_refine_dyadic(layers[-1], displace))
    return _assemble(layers, "random")


def smooth_dyadic(depth: int, fn=None) -> ScaleFunction:
    """Dyadic sampling of a smooth map (default t -> t*(1-t)); every layer is
    the restriction of the same function, so corrections shrink with mu."""
    if depth < 1:
        raise ScaleDynError("depth >= 1 required")
    if fn is None:
        fn = lambda t: t * (1 - t)
    layers = []
    for m in range(depth + 1):
        pts = [Fraction(k, 2 ** m) for k in range(2 ** m + 1)]
        layers.append(DiscreteFunction(TimeScale(pts), [fn(t) for t in pts]))
    return _assemble(layers, "smooth")
