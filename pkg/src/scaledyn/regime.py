"""Power-law scale-regime estimation and the extension/decomposition machinery.

The pointwise regime of X at t over level m is ln(mu_m |Delta X_m(t)|) /
ln(mu_m).  With mu_m < 1 the logarithm is negative, so sub-linear increments
yield exponents above 1 (for the Okamoto family the exponent is
ln(1/a)/ln 3).  A vanishing increment makes the logarithm undefined; those
points are recorded with a +inf sentinel and excluded from suprema and fits,
with the count reported.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .dynamics import (CorrectionField, PointMap, correction_left,
                       correction_right, dq_delta, interpolate_onto,
                       reference_function)
from .errors import (InsufficientDataError, NotInTimeScaleError,
                     RefinementKindError, ScaleDynError)
from .scale_functions import (ElementaryAction, ScaleFunction, ScaleSequence,
                              okamoto_action, scale_action_apply)
from .timescale import DiscreteFunction, as_fraction

INF = math.inf


@dataclass(frozen=True)
class ScaleRange:
    m0: int
    m1: int

    def __post_init__(self):
        if not 0 <= self.m0 < self.m1:
            raise ScaleDynError(f"need 0 <= m0 < m1, got ({self.m0}, {self.m1})")

    def levels(self):
        return range(self.m0, self.m1 + 1)


def _check_range(F: ScaleFunction, rng: ScaleRange) -> None:
    if rng.m1 > F.depth:
        raise ScaleDynError(f"range top {rng.m1} exceeds available depth {F.depth}")


def _level_exponent(F: ScaleFunction, m: int, t) -> float:
    lay = F.layers[m]
    ts = lay.domain
    if not ts.is_uniform():
        raise ScaleDynError(f"level {m} is not uniform")
    mu = float(ts.uniform_mu())
    d = abs(float(dq_delta(lay, t)))
    if d == 0.0:
        return INF
    return math.log(mu * d) / math.log(mu)


def pointwise_regime(F: ScaleFunction, t, rng: ScaleRange) -> list[tuple[int, float]]:
    """Per-level exponent at one point; +inf marks a vanished increment."""
    _check_range(F, rng)
    t = as_fraction(t)
    if t not in F.seq[rng.m0]:
        raise NotInTimeScaleError(f"{t} is not a point of level {rng.m0}")
    return [(m, _level_exponent(F, m, t)) for m in rng.levels()]


@dataclass(frozen=True)
class LocalRegime:
    level: int
    exponent: float
    excluded: int  # points skipped for zero increment


def local_regime(F: ScaleFunction, rng: ScaleRange) -> list[LocalRegime]:
    """Per-level supremum of the pointwise exponent over the level's grid."""
    _check_range(F, rng)
    out = []
    for m in rng.levels():
        best, skipped = -INF, 0
        for t in F.seq[m].points[:-1]:
            e = _level_exponent(F, m, t)
            if e == INF:
                skipped += 1
            else:
                best = max(best, e)
        out.append(LocalRegime(m, best, skipped))
    return out


@dataclass(frozen=True)
class GlobalRegime:
    exponent: float
    label: str  # "linear" | "power-law" | "unresolved"
    locals: tuple[LocalRegime, ...]


def global_regime(F: ScaleFunction, rng: ScaleRange,
                  linear_tol: float = 1e-6) -> GlobalRegime:
    """Supremum of the local exponents over the range, with a regime label."""
    locs = local_regime(F, rng)
    usable = [l.exponent for l in locs if l.exponent != -INF]
    if not usable:
        return GlobalRegime(INF, "unresolved", tuple(locs))
    alpha = max(usable)
    label = "linear" if abs(alpha - 1) <= linear_tol else "power-law"
    return GlobalRegime(alpha, label, tuple(locs))


@dataclass(frozen=True)
class SlopeFit:
    slope: float
    intercept: float
    residual: float  # max |y - fit|
    used_levels: tuple[int, ...]


def slope_fit(F: ScaleFunction, t, rng: ScaleRange) -> SlopeFit:
    """OLS of ln(mu_m |Delta X_m(t)|) against ln(mu_m) over the range.

    A large residual flags a regime change inside the range (piecewise-linear
    log-log data).
    """
    _check_range(F, rng)
    t = as_fraction(t)
    xs, ys, used = [], [], []
    for m in rng.levels():
        lay = F.layers[m]
        mu = float(lay.domain.uniform_mu())
        d = abs(float(dq_delta(lay, t)))
        if d == 0.0:
            continue
        xs.append(math.log(mu))
        ys.append(math.log(mu * d))
        used.append(m)
    if len(xs) < 3:
        raise InsufficientDataError(
            f"slope fit needs >= 3 usable levels, got {len(xs)}")
    slope, intercept = np.polyfit(xs, ys, 1)
    fit = slope * np.asarray(xs) + intercept
    residual = float(np.max(np.abs(np.asarray(ys) - fit)))
    return SlopeFit(float(slope), float(intercept), residual, tuple(used))


# ---------------------------------------------------------------------------
# Extension and decomposition


@dataclass(frozen=True)
class Decomposition:
    """X_ext = X_star + D, per level, exactly.

    ``x_star`` holds the chord-reference layers (levels >= 1) and ``deviation``
    their pointwise difference from the extension; the deepest layers stand in
    for the asymptotic objects.
    """

    extension: ScaleFunction
    x_star: tuple[DiscreteFunction, ...]   # index 0 holds level 1
    deviation: tuple[DiscreteFunction, ...]

    def star_layer(self, m: int) -> DiscreteFunction:
        return self.x_star[m - 1]

    def deviation_layer(self, m: int) -> DiscreteFunction:
        return self.deviation[m - 1]


def extend(F: ScaleFunction, rng: ScaleRange, target_depth: int,
           action: ElementaryAction | None = None) -> Decomposition:
    """Continue F past level m1 with the action governing level m1, then split
    each level into its chord reference part and the deviation."""
    _check_range(F, rng)
    if target_depth < F.depth:
        raise ScaleDynError("target depth must not truncate the input")
    if action is None and target_depth > F.depth:
        if F.pattern is None or F.kind not in ("okamoto", "mso"):
            raise ScaleDynError("F has no generating pattern; supply the action")
        action = okamoto_action(F.pattern.symbol_at(max(rng.m1, 1)))
    layers = list(F.layers)
    for _ in range(F.depth, target_depth):
        layers.append(scale_action_apply(action, layers[-1]))
    seq = ScaleSequence([ly.domain for ly in layers], F.seq.refinement_kind)
    ext = ScaleFunction(seq, layers, kind=F.kind, pattern=F.pattern)
    ref = reference_function(ext)
    stars, devs = [], []
    for m in range(1, ext.depth + 1):
        star = ref.layer(m)
        dev = DiscreteFunction(star.domain,
                               [x - s for x, s in zip(ext.layers[m].values,
                                                      star.values)])
        stars.append(star)
        devs.append(dev)
    return Decomposition(ext, tuple(stars), tuple(devs))


# ---------------------------------------------------------------------------
# Lambda estimation


@dataclass(frozen=True)
class LambdaEstimate:
    side: str
    j_alpha: int
    per_level: tuple[PointMap, ...]  # mu**(j-1) * C**j fields, level-indexed
    start_level: int
    estimate: object                 # deepest-level spatial mean of the field
    spread: float                    # relative spread over the last 3 levels
    degenerate: bool                 # all-zero corrections


def estimate_lambda(dec: Decomposition, alpha: float, side: str) -> LambdaEstimate:
    """Estimate lambda**j_alpha from the per-level fields mu**(j-1) C**j.

    j_alpha = floor(1/alpha).  The limit is taken as the deepest level's
    spatial mean; the diagnostic is the relative spread of the last three
    per-level means, which is exactly 0 on the binomial-fluctuation oracle.
    """
    if not 0 < alpha < 1:
        raise ScaleDynError(f"alpha must lie in (0, 1), got {alpha}")
    if side not in ("plus", "minus"):
        raise ScaleDynError("side must be 'plus' or 'minus'")
    F = dec.extension
    if F.seq.refinement_kind != "dyadic":
        raise RefinementKindError("lambda estimation needs dyadic corrections")
    j = math.floor(1 / alpha)
    corr = correction_right(F) if side == "plus" else correction_left(F)
    fields, means = [], []
    for m in range(corr.start_level, corr.last_level + 1):
        mu = F.seq[m].uniform_mu()
        cm = corr.layer(m)
        vals = tuple(mu ** (j - 1) * c ** j for c in cm.values)
        fields.append(PointMap(cm.points, vals))
        total = 0
        for v in vals:
            total = total + v
        means.append(total / len(vals))
    estimate = means[-1]
    last = means[-3:]
    ref = abs(float(estimate))
    if ref == 0.0:
        spread = 0.0 if all(float(v) == 0.0 for v in last) else INF
        degenerate = True
    else:
        spread = max(abs(float(v) - float(estimate)) for v in last) / ref
        degenerate = False
    return LambdaEstimate(side, j, tuple(fields), corr.start_level,
                          estimate, spread, degenerate)
