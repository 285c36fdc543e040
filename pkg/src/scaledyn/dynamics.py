"""Reference functions, correction terms, scale-effect identities, chain rule.

Refining a layer adds information at the new points.  The reference scale
function is the no-new-information benchmark: the chord interpolation of the
coarse layer onto the fine grid.  Correction terms measure how the actual
refined derivatives deviate from the reference derivatives; for the triadic
Okamoto construction the deviation has a closed form, while for general dyadic
refinements it is expressed through the half-difference operator (nabla -
delta)/2 composed with jump selectors, signed by the scale sign epsilon (+1 on
surviving coarse points, -1 on new points).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import factorial
from typing import Sequence

from .errors import (NotInTimeScaleError, RefinementKindError, ScaleDynError,
                     TooFewPointsError)
from .scale_functions import ScaleFamily, ScaleFunction
from .symbolic import SymbolSequence, expand_pattern
from .timescale import DiscreteFunction, TimeScale, as_fraction


@dataclass(frozen=True)
class PointMap:
    """An ordered finite map from time points to values.

    Like DiscreteFunction but without the 2-point floor on its support, which
    correction terms need (the level-1 Okamoto correction lives on a single
    point).
    """

    points: tuple
    values: tuple

    @cached_property
    def _index(self) -> dict:
        return {p: v for p, v in zip(self.points, self.values)}

    def __call__(self, t):
        try:
            return self._index[as_fraction(t)]
        except KeyError:
            raise NotInTimeScaleError(f"{t} not in the support of this map") from None

    def __contains__(self, t) -> bool:
        return as_fraction(t) in self._index

    def items(self):
        return zip(self.points, self.values)

    def max_abs(self):
        return max((abs(v) for v in self.values), default=0)


def dq_delta(f: DiscreteFunction, t):
    """Forward difference quotient at one point; works on 2-point domains."""
    ts = f.domain
    i = ts.index(t)
    if i == ts.card - 1:
        raise NotInTimeScaleError(f"forward quotient undefined at the right end {t}")
    return (f.values[i + 1] - f.values[i]) / (ts.points[i + 1] - ts.points[i])


def dq_nabla(f: DiscreteFunction, t):
    """Backward difference quotient at one point."""
    ts = f.domain
    i = ts.index(t)
    if i == 0:
        raise NotInTimeScaleError(f"backward quotient undefined at the left end {t}")
    return (f.values[i] - f.values[i - 1]) / (ts.points[i] - ts.points[i - 1])


def half_difference(f: DiscreteFunction) -> PointMap:
    """(nabla - delta)/2 of f on the interior points of its domain."""
    pts = f.domain.points
    if len(pts) < 3:
        raise TooFewPointsError("half difference needs at least one interior point")
    out = []
    for i in range(1, len(pts) - 1):
        nab = (f.values[i] - f.values[i - 1]) / (pts[i] - pts[i - 1])
        dlt = (f.values[i + 1] - f.values[i]) / (pts[i + 1] - pts[i])
        out.append((nab - dlt) / 2)
    return PointMap(pts[1:-1], tuple(out))


# ---------------------------------------------------------------------------
# Reference scale function and scale sign


@dataclass(frozen=True)
class ReferenceScaleFunction:
    """Per level m >= 1, the chord interpolation of layer m-1 onto level m."""

    base: ScaleFunction
    layers: tuple[DiscreteFunction, ...]  # index 0 holds level 1

    def layer(self, m: int) -> DiscreteFunction:
        if m < 1:
            raise ScaleDynError("reference layers start at level 1")
        return self.layers[m - 1]


def _arity(F: ScaleFunction, m: int) -> int:
    coarse, fine = F.seq[m - 1], F.seq[m]
    r, rem = divmod(fine.card - 1, coarse.card - 1)
    if rem:
        raise RefinementKindError("levels are not uniformly refined")
    return r


def interpolate_onto(coarse: DiscreteFunction, fine_ts: TimeScale) -> DiscreteFunction:
    """Chord interpolation of a coarse layer onto a refining grid."""
    r, rem = divmod(fine_ts.card - 1, coarse.domain.card - 1)
    if rem:
        raise RefinementKindError("target grid does not uniformly refine the source")
    vals: list = []
    cpts = coarse.domain.points
    fpts = fine_ts.points
    for i in range(coarse.domain.card - 1):
        t0, t1 = cpts[i], cpts[i + 1]
        f0, f1 = coarse.values[i], coarse.values[i + 1]
        for k in range(r):
            t = fpts[r * i + k]
            if t == t0:
                vals.append(f0)
            else:
                vals.append(f0 + (t - t0) * (f1 - f0) / (t1 - t0))
    vals.append(coarse.values[-1])
    return DiscreteFunction(fine_ts, vals)


def reference_function(F: ScaleFunction) -> ReferenceScaleFunction:
    if F.depth < 1:
        raise TooFewPointsError("reference function needs at least 2 levels")
    layers = tuple(interpolate_onto(F.layers[m - 1], F.seq[m])
                   for m in range(1, F.depth + 1))
    return ReferenceScaleFunction(F, layers)


def scale_sign(F: ScaleFunction, m: int) -> DiscreteFunction:
    """epsilon at level m: +1 on points inherited from level m-1, -1 on new points."""
    if not 1 <= m <= F.depth:
        raise ScaleDynError(f"level {m} out of range 1..{F.depth}")
    coarse = F.seq[m - 1]
    vals = [1 if t in coarse else -1 for t in F.seq[m].points]
    return DiscreteFunction(F.seq[m], vals)


# ---------------------------------------------------------------------------
# Correction terms


@dataclass(frozen=True)
class CorrectionField:
    """Per-level correction values with a side tag (right = forward/delta
    side, left = backward/nabla side, delta = triadic closed form)."""

    side: str
    layers: tuple[PointMap, ...]
    start_level: int = 1

    def layer(self, m: int) -> PointMap:
        if m < self.start_level:
            raise ScaleDynError(f"correction starts at level {self.start_level}")
        return self.layers[m - self.start_level]

    @property
    def last_level(self) -> int:
        return self.start_level + len(self.layers) - 1


def _require_dyadic(F: ScaleFunction, m: int) -> None:
    if _arity(F, m) != 2:
        raise RefinementKindError(
            "left/right correction terms require dyadic refinement; "
            "triadic constructions have their own closed form")


def _correction_level(F: ScaleFunction, m: int, side: str) -> PointMap:
    _require_dyadic(F, m)
    fine = F.seq[m]
    coarse = F.seq[m - 1]
    H = half_difference(F.layers[m])
    pts_all = fine.points
    if side == "right":
        support = pts_all[:-1]  # forward quotients exist here
    else:
        support = pts_all[1:]
    vals = []
    for t in support:
        if t in coarse:
            ref = fine.sigma(t) if side == "right" else fine.rho(t)
        else:
            ref = t
        h = H(ref)
        vals.append(h if side == "right" else -h)
    return PointMap(tuple(support), tuple(vals))


def correction_right(F: ScaleFunction, m: int | None = None) -> CorrectionField:
    """C-right: the sigma-composed half-difference, signed for the Delta identity.

    At a surviving coarse point the half-difference of the next (new) point is
    taken; at a new point its own.  With epsilon this satisfies
    Delta F = Delta F_ref + epsilon * C_right on each level exactly.
    """
    levels = [m] if m is not None else range(1, F.depth + 1)
    layers = tuple(_correction_level(F, lv, "right") for lv in levels)
    return CorrectionField("right", layers, start_level=levels[0] if m else 1)


def correction_left(F: ScaleFunction, m: int | None = None) -> CorrectionField:
    """C-left: the negated rho-composed half-difference, for the nabla identity
    nabla F = nabla F_ref + epsilon * C_left."""
    levels = [m] if m is not None else range(1, F.depth + 1)
    layers = tuple(_correction_level(F, lv, "left") for lv in levels)
    return CorrectionField("left", layers, start_level=levels[0] if m else 1)


def okamoto_correction(F: ScaleFunction, a=None) -> CorrectionField:
    """Closed-form triadic correction C_m = (3a - 1) * Delta F_{m-1}.

    Defined on the left endpoints of the coarse elementary intervals (all of
    T_{m-1} except its right end), where the refined slope is 3a times the
    chord slope; there Delta F_m = Delta F_ref,m + C_m holds exactly.  The
    factor uses the per-elementary-interval normalization, under which the
    vanishing statement reads: C = 0 everywhere iff a = 1/3.
    """
    if a is None:
        if F.pattern is None or len(set(F.pattern.params)) != 1:
            raise ScaleDynError("parameter a not recoverable; pass it explicitly")
        a = F.pattern.params[0]
    a = as_fraction(a)
    layers = []
    for m in range(1, F.depth + 1):
        if _arity(F, m) != 3:
            raise RefinementKindError("Okamoto correction requires triadic refinement")
        coarse = F.layers[m - 1]
        pts = coarse.domain.points[:-1]
        vals = tuple((3 * a - 1) * dq_delta(coarse, t) for t in pts)
        layers.append(PointMap(pts, vals))
    return CorrectionField("delta", tuple(layers))


def mso_correction(F: ScaleFunction, s: SymbolSequence | None = None) -> CorrectionField:
    """Multiscale correction: level m uses the pattern's level-m symbol s_m
    in place of a in the triadic closed form."""
    if s is None:
        if F.pattern is None:
            raise ScaleDynError("no pattern on F; pass the symbol sequence")
        s = expand_pattern(F.pattern)
    if F.pattern is not None:
        own = expand_pattern(F.pattern)
        if own.window(F.depth) != s.window(F.depth):
            raise ScaleDynError("symbol sequence does not match F's pattern")
    layers = []
    for m in range(1, F.depth + 1):
        if _arity(F, m) != 3:
            raise RefinementKindError("MSO correction requires triadic refinement")
        a = as_fraction(s.symbol_at(m))
        coarse = F.layers[m - 1]
        pts = coarse.domain.points[:-1]
        vals = tuple((3 * a - 1) * dq_delta(coarse, t) for t in pts)
        layers.append(PointMap(pts, vals))
    return CorrectionField("delta", tuple(layers))


def okamoto_identity_residual(F: ScaleFunction, C: CorrectionField) -> list:
    """Max |Delta F_m - Delta F_ref,m - C_m| per level over C's support; exact 0
    for rational data."""
    out = []
    for m in range(1, F.depth + 1):
        fine = F.layers[m]
        coarse = F.layers[m - 1]
        Cm = C.layer(m)
        worst = 0
        for t, c in Cm.items():
            lhs = dq_delta(fine, t)
            ref = dq_delta(coarse, t)  # chord slope of the enclosing interval
            worst = max(worst, abs(lhs - ref - c))
        out.append(worst)
    return out


# ---------------------------------------------------------------------------
# Scale-effect identities (dyadic)


@dataclass(frozen=True)
class ScaleEffectResidual:
    level: int
    delta_max: object
    nabla_max: object


def scale_effect_residuals(F: ScaleFunction) -> list[ScaleEffectResidual]:
    """Pointwise residuals of Delta F = Delta F_ref + eps*C_right and
    nabla F = nabla F_ref + eps*C_left at every level; exactly 0 for exact data.

    Works on precomputed quotient arrays: under dyadic refinement the
    reference quotients are the coarse quotients, each covering one pair of
    fine intervals, so no interpolated layer has to be materialized.
    """
    out = []
    for m in range(1, F.depth + 1):
        _require_dyadic(F, m)
        fine = F.layers[m]
        pts, vals = fine.domain.points, fine.values
        n = len(pts)
        q = [(vals[i + 1] - vals[i]) / (pts[i + 1] - pts[i])
             for i in range(n - 1)]
        coarse = F.layers[m - 1]
        cpts, cvals = coarse.domain.points, coarse.values
        qc = [(cvals[k + 1] - cvals[k]) / (cpts[k + 1] - cpts[k])
              for k in range(len(cpts) - 1)]
        half = [(q[i - 1] - q[i]) / 2 for i in range(1, n - 1)]  # H at t_i

        def H(i):
            return half[i - 1]

        dmax = 0
        for i in range(n - 1):
            # even fine indices are the surviving coarse points
            if i % 2 == 0:
                res = q[i] - qc[i // 2] - H(i + 1)
            else:
                res = q[i] - qc[i // 2] + H(i)
            dmax = max(dmax, abs(res))
        nmax = 0
        for i in range(1, n):
            if i % 2 == 0:
                res = q[i - 1] - qc[(i - 1) // 2] - (-H(i - 1))
            else:
                res = q[i - 1] - qc[(i - 1) // 2] + (-H(i))
            nmax = max(nmax, abs(res))
        out.append(ScaleEffectResidual(m, dmax, nmax))
    return out


def scale_effect_identity_check(F: ScaleFunction):
    """Max of both identity residuals per level."""
    return [max(r.delta_max, r.nabla_max) for r in scale_effect_residuals(F)]


# ---------------------------------------------------------------------------
# Chain rule


@dataclass(frozen=True)
class ChainRuleCheck:
    level: int
    lhs: PointMap
    rhs: PointMap
    max_residual: object


def _chain_rule_level(f, F: ScaleFunction, ref: ReferenceScaleFunction,
                      m: int, J: int, forward: bool) -> ChainRuleCheck:
    fine = F.seq[m]
    coarse = F.seq[m - 1]
    X = F.layers[m]
    Xs = ref.layer(m)
    eps = scale_sign(F, m)
    C = _correction_level(F, m, "right" if forward else "left")
    mu = fine.uniform_mu()
    g = DiscreteFunction(fine, [f.evaluate(t, x) for t, x in X.items()])
    gs = DiscreteFunction(fine, [f.evaluate(t, x) for t, x in Xs.items()])
    dq = dq_delta if forward else dq_nabla
    pts, lhs_vals, rhs_vals = [], [], []
    for t, c in C.items():
        sel = (fine.sigma(t) if forward else fine.rho(t)) if t in coarse else t
        xsel = Xs(sel)
        corr = 0
        for j in range(1, J + 1):
            term = (Fraction(1, factorial(j)) * mu ** (j - 1)
                    * c ** j * f.partial_x(j)(sel, xsel))
            if not forward and j % 2 == 0:
                term = -term
            corr = corr + term
        pts.append(t)
        lhs_vals.append(dq(g, t))
        rhs_vals.append(dq(gs, t) + eps(t) * corr)
    lhs = PointMap(tuple(pts), tuple(lhs_vals))
    rhs = PointMap(tuple(pts), tuple(rhs_vals))
    worst = max((abs(u - v) for u, v in zip(lhs_vals, rhs_vals)), default=0)
    return ChainRuleCheck(m, lhs, rhs, worst)


def chain_rule_delta(f, F: ScaleFunction, J: int) -> list[ChainRuleCheck]:
    """Both sides of the forward chain rule per level, truncating the Taylor
    sum at order J.

    Exact for f polynomial in x of degree <= J; otherwise the residual decays
    at the Lagrange-remainder rate in J.
    """
    if J < 1:
        raise ScaleDynError("truncation order must be >= 1")
    ref = reference_function(F)
    return [_chain_rule_level(f, F, ref, m, J, forward=True)
            for m in range(1, F.depth + 1)]


def chain_rule_nabla(f, F: ScaleFunction, J: int) -> list[ChainRuleCheck]:
    """Backward version: left selectors and alternating signs (-1)**(j-1)."""
    if J < 1:
        raise ScaleDynError("truncation order must be >= 1")
    ref = reference_function(F)
    return [_chain_rule_level(f, F, ref, m, J, forward=False)
            for m in range(1, F.depth + 1)]


# ---------------------------------------------------------------------------
# Reduced sequences and the derivability probe


def left_reduced_points(F: ScaleFunction) -> list[tuple[Fraction, int]]:
    """Points t0 + mu/3 taken from each elementary interval at each triadic
    step, with the level at which each enters the sequence."""
    return _reduced_points(F, 1)


def right_reduced_points(F: ScaleFunction) -> list[tuple[Fraction, int]]:
    """Mirror construction taking t0 + 2*mu/3."""
    return _reduced_points(F, 2)


def _reduced_points(F: ScaleFunction, third: int) -> list[tuple[Fraction, int]]:
    out = []
    for m in range(1, F.depth + 1):
        if _arity(F, m) != 3:
            raise RefinementKindError("reduced sequences are triadic notions")
        coarse = F.seq[m - 1]
        for i in range(coarse.card - 1):
            t0, t1 = coarse.points[i], coarse.points[i + 1]
            out.append((t0 + third * (t1 - t0) / 3, m))
    return out


@dataclass(frozen=True)
class TrendReport:
    label: str  # vanishing | diverging | converging-or-flat | undefined
    ratio: float | None
    values: tuple


@dataclass(frozen=True)
class DerivabilityReport:
    t: Fraction
    entry_level: int
    levels: tuple[int, ...]
    delta: TrendReport
    nabla: TrendReport
    correction: TrendReport

    @property
    def derivative(self) -> float | None:
        """The common limit when both one-sided trends settle on one value."""
        if self.delta.label == self.nabla.label == "converging-or-flat" \
                and self.delta.values and self.nabla.values:
            d, n = float(self.delta.values[-1]), float(self.nabla.values[-1])
            if abs(d - n) <= 1e-9 * max(1.0, abs(d)):
                return d
        return None


def classify_trend(values: Sequence, window: int = 4) -> TrendReport:
    vals = tuple(values)
    floats = [float(v) for v in vals]
    if not floats:
        return TrendReport("undefined", None, vals)
    tailv = floats[-window:]
    if all(v == 0 for v in tailv):
        return TrendReport("vanishing", 0.0, vals)
    ratios = [tailv[i + 1] / tailv[i] for i in range(len(tailv) - 1) if tailv[i] != 0]
    if not ratios:
        return TrendReport("undefined", None, vals)
    r = sum(ratios) / len(ratios)
    if abs(r) < 1 - 1e-9:
        return TrendReport("vanishing", r, vals)
    if abs(r) > 1 + 1e-9:
        return TrendReport("diverging", r, vals)
    return TrendReport("converging-or-flat", r, vals)


def derivability_probe(F: ScaleFunction, t, correction: CorrectionField | None = None,
                       a=None) -> DerivabilityReport:
    """Tabulate Delta, nabla and the correction at t across levels and
    classify each trend (geometric ratio over the last levels)."""
    t = as_fraction(t)
    entry = next((m for m in range(F.depth + 1) if t in F.seq[m]), None)
    if entry is None:
        raise NotInTimeScaleError(f"{t} never enters the scale sequence")
    if correction is None:
        correction = okamoto_correction(F, a=a)
    levels, dvals, nvals, cvals = [], [], [], []
    for m in range(max(entry, 1), F.depth + 1):
        levels.append(m)
        lay = F.layers[m]
        if t != F.seq[m].b:
            dvals.append(dq_delta(lay, t))
        if t != F.seq[m].a:
            nvals.append(dq_nabla(lay, t))
        if correction.start_level <= m <= correction.last_level:
            cm = correction.layer(m)
            if t in cm:
                cvals.append(cm(t))
    return DerivabilityReport(t, entry, tuple(levels),
                              classify_trend(dvals), classify_trend(nvals),
                              classify_trend(cvals))
