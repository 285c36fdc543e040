"""Scale sequences, scale functions, and elementary actions.

A scale function is a nested family of discrete functions, one per refinement
level, where each layer extends the previous one: restricting layer i+1 to the
level-i grid gives back layer i exactly.  Layers are produced by composing
elementary actions, operators that refine a two-point discrete function into a
finer pattern while fixing the endpoints.  The canonical instance is the
Okamoto action, which subdivides each interval in three and places the interior
values at fractions a and 1-a of the endpoint gap.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .errors import (NotInTimeScaleError, PatternExhaustedError,
                     RefinementKindError, ScaleDynError, TooFewPointsError)
from .timescale import (DiscreteFunction, TimeScale, as_fraction,
                        cauchy_delta_integral, delta_antiderivative,
                        delta_derivative, nabla_derivative, write_discrete_csv)

INFINITE = math.inf


def _is_exact(v) -> bool:
    return not isinstance(v, (float, complex))


@dataclass(frozen=True)
class ElementaryAction:
    """Refines a 2-point discrete function into a finer one, endpoints fixed.

    ``refine`` maps an interval (t0, t1) to the refined elementary time-scale;
    ``apply`` maps a discrete function on {t0, t1} to one on the refined scale.
    ``param`` is optional metadata (the Okamoto parameter) used by manifests.
    """

    name: str
    arity: int
    refine: Callable[[Fraction, Fraction], TimeScale]
    apply: Callable[[DiscreteFunction], DiscreteFunction]
    param: Fraction | None = None


def okamoto_action(a) -> ElementaryAction:
    """The Okamoto elementary action with parameter a in (0, 1).

    Splits (t0, t1) into thirds; interior values sit at fractions a and 1-a of
    the endpoint value gap.  a=1/3 reproduces the chord; a=1/2 creates an
    interior plateau.
    """
    a = as_fraction(a)
    if not (0 < a < 1):
        raise ScaleDynError(f"Okamoto parameter must lie in (0, 1), got {a}")

    def refine(t0, t1) -> TimeScale:
        t0, t1 = as_fraction(t0), as_fraction(t1)
        mu = t1 - t0
        return TimeScale([t0, t0 + mu / 3, t0 + 2 * mu / 3, t1])

    def apply(F: DiscreteFunction) -> DiscreteFunction:
        (t0, f0), (t1, f1) = F.items()
        gap = f1 - f0
        return DiscreteFunction(refine(t0, t1),
                                [f0, f0 + a * gap, f0 + (1 - a) * gap, f1])

    return ElementaryAction("okamoto", 3, refine, apply, param=a)


def linear_reference_action(arity: int = 3) -> ElementaryAction:
    """Chord refinement: new values lie on the line through the endpoints."""
    if arity < 2:
        raise ScaleDynError(f"refinement arity must be >= 2, got {arity}")

    def refine(t0, t1) -> TimeScale:
        t0, t1 = as_fraction(t0), as_fraction(t1)
        mu = t1 - t0
        return TimeScale([t0 + Fraction(k, arity) * mu for k in range(arity + 1)])

    def apply(F: DiscreteFunction) -> DiscreteFunction:
        (t0, f0), (t1, f1) = F.items()
        gap = f1 - f0
        vals = [f0 + Fraction(k, arity) * gap for k in range(arity + 1)]
        return DiscreteFunction(refine(t0, t1), vals)

    return ElementaryAction("linear", arity, refine, apply)


def displacement_action(arity: int, displace: Callable) -> ElementaryAction:
    """Chord refinement plus a displacement at each new interior point.

    ``displace(t, t0, t1, f0, f1)`` returns the offset added to the chord value
    at the new point t.  Used for midpoint-displacement constructions.
    """
    base = linear_reference_action(arity)

    def apply(F: DiscreteFunction) -> DiscreteFunction:
        chord = base.apply(F)
        (t0, f0), (t1, f1) = F.items()
        vals = list(chord.values)
        for i in range(1, len(vals) - 1):
            vals[i] = vals[i] + displace(chord.domain.points[i], t0, t1, f0, f1)
        return DiscreteFunction(chord.domain, vals)

    return ElementaryAction("displacement", arity, base.refine, apply)


def elem_decompose(ts: TimeScale) -> list[TimeScale]:
    """Split a time-scale into its consecutive 2-point elementary scales."""
    return [TimeScale(ts.points[i:i + 2]) for i in range(ts.card - 1)]


def scale_action_apply(A: ElementaryAction, F: DiscreteFunction) -> DiscreteFunction:
    """Apply A on every elementary pair of F's domain and stitch the results."""
    pts: list[Fraction] = []
    vals: list = []
    for i in range(F.domain.card - 1):
        pair = DiscreteFunction(TimeScale(F.domain.points[i:i + 2]),
                                F.values[i:i + 2])
        refined = A.apply(pair)
        start = 1 if pts else 0  # shared endpoint already emitted
        pts.extend(refined.domain.points[start:])
        vals.extend(refined.values[start:])
    return DiscreteFunction(TimeScale(pts), vals)


@dataclass(frozen=True)
class MultiscalePattern:
    """Block structure (a_1, ..., a_n) with repeat counts (N_1, ..., N_n).

    The last count may be infinite (math.inf); a finite pattern with no
    infinite tail describes only finitely many levels.
    """

    params: tuple[Fraction, ...]
    counts: tuple

    def __init__(self, params: Sequence, counts: Sequence):
        ps = tuple(as_fraction(p) for p in params)
        cs = tuple(counts)
        if len(ps) != len(cs) or not ps:
            raise ScaleDynError("pattern needs matching nonempty params and counts")
        for i, c in enumerate(cs):
            if c == INFINITE:
                if i != len(cs) - 1:
                    raise ScaleDynError("infinite count allowed only in last position")
            elif not (isinstance(c, int) and c >= 1):
                raise ScaleDynError(f"counts must be positive integers, got {c!r}")
        object.__setattr__(self, "params", ps)
        object.__setattr__(self, "counts", cs)

    def total(self):
        return INFINITE if self.counts[-1] == INFINITE else sum(self.counts)

    def symbol_at(self, m: int) -> Fraction:
        """The action parameter governing level m (1-based).

        At a block boundary m = N_1 + ... + N_k the earlier block wins: a block
        is finished before the next one starts.
        """
        if m < 1:
            raise ScaleDynError(f"level index must be >= 1, got {m}")
        upper = 0
        for a, c in zip(self.params, self.counts):
            if c == INFINITE:
                return a
            upper += c
            if m <= upper:
                return a
        raise PatternExhaustedError(
            f"level {m} exceeds the pattern's total count {upper}")

    def block_of(self, m: int) -> int:
        """1-based block index active at level m."""
        upper = 0
        for k, c in enumerate(self.counts, start=1):
            if c == INFINITE:
                return k
            upper += c
            if m <= upper:
                return k
        raise PatternExhaustedError(
            f"level {m} exceeds the pattern's total count {upper}")


def _kind_of_arity(arity: int) -> str:
    return {2: "dyadic", 3: "triadic"}.get(arity, "custom")


@dataclass(frozen=True)
class ScaleSequence:
    """Nested time-scales T_0 subset T_1 subset ... on a common interval."""

    levels: tuple[TimeScale, ...]
    refinement_kind: str

    def __init__(self, levels: Sequence[TimeScale], refinement_kind: str = "custom"):
        lv = tuple(levels)
        if not lv:
            raise TooFewPointsError("a scale sequence needs at least one level")
        for i, (c, f) in enumerate(zip(lv, lv[1:])):
            if (c.a, c.b) != (f.a, f.b):
                raise ScaleDynError(f"levels {i} and {i + 1} disagree on [a, b]")
            if not c.is_subset_of(f) or f.card <= c.card:
                raise ScaleDynError(f"level {i + 1} does not strictly refine level {i}")
        if refinement_kind in ("dyadic", "triadic"):
            r = 2 if refinement_kind == "dyadic" else 3
            for i, (c, f) in enumerate(zip(lv, lv[1:])):
                if f.card - 1 != r * (c.card - 1):
                    raise RefinementKindError(
                        f"levels {i}->{i + 1} are not {refinement_kind}")
        object.__setattr__(self, "levels", lv)
        object.__setattr__(self, "refinement_kind", refinement_kind)

    @property
    def depth(self) -> int:
        return len(self.levels) - 1

    def __getitem__(self, i: int) -> TimeScale:
        return self.levels[i]


def _values_close(u, v) -> bool:
    if _is_exact(u) and _is_exact(v):
        return u == v
    a, b = complex(u), complex(v)
    return abs(a - b) <= 1e-14 * max(1.0, abs(a), abs(b))


@dataclass(frozen=True)
class ScaleFunction:
    """A restriction-compatible family of discrete functions over nested levels."""

    seq: ScaleSequence
    layers: tuple[DiscreteFunction, ...]
    kind: str = "custom"
    pattern: MultiscalePattern | None = None

    def __init__(self, seq: ScaleSequence, layers: Sequence[DiscreteFunction],
                 kind: str = "custom", pattern: MultiscalePattern | None = None):
        ly = tuple(layers)
        if len(ly) != len(seq.levels):
            raise ScaleDynError("one layer per level required")
        for i, (lvl, lay) in enumerate(zip(seq.levels, ly)):
            if lay.domain is not lvl and lay.domain.points != lvl.points:
                raise ScaleDynError(f"layer {i} domain differs from level {i}")
        for i in range(len(ly) - 1):
            fine = ly[i + 1]
            for t, v in ly[i].items():
                if not _values_close(fine(t), v):
                    raise ScaleDynError(
                        f"restriction compatibility fails at level {i + 1}, t={t}")
        object.__setattr__(self, "seq", seq)
        object.__setattr__(self, "layers", ly)
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "pattern", pattern)

    @property
    def depth(self) -> int:
        return self.seq.depth

    def layer(self, i: int) -> DiscreteFunction:
        return self.layers[i]

    def deepest(self) -> DiscreteFunction:
        return self.layers[-1]


@dataclass(frozen=True)
class ScaleFamily:
    """A level-indexed family of discrete functions with no nesting requirement.

    Scale derivatives of a multiscale function live here: they are defined
    level by level but in general violate restriction compatibility, so they
    are deliberately not a ScaleFunction.  ``start_level`` records the first
    source level carrying enough points for the defining operation.
    """

    layers: tuple[DiscreteFunction, ...]
    start_level: int = 0

    def level_index(self, i: int) -> int:
        return i - self.start_level

    def layer(self, i: int) -> DiscreteFunction:
        """Layer by original level index i (i >= start_level)."""
        if i < self.start_level:
            raise ScaleDynError(f"family starts at level {self.start_level}, got {i}")
        return self.layers[i - self.start_level]

    @property
    def last_level(self) -> int:
        return self.start_level + len(self.layers) - 1


def identity_base(a=0, b=1) -> DiscreteFunction:
    """The 2-point seed E_0: endpoints mapped to their own coordinates."""
    a, b = as_fraction(a), as_fraction(b)
    return DiscreteFunction(TimeScale([a, b]), [a, b])


def build_multiscale(pattern: MultiscalePattern, depth: int,
                     action_family: Callable[[Fraction], ElementaryAction] = okamoto_action,
                     base: DiscreteFunction | None = None,
                     kind: str | None = None) -> ScaleFunction:
    """Build the scale function whose level-j layer applies the pattern's
    level-j action to layer j-1, for j = 1 ... depth.

    ``action_family`` maps a pattern parameter to an elementary action
    (Okamoto by default).  Level 0 is the 2-point base (identity on [0, 1]
    unless given).
    """
    if depth < 0:
        raise ScaleDynError(f"depth must be >= 0, got {depth}")
    if depth > pattern.total():
        raise PatternExhaustedError(
            f"depth {depth} exceeds the pattern's total count {pattern.total()}")
    layers = [base if base is not None else identity_base()]
    arity = None
    for j in range(1, depth + 1):
        A = action_family(pattern.symbol_at(j))
        if arity is None:
            arity = A.arity
        elif A.arity != arity:
            raise RefinementKindError("mixed refinement arities are unsupported")
        layers.append(scale_action_apply(A, layers[-1]))
    seq = ScaleSequence([ly.domain for ly in layers],
                        _kind_of_arity(arity) if arity else "custom")
    if kind is None:
        kind = "okamoto" if len(pattern.params) == 1 else "mso"
    return ScaleFunction(seq, layers, kind=kind, pattern=pattern)


def build_okamoto(a, depth: int) -> ScaleFunction:
    """Single-parameter Okamoto scale function on [0, 1]."""
    return build_multiscale(MultiscalePattern([a], [INFINITE]), depth, kind="okamoto")


# ---------------------------------------------------------------------------
# Calculus lifted to families


def scale_delta(F: ScaleFunction | ScaleFamily) -> ScaleFamily:
    """Per-level forward derivative; starts at the first level with card >= 3."""
    return _lift(F, delta_derivative)


def scale_nabla(F: ScaleFunction | ScaleFamily) -> ScaleFamily:
    """Per-level backward derivative; starts at the first level with card >= 3."""
    return _lift(F, nabla_derivative)


def _lift(F, op) -> ScaleFamily:
    layers = F.layers
    start = getattr(F, "start_level", 0)
    out = []
    for lay in layers:
        if lay.domain.card >= 3:
            out.append(op(lay))
        elif out:
            raise ScaleDynError("level cardinalities must be nondecreasing")
        else:
            start += 1
    if not out:
        raise TooFewPointsError("no level carries enough points for a derivative")
    return ScaleFamily(tuple(out), start_level=start)


def scale_antiderivative(F: ScaleFunction, t0) -> ScaleFamily:
    """Per-level Cauchy antiderivative from t0, one layer per level.

    The layers are not restriction compatible in general (a coarse Riemann sum
    differs from a fine one), so the result is a plain family.
    """
    t0 = as_fraction(t0)
    if t0 not in F.seq[0]:
        raise NotInTimeScaleError(f"{t0} is not a point of the coarsest level")
    return ScaleFamily(tuple(delta_antiderivative(lay, t0) for lay in F.layers))


# ---------------------------------------------------------------------------
# Serialization: per-level CSVs plus a flat key=value manifest


def _format_counts(counts) -> str:
    return ",".join("inf" if c == INFINITE else str(c) for c in counts)


def _parse_counts(text: str):
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        out.append(INFINITE if tok in ("inf", "INF", "Inf") else int(tok))
    return tuple(out)


def save_scale_function(F: ScaleFunction, stem: str, exact: bool = False) -> list[str]:
    """Write ``<stem>.L<i>.csv`` per level and ``<stem>.manifest``; returns paths."""
    paths = []
    for i, lay in enumerate(F.layers):
        path = f"{stem}.L{i}.csv"
        with open(path, "w") as out:
            write_discrete_csv(lay, out, exact=exact)
        paths.append(path)
    manifest = f"{stem}.manifest"
    with open(manifest, "w") as out:
        out.write(f"kind={F.kind}\n")
        out.write(f"depth={F.depth}\n")
        if F.pattern is not None:
            out.write("a=" + ",".join(str(p) for p in F.pattern.params) + "\n")
            out.write("n=" + _format_counts(F.pattern.counts) + "\n")
        out.write(f"refinement={F.seq.refinement_kind}\n")
    paths.append(manifest)
    return paths


def read_manifest(path: str) -> dict[str, str]:
    out = {}
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if line and "=" in line:
                k, v = line.split("=", 1)
                out[k.strip()] = v.strip()
    return out


def rebuild_from_manifest(path: str, depth: int | None = None) -> ScaleFunction:
    """Reconstruct a pattern-built scale function from its manifest parameters.

    Rebuilding from the exact rational parameters reproduces the original
    byte for byte; level CSVs are not re-read.
    """
    meta = read_manifest(path)
    kind = meta.get("kind", "")
    if kind not in ("okamoto", "mso"):
        raise ScaleDynError(f"cannot rebuild scale functions of kind {kind!r}")
    params = [Fraction(p) for p in meta["a"].split(",")]
    counts = _parse_counts(meta["n"]) if "n" in meta else (INFINITE,)
    if len(counts) == len(params) - 1:
        counts = counts + (INFINITE,)  # trailing infinite block left implicit
    m = int(meta["depth"]) if depth is None else depth
    return build_multiscale(MultiscalePattern(params, counts), m, kind=kind)
