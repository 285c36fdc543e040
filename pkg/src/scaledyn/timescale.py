"""Finite time-scales and the single-scale discrete calculus.

A time-scale here is a finite, strictly increasing set of exact rational time
points on an interval [a, b].  Grid points are kept as :class:`fractions.Fraction`
throughout: triadic points k/3**m collide in binary floats at moderate depth,
and the nesting of refined grids must be decidable exactly.  Conversion to
float is the only lossy step and happens only on explicit request (``to_float``,
CSV emission).

On a finite grid every point is isolated, so the forward/backward difference
quotients *are* the delta/nabla derivatives; the limit in the general
time-scale definition is vacuous.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from numbers import Rational
from typing import IO, Iterable, Sequence

from .errors import NotInTimeScaleError, TooFewPointsError


def as_fraction(x) -> Fraction:
    """Coerce a time coordinate to an exact rational.

    Accepts Fraction, int, strings like ``"2/3"`` and floats (converted via
    their exact binary value).
    """
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


@dataclass(frozen=True)
class TimeScale:
    """A finite, sorted set of exact rational time points (cardinality >= 2)."""

    points: tuple[Fraction, ...]

    def __init__(self, points: Iterable):
        pts = tuple(as_fraction(p) for p in points)
        if len(pts) < 2:
            raise TooFewPointsError(f"a time-scale needs at least 2 points, got {len(pts)}")
        for p, q in zip(pts, pts[1:]):
            if not p < q:
                raise TooFewPointsError("time-scale points must be strictly increasing")
        object.__setattr__(self, "points", pts)

    @cached_property
    def _index(self) -> dict[Fraction, int]:
        return {p: i for i, p in enumerate(self.points)}

    @property
    def a(self) -> Fraction:
        return self.points[0]

    @property
    def b(self) -> Fraction:
        return self.points[-1]

    @property
    def card(self) -> int:
        return len(self.points)

    def __contains__(self, t) -> bool:
        return as_fraction(t) in self._index

    def __iter__(self):
        return iter(self.points)

    def index(self, t) -> int:
        try:
            return self._index[as_fraction(t)]
        except KeyError:
            raise NotInTimeScaleError(f"{t} is not a point of the time-scale") from None

    def sigma(self, t) -> Fraction:
        """Forward jump: the next grid point, with sigma(b) = b."""
        i = self.index(t)
        return self.points[min(i + 1, self.card - 1)]

    def rho(self, t) -> Fraction:
        """Backward jump: the previous grid point, with rho(a) = a."""
        i = self.index(t)
        return self.points[max(i - 1, 0)]

    def mu(self, t) -> Fraction:
        """Forward graininess sigma(t) - t (zero at b)."""
        return self.sigma(t) - as_fraction(t)

    def nu(self, t) -> Fraction:
        """Backward graininess t - rho(t) (zero at a)."""
        return as_fraction(t) - self.rho(t)

    def kappa(self) -> "TimeScale":
        """T^kappa: the scale without its last point."""
        if self.card < 3:
            raise TooFewPointsError("T^kappa requires cardinality >= 3")
        return TimeScale(self.points[:-1])

    def kappa_lower(self) -> "TimeScale":
        """T_kappa: the scale without its first point."""
        if self.card < 3:
            raise TooFewPointsError("T_kappa requires cardinality >= 3")
        return TimeScale(self.points[1:])

    @cached_property
    def _uniform_step(self) -> Fraction | None:
        step = self.points[1] - self.points[0]
        for p, q in zip(self.points[1:], self.points[2:]):
            if q - p != step:
                return None
        return step

    def is_uniform(self) -> bool:
        return self._uniform_step is not None

    def uniform_mu(self) -> Fraction:
        if self._uniform_step is None:
            raise TooFewPointsError("time-scale is not uniform")
        return self._uniform_step

    def is_subset_of(self, other: "TimeScale") -> bool:
        return all(p in other._index for p in self.points)


@dataclass(frozen=True)
class DiscreteFunction:
    """Values attached to the points of a time-scale, one scalar per point.

    Values may be exact (Fraction, int, Q(sqrt 2) elements) or floats/complex;
    arithmetic on mixed exact types stays exact.
    """

    domain: TimeScale
    values: tuple

    def __init__(self, domain: TimeScale, values: Sequence):
        vals = tuple(values)
        if len(vals) != domain.card:
            raise TooFewPointsError(
                f"{len(vals)} values for a {domain.card}-point time-scale")
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "values", vals)

    def __call__(self, t):
        return self.values[self.domain.index(t)]

    def items(self):
        return zip(self.domain.points, self.values)

    def restrict(self, sub: TimeScale) -> "DiscreteFunction":
        return DiscreteFunction(sub, [self(t) for t in sub.points])

    def to_float(self) -> "DiscreteFunction":
        return DiscreteFunction(self.domain, [float(v) for v in self.values])

    def map(self, fn) -> "DiscreteFunction":
        return DiscreteFunction(self.domain, [fn(v) for v in self.values])


def delta_derivative(f: DiscreteFunction) -> DiscreteFunction:
    """Forward difference quotient (f(sigma t) - f(t)) / mu(t) on T^kappa."""
    ts = f.domain
    if ts.card < 3:
        raise TooFewPointsError("delta derivative requires cardinality >= 3")
    pts = ts.points
    vals = [(f.values[i + 1] - f.values[i]) / (pts[i + 1] - pts[i])
            for i in range(ts.card - 1)]
    return DiscreteFunction(ts.kappa(), vals)


def nabla_derivative(f: DiscreteFunction) -> DiscreteFunction:
    """Backward difference quotient (f(t) - f(rho t)) / nu(t) on T_kappa."""
    ts = f.domain
    if ts.card < 3:
        raise TooFewPointsError("nabla derivative requires cardinality >= 3")
    pts = ts.points
    vals = [(f.values[i] - f.values[i - 1]) / (pts[i] - pts[i - 1])
            for i in range(1, ts.card)]
    return DiscreteFunction(ts.kappa_lower(), vals)


def cauchy_delta_integral(f: DiscreteFunction, t0, t):
    """Sum of f(s) * mu(s) over grid points s in [t0, t).

    This is the Cauchy delta-integral on a finite grid: the induced
    antiderivative U satisfies Delta U = f on T^kappa and U(t0) = 0.
    """
    ts = f.domain
    i0, i1 = ts.index(t0), ts.index(t)
    if i0 > i1:
        raise ScaleOrderError(f"integration bounds out of order: {t0} > {t}")
    pts = ts.points
    total = 0
    for i in range(i0, i1):
        total += f.values[i] * (pts[i + 1] - pts[i])
    return total


class ScaleOrderError(NotInTimeScaleError):
    """Integration bounds given in decreasing order."""


def delta_antiderivative(f: DiscreteFunction, t0) -> DiscreteFunction:
    """The antiderivative U on the full domain, signed so that U(t0) = 0."""
    ts = f.domain
    i0 = ts.index(t0)
    pts = ts.points
    vals = [0] * ts.card
    for i in range(i0, ts.card - 1):
        vals[i + 1] = vals[i] + f.values[i] * (pts[i + 1] - pts[i])
    for i in range(i0, 0, -1):
        vals[i - 1] = vals[i] - f.values[i - 1] * (pts[i] - pts[i - 1])
    return DiscreteFunction(ts, vals)


# ---------------------------------------------------------------------------
# CSV emission


def _sig17(x) -> str:
    return format(float(x), ".17g")


def write_discrete_csv(f: DiscreteFunction, out: IO[str], exact: bool = False) -> None:
    """Emit ``t,value`` rows (or ``num,den,value`` in exact mode), 17 significant digits."""
    if exact:
        out.write("num,den,value\n")
        for t, v in f.items():
            out.write(f"{t.numerator},{t.denominator},{_sig17(v)}\n")
    else:
        out.write("t,value\n")
        for t, v in f.items():
            out.write(f"{_sig17(t)},{_sig17(v)}\n")
