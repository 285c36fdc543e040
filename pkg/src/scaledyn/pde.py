"""Residual evaluators for the scale equations and their asymptotic PDEs.

The second-order scale equation nabla(Delta X) = U'(X) is scale invariant:
the same formula applies at every level with no level-dependent constants.
Its asymptotic models in a regime of order 1/2 are a nonlinear psi-equation
that specializes to the diffusion equation (gamma = -lam_minus^2/2) and, in
the complex Box variant, to the Schroedinger equation (gamma = hbar/2,
lam^2 = hbar^2, eta = -1).  The evaluators here measure how far a supplied
field is from satisfying each displayed equation; analytic partials are used
so residuals are not polluted by discretization error.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .dynamics import PointMap, dq_delta, dq_nabla
from .errors import ScaleDynError, TooFewPointsError
from .scale_functions import ScaleFamily, ScaleFunction
from .timescale import DiscreteFunction


@dataclass(frozen=True)
class Potential:
    u: Callable
    u_prime: Callable

    @staticmethod
    def zero() -> "Potential":
        return Potential(lambda x: 0, lambda x: 0)

    @staticmethod
    def linear(g) -> "Potential":
        return Potential(lambda x: g * x, lambda x: g)

    @staticmethod
    def harmonic(k=1) -> "Potential":
        return Potential(lambda x: k * x * x / 2, lambda x: k * x)

    def check(self, points: Sequence, tol: float = 1e-6, h: float = 1e-5) -> float:
        worst = 0.0
        for x in points:
            x = float(x)
            fd = (self.u(x + h) - self.u(x - h)) / (2 * h)
            worst = max(worst, abs(fd - float(self.u_prime(x))))
        if worst > tol:
            raise ScaleDynError(f"U' inconsistent with U: {worst} > {tol}")
        return worst


@dataclass(frozen=True)
class PsiField:
    """psi(t, x) with analytic partials psi_t, psi_x, psi_xx."""

    psi: Callable
    psi_t: Callable
    psi_x: Callable
    psi_xx: Callable

    def check(self, points: Sequence[tuple], tol: float = 1e-5,
              h: float = 1e-4) -> float:
        worst = 0.0
        for t, x in points:
            fd_t = (self.psi(t + h, x) - self.psi(t - h, x)) / (2 * h)
            fd_x = (self.psi(t, x + h) - self.psi(t, x - h)) / (2 * h)
            fd_xx = (self.psi(t, x + h) - 2 * self.psi(t, x)
                     + self.psi(t, x - h)) / h ** 2
            worst = max(worst, abs(fd_t - self.psi_t(t, x)),
                        abs(fd_x - self.psi_x(t, x)),
                        abs(fd_xx - self.psi_xx(t, x)))
        if worst > tol:
            raise ScaleDynError(f"psi partials inconsistent: {worst} > {tol}")
        return worst


def psi_field_from_table(psi: Callable, h: float = 1e-2) -> PsiField:
    """Finite-difference fallback (4th-order central stencils) for a psi known
    only pointwise; residual floors at O(h**4)."""
    def d_t(t, x):
        return (-psi(t + 2 * h, x) + 8 * psi(t + h, x)
                - 8 * psi(t - h, x) + psi(t - 2 * h, x)) / (12 * h)

    def d_x(t, x):
        return (-psi(t, x + 2 * h) + 8 * psi(t, x + h)
                - 8 * psi(t, x - h) + psi(t, x - 2 * h)) / (12 * h)

    def d_xx(t, x):
        return (-psi(t, x + 2 * h) + 16 * psi(t, x + h) - 30 * psi(t, x)
                + 16 * psi(t, x - h) - psi(t, x - 2 * h)) / (12 * h ** 2)

    return PsiField(psi, d_t, d_x, d_xx)


@dataclass(frozen=True)
class ModelParameters:
    gamma: complex
    lam_minus_sq: float
    lam_plus_sq: float
    hbar: float = 1.0
    eta: str = "-1"

    @classmethod
    def diffusion(cls, lam_minus_sq: float) -> "ModelParameters":
        """The subspace gamma = -lam_minus^2/2 where the nonlinear term drops."""
        return cls(gamma=-lam_minus_sq / 2, lam_minus_sq=lam_minus_sq,
                   lam_plus_sq=lam_minus_sq)

    @classmethod
    def schrodinger(cls, hbar: float) -> "ModelParameters":
        """gamma = hbar/2, lam^2 = hbar^2 on both sides, eta = -1."""
        return cls(gamma=hbar / 2, lam_minus_sq=hbar ** 2,
                   lam_plus_sq=hbar ** 2, hbar=hbar, eta="-1")

    @property
    def lambda2(self) -> complex:
        """The complex coefficient -2i*gamma of the Box nonlinear form."""
        return -2j * self.gamma


@dataclass(frozen=True)
class Grid:
    ts: tuple[float, ...]
    xs: tuple[float, ...]

    @classmethod
    def parse(cls, text: str) -> "Grid":
        """Parse ``tmin:tmax:nt,xmin:xmax:nx``."""
        try:
            tpart, xpart = text.split(",")
            t0, t1, nt = tpart.split(":")
            x0, x1, nx = xpart.split(":")
            return cls(_linspace(float(t0), float(t1), int(nt)),
                       _linspace(float(x0), float(x1), int(nx)))
        except (ValueError, TypeError) as exc:
            raise ScaleDynError(f"bad grid spec {text!r}: {exc}") from None

    def points(self):
        return ((t, x) for t in self.ts for x in self.xs)


def _linspace(a: float, b: float, n: int) -> tuple[float, ...]:
    if n < 1:
        raise ScaleDynError("grid needs at least one point per axis")
    if n == 1:
        return (a,)
    step = (b - a) / (n - 1)
    return tuple(a + i * step for i in range(n))


# ---------------------------------------------------------------------------
# Scale-equation residuals (discrete, per level)


@dataclass(frozen=True)
class LevelResidual:
    level: int
    mu: object
    max_abs: object
    field: PointMap


def scale_newton_residual(X: ScaleFunction | ScaleFamily, U: Potential,
                          order: str = "nabla_delta") -> list[LevelResidual]:
    """Residual of nabla(Delta X) = U'(X) (or Delta(nabla X) with
    order="delta_nabla") per level, on the interior points where the double
    quotient exists.  The evaluator is level blind: the same formula at every
    level, which is the scale-invariance property of this equation."""
    if order not in ("nabla_delta", "delta_nabla"):
        raise ScaleDynError(f"unknown order {order!r}")
    out = []
    layers = X.layers
    start = getattr(X, "start_level", 0)
    for idx, lay in enumerate(layers):
        level = start + idx
        if lay.domain.card < 4:
            continue
        pts = lay.domain.points
        vals = []
        for i in range(1, lay.domain.card - 1):
            # both orderings give the central second difference on the grid
            if order == "nabla_delta":
                first = [(lay.values[k + 1] - lay.values[k]) / (pts[k + 1] - pts[k])
                         for k in (i - 1, i)]
                second = (first[1] - first[0]) / (pts[i] - pts[i - 1])
            else:
                first = [(lay.values[k] - lay.values[k - 1]) / (pts[k] - pts[k - 1])
                         for k in (i, i + 1)]
                second = (first[1] - first[0]) / (pts[i + 1] - pts[i])
            vals.append(second - U.u_prime(lay.values[i]))
        field = PointMap(pts[1:-1], tuple(vals))
        out.append(LevelResidual(level, lay.domain.uniform_mu()
                                 if lay.domain.is_uniform() else None,
                                 field.max_abs(), field))
    if not out:
        raise TooFewPointsError("no level carries >= 4 points")
    return out


@dataclass(frozen=True)
class Lagrangian:
    """L(x, v) with partials in both slots."""

    partial_x: Callable
    partial_v: Callable


def scale_euler_lagrange_residual(X: ScaleFunction, L: Lagrangian) -> list[LevelResidual]:
    """Residual of nabla(dL/dv(X, Delta X)) = dL/dx(X, Delta X) per level.

    For L = v^2/2 - U this reduces to the Newton evaluator with the potential
    negated (the v-momentum is Delta X and its nabla is the second
    difference)."""
    out = []
    for level, lay in enumerate(X.layers):
        if lay.domain.card < 4:
            continue
        pts = lay.domain.points
        momentum = []
        for i in range(lay.domain.card - 1):
            v = (lay.values[i + 1] - lay.values[i]) / (pts[i + 1] - pts[i])
            momentum.append(L.partial_v(lay.values[i], v))
        vals = []
        for i in range(1, lay.domain.card - 1):
            nab_p = (momentum[i] - momentum[i - 1]) / (pts[i] - pts[i - 1])
            v = (lay.values[i + 1] - lay.values[i]) / (pts[i + 1] - pts[i])
            vals.append(nab_p - L.partial_x(lay.values[i], v))
        field = PointMap(pts[1:-1], tuple(vals))
        out.append(LevelResidual(level, lay.domain.uniform_mu()
                                 if lay.domain.is_uniform() else None,
                                 field.max_abs(), field))
    if not out:
        raise TooFewPointsError("no level carries >= 4 points")
    return out


def linear_scale_equation_residual(F: ScaleFunction) -> list[LevelResidual]:
    """Residual of Delta F_i = mu_i * F_i per level.

    The relation itself changes with the level's graininess, the textbook
    example of a scale equation that is not scale invariant; mu is reported
    per level for that reason."""
    out = []
    for level, lay in enumerate(F.layers):
        if lay.domain.card < 3 or not lay.domain.is_uniform():
            continue
        mu = lay.domain.uniform_mu()
        pts = lay.domain.points[:-1]
        vals = tuple(dq_delta(lay, t) - mu * lay(t) for t in pts)
        field = PointMap(pts, vals)
        out.append(LevelResidual(level, mu, field.max_abs(), field))
    return out


# ---------------------------------------------------------------------------
# Asymptotic PDE residuals (analytic partials on a float grid)


def nonlinear_psi_residual(psi: PsiField, p: ModelParameters, U: Potential,
                           grid: Grid) -> float:
    """Max residual of
    psi_t + (gamma + lam-^2/2)(1/psi) psi_x^2 - (lam-^2/2) psi_xx
    + U/(2 gamma) psi = 0."""
    if p.gamma == 0:
        raise ScaleDynError("gamma must be nonzero")
    half = p.lam_minus_sq / 2
    worst = 0.0
    for t, x in grid.points():
        v = psi.psi(t, x)
        if v == 0:
            raise ScaleDynError(f"psi vanishes at ({t}, {x})")
        r = (psi.psi_t(t, x) + (p.gamma + half) * psi.psi_x(t, x) ** 2 / v
             - half * psi.psi_xx(t, x) + U.u(x) / (2 * p.gamma) * v)
        worst = max(worst, abs(r))
    return worst


def diffusion_residual(psi: PsiField, p: ModelParameters, U: Potential,
                       grid: Grid) -> float:
    """Max residual of psi_t = (lam-^2/2) psi_xx + U/lam-^2 psi."""
    if p.lam_minus_sq == 0:
        raise ScaleDynError("lam_minus^2 must be nonzero")
    half = p.lam_minus_sq / 2
    worst = 0.0
    for t, x in grid.points():
        r = (psi.psi_t(t, x) - half * psi.psi_xx(t, x)
             - U.u(x) / p.lam_minus_sq * psi.psi(t, x))
        worst = max(worst, abs(r))
    return worst


def schrodinger_residual(psi: PsiField, p: ModelParameters, U: Potential,
                         grid: Grid) -> float:
    """Max residual of i hbar psi_t + (hbar^2/2) psi_xx = U psi."""
    if p.hbar <= 0:
        raise ScaleDynError("hbar must be positive")
    worst = 0.0
    for t, x in grid.points():
        r = (1j * p.hbar * psi.psi_t(t, x)
             + p.hbar ** 2 / 2 * psi.psi_xx(t, x)
             - U.u(x) * psi.psi(t, x))
        worst = max(worst, abs(r))
    return worst


def box_nonlinear_residual(psi: PsiField, p: ModelParameters, U: Potential,
                           grid: Grid, lambda2: complex | None = None) -> float:
    """Max residual of the complex Box form
    -2i gamma (psi_t - (i gamma + lam2/2)(1/psi) psi_x^2 + (lam2/2) psi_xx)
    + U psi = 0.

    With lam2 = -2i gamma (the default) and the Schroedinger specialization,
    the nonlinear coefficient vanishes and the whole expression equals minus
    the Schroedinger residual pointwise."""
    lam2 = p.lambda2 if lambda2 is None else lambda2
    coeff = 1j * p.gamma + lam2 / 2
    worst = 0.0
    for t, x in grid.points():
        v = psi.psi(t, x)
        if v == 0:
            raise ScaleDynError(f"psi vanishes at ({t}, {x})")
        inner = (psi.psi_t(t, x) - coeff * psi.psi_x(t, x) ** 2 / v
                 + lam2 / 2 * psi.psi_xx(t, x))
        r = -2j * p.gamma * inner + U.u(x) * v
        worst = max(worst, abs(r))
    return worst


# ---------------------------------------------------------------------------
# Drift diagnostics


@dataclass(frozen=True)
class DriftDeviation:
    level: int
    drift_max: float      # |Delta X + 2 gamma d/dx ln psi(t, X)|
    antisym_max: float    # |Delta X + nabla X|


def drift_consistency_check(X: ScaleFunction, psi: PsiField,
                            gamma: float) -> list[DriftDeviation]:
    """How well a scale function realizes the drift hypothesis
    Delta X = -2 gamma (d/dx) ln psi and the antisymmetry Delta X = -nabla X."""
    out = []
    for level, lay in enumerate(X.layers):
        if lay.domain.card < 3:
            continue
        drift_max = 0.0
        for t in lay.domain.points[:-1]:
            x = float(lay(t))
            v = psi.psi(float(t), x)
            if (isinstance(v, complex) and v == 0) or \
                    (not isinstance(v, complex) and v <= 0):
                raise ScaleDynError(f"ln psi undefined at ({t}, {x})")
            dev = float(dq_delta(lay, t)) + 2 * gamma * psi.psi_x(float(t), x) / v
            drift_max = max(drift_max, abs(dev))
        anti_max = 0.0
        for t in lay.domain.points[1:-1]:
            anti_max = max(anti_max,
                           abs(float(dq_delta(lay, t) + dq_nabla(lay, t))))
        out.append(DriftDeviation(level, drift_max, anti_max))
    if not out:
        raise TooFewPointsError("no level carries >= 3 points")
    return out


# ---------------------------------------------------------------------------
# Reference analytic fields


def heat_kernel(diffusivity: float) -> PsiField:
    """(4 pi D t)^(-1/2) exp(-x^2 / (4 D t)); solves psi_t = D psi_xx."""
    D = diffusivity

    def psi(t, x):
        return (4 * math.pi * D * t) ** -0.5 * math.exp(-x * x / (4 * D * t))

    def psi_t(t, x):
        return psi(t, x) * (x * x / (4 * D * t * t) - 1 / (2 * t))

    def psi_x(t, x):
        return psi(t, x) * (-x / (2 * D * t))

    def psi_xx(t, x):
        return psi(t, x) * (x * x / (4 * D * D * t * t) - 1 / (2 * D * t))

    return PsiField(psi, psi_t, psi_x, psi_xx)


def exponential_solution(lam_minus_sq: float, k: float) -> PsiField:
    """exp(lam-^2 k^2 t / 2 + k x), a separable solution of the free
    diffusion equation."""
    rate = lam_minus_sq * k * k / 2

    def psi(t, x):
        return math.exp(rate * t + k * x)

    return PsiField(psi,
                    lambda t, x: rate * psi(t, x),
                    lambda t, x: k * psi(t, x),
                    lambda t, x: k * k * psi(t, x))


def plane_wave(hbar: float, k: float) -> PsiField:
    """exp(i(kx - omega t)) with omega = hbar k^2 / 2, the free Schroedinger
    dispersion relation."""
    omega = hbar * k * k / 2

    def psi(t, x):
        return cmath.exp(1j * (k * x - omega * t))

    return PsiField(psi,
                    lambda t, x: -1j * omega * psi(t, x),
                    lambda t, x: 1j * k * psi(t, x),
                    lambda t, x: -k * k * psi(t, x))


def harmonic_ground_state(hbar: float) -> PsiField:
    """exp(-x^2/(2 hbar)) exp(-i t / 2): stationary state of
    i hbar psi_t + (hbar^2/2) psi_xx = (x^2/2) psi with energy hbar/2."""

    def psi(t, x):
        return cmath.exp(-x * x / (2 * hbar)) * cmath.exp(-1j * t / 2)

    def psi_t(t, x):
        return -1j / 2 * psi(t, x)

    def psi_x(t, x):
        return -x / hbar * psi(t, x)

    def psi_xx(t, x):
        return (x * x / hbar ** 2 - 1 / hbar) * psi(t, x)

    return PsiField(psi, psi_t, psi_x, psi_xx)
