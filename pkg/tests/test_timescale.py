import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from scaledyn import (DiscreteFunction, NotInTimeScaleError, TimeScale,
                      TooFewPointsError, cauchy_delta_integral,
                      delta_antiderivative, delta_derivative, nabla_derivative)
from scaledyn.timescale import ScaleOrderError

TRIADIC = TimeScale([0, Fraction(1, 3), Fraction(2, 3), 1])


def test_jump_operators_interior():
    assert TRIADIC.sigma(Fraction(1, 3)) == Fraction(2, 3)
    assert TRIADIC.rho(Fraction(2, 3)) == Fraction(1, 3)


def test_jump_operators_at_endpoints():
    # sup of the empty set is a, inf is b
    assert TRIADIC.sigma(1) == 1
    assert TRIADIC.rho(0) == 0
    assert TRIADIC.mu(1) == 0
    assert TRIADIC.nu(0) == 0


def test_membership_errors():
    with pytest.raises(NotInTimeScaleError):
        TRIADIC.sigma(Fraction(1, 2))
    with pytest.raises(NotInTimeScaleError):
        TRIADIC.rho(2)


def test_graininess_uniform():
    pts = [Fraction(k, 9) for k in range(10)]
    ts = TimeScale(pts)
    for t in pts[:-1]:
        assert ts.mu(t) == Fraction(1, 9)
    assert ts.uniform_mu() == Fraction(1, 9)


def test_too_few_points_rejected():
    with pytest.raises(TooFewPointsError):
        TimeScale([0])
    with pytest.raises(TooFewPointsError):
        TimeScale([0, 0, 1])
    with pytest.raises(TooFewPointsError):
        TimeScale([0, 1]).kappa()


def test_two_point_scale_rejects_derivative():
    f = DiscreteFunction(TimeScale([0, 1]), [3, 7])
    with pytest.raises(TooFewPointsError):
        delta_derivative(f)


def test_identity_has_unit_derivatives():
    f = DiscreteFunction(TRIADIC, TRIADIC.points)
    assert all(v == 1 for v in delta_derivative(f).values)
    assert all(v == 1 for v in nabla_derivative(f).values)


def test_square_on_uniform_grid():
    h = Fraction(1, 8)
    ts = TimeScale([k * h for k in range(9)])
    f = DiscreteFunction(ts, [t * t for t in ts.points])
    d = delta_derivative(f)
    n = nabla_derivative(f)
    for t in d.domain.points:
        assert d(t) == 2 * t + h
    for t in n.domain.points:
        assert n(t) == 2 * t - h


def test_okamoto_level1_slopes():
    a = Fraction(2, 3)
    f = DiscreteFunction(TRIADIC, [0, a, 1 - a, 1])
    assert delta_derivative(f)(0) == 2
    assert nabla_derivative(f)(1) == 2


def test_cauchy_integral_totals():
    ts = TimeScale([Fraction(k, 5) for k in range(6)])
    one = DiscreteFunction(ts, [1] * 6)
    assert cauchy_delta_integral(one, 0, 1) == 1
    assert cauchy_delta_integral(one, 0, 0) == 0
    ident = DiscreteFunction(ts, ts.points)
    h = Fraction(1, 5)
    assert cauchy_delta_integral(ident, 0, 1) == h * h * 5 * 4 / 2


def test_integral_order_error():
    ts = TimeScale([0, Fraction(1, 2), 1])
    f = DiscreteFunction(ts, [1, 1, 1])
    with pytest.raises(ScaleOrderError):
        cauchy_delta_integral(f, 1, 0)


def test_fundamental_theorem_on_random_grids():
    rng = random.Random(7)
    for _ in range(50):
        n = rng.randint(3, 20)
        pts = sorted({Fraction(rng.randint(-100, 100), rng.randint(1, 40))
                      for _ in range(n)})
        if len(pts) < 3:
            continue
        ts = TimeScale(pts)
        f = DiscreteFunction(ts, [Fraction(rng.randint(-50, 50), 7)
                                  for _ in pts])
        U = delta_antiderivative(f, ts.a)
        dU = delta_derivative(U)
        for t in dU.domain.points:
            assert dU(t) == f(t)


def test_antiderivative_zero_at_base_point_anywhere():
    ts = TimeScale([Fraction(k, 4) for k in range(5)])
    f = DiscreteFunction(ts, [2, -1, 3, 0, 5])
    for t0 in ts.points:
        U = delta_antiderivative(f, t0)
        assert U(t0) == 0
    # signed consistency against the integral from the left end
    U = delta_antiderivative(f, Fraction(1, 2))
    for t in ts.points:
        expect = (cauchy_delta_integral(f, ts.a, t)
                  - cauchy_delta_integral(f, ts.a, Fraction(1, 2)))
        assert U(t) == expect


@given(st.lists(st.fractions(min_value=-10, max_value=10), min_size=3,
                max_size=12, unique=True))
def test_sigma_rho_inverse_on_interior(points):
    ts = TimeScale(sorted(points))
    for t in ts.points[1:-1]:
        assert ts.rho(ts.sigma(t)) == t
        assert ts.sigma(ts.rho(t)) == t


def test_derivatives_match_naive_loops():
    rng = random.Random(3)
    for _ in range(200):
        n = rng.randint(3, 12)
        pts = sorted({Fraction(rng.randint(0, 1000), 1000) for _ in range(n)})
        if len(pts) < 3:
            continue
        ts = TimeScale(pts)
        vals = [Fraction(rng.randint(-20, 20), 3) for _ in pts]
        f = DiscreteFunction(ts, vals)
        d, nb = delta_derivative(f), nabla_derivative(f)
        for i in range(len(pts) - 1):
            assert d(pts[i]) == (vals[i + 1] - vals[i]) / (pts[i + 1] - pts[i])
        for i in range(1, len(pts)):
            assert nb(pts[i]) == (vals[i] - vals[i - 1]) / (pts[i] - pts[i - 1])
