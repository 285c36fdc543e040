import math
from fractions import Fraction

import pytest

from scaledyn import (INFINITE, InsufficientDataError, MultiscalePattern,
                      NotInTimeScaleError, Root2, ScaleDynError, ScaleRange,
                      binomial_fluctuation, build_multiscale, build_okamoto,
                      estimate_lambda, extend, global_regime, local_regime,
                      pointwise_regime, slope_fit, smooth_dyadic)

LN3 = math.log(3)

MSO_PATTERN = MultiscalePattern(
    [Fraction(2, 9), Fraction(2, 3), Fraction(5, 6)], (4, 3, INFINITE))


def test_scale_range_validation():
    with pytest.raises(ScaleDynError):
        ScaleRange(3, 3)
    with pytest.raises(ScaleDynError):
        ScaleRange(-1, 2)
    assert list(ScaleRange(1, 4).levels()) == [1, 2, 3, 4]


def test_range_must_fit_depth():
    F = build_okamoto(Fraction(2, 3), 3)
    with pytest.raises(ScaleDynError):
        pointwise_regime(F, 0, ScaleRange(1, 5))
    with pytest.raises(NotInTimeScaleError):
        pointwise_regime(F, Fraction(1, 9), ScaleRange(0, 3))


def test_pointwise_okamoto_corner():
    # at t=0 the increment factor is (3a)**m, so the exponent is
    # 1 - ln(3a)/ln 3 = ln(1/a)/ln 3 at every level
    for a in (Fraction(1, 4), Fraction(2, 3), Fraction(5, 6)):
        F = build_okamoto(a, 8)
        expect = math.log(1 / float(a)) / LN3
        for m, e in pointwise_regime(F, 0, ScaleRange(1, 8)):
            assert abs(e - expect) < 1e-12, (a, m)


def test_pointwise_inf_sentinel_at_plateau():
    F = build_okamoto(Fraction(1, 2), 5)
    vals = pointwise_regime(F, Fraction(1, 3), ScaleRange(1, 5))
    assert all(e == math.inf for _, e in vals)


def test_local_regime_counts_exclusions():
    F = build_okamoto(Fraction(1, 2), 4)
    locs = local_regime(F, ScaleRange(1, 4))
    # level m has 3**m intervals, of which the nonzero ones are the 2**m
    # outer-digit addresses
    for loc in locs:
        assert loc.excluded == 3 ** loc.level - 2 ** loc.level
        assert abs(loc.exponent - math.log(2) / LN3) < 1e-12


def test_global_regime_okamoto():
    # the supremum comes from the slowest-growing addresses: the middle-digit
    # slope factor |3 - 6a| = 2 beats the corner factor 3a = 5/2
    F = build_okamoto(Fraction(5, 6), 8)
    rep = global_regime(F, ScaleRange(1, 8))
    assert rep.label == "power-law"
    assert abs(rep.exponent - (1 - math.log(2) / LN3)) < 1e-12


def test_global_regime_identity_is_linear():
    F = build_okamoto(Fraction(1, 3), 6)
    rep = global_regime(F, ScaleRange(1, 6))
    assert rep.label == "linear"
    assert rep.exponent == 1.0


def test_global_regime_mso():
    F = build_multiscale(MSO_PATTERN, 10)
    rep = global_regime(F, ScaleRange(1, 10))
    assert abs(rep.exponent - math.log(4.5) / LN3) < 1e-12


def test_slope_fit_okamoto_is_pure_power_law():
    F = build_okamoto(Fraction(5, 6), 8)
    fit = slope_fit(F, 0, ScaleRange(1, 8))
    assert abs(fit.slope - math.log(Fraction(6, 5)) / LN3) < 1e-10
    assert fit.residual < 1e-12
    assert fit.used_levels == tuple(range(1, 9))


def test_slope_fit_mso_blocks():
    F = build_multiscale(MSO_PATTERN, 10)
    for rng, expect in ((ScaleRange(1, 4), math.log(4.5) / LN3),
                        (ScaleRange(4, 7), math.log(1.5) / LN3),
                        (ScaleRange(7, 10), math.log(1.2) / LN3)):
        fit = slope_fit(F, 0, rng)
        assert abs(fit.slope - expect) < 1e-10, rng


def test_slope_fit_flags_block_boundary():
    # fitting across two regimes leaves a visible residual
    F = build_multiscale(MSO_PATTERN, 8)
    inside = slope_fit(F, 0, ScaleRange(1, 4)).residual
    across = slope_fit(F, 0, ScaleRange(2, 6)).residual
    assert inside < 1e-12
    assert across > 1e-3


def test_slope_fit_skips_vanished_and_errors_when_starved():
    F = build_okamoto(Fraction(1, 2), 6)
    fit = slope_fit(F, 0, ScaleRange(1, 6))
    assert fit.used_levels == tuple(range(1, 7))
    with pytest.raises(InsufficientDataError):
        slope_fit(F, Fraction(1, 3), ScaleRange(1, 6))


def test_extend_reaches_target_and_splits_exactly():
    F = build_okamoto(Fraction(2, 3), 4)
    dec = extend(F, ScaleRange(1, 4), 7)
    assert dec.extension.depth == 7
    # the original layers are untouched
    for m in range(5):
        assert dec.extension.layers[m].values == F.layers[m].values
    for m in range(1, 8):
        star = dec.star_layer(m)
        dev = dec.deviation_layer(m)
        lay = dec.extension.layers[m]
        for t in lay.domain.points:
            assert star(t) + dev(t) == lay(t)


def test_extend_requires_action_without_pattern():
    G = smooth_dyadic(3)
    with pytest.raises(ScaleDynError):
        extend(G, ScaleRange(1, 3), 5)
    dec = extend(G, ScaleRange(1, 3), 3)  # no growth needed, no action needed
    assert dec.extension.depth == 3


def test_lambda_estimate_binomial_oracle():
    lam = Fraction(3, 2)
    B = binomial_fluctuation(8, lam)
    dec = extend(B, ScaleRange(1, 8), 8)
    est = estimate_lambda(dec, 0.5, "plus")
    assert est.j_alpha == 2
    assert est.estimate == Root2(lam * lam, 0)
    assert est.spread == 0.0
    assert not est.degenerate
    # the field mu * C**2 equals lambda**2 at every interior point
    for field in est.per_level:
        assert all(v == Root2(lam * lam, 0) for v in field.values)


def test_lambda_estimate_sides_agree_for_alternating():
    B = binomial_fluctuation(6, Fraction(1, 2))
    dec = extend(B, ScaleRange(1, 6), 6)
    plus = estimate_lambda(dec, 0.5, "plus")
    minus = estimate_lambda(dec, 0.5, "minus")
    assert plus.estimate == minus.estimate == Root2(Fraction(1, 4), 0)


def test_lambda_degenerate_on_smooth_input():
    lin = smooth_dyadic(5, fn=lambda t: 2 * t)
    dec = extend(lin, ScaleRange(1, 5), 5)
    est = estimate_lambda(dec, 0.5, "plus")
    assert est.degenerate
    assert est.estimate == 0
    assert est.spread == 0.0


def test_lambda_estimate_validates_inputs():
    B = binomial_fluctuation(4, 1)
    dec = extend(B, ScaleRange(1, 4), 4)
    with pytest.raises(ScaleDynError):
        estimate_lambda(dec, 1.5, "plus")
    with pytest.raises(ScaleDynError):
        estimate_lambda(dec, 0.5, "up")


def test_j_alpha_floor():
    B = binomial_fluctuation(4, 1)
    dec = extend(B, ScaleRange(1, 4), 4)
    assert estimate_lambda(dec, 0.4, "plus").j_alpha == 2
    assert estimate_lambda(dec, Fraction(1, 3), "plus").j_alpha == 3
