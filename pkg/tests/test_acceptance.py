"""Acceptance suite: ten numbered criteria, each reporting PASS or FAIL.

Every criterion exercises the library through its public interface and checks
against either an independent re-implementation, a closed-form value, or an
exactly solvable construction.  Tolerances are stated inline; "exact" means
equality of rational (or Q(sqrt 2)) numbers with no rounding at any point.
"""

import math
import time
from fractions import Fraction

from scaledyn import (AsymptoticContext, Grid, ModelParameters,
                      MultiscalePattern, Potential, Root2, ScaleRange,
                      binomial_fluctuation, box_infinity,
                      box_nonlinear_residual, build_multiscale, build_okamoto,
                      chain_rule_delta, chain_rule_nabla, delta_infinity,
                      diffusion_residual, dq_delta, estimate_lambda, extend,
                      global_regime, harmonic_ground_state, heat_kernel,
                      left_reduced_points, nabla_infinity,
                      nonlinear_psi_residual, okamoto_correction,
                      okamoto_identity_residual, plane_wave, pointwise_regime,
                      polynomial_x, random_dyadic, scale_delta,
                      scale_effect_identity_check, scale_nabla,
                      schrodinger_residual, sin_x, slope_fit)
from scaledyn.cli import main as cli_main
from scaledyn.scale_functions import INFINITE

LN3 = math.log(3)
A_VALUES = [Fraction(1, 4), Fraction(1, 3), Fraction(1, 2), Fraction(2, 3),
            Fraction(5, 6)]


def _report(capfd, n: int, body):
    ok = False
    try:
        body()
        ok = True
    finally:
        with capfd.disabled():
            print(f"\nCRITERION {n}: {'PASS' if ok else 'FAIL'}")


import functools


@functools.lru_cache(maxsize=None)
def okamoto_direct(a, k, m):
    """Independent top-down Okamoto evaluation via the affine self-similarity."""
    if m == 0:
        return Fraction(k)
    d, rem = divmod(k, 3 ** (m - 1))
    if d == 3:
        d, rem = 2, 3 ** (m - 1)
    offset = (Fraction(0), a, 1 - a)[d]
    scale = (a, 1 - 2 * a, a)[d]
    return offset + scale * okamoto_direct(a, rem, m - 1)


def test_criterion_01_okamoto_equivalence(capfd):
    def body():
        start = time.perf_counter()
        for a in A_VALUES:
            F = build_okamoto(a, 8)
            for m in range(1, 9):
                for k, v in enumerate(F.layers[m].values):
                    assert v == okamoto_direct(a, k, m), (a, m, k)
        assert time.perf_counter() - start < 10.0
    _report(capfd, 1, body)


def test_criterion_02_okamoto_derivative_regimes(capfd):
    def body():
        # a = 1/3: both scale derivatives are identically 1 and the
        # correction vanishes at every level, exactly
        F = build_okamoto(Fraction(1, 3), 8)
        d, n = scale_delta(F), scale_nabla(F)
        for m in range(1, 9):
            assert all(v == 1 for v in d.layer(m).values)
            assert all(v == 1 for v in n.layer(m).values)
        C = okamoto_correction(F)
        assert all(lay.max_abs() == 0 for lay in C.layers)

        # a = 1/2: forward quotients vanish on every left-reduced point
        # from its entry level on, exactly
        H = build_okamoto(Fraction(1, 2), 8)
        reduced = left_reduced_points(H)
        assert reduced
        for t, entry in reduced:
            for m in range(entry, 9):
                assert dq_delta(H.layers[m], t) == 0

        # a = 5/6: |Delta_m(0)| = (3a)^m, ratio 5/2 per level
        G = build_okamoto(Fraction(5, 6), 8)
        prev = None
        for m in range(1, 9):
            val = dq_delta(G.layers[m], 0)
            assert val == Fraction(5, 2) ** m
            if prev is not None:
                assert abs(float(val / prev) - 2.5) <= 1e-12
            prev = val
    _report(capfd, 2, body)


def test_criterion_03_okamoto_correction_identity(capfd):
    def body():
        for a in A_VALUES:
            F = build_okamoto(a, 8)
            C = okamoto_correction(F)
            assert okamoto_identity_residual(F, C) == [0] * 8, a
    _report(capfd, 3, body)


def test_criterion_04_dyadic_scale_effect(capfd):
    def body():
        for seed in range(100):
            G = random_dyadic(10, seed=seed)
            assert scale_effect_identity_check(G) == [0] * 10, seed
    _report(capfd, 4, body)


def test_criterion_05_chain_rule(capfd):
    def body():
        import random as _random
        rng = _random.Random(42)
        for seed in range(100):
            coeffs = [Fraction(rng.randint(-6, 6), rng.randint(1, 4))
                      for _ in range(5)]
            f = polynomial_x(coeffs, orders=4)
            G = random_dyadic(4, seed=seed)
            for check in chain_rule_delta(f, G, J=4):
                assert check.max_residual == 0, seed
            for check in chain_rule_nabla(f, G, J=4):
                assert check.max_residual == 0, seed
        # remainder decays at the Lagrange rate between truncation orders
        f = sin_x(orders=16)
        G = random_dyadic(4, seed=3)
        res8 = max(float(c.max_residual) for c in chain_rule_delta(f, G, J=8))
        res12 = max(float(c.max_residual) for c in chain_rule_delta(f, G, J=12))
        assert res12 < res8
        # both sit below the analytic Taylor tail with |sin partials| <= 1
        from scaledyn import correction_right
        C = correction_right(G)
        for J, res in ((8, res8), (12, res12)):
            bound = max(
                sum(float(G.seq[m].uniform_mu()) ** (j - 1)
                    * float(C.layer(m).max_abs()) ** j / math.factorial(j)
                    for j in range(J + 1, J + 40))
                for m in range(1, 5))
            assert res <= bound + 1e-12
    _report(capfd, 5, body)


def test_criterion_06_regime_estimation(capfd):
    def body():
        for a in A_VALUES:
            if a == Fraction(1, 2):
                continue  # the corner increment vanishes nowhere else
            F = build_okamoto(a, 8)
            expect = math.log(1 / float(a)) / LN3
            for m, e in pointwise_regime(F, 0, ScaleRange(1, 8)):
                assert abs(e - expect) <= 1e-12, (a, m)
        pattern = MultiscalePattern(
            [Fraction(2, 9), Fraction(2, 3), Fraction(5, 6)], (4, 3, INFINITE))
        F = build_multiscale(pattern, 10)
        rep = global_regime(F, ScaleRange(1, 10))
        assert abs(rep.exponent - math.log(4.5) / LN3) <= 1e-12
        for rng, expect in ((ScaleRange(1, 4), math.log(4.5) / LN3),
                            (ScaleRange(4, 7), math.log(1.5) / LN3),
                            (ScaleRange(7, 10), math.log(1.2) / LN3)):
            fit = slope_fit(F, 0, rng)
            assert abs(fit.slope - expect) <= 1e-10, rng
    _report(capfd, 6, body)


def test_criterion_07_lambda_oracle(capfd):
    def body():
        start = time.perf_counter()
        lam = Fraction(3, 2)
        B = binomial_fluctuation(12, lam)
        dec = extend(B, ScaleRange(1, 12), 12)
        est = estimate_lambda(dec, 0.5, "plus")
        target = Root2(lam * lam, 0)
        for field in est.per_level:
            assert all(v == target for v in field.values)
        assert est.estimate == target
        assert est.spread == 0.0
        assert time.perf_counter() - start < 5.0
    _report(capfd, 7, body)


def test_criterion_08_asymptotic_degeneration(capfd):
    def body():
        ctx = AsymptoticContext(lambda t: t * t, lambda t: 2 * t,
                                lambda t: 2 * t, alpha=1.0)
        f = sin_x()
        h = 1e-6

        def composite(t):
            return f.evaluate(t, t * t)

        for t in (0.2, 0.55, 0.9, 1.4):
            fd = (composite(t + h) - composite(t - h)) / (2 * h)
            assert abs(delta_infinity(ctx, f, t) - fd) <= 1e-6
            assert abs(nabla_infinity(ctx, f, t) - fd) <= 1e-6
            bx = box_infinity(ctx, f, t)
            assert abs(bx.real - fd) <= 1e-6
            assert abs(bx.imag) <= 1e-6
    _report(capfd, 8, body)


def test_criterion_09_pde_residuals(capfd):
    def body():
        import random as _random
        grid = Grid.parse("0.2:1.5:7,-2:2:9")
        lam_sq = 0.8
        p = ModelParameters.diffusion(lam_sq)
        assert diffusion_residual(heat_kernel(lam_sq / 2), p,
                                  Potential.zero(), grid) <= 1e-10
        hbar = 1.0
        ps = ModelParameters.schrodinger(hbar)
        assert schrodinger_residual(plane_wave(hbar, 1.3), ps,
                                    Potential.zero(), grid) <= 1e-10
        # gamma specializations on random grids: the nonlinear psi equation
        # collapses to diffusion at gamma = -lam^2/2, and the Box form equals
        # the Schroedinger residual at gamma = hbar/2
        rng = _random.Random(17)
        for _ in range(5):
            t0 = rng.uniform(0.1, 0.5)
            g = Grid.parse(f"{t0}:{t0 + rng.uniform(0.5, 1.0)}:5,"
                           f"{rng.uniform(-2, -1)}:{rng.uniform(1, 2)}:5")
            psi = heat_kernel(lam_sq / 2)
            r1 = nonlinear_psi_residual(psi, p, Potential.zero(), g)
            r2 = diffusion_residual(psi, p, Potential.zero(), g)
            assert abs(r1 - r2) <= 1e-12
            for field in (plane_wave(hbar, rng.uniform(0.5, 2.0)),
                          harmonic_ground_state(hbar)):
                rb = box_nonlinear_residual(field, ps, Potential.harmonic(), g)
                rs = schrodinger_residual(field, ps, Potential.harmonic(), g)
                assert abs(rb - rs) <= 1e-12
    _report(capfd, 9, body)


def test_criterion_10_figure_data(capfd, tmp_path):
    def body():
        # Okamoto family figure: one curve per parameter at depth 4
        family = [Fraction(1, 4), Fraction(1, 2), Fraction(2, 3),
                  Fraction(5, 6)]
        for i, a in enumerate(family):
            stem = str(tmp_path / f"fam{i}")
            assert cli_main(["build", "--kind", "okamoto", "--a", str(a),
                             "--depth", "4", "--out", stem]) == 0
            lines = (tmp_path / f"fam{i}.L4.csv").read_text().splitlines()
            assert len(lines) == 3 ** 4 + 2  # header + 82 points
            k = 3 ** 3  # t = 1/3
            t_str, v_str = lines[1 + k].split(",")
            assert abs(float(t_str) - 1 / 3) < 1e-15
            assert abs(float(v_str) - float(okamoto_direct(a, k, 4))) < 1e-15

        # 3D scale stack for a = 2/3: every level from seed to depth 5
        stem = str(tmp_path / "stack")
        assert cli_main(["build", "--kind", "okamoto", "--a", "2/3",
                         "--depth", "5", "--out", stem]) == 0
        for m in range(6):
            lines = (tmp_path / f"stack.L{m}.csv").read_text().splitlines()
            assert len(lines) == 3 ** m + 2, m

        # pointwise-regime figure data for a = 5/6 at t = 0
        assert cli_main(["analyze", "--manifest", str(tmp_path / "fam3.manifest"),
                         "--op", "regime", "--point", "0", "--range", "1:4",
                         "--out", str(tmp_path / "reg")]) == 0
        lines = (tmp_path / "reg.regime.csv").read_text().splitlines()
        assert lines[0] == "m,mu,abs_delta,exponent"
        assert len(lines) == 5
        expect = math.log(6 / 5) / LN3
        for row in lines[1:]:
            assert abs(float(row.split(",")[3]) - expect) <= 1e-12

        # a = 1/2 correction-term figure data
        stem = str(tmp_path / "half")
        assert cli_main(["build", "--kind", "okamoto", "--a", "1/2",
                         "--depth", "4", "--out", stem]) == 0
        assert cli_main(["analyze", "--manifest", stem + ".manifest",
                         "--op", "correction",
                         "--out", str(tmp_path / "corr")]) == 0
        lines = (tmp_path / "corr.L1.csv").read_text().splitlines()
        assert len(lines) == 2  # header + the single coarse left endpoint
        t_str, v_str = lines[1].split(",")
        # C_1(0) = (3a - 1) * chord slope = 1/2
        assert float(t_str) == 0.0 and float(v_str) == 0.5
    _report(capfd, 10, body)
