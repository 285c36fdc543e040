"""Command-line front end: build scale functions, run analyses, check PDEs.

Outputs are deterministic: the same flags produce byte-identical CSVs (fixed
number formatting, no timestamps).  Exit codes: 0 success, 2 usage error,
3 computation error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import dynamics, pde, regime
from .asymptotic import AsymptoticContext, box_infinity, delta_infinity, nabla_infinity
from .errors import ScaleDynError
from .observables import x_power
from .scale_functions import (INFINITE, MultiscalePattern, build_multiscale,
                              rebuild_from_manifest, save_scale_function)
from .symbolic import classify, expand_pattern
from .synthetic import binomial_fluctuation, random_dyadic
from .timescale import DiscreteFunction, TimeScale, as_fraction


def _sig17(x) -> str:
    return format(float(x), ".17g")


def _parse_rationals(text: str) -> list[Fraction]:
    return [as_fraction(tok) for tok in text.split(",") if tok]


def _parse_counts(text: str):
    return tuple(INFINITE if tok in ("inf", "INF") else int(tok)
                 for tok in text.split(",") if tok)


def _write_pointmaps(stem: str, layers, start_level: int, side: str | None = None):
    paths = []
    for off, layer in enumerate(layers):
        path = f"{stem}.L{start_level + off}.csv"
        with open(path, "w") as out:
            out.write("t,value\n")
            for t, v in layer.items():
                out.write(f"{_sig17(t)},{_sig17(v)}\n")
        paths.append(path)
    with open(f"{stem}.manifest", "w") as out:
        out.write(f"kind=analysis\nstart_level={start_level}\n")
        out.write(f"levels={len(layers)}\n")
        if side:
            out.write(f"side={side}\n")
    return paths


# ---------------------------------------------------------------------------
# build


def cmd_build(args) -> int:
    if args.kind in ("okamoto", "mso"):
        params = _parse_rationals(args.a)
        if args.kind == "okamoto" and len(params) != 1:
            raise ScaleDynError("okamoto takes exactly one parameter a")
        counts = _parse_counts(args.n) if args.n else (INFINITE,)
        if len(counts) == len(params) - 1:
            counts = counts + (INFINITE,)
        F = build_multiscale(MultiscalePattern(params, counts), args.depth,
                             kind=args.kind)
    elif args.kind == "binomial":
        F = binomial_fluctuation(max(args.depth, 1), args.lam, seed=args.seed)
    elif args.kind == "random":
        F = random_dyadic(max(args.depth, 1), seed=args.seed or 0)
    else:
        raise ScaleDynError(f"unknown kind {args.kind!r}")
    paths = save_scale_function(F, args.out, exact=args.exact)
    for p in paths:
        print(p)
    return 0


# ---------------------------------------------------------------------------
# analyze


def _parse_range(text: str) -> regime.ScaleRange:
    try:
        m0, m1 = text.split(":")
        return regime.ScaleRange(int(m0), int(m1))
    except ValueError as exc:
        raise ScaleDynError(f"bad range {text!r}: {exc}") from None


def cmd_analyze(args) -> int:
    F = rebuild_from_manifest(args.manifest, depth=args.depth)
    op = args.op
    if op in ("delta", "nabla"):
        from .scale_functions import scale_delta, scale_nabla
        fam = scale_delta(F) if op == "delta" else scale_nabla(F)
        _write_pointmaps(args.out, fam.layers, fam.start_level)
    elif op == "antiderivative":
        from .scale_functions import scale_antiderivative
        fam = scale_antiderivative(F, args.point)
        _write_pointmaps(args.out, fam.layers, fam.start_level)
    elif op == "correction":
        if F.seq.refinement_kind == "triadic":
            C = dynamics.mso_correction(F)
        elif args.side == "left":
            C = dynamics.correction_left(F)
        else:
            C = dynamics.correction_right(F)
        _write_pointmaps(args.out, C.layers, C.start_level, side=C.side)
    elif op == "regime":
        rng = _parse_range(args.range)
        t = as_fraction(args.point)
        rows = regime.pointwise_regime(F, t, rng)
        path = f"{args.out}.regime.csv"
        with open(path, "w") as out:
            out.write("m,mu,abs_delta,exponent\n")
            for m, e in rows:
                lay = F.layers[m]
                mu = lay.domain.uniform_mu()
                d = abs(float(dynamics.dq_delta(lay, t)))
                out.write(f"{m},{_sig17(mu)},{_sig17(d)},"
                          f"{'inf' if e == float('inf') else _sig17(e)}\n")
        print(path)
        glob = regime.global_regime(F, rng)
        print(f"global_exponent={_sig17(glob.exponent)}")
        print(f"label={glob.label}")
    elif op == "slope":
        rng = _parse_range(args.range)
        fit = regime.slope_fit(F, as_fraction(args.point), rng)
        print(f"slope={_sig17(fit.slope)}")
        print(f"residual={_sig17(fit.residual)}")
    elif op == "probe":
        report = dynamics.derivability_probe(F, as_fraction(args.point))
        print(f"t={args.point} entry_level={report.entry_level}")
        for name, trend in (("delta", report.delta), ("nabla", report.nabla),
                            ("correction", report.correction)):
            ratio = "none" if trend.ratio is None else _sig17(trend.ratio)
            print(f"{name}: {trend.label} ratio={ratio}")
        if report.derivative is not None:
            print(f"derivative={_sig17(report.derivative)}")
    elif op == "classify":
        if F.pattern is None:
            raise ScaleDynError("no pattern to classify")
        rep = classify(expand_pattern(F.pattern), horizon=args.horizon)
        print(f"status={rep.status}")
        if rep.period is not None:
            print(f"period={rep.period} preperiod={rep.preperiod}")
    else:
        raise ScaleDynError(f"unknown analysis op {op!r}")
    return 0


# ---------------------------------------------------------------------------
# pde


def _pde_params(pairs) -> dict:
    out = {}
    for pair in pairs or []:
        if "=" not in pair:
            raise ScaleDynError(f"bad parameter {pair!r}, expected key=value")
        k, v = pair.split("=", 1)
        out[k] = v
    return out


def _pick_psi(name: str, params: dict) -> pde.PsiField:
    if name == "heat-kernel":
        lam2 = float(params.get("lam2", 1.0))
        return pde.heat_kernel(lam2 / 2)
    if name == "exponential":
        return pde.exponential_solution(float(params.get("lam2", 1.0)),
                                        float(params.get("k", 1.0)))
    if name == "plane-wave":
        return pde.plane_wave(float(params.get("hbar", 1.0)),
                              float(params.get("k", 1.0)))
    if name == "harmonic":
        return pde.harmonic_ground_state(float(params.get("hbar", 1.0)))
    raise ScaleDynError(f"unknown psi field {name!r}")


def _pick_potential(name: str, params: dict) -> pde.Potential:
    if name == "zero":
        return pde.Potential.zero()
    if name == "linear":
        return pde.Potential.linear(float(params.get("g", 1.0)))
    if name == "harmonic":
        return pde.Potential.harmonic(float(params.get("kspring", 1.0)))
    raise ScaleDynError(f"unknown potential {name!r}")


def cmd_pde(args) -> int:
    params = _pde_params(args.params)
    U = _pick_potential(args.potential, params)
    if args.equation in ("newton", "euler-lagrange", "linear-scale"):
        if not args.manifest:
            raise ScaleDynError(f"{args.equation} needs --manifest")
        X = rebuild_from_manifest(args.manifest)
        if args.equation == "newton":
            rows = pde.scale_newton_residual(X, U)
        elif args.equation == "euler-lagrange":
            L = pde.Lagrangian(partial_x=lambda x, v: -U.u_prime(x),
                               partial_v=lambda x, v: v)
            rows = pde.scale_euler_lagrange_residual(X, L)
        else:
            rows = pde.linear_scale_equation_residual(X)
        worst = max(float(r.max_abs) for r in rows) if rows else 0.0
        for r in rows:
            mu = "none" if r.mu is None else _sig17(r.mu)
            print(f"level={r.level} mu={mu} max_abs={_sig17(r.max_abs)}")
        print(f"max_residual={_sig17(worst)}")
        return 0
    grid = pde.Grid.parse(args.grid)
    psi = _pick_psi(args.psi, params)
    lam2 = float(params.get("lam2", 1.0))
    hbar = float(params.get("hbar", 1.0))
    if args.equation == "diffusion":
        p = pde.ModelParameters.diffusion(lam2)
        worst = pde.diffusion_residual(psi, p, U, grid)
    elif args.equation == "nonlinear-psi":
        gamma = float(params.get("gamma", -lam2 / 2))
        p = pde.ModelParameters(gamma=gamma, lam_minus_sq=lam2, lam_plus_sq=lam2)
        worst = pde.nonlinear_psi_residual(psi, p, U, grid)
    elif args.equation == "schrodinger":
        p = pde.ModelParameters.schrodinger(hbar)
        worst = pde.schrodinger_residual(psi, p, U, grid)
    else:
        raise ScaleDynError(f"unknown equation {args.equation!r}")
    print(f"max_residual={_sig17(worst)}")
    return 0


# ---------------------------------------------------------------------------
# asymptotic


def cmd_asymptotic(args) -> int:
    n = args.samples
    if n < 3:
        raise ScaleDynError("need at least 3 sample points")
    pts = [Fraction(k, n - 1) for k in range(n)]
    samples = DiscreteFunction(TimeScale(pts), [t * (1 - t) for t in pts])
    ctx = AsymptoticContext.from_samples(samples, args.alpha,
                                         lam_plus=args.lambda_plus,
                                         lam_minus=args.lambda_minus,
                                         eta=args.eta)
    f = x_power(args.degree)
    path = f"{args.out}.asymptotic.csv"
    with open(path, "w") as out:
        out.write("t,delta_inf,nabla_inf,box_re,box_im\n")
        for t in pts[1:-1]:
            dp = delta_infinity(ctx, f, t)
            dn = nabla_infinity(ctx, f, t)
            bx = box_infinity(ctx, f, t)
            out.write(f"{_sig17(t)},{_sig17(dp)},{_sig17(dn)},"
                      f"{_sig17(bx.real)},{_sig17(bx.imag)}\n")
    print(path)
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="scaledyn",
                                  description="scale calculus toolbox")
    top.add_argument("--seed", type=int, default=None,
                     help="seed for randomized constructions")
    sub = top.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="construct a scale function")
    b.add_argument("--kind", required=True,
                   choices=["okamoto", "mso", "binomial", "random"])
    b.add_argument("--a", default="", help="comma-separated action parameters")
    b.add_argument("--n", default="", help="comma-separated block counts (last may be inf)")
    b.add_argument("--depth", type=int, required=True)
    b.add_argument("--lam", default="1", help="binomial displacement amplitude")
    b.add_argument("--out", required=True, help="output file stem")
    b.add_argument("--exact", action="store_true", help="emit num,den,value CSV rows")
    b.set_defaults(fn=cmd_build)

    a = sub.add_parser("analyze", help="run an analysis from a manifest")
    a.add_argument("--manifest", required=True)
    a.add_argument("--op", required=True,
                   choices=["delta", "nabla", "antiderivative", "correction",
                            "regime", "slope", "probe", "classify"])
    a.add_argument("--point", default="0")
    a.add_argument("--range", default="1:4")
    a.add_argument("--side", default="right", choices=["left", "right"])
    a.add_argument("--depth", type=int, default=None, help="override manifest depth")
    a.add_argument("--horizon", type=int, default=32)
    a.add_argument("--out", default="analysis")
    a.set_defaults(fn=cmd_analyze)

    p = sub.add_parser("pde", help="evaluate scale-equation and PDE residuals")
    p.add_argument("--equation", required=True,
                   choices=["newton", "euler-lagrange", "linear-scale",
                            "nonlinear-psi", "diffusion", "schrodinger"])
    p.add_argument("--manifest", default=None)
    p.add_argument("--psi", default="heat-kernel",
                   choices=["heat-kernel", "exponential", "plane-wave", "harmonic"])
    p.add_argument("--potential", default="zero",
                   choices=["zero", "linear", "harmonic"])
    p.add_argument("--params", nargs="*", metavar="key=value")
    p.add_argument("--grid", default="0.1:1:9,-2:2:21")
    p.set_defaults(fn=cmd_pde)

    y = sub.add_parser("asymptotic", help="tabulate asymptotic operators")
    y.add_argument("--alpha", type=float, default=0.5)
    y.add_argument("--lambda-plus", dest="lambda_plus", type=float, default=0.0)
    y.add_argument("--lambda-minus", dest="lambda_minus", type=float, default=0.0)
    y.add_argument("--eta", default="-1", choices=["-1", "+1", "-i", "+i"])
    y.add_argument("--degree", type=int, default=2, help="observable x**degree")
    y.add_argument("--samples", type=int, default=33)
    y.add_argument("--out", default="asymptotic")
    y.set_defaults(fn=cmd_asymptotic)
    return top


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except ScaleDynError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
