"""Batch command line driver tying the modules into reproducible experiments.

Every command reads a shared flag set (optionally seeded from a key=value
config file), writes RFC-4180-style CSV data plus a JSON metadata sidecar,
and renders a matplotlib figure next to each CSV (suppress with --no-plot).
All outputs are deterministic for a fixed config and seed.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__, chazy, kernels, limitmaps, specialfn
from .biorth import (
    MomentTable,
    biorth_solve,
    default_bits,
    kernel_Kn,
    KernelGrid,
    moments_general,
    moments_quadratic,
    rescaled_kernel_origin,
    rescaled_kernel_soft,
)
from .equilibrium import (
    NegativeDensityWarning,
    Potential,
    RegimeError,
    critical_point,
    density_psi,
    solve_C1,
    solve_C2,
    total_mass,
)

_FLOAT_FMT = ".17g"


def _fmt(x: float) -> str:
    return format(float(x), _FLOAT_FMT)


def _write_text(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def _write_json(path: Path, obj) -> None:
    _write_text(path, json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _csv(rows: list[list], header: list[str]) -> str:
    out = [",".join(header)]
    for row in rows:
        out.append(",".join(_fmt(v) if isinstance(v, (int, float)) else str(v)
                            for v in row))
    return "\n".join(out) + "\n"


def _parse_grid(spec: str):
    """'x0:x1:nx[,y0:y1:ny]' -> (xs, ys or None)."""
    parts = spec.split(",")
    if len(parts) not in (1, 2):
        raise ValueError("grid must be 'x0:x1:nx' or 'x0:x1:nx,y0:y1:ny'")

    def axis(p):
        lo, hi, n = p.split(":")
        return np.linspace(float(lo), float(hi), int(n))

    xs = axis(parts[0])
    ys = axis(parts[1]) if len(parts) == 2 else None
    return xs, ys


def _potential_from(args) -> Potential:
    coeffs = tuple(float(v) for v in args.potential.split(","))
    return Potential(args.theta, args.alpha, coeffs, args.t)


def _config_echo(args) -> dict:
    return {
        "theta": args.theta, "alpha": args.alpha, "potential": args.potential,
        "t": args.t, "tau": args.tau, "n": args.n, "bits": args.bits,
        "grid": args.grid, "seed": args.seed, "version": __version__,
    }


def _build_table(P: Potential, n: int, size: int, bits: int | None) -> MomentTable:
    M = (size - 1) * (P.theta + 1) + 1
    if len(P.coeffs) == 2 and P.coeffs[1] > 0:
        return moments_quadratic(P, n, M, bits or default_bits(n))
    return moments_general(P, n, M, bits or default_bits(n))


def _solve_regime(P: Potential):
    """(record, regime name, t_c or None)."""
    try:
        _, t_c = critical_point(P)
    except RegimeError:
        return solve_C1(P), "hard", None
    if P.t < t_c * (1.0 - 1e-10):
        return solve_C2(P), "soft", t_c
    regime = "transition" if abs(P.t - t_c) <= 1e-8 * max(1.0, t_c) else "hard"
    return solve_C1(P), regime, t_c


# ---------------------------------------------------------------------------
# density
# ---------------------------------------------------------------------------

def _edge_slopes(eq, regime: str) -> dict:
    lo, hi = eq.support
    report = {}
    if regime in ("hard", "transition"):
        xs = hi * np.power(10.0, np.linspace(-6.0, -3.0, 10))
        ys = np.array([density_psi(eq, float(x)) for x in xs])
        if np.all(ys > 0):
            report["origin_slope"] = float(np.polyfit(np.log(xs), np.log(ys), 1)[0])
        else:
            report["origin_slope"] = None
            report["negative_near_origin"] = True
    else:
        xs = hi - hi * np.power(10.0, np.linspace(-6.0, -3.0, 10))
        ys = np.array([density_psi(eq, float(x)) for x in xs])
        report["soft_edge_slope"] = float(np.polyfit(np.log(hi - xs), np.log(ys), 1)[0])
        report["a_hat"] = eq.a_hat
    return report


def cmd_density(args, out: Path) -> None:
    import warnings

    P = _potential_from(args)
    eq, regime, t_c = _solve_regime(P)
    lo, hi = eq.support
    if args.grid:
        xs, _ = _parse_grid(args.grid)
    else:
        pad = 1e-4 * (hi - lo)
        xs = np.linspace(lo + pad, hi - pad, 400)
    negative = False
    psi = []
    with warnings.catch_warnings():
        warnings.simplefilter("always")
        for x in xs:
            with warnings.catch_warnings(record=True) as caught:
                warnings.simplefilter("always")
                psi.append(density_psi(eq, float(x)))
                negative = negative or any(
                    issubclass(w.category, NegativeDensityWarning) for w in caught
                )
    meta = {
        "config": _config_echo(args),
        "regime": regime,
        "t_critical": t_c,
        "record": eq.to_json_dict(),
        "support": [lo, hi],
        "mass": total_mass(eq),
        "negative_density_flagged": negative,
    }
    meta.update(_edge_slopes(eq, regime))
    _write_text(out / "density.csv", _csv([[x, p] for x, p in zip(xs, psi)], ["x", "psi"]))
    _write_json(out / "density.json", meta)
    if args.plot:
        from . import plots
        plots.density_figure(out / "density.png", xs, psi, (lo, hi),
                             f"equilibrium density ({regime}, t={P.t:g})")
    print(f"density: regime={regime} support=({lo:.6g}, {hi:.6g}) -> {out}/density.*")


# ---------------------------------------------------------------------------
# equilibrium
# ---------------------------------------------------------------------------

def cmd_equilibrium(args, out: Path) -> None:
    P = _potential_from(args)
    eq, regime, t_c = _solve_regime(P)
    meta = {
        "config": _config_echo(args),
        "regime": regime,
        "t_critical": t_c,
        "record": eq.to_json_dict(),
    }
    if regime in ("hard", "transition"):
        th = P.theta
        lhs = eq.A3 + 1.0 - (th + 1.0) / th * eq.A2
        meta["a2_a3_relation"] = {
            "lhs": lhs,
            "rhs_general": 1.0 - 1.0 / P.t + eq.n_in_prime / th,
            "critical_residual": lhs if regime == "transition" else None,
        }
        meta["n_in_prime_at_minus1"] = eq.n_in_prime
    if args.t_sweep:
        lo, hi, num = args.t_sweep.split(":")
        ts = np.linspace(float(lo), float(hi), int(num))
        rows = []
        series = {"left edge": [], "right edge": []}
        for t in ts:
            Pt = P.with_t(float(t))
            rec, reg, _ = _solve_regime(Pt)
            a, b = rec.support
            rows.append([t, reg, rec.u, rec.v, a, b])
            series["left edge"].append(a)
            series["right edge"].append(b)
        _write_text(out / "t_sweep.csv",
                    _csv(rows, ["t", "regime", "u", "v", "left_edge", "right_edge"]))
        if args.plot:
            from . import plots
            plots.sweep_figure(out / "t_sweep.png", ts, series, "support edges vs t")
    _write_json(out / "equilibrium.json", meta)
    print(f"equilibrium: regime={regime} -> {out}/equilibrium.json")


# ---------------------------------------------------------------------------
# kernel
# ---------------------------------------------------------------------------

def _kernel_grid(args, P, n, bits, scaling: str):
    if args.grid:
        xs, ys = _parse_grid(args.grid)
        if ys is None:
            ys = xs
    elif scaling == "soft":
        xs = ys = np.linspace(-2.0, 2.0, 9)
    else:
        xs = ys = np.linspace(0.2, 3.0, 8)

    if scaling == "raw":
        T = _build_table(P, n, n, bits)
        F = biorth_solve(T, n)
        vals = [[kernel_Kn(F, T, float(x), float(y)) for y in ys] for x in xs]
        scal = {"kind": "raw", "n": n, "t": P.t}
    elif scaling == "origin":
        eq1 = solve_C1(P.with_t(1.0))
        tau = args.tau or 0.0
        t_n = 1.0 - math.sqrt(eq1.A1 / n) * tau
        Pn = P.with_t(t_n)
        T = _build_table(Pn, n, n, bits)
        F = biorth_solve(T, n)
        vals = [[rescaled_kernel_origin(F, T, eq1, float(x), float(y)) for y in ys]
                for x in xs]
        th = P.theta
        scal = {"kind": "origin_rescaled", "n": n, "tau": tau, "t_n": t_n,
                "rho_n_factor": (eq1.rho * n) ** (-(th + 1.0) / (2.0 * th))}
    elif scaling == "soft":
        seq = solve_C2(P)
        T = _build_table(P, n, n, bits)
        F = biorth_solve(T, n)
        vals = [[rescaled_kernel_soft(F, T, seq, float(x), float(y)) for y in ys]
                for x in xs]
        c_n = (n * math.pi * seq.d2_hat) ** (-2.0 / 3.0)
        scal = {"kind": "soft_edge_rescaled", "n": n, "b_hat": seq.b_hat,
                "d2_hat": seq.d2_hat, "c_n": c_n}
    else:
        raise ValueError(f"unknown scaling {scaling}")
    return KernelGrid(xs=xs, ys=ys, values=np.array(vals), scaling=scal), T, F


def cmd_kernel(args, out: Path) -> None:
    P = _potential_from(args)
    n = args.n
    grid, T, F = _kernel_grid(args, P, n, args.bits, args.scaling)
    _write_text(out / "kernel.csv", grid.to_csv())
    _write_text(out / "moments.txt", T.to_text())
    meta = {"config": _config_echo(args), "scaling": grid.scaling}
    if args.scaling == "raw":
        from scipy.integrate import quad
        hi = 2.0 * solve_C1(P).b
        trace, _ = quad(lambda x: kernel_Kn(F, T, x, x), 0.0, hi, limit=200)
        meta["trace"] = {"value": trace, "expected": n}
    if args.n_doubling:
        grid2, _, _ = _kernel_grid(args, P, 2 * n, args.bits, args.scaling)
        rows = []
        for i, x in enumerate(grid.xs):
            for j, y in enumerate(grid.ys):
                a, b = grid.values[i][j], grid2.values[i][j]
                rows.append([x, y, a, b, abs(a - b)])
        _write_text(out / "kernel_doubling.csv",
                    _csv(rows, ["x", "y", f"K_{n}", f"K_{2 * n}", "abs_diff"]))
        meta["n_doubling_max_diff"] = float(np.max(np.abs(grid.values - grid2.values)))
    if args.overlay:
        spec = kernels.LimitKernelSpec(P.theta, P.alpha)
        fn = (kernels.kernel_airy if args.overlay == "airy"
              else lambda x, y: kernels.kernel_meijer(spec, x, y))
        rows = [[x, y, grid.values[i][j], fn(float(x), float(y))]
                for i, x in enumerate(grid.xs) for j, y in enumerate(grid.ys)]
        _write_text(out / "kernel_overlay.csv",
                    _csv(rows, ["x", "y", "finite_n", args.overlay]))
    _write_json(out / "kernel.json", meta | grid.to_json_dict())
    if args.plot:
        from . import plots
        plots.heatmap_figure(out / "kernel.png", grid.xs, grid.ys, grid.values,
                             f"K_n grid ({grid.scaling['kind']}, n={n})")
    print(f"kernel: {grid.scaling['kind']} n={n} -> {out}/kernel.*")


# ---------------------------------------------------------------------------
# limits
# ---------------------------------------------------------------------------

def cmd_limits(args, out: Path) -> None:
    spec = kernels.LimitKernelSpec(args.theta, args.alpha,
                                   "airy" if args.kind == "airy" else "meijer")
    if args.grid:
        xs, ys = _parse_grid(args.grid)
        if ys is None:
            ys = xs
    else:
        xs = ys = (np.linspace(-3.0, 3.0, 13) if args.kind == "airy"
                   else np.linspace(0.3, 3.0, 7))
    if args.kind == "airy":
        vals = [[kernels.kernel_airy(float(x), float(y)) for y in ys] for x in xs]
        scal = {"kind": "airy"}
    else:
        vals = [[kernels.kernel_meijer(spec, float(x), float(y)) for y in ys] for x in xs]
        scal = {"kind": "meijer", "theta": args.theta, "alpha": args.alpha}
    grid = KernelGrid(xs=xs, ys=ys, values=np.array(vals), scaling=scal)
    d = limitmaps.PreMapData(args.theta)
    c1, c2 = limitmaps.tau_constants(d)
    meta = {
        "config": _config_echo(args),
        "tau_constants": {"c1": c1, "c2": c2},
        "airy_kernel_at_origin": kernels.kernel_airy(0.0, 0.0),
    }
    if args.kind == "meijer":
        p = spec.meijer_params
        deltas = []
        for x in (0.5, 1.0, 2.0):
            series = specialfn.meijer_g10(x, p)
            oracle = specialfn.mellin_barnes_oracle(x, p, "g10")
            deltas.append({"x": x, "series": series, "oracle": oracle,
                           "delta": abs(series - oracle)})
        meta["meijer_oracle_deltas"] = deltas
    if args.tau is not None:
        rows = [[x, y, kernels.kernel_tau_limits(spec, args.tau, float(x), float(y))]
                for x in xs for y in ys]
        _write_text(out / "kernel_tau.csv", _csv(rows, ["x", "y", "K_tau_limit"]))
    _write_text(out / "limits.csv", grid.to_csv())
    _write_json(out / "limits.json", meta | grid.to_json_dict())
    if args.plot:
        from . import plots
        plots.heatmap_figure(out / "limits.png", grid.xs, grid.ys, grid.values,
                             f"limit kernel ({args.kind})")
    print(f"limits: {args.kind} -> {out}/limits.*")


# ---------------------------------------------------------------------------
# chazy
# ---------------------------------------------------------------------------

def cmd_chazy(args, out: Path) -> None:
    if args.init:
        c, cp, cpp = (float(v) for v in args.init.split(","))
        states = [chazy.complete_from_c(c, cp, cpp, 0.0, args.alpha)]
    else:
        states = chazy.sample_spectral_states(args.states, seed=args.seed)
    s0 = states[0]
    traj = chazy.integrate(s0, args.tau_end)
    hi = traj.pole if traj.pole is not None else args.tau_end
    taus = np.linspace(0.0, 0.98 * hi, 201)
    rows = []
    cols = {v: [] for v in ("c", "b", "f", "a", "k", "d")}
    res = {"third_order": [], "chazy1": [], "chazy_u": [], "boussinesq": []}
    for t in taus:
        st = traj.state_at(float(t))
        r3 = chazy.residual_third_order(traj, float(t))
        r1 = chazy.residual_chazy1(traj, float(t) / 1.5)
        ru = chazy.residual_chazy_u(traj, float(t))
        rb = chazy.residual_boussinesq(traj, float(t))
        rows.append([t, st.c, st.b, st.f, st.a, st.k, st.d, r3, r1, ru, rb])
        for v in cols:
            cols[v].append(getattr(st, v))
        res["third_order"].append(r3)
        res["chazy1"].append(r1)
        res["chazy_u"].append(ru)
        res["boussinesq"].append(rb)
    _write_text(out / "chazy.csv", _csv(
        rows, ["tau", "c", "b", "f", "a", "k", "d",
               "res_third_order", "res_chazy1", "res_chazy_u", "res_boussinesq"]))
    eig = np.sort(np.linalg.eigvals(chazy.a_minus1_matrix(s0)).real)
    tgt = np.sort(chazy.spectrum_targets(s0.alpha))
    rng = np.random.default_rng(args.seed)
    meta = {
        "config": _config_echo(args),
        "initial_state": {v: getattr(s0, v) for v in ("tau", "c", "b", "f", "a", "k", "d", "alpha")},
        "pole": traj.pole,
        "eigenvalue_deviation": float(np.max(np.abs(eig - tgt))),
        "det_deviation": float(abs(np.linalg.det(chazy.a_minus1_matrix(s0))
                                   - chazy.det_target(s0.alpha))),
        "zero_curvature_residual": chazy.zero_curvature_residual(
            s0, complex(rng.uniform(0.5, 2.0), rng.uniform(0.5, 2.0))),
        "max_constraint_drift": float(max(
            max(abs(r) for r in traj.state_at(float(t)).constraint_residuals())
            for t in taus)),
    }
    if args.demo_pole:
        wild = chazy.complete_from_c(3.0, 8.0, -9.0, 0.0, 0.0)
        wild_traj = chazy.integrate(wild, 6.0)
        meta["pole_demo"] = {"initial_c": 3.0, "pole": wild_traj.pole}
    _write_json(out / "chazy.json", meta)
    if args.plot:
        from . import plots
        plots.trajectory_figure(out / "chazy.png", taus, cols, res,
                                f"Lax-pair trajectory (alpha={s0.alpha:.3g})")
    print(f"chazy: pole={traj.pole} -> {out}/chazy.*")


# ---------------------------------------------------------------------------
# selftest
# ---------------------------------------------------------------------------

def cmd_selftest(args, out: Path) -> int:
    rng = np.random.default_rng(args.seed)
    failures = 0

    def verdict(module: str, ok: bool, detail: str) -> None:
        nonlocal failures
        print(f"{module}: {'PASS' if ok else 'FAIL'} ({detail})")
        if not ok:
            failures += 1

    # specialfn: series vs oracle + Airy ODE
    worst = 0.0
    count = 0
    while count < 10:
        th = int(rng.choice([2, 3]))
        al = float(rng.uniform(-0.9, 2.0))
        if abs(al - round(al)) < 0.05:
            continue
        x = float(rng.uniform(0.01, 15.0))
        p = specialfn.MeijerParams(th, al)
        kind = "g10" if count % 2 == 0 else "gtheta0"
        s = (specialfn.meijer_g10(x, p) if kind == "g10"
             else specialfn.meijer_g_theta0(x, p))
        o = specialfn.mellin_barnes_oracle(x, p, kind)
        worst = max(worst, abs(s - o) / max(abs(o), 1e-300))
        count += 1
    ode = max(abs(specialfn._airy_second_derivative(float(x)) - x * specialfn.airy(float(x))[0])
              for x in np.linspace(-10, 10, 21))
    verdict("specialfn", worst <= 1e-9 and ode <= 1e-10,
            f"meijer-oracle {worst:.1e}, airy-ode {ode:.1e}")

    # equilibrium: critical quadratic
    P = Potential(2, 0.0, (-2.0, 1.0), 1.0)
    eq = solve_C1(P)
    mass = total_mass(eq)
    rel = eq.A3 + 1.0 - 1.5 * eq.A2
    ok = abs(eq.c - 1.0) <= 1e-9 and abs(mass - 1.0) <= 1e-8 and abs(rel) <= 1e-9
    verdict("equilibrium", ok, f"c-1 {abs(eq.c - 1):.1e}, mass-1 {abs(mass - 1):.1e}")

    # limitmaps: jumps and f'(1)
    d = limitmaps.PreMapData(2)
    eps = 1e-11
    jump = max(abs(limitmaps.g_functions(d, x + 1j * eps, 0)
                   - limitmaps.g_functions(d, x - 1j * eps, 1)) for x in (2.0, 4.0))
    h = 1e-5
    fd = (limitmaps.airy_conformal(d, 1 + h).real
          - limitmaps.airy_conformal(d, 1 - h).real) / (2 * h)
    fp = limitmaps.airy_f_prime_at_1(d)
    verdict("limitmaps", jump <= 1e-9 and abs(fd - fp) <= 1e-7,
            f"gR1 {jump:.1e}, f'(1) dev {abs(fd - fp):.1e}")

    # biorth: small family sanity
    T = moments_quadratic(P, 6, 20, default_bits(6))
    F = biorth_solve(T, 6)
    ok = all(k > 0 for k in F.kappas)
    verdict("biorth", ok, "kappas positive, residual enforced in solve")

    # kernels: Airy two-path
    from .kernels import _airy_kernel_integral
    worst = max(abs(kernels.kernel_airy(float(x), float(y))
                    - _airy_kernel_integral(float(x), float(y)))
                for x in np.linspace(-2, 2, 4) for y in np.linspace(-2, 2, 4))
    verdict("kernels", worst <= 1e-9, f"airy two-path {worst:.1e}")

    # chazy: spectral states
    worst_res = 0.0
    for st in chazy.sample_spectral_states(3, seed=args.seed):
        traj = chazy.integrate(st, 1.0)
        hi = traj.pole if traj.pole is not None else 1.0
        for t in (0.2 * hi, 0.8 * hi):
            worst_res = max(worst_res, abs(chazy.residual_third_order(traj, float(t))),
                            abs(chazy.residual_chazy_u(traj, float(t))))
    verdict("chazy", worst_res <= 1e-8, f"residuals {worst_res:.1e}")

    print(f"selftest: {'PASS' if failures == 0 else 'FAIL'} ({failures} failures)")
    return 1 if failures else 0


# ---------------------------------------------------------------------------
# argument handling
# ---------------------------------------------------------------------------

def _add_common(parser: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--config", default=d(None),
                        help="key=value config file; flags override it")
    parser.add_argument("--theta", type=int, default=d(2))
    parser.add_argument("--alpha", type=float, default=d(0.0))
    parser.add_argument("--potential", default=d("-2,1"),
                        help="comma-separated v1,v2,... of V(x) = sum v_k x^k")
    parser.add_argument("--t", type=float, default=d(1.0))
    parser.add_argument("--tau", type=float, default=d(None))
    parser.add_argument("--n", type=int, default=d(8))
    parser.add_argument("--bits", type=int, default=d(None))
    parser.add_argument("--grid", default=d(None), help="x0:x1:nx[,y0:y1:ny]")
    parser.add_argument("--out", default=d("mbedge-out"))
    parser.add_argument("--seed", type=int, default=d(0))
    parser.add_argument("--no-plot", dest="plot", action="store_false",
                        default=d(True))


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mbedge",
        description="Muttalib-Borodin edge-transition numerics",
    )
    _add_common(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _add_common(common, suppress=True)

    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("density", parents=[common],
                   help="equilibrium density over a grid")
    peq = sub.add_parser("equilibrium", parents=[common],
                         help="full equilibrium record")
    peq.add_argument("--t-sweep", default=None, help="t0:t1:num")
    pker = sub.add_parser("kernel", parents=[common],
                          help="finite-n kernel grids")
    pker.add_argument("--scaling", choices=("raw", "origin", "soft"), default="raw")
    pker.add_argument("--n-doubling", action="store_true")
    pker.add_argument("--overlay", choices=("meijer", "airy"), default=None)
    plim = sub.add_parser("limits", parents=[common],
                          help="universal limit kernels")
    plim.add_argument("--kind", choices=("meijer", "airy"), default="meijer")
    pch = sub.add_parser("chazy", parents=[common],
                         help="Lax-pair trajectories and residuals")
    pch.add_argument("--tau-end", type=float, default=1.0)
    pch.add_argument("--states", type=int, default=1)
    pch.add_argument("--init", default=None, help="c,cp,cpp at tau=0")
    pch.add_argument("--demo-pole", action="store_true")
    sub.add_parser("selftest", parents=[common], help="run the invariant suite")
    return parser


def _apply_config(parser: argparse.ArgumentParser, args, argv) -> None:
    if not args.config:
        return
    explicit = set()
    for tok in argv:
        if tok.startswith("--"):
            explicit.add(tok[2:].split("=")[0].replace("-", "_"))
    for line in Path(args.config).read_text().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, _, val = line.partition("=")
        key = key.strip().replace("-", "_")
        val = val.strip()
        if key in explicit or not hasattr(args, key):
            continue
        current = getattr(args, key)
        if isinstance(current, bool):
            setattr(args, key, val.lower() in ("1", "true", "yes"))
        elif isinstance(current, int):
            setattr(args, key, int(val))
        elif isinstance(current, float):
            setattr(args, key, float(val))
        else:
            setattr(args, key, val)


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = _build_parser()
    args = parser.parse_args(argv)
    _apply_config(parser, args, argv)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    if args.command == "density":
        cmd_density(args, out)
    elif args.command == "equilibrium":
        cmd_equilibrium(args, out)
    elif args.command == "kernel":
        cmd_kernel(args, out)
    elif args.command == "limits":
        cmd_limits(args, out)
    elif args.command == "chazy":
        cmd_chazy(args, out)
    elif args.command == "selftest":
        return cmd_selftest(args, out)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
