"""Command line: ``beamspec {modes,evolve,compare,verify}``."""
from __future__ import annotations

import argparse
import io
import json
import logging
import math
import os
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import evolution, fdoracle, kernels, modes, spectrum, string
from .config import CASE_CHOICES, ConfigError, RunConfig, load_config
from .evolution import MaterialParams
from .quadrature import BeamGeometry, QuadratureSettings
from .supports import CASE_NAMES, kernel_dimension, parse_case

log = logging.getLogger("beamspec")

FD_RTOL = 0.02
MIN_ORDER = 1.8


def _configure_logging():
    level = os.environ.get("BEAMSPEC_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), format="%(levelname)s %(name)s: %(message)s")


def format_value(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return "%.17g" % v
    return str(v)


def render_csv(header: list[str], rows) -> str:
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(format_value(row[k]) for k in header) + "\n")
    return buf.getvalue()


def _jsonable(v):
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple, np.ndarray)):
        return [_jsonable(x) for x in v]
    if isinstance(v, (np.bool_, bool)):
        return bool(v)
    if isinstance(v, np.integer):
        return int(v)
    if isinstance(v, np.floating):
        return float(v)
    return v


def render_json(doc) -> str:
    return json.dumps(_jsonable(doc), indent=2) + "\n"


def _emit(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _sidecar_path(out: str, suffix: str) -> str:
    p = Path(out)
    return str(p.with_name(p.stem + suffix))


def _material_from_args(args) -> MaterialParams | None:
    quad = [args.E, args.I, args.rho, args.area]
    if args.sigma is None and all(v is None for v in quad):
        return None
    return MaterialParams(sigma=args.sigma, E=args.E, I=args.I, rho=args.rho, area=args.area)


def _quad_from_args(args, count: int) -> QuadratureSettings | None:
    if args.quad_panels is None and args.quad_nodes is None:
        return None
    base = QuadratureSettings(panels=max(16, 4 * count))
    return QuadratureSettings(
        panels=args.quad_panels or base.panels,
        nodes_per_panel=args.quad_nodes or base.nodes_per_panel,
    )


def _basis_coefficients(mode: modes.EigenMode) -> tuple[str, list[float]]:
    """Coefficients of {e^{-κx}, e^{-κ(l-x)}, cos κx, sin κx}, or (a, b, 0, 0) for a + bx."""
    shape = mode.shape
    info = shape.coefficients()
    if info["kind"] == "general":
        return "general", list(info["exp_coeffs"])
    if info["kind"] == "polynomial":
        return "polynomial", [info["a"], info["b"], 0.0, 0.0]
    amp = info["amplitude"]
    return info["kind"], [0.0, 0.0, amp, 0.0] if info["kind"] == "cosine" else [0.0, 0.0, 0.0, amp]


def mode_rows(case: str, geom: BeamGeometry, count: int, sigma: float | None, quad=None) -> list[dict]:
    rows = []
    for m in modes.build_modes(case, geom, count, quad):
        kind, c = _basis_coefficients(m)
        row = {"n": m.index, "kappa": m.kappa, "eigenvalue": m.eigenvalue}
        if sigma is not None:
            row["omega"] = m.omega(sigma)
        row.update(
            bv_residual=modes.bv_residual(m), shape=kind, reflected=m.reflected,
            c1=c[0], c2=c[1], c3=c[2], c4=c[3],
        )
        if kind == "general":
            row["hyperbolic"] = list(m.shape.hyperbolic_coefficients())
        rows.append(row)
    return rows


def cmd_modes(args) -> int:
    if args.config:
        cfg = load_config(args.config)
        case = args.support or cfg.support
        length, count, quad = cfg.length, args.count or cfg.n_modes, cfg.quadrature
        sigma = cfg.sigma if cfg.material is not None else None
    elif args.support:
        material = _material_from_args(args)
        case, length, count = args.support, args.length, args.count or 10
        sigma = material.value if material else None
        quad = None
    else:
        raise ConfigError("modes needs --support or --config")
    quad = _quad_from_args(args, count) or quad
    rows = mode_rows(case, BeamGeometry(length), count, sigma, quad)
    if args.format == "json":
        _emit(render_json({"support": case, "length": length, "modes": rows}), args.out)
    else:
        header = ["n", "kappa", "eigenvalue"] + (["omega"] if sigma is not None else [])
        header += ["bv_residual", "shape", "reflected", "c1", "c2", "c3", "c4"]
        _emit(render_csv(header, rows), args.out)
    return 0


def _solution_from_config(cfg: RunConfig):
    quad = cfg.quadrature
    basis = modes.build_modes(cfg.support, cfg.geometry, cfg.n_modes, quad)
    return evolution.ModalSolution.from_initial(cfg.initial, basis, cfg.sigma, quad)


def cmd_evolve(args) -> int:
    if not args.config:
        raise ConfigError("evolve needs --config")
    cfg = load_config(args.config)
    if args.quad_panels or args.quad_nodes:
        cfg = replace(cfg, quadrature=_quad_from_args(args, cfg.n_modes))
    sol = _solution_from_config(cfg)
    x = np.linspace(0.0, cfg.length, cfg.points)
    times = np.linspace(cfg.t0, cfg.t1, cfg.frames) if cfg.frames > 1 else np.array([cfg.t0])
    rows, energies = [], []
    for t in times:
        fr = sol.frame(x, t)
        energies.append(sol.energy(t))
        rows.extend({"t": t, "x": xi, "u": ui, "v": vi} for xi, ui, vi in zip(fr.x, fr.u, fr.v))
    e0 = energies[0]
    summary = {
        "support": cfg.support,
        "n_modes": cfg.n_modes,
        "sigma": cfg.sigma,
        "backend": kernels.backend(),
        "truncation_diagnostic": sol.coeffs.truncation_diagnostic(),
        "energy_relative_drift": max(abs(e - e0) for e in energies) / e0 if e0 > 0 else 0.0,
        "frames": [{"t": t, "energy": e} for t, e in zip(times, energies)],
    }
    if args.format == "json":
        _emit(render_json({**summary, "records": rows}), args.out)
    else:
        _emit(render_csv(["t", "x", "u", "v"], rows), args.out)
        if args.out:
            _emit(render_json(summary), _sidecar_path(args.out, ".meta.json"))
    log.info("truncation diagnostic %.3e", summary["truncation_diagnostic"])
    return 0


def cmd_compare(args) -> int:
    if not args.config:
        raise ConfigError("compare needs --config")
    cfg = load_config(args.config)
    if cfg.wave_speed is None:
        raise ConfigError("compare needs wave_speed (the string speed c) in the config")
    sigma = cfg.sigma
    scfg = string.StringConfig(cfg.length, cfg.wave_speed)
    n_count = cfg.n_modes
    table = string.dispersion_table(scfg, sigma, n_count)
    disp = [
        {"n": r.n, "omega_wave": r.omega_wave, "c": r.c, "omega_beam": r.omega_beam,
         "c_beam": r.c_beam, "c_ratio": r.c_beam / table[0].c_beam}
        for r in table
    ]
    coeffs = string.fourier_coefficients(cfg.initial.u0, cfg.initial.v0, scfg, cfg.quadrature, n_count)
    beam = string.BeamWaves(cfg.length, sigma)
    x = np.linspace(0.0, cfg.length, cfg.points)
    times = np.linspace(cfg.t0, cfg.t1, cfg.frames) if cfg.frames > 1 else np.array([cfg.t0])
    traces = []
    for medium_name, medium in (("string", scfg), ("beam", beam)):
        for n in range(1, n_count + 1):
            for t in times:
                left, right = string.traveling_decomposition(n, coeffs, medium, x, t)
                standing = string.standing_term(n, coeffs, medium, x, t)
                res = np.abs(left + right - standing)
                traces.extend(
                    {"medium": medium_name, "n": n, "t": t, "x": xi, "left": li, "right": ri,
                     "standing": si, "residual": di}
                    for xi, li, ri, si, di in zip(x, left, right, standing, res)
                )
    if args.format == "json":
        _emit(render_json({"dispersion": disp, "traveling": traces}), args.out)
    else:
        _emit(render_csv(["n", "omega_wave", "c", "omega_beam", "c_beam", "c_ratio"], disp), args.out)
        if args.out:
            header = ["medium", "n", "t", "x", "left", "right", "standing", "residual"]
            _emit(render_csv(header, traces), _sidecar_path(args.out, "_traveling.csv"))
    return 0


def verify_case(name: str, grids: list[int], length: float = 1.0) -> dict:
    """Compare the FD oracle against the spectral construction for one case."""
    geom = BeamGeometry(length)
    expected_kernel = kernel_dimension(parse_case(name)[0])
    records = spectrum.eigenvalues(name, geom, expected_kernel + 3)
    exact = np.array([r.eigenvalue for r in records[expected_kernel:]])
    rows = []
    for m in grids:
        grid = fdoracle.StaggeredGrid(length, m)
        op = fdoracle.assemble_operator(name, grid)
        lam = fdoracle.eigenvalues(op)
        k = fdoracle.kernel_count(op, lam)
        fd = lam[k:k + 3]
        rel = np.abs(fd / exact - 1)
        adj = fdoracle.adjoint_identity_check(grid)
        rows.append({
            "case": name, "m": m, "spectral": exact.tolist(), "fd": fd.tolist(),
            "relative_error": rel.tolist(), "kernel": k, "kernel_expected": expected_kernel,
            "adjoint_deviation": adj,
            "ok": bool(k == expected_kernel and np.all(rel < FD_RTOL) and adj == 0.0),
        })
    orders = []
    for a, b in zip(rows[:-1], rows[1:]):
        ha, hb = length / (a["m"] + 1), length / (b["m"] + 1)
        orders.append(math.log(a["relative_error"][0] / b["relative_error"][0]) / math.log(ha / hb))
    ok = all(r["ok"] for r in rows) and all(o >= MIN_ORDER for o in orders)
    return {"case": name, "grids": rows, "orders": orders, "ok": ok}


def cmd_verify(args) -> int:
    grids = sorted(int(g) for g in str(args.grid).split(","))
    names = list(CASE_NAMES) if args.support in (None, "all") else [args.support]
    reports = [verify_case(n, grids, args.length) for n in names]
    if args.format == "json":
        _emit(render_json({"reports": reports, "ok": all(r["ok"] for r in reports)}), args.out)
    else:
        lines = []
        for rep in reports:
            for r in rep["grids"]:
                lines.append(
                    f"{r['case']:5s} m={r['m']:4d} spectral={r['spectral'][0]:.10g} fd={r['fd'][0]:.10g} "
                    f"rel_err={max(r['relative_error']):.3e} kernel={r['kernel']}/{r['kernel_expected']} "
                    f"adjoint={'exact' if r['adjoint_deviation'] == 0 else r['adjoint_deviation']} "
                    f"{'PASS' if r['ok'] else 'FAIL'}"
                )
            if rep["orders"]:
                lines.append(f"{rep['case']:5s} convergence orders {' '.join(f'{o:.3f}' for o in rep['orders'])}")
            lines.append(f"{rep['case']:5s} {'PASS' if rep['ok'] else 'FAIL'}")
        _emit("\n".join(lines) + "\n", args.out)
    return 0 if all(r["ok"] for r in reports) else 1


def _positive_float(text):
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return v


def _count(text):
    n = int(text)
    if not 1 <= n <= spectrum.N_MAX:
        raise argparse.ArgumentTypeError(f"count must lie in 1..{spectrum.N_MAX}")
    return n


def _support(text):
    if text.lower() != "all" and text.lower() not in CASE_CHOICES:
        raise argparse.ArgumentTypeError(f"unknown support {text!r}; choose from {', '.join(CASE_CHOICES)}")
    return text.lower()


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--support", type=_support)
    common.add_argument("--length", type=_positive_float, default=1.0)
    common.add_argument("--count", type=_count)
    common.add_argument("--sigma", type=_positive_float)
    common.add_argument("--E", type=_positive_float)
    common.add_argument("--I", type=_positive_float)
    common.add_argument("--rho", type=_positive_float)
    common.add_argument("--area", type=_positive_float)
    common.add_argument("--config")
    common.add_argument("--out")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--quad-panels", type=int)
    common.add_argument("--quad-nodes", type=int)
    common.add_argument("--grid", default="100")

    parser = argparse.ArgumentParser(prog="beamspec", description="Spectral Euler-Bernoulli beam solver")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, func, help_text in (
        ("modes", cmd_modes, "tabulate eigenvalues and mode shapes"),
        ("evolve", cmd_evolve, "evolve an initial state and write frames"),
        ("compare", cmd_compare, "string vs beam dispersion and travelling waves"),
        ("verify", cmd_verify, "cross-check against the finite-difference oracle"),
    ):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
    return parser


def main(argv=None) -> int:
    _configure_logging()
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, ValueError, OSError, spectrum.RootScanError, modes.ModeAccuracyError) as exc:
        print(f"beamspec {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
