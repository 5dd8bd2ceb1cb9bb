"""Command-line surface: reproducible table and time-series emission.

Subcommands map one-to-one onto the model's standard tables:
eigs (spectrum), coeffs (interaction coefficients + tensor), thresholds
(decoupled Hill scan or coupled probe scan), tnb-report (physical parameters
and meter conversions), simulate (Hill growth runs and coupled scenarios).
Exit codes: 0 success, 2 configuration error, 3 numerical failure, 4 partial
scan (some thresholds exceeded the cap; results still emitted).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from multiprocessing import get_context

import numpy as np

from . import coupled as cp
from . import hill
from .coefficients import ModalCoefficients, compute_galerkin_tensor
from .config import RunConfig, load_config
from .errors import ConfigError, PlateFlutterError
from .modes import ModeBasis
from .spectrum import enumerate_spectrum
from .tnb import TnbParameters, displacement_table_csv, sup_norm_csv

EXIT_OK, EXIT_CONFIG, EXIT_NUMERICAL, EXIT_PARTIAL = 0, 2, 3, 4


def _write(path: str, text: str, config_hash: str) -> None:
    with open(path, "w") as fh:
        fh.write(f"# config_hash={config_hash}\n")
        fh.write(text)


def _write_json_records(path: str, results, config_hash: str) -> None:
    # one object per result; the hash travels inside each record so the file
    # stays plain JSONL
    with open(path, "w") as fh:
        for r in results:
            rec = json.loads(r.summary_json())
            rec["config_hash"] = config_hash
            fh.write(json.dumps(rec, sort_keys=True) + "\n")


def _outpath(cfg: RunConfig, name: str) -> str:
    os.makedirs(cfg.output.directory, exist_ok=True)
    return os.path.join(cfg.output.directory, name)


def cmd_eigs(cfg: RunConfig, n: int) -> int:
    pairs = enumerate_spectrum(n, cfg.plate)
    lines = ["rank,kind,m,k,sqrt_lambda"]
    for rank, e in enumerate(pairs, start=1):
        sym = "mu" if e.kind == "longitudinal" else "nu"
        lines.append(f"{rank},{sym},{e.m},{e.k},{e.sqrt_lam:.17g}")
    _write(_outpath(cfg, "eigs.csv"), "\n".join(lines) + "\n", cfg.config_hash())
    return EXIT_OK


def cmd_coeffs(cfg: RunConfig, with_tensor: bool) -> int:
    basis = ModeBasis.build(cfg.plate)
    coeffs = ModalCoefficients.from_basis(basis, cfg.resolved_gamma())
    h = cfg.config_hash()
    _write(_outpath(cfg, "coefficients.csv"), coeffs.to_csv(), h)
    abar_lines = ["l,abar_l"] + [f"{l + 1},{coeffs.a_bar[l]:.17g}" for l in range(2)]
    _write(_outpath(cfg, "abar.csv"), "\n".join(abar_lines) + "\n", h)
    if with_tensor:
        tensor = compute_galerkin_tensor(basis)
        _write(_outpath(cfg, "tensor.txt"), tensor.to_text(), h)
    return EXIT_OK


def _decoupled_worker(args):
    k, l, coeffs, scan_kw = args
    return hill.threshold_scan(k, l, coeffs, **scan_kw)


def _coupled_worker(args):
    k, l, system, scan_kw = args
    return cp.coupled_threshold_scan(k, l, system, **scan_kw)


def _parallel_map(worker, jobs, workers: int):
    if workers <= 1 or len(jobs) <= 1:
        return [worker(j) for j in jobs]
    with get_context("spawn").Pool(min(workers, len(jobs))) as pool:
        return pool.map(worker, jobs)


def cmd_thresholds(cfg: RunConfig, mode: str, ks: list[int], ls: list[int],
                   workers: int) -> int:
    basis = ModeBasis.build(cfg.plate)
    gamma = cfg.resolved_gamma()
    h = cfg.config_hash()
    s, integ = cfg.scan, cfg.integrator
    if mode == "decoupled":
        coeffs = ModalCoefficients.from_basis(basis, gamma)
        kw = dict(grid_step=s.grid_step, width_filter=s.width_filter,
                  a_max=s.a_max, rtol=integ.rtol, atol=integ.atol)
        jobs = [(k, l, coeffs, kw) for k in ks for l in ls]
        results = _parallel_map(_decoupled_worker, jobs, workers)
        rows = ["k,l,gamma,A_crit,E_crit,exceeded"]
        for r in results:
            a = "" if r.exceeded else f"{r.A_crit:.17g}"
            rows.append(f"{r.k},{r.l},{gamma:.17g},{a},{r.E_crit:.17g},{int(r.exceeded)}")
        _write(_outpath(cfg, "thresholds_decoupled.csv"), "\n".join(rows) + "\n", h)
        _write_json_records(_outpath(cfg, "thresholds_decoupled.json"), results, h)
        for r in results:
            _write(_outpath(cfg, f"scan_k{r.k}_l{r.l}.csv"), r.scan_csv(), h)
    else:
        system = cp.CoupledSystem.build(basis, gamma)
        kw = dict(grid_step=s.grid_step, coarse_step=s.coarse_step,
                  a_max=s.a_max_coupled, delta=s.delta, horizon=s.horizon,
                  growth_ratio=s.growth_ratio, rtol=integ.rtol, atol=integ.atol)
        slots = [14 + l for l in ls]
        jobs = [(k, slot, system, kw) for k in ks for slot in slots]
        results = _parallel_map(_coupled_worker, jobs, workers)
        rows = ["k,l,gamma,A_crit,exceeded"]
        for r in results:
            a = "" if r.exceeded else f"{r.A_crit:.17g}"
            rows.append(f"{r.k},{r.l - 14},{gamma:.17g},{a},{int(r.exceeded)}")
        _write(_outpath(cfg, "thresholds_coupled.csv"), "\n".join(rows) + "\n", h)
        _write_json_records(_outpath(cfg, "thresholds_coupled.json"), results, h)
    return EXIT_PARTIAL if any(r.exceeded for r in results) else EXIT_OK


def cmd_tnb_report(cfg: RunConfig, thresholds_json: str | None) -> int:
    basis = ModeBasis.build(cfg.plate)
    params = TnbParameters(poisson=cfg.plate.poisson, ell_hat=cfg.plate.half_width)
    h = cfg.config_hash()
    with open(_outpath(cfg, "tnb_parameters.json"), "w") as fh:
        fh.write(params.report_json() + "\n")
    _write(_outpath(cfg, "sup_norms.csv"), sup_norm_csv(basis), h)
    if thresholds_json:
        amps: dict[int, dict[int, float | None]] = {1: {}, 2: {}}
        with open(thresholds_json) as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                rec = json.loads(line)
                a = rec["A_crit"]
                value = None if isinstance(a, str) else float(a)
                l = rec["l"] if rec["l"] in (1, 2) else rec["l"] - 14
                amps[l][rec["k"]] = value
        text = displacement_table_csv(amps[1], amps[2], basis, params)
        _write(_outpath(cfg, "displacement_m.csv"), text, h)
    return EXIT_OK


def cmd_simulate(cfg: RunConfig, scenario: str, k: int, l: int,
                 amplitudes: list[float], t_end: float) -> int:
    basis = ModeBasis.build(cfg.plate)
    gamma = cfg.resolved_gamma()
    h = cfg.config_hash()
    integ = cfg.integrator
    if scenario == "hill":
        coeffs = ModalCoefficients.from_basis(basis, gamma)
        for A in amplitudes:
            p = hill.HillProblem.build(k, l, coeffs, A)
            peak, (t, xi) = hill.growth_simulation(p, t_end, rtol=integ.rtol,
                                                   atol=integ.atol)
            lines = ["t,xi"] + [f"{ti:.17g},{xi_i:.17g}" for ti, xi_i in zip(t, xi)]
            name = f"hill_k{k}_l{l}_A{A:g}.csv"
            _write(_outpath(cfg, name), "\n".join(lines) + "\n", h)
            print(f"{name}: max|xi| = {peak:.6g}")
        return EXIT_OK
    system = cp.CoupledSystem.build(basis, gamma)
    if scenario == "coupled":
        for A in amplitudes:
            phi0 = np.zeros(system.size)
            phi0[k - 1] = A
            state = cp.CoupledState(phi0, np.zeros(system.size))
            t, phi, _ = cp.integrate(state, t_end, system,
                                     rtol=integ.rtol, atol=integ.atol)
            name = f"coupled_k{k}_A{A:g}.csv"
            _write(_outpath(cfg, name), cp.trajectory_csv(t, phi), h)
        return EXIT_OK
    if scenario == "probe":
        for A in amplitudes:
            pcfg = cp.ProbeConfig(k, 14 + l, A, cfg.scan.delta, t_end,
                                  cfg.scan.growth_ratio)
            res = cp.probe(pcfg, system, rtol=integ.rtol, atol=integ.atol,
                           keep_series=True)
            t, tors = res.series
            lines = ["t,phi_l"] + [f"{ti:.17g},{x:.17g}" for ti, x in zip(t, tors)]
            name = f"probe_k{k}_l{14 + l}_A{A:g}.csv"
            _write(_outpath(cfg, name), "\n".join(lines) + "\n", h)
            print(res.summary_json())
        return EXIT_OK
    raise ConfigError(f"unknown scenario {scenario!r}")


def build_parser() -> argparse.ArgumentParser:
    # shared flags live in a parent parser with SUPPRESS defaults so they can
    # be given before or after the subcommand without clobbering each other
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=argparse.SUPPRESS,
                        help="configuration file (INI sections)")
    common.add_argument("--set", dest="assignments", action="append",
                        default=argparse.SUPPRESS, metavar="SECTION.KEY=VALUE",
                        help="override one config key")
    common.add_argument("--out", default=argparse.SUPPRESS,
                        help="output directory (overrides output.directory)")
    common.add_argument("--print-config", action="store_true",
                        default=argparse.SUPPRESS,
                        help="print the resolved configuration and exit")
    ap = argparse.ArgumentParser(
        prog="plateflutter", parents=[common],
        description="Plate mode spectrum and torsional flutter thresholds "
                    "of a suspension-bridge deck model.")
    sub = ap.add_subparsers(dest="command")

    p = sub.add_parser("eigs", parents=[common], help="ordered eigenvalue table")
    p.add_argument("-n", type=int, default=16)

    p = sub.add_parser("coeffs", parents=[common], help="interaction coefficient tables")
    p.add_argument("--tensor", action="store_true", help="also export the quartic tensor")

    p = sub.add_parser("thresholds", parents=[common], help="instability threshold scans")
    p.add_argument("--mode", choices=("decoupled", "coupled"), default="decoupled")
    p.add_argument("--k", type=int, nargs="*", default=list(range(1, 15)))
    p.add_argument("--l", type=int, nargs="*", default=[1, 2])
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("tnb-report", parents=[common],
                       help="physical parameters and meter conversions")
    p.add_argument("--thresholds-json", help="coupled thresholds JSON to convert to meters")

    p = sub.add_parser("simulate", parents=[common], help="time-series emission for plots")
    p.add_argument("--scenario", choices=("hill", "coupled", "probe"), required=True)
    p.add_argument("--k", type=int, default=14)
    p.add_argument("--l", type=int, default=1, help="torsional index 1 or 2")
    p.add_argument("--amplitude", type=float, nargs="+", required=True)
    p.add_argument("--t-end", type=float, default=200.0)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    ns = ap.parse_args(argv)
    try:
        assignments = list(getattr(ns, "assignments", []))
        out = getattr(ns, "out", None)
        if out:
            assignments.append(f"output.directory={out}")
        cfg = load_config(getattr(ns, "config", None), assignments)
        if getattr(ns, "print_config", False):
            sys.stdout.write(cfg.canonical_text())
            sys.stdout.write(f"# hash {cfg.config_hash()}\n")
            return EXIT_OK
        if ns.command is None:
            ap.print_help()
            return EXIT_CONFIG
        if ns.command == "eigs":
            return cmd_eigs(cfg, ns.n)
        if ns.command == "coeffs":
            return cmd_coeffs(cfg, ns.tensor)
        if ns.command == "thresholds":
            return cmd_thresholds(cfg, ns.mode, ns.k, ns.l, ns.workers)
        if ns.command == "tnb-report":
            return cmd_tnb_report(cfg, ns.thresholds_json)
        if ns.command == "simulate":
            return cmd_simulate(cfg, ns.scenario, ns.k, ns.l, ns.amplitude, ns.t_end)
        raise ConfigError(f"unknown command {ns.command!r}")
    except (ConfigError, ValueError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except PlateFlutterError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
