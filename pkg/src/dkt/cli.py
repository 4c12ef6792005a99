"""Command-line front end: certify, husimi, landscape, rate, spectral, verify."""

import argparse
import ast
import logging
import math
import operator
import sys
import time
import warnings
from pathlib import Path

import numpy as np
import yaml

from . import io
from .floquet import KickParameters, build_floquet, certify_projective_period
from .observables import (
    averaged_rate,
    entropy_landscape,
    fidelity_series,
    husimi_field,
    landscape_cost,
)
from .spectral import (
    DEFAULT_EDGES,
    _reference,
    compare_to_reference,
    degeneracy_profile,
    degeneracy_summary,
    goe_levels,
    parity_sectors,
    poisson_levels,
    pooled_ratios,
    quasi_energies,
    ratio_histogram,
)
from .spin import SpinSystem, coherent_state

log = logging.getLogger("dkt")

_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
           ast.Div: operator.truediv, ast.Pow: operator.pow}


def parse_expr(text, j=None, kr=None) -> float:
    """Evaluate arithmetic such as ``"j*pi/2"`` or ``"1.002*j*pi/2"``."""
    if isinstance(text, (int, float)):
        return float(text)
    names = {"pi": math.pi}
    if j is not None:
        names["j"] = float(j)
    if kr is not None:
        names["kr"] = float(kr)

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            return float(node.value)
        if isinstance(node, ast.Name) and node.id in names:
            return names[node.id]
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            return -ev(node.operand) if isinstance(node.op, ast.USub) else ev(node.operand)
        raise ValueError(f"cannot parse {text!r}")

    return ev(ast.parse(str(text).strip(), mode="eval"))


class ConfigError(ValueError):
    pass


def resolve_params(cfg: dict) -> tuple[SpinSystem, KickParameters]:
    """Exactly one of (k, kprime) or (kr, ktheta) must be given; p defaults to pi/2."""
    if cfg.get("j") is None:
        raise ConfigError("--j is required")
    sys_ = SpinSystem(parse_expr(cfg["j"]))
    j = sys_.j
    physical = cfg.get("k") is not None or cfg.get("kprime") is not None
    transformed = cfg.get("kr") is not None or cfg.get("ktheta") is not None
    if physical == transformed:
        raise ConfigError("give exactly one of (--k, --kprime) or (--kr, --ktheta)")
    p = parse_expr(cfg.get("p") or "pi/2", j)
    if physical:
        if cfg.get("k") is None or cfg.get("kprime") is None:
            raise ConfigError("--k and --kprime must be given together")
        params = KickParameters(parse_expr(cfg["k"], j), parse_expr(cfg["kprime"], j), p)
    else:
        if cfg.get("kr") is None:
            raise ConfigError("--kr is required with --ktheta")
        kr = parse_expr(cfg["kr"], j)
        ktheta = parse_expr(cfg["ktheta"], j, kr) if cfg.get("ktheta") is not None else 0.0
        params = KickParameters.from_transformed(kr, ktheta, p)
    return sys_, params


def resolved_config(cfg: dict, sys_, params) -> dict:
    out = {k: v for k, v in cfg.items() if k != "config" and v is not None}
    out.update({"j": sys_.j, **params.as_dict()})
    return out


def _grid(cfg, default):
    g = cfg.get("grid") or default
    if isinstance(g, str):
        g = [int(x) for x in g.lower().replace("x", " ").replace(",", " ").split()]
    g = list(g)
    if len(g) == 1:
        g = g * 2
    return int(g[0]), int(g[1])


def _point(cfg):
    if cfg.get("theta0") is None or cfg.get("phi0") is None:
        raise ConfigError("--theta0 and --phi0 are required")
    return parse_expr(cfg["theta0"]), parse_expr(cfg["phi0"])


def cmd_certify(cfg) -> int:
    started = time.time()
    sys_, params = resolve_params(cfg)
    cutoff = int(cfg.get("cutoff") or 96)
    tol = float(cfg.get("tol") or 1e-9)
    cert = certify_projective_period(build_floquet(sys_, params), cutoff, tol)
    out = Path(cfg["out"])
    body = {"j": sys_.j, "kr": params.kr, "ktheta": params.ktheta, "k": params.k,
            "kprime": params.kprime, "p": params.p, **cert.as_dict()}
    path = io.write_json(out / "certificate.json", body)
    io.write_sidecar(out / "certificate.meta.json", resolved_config(cfg, sys_, params), [path], started)
    log.info("period=%s residual=%.3e", cert.period, cert.residual)
    return 0


def cmd_husimi(cfg) -> int:
    started = time.time()
    sys_, params = resolve_params(cfg)
    U = build_floquet(sys_, params)
    theta0, phi0 = _point(cfg)
    steps = int(cfg.get("steps") if cfg.get("steps") is not None else 8)
    grid = _grid(cfg, (100, 100))
    out = Path(cfg["out"])
    psi = coherent_state(sys_, (theta0, phi0))
    paths = []
    for n in range(steps + 1):
        paths.append(io.write_field_csv(out / f"husimi_n{n:04d}.csv", husimi_field(psi, sys_, grid)))
        psi = U.matrix @ psi
    io.write_sidecar(out / "husimi.meta.json", resolved_config(cfg, sys_, params), paths, started,
                     grid=list(grid), steps=steps)
    return 0


def cmd_landscape(cfg) -> int:
    started = time.time()
    sys_, params = resolve_params(cfg)
    grid = _grid(cfg, (64, 64))
    steps = int(cfg.get("steps") or 500)
    budget = float(cfg.get("budget") or 1e11)
    cost = landscape_cost(sys_.d, grid[0] * grid[1], steps)
    if cost > budget:
        warnings.warn(f"landscape cost ~{cost:.2e} flops exceeds budget {budget:.2e}", RuntimeWarning)
    field = entropy_landscape(build_floquet(sys_, params), grid, steps, int(cfg.get("workers") or 1))
    out = Path(cfg["out"])
    path = io.write_field_csv(out / "landscape.csv", field)
    io.write_sidecar(out / "landscape.meta.json", resolved_config(cfg, sys_, params), [path], started,
                     grid=list(grid), steps=steps, estimated_flops=cost)
    return 0


def cmd_rate(cfg) -> int:
    started = time.time()
    sys_, params = resolve_params(cfg)
    theta0, phi0 = _point(cfg)
    steps = int(cfg.get("steps") or 1000)
    out = Path(cfg["out"])
    npts = cfg.get("sweep_points")
    if npts:
        j = sys_.j
        lo = parse_expr(cfg.get("sweep_lo") or 0, j, params.kr)
        hi = cfg.get("sweep_hi")
        hi = params.kr if hi is None else parse_expr(hi, j, params.kr)
        rows = []
        for kt in np.linspace(lo, hi, int(npts)):
            U = build_floquet(sys_, KickParameters.from_transformed(params.kr, kt, params.p))
            rows.append((kt, averaged_rate(U, (theta0, phi0), steps)))
        path = io.write_csv(out / "rate_sweep.csv", ["ktheta", "mean_rate"], rows)
    else:
        series = fidelity_series(build_floquet(sys_, params), (theta0, phi0), steps)
        path = io.write_csv(out / "rate_series.csv", ["n", "Z", "R"], series.as_rows())
    io.write_sidecar(out / (path.stem + ".meta.json"), resolved_config(cfg, sys_, params), [path], started)
    return 0


def spectral_summary(U, orders, seed, goe_members=200, goe_dim=400, poisson_members=200,
                     poisson_size=1000, sectors="split", edges=DEFAULT_EDGES, deg_tol=1e-8):
    """Histograms, references, TV distances and mean ratios for each order."""
    spectra = parity_sectors(U) if sectors == "split" else [quasi_energies(U)]
    pois = poisson_levels(poisson_members, poisson_size, seed)
    goe = goe_levels(goe_members, goe_dim, seed + 1)
    per_order = {}
    for k in orders:
        try:
            sample = ratio_histogram(pooled_ratios(spectra, k), edges)
        except ValueError as exc:
            per_order[k] = {"error": str(exc)}
            continue
        P = _reference(pois, k, edges, ensemble="poisson")
        G = _reference(goe, k, edges, ensemble="goe")
        per_order[k] = {
            "sample": sample, "poisson": P, "goe": G,
            "tv_poisson": compare_to_reference(sample, P),
            "tv_goe": compare_to_reference(sample, G),
        }
    profile = degeneracy_profile(quasi_energies(U), deg_tol)
    return per_order, profile


def cmd_spectral(cfg) -> int:
    started = time.time()
    sys_, params = resolve_params(cfg)
    seed = cfg.get("seed")
    if seed is None:
        raise ConfigError("--seed is required for sampled reference ensembles")
    seed = int(seed)
    orders = cfg.get("orders") or "1,2,3,4"
    orders = [int(x) for x in str(orders).replace(" ", "").split(",")] if not isinstance(orders, list) else orders
    if not set(orders) <= {1, 2, 3, 4}:
        raise ConfigError("orders must be drawn from 1..4")
    U = build_floquet(sys_, params)
    per_order, profile = spectral_summary(
        U, orders, seed,
        int(cfg.get("goe_members") or 200), int(cfg.get("goe_dim") or 400),
        int(cfg.get("poisson_members") or 200), int(cfg.get("poisson_size") or 1000),
        cfg.get("sectors") or "split",
    )
    out = Path(cfg["out"])
    paths, summary = [], {"orders": {}}
    for k, res in per_order.items():
        if "error" in res:
            summary["orders"][str(k)] = res
            continue
        for name in ("sample", "poisson", "goe"):
            paths.append(io.write_histogram_csv(out / f"{name}_k{k}.csv", res[name]))
        summary["orders"][str(k)] = {
            "mean_ratio": res["sample"].mean_ratio,
            "poisson_mean_ratio": res["poisson"].mean_ratio,
            "goe_mean_ratio": res["goe"].mean_ratio,
            "tv_poisson": res["tv_poisson"],
            "tv_goe": res["tv_goe"],
            "sample_count": res["sample"].count,
            "dropped": res["sample"].dropped,
            "closer_to": "poisson" if res["tv_poisson"] < res["tv_goe"] else "goe",
        }
    paths.append(io.write_csv(out / "degeneracy.csv", ["phase", "multiplicity"], profile))
    nclusters, frac24 = degeneracy_summary(profile, 24)
    summary["degeneracy"] = {"clusters": nclusters, "fraction_in_top24": frac24}
    paths.append(io.write_json(out / "spectral_summary.json", summary))
    io.write_sidecar(out / "spectral.meta.json", resolved_config(cfg, sys_, params), paths, started)
    return 0


def cmd_verify(cfg) -> int:
    from .qubits import verification_report

    started = time.time()
    rows = verification_report(int(cfg.get("max_n") or 6), cfg.get("closed_form") or "both",
                               float(cfg.get("fault") or 0.0), float(cfg.get("tol") or 1e-11))
    ok = all(r["pass"] for r in rows)
    out = Path(cfg["out"])
    path = io.write_json(out / "verification.json", {"all_pass": ok, "checks": rows})
    cfg_out = {k: v for k, v in cfg.items() if k != "config" and v is not None}
    io.write_sidecar(out / "verification.meta.json", cfg_out, [path], started)
    for r in rows:
        if not r["pass"]:
            log.warning("FAIL %s n=%s residual=%.3e", r["identity"], r["n"], r["residual"])
    return 0 if ok else 1


COMMANDS = {"certify": cmd_certify, "husimi": cmd_husimi, "landscape": cmd_landscape,
            "rate": cmd_rate, "spectral": cmd_spectral, "verify": cmd_verify}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="YAML file of key: value settings; flags override it")
    common.add_argument("--out", help="output directory")
    common.add_argument("--j")
    common.add_argument("--k")
    common.add_argument("--kprime")
    common.add_argument("--kr", help="accepts expressions such as j*pi/2")
    common.add_argument("--ktheta", help="may reference kr, e.g. -kr")
    common.add_argument("--p", help="precession angle (default pi/2)")
    common.add_argument("--theta0")
    common.add_argument("--phi0")
    common.add_argument("--grid", help="e.g. 64x64")
    common.add_argument("--steps", type=int)
    common.add_argument("--cutoff", type=int)
    common.add_argument("--tol", type=float)
    common.add_argument("--orders", help="comma-separated subset of 1,2,3,4")
    common.add_argument("--seed", type=int)
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="dkt", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("certify", parents=[common])
    sub.add_parser("husimi", parents=[common])
    p = sub.add_parser("landscape", parents=[common])
    p.add_argument("--workers", type=int)
    p.add_argument("--budget", type=float, help="flop budget before a cost warning")
    p = sub.add_parser("rate", parents=[common])
    p.add_argument("--sweep-points", type=int, help="sweep ktheta instead of writing a time series")
    p.add_argument("--sweep-lo")
    p.add_argument("--sweep-hi", help="default kr")
    p = sub.add_parser("spectral", parents=[common])
    p.add_argument("--sectors", choices=["split", "mixed"])
    p.add_argument("--goe-members", type=int)
    p.add_argument("--goe-dim", type=int)
    p.add_argument("--poisson-members", type=int)
    p.add_argument("--poisson-size", type=int)
    p = sub.add_parser("verify", parents=[common])
    p.add_argument("--max-n", type=int)
    p.add_argument("--fault", type=float, help="perturb the special angles to demonstrate sensitivity")
    p.add_argument("--closed-form", choices=["printed", "corrected", "both"])
    return parser


def load_config(args) -> dict:
    cfg = {}
    if args.config:
        loaded = yaml.safe_load(Path(args.config).read_text()) or {}
        cfg.update({str(k).replace("-", "_"): v for k, v in loaded.items()})
    for k, v in vars(args).items():
        if v is not None and k != "config":
            cfg[k] = v
    cfg["config"] = args.config
    return cfg


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    cfg = load_config(args)
    cfg.pop("verbose", None)
    if not cfg.get("out"):
        print("error: --out is required", file=sys.stderr)
        return 2
    try:
        return COMMANDS[cfg.pop("command")](cfg)
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
