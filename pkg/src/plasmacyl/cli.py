"""Command-line interface: CSV tables of f0, f1 and energies, and property suites.

Examples
--------
    plasmacyl f0 --model dd-te --omega-l 1e-3:1e3:61
    plasmacyl f1 --model ed-tm --omega-l 1e-2:1e2:9 --lambda 10
    plasmacyl energy --model dd-tm --omega-l 50 --radius 1 --gap 0.1
    plasmacyl oracle --model dd-te --omega-l 50 --radius 1 --gap 0.2 --threads 4
    plasmacyl verify --suite all

Exit status is 0 on success, 1 if any computation fails to converge (or a
verify check fails) and 2 for configuration errors.  Nothing is written
when a computation fails.
"""

from __future__ import annotations

import argparse
import io
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import __version__
from .beyond import F1, energy, f1_series
from .models import MODELS, Geometry, PlasmaParams, get_model
from .modesum import TruncationSpec, energy_oracle
from .pfa import f0, hard_energy
from .specfun import QuadSpec
from .verify import SUITES, run_suite

__all__ = ["ConfigError", "RunConfig", "build_parser", "main", "parse_grid", "run_command"]

COMMANDS = ("f0", "f1", "energy", "oracle", "verify")


class ConfigError(ValueError):
    """Invalid command-line configuration (exit status 2)."""


class NotConvergedError(RuntimeError):
    """A computation did not reach its tolerance (exit status 1)."""


@dataclass(frozen=True)
class RunConfig:
    command: str
    model: str = "dd-te"
    omega_l: tuple = ()
    lam: float | None = None
    radius: float = 1.0
    gap: float | None = None
    omega: float | None = None
    plasma_freq: float | None = None
    max_m: int | None = None
    tol: float | None = None
    threads: int = 1
    out: str | None = None
    suite: str = "all"


def parse_grid(text: str) -> np.ndarray:
    """``start:stop:count`` as a log-spaced grid, or a single value."""
    parts = text.split(":")
    try:
        if len(parts) == 1:
            vals = np.array([float(parts[0])])
        elif len(parts) == 3:
            start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
            if count < 1:
                raise ConfigError("grid count must be at least 1")
            if not (start > 0 and stop > 0):
                raise ConfigError("log grid bounds must be positive")
            vals = np.geomspace(start, stop, count) if count > 1 else np.array([start])
        else:
            raise ConfigError(f"grid must be 'value' or 'start:stop:count', got {text!r}")
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"cannot parse grid {text!r}") from None
    if not np.all(np.isfinite(vals)) or np.any(vals < 0):
        raise ConfigError("grid values must be finite and nonnegative")
    return vals


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="plasmacyl", description=__doc__.split("\n\n")[0])
    p.add_argument("--version", action="version", version=f"plasmacyl {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS[:-1]:
        s = sub.add_parser(name)
        s.add_argument("--model", default="dd-te", choices=sorted(MODELS))
        s.add_argument("--omega-l", help="Omega L: value or log grid start:stop:count")
        s.add_argument("--lambda", dest="lam", type=float, help="omega_p = sqrt(Omega lambda / L)")
        s.add_argument("--radius", type=float, default=1.0, help="cylinder radius R")
        s.add_argument("--gap", type=float, help="gap L")
        s.add_argument("--omega", type=float, help="dimensional Omega (needs --gap)")
        s.add_argument("--plasma-freq", type=float, help="dimensional omega_p (needs --gap)")
        s.add_argument("--max-m", type=int, help="angular momentum cap for the oracle")
        s.add_argument("--tol", type=float, help="relative quadrature tolerance")
        s.add_argument("--threads", type=int, default=1)
        s.add_argument("--out", help="output CSV path (default stdout)")
    s = sub.add_parser("verify")
    s.add_argument("--suite", default="all", choices=sorted(SUITES))
    s.add_argument("--out", help="write the report here as well")
    return p


def _config(ns: argparse.Namespace) -> RunConfig:
    if ns.command == "verify":
        return RunConfig("verify", suite=ns.suite, out=ns.out)
    for name in ("radius", "gap", "omega", "plasma_freq", "tol", "lam"):
        v = getattr(ns, name)
        if v is not None and not (math.isfinite(v) and v > 0):
            raise ConfigError(f"--{name.replace('_', '-')} must be positive")
    if ns.threads < 1:
        raise ConfigError("--threads must be at least 1")
    if ns.max_m is not None and ns.max_m < 1:
        raise ConfigError("--max-m must be positive")
    if ns.omega_l is not None and ns.omega is not None:
        raise ConfigError("give either --omega-l or --omega, not both")
    if ns.lam is not None and ns.plasma_freq is not None:
        raise ConfigError("give either --lambda or --plasma-freq, not both")
    if (ns.omega is not None or ns.plasma_freq is not None) and ns.gap is None:
        raise ConfigError("--omega and --plasma-freq need --gap")
    if ns.omega_l is not None:
        grid = parse_grid(ns.omega_l)
    elif ns.omega is not None:
        grid = np.array([ns.omega * ns.gap])
    else:
        raise ConfigError("one of --omega-l or --omega is required")
    pair = get_model(ns.model)
    if pair.dielectric and ns.lam is None and ns.plasma_freq is None:
        raise ConfigError(f"model {pair.label} needs --lambda or --plasma-freq")
    if ns.command in ("energy", "oracle") and ns.gap is None:
        raise ConfigError(f"{ns.command} needs --gap")
    return RunConfig(ns.command, ns.model, tuple(float(x) for x in grid), ns.lam, ns.radius, ns.gap,
                     ns.omega, ns.plasma_freq, ns.max_m, ns.tol, ns.threads, ns.out)


def _params(cfg: RunConfig, Omega_L: float) -> PlasmaParams:
    if cfg.lam is not None:
        omega_L = math.sqrt(Omega_L * cfg.lam)
    elif cfg.plasma_freq is not None:
        omega_L = cfg.plasma_freq * cfg.gap
    else:
        omega_L = 0.0
    return PlasmaParams(Omega_L, omega_L)


def _spec(cfg: RunConfig, default: QuadSpec) -> QuadSpec:
    return default if cfg.tol is None else default.replace(rel_tol=cfg.tol)


def _row(cfg: RunConfig, Omega_L: float) -> list[float]:
    params = _params(cfg, Omega_L)
    base = [params.Omega_L, params.omega_L]
    if cfg.command == "f0":
        return base + list(f0(cfg.model, params, _spec(cfg, QuadSpec())))
    if cfg.command == "f1":
        return base + list(f1_series(cfg.model, params, _spec(cfg, QuadSpec())))
    geom = Geometry(cfg.radius, cfg.gap)
    base += [geom.R, geom.L, geom.epsilon]
    if cfg.command == "energy":
        b = energy(cfg.model, geom, params, _spec(cfg, QuadSpec()))
        eh = abs(hard_energy(geom))
        f1h = F1.f1h(get_model(cfg.model).mode)
        e_pfa_err = eh * b.err_f0
        e_tot_err = e_pfa_err + eh * geom.epsilon * abs(f1h) * b.err_f1
        return base + [b.f0, b.err_f0, b.f1, b.err_f1, b.E_pfa, e_pfa_err, b.E_total, e_tot_err]
    trunc = TruncationSpec() if cfg.max_m is None else TruncationSpec(m_limit=cfg.max_m)
    E, diag = energy_oracle(cfg.model, geom, params, trunc, _spec(cfg, QuadSpec(rel_tol=1e-7, t_max=25.0)))
    if not diag.converged:
        raise NotConvergedError(f"oracle did not converge at Omega_L = {Omega_L:g} "
                                f"(quad err {diag.quad_error:.3g}, m change {diag.m_convergence:.3g})")
    err = diag.quad_error + trunc.convergence_tol * abs(E)
    return base + [E, err, float(diag.m_max_used)]


_COLUMNS = {
    "f0": ["omega_l", "omega_p_l", "f0", "f0_err"],
    "f1": ["omega_l", "omega_p_l", "f1", "f1_err"],
    "energy": ["omega_l", "omega_p_l", "radius", "gap", "epsilon", "f0", "f0_err", "f1", "f1_err",
               "e_pfa", "e_pfa_err", "e_total", "e_total_err"],
    "oracle": ["omega_l", "omega_p_l", "radius", "gap", "epsilon", "e_oracle", "e_oracle_err", "m_max_used"],
}


def _format(v: float) -> str:
    return f"{v:.16e}"


def _csv(cfg: RunConfig, rows: list[list[float]]) -> str:
    buf = io.StringIO(newline="")
    buf.write(f"# plasmacyl {__version__}\n")
    buf.write(f"# command: {cfg.command}\n")
    for key in ("model", "lam", "radius", "gap", "omega", "plasma_freq", "max_m", "tol"):
        v = getattr(cfg, key)
        if v is not None:
            buf.write(f"# {'lambda' if key == 'lam' else key}: {v!r}\n")
    buf.write(f"# omega_l grid: {len(cfg.omega_l)} points\n")
    buf.write(",".join(_COLUMNS[cfg.command]) + "\n")
    for r in rows:
        buf.write(",".join(_format(v) for v in r) + "\n")
    return buf.getvalue()


def _emit(text: str, path: str | None):
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def run_command(cfg: RunConfig) -> int:
    """Execute a configuration; returns the exit status."""
    if cfg.command == "verify":
        checks = run_suite(cfg.suite)
        lines = [c.line() + f" [{c.seconds:.1f} s]" for c in checks]
        ok = all(c.passed for c in checks)
        lines.append(f"{sum(c.passed for c in checks)}/{len(checks)} checks passed")
        text = "\n".join(lines) + "\n"
        sys.stdout.write(text)
        if cfg.out:
            _emit(text, cfg.out)
        return 0 if ok else 1

    def work(x):
        return _row(cfg, x)

    try:
        if cfg.threads > 1:
            with ThreadPoolExecutor(cfg.threads) as pool:
                rows = list(pool.map(work, cfg.omega_l))  # map keeps input order
        else:
            rows = [work(x) for x in cfg.omega_l]
    except RuntimeError as exc:
        sys.stderr.write(f"plasmacyl: {exc}\n")
        return 1
    except ValueError as exc:
        sys.stderr.write(f"plasmacyl: configuration error: {exc}\n")
        return 2
    _emit(_csv(cfg, rows), cfg.out)
    return 0


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    ns = parser.parse_args(argv)  # exits with status 2 on usage errors
    try:
        cfg = _config(ns)
    except ConfigError as exc:
        parser.exit(2, f"plasmacyl: configuration error: {exc}\n")
    return run_command(cfg)


if __name__ == "__main__":
    sys.exit(main())
