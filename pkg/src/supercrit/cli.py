"""
Command-line front end.

    supercrit classify --q 1.0 --kappa -1
    supercrit spectrum --q 0.5 --kappa -1 --n-max 10
    supercrit density --q 0.95 --kappa -1 --xi 0.7 --e-min 1.01 --e-max 5
    supercrit verify orthonormality --q 0.95 --kappa -1 --xi 0.7

Energies on the command line are in units of m; --mass sets m, and the
reported energies are then in the same absolute units as the mass.
Exit status: 0 ok, 2 invalid configuration, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from . import __version__
from . import spectral as sp
from . import verify as vf
from .extensions import (ExtensionParam, Region, check_extension, classify,
                         count_extension_parameters, default_extension)
from .radial import ChannelParams

SCHEMA = "supercrit/1"
EXIT_CONFIG = 2
EXIT_NUMERIC = 3


class ConfigError(ValueError):
    pass


@dataclass
class JobConfig:
    command: str
    q: float | None = None
    kappa: int | None = None
    m: float = 1.0
    extension: str | None = None
    window: tuple[float, float] | None = None
    n_max: int = 10
    e_min: float = 1.01
    e_max: float = 5.0
    n_points: int = 50
    energy: float | None = None
    r_min: float = 0.01
    r_max: float = 10.0
    n_r: int = 50
    r: float = 1.0
    rp: float = 2.0
    w: tuple[float, float] = (0.3, 0.4)
    suite: str | None = None
    n_states: int = 8
    center: float = 3.0
    width: float = 0.4
    energies: tuple[float, ...] = (1.2, 1.5, 2.0, 3.0, 5.0, -1.2, -1.5, -2.0, -3.0, -5.0)
    fmt: str = "json"
    output: str | None = None
    tolerances: dict = field(default_factory=lambda: {
        "threshold_guard": sp.THRESHOLD_GUARD, "residue_step": sp.RESIDUE_STEP})

    def params(self) -> ChannelParams:
        if self.q is None or self.kappa is None:
            raise ConfigError(f"{self.command} needs --q and --kappa")
        return ChannelParams(self.q, self.kappa, self.m)

    def ext(self) -> ExtensionParam:
        p = self.params()
        if self.extension is None:
            return default_extension(p)
        kind, _, val = self.extension.partition("=")
        e = ExtensionParam.theta(float(val)) if kind == "theta" else ExtensionParam.xi(val)
        check_extension(p, e)
        return e

    def validate(self):
        if self.fmt not in {"json", "csv"}:
            raise ConfigError(f"unknown format {self.fmt!r}")
        if self.command != "count-extensions":
            self.params()
        if self.command not in {"classify", "count-extensions"}:
            self.ext()
        if self.n_max < 0 or self.n_points < 1 or self.n_r < 1 or self.n_states < 2:
            raise ConfigError("grid sizes must be positive")
        if not self.e_min < self.e_max or not self.r_min < self.r_max:
            raise ConfigError("ranges must be increasing")
        if self.window is not None and not self.window[0] < self.window[1]:
            raise ConfigError("energy window must be increasing")


def thread_count() -> int:
    raw = os.environ.get("SUPERCRIT_THREADS", "1")
    try:
        n = int(raw)
    except ValueError as exc:
        raise ConfigError(f"SUPERCRIT_THREADS must be an integer, got {raw!r}") from exc
    if n < 1:
        raise ConfigError("SUPERCRIT_THREADS must be at least 1")
    return n


# ------------------------------------------------------------ commands
# each returns (results, diagnostics, csv header, csv rows)

def _classify(cfg: JobConfig):
    p = cfg.params()
    rc = classify(p)
    res = {"region": rc.name, "q": p.q, "kappa": p.kappa, "q_uj": p.q_uj, "q_cj": p.q_cj,
           "gamma": None if p.is_overcritical else p.gamma,
           "sigma": p.sigma if p.is_overcritical else None,
           "default_extension": default_extension(p).to_json()}
    return res, {}, ["region", "q", "kappa", "gamma"], [[rc.name, p.q, p.kappa, res["gamma"]]]


def _spectrum(cfg: JobConfig):
    p, e = cfg.params(), cfg.ext()
    window = None if cfg.window is None else (cfg.window[0] * p.m, cfg.window[1] * p.m)
    states = sp.find_discrete_spectrum(p, e, window=window, n_max=cfg.n_max)
    res = [{"n": s.n, "E": s.E, "Q2_jump": s.Qn2} for s in states]
    diag = {"extension": e.to_json(), "count": len(res)}
    return res, diag, ["n", "E", "Q2_jump"], [[s.n, s.E, s.Qn2] for s in states]


def _density(cfg: JobConfig):
    p, e = cfg.params(), cfg.ext()
    m = p.m
    grid = np.linspace(cfg.e_min, cfg.e_max, cfg.n_points) * m
    grid = grid[np.abs(grid) >= m * (1 + sp.THRESHOLD_GUARD)]
    chunks = [c for c in np.array_split(grid, thread_count()) if c.size]
    with ThreadPoolExecutor(max_workers=len(chunks) or 1) as pool:
        parts = list(pool.map(lambda c: sp.continuum_density(p, e, c), chunks))
    dens = np.concatenate(parts) if parts else np.array([])
    rows = [[float(x), float(y)] for x, y in zip(grid, dens)]
    diag = {"extension": e.to_json(), "excluded_guard_band": sp.THRESHOLD_GUARD}
    return rows, diag, ["E", "Q2"], rows


def _eigenfunction(cfg: JobConfig):
    p, e = cfg.params(), cfg.ext()
    if cfg.energy is None:
        raise ConfigError("eigenfunction needs --energy")
    r = np.linspace(cfg.r_min, cfg.r_max, cfg.n_r) / p.m
    u = sp.eigenfunction(p, e, cfg.energy * p.m, r)
    rows = [[float(a), float(b.real), float(c.real)] for a, b, c in zip(r, u.f, u.g)]
    res = [{"r": a, "f": b, "g": c} for a, b, c in rows]
    return res, {"extension": e.to_json(), "E": cfg.energy * p.m}, ["r", "f", "g"], rows


def _greens(cfg: JobConfig):
    p, e = cfg.params(), cfg.ext()
    W = complex(cfg.w[0], cfg.w[1]) * p.m
    G = sp.greens_function(p, e, cfg.r / p.m, cfg.rp / p.m, W)
    rows = [[i, j, float(G[i, j].real), float(G[i, j].imag)] for i in range(2) for j in range(2)]
    res = {"W": [W.real, W.imag], "r": cfg.r / p.m, "rp": cfg.rp / p.m,
           "G": [[[float(G[i, j].real), float(G[i, j].imag)] for j in range(2)] for i in range(2)]}
    return res, {"extension": e.to_json()}, ["i", "j", "re", "im"], rows


def _verify(cfg: JobConfig):
    p, e = cfg.params(), cfg.ext()
    if cfg.suite == "orthonormality":
        M, E = vf.orthonormality_matrix(p, e, cfg.n_states)
        off = float(np.max(np.abs(M - np.diag(np.diag(M))))) if len(E) > 1 else 0.0
        diag_err = float(np.max(np.abs(np.diag(M) - 1)))
        print(f"max off-diagonal: {off:.3e}", file=sys.stderr)
        rows = [[i, j, float(M[i, j])] for i in range(len(E)) for j in range(len(E))]
        res = {"energies": E, "matrix": M.tolist(), "max_off_diagonal": off,
               "max_diagonal_error": diag_err}
        return res, {"method": "WronskianBoundary"}, ["i", "j", "overlap"], rows
    if cfg.suite == "parseval":
        F = vf.BumpDoublet(cfg.center / p.m, cfg.width / p.m)
        rep = vf.parseval_check(p, e, F, n_max=cfg.n_max, strict=False)
        rows = [[w, c, d] for w, c, d in zip(rep.windows, rep.continuum, rep.defects)]
        print(f"defects: {', '.join(f'{d:.3e}' for d in rep.defects)}", file=sys.stderr)
        return rep.to_json(), {"monotone": rep.monotone}, ["window", "continuum", "defect"], rows
    if cfg.suite == "identities":
        rows = []
        n_lv = min(5, cfg.n_max + 1)
        for n in range(n_lv):
            nr = vf.discrete_norm(p, e, n)
            rows.append(["AnQn", n, nr.E, nr.an_qn])
        if classify(p).tag is Region.REGION2:
            for E in cfg.energies:
                cc = vf.continuum_constants(p, e, E * p.m)
                q2 = sp.continuum_density(p, e, E * p.m).density
                rows.append(["CxiQ2", None, E * p.m, cc.C_xi * q2])
        res = [{"identity": a, "n": b, "E": c, "value": d} for a, b, c, d in rows]
        worst = max(abs(r[3] - 1) for r in rows)
        print(f"max |identity - 1|: {worst:.3e}", file=sys.stderr)
        return res, {"max_deviation": worst}, ["identity", "n", "E", "value"], rows
    raise ConfigError("verify needs one of orthonormality, parseval, identities")


def _count(cfg: JobConfig):
    if cfg.q is None or not cfg.q > 0:
        raise ConfigError("count-extensions needs --q > 0")
    n = count_extension_parameters(cfg.q)
    return {"q": cfg.q, "count": n}, {}, ["q", "count"], [[cfg.q, n]]


COMMANDS = {"classify": _classify, "spectrum": _spectrum, "density": _density,
            "eigenfunction": _eigenfunction, "greens": _greens, "verify": _verify,
            "count-extensions": _count}


# -------------------------------------------------------------- output

def _config_echo(cfg: JobConfig) -> dict:
    d = asdict(cfg)
    d.pop("output")
    return d


def render(cfg: JobConfig, results, diagnostics, header, rows) -> str:
    if cfg.fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow(["" if x is None else repr(x) if isinstance(x, float) else x for x in row])
        return buf.getvalue()
    payload = {"schema": SCHEMA, "config": _config_echo(cfg), "results": results,
               "diagnostics": {"version": __version__, **diagnostics}}
    return json.dumps(payload, indent=2, allow_nan=True) + "\n"


def run(cfg: JobConfig) -> int:
    try:
        cfg.validate()
        out = render(cfg, *COMMANDS[cfg.command](cfg))
    except ArithmeticError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"config error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if cfg.output:
        with open(cfg.output, "w", newline="") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return 0


# ------------------------------------------------------------- parsing

def _channel_args(sp_: argparse.ArgumentParser, with_ext: bool = True):
    sp_.add_argument("--q", type=float, required=True, help="coupling Z alpha")
    sp_.add_argument("--kappa", type=int, required=True, help="kappa = zeta (j + 1/2)")
    sp_.add_argument("--mass", type=float, default=1.0, help="mass m (energies scale with it)")
    if with_ext:
        g = sp_.add_mutually_exclusive_group()
        g.add_argument("--xi", help="extension parameter xi (a number or 'inf')")
        g.add_argument("--theta", type=float, help="extension angle theta (overcritical)")
    sp_.add_argument("--format", dest="fmt", choices=["json", "csv"], default="json")
    sp_.add_argument("--output", "-o", help="write to this file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="supercrit", description=__doc__.split("\n\n")[0].strip())
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    _channel_args(sub.add_parser("classify", help="charge region of a channel"), with_ext=False)

    s = sub.add_parser("spectrum", help="discrete levels and residues")
    _channel_args(s)
    s.add_argument("--n-max", type=int, default=10)
    s.add_argument("--window", type=float, nargs=2, metavar=("LO", "HI"))

    s = sub.add_parser("density", help="continuum spectral density on an energy grid")
    _channel_args(s)
    s.add_argument("--e-min", type=float, default=1.01)
    s.add_argument("--e-max", type=float, default=5.0)
    s.add_argument("--n-points", type=int, default=50)

    s = sub.add_parser("eigenfunction", help="normalised eigenfunction on an r grid")
    _channel_args(s)
    s.add_argument("--energy", type=float, required=True)
    s.add_argument("--r-min", type=float, default=0.01)
    s.add_argument("--r-max", type=float, default=10.0)
    s.add_argument("--n-r", type=int, default=50)

    s = sub.add_parser("greens", help="Green's function G(r, r'; W)")
    _channel_args(s)
    s.add_argument("--r", type=float, default=1.0)
    s.add_argument("--rp", type=float, default=2.0)
    s.add_argument("--w", type=float, nargs=2, default=(0.3, 0.4), metavar=("RE", "IM"))

    s = sub.add_parser("verify", help="orthonormality, Parseval and residue identities")
    s.add_argument("suite", choices=["orthonormality", "parseval", "identities"])
    _channel_args(s)
    s.add_argument("--n-states", type=int, default=8)
    s.add_argument("--n-max", type=int, default=30)
    s.add_argument("--center", type=float, default=3.0)
    s.add_argument("--width", type=float, default=0.4)

    s = sub.add_parser("count-extensions", help="number of extension parameters at coupling q")
    s.add_argument("--q", type=float, required=True)
    s.add_argument("--format", dest="fmt", choices=["json", "csv"], default="json")
    s.add_argument("--output", "-o")
    return ap


def config_from_args(ns: argparse.Namespace) -> JobConfig:
    cfg = JobConfig(command=ns.command, q=ns.q, fmt=ns.fmt, output=ns.output)
    if hasattr(ns, "kappa"):
        cfg.kappa, cfg.m = ns.kappa, ns.mass
    if getattr(ns, "xi", None) is not None:
        cfg.extension = f"xi={ns.xi}"
    elif getattr(ns, "theta", None) is not None:
        cfg.extension = f"theta={ns.theta!r}"
    for name in ("n_max", "e_min", "e_max", "n_points", "energy", "r_min", "r_max", "n_r",
                 "r", "rp", "suite", "n_states", "center", "width"):
        if hasattr(ns, name):
            setattr(cfg, name, getattr(ns, name))
    if getattr(ns, "window", None):
        cfg.window = tuple(ns.window)
    if getattr(ns, "w", None) is not None:
        cfg.w = tuple(ns.w)
    return cfg


def main(argv: list[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    return run(config_from_args(ns))


if __name__ == "__main__":
    sys.exit(main())
