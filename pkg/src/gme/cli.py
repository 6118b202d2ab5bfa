"""Command-line front end.

    gme pure w
    gme mixed werner 2 -1
    gme mixed ghzw 0.25 0.375
    gme figure 1 --out figs/
    gme witness w --against maximally-mixed:3

Exit codes: 0 ok, 2 usage, 3 solver did not converge, 4 state not entangled.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import convexify, figures, ghz_w_family, hartree, io, mixed_bipartite, states, witnesses
from .errors import GMEError, NotEntangled

EXIT_OK, EXIT_USAGE, EXIT_NONCONVERGED, EXIT_NOT_ENTANGLED = 0, 2, 3, 4
COMMANDS = ("pure", "mixed", "figure", "witness")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    tol: float = hartree.SolverOptions.tol
    restarts: int = hartree.SolverOptions.restarts
    seed: int = hartree.SolverOptions.seed
    grid: int = 201
    format: str = "csv"
    out: str | None = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.grid < 11:
            raise UsageError("grid must be at least 11")
        if self.format not in ("csv", "json"):
            raise UsageError("format must be csv or json")
        if self.restarts < 1 or not self.tol > 0:
            raise UsageError("restarts must be >= 1 and tol > 0")

    def solver(self) -> hartree.SolverOptions:
        return hartree.SolverOptions(restarts=self.restarts, tol=self.tol, seed=self.seed)


def parse_state(spec: str) -> states.PureState:
    """``ghz:n``, ``w``, ``wt``, ``s:n,k``, ``det:n`` or ``file:path.json``."""
    name, _, arg = spec.partition(":")
    try:
        if name == "file":
            st = io.load_state(arg)
            if not isinstance(st, states.PureState):
                raise UsageError("state file must hold a pure state")
            return st
        if name == "ghz":
            return states.ghz(int(arg) if arg else 3)
        if name == "w" and not arg:
            return states.w_state()
        if name == "wt" and not arg:
            return states.w_tilde()
        if name == "s":
            n, k = (int(v) for v in arg.split(","))
            return states.symmetric_state(n, k)
        if name == "det":
            return states.determinant_state(int(arg))
    except (ValueError, OSError, KeyError) as exc:
        raise UsageError(f"bad state spec {spec!r}: {exc}") from exc
    raise UsageError(f"unknown state spec {spec!r}")


def _c(z: complex) -> str:
    return f"{z.real:.12g}{z.imag:+.12g}j"


def _emit(cfg: RunConfig, rows: list[tuple[str, object]]) -> str:
    if cfg.format == "json":
        return json.dumps(dict(rows), indent=2) + "\n"
    lines = ["quantity,value"]
    for k, v in rows:
        if isinstance(v, float):
            v = io.fmt12(v)
        elif isinstance(v, bool):
            v = str(v).lower()
        lines.append(f"{k},{v}")
    return "\n".join(lines) + "\n"


def cmd_pure(cfg: RunConfig, spec: str) -> tuple[str, int]:
    psi = parse_state(spec)
    if psi.num_parties == 2:
        res = hartree.schmidt_result(psi)
    else:
        res = hartree.entanglement_eigenvalue(psi, cfg.solver())
    rows = [
        ("lambda_max", res.lambda_max),
        ("lambda_sq", res.lambda_max**2),
        ("e_sin2", res.e_sin2),
        ("e_log", res.e_log),
        ("converged", bool(res.converged)),
        ("sweeps", int(res.sweeps)),
    ]
    for i, f in enumerate(res.maximizer.factors):
        if cfg.format == "json":
            rows.append((f"factor{i}", [[z.real, z.imag] for z in f]))
        else:
            rows.append((f"factor{i}", " ".join(_c(z) for z in f)))
    return _emit(cfg, rows), EXIT_OK if res.converged else EXIT_NONCONVERGED


def _floats(vals, n) -> list[float]:
    if len(vals) != n:
        raise UsageError(f"expected {n} parameters, got {len(vals)}")
    try:
        return [float(v) for v in vals]
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def cmd_mixed(cfg: RunConfig, family: str, params: list[str]) -> tuple[str, int]:
    if family == "two-qubit":
        if len(params) != 1:
            raise UsageError("two-qubit needs a state file")
        try:
            rho = io.load_state(params[0])
        except (OSError, KeyError, ValueError) as exc:
            raise UsageError(str(exc)) from exc
        if isinstance(rho, states.PureState):
            rho = states.density(rho)
        rows = [("C", mixed_bipartite.concurrence(rho)), ("E", mixed_bipartite.e_two_qubit(rho))]
    elif family == "werner":
        d, f = _floats(params, 2)
        rows = [("E", mixed_bipartite.e_werner(f))]
        states.werner(int(d), f)  # validates d
    elif family == "isotropic":
        d, F = _floats(params, 2)
        rows = [("E", mixed_bipartite.e_isotropic(int(d), F))]
    elif family == "ghzw":
        x, y = _floats(params, 2)
        states.ghzw_mix(x, y)  # validates the simplex point
        report = ghz_w_family.default_report(max(cfg.grid, 101))
        e = float(report.exact(np.array([x]), np.array([y]))[0])
        n = float(ghz_w_family.negativity_batch(x, y)[0])
        rows = [("E", max(e, 0.0)), ("N", max(n, 0.0))]
    elif family == "sym-mix":
        if len(params) != 2:
            raise UsageError("sym-mix needs n and a comma-separated probability list")
        try:
            n = int(params[0])
            p = [float(v) for v in params[1].split(",")]
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        rows = [("E", convexify.symmetric_mixture_entanglement(n, p))]
    else:
        raise UsageError(f"unknown family {family!r}")
    return _emit(cfg, rows), EXIT_OK


def cmd_figure(cfg: RunConfig, fig_id: str) -> dict:
    try:
        fid = int(fig_id)
    except ValueError as exc:
        raise UsageError(f"unknown figure {fig_id!r}") from exc
    if fid not in figures.FIGURES:
        raise UsageError(f"unknown figure {fig_id!r}")
    return figures.figure(fid, grid=cfg.grid, seed=cfg.seed)


def cmd_witness(cfg: RunConfig, spec: str, against: str | None) -> tuple[str, int]:
    psi = parse_state(spec)
    if psi.num_parties == 2:
        lam = hartree.schmidt_lambda(psi)
    else:
        lam = hartree.entanglement_eigenvalue(psi, cfg.solver()).lambda_max
    w = witnesses.optimal_witness(psi, lambda_max=lam)
    lo, hi = witnesses.witness_validity_range(psi, lambda_max=lam)
    if against is None:
        rho = states.density(psi)
    elif against.startswith("maximally-mixed:"):
        try:
            n = int(against.split(":", 1)[1])
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        rho = witnesses.maximally_mixed((2,) * n)
    else:
        try:
            rho = io.load_state(against[5:] if against.startswith("file:") else against)
        except (OSError, KeyError, ValueError) as exc:
            raise UsageError(str(exc)) from exc
    rows = [
        ("lambda_sq", w.lambda_sq),
        ("valid_lo", lo),
        ("valid_hi", hi),
        ("detector", witnesses.detector(w, rho)),
    ]
    return _emit(cfg, rows), EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=hartree.SolverOptions.tol)
    common.add_argument("--restarts", type=int, default=hartree.SolverOptions.restarts)
    common.add_argument("--seed", type=int, default=None, help="default: $GME_SEED or 0")
    common.add_argument("--grid", type=int, default=201)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--out", default=None, help="output file (figure: directory)")
    p = argparse.ArgumentParser(prog="gme", description="Geometric measure of entanglement.")
    sub = p.add_subparsers(dest="command", required=True)
    sp = sub.add_parser("pure", parents=[common], help="entanglement of a pure state")
    sp.add_argument("state")
    sp = sub.add_parser("mixed", parents=[common], help="entanglement of a mixed-state family")
    sp.add_argument("family", choices=("two-qubit", "werner", "isotropic", "ghzw", "sym-mix"))
    sp.add_argument("params", nargs="*")
    sp = sub.add_parser("figure", parents=[common], help="write figure data as CSV")
    sp.add_argument("id")
    sp = sub.add_parser("witness", parents=[common], help="optimal geometric witness")
    sp.add_argument("state")
    sp.add_argument("--against", default=None, help="maximally-mixed:n or a state file")
    return p


def _seed(arg) -> int:
    if arg is not None:
        return arg
    env = os.environ.get("GME_SEED")
    if env is None:
        return hartree.SolverOptions.seed
    try:
        return int(env)
    except ValueError as exc:
        raise UsageError(f"GME_SEED must be an integer, got {env!r}") from exc


def _write(text: str, out: str | None, stdout):
    if out is None:
        stdout.write(text)
    else:
        with open(out, "w", newline="\n") as fh:
            fh.write(text)


def main(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else EXIT_OK
    try:
        cfg = RunConfig(args.command, args.tol, args.restarts, _seed(args.seed), args.grid, args.format, args.out)
        if cfg.command == "figure":
            files = cmd_figure(cfg, args.id)
            outdir = Path(cfg.out or ".")
            outdir.mkdir(parents=True, exist_ok=True)
            for name, text in files.items():
                with open(outdir / name, "w", newline="\n") as fh:
                    fh.write(text)
                stdout.write(f"{outdir / name}\n")
            return EXIT_OK
        if cfg.command == "pure":
            text, code = cmd_pure(cfg, args.state)
        elif cfg.command == "mixed":
            text, code = cmd_mixed(cfg, args.family, args.params)
        else:
            text, code = cmd_witness(cfg, args.state, args.against)
        _write(text, cfg.out, stdout)
        return code
    except NotEntangled as exc:
        print(f"gme: not entangled: {exc}", file=sys.stderr)
        return EXIT_NOT_ENTANGLED
    except (UsageError, GMEError) as exc:
        print(f"gme: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
