"""Data tables behind the figures, as CSV text keyed by file name."""
from __future__ import annotations

import math

import numpy as np

from . import closed_forms, convexify, ghz_w_family
from .io import csv_text

FIG7_X = (0.8, 0.85, 0.9, 0.92, 0.94, 0.96, 0.98, 1.0)
FIG8_R = (0.0, 0.1, 0.2, 0.3, 0.5)
FIGURES = tuple(range(1, 11))


def _col(v: float) -> str:
    return f"{v:g}"


def ww_curve(grid: int):
    s = np.linspace(0.0, 1.0, grid)
    pure = convexify.Curve(s, ghz_w_family.e_psi(np.zeros_like(s), s))
    return pure, convexify.vw_mixture_entanglement(pure)


def fig1(grid: int = 201, seed: int = 0) -> dict:
    pure, mixed = ww_curve(grid)
    return {"fig1.csv": csv_text(["s", "E_pure", "E_mixed"], zip(pure.xs, pure.ys, mixed.ys))}


def fig2(grid: int = 201, seed: int = 0, samples: int = 200) -> dict:
    s = np.linspace(0.0, 1.0, grid)
    e0 = [closed_forms.gw_entanglement(v, 0.0) for v in s]
    epi = [closed_forms.gw_entanglement(v, math.pi) for v in s]
    rng = np.random.default_rng(seed)
    pts = sorted(zip(rng.random(samples), rng.random(samples) * 2 * math.pi))
    dots = [(v, phi, closed_forms.gw_entanglement(v, phi)) for v, phi in pts]
    return {
        "fig2.csv": csv_text(["s", "E_phi0", "E_phiPi"], zip(s, e0, epi)),
        "fig2_samples.csv": csv_text(["s", "phi", "E"], dots),
    }


def fig3(grid: int = 201, seed: int = 0) -> dict:
    pure, mixed = convexify.symmetric_mixture_curve(7, 2, 5, grid)
    return {"fig3.csv": csv_text(["r", "E_pure", "E_mixed"], zip(pure.xs, pure.ys, mixed.ys))}


def fig4(grid: int = 201, seed: int = 0) -> dict:
    return {"fig4.csv": ghz_w_family.e_psi_surface(grid).to_csv(names=("x", "y", "E_psi"))}


def fig5(grid: int = 201, seed: int = 0) -> dict:
    x = np.linspace(0.0, 1.0, grid)
    e = ghz_w_family.e_psi(x, (1.0 - x) / 2)
    return {"fig5.csv": csv_text(["x", "E_psi"], zip(x, e))}


def fig6(grid: int = 201, seed: int = 0) -> dict:
    s = ghz_w_family.xr_surface(grid)
    return {"fig6.csv": s.to_csv(names=("x", "r", "E_psi"))}


def fig7(grid: int = 201, seed: int = 0) -> dict:
    r = np.linspace(0.0, 1.0, grid)
    cols = [ghz_w_family.e_psi_xr(np.full_like(r, x), r) for x in FIG7_X]
    head = ["r"] + [f"E_x{_col(x)}" for x in FIG7_X]
    return {"fig7.csv": csv_text(head, np.column_stack([r] + cols))}


def fig8(grid: int = 201, seed: int = 0) -> dict:
    x = np.linspace(0.0, 1.0, grid)
    cols = [ghz_w_family.e_psi_xr(x, np.full_like(x, r)) for r in FIG8_R]
    head = ["x"] + [f"E_r{_col(r)}" for r in FIG8_R]
    return {"fig8.csv": csv_text(head, np.column_stack([x] + cols))}


def fig9(grid: int = 201, seed: int = 0) -> dict:
    rep = ghz_w_family.convexify_surgery(ghz_w_family.xr_surface(grid), seed=seed)
    return {"fig9.csv": rep.final_surface.to_csv(names=("x", "y", "E_rho"))}


def fig10(grid: int = 201, seed: int = 0) -> dict:
    return {"fig10.csv": ghz_w_family.negativity_surface(grid).to_csv(names=("x", "y", "N"))}


def figure(fig_id: int, grid: int = 201, seed: int = 0) -> dict:
    if fig_id not in FIGURES:
        raise KeyError(f"unknown figure {fig_id}")
    return globals()[f"fig{fig_id}"](grid=grid, seed=seed)
