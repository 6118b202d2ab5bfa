"""Three-qubit mixtures of GHZ, W and inverted-W states.

rho(x, y) = x |GHZ><GHZ| + y |W><W| + (1-x-y) |W~><W~| is invariant under
the twirl P4, so its entanglement is the convex hull over the (x, y)
simplex of the pure-state function E_psi(x, y) of
sqrt(x) |GHZ> + sqrt(y) |W> + sqrt(1-x-y) |W~>.

The hull is built by two one-dimensional corrections in the coordinates
(x, r) with y = (1-x) r. Lines of constant x and lines of constant r are
both straight lines in (x, y), so each correction is a legitimate mixing
of states in the family:

* r-pass: at fixed x, E_psi is symmetric in r about 1/2 and can develop a
  cusp there with two flanking minima; the values between the minima are
  replaced by the horizontal chord.
* x-pass: at fixed r, the curve bends concave close to the GHZ vertex
  (x = 1, where E = 1/2 for every r); it is replaced by the tangent line
  from (1, 1/2).

The corrected function is evaluated exactly at any (x, y), not resampled,
so the convexity check measures the construction and not interpolation
error.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import hartree, states
from .closed_forms import ghzw_lambda_batch, golden_max_batch
from .convexify import Domain, Surface, chord_violation_2d, lower_envelope_2d, simplex_surface
from .errors import NoTangent, OutOfDomain, ParamOutOfRange, SymmetryBroken

E_GHZ = 0.5  # E_psi(1, y) for the GHZ vertex
SYMMETRY_TOL = 1e-9
CUSP_TOL = 1e-12
DIFF_STEP = 1e-6


def e_psi(x, y):
    """E_sin2 of the non-negative superposition at simplex point(s) (x, y)."""
    return 1.0 - ghzw_lambda_batch(x, y) ** 2


def e_psi_xr(x, r):
    """E_psi in the (x, r) coordinates, y = (1-x) r."""
    x = np.asarray(x, dtype=float)
    return e_psi(x, (1.0 - x) * np.asarray(r, dtype=float))


def _check_grid(grid: int):
    if grid < 101:
        raise ParamOutOfRange("grid resolution must be at least 101 per axis")


def e_psi_surface(grid: int = 401) -> Surface:
    _check_grid(grid)
    return simplex_surface(grid, e_psi)


def xr_surface(grid: int = 401, func: Callable = e_psi_xr) -> Surface:
    """Sample ``func(x, r)`` on the unit square (rows x, columns r)."""
    g = np.linspace(0.0, 1.0, grid)
    X, R = np.meshgrid(g, g, indexing="ij")
    return Surface(Domain.RECT, g, g, func(X, R))


@dataclass(frozen=True, eq=False)
class SurgeryReport:
    """Outcome of the two-pass convexification.

    ``r_pass_segments`` has rows (x, r1, r2), NaN where no flattening was
    needed; ``x_pass_tangents`` has rows (r, x0), NaN where the curve is
    already convex up to the GHZ vertex.
    """

    r_pass_segments: np.ndarray
    x_pass_tangents: np.ndarray
    convexity_check: tuple
    final_surface: Surface
    fallback: bool = False
    exact: Callable | None = field(default=None, repr=False)

    def to_dict(self) -> dict:
        def rows(a):
            return [[None if math.isnan(v) else float(v) for v in row] for row in a]

        n, worst = self.convexity_check
        return {
            "r_pass_segments": rows(self.r_pass_segments),
            "x_pass_tangents": rows(self.x_pass_tangents),
            "convexity_check": {"num_chords": int(n), "max_violation": float(worst)},
            "fallback": bool(self.fallback),
            "grid": [int(self.final_surface.grid_x.size), int(self.final_surface.grid_y.size)],
        }


class _Surgery:
    """Tables and exact evaluation of the corrected function."""

    def __init__(self, surface: Surface, refine: Callable):
        self.f = refine
        xs, rs, v = surface.grid_x, surface.grid_y, surface.values
        self.xs = xs
        half = rs <= 0.5 + 1e-15
        self.rh = rs[half]
        # r-pass tables: global minimum of E(x, .) over [0, 1/2] per grid x
        j = np.argmin(v[:, half], axis=1)
        lo = self.rh[np.maximum(j - 1, 0)]
        hi = self.rh[np.minimum(j + 1, self.rh.size - 1)]
        self.r1, self.m = self._rmin(xs, lo, hi)
        # x-pass tables
        e1 = np.where(self.rh[None, :] >= self.r1[:, None], self.m[:, None], v[:, half])
        self.x0h = self._tangents(e1)

    # -- r-pass --------------------------------------------------------------

    def _rmin(self, x, lo, hi):
        x, lo, hi = (np.asarray(a, dtype=float) for a in (x, lo, hi))
        r, negm = golden_max_batch(lambda r: -self.f(x, r), lo, hi, iters=48)
        cands = np.stack([r, lo, hi])
        vals = np.stack([-negm, self.f(x, lo), self.f(x, hi)])
        k = np.argmin(vals, axis=0)
        r1 = np.take_along_axis(cands, k[None], 0)[0]
        m = np.take_along_axis(vals, k[None], 0)[0]
        # no cusp: E(x, 1/2) is already the minimum
        mid = self.f(x, np.full_like(x, 0.5))
        flat = mid <= m + CUSP_TOL
        return np.where(flat, 0.5, r1), np.where(flat, mid, m)

    def rmin(self, x):
        """(r1, m) at arbitrary x; exact table entries on grid abscissae."""
        x = np.asarray(x, dtype=float)
        i = np.clip(np.searchsorted(self.xs, x) - 1, 0, self.xs.size - 2)
        on_lo = x == self.xs[i]
        on_hi = x == self.xs[i + 1]
        r1 = np.where(on_lo, self.r1[i], self.r1[i + 1])
        m = np.where(on_lo, self.m[i], self.m[i + 1])
        off = ~(on_lo | on_hi)
        if np.any(off):
            dr = self.rh[1] - self.rh[0]
            a, b = self.r1[i[off]], self.r1[i[off] + 1]
            lo = np.clip(np.minimum(a, b) - 2 * dr, 0.0, 0.5)
            hi = np.clip(np.maximum(a, b) + 2 * dr, 0.0, 0.5)
            r1[off], m[off] = self._rmin(x[off], lo, hi)
        return r1, m

    def e1(self, x, r):
        """E after the r-pass."""
        x, r = np.broadcast_arrays(np.asarray(x, float), np.asarray(r, float))
        x, r = x.ravel(), r.ravel()
        rs = np.minimum(r, 1.0 - r)
        out = self.f(x, r)
        # only points that a flattened segment can reach need the minimum
        i = np.clip(np.searchsorted(self.xs, x) - 1, 0, self.xs.size - 2)
        reach = np.minimum(self.r1[i], self.r1[i + 1]) - 2 * (self.rh[1] - self.rh[0])
        near = rs >= reach
        if np.any(near):
            r1, m = self.rmin(x[near])
            out[near] = np.where(rs[near] >= r1, m, out[near])
        return out

    # -- x-pass --------------------------------------------------------------

    def _g(self, x, r):
        h = DIFF_STEP
        xl = np.maximum(x - h, 0.0)
        xr = np.minimum(x + h, 1.0)
        d = (self.e1(xr, r) - self.e1(xl, r)) / (xr - xl)
        return d * (1.0 - x) - (E_GHZ - self.e1(x, r))

    def _tangents(self, e1: np.ndarray) -> np.ndarray:
        xs = self.xs
        n = xs.size
        # the hull edge into (1, E_GHZ) leaves from the point of steepest chord
        slope = (E_GHZ - e1[:-1]) / (1.0 - xs[:-1, None])
        imax = np.argmax(slope, axis=0)
        x0 = np.full(self.rh.size, np.nan)
        todo = imax < n - 2
        if not np.any(todo):
            return x0
        r = self.rh[todo]
        lo = xs[np.maximum(imax[todo] - 1, 0)]
        hi = xs[imax[todo] + 1]
        glo, ghi = self._g(lo, r), self._g(hi, r)
        if np.any(glo > 0) or np.any(ghi < 0):
            raise NoTangent("tangent condition is not bracketed around the steepest chord")
        for _ in range(45):
            mid = 0.5 * (lo + hi)
            neg = self._g(mid, r) <= 0
            lo = np.where(neg, mid, lo)
            hi = np.where(neg, hi, mid)
        x0[todo] = 0.5 * (lo + hi)
        return x0

    def x0(self, r):
        rs = np.minimum(r, 1.0 - r)
        filled = np.where(np.isnan(self.x0h), 1.0, self.x0h)
        return np.interp(rs, self.rh, filled)

    # -- final function ------------------------------------------------------

    def __call__(self, x, y):
        x, y = np.broadcast_arrays(np.asarray(x, float), np.asarray(y, float))
        shape = x.shape
        x, y = x.ravel(), y.ravel()
        out = np.full(x.shape, E_GHZ)
        live = x < 1.0
        xl, yl = x[live], y[live]
        r = np.clip(yl / (1.0 - xl), 0.0, 1.0)
        x0 = self.x0(r)
        chord = (xl > x0) & (x0 < 1.0)
        val = np.empty(xl.shape)
        val[~chord] = self.e1(xl[~chord], r[~chord])
        if np.any(chord):
            a = self.e1(x0[chord], r[chord])
            t = (xl[chord] - x0[chord]) / (1.0 - x0[chord])
            val[chord] = a + (E_GHZ - a) * t
        out[live] = val
        return out.reshape(shape) if shape else float(out[0])


def _random_simplex(rng, n):
    u = rng.random((n, 2))
    flip = u.sum(axis=1) > 1
    u[flip] = 1.0 - u[flip]
    return u[:, 0], u[:, 1]


def chord_test(func: Callable, n_chords: int = 10_000, seed: int = 0) -> float:
    """Max of f(t p + (1-t) q) - t f(p) - (1-t) f(q) over random chords in the simplex."""
    rng = np.random.default_rng(seed)
    px, py = _random_simplex(rng, n_chords)
    qx, qy = _random_simplex(rng, n_chords)
    t = rng.random(n_chords)
    mid = func(t * px + (1 - t) * qx, t * py + (1 - t) * qy)
    gap = mid - t * func(px, py) - (1 - t) * func(qx, qy)
    return float(max(0.0, gap.max()))


def convexify_surgery(
    surface: Surface | None = None,
    refine: Callable = e_psi_xr,
    n_chords: int = 10_000,
    seed: int = 0,
) -> SurgeryReport:
    """Two-pass convexification of ``surface`` = E(x, (1-x) r) sampled on (x, r).

    ``refine(x, r)`` evaluates the same function off the grid. When the
    tangent bracket fails, falls back to the generic hull of E on the
    simplex grid and flags the report.
    """
    if surface is None:
        surface = xr_surface(401, refine)
    rs = surface.grid_y
    if np.max(np.abs(rs - (1.0 - rs[::-1]))) > 1e-12:
        raise SymmetryBroken("r grid is not symmetric about 1/2")
    asym = np.nanmax(np.abs(surface.values - surface.values[:, ::-1]))
    if asym > SYMMETRY_TOL:
        raise SymmetryBroken(f"E(x, r) differs from E(x, 1-r) by {asym:.3g}")
    n = surface.grid_x.size
    try:
        s = _Surgery(surface, refine)
    except NoTangent:
        hull = lower_envelope_2d(
            simplex_surface(n, lambda x, y: refine(x, np.where(x < 1, y / np.maximum(1 - x, 1e-300), 0.0)))
        )
        return SurgeryReport(
            r_pass_segments=np.empty((0, 3)),
            x_pass_tangents=np.empty((0, 2)),
            convexity_check=(n_chords, chord_violation_2d(hull, n_chords, seed)),
            final_surface=hull,
            fallback=True,
            exact=hull,
        )
    cusp = s.r1 < 0.5
    segs = np.column_stack([s.xs, np.where(cusp, s.r1, np.nan), np.where(cusp, 1.0 - s.r1, np.nan)])
    x0_full = np.concatenate([s.x0h, s.x0h[::-1][1:] if rs.size % 2 else s.x0h[::-1]])
    tangents = np.column_stack([rs, x0_full[: rs.size]])
    final = simplex_surface(n, s)
    worst = chord_test(s, n_chords, seed)
    return SurgeryReport(segs, tangents, (n_chords, worst), final, False, s)


@functools.lru_cache(maxsize=4)
def default_report(grid: int = 401) -> SurgeryReport:
    return convexify_surgery(xr_surface(grid))


def e_rho(x: float, y: float, report: SurgeryReport | None = None) -> float:
    """Entanglement of rho(x, y) by interpolation on the final surface."""
    if x < -1e-12 or y < -1e-12 or x + y > 1 + 1e-12:
        raise OutOfDomain(f"({x}, {y}) is outside the simplex")
    report = report or default_report()
    return float(report.final_surface(min(max(x, 0.0), 1.0), min(max(y, 0.0), 1.0)))


def _ghzw_density_batch(x, y) -> np.ndarray:
    basis = [states.density(s).matrix for s in (states.ghz(3), states.w_state(), states.w_tilde())]
    z = np.clip(1.0 - x - y, 0.0, 1.0)
    return x[:, None, None] * basis[0] + y[:, None, None] * basis[1] + z[:, None, None] * basis[2]


def negativity_batch(x, y, party: int = 2) -> np.ndarray:
    x = np.atleast_1d(np.asarray(x, dtype=float))
    y = np.atleast_1d(np.asarray(y, dtype=float))
    m = _ghzw_density_batch(x, y).reshape((-1,) + (2,) * 6)
    m = np.swapaxes(m, 1 + party, 4 + party).reshape(-1, 8, 8)
    ev = np.linalg.eigvalsh(m)
    return -2.0 * np.where(ev < 0, ev, 0.0).sum(axis=1)


def negativity_surface(grid: int = 201, party: int = 2) -> Surface:
    _check_grid(grid)
    return simplex_surface(grid, lambda x, y: negativity_batch(x, y, party))


def ordering_report(pairs: Sequence, report: SurgeryReport | None = None) -> list[dict]:
    """Compare negativity and GME orderings for pairs of simplex points."""
    report = report or default_report()
    value = report.exact
    out = []
    for (x1, y1), (x2, y2) in pairs:
        for x, y in ((x1, y1), (x2, y2)):
            if x < -1e-12 or y < -1e-12 or x + y > 1 + 1e-12:
                raise OutOfDomain(f"({x}, {y}) is outside the simplex")
        n1, n2 = negativity_batch([x1, x2], [y1, y2])
        e1, e2 = (float(v) for v in value(np.array([x1, x2]), np.array([y1, y2])))
        sn = 0 if abs(n1 - n2) < 1e-12 else int(np.sign(n1 - n2))
        se = 0 if abs(e1 - e2) < 1e-12 else int(np.sign(e1 - e2))
        out.append({"N1": float(n1), "N2": float(n2), "E1": e1, "E2": e2, "order_agrees": sn == se})
    return out


def phase_spot_check(points: Sequence, phases: int = 6, opts: hartree.SolverOptions | None = None) -> np.ndarray:
    """E_psi(x, y) minus the least E over relative phases, per point.

    Scans the two relative phases of the GHZ, W and W~ components on a
    ``phases`` x ``phases`` grid with the numerical solver. Values near zero
    mean the non-negative superposition is the least entangled preimage.
    """
    opts = opts or hartree.SolverOptions(restarts=4, tol=1e-13)
    basis = [states.ghz(3).amplitudes, states.w_state().amplitudes, states.w_tilde().amplitudes]
    grid = np.linspace(0.0, 2 * math.pi, phases, endpoint=False)
    out = []
    for x, y in points:
        z = max(0.0, 1.0 - x - y)
        best = math.inf
        for a in grid:
            for b in grid:
                v = math.sqrt(x) * basis[0] + math.sqrt(y) * np.exp(1j * a) * basis[1]
                v = v + math.sqrt(z) * np.exp(1j * b) * basis[2]
                psi = states.make_pure((2, 2, 2), v)
                best = min(best, hartree.entanglement_eigenvalue(psi, opts).e_sin2)
        out.append(float(e_psi(x, y)) - best)
    return np.array(out)
