"""Lower convex envelopes of sampled functions and the convex-roof driver.

Mixed-state entanglement of a symmetry-invariant family is the convex hull of
the least pure-state entanglement over each invariant parameter point. Once
that function is sampled on parameters entering the density matrix linearly,
all that is left is a lower convex envelope of the samples.
"""
from __future__ import annotations

import enum
import io
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from . import closed_forms
from .errors import (
    DegenerateGrid,
    DomainError,
    OutOfDomain,
    ParamOutOfRange,
    TooFewPoints,
    TooManyComponents,
)


class Domain(enum.Enum):
    SIMPLEX = "simplex"  # x, y >= 0, x + y <= 1
    RECT = "rect"  # [0, 1] x [0, 1]


def _fmt(v: float) -> str:
    return f"{v:.12g}"


@dataclass(frozen=True, eq=False)
class Curve:
    xs: np.ndarray
    ys: np.ndarray

    def __post_init__(self):
        xs = np.asarray(self.xs, dtype=float).copy()
        ys = np.asarray(self.ys, dtype=float).copy()
        if xs.ndim != 1 or xs.shape != ys.shape:
            raise ValueError("xs and ys must be 1-D arrays of equal length")
        if xs.size < 2:
            raise TooFewPoints("a curve needs at least two samples")
        if np.any(np.diff(xs) <= 0):
            raise ValueError("xs must be strictly increasing")
        if not np.all(np.isfinite(ys)):
            raise ValueError("ys must be finite")
        xs.setflags(write=False)
        ys.setflags(write=False)
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "ys", ys)

    def __call__(self, x):
        return np.interp(x, self.xs, self.ys)

    def to_csv(self, fh=None, names=("x", "value")) -> str:
        buf = io.StringIO()
        buf.write(",".join(names) + "\n")
        for x, y in zip(self.xs, self.ys):
            buf.write(f"{_fmt(x)},{_fmt(y)}\n")
        text = buf.getvalue()
        if fh is not None:
            fh.write(text)
        return text


@dataclass(frozen=True, eq=False)
class Surface:
    """Samples ``values[i, j]`` at ``(grid_x[i], grid_y[j])``; NaN outside the domain."""

    domain: Domain
    grid_x: np.ndarray
    grid_y: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        gx = np.asarray(self.grid_x, dtype=float).copy()
        gy = np.asarray(self.grid_y, dtype=float).copy()
        v = np.asarray(self.values, dtype=float).copy()
        if v.shape != (gx.size, gy.size):
            raise ValueError("values must have shape (len(grid_x), len(grid_y))")
        if np.any(np.diff(gx) <= 0) or np.any(np.diff(gy) <= 0):
            raise ValueError("grids must be strictly increasing")
        inside = self.mask_for(Domain(self.domain), gx, gy)
        if not np.all(np.isfinite(v[inside])):
            raise ValueError("values must be finite inside the domain")
        v[~inside] = np.nan
        for a in (gx, gy, v):
            a.setflags(write=False)
        object.__setattr__(self, "domain", Domain(self.domain))
        object.__setattr__(self, "grid_x", gx)
        object.__setattr__(self, "grid_y", gy)
        object.__setattr__(self, "values", v)

    @staticmethod
    def mask_for(domain: Domain, gx, gy) -> np.ndarray:
        if domain is Domain.SIMPLEX:
            return gx[:, None] + gy[None, :] <= 1.0 + 1e-12
        return np.ones((gx.size, gy.size), dtype=bool)

    @property
    def mask(self) -> np.ndarray:
        return np.isfinite(self.values)

    def points(self):
        """(x, y, value) of every in-domain sample, lexicographic in (x, y)."""
        X, Y = np.meshgrid(self.grid_x, self.grid_y, indexing="ij")
        m = self.mask
        return X[m], Y[m], self.values[m]

    def with_values(self, values) -> "Surface":
        return Surface(self.domain, self.grid_x, self.grid_y, values)

    def __call__(self, x, y):
        """Bilinear interpolation; cells cut by the simplex edge use their inner triangle."""
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        gx, gy, v = self.grid_x, self.grid_y, self.values
        tol = 1e-12
        outside = (x < gx[0] - tol) | (x > gx[-1] + tol) | (y < gy[0] - tol) | (y > gy[-1] + tol)
        if self.domain is Domain.SIMPLEX:
            outside |= x + y > 1 + 1e-9
        if np.any(outside):
            raise OutOfDomain("interpolation point outside the surface domain")
        # cells are chosen towards the origin so nodes on the simplex edge stay inside
        i = np.clip(np.searchsorted(gx, x, side="left") - 1, 0, gx.size - 2)
        j = np.clip(np.searchsorted(gy, y, side="left") - 1, 0, gy.size - 2)
        u = np.clip((x - gx[i]) / (gx[i + 1] - gx[i]), 0.0, 1.0)
        w = np.clip((y - gy[j]) / (gy[j + 1] - gy[j]), 0.0, 1.0)
        corners = [v[i, j], v[i + 1, j], v[i, j + 1], v[i + 1, j + 1]]
        cut = np.isnan(corners[3])
        f00, f10, f01, f11 = (np.nan_to_num(f) for f in corners)
        bil = f00 * (1 - u) * (1 - w) + f10 * u * (1 - w) + f01 * (1 - u) * w + f11 * u * w
        tri = f00 + (f10 - f00) * u + (f01 - f00) * w
        out = np.where(cut, tri, bil)
        return out if out.ndim else float(out)

    def to_csv(self, fh=None, names=("x", "y", "value")) -> str:
        buf = io.StringIO()
        buf.write(",".join(names) + "\n")
        for x, y, z in zip(*self.points()):
            buf.write(f"{_fmt(x)},{_fmt(y)},{_fmt(z)}\n")
        text = buf.getvalue()
        if fh is not None:
            fh.write(text)
        return text


def simplex_surface(n: int, func) -> Surface:
    """Sample ``func(x, y)`` (vectorized) on an n x n grid over the unit simplex."""
    g = np.linspace(0.0, 1.0, n)
    X, Y = np.meshgrid(g, g, indexing="ij")
    inside = X + Y <= 1.0 + 1e-12
    vals = np.full(X.shape, np.nan)
    vals[inside] = func(X[inside], np.minimum(Y[inside], 1.0 - X[inside]))
    return Surface(Domain.SIMPLEX, g, g, vals)


# --- 1-D --------------------------------------------------------------------


def _lower_hull_indices(xs: np.ndarray, ys: np.ndarray) -> list[int]:
    """Monotone-chain lower hull of points sorted by x."""
    hull: list[int] = []
    for k in range(xs.size):
        while len(hull) >= 2:
            i, j = hull[-2], hull[-1]
            cross = (xs[j] - xs[i]) * (ys[k] - ys[i]) - (ys[j] - ys[i]) * (xs[k] - xs[i])
            if cross <= 0:
                hull.pop()
            else:
                break
        hull.append(k)
    return hull


def lower_envelope_1d(c: Curve) -> Curve:
    """Greatest convex function below the samples, re-sampled onto ``c.xs``."""
    if c.xs.size < 2:
        raise TooFewPoints("need at least two samples")
    h = _lower_hull_indices(c.xs, c.ys)
    env = np.interp(c.xs, c.xs[h], c.ys[h])
    env[h] = c.ys[h]
    return Curve(c.xs, np.minimum(env, c.ys))


def convexity_violation_1d(c: Curve) -> float:
    """Largest amount by which a sample exceeds the chord of its neighbours."""
    x, y = c.xs, c.ys
    lam = (x[1:-1] - x[:-2]) / (x[2:] - x[:-2])
    chord = (1 - lam) * y[:-2] + lam * y[2:]
    return float(max(0.0, np.max(y[1:-1] - chord))) if x.size > 2 else 0.0


# --- 2-D --------------------------------------------------------------------


def _lower_facets(pts: np.ndarray) -> np.ndarray:
    try:
        hull = ConvexHull(pts, qhull_options="Qt")
    except QhullError:
        # all samples coplanar: joggle; values are re-read from the samples
        hull = ConvexHull(pts, qhull_options="QJ")
    lower = hull.equations[:, 2] < -1e-12
    return hull.simplices[lower]


def _rasterize(tris: np.ndarray, pts: np.ndarray, gx, gy) -> np.ndarray:
    """Evaluate the piecewise-linear lower hull at every grid node.

    The value at each node is the maximum over projected triangles covering it.
    """
    px, py, pz = pts[:, 0], pts[:, 1], pts[:, 2]
    a, b, c = tris[:, 0], tris[:, 1], tris[:, 2]
    det = (px[b] - px[a]) * (py[c] - py[a]) - (px[c] - px[a]) * (py[b] - py[a])
    scale = (gx[-1] - gx[0]) * (gy[-1] - gy[0])
    keep = np.abs(det) > 1e-14 * scale
    tris, det = tris[keep], det[keep]
    a, b, c = tris[:, 0], tris[:, 1], tris[:, 2]
    xmin = np.minimum(np.minimum(px[a], px[b]), px[c])
    xmax = np.maximum(np.maximum(px[a], px[b]), px[c])
    ymin = np.minimum(np.minimum(py[a], py[b]), py[c])
    ymax = np.maximum(np.maximum(py[a], py[b]), py[c])
    eps = 1e-12
    i0 = np.searchsorted(gx, xmin - eps, side="left")
    i1 = np.searchsorted(gx, xmax + eps, side="right")
    j0 = np.searchsorted(gy, ymin - eps, side="left")
    j1 = np.searchsorted(gy, ymax + eps, side="right")
    ni, nj = i1 - i0, j1 - j0
    counts = ni * nj
    out = np.full(gx.size * gy.size, -np.inf)
    # chunk the triangles so the candidate (triangle, node) list stays bounded
    csum = np.cumsum(counts)
    start = 0
    while start < tris.shape[0]:
        base = csum[start] - counts[start]
        stop = max(int(np.searchsorted(csum, base + 4_000_000, side="right")), start + 1)
        sel = np.arange(start, stop)
        start = stop
        cnt = counts[sel]
        if cnt.sum() == 0:
            continue
        t = np.repeat(sel, cnt)
        offs = np.arange(cnt.sum()) - np.repeat(np.cumsum(cnt) - cnt, cnt)
        ii = i0[t] + offs // nj[t]
        jj = j0[t] + offs % nj[t]
        qx, qy = gx[ii], gy[jj]
        ta, tb, tc = a[t], b[t], c[t]
        l1 = ((qx - px[ta]) * (py[tc] - py[ta]) - (px[tc] - px[ta]) * (qy - py[ta])) / det[t]
        l2 = ((px[tb] - px[ta]) * (qy - py[ta]) - (qx - px[ta]) * (py[tb] - py[ta])) / det[t]
        l0 = 1.0 - l1 - l2
        inside = (l0 >= -1e-9) & (l1 >= -1e-9) & (l2 >= -1e-9)
        val = l0 * pz[ta] + l1 * pz[tb] + l2 * pz[tc]
        np.maximum.at(out, (ii * gy.size + jj)[inside], val[inside])
    return out.reshape(gx.size, gy.size)


def lower_envelope_2d(s: Surface) -> Surface:
    """Lower facets of the 3-D convex hull of (x, y, value), evaluated on the grid."""
    if s.domain is not Domain.SIMPLEX:
        raise DomainError("2-D convexification needs parameters entering the state linearly")
    x, y, z = s.points()
    if x.size < 3:
        raise DegenerateGrid("need at least three samples")
    xy = np.column_stack([x - x.mean(), y - y.mean()])
    if np.linalg.matrix_rank(xy, tol=1e-12) < 2:
        raise DegenerateGrid("samples are collinear")
    if x.size == 3:
        return s  # a single triangle is its own envelope
    pts = np.column_stack([x, y, z])
    tris = _lower_facets(pts)
    mask = s.mask
    env = _rasterize(tris, pts, s.grid_x, s.grid_y)
    vals = np.where(mask, np.minimum(np.where(np.isfinite(env), env, s.values), s.values), np.nan)
    return s.with_values(vals)


def chord_violation_2d(s: Surface, n_chords: int = 10_000, seed: int = 0) -> float:
    """Max of f(midpoint) - mean(f(ends)) over random grid chords with grid midpoints."""
    rng = np.random.default_rng(seed)
    m = s.mask
    ii, jj = np.nonzero(m)
    p = rng.integers(0, ii.size, size=(n_chords, 2))
    i1, j1, i2, j2 = ii[p[:, 0]], jj[p[:, 0]], ii[p[:, 1]], jj[p[:, 1]]
    # force equal parity so the midpoint is a node; the simplex is convex so it is in-domain
    i2 = np.where((i1 + i2) % 2 == 1, np.where(i2 > 0, i2 - 1, i2 + 1), i2)
    j2 = np.where((j1 + j2) % 2 == 1, np.where(j2 > 0, j2 - 1, j2 + 1), j2)
    ok = m[i2, j2]
    i1, j1, i2, j2 = i1[ok], j1[ok], i2[ok], j2[ok]
    mid = s.values[(i1 + i2) // 2, (j1 + j2) // 2]
    ends = 0.5 * (s.values[i1, j1] + s.values[i2, j2])
    return float(max(0.0, np.nanmax(mid - ends)))


# --- driver -----------------------------------------------------------------


def vw_mixture_entanglement(eps):
    """Convex hull of the preimage-minimized pure-state entanglement ``eps``.

    ``eps`` must be sampled over parameters on which the density matrix
    depends linearly: a Curve, or a Surface on the simplex.
    """
    if isinstance(eps, Curve):
        return lower_envelope_1d(eps)
    if isinstance(eps, Surface):
        if eps.domain is Domain.RECT:
            raise DomainError("refusing global convexification on a non-linear (rect) parametrization")
        return lower_envelope_2d(eps)
    raise TypeError(f"expected Curve or Surface, got {type(eps).__name__}")


def symmetric_pure_entanglement(n: int, ks: Sequence[int], q) -> np.ndarray:
    """E_sin2 of sum_j sqrt(q[:, j]) |S(n, ks[j])> (rows of q are probability vectors)."""
    q = np.clip(np.atleast_2d(np.asarray(q, dtype=float)), 0.0, 1.0)
    lam = closed_forms.symmetric_superposition_lambda(n, ks, np.sqrt(q))
    return 1.0 - lam**2


def symmetric_mixture_curve(n: int, k1: int, k2: int, grid: int = 2001):
    """(pure, mixed) curves over r for r|S(n,k1)><.| + (1-r)|S(n,k2)><.|."""
    r = np.linspace(0.0, 1.0, grid)
    pure = Curve(r, symmetric_pure_entanglement(n, (k1, k2), np.column_stack([r, 1 - r])))
    return pure, vw_mixture_entanglement(pure)


def symmetric_mixture_entanglement(n: int, probs: Sequence[float], grid: int | None = None) -> float:
    """Entanglement of sum_k p_k |S(n,k)><S(n,k)| (probs indexed by k = 0..n)."""
    p = np.asarray(probs, dtype=float)
    if p.size != n + 1 or np.any(p < -1e-12) or abs(p.sum() - 1.0) > 1e-10:
        raise ParamOutOfRange("probs must be a probability vector of length n + 1")
    ks = [int(k) for k in np.flatnonzero(p > 1e-15)]
    if len(ks) > 3:
        raise TooManyComponents(f"{len(ks)} nonzero components (at most 3 supported)")
    if len(ks) == 1:
        return 1.0 - closed_forms.lambda_symmetric(n, ks[0]) ** 2
    if len(ks) == 2:
        _, mixed = symmetric_mixture_curve(n, ks[0], ks[1], grid or 2001)
        return float(mixed(p[ks[0]]))
    m = grid or 201

    def pure(a, b):
        return symmetric_pure_entanglement(n, ks, np.column_stack([a, b, 1.0 - a - b]))

    env = lower_envelope_2d(simplex_surface(m, pure))
    return float(env(p[ks[0]], p[ks[1]]))
