"""Analytic entanglement eigenvalues for symmetric and superposition states.

Symmetric-ansatz families are parametrized by the product state
``(cos(theta)|0> + sin(theta)|1>)^{\\otimes n}`` with ``t = tan(theta)``. The
cubic stationarity conditions are solved through the companion matrix, and the
reported eigenvalue is the best overlap over every non-negative real root plus
the two end points ``t = 0`` and ``t = inf``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy import optimize

from .errors import BadIndices, CountMismatch, OutOfRange, ParamOutOfRange

SQRT3 = math.sqrt(3.0)


@dataclass(frozen=True)
class CubicSolution:
    coefficients: tuple  # highest degree first
    real_roots: tuple
    admissible: tuple  # (t, Lambda(t)) for t >= 0, t = inf allowed
    chosen_t: float
    lam: float = field(default=float("nan"))


def companion_roots(coeffs: Sequence[float], imag_tol: float = 1e-7) -> np.ndarray:
    """Real roots of a real polynomial (highest degree first).

    Leading coefficients that vanish relative to the largest one are dropped,
    the remaining roots come from the companion-matrix spectrum and get one
    Newton step each.
    """
    c = np.asarray(coeffs, dtype=float)
    scale = np.max(np.abs(c)) if c.size else 0.0
    if scale == 0.0:
        return np.empty(0)
    nz = np.flatnonzero(np.abs(c) > 1e-14 * scale)
    c = c[nz[0]:]
    deg = c.size - 1
    if deg < 1:
        return np.empty(0)
    comp = np.zeros((deg, deg))
    comp[0, :] = -c[1:] / c[0]
    comp[1:, :-1] = np.eye(deg - 1)
    ev = np.linalg.eigvals(comp)
    ev = ev[np.abs(ev.imag) <= imag_tol * (1.0 + np.abs(ev))].real
    dc = np.polyder(c)
    out = []
    for r in ev:
        d = np.polyval(dc, r)
        if d != 0.0:
            step = np.polyval(c, r) / d
            if abs(step) < 1e-3 * (1.0 + abs(r)):
                r = r - step
        out.append(r)
    return np.sort(np.array(out))


def _qubit_cubic_overlap(amp_pows, t):
    """sum_j a_j t^j / (1+t^2)^{3/2}; handles t = inf."""
    t = np.asarray(t, dtype=float)
    a0, a1, a2, a3 = amp_pows
    with np.errstate(over="ignore", invalid="ignore"):
        fin = (a0 + a1 * t + a2 * t**2 + a3 * t**3) / (1.0 + t**2) ** 1.5
    return np.where(np.isinf(t), a3, fin)


def _solve_three_qubit(amp_pows, cubic):
    roots = companion_roots(cubic)
    cands = sorted({float(t) for t in roots if t >= 0.0} | {0.0}) + [math.inf]
    lams = [float(_qubit_cubic_overlap(amp_pows, t)) for t in cands]
    best = int(np.argmax(lams))
    return CubicSolution(
        coefficients=tuple(float(x) for x in cubic),
        real_roots=tuple(float(r) for r in roots),
        admissible=tuple(zip(cands, lams)),
        chosen_t=cands[best],
        lam=lams[best],
    )


def ghzw_pure_lambda(x: float, y: float):
    """Entanglement eigenvalue of sqrt(x)|GHZ> + sqrt(y)|W> + sqrt(1-x-y)|W~>.

    Returns ``(CubicSolution, Lambda)``.
    """
    if x < -1e-12 or y < -1e-12 or x + y > 1 + 1e-12:
        raise ParamOutOfRange(f"(x, y) = ({x}, {y}) outside the simplex")
    x, y = max(x, 0.0), max(y, 0.0)
    z = max(1.0 - x - y, 0.0)
    A, B, C = math.sqrt(x / 2), math.sqrt(3 * y), math.sqrt(3 * z)
    # 3A(t^2 - t) + B(1 - 2t^2) + C(2t - t^3) = 0
    cubic = (-C, 3 * A - 2 * B, -3 * A + 2 * C, B)
    sol = _solve_three_qubit((A, B, C, A), cubic)
    return sol, sol.lam


def ww_lambda(s: float):
    """Entanglement eigenvalue of sqrt(s)|W> + sqrt(1-s) e^{i phi}|W~>.

    Returns ``(CubicSolution, Lambda)``; the result does not depend on phi.
    """
    if not 0.0 <= s <= 1.0:
        raise ParamOutOfRange(f"s = {s} outside [0, 1]")
    a, b = math.sqrt(1 - s), math.sqrt(s)
    cubic = (a, 2 * b, -2 * a, -b)
    roots = companion_roots(cubic)

    def lam(t):
        if not math.isfinite(t):
            return 0.0
        th = math.atan(t)
        return SQRT3 / 2 * math.sin(2 * th) * (b * math.cos(th) + a * math.sin(th))

    cands = sorted({float(t) for t in roots if t >= 0.0} | {0.0}) + [math.inf]
    vals = [lam(t) for t in cands]
    best = int(np.argmax(vals))
    sol = CubicSolution(
        coefficients=cubic,
        real_roots=tuple(float(r) for r in roots),
        admissible=tuple(zip(cands, vals)),
        chosen_t=cands[best],
        lam=vals[best],
    )
    return sol, sol.lam


def ghzw_lambda_batch(x, y) -> np.ndarray:
    """Vectorized ``ghzw_pure_lambda`` over broadcast arrays x, y."""
    x, y = np.broadcast_arrays(np.asarray(x, float), np.asarray(y, float))
    shape = x.shape
    x = np.clip(x.ravel(), 0.0, 1.0)
    y = np.clip(y.ravel(), 0.0, 1.0)
    z = np.clip(1.0 - x - y, 0.0, 1.0)
    A, B, C = np.sqrt(x / 2), np.sqrt(3 * y), np.sqrt(3 * z)
    coef = np.stack([-C, 3 * A - 2 * B, -3 * A + 2 * C, B], axis=1)
    best = A.copy()  # t = 0 and t = inf both give sqrt(x/2)
    scale = np.max(np.abs(coef), axis=1)
    cubic = np.abs(coef[:, 0]) > 1e-10 * scale
    idx = np.flatnonzero(cubic)
    if idx.size:
        c = coef[idx]
        comp = np.zeros((idx.size, 3, 3))
        comp[:, 0, :] = -c[:, 1:] / c[:, :1]
        comp[:, 1, 0] = 1.0
        comp[:, 2, 1] = 1.0
        ev = np.linalg.eigvals(comp)
        real = np.abs(ev.imag) <= 1e-7 * (1.0 + np.abs(ev))
        t = ev.real
        # one Newton step on every candidate
        p = ((c[:, :1] * t + c[:, 1:2]) * t + c[:, 2:3]) * t + c[:, 3:4]
        dp = (3 * c[:, :1] * t + 2 * c[:, 1:2]) * t + c[:, 2:3]
        with np.errstate(divide="ignore", invalid="ignore"):
            step = np.where(dp != 0, p / dp, 0.0)
        step = np.where(np.abs(step) < 1e-3 * (1 + np.abs(t)), step, 0.0)
        t = t - step
        ok = real & (t >= 0)
        tt = np.where(ok, t, 0.0)
        lam = _qubit_cubic_overlap((A[idx, None], B[idx, None], C[idx, None], A[idx, None]), tt)
        lam = np.where(ok, lam, -np.inf)
        best[idx] = np.maximum(best[idx], lam.max(axis=1))
    for i in np.flatnonzero(~cubic):
        best[i] = ghzw_pure_lambda(x[i], min(y[i], 1.0 - x[i]))[1]
    return np.minimum(best, 1.0).reshape(shape)


def lambda_symmetric(n: int, k: int) -> float:
    if n < 1 or not 0 <= k <= n:
        raise OutOfRange(f"need 0 <= k <= n, got n={n}, k={k}")
    return lambda_symmetric_qudit(n, (k, n - k))


def lambda_symmetric_qudit(n: int, counts: Sequence[int]) -> float:
    counts = [int(c) for c in counts]
    if any(c < 0 for c in counts) or sum(counts) != n:
        raise CountMismatch(f"counts {counts} must be non-negative and sum to {n}")
    # work in logs; 0^0 = 1
    log_val = 0.5 * (math.lgamma(n + 1) - sum(math.lgamma(c + 1) for c in counts))
    log_val += sum(0.5 * c * math.log(c / n) for c in counts if c > 0)
    return math.exp(log_val)


def det_lambda_squared(n: int) -> float:
    if n < 2:
        raise OutOfRange("n >= 2")
    return 1.0 / math.factorial(n)


def det_lambda_squared_generalized(d: int, p: int) -> float:
    if d < 2 or p < 1:
        raise OutOfRange("need d >= 2 and p >= 1")
    return 1.0 / math.factorial(d**p)


def symmetric_overlap(n: int, k: int, theta):
    """<(cos th|0> + sin th|1>)^n | S(n,k)> for real theta."""
    theta = np.asarray(theta, dtype=float)
    return math.sqrt(math.comb(n, k)) * np.cos(theta) ** k * np.sin(theta) ** (n - k)


def _maximize_1d(f, lo: float, hi: float, grid: int, xtol: float = 1e-12) -> tuple[float, float]:
    """Grid scan of a vectorized f on [lo, hi] followed by bounded refinement."""
    xs = np.linspace(lo, hi, grid)
    vals = f(xs)
    i = int(np.argmax(vals))
    a, b = xs[max(i - 1, 0)], xs[min(i + 1, grid - 1)]
    res = optimize.minimize_scalar(
        lambda u: -float(f(np.array([u]))[0]), bounds=(a, b), method="bounded",
        options={"xatol": xtol},
    )
    if -res.fun >= vals[i]:
        return float(res.x), float(-res.fun)
    return float(xs[i]), float(vals[i])


def ss_lambda(n: int, k1: int, k2: int, r: float, grid: int = 4096) -> float:
    """Entanglement eigenvalue of sqrt(r)|S(n,k1)> + sqrt(1-r) e^{i phi}|S(n,k2)>."""
    if k1 == k2 or not (0 <= k1 <= n and 0 <= k2 <= n):
        raise BadIndices(f"need distinct k1, k2 in [0, {n}], got {k1}, {k2}")
    if not 0.0 <= r <= 1.0:
        raise ParamOutOfRange(f"r = {r} outside [0, 1]")
    a, b = math.sqrt(r), math.sqrt(1 - r)

    def f(th):
        return a * symmetric_overlap(n, k1, th) + b * symmetric_overlap(n, k2, th)

    return _maximize_1d(f, 0.0, math.pi / 2, grid)[1]


def gw_overlap(s: float, phi: float, theta, delta):
    """|<(cos th|0> + e^{i delta} sin th|1>)^3 | sqrt(s) GHZ + sqrt(1-s) e^{i phi} W>|."""
    c, sn = np.cos(theta), np.sin(theta)
    e = np.exp(-1j * np.asarray(delta))
    amp = math.sqrt(s / 2) * (c**3 + (sn * e) ** 3)
    amp = amp + math.sqrt(1 - s) * np.exp(1j * phi) * SQRT3 * c**2 * sn * e
    return np.abs(amp)


def gw_lambda(s: float, phi: float, grid: int = 512) -> float:
    if not 0.0 <= s <= 1.0:
        raise ParamOutOfRange(f"s = {s} outside [0, 1]")
    th = np.linspace(0.0, math.pi / 2, grid)
    de = np.linspace(0.0, 2 * math.pi, grid, endpoint=False)
    vals = gw_overlap(s, phi, th[:, None], de[None, :])
    best = -1.0
    # polish the few best grid cells; distinct basins can be nearly degenerate
    for flat in np.argsort(vals, axis=None)[-4:]:
        i, j = np.unravel_index(flat, vals.shape)
        res = optimize.minimize(
            lambda p: -float(gw_overlap(s, phi, p[0], p[1])),
            x0=[th[i], de[j]], method="Nelder-Mead",
            options={"xatol": 1e-12, "fatol": 1e-15, "maxiter": 4000},
        )
        best = max(best, -res.fun, vals[i, j])
    return float(min(best, 1.0))


def gw_entanglement(s: float, phi: float, grid: int = 512) -> float:
    """E_sin2 of sqrt(s)|GHZ> + sqrt(1-s) e^{i phi}|W>."""
    if not 0.0 <= phi < 2 * math.pi + 1e-12:
        raise ParamOutOfRange(f"phi = {phi} outside [0, 2 pi)")
    return 1.0 - gw_lambda(s, phi, grid) ** 2


def golden_max_batch(f, lo, hi, iters: int = 60):
    """Vectorized golden-section maximization of f(u) (elementwise) on [lo, hi]."""
    lo = np.array(lo, dtype=float)
    hi = np.array(hi, dtype=float)
    g = (math.sqrt(5) - 1) / 2
    a = hi - g * (hi - lo)
    b = lo + g * (hi - lo)
    fa, fb = f(a), f(b)
    for _ in range(iters):
        left = fa >= fb
        hi = np.where(left, b, hi)
        lo = np.where(left, lo, a)
        new = np.where(left, hi - g * (hi - lo), lo + g * (hi - lo))
        fnew = f(new)
        a, b, fa, fb = (
            np.where(left, new, b),
            np.where(left, a, new),
            np.where(left, fnew, fb),
            np.where(left, fa, fnew),
        )
    u = np.where(fa >= fb, a, b)
    return u, np.maximum(fa, fb)


def symmetric_superposition_lambda(n: int, ks: Sequence[int], amps, grid: int = 1024) -> np.ndarray:
    """Entanglement eigenvalue of sum_j amps[:, j] |S(n, ks[j])> for non-negative amps.

    ``amps`` has shape (N, len(ks)); each row is one state. The symmetric
    ansatz with real non-negative factor amplitudes is optimal for such rows.
    """
    amps = np.atleast_2d(np.asarray(amps, dtype=float))
    th = np.linspace(0.0, math.pi / 2, grid)
    basis = np.stack([symmetric_overlap(n, k, th) for k in ks], axis=0)  # (K, grid)
    out = np.empty(amps.shape[0])
    theta0 = np.empty(amps.shape[0])
    step = max(1, 2_000_000 // grid)
    for s in range(0, amps.shape[0], step):
        vals = amps[s:s + step] @ basis
        i = np.argmax(vals, axis=1)
        theta0[s:s + step] = th[i]
        out[s:s + step] = vals[np.arange(i.size), i]
    h = th[1] - th[0]
    lo = np.clip(theta0 - h, 0.0, math.pi / 2)
    hi = np.clip(theta0 + h, 0.0, math.pi / 2)

    def f(u):
        return sum(amps[:, j] * symmetric_overlap(n, k, u) for j, k in enumerate(ks))

    _, refined = golden_max_batch(f, lo, hi)
    return np.minimum(np.maximum(out, refined), 1.0)
