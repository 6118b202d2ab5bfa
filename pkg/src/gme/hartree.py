"""Entanglement eigenvalue by alternating maximization over product states.

Each update replaces one factor by the normalized contraction of the state
tensor with the conjugates of all other factors. The overlap modulus never
decreases under such an update, so a sweep over all parties is a monotone
ascent step (higher-order power method for the best rank-1 approximation).
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Sequence

import numpy as np
from scipy import optimize

from . import states
from .closed_forms import _maximize_1d
from .errors import (
    BadParty,
    DimensionMismatch,
    NotBipartite,
    NotSymmetric,
    NotTracePreserving,
    SingleParty,
)
from .states import Ensemble, ProductState, PureState


@dataclass(frozen=True)
class SolverOptions:
    restarts: int = 20
    tol: float = 1e-12
    max_sweeps: int = 10_000
    seed: int = 0

    def __post_init__(self):
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if not self.tol > 0:
            raise ValueError("tol must be positive")


@dataclass(frozen=True, eq=False)
class EntanglementResult:
    lambda_max: float
    e_sin2: float
    e_log: float
    maximizer: ProductState
    restarts_used: int
    sweeps: int
    converged: bool
    history: tuple = field(default=(), repr=False)

    @classmethod
    def from_lambda(cls, lam, maximizer, restarts_used=1, sweeps=0, converged=True, history=()):
        lam = float(min(max(lam, 0.0), 1.0))
        return cls(
            lambda_max=lam,
            e_sin2=1.0 - lam * lam,
            e_log=0.0 - math.log(lam * lam) if lam > 0 else math.inf,
            maximizer=maximizer,
            restarts_used=restarts_used,
            sweeps=sweeps,
            converged=converged,
            history=tuple(history),
        )

    def to_dict(self) -> dict:
        d = asdict(self)
        d.pop("history")
        d["maximizer"] = [[[z.real, z.imag] for z in f] for f in self.maximizer.factors]
        return d


def _contract_except(t: np.ndarray, conj_factors: Sequence[np.ndarray], i: int) -> np.ndarray:
    v = t
    for j in range(len(conj_factors) - 1, i, -1):
        v = v @ conj_factors[j]
    for j in range(i):
        v = np.tensordot(conj_factors[j], v, axes=(0, 0))
    return v


def hopm(t: np.ndarray, factors: Sequence[np.ndarray], tol: float = 1e-12, max_sweeps: int = 10_000):
    """Run alternating updates from ``factors`` on the amplitude tensor ``t``.

    Returns ``(lam, factors, sweeps, converged, history)`` where history holds
    the overlap modulus before the first sweep and after every sweep.
    """
    factors = [np.array(f, dtype=np.complex128) for f in factors]
    conj = [f.conj() for f in factors]
    n = len(factors)
    lam = abs(complex(_contract_except(t, conj, n - 1) @ conj[n - 1]))
    history = [lam]
    converged = False
    sweeps = 0
    for sweeps in range(1, max_sweeps + 1):
        for i in range(n):
            v = _contract_except(t, conj, i)
            nv = np.linalg.norm(v)
            if nv > 0:
                factors[i] = v / nv
                conj[i] = factors[i].conj()
        new = float(nv)
        history.append(new)
        if abs(new - lam) < tol:
            lam = new
            converged = True
            break
        lam = new
    return lam, factors, sweeps, converged, history


def entanglement_eigenvalue(psi: PureState, opts: SolverOptions | None = None) -> EntanglementResult:
    """Maximal overlap of ``psi`` with product states, best of several restarts."""
    opts = opts or SolverOptions()
    if psi.num_parties < 2:
        raise SingleParty("entanglement needs at least two parties")
    t = psi.tensor()
    best = None
    all_converged = True
    total_sweeps = 0
    for child in np.random.SeedSequence(opts.seed).spawn(opts.restarts):
        rng = np.random.default_rng(child)
        init = [states.random_vector(d, rng) for d in psi.dims]
        lam, factors, sweeps, conv, hist = hopm(t, init, opts.tol, opts.max_sweeps)
        all_converged &= conv
        total_sweeps += sweeps
        if best is None or lam > best[0]:
            best = (lam, factors, hist)
    lam, factors, hist = best
    return EntanglementResult.from_lambda(
        lam,
        ProductState(tuple(f / np.linalg.norm(f) for f in factors)),
        restarts_used=opts.restarts,
        sweeps=total_sweeps,
        converged=all_converged,
        history=hist,
    )


def schmidt_lambda(psi: PureState) -> float:
    """Largest Schmidt coefficient of a bipartite state."""
    if psi.num_parties != 2:
        raise NotBipartite(f"{psi.num_parties} parties")
    return float(np.linalg.svd(psi.tensor(), compute_uv=False)[0])


def schmidt_result(psi: PureState) -> EntanglementResult:
    """Exact bipartite result from the singular value decomposition."""
    if psi.num_parties != 2:
        raise NotBipartite(f"{psi.num_parties} parties")
    u, s, vh = np.linalg.svd(psi.tensor())
    # <a (x) b|psi> = s_0 for a = u[:,0], b = conj(vh[0])
    return EntanglementResult.from_lambda(s[0], ProductState((u[:, 0], vh[0].conj())))


def _symmetric_weight_amplitudes(psi: PureState) -> np.ndarray:
    """Common amplitude per number of 1s; raises NotSymmetric otherwise."""
    if any(d != 2 for d in psi.dims):
        raise NotSymmetric("symmetric ansatz is implemented for qubits")
    n = psi.num_parties
    w = states._hamming_weights(n)
    amps = psi.amplitudes
    b = np.zeros(n + 1, dtype=np.complex128)
    for ones in range(n + 1):
        block = amps[w == ones]
        if np.max(np.abs(block - block[0])) > 1e-12:
            raise NotSymmetric("amplitudes are not permutation invariant")
        b[ones] = block[0]
    return b


def symmetric_ansatz_lambda(psi: PureState, params: int | None = None, grid: int = 1024) -> float:
    """Best overlap with (c0|0> + c1|1>)^n for a permutation-symmetric qubit state.

    ``params=1`` scans c0 = cos(theta), c1 = sin(theta); ``params=2`` adds a
    relative phase on c1. By default a single parameter is used when every
    amplitude is real and non-negative.
    """
    b = _symmetric_weight_amplitudes(psi)
    n = psi.num_parties
    # sum over labels = sum_w C(n,w) b_w c0^{n-w} conj-weighted c1^w
    coef = np.array([math.comb(n, w) for w in range(n + 1)]) * b
    if params is None:
        nonneg = np.all(np.abs(b.imag) < 1e-15) and np.all(b.real > -1e-15)
        params = 1 if nonneg else 2
    ws = np.arange(n + 1)

    def f(theta, delta=0.0):
        theta = np.asarray(theta, dtype=float)[..., None]
        delta = np.asarray(delta, dtype=float)[..., None]
        terms = coef * np.cos(theta) ** (n - ws) * (np.sin(theta) * np.exp(-1j * delta)) ** ws
        return np.abs(terms.sum(axis=-1))

    if params == 1:
        return min(_maximize_1d(f, 0.0, math.pi / 2, grid)[1], 1.0)
    if params != 2:
        raise ValueError("params must be 1 or 2")
    th = np.linspace(0, math.pi / 2, grid)
    de = np.linspace(0, 2 * math.pi, grid, endpoint=False)
    vals = f(th[:, None], de[None, :])
    best = float(vals.max())
    for flat in np.argsort(vals, axis=None)[-4:]:
        i, j = np.unravel_index(flat, vals.shape)
        res = optimize.minimize(
            lambda p: -float(f(p[0], p[1])), x0=[th[i], de[j]], method="Nelder-Mead",
            options={"xatol": 1e-12, "fatol": 1e-15, "maxiter": 4000},
        )
        best = max(best, -res.fun)
    return min(best, 1.0)


def apply_unilocal_channel(psi: PureState, kraus: Sequence[np.ndarray], party: int) -> Ensemble:
    """Ensemble {(p_k, V_k psi / sqrt(p_k))} for Kraus operators acting on one party."""
    d = psi.dims[party] if 0 <= party < psi.num_parties else None
    if d is None:
        raise BadParty(f"party {party}")
    kraus = [np.asarray(k, dtype=np.complex128) for k in kraus]
    if any(k.shape != (d, d) for k in kraus):
        raise DimensionMismatch(f"Kraus operators must be {d}x{d}")
    if np.max(np.abs(sum(k.conj().T @ k for k in kraus) - np.eye(d))) > 1e-10:
        raise NotTracePreserving("sum_k V_k^dag V_k != identity")
    t = psi.tensor()
    entries = []
    for k in kraus:
        v = np.moveaxis(np.tensordot(k, t, axes=(1, party)), 0, party).reshape(-1)
        p = float(np.vdot(v, v).real)
        if p >= 1e-14:
            entries.append((p, states.make_pure(psi.dims, v)))
    total = sum(p for p, _ in entries)
    return Ensemble(tuple((p / total, s) for p, s in entries))


def random_kraus(d: int, outcomes: int, rng: np.random.Generator) -> list[np.ndarray]:
    """Random trace-preserving Kraus set from a Haar isometry d -> outcomes*d."""
    z = rng.standard_normal((outcomes * d, d)) + 1j * rng.standard_normal((outcomes * d, d))
    q, _ = np.linalg.qr(z)
    return [q[k * d:(k + 1) * d, :] for k in range(outcomes)]


def average_lambda_sq(ensemble: Ensemble, opts: SolverOptions | None = None) -> float:
    """sum_k p_k Lambda_k^2 over the ensemble members."""
    return sum(p * entanglement_eigenvalue(s, opts).lambda_max ** 2 for p, s in ensemble)
