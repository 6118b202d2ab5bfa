"""Geometric entanglement witnesses W = lambda^2 * 1 - |psi><psi|.

For any product state the overlap with psi is at most Lambda_max, so W is
non-negative on separable states exactly when lambda^2 >= Lambda_max^2.
The smallest such lambda^2 gives the optimal witness, whose value on psi
itself is -E_sin2(psi).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import hartree, states
from .errors import DimensionMismatch, InvalidWitness, NotEntangled
from .states import DensityMatrix, ProductState, PureState

ENTANGLED_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class WitnessOperator:
    lambda_sq: float
    reference: PureState

    def __post_init__(self):
        if not 0.0 <= self.lambda_sq < 1.0:
            raise InvalidWitness(f"lambda_sq must lie in [0, 1), got {self.lambda_sq}")

    @property
    def dims(self):
        return self.reference.dims

    def dense(self) -> np.ndarray:
        v = self.reference.amplitudes
        return self.lambda_sq * np.eye(v.size) - np.outer(v, v.conj())


def _lambda_max(psi: PureState, lambda_max, opts) -> float:
    if lambda_max is None:
        lambda_max = hartree.entanglement_eigenvalue(psi, opts).lambda_max
    if lambda_max >= 1.0 - ENTANGLED_TOL:
        raise NotEntangled("state is a product state")
    return float(lambda_max)


def witness_validity_range(psi: PureState, lambda_max: float | None = None, opts=None) -> tuple[float, float]:
    """Interval [lo, hi) of lambda^2 giving a valid witness for psi."""
    lam = _lambda_max(psi, lambda_max, opts)
    return lam * lam, 1.0


def make_witness(psi: PureState, lambda_sq: float, lambda_max: float | None = None, opts=None) -> WitnessOperator:
    """Validated witness; rejects lambda_sq below the validity range."""
    lo, _ = witness_validity_range(psi, lambda_max, opts)
    if lambda_sq < lo - ENTANGLED_TOL:
        raise InvalidWitness(f"lambda_sq = {lambda_sq} is below Lambda_max^2 = {lo}")
    return WitnessOperator(lambda_sq, psi)


def optimal_witness(psi: PureState, lambda_max: float | None = None, opts=None) -> WitnessOperator:
    lo, _ = witness_validity_range(psi, lambda_max, opts)
    return WitnessOperator(lo, psi)


def detector(w: WitnessOperator, rho) -> float:
    """Tr(W rho) for a density matrix, pure state or product state."""
    if isinstance(rho, ProductState):
        if tuple(rho.dims) != tuple(w.dims):
            raise DimensionMismatch(f"{rho.dims} vs {w.dims}")
        return w.lambda_sq - abs(states.overlap(rho, w.reference)) ** 2
    if isinstance(rho, PureState):
        rho = states.density(rho)
    if not isinstance(rho, DensityMatrix):
        raise TypeError(f"cannot evaluate a witness on {type(rho).__name__}")
    if tuple(rho.dims) != tuple(w.dims):
        raise DimensionMismatch(f"{rho.dims} vs {w.dims}")
    v = w.reference.amplitudes
    fid = float(np.real(np.vdot(v, rho.matrix @ v)))
    return w.lambda_sq * float(np.real(np.trace(rho.matrix))) - fid


def maximally_mixed(dims) -> DensityMatrix:
    D = math.prod(dims)
    return DensityMatrix(tuple(dims), np.eye(D) / D)
