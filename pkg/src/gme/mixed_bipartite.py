"""Closed-form entanglement of two-qubit, Werner and isotropic states."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import BadShape, ParamOutOfRange
from .states import DensityMatrix

C_SNAP = 64 * np.finfo(float).eps
_SYY = np.kron(np.array([[0, -1j], [1j, 0]]), np.array([[0, -1j], [1j, 0]]))


class Family(enum.Enum):
    TWO_QUBIT = "two-qubit"
    WERNER = "werner"
    ISOTROPIC = "isotropic"


_RANGES = {Family.TWO_QUBIT: (0.0, 1.0), Family.WERNER: (-1.0, 1.0), Family.ISOTROPIC: (0.0, 1.0)}


@dataclass(frozen=True)
class BipartiteFamilyPoint:
    family: Family
    d: int
    parameter: float

    def __post_init__(self):
        fam = Family(self.family)
        object.__setattr__(self, "family", fam)
        lo, hi = _RANGES[fam]
        if not lo <= self.parameter <= hi:
            raise ParamOutOfRange(f"{fam.value} parameter {self.parameter} outside [{lo}, {hi}]")
        if self.d < 2 or (fam is Family.TWO_QUBIT and self.d != 2):
            raise ParamOutOfRange(f"bad local dimension {self.d}")

    def entanglement(self) -> float:
        if self.family is Family.TWO_QUBIT:
            return e_from_concurrence(self.parameter)
        if self.family is Family.WERNER:
            return e_werner(self.parameter)
        return e_isotropic(self.d, self.parameter)


def _two_qubit_matrix(rho) -> np.ndarray:
    if not isinstance(rho, DensityMatrix) or tuple(rho.dims) != (2, 2):
        raise BadShape("expected a two-qubit density matrix")
    return rho.matrix


def concurrence(rho: DensityMatrix) -> float:
    """Wootters concurrence C = max(0, mu1 - mu2 - mu3 - mu4).

    The mu are the square roots of the eigenvalues of rho (syy rho* syy).
    They are computed as singular values of tau = X^T syy X with rho = X X^dag,
    which avoids square roots of eigenvalue noise in rank-deficient cases.
    """
    m = _two_qubit_matrix(rho)
    w, v = np.linalg.eigh(m)
    w = np.where(w < 1e-14 * max(1.0, w.max()), 0.0, w)
    x = v * np.sqrt(w)
    mu = np.linalg.svd(x.T @ _SYY @ x, compute_uv=False)
    c = mu[0] - mu[1] - mu[2] - mu[3]
    # 1 - C^2 is ill-conditioned at C = 1; rounding-level gaps are not resolvable
    if c > 1.0 - C_SNAP:
        return 1.0
    return float(max(0.0, c))


def e_from_concurrence(c: float) -> float:
    # (1 - sqrt(1 - C^2)) / 2 rewritten without cancellation, so E = 0 iff C = 0
    c2 = c * c
    return 0.5 * c2 / (1.0 + math.sqrt(max(0.0, 1.0 - c2)))


def e_two_qubit(rho: DensityMatrix) -> float:
    return e_from_concurrence(concurrence(rho))


def e_werner(f: float) -> float:
    if not -1.0 <= f <= 1.0:
        raise ParamOutOfRange(f"f must lie in [-1, 1], got {f}")
    return e_from_concurrence(-f) if f < 0 else 0.0


def _check_iso(d: int, F: float):
    if d < 2 or not 0.0 <= F <= 1.0:
        raise ParamOutOfRange(f"need d >= 2 and F in [0, 1], got d={d}, F={F}")


def e_isotropic(d: int, F: float) -> float:
    _check_iso(d, F)
    if F <= 1.0 / d:
        return 0.0
    return max(0.0, 1.0 - (math.sqrt(F) + math.sqrt((1.0 - F) * (d - 1))) ** 2 / d)


def r_function(d: int, F: float) -> float:
    """Least pure-state entanglement at fidelity F (defined for F >= 1/d)."""
    _check_iso(d, F)
    if F < 1.0 / d - 1e-15:
        raise ParamOutOfRange(f"R is defined for F >= 1/d, got F={F}")
    return 1.0 - (math.sqrt(F / d) + math.sqrt(max(0.0, (F + d - 1) / d - F))) ** 2
