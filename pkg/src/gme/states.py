"""State containers, canonical constructors and linear-algebra helpers.

Amplitude ordering is row-major with party 0 most significant, i.e. the flat
index of basis label (p_0, ..., p_{n-1}) is ``np.ravel_multi_index(p, dims)``.
Party indices are 0-based throughout the package.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    BadParty,
    BadShape,
    CountMismatch,
    DimensionMismatch,
    InvalidState,
    OutOfRange,
    ParamOutOfRange,
    TooLarge,
    WeightSumError,
    ZeroVector,
)

NORM_TOL = 1e-12
ZERO_NORM = 1e-14
PSD_TOL = -1e-10
WEIGHT_TOL = 1e-10
MAX_AMPLITUDES = 2**24
MAX_PARTIES = 12


def _frozen(a):
    a = np.array(a, dtype=np.complex128)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class PureState:
    dims: tuple
    amplitudes: np.ndarray

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if len(dims) < 1 or any(d < 2 for d in dims):
            raise DimensionMismatch(f"party dimensions must be >= 2, got {dims}")
        amps = _frozen(self.amplitudes).reshape(-1)
        if amps.size != math.prod(dims):
            raise DimensionMismatch(f"{amps.size} amplitudes for dims {dims}")
        if abs(np.vdot(amps, amps).real - 1.0) > NORM_TOL:
            raise InvalidState("amplitudes are not normalized")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def num_parties(self) -> int:
        return len(self.dims)

    def tensor(self) -> np.ndarray:
        return self.amplitudes.reshape(self.dims)

    def __repr__(self):
        return f"PureState(dims={self.dims})"


@dataclass(frozen=True, eq=False)
class ProductState:
    factors: tuple

    def __post_init__(self):
        factors = tuple(_frozen(f).reshape(-1) for f in self.factors)
        if not factors:
            raise DimensionMismatch("a product state needs at least one factor")
        for f in factors:
            if f.size < 2:
                raise DimensionMismatch("factor dimension must be >= 2")
            if abs(np.vdot(f, f).real - 1.0) > NORM_TOL:
                raise InvalidState("product-state factor is not normalized")
        object.__setattr__(self, "factors", factors)

    @property
    def dims(self) -> tuple:
        return tuple(f.size for f in self.factors)

    @property
    def num_parties(self) -> int:
        return len(self.factors)

    def to_pure(self) -> PureState:
        amps = self.factors[0]
        for f in self.factors[1:]:
            amps = np.kron(amps, f)
        return PureState(self.dims, amps)

    def __repr__(self):
        return f"ProductState(dims={self.dims})"


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    dims: tuple
    matrix: np.ndarray

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if len(dims) < 1 or any(d < 2 for d in dims):
            raise DimensionMismatch(f"party dimensions must be >= 2, got {dims}")
        m = _frozen(self.matrix)
        D = math.prod(dims)
        if m.shape != (D, D):
            raise DimensionMismatch(f"matrix shape {m.shape} does not match dims {dims}")
        if np.max(np.abs(m - m.conj().T)) > NORM_TOL:
            raise InvalidState("matrix is not Hermitian")
        if abs(np.trace(m).real - 1.0) > NORM_TOL:
            raise InvalidState("trace is not 1")
        if np.linalg.eigvalsh(m).min() < PSD_TOL:
            raise InvalidState("matrix is not positive semidefinite")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "matrix", m)

    @property
    def num_parties(self) -> int:
        return len(self.dims)

    def __repr__(self):
        return f"DensityMatrix(dims={self.dims})"


@dataclass(frozen=True, eq=False)
class Ensemble:
    entries: tuple

    def __post_init__(self):
        entries = tuple((float(p), s) for p, s in self.entries)
        if not entries:
            raise WeightSumError("empty ensemble")
        dims = entries[0][1].dims
        for p, s in entries:
            if not 0 < p <= 1 + WEIGHT_TOL:
                raise WeightSumError(f"weight {p} outside (0, 1]")
            if s.dims != dims:
                raise DimensionMismatch("ensemble members have different dims")
        total = sum(p for p, _ in entries)
        if abs(total - 1.0) > WEIGHT_TOL:
            raise WeightSumError(f"weights sum to {total}")
        object.__setattr__(self, "entries", entries)

    @property
    def dims(self) -> tuple:
        return self.entries[0][1].dims

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)


# --- constructors -----------------------------------------------------------


def make_pure(dims: Sequence[int], amplitudes) -> PureState:
    """Normalize ``amplitudes`` into a PureState."""
    dims = tuple(int(d) for d in dims)
    if any(d < 2 for d in dims) or not dims:
        raise DimensionMismatch(f"party dimensions must be >= 2, got {dims}")
    amps = np.asarray(amplitudes, dtype=np.complex128).reshape(-1)
    if amps.size != math.prod(dims):
        raise DimensionMismatch(f"{amps.size} amplitudes for dims {dims}")
    norm = np.linalg.norm(amps)
    if norm <= ZERO_NORM:
        raise ZeroVector("cannot normalize a (numerically) zero vector")
    return PureState(dims, amps / norm)


def make_product(factors: Iterable) -> ProductState:
    out = []
    for f in factors:
        f = np.asarray(f, dtype=np.complex128).reshape(-1)
        norm = np.linalg.norm(f)
        if norm <= ZERO_NORM:
            raise ZeroVector("zero product-state factor")
        out.append(f / norm)
    return ProductState(tuple(out))


def basis_state(dims: Sequence[int], labels: Sequence[int]) -> PureState:
    dims = tuple(dims)
    amps = np.zeros(math.prod(dims), dtype=np.complex128)
    amps[np.ravel_multi_index(tuple(labels), dims)] = 1.0
    return PureState(dims, amps)


def _hamming_weights(n: int) -> np.ndarray:
    """Number of 1s in each n-bit basis label (row-major ordering)."""
    idx = np.arange(2**n)
    return np.array([bin(i).count("1") for i in idx])


def symmetric_state(n: int, k: int) -> PureState:
    """Equal-amplitude superposition of all n-qubit labels with exactly k zeros."""
    if n < 1 or not 0 <= k <= n:
        raise OutOfRange(f"need 0 <= k <= n, got n={n}, k={k}")
    zeros = n - _hamming_weights(n)
    amps = np.where(zeros == k, 1.0, 0.0) / math.sqrt(math.comb(n, k))
    return PureState((2,) * n, amps)


def symmetric_qudit_state(n: int, counts: Sequence[int]) -> PureState:
    counts = [int(c) for c in counts]
    if any(c < 0 for c in counts) or sum(counts) != n:
        raise CountMismatch(f"counts {counts} must be non-negative and sum to {n}")
    d = len(counts)
    if d < 2:
        raise CountMismatch("need at least two levels")
    if d**n > MAX_AMPLITUDES:
        raise TooLarge(f"{d}^{n} amplitudes")
    word = [lvl for lvl, c in enumerate(counts) for _ in range(c)]
    amp = math.sqrt(math.prod(math.factorial(c) for c in counts) / math.factorial(n))
    amps = np.zeros(d**n, dtype=np.complex128)
    for perm in set(itertools.permutations(word)):
        amps[np.ravel_multi_index(perm, (d,) * n)] = amp
    return PureState((d,) * n, amps)


def ghz(n: int) -> PureState:
    if n < 2:
        raise OutOfRange("GHZ needs n >= 2")
    if n > 24:
        raise TooLarge(f"{n} qubits")
    amps = np.zeros(2**n)
    amps[0] = amps[-1] = 1 / math.sqrt(2)
    return PureState((2,) * n, amps)


def w_state() -> PureState:
    return symmetric_state(3, 2)


def w_tilde() -> PureState:
    return symmetric_state(3, 1)


def _perm_sign(p) -> int:
    p = list(p)
    sign = 1
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sign = -sign
    return sign


def determinant_state(n: int) -> PureState:
    """Totally antisymmetric state of n parties with n levels each."""
    if n < 2:
        raise OutOfRange("determinant state needs n >= 2")
    if n**n > MAX_AMPLITUDES:
        raise TooLarge(f"{n}^{n} amplitudes")
    amps = np.zeros(n**n)
    for perm in itertools.permutations(range(n)):
        amps[np.ravel_multi_index(perm, (n,) * n)] = _perm_sign(perm)
    return PureState((n,) * n, amps / math.sqrt(math.factorial(n)))


def generalized_determinant(d: int, p: int) -> PureState:
    """Determinant state on n = p*d**p qudits of dimension d.

    Each of the d**p antisymmetrized slots is a block of p consecutive qudits
    holding the base-d digits of the slot's level.
    """
    if d < 2 or p < 1:
        raise OutOfRange("need d >= 2 and p >= 1")
    m = d**p
    n = p * m
    if n > MAX_PARTIES or d**n > MAX_AMPLITUDES:
        raise TooLarge(f"{n} parties of dimension {d}")
    digits = [np.unravel_index(level, (d,) * p) for level in range(m)]
    amps = np.zeros(d**n)
    for perm in itertools.permutations(range(m)):
        label = [int(x) for lvl in perm for x in digits[lvl]]
        amps[np.ravel_multi_index(label, (d,) * n)] = _perm_sign(perm)
    return PureState((d,) * n, amps / math.sqrt(math.factorial(m)))


def superpose(weights: Sequence[complex], states: Sequence[PureState]) -> PureState:
    amps = sum(w * s.amplitudes for w, s in zip(weights, states))
    return make_pure(states[0].dims, amps)


def tensor_product(a: PureState, b: PureState) -> PureState:
    return PureState(a.dims + b.dims, np.kron(a.amplitudes, b.amplitudes))


# --- overlaps and densities -------------------------------------------------


def overlap(a, b: PureState) -> complex:
    """<a|b> for a PureState or ProductState ``a``."""
    if tuple(a.dims) != tuple(b.dims):
        raise DimensionMismatch(f"{a.dims} vs {b.dims}")
    if isinstance(a, ProductState):
        t = b.tensor()
        for f in a.factors:
            t = np.tensordot(f.conj(), t, axes=(0, 0))
        return complex(t)
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def density(psi) -> DensityMatrix:
    if isinstance(psi, ProductState):
        psi = psi.to_pure()
    v = psi.amplitudes
    return DensityMatrix(psi.dims, np.outer(v, v.conj()))


def mix(ensemble) -> DensityMatrix:
    if not isinstance(ensemble, Ensemble):
        ensemble = Ensemble(tuple(ensemble))
    D = math.prod(ensemble.dims)
    m = np.zeros((D, D), dtype=np.complex128)
    for p, s in ensemble:
        v = s.amplitudes
        m += p * np.outer(v, v.conj())
    return DensityMatrix(ensemble.dims, m)


def eigen_ensemble(rho: DensityMatrix, cutoff: float = 1e-14) -> Ensemble:
    """Spectral decomposition of rho as an ensemble of eigenvectors."""
    w, v = np.linalg.eigh(rho.matrix)
    keep = w > cutoff
    w, v = w[keep], v[:, keep]
    w = w / w.sum()
    return Ensemble(tuple((float(p), make_pure(rho.dims, v[:, i])) for i, p in enumerate(w)))


def _as_matrix(rho):
    if isinstance(rho, DensityMatrix):
        return rho.dims, rho.matrix
    raise BadShape("expected a DensityMatrix")


def partial_transpose(rho: DensityMatrix, party: int) -> np.ndarray:
    dims, m = _as_matrix(rho)
    n = len(dims)
    if not 0 <= party < n:
        raise BadParty(f"party {party} not in [0, {n})")
    t = m.reshape(dims + dims)
    t = np.swapaxes(t, party, n + party)
    D = math.prod(dims)
    return t.reshape(D, D)


def negativity(rho: DensityMatrix, party: int) -> float:
    ev = np.linalg.eigvalsh(partial_transpose(rho, party))
    return float(-2.0 * ev[ev < 0].sum())


# --- parametrized families --------------------------------------------------


def swap_operator(d: int) -> np.ndarray:
    s = np.zeros((d * d, d * d))
    for i in range(d):
        for j in range(d):
            s[i * d + j, j * d + i] = 1.0
    return s


def max_entangled(d: int) -> PureState:
    amps = np.zeros(d * d)
    amps[:: d + 1] = 1.0
    return make_pure((d, d), amps)


def werner(d: int, f: float) -> DensityMatrix:
    if d < 2 or not -1.0 <= f <= 1.0:
        raise ParamOutOfRange(f"werner needs d >= 2 and f in [-1, 1], got d={d}, f={f}")
    den = d**4 - d**2
    a = (d**2 - f * d) / den
    b = (f * d**2 - d) / den
    return DensityMatrix((d, d), a * np.eye(d * d) + b * swap_operator(d))


def isotropic(d: int, F: float) -> DensityMatrix:
    if d < 2 or not 0.0 <= F <= 1.0:
        raise ParamOutOfRange(f"isotropic needs d >= 2 and F in [0, 1], got d={d}, F={F}")
    phi = density(max_entangled(d)).matrix
    m = (1 - F) / (d * d - 1) * (np.eye(d * d) - phi) + F * phi
    return DensityMatrix((d, d), m)


def _check_simplex(x: float, y: float, tol: float = 1e-12):
    if x < -tol or y < -tol or x + y > 1 + tol:
        raise ParamOutOfRange(f"(x, y) = ({x}, {y}) outside the simplex")


def ghzw_mix(x: float, y: float) -> DensityMatrix:
    """x |GHZ><GHZ| + y |W><W| + (1-x-y) |W~><W~|."""
    _check_simplex(x, y)
    z = max(0.0, 1.0 - x - y)
    m = (
        x * density(ghz(3)).matrix
        + y * density(w_state()).matrix
        + z * density(w_tilde()).matrix
    )
    return DensityMatrix((2, 2, 2), m)


def symmetric_mixture(n: int, probs: Sequence[float]) -> DensityMatrix:
    """sum_k p_k |S(n,k)><S(n,k)| with ``probs`` indexed by k = 0..n."""
    probs = np.asarray(probs, dtype=float)
    if probs.size != n + 1 or np.any(probs < 0) or abs(probs.sum() - 1) > WEIGHT_TOL:
        raise ParamOutOfRange("probs must be a probability vector of length n + 1")
    D = 2**n
    m = np.zeros((D, D), dtype=np.complex128)
    for k, p in enumerate(probs):
        if p > 0:
            m += p * density(symmetric_state(n, k)).matrix
    return DensityMatrix((2,) * n, m)


# --- twirls -----------------------------------------------------------------


def _check_qubits(rho: DensityMatrix):
    if any(d != 2 for d in rho.dims):
        raise BadShape("twirl needs a qubit system")


def twirl_p3(rho: DensityMatrix) -> DensityMatrix:
    """Average over the collective phase rotation |1> -> e^{-i phi}|1>."""
    _check_qubits(rho)
    w = _hamming_weights(rho.num_parties)
    return DensityMatrix(rho.dims, np.where(w[:, None] == w[None, :], rho.matrix, 0))


def twirl_p4(rho: DensityMatrix) -> DensityMatrix:
    """Three-term average over collective phases g^k, g = exp(2 pi i / 3)."""
    _check_qubits(rho)
    if rho.num_parties != 3:
        raise BadShape("twirl_p4 is defined for three qubits")
    w = _hamming_weights(3)
    g = np.exp(2j * np.pi / 3)
    m = np.zeros_like(rho.matrix)
    for k in (1, 2, 3):
        u = g ** (k * w)
        m += u[:, None] * rho.matrix * u.conj()[None, :]
    m /= 3
    return DensityMatrix(rho.dims, (m + m.conj().T) / 2)


def _check_square(rho: DensityMatrix) -> int:
    if rho.num_parties != 2 or rho.dims[0] != rho.dims[1]:
        raise BadShape("need a d x d bipartite system")
    return rho.dims[0]


def werner_f(rho: DensityMatrix) -> float:
    d = _check_square(rho)
    return float(np.trace(rho.matrix @ swap_operator(d)).real)


def isotropic_fidelity(rho: DensityMatrix) -> float:
    d = _check_square(rho)
    v = max_entangled(d).amplitudes
    return float(np.vdot(v, rho.matrix @ v).real)


def twirl_p1(rho: DensityMatrix) -> DensityMatrix:
    """U x U twirl, realized exactly through the Werner parameter."""
    d = _check_square(rho)
    return werner(d, float(np.clip(werner_f(rho), -1, 1)))


def twirl_p2(rho: DensityMatrix) -> DensityMatrix:
    """U x U* twirl, realized exactly through the singlet fidelity."""
    d = _check_square(rho)
    return isotropic(d, float(np.clip(isotropic_fidelity(rho), 0, 1)))


# --- random sampling --------------------------------------------------------


def random_vector(d: int, rng: np.random.Generator) -> np.ndarray:
    v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return v / np.linalg.norm(v)


def random_pure(dims: Sequence[int], rng: np.random.Generator) -> PureState:
    dims = tuple(dims)
    return PureState(dims, random_vector(math.prod(dims), rng))


def random_product(dims: Sequence[int], rng: np.random.Generator) -> ProductState:
    return ProductState(tuple(random_vector(d, rng) for d in dims))


def random_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    ph = np.diag(r) / np.abs(np.diag(r))
    return q * ph


def apply_local(psi: PureState, ops: Sequence[np.ndarray]) -> PureState:
    """Apply one operator per party (ops[i] acts on party i)."""
    t = psi.tensor()
    for i, op in enumerate(ops):
        t = np.moveaxis(np.tensordot(op, t, axes=(1, i)), 0, i)
    return make_pure(psi.dims, t.reshape(-1))
