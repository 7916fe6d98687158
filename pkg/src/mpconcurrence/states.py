"""State containers, the two benchmark families, and seeded random states.

Random states use numpy's ``Generator`` with the PCG64 bit generator seeded
through ``SeedSequence``; the algorithm is fixed so results are reproducible
across platforms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .tensor import HERMITIAN_TOL, PSD_TOL, InvalidInputError, check_dims, flat_index

NORM_TOL = 1e-9


Seed = int | tuple[int, ...]


def rng_from_seed(*seed: Seed) -> np.random.Generator:
    """PCG64 generator keyed on one or more non-negative integers (or tuples of them)."""
    flat: list[int] = []
    for s in seed:
        flat.extend(int(v) for v in (s if isinstance(s, tuple) else (s,)))
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(flat)))


@dataclass(frozen=True)
class PureState:
    amplitudes: np.ndarray
    dims: tuple[int, ...]
    normalized: bool = field(init=False)

    def __post_init__(self):
        dims = check_dims(self.dims)
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if amps.shape[0] != math.prod(dims):
            raise InvalidInputError(
                f"{amps.shape[0]} amplitudes do not match dims {dims} ({math.prod(dims)} expected)"
            )
        if not np.all(np.isfinite(amps)):
            raise InvalidInputError("amplitudes must be finite")
        norm2 = float(np.vdot(amps, amps).real)
        if norm2 <= 0.0:
            raise InvalidInputError("zero vector is not a state")
        if norm2 > 1.0 + NORM_TOL:
            raise InvalidInputError(f"squared norm {norm2} exceeds 1")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "normalized", abs(norm2 - 1.0) <= NORM_TOL)

    @property
    def norm2(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def tensor(self) -> np.ndarray:
        return self.amplitudes.reshape(self.dims)

    def density(self) -> "DensityMatrix":
        return DensityMatrix(np.outer(self.amplitudes, self.amplitudes.conj()), self.dims)


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian PSD matrix with trace in (0, 1]; sub-states are unnormalized."""

    matrix: np.ndarray
    dims: tuple[int, ...]
    trace: float = field(init=False)

    def __post_init__(self):
        dims = check_dims(self.dims)
        mat = np.array(self.matrix, dtype=complex)
        total = math.prod(dims)
        if mat.shape != (total, total):
            raise InvalidInputError(f"matrix of shape {mat.shape} does not match dims {dims}")
        if not np.all(np.isfinite(mat)):
            raise InvalidInputError("matrix entries must be finite")
        if np.max(np.abs(mat - mat.conj().T)) > HERMITIAN_TOL:
            raise InvalidInputError("matrix is not Hermitian")
        mat = (mat + mat.conj().T) / 2
        if np.linalg.eigvalsh(mat)[0] < -PSD_TOL:
            raise InvalidInputError("matrix is not positive semidefinite")
        tr = float(np.trace(mat).real)
        if not 0.0 < tr <= 1.0 + NORM_TOL:
            raise InvalidInputError(f"trace {tr} outside (0, 1]")
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "trace", tr)

    @property
    def n(self) -> int:
        return len(self.dims)


def pure_from_amplitudes(amps: Sequence[complex], dims: Sequence[int], normalize: bool = False) -> PureState:
    amps = np.asarray(amps, dtype=complex).reshape(-1)
    if normalize:
        norm = np.linalg.norm(amps)
        if norm == 0 or not np.isfinite(norm):
            raise InvalidInputError("cannot normalize a zero or non-finite vector")
        amps = amps / norm
    return PureState(amps, tuple(dims))


def basis_state(levels: Sequence[int], dims: Sequence[int]) -> PureState:
    amps = np.zeros(math.prod(dims), dtype=complex)
    amps[flat_index(levels, dims)] = 1.0
    return PureState(amps, tuple(dims))


def product_state(factors: Sequence[Sequence[complex]], normalize: bool = True) -> PureState:
    vecs = [np.asarray(f, dtype=complex) for f in factors]
    if normalize:
        vecs = [v / np.linalg.norm(v) for v in vecs]
    amps = vecs[0]
    for v in vecs[1:]:
        amps = np.kron(amps, v)
    return PureState(amps, tuple(len(v) for v in vecs))


def ghz_pair(dims: Sequence[int], level_a: int, level_b: int) -> PureState:
    """(|a a ... a> + |b b ... b>) / sqrt(2)."""
    dims = check_dims(dims)
    if level_a == level_b:
        raise InvalidInputError("GHZ levels must differ")
    if min(level_a, level_b) < 0 or max(level_a, level_b) >= min(dims):
        raise InvalidInputError(f"levels {level_a}, {level_b} out of range for dims {dims}")
    amps = np.zeros(math.prod(dims), dtype=complex)
    amps[flat_index([level_a] * len(dims), dims)] = 1 / math.sqrt(2)
    amps[flat_index([level_b] * len(dims), dims)] = 1 / math.sqrt(2)
    return PureState(amps, dims)


@dataclass(frozen=True)
class DctParams:
    lambda0_plus: float
    lambda0_minus: float
    lambda1: float
    lambda2: float
    lambda3: float

    def __post_init__(self):
        vals = (self.lambda0_plus, self.lambda0_minus, self.lambda1, self.lambda2, self.lambda3)
        if any(v < 0 for v in vals):
            raise InvalidInputError("DCT weights must be nonnegative")
        total = self.lambda0_plus + self.lambda0_minus + 2 * (self.lambda1 + self.lambda2 + self.lambda3)
        if abs(total - 1.0) > 1e-12:
            raise InvalidInputError(f"DCT weights sum to {total}, not 1")

    @classmethod
    def example1(cls) -> "DctParams":
        return cls(1 / 6, 1 / 2, 1 / 18, 1 / 18, 1 / 18)

    @classmethod
    def noisy_ghz(cls, x: float) -> "DctParams":
        """x |psi0+><psi0+| + (1 - x) I/8, written in GHZ-diagonal form."""
        if not 0.0 <= x <= 1.0:
            raise InvalidInputError(f"x={x} outside [0, 1]")
        w = (1 - x) / 8
        return cls(x + w, w, w, w, w)


def dct_ket(j: int, sign: int) -> np.ndarray:
    """Three-qubit ket (|j>_AB |0>_C + sign |3-j>_AB |1>_C) / sqrt(2), j in 0..3.

    ``j`` is read in binary as the pair of qubit levels of A and B.
    """
    amps = np.zeros(8, dtype=complex)
    amps[flat_index((j >> 1, j & 1, 0), (2, 2, 2))] = 1 / math.sqrt(2)
    k = 3 - j
    amps[flat_index((k >> 1, k & 1, 1), (2, 2, 2))] = sign / math.sqrt(2)
    return amps


def dct_state(p: DctParams) -> DensityMatrix:
    weights = {
        (0, +1): p.lambda0_plus,
        (0, -1): p.lambda0_minus,
        (1, +1): p.lambda1, (1, -1): p.lambda1,
        (2, +1): p.lambda2, (2, -1): p.lambda2,
        (3, +1): p.lambda3, (3, -1): p.lambda3,
    }
    rho = np.zeros((8, 8), dtype=complex)
    for (j, sign), w in weights.items():
        ket = dct_ket(j, sign)
        rho += w * np.outer(ket, ket.conj())
    return DensityMatrix(rho, (2, 2, 2))


def depolarized_ghz_333(x: float) -> DensityMatrix:
    """(1 - x)/27 * I + x |psi+><psi+| with psi+ = (|000> + |222>)/sqrt(2)."""
    if not 0.0 <= x <= 1.0:
        raise InvalidInputError(f"x={x} outside [0, 1]")
    ghz = ghz_pair((3, 3, 3), 0, 2).amplitudes
    rho = (1 - x) / 27 * np.eye(27, dtype=complex) + x * np.outer(ghz, ghz.conj())
    return DensityMatrix(rho, (3, 3, 3))


def _gaussian_vector(rng: np.random.Generator, size: int) -> np.ndarray:
    return rng.standard_normal(size) + 1j * rng.standard_normal(size)


def random_pure(dims: Sequence[int], seed: Seed) -> PureState:
    """Haar-random pure state: normalized complex Gaussian vector."""
    dims = check_dims(dims)
    v = _gaussian_vector(rng_from_seed(seed), math.prod(dims))
    return PureState(v / np.linalg.norm(v), dims)


def random_product_pure(dims: Sequence[int], seed: Seed) -> PureState:
    rng = rng_from_seed(seed)
    return product_state([_gaussian_vector(rng, d) for d in check_dims(dims)])


def random_separable(dims: Sequence[int], k: int, seed: Seed) -> DensityMatrix:
    """Mixture of ``k`` random product pure states with Dirichlet(1) weights."""
    dims = check_dims(dims)
    if k < 1:
        raise InvalidInputError("mixture size must be at least 1")
    rng = rng_from_seed(seed)
    weights = rng.dirichlet(np.ones(k)) if k > 1 else np.ones(1)
    total = math.prod(dims)
    rho = np.zeros((total, total), dtype=complex)
    for w in weights:
        ket = product_state([_gaussian_vector(rng, d) for d in dims]).amplitudes
        rho += w * np.outer(ket, ket.conj())
    return DensityMatrix(rho / np.trace(rho).real, dims)


def random_mixed(dims: Sequence[int], rank: int, seed: Seed) -> DensityMatrix:
    """Random density matrix of the given rank from a Ginibre matrix G G^dagger."""
    dims = check_dims(dims)
    total = math.prod(dims)
    if not 1 <= rank <= total:
        raise InvalidInputError(f"rank {rank} outside 1..{total}")
    rng = rng_from_seed(seed)
    g = rng.standard_normal((total, rank)) + 1j * rng.standard_normal((total, rank))
    rho = g @ g.conj().T
    return DensityMatrix(rho / np.trace(rho).real, dims)
