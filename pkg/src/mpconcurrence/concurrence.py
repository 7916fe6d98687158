"""Pure-state concurrence and a sampled convex-roof upper estimate."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .states import DensityMatrix, PureState, rng_from_seed
from .tensor import InvalidInputError, partial_trace

RADICAND_TOL = 1e-10


@dataclass(frozen=True)
class ConcurrenceValue:
    value: float
    form: str  # "purity" or "minors"
    normalized_input: bool

    def __float__(self) -> float:
        return self.value


def _safe_sqrt(x: float) -> float:
    if x < 0:
        if x < -RADICAND_TOL:
            raise ArithmeticError(f"negative radicand {x}")
        return 0.0
    return math.sqrt(x)


def prefactor(N: int) -> float:
    """Optional normalization sqrt(N / (6 (N - 1))) for N x N x N pure states."""
    return math.sqrt(N / (6 * (N - 1)))


def _prefactor_for(dims: tuple[int, ...]) -> float:
    if len(dims) != 3 or len(set(dims)) != 1:
        raise InvalidInputError("the N-dependent prefactor is defined for N x N x N states only")
    return prefactor(dims[0])


def pure_concurrence_purity(psi: PureState, apply_prefactor: bool = False) -> ConcurrenceValue:
    """sqrt(6 - 2 sum_j Tr rho_j^2) from the three single-party marginals."""
    if len(psi.dims) != 3:
        raise InvalidInputError(f"purity form needs three subsystems, got {len(psi.dims)}")
    if not psi.normalized:
        raise InvalidInputError("purity form needs a normalized state; use the minor form")
    rho = np.outer(psi.amplitudes, psi.amplitudes.conj())
    purities = 0.0
    for j in (1, 2, 3):
        red = partial_trace(rho, psi.dims, j)
        purities += float(np.real(np.trace(red @ red)))
    value = _safe_sqrt(6.0 - 2.0 * purities)
    if apply_prefactor:
        value *= _prefactor_for(psi.dims)
    return ConcurrenceValue(value, "purity", True)


def minor_sum_squared(amps: np.ndarray, dims: Sequence[int]) -> np.ndarray:
    """Sum of |a_{ab} a_{a'b'} - a_{ab'} a_{a'b}|^2 over every slot cut.

    For each subsystem, ``b, b'`` run over that slot and ``a, a'`` over the
    multi-indices of the other slots; all index values are summed freely.
    ``amps`` may carry leading batch axes.
    """
    dims = tuple(dims)
    amps = np.asarray(amps, dtype=complex)
    batch = amps.shape[:-1]
    t = amps.reshape(batch + dims)
    nb = len(batch)
    total = np.zeros(batch)
    for k in range(len(dims)):
        # matrix view: rows over slot k, columns over the remaining slots
        mat = np.moveaxis(t, nb + k, nb).reshape(batch + (dims[k], -1))
        outer = np.einsum("...ba,...cd->...bcad", mat, mat)
        minors = outer - np.swapaxes(outer, -1, -2)
        total = total + np.sum(np.abs(minors) ** 2, axis=(-4, -3, -2, -1))
    return total


def pure_concurrence_minors(psi: PureState, apply_prefactor: bool = False) -> ConcurrenceValue:
    """Concurrence from 2x2 amplitude minors; valid for unnormalized vectors."""
    value = _safe_sqrt(float(minor_sum_squared(psi.amplitudes, psi.dims)))
    if apply_prefactor:
        value *= _prefactor_for(psi.dims)
    return ConcurrenceValue(value, "minors", psi.normalized)


def pure_concurrence(psi: PureState) -> float:
    return pure_concurrence_minors(psi).value


def _decomposition_average(vectors: np.ndarray, dims: tuple[int, ...]) -> float:
    # each row is sqrt(p_i) psi_i; the minor form is degree-2 homogeneous,
    # so sqrt(minor sum) of a row equals p_i C(psi_i)
    sums = np.clip(minor_sum_squared(vectors, dims), 0.0, None)
    return float(np.sum(np.sqrt(sums)))


def convex_roof_upper_estimate(
    rho: DensityMatrix, trials: int = 100, seed: int = 0, extra: int | None = None
) -> float:
    """Minimum of sum_i p_i C(psi_i) over sampled pure-state decompositions.

    Trial 0 is the eigen-decomposition; trial ``t >= 1`` mixes the weighted
    eigenvectors with a random isometry drawn from the stream ``(seed, t)``.
    Every decomposition of ``rho`` has this form, and since the result is a
    running minimum it never increases with ``trials``.
    """
    if trials < 1:
        raise InvalidInputError("trials must be at least 1")
    evals, evecs = np.linalg.eigh(rho.matrix)
    keep = evals > 1e-13 * max(evals[-1], 1e-300)
    weighted = (evecs[:, keep] * np.sqrt(evals[keep])).T  # rows sqrt(l_k) e_k
    rank = weighted.shape[0]
    best = _decomposition_average(weighted, rho.dims)
    if rank == 1:
        return best
    n_out = rank + (rank if extra is None else extra)
    for t in range(1, trials):
        rng = rng_from_seed(seed, t)
        g = rng.standard_normal((n_out, rank)) + 1j * rng.standard_normal((n_out, rank))
        u, _ = np.linalg.qr(g)  # n_out x rank isometry
        best = min(best, _decomposition_average(u @ weighted, rho.dims))
    return best
