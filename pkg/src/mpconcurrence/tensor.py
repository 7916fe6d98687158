"""Multi-index algebra on dense density matrices.

Composite indices are row-major with subsystem 1 slowest, so the basis
vector ``|i1 i2 ... in>`` sits at flat position ``((i1*d2 + i2)*d3 + ...)``.
Subsystems are labelled 1..n; levels inside a subsystem are 0-based.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

HERMITIAN_TOL = 1e-10
PSD_TOL = 1e-9


class InvalidInputError(ValueError):
    """Raised when a matrix, dimension list or selector is malformed."""


def check_dims(dims: Sequence[int]) -> tuple[int, ...]:
    dims = tuple(int(d) for d in dims)
    if len(dims) < 2:
        raise InvalidInputError(f"need at least two subsystems, got dims={dims}")
    if any(d < 1 for d in dims):
        raise InvalidInputError(f"subsystem dimensions must be positive, got {dims}")
    return dims


def _check_square(rho: np.ndarray, dims: Sequence[int]) -> tuple[np.ndarray, tuple[int, ...]]:
    dims = check_dims(dims)
    rho = np.asarray(rho, dtype=complex)
    total = int(np.prod(dims))
    if rho.shape != (total, total):
        raise InvalidInputError(
            f"matrix of shape {rho.shape} does not match dims {dims} (expected {total}x{total})"
        )
    return rho, dims


def _check_subsystem(j: int, n: int) -> int:
    if not 1 <= j <= n:
        raise InvalidInputError(f"subsystem index {j} outside 1..{n}")
    return j - 1


def flat_index(multi: Sequence[int], dims: Sequence[int]) -> int:
    """Flat position of the basis label ``multi`` under row-major ordering."""
    if len(multi) != len(dims):
        raise InvalidInputError("multi-index length does not match dims")
    flat = 0
    for i, d in zip(multi, dims):
        if not 0 <= i < d:
            raise InvalidInputError(f"index {i} outside 0..{d - 1}")
        flat = flat * d + i
    return flat


def multi_index(flat: int, dims: Sequence[int]) -> tuple[int, ...]:
    return tuple(int(i) for i in np.unravel_index(flat, tuple(dims)))


def partial_trace(rho: np.ndarray, dims: Sequence[int], keep: int) -> np.ndarray:
    """Reduced matrix on subsystem ``keep`` (1-based), tracing out the rest."""
    rho, dims = _check_square(rho, dims)
    k = _check_subsystem(keep, len(dims))
    n = len(dims)
    t = rho.reshape(dims + dims)
    # move the kept row/column axes to the end, trace the remaining pairs
    others = [a for a in range(n) if a != k]
    t = np.transpose(t, others + [n + a for a in others] + [k, n + k])
    rest = int(np.prod([dims[a] for a in others]))
    t = t.reshape(rest, rest, dims[k], dims[k])
    return np.einsum("aaij->ij", t)


def partial_transpose(rho: np.ndarray, dims: Sequence[int], j: int) -> np.ndarray:
    """Transpose the row/column indices of subsystem ``j`` (1-based)."""
    rho, dims = _check_square(rho, dims)
    k = _check_subsystem(j, len(dims))
    n = len(dims)
    axes = list(range(2 * n))
    axes[k], axes[n + k] = axes[n + k], axes[k]
    return np.transpose(rho.reshape(dims + dims), axes).reshape(rho.shape)


def realign(rho: np.ndarray, dims: Sequence[int], j: int) -> np.ndarray:
    """Realignment across the cut (subsystem j) | (all others).

    With ``a`` running over subsystem ``j`` and ``b`` over the complement in
    its original order, returns ``M[(a, a'), (b, b')] = rho[(a, b), (a', b')]``
    of shape ``(d_j**2, (D/d_j)**2)``.
    """
    rho, dims = _check_square(rho, dims)
    k = _check_subsystem(j, len(dims))
    dj = dims[k]
    rest = rho.shape[0] // dj
    t = _bipartite_view(rho, dims, k)
    # t[a, b, a', b'] -> M[(a, a'), (b, b')]
    return np.transpose(t, (0, 2, 1, 3)).reshape(dj * dj, rest * rest)


def unrealign(mat: np.ndarray, dims: Sequence[int], j: int) -> np.ndarray:
    """Inverse of :func:`realign`."""
    dims = check_dims(dims)
    k = _check_subsystem(j, len(dims))
    dj = dims[k]
    total = int(np.prod(dims))
    rest = total // dj
    mat = np.asarray(mat, dtype=complex)
    if mat.shape != (dj * dj, rest * rest):
        raise InvalidInputError(f"realigned matrix has shape {mat.shape}")
    t = np.transpose(mat.reshape(dj, dj, rest, rest), (0, 2, 1, 3))
    n = len(dims)
    others = [a for a in range(n) if a != k]
    full = t.reshape([dj] + [dims[a] for a in others] + [dj] + [dims[a] for a in others])
    # undo the move of axis k to the front
    order = [k] + others
    inverse = np.argsort(order)
    full = np.transpose(full, list(inverse) + [n + a for a in inverse])
    return full.reshape(total, total)


def _bipartite_view(rho: np.ndarray, dims: tuple[int, ...], k: int) -> np.ndarray:
    n = len(dims)
    dj = dims[k]
    rest = rho.shape[0] // dj
    others = [a for a in range(n) if a != k]
    t = np.transpose(rho.reshape(dims + dims), [k] + others + [n + k] + [n + a for a in others])
    return t.reshape(dj, rest, dj, rest)


def trace_norm(mat: np.ndarray) -> float:
    """Sum of singular values, ``Tr sqrt(M M^dagger)``."""
    mat = np.asarray(mat, dtype=complex)
    if mat.ndim != 2:
        raise InvalidInputError("trace norm needs a 2-d matrix")
    if not np.all(np.isfinite(mat)):
        raise InvalidInputError("matrix has non-finite entries")
    if mat.size == 0:
        return 0.0
    return float(np.sum(np.linalg.svd(mat, compute_uv=False)))


def hermitian_trace_norm(mat: np.ndarray) -> float:
    """Trace norm of a Hermitian matrix as the sum of absolute eigenvalues."""
    mat = np.asarray(mat, dtype=complex)
    if not np.all(np.isfinite(mat)):
        raise InvalidInputError("matrix has non-finite entries")
    return float(np.sum(np.abs(np.linalg.eigvalsh(mat))))


@dataclass(frozen=True)
class SubstateSelector:
    """One sorted level subset per subsystem, all of the same size ``m``."""

    subsets: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        subsets = tuple(tuple(int(i) for i in s) for s in self.subsets)
        object.__setattr__(self, "subsets", subsets)
        if len(subsets) < 2:
            raise InvalidInputError("selector needs at least two subsets")
        sizes = {len(s) for s in subsets}
        if len(sizes) != 1:
            raise InvalidInputError(f"subsets have unequal sizes {sorted(sizes)}")
        if self.m < 2:
            raise InvalidInputError("sub-state dimension m must be at least 2")
        for s in subsets:
            if any(a >= b for a, b in zip(s, s[1:])):
                raise InvalidInputError(f"subset {s} is not strictly increasing")
            if s[0] < 0:
                raise InvalidInputError(f"subset {s} has a negative level")

    @property
    def m(self) -> int:
        return len(self.subsets[0])

    def validate_for(self, dims: Sequence[int]) -> None:
        if len(dims) != len(self.subsets):
            raise InvalidInputError(
                f"selector has {len(self.subsets)} subsets but state has {len(dims)} subsystems"
            )
        for s, d in zip(self.subsets, dims):
            if s[-1] >= d:
                raise InvalidInputError(f"subset {s} out of range for dimension {d}")

    def flat_indices(self, dims: Sequence[int]) -> np.ndarray:
        """Flat positions kept by the projection, in sub-state order."""
        self.validate_for(dims)
        return np.array(
            [flat_index(idx, dims) for idx in itertools.product(*self.subsets)], dtype=int
        )

    def __str__(self) -> str:
        return "(" + ",".join("{" + ",".join(map(str, s)) + "}" for s in self.subsets) + ")"


def project_substate(
    rho: np.ndarray, dims: Sequence[int], sel: SubstateSelector
) -> tuple[np.ndarray, tuple[int, ...]]:
    """Unnormalized sub-state ``B1 x ... x Bn rho B1 x ... x Bn`` in dims (m, ..., m)."""
    rho, dims = _check_square(rho, dims)
    idx = sel.flat_indices(dims)
    return rho[np.ix_(idx, idx)].copy(), (sel.m,) * len(dims)


def project_vector(psi: np.ndarray, dims: Sequence[int], sel: SubstateSelector) -> np.ndarray:
    """Amplitudes of ``B1 x ... x Bn |psi>`` in dims (m, ..., m)."""
    dims = check_dims(dims)
    psi = np.asarray(psi, dtype=complex)
    if psi.shape != (int(np.prod(dims)),):
        raise InvalidInputError(f"vector of shape {psi.shape} does not match dims {dims}")
    return psi[sel.flat_indices(dims)].copy()
