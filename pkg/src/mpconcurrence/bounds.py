"""Lower bounds on the concurrence of mixed states.

``three_qubit_bound`` is the operational bound built from partial-transpose
and realignment trace norms. ``hierarchy_bound`` projects an N x ... x N state
onto every m x ... x m sub-state, evaluates an inner bound on each, and
combines them with the multiplicity coefficient from
``substate_coefficient``.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Mapping, Sequence

import numpy as np

from .concurrence import minor_sum_squared
from .states import DensityMatrix, PureState
from .tensor import (
    InvalidInputError,
    SubstateSelector,
    hermitian_trace_norm,
    partial_transpose,
    project_substate,
    realign,
    trace_norm,
)

# sub-states whose trace falls below this are treated as the zero matrix
ZERO_TRACE = 1e-15


class SubstateEvaluationError(RuntimeError):
    """An inner bound failed on one sub-state; ``selector`` names it."""

    def __init__(self, selector: SubstateSelector, cause: Exception):
        super().__init__(f"inner bound failed on sub-state {selector}: {cause}")
        self.selector = selector
        self.cause = cause


@dataclass(frozen=True)
class CriterionTerms:
    """Clamped trace-norm deficits max(0, ||X_j|| - t), one per subsystem j."""

    pt_deficits: tuple[float, ...]
    realign_deficits: tuple[float, ...]

    @property
    def terms(self) -> tuple[float, ...]:
        return tuple(max(p, r) ** 2 for p, r in zip(self.pt_deficits, self.realign_deficits))

    @property
    def pt_sum(self) -> float:
        return sum(p * p for p in self.pt_deficits)

    @property
    def realign_sum(self) -> float:
        return sum(r * r for r in self.realign_deficits)


@dataclass(frozen=True)
class Coefficient:
    numerator: int
    denominator: int
    N: int
    m: int
    n: int

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def __float__(self) -> float:
        return self.numerator / self.denominator

    def __str__(self) -> str:
        return f"{self.numerator}/{self.denominator}"


@dataclass(frozen=True)
class SubstateTerm:
    selector: SubstateSelector | None
    trace: float
    value_squared: float
    criteria: CriterionTerms | None = None


@dataclass(frozen=True)
class BoundReport:
    value: float
    value_squared: float
    method: str
    coefficient: Coefficient | None = None
    per_substate: tuple[SubstateTerm, ...] = ()
    components: tuple[tuple[int, float, "BoundReport"], ...] = ()

    @property
    def pt_sum(self) -> float:
        """Coefficient-weighted sum of squared partial-transpose deficits."""
        return self._criterion_sum("pt_sum")

    @property
    def realign_sum(self) -> float:
        return self._criterion_sum("realign_sum")

    def _criterion_sum(self, name: str) -> float:
        if self.components:
            return sum(p * getattr(rep, name) for _, p, rep in self.components)
        c = float(self.coefficient) if self.coefficient is not None else 1.0
        return c * sum(getattr(t.criteria, name) for t in self.per_substate if t.criteria is not None)

    def nonzero_substates(self) -> list[SubstateTerm]:
        return [t for t in self.per_substate if t.value_squared > 0]

    def to_dict(self) -> dict:
        out = {
            "method": self.method,
            "value": self.value,
            "value_squared": self.value_squared,
            "coefficient": None if self.coefficient is None else {
                "numerator": self.coefficient.numerator,
                "denominator": self.coefficient.denominator,
                "N": self.coefficient.N, "m": self.coefficient.m, "n": self.coefficient.n,
            },
            "pt_sum": self.pt_sum,
            "realign_sum": self.realign_sum,
            "per_substate": [
                {
                    "selector": None if t.selector is None else [list(s) for s in t.selector.subsets],
                    "trace": t.trace,
                    "value_squared": t.value_squared,
                    "pt_deficits": None if t.criteria is None else list(t.criteria.pt_deficits),
                    "realign_deficits": None if t.criteria is None else list(t.criteria.realign_deficits),
                }
                for t in self.per_substate
            ],
            "components": [
                {"m": m, "weight": p, "report": rep.to_dict()} for m, p, rep in self.components
            ],
        }
        return out


InnerBound = Callable[[DensityMatrix], BoundReport]


def _clamped(x: float) -> float:
    return x if x > 0 else 0.0


def three_qubit_bound(rho: DensityMatrix) -> BoundReport:
    """sum_j max[(||rho^T_j|| - t)_+^2, (||R_j(rho)|| - t)_+^2] for a (sub-)state of trace t."""
    if rho.dims != (2, 2, 2):
        raise InvalidInputError(f"three-qubit bound needs dims (2, 2, 2), got {rho.dims}")
    t = rho.trace
    pt, re = [], []
    for j in (1, 2, 3):
        pt.append(_clamped(hermitian_trace_norm(partial_transpose(rho.matrix, rho.dims, j)) - t))
        re.append(_clamped(trace_norm(realign(rho.matrix, rho.dims, j)) - t))
    crit = CriterionTerms(tuple(pt), tuple(re))
    value_squared = sum(crit.terms)
    return BoundReport(
        value=math.sqrt(value_squared),
        value_squared=value_squared,
        method="theorem2",
        per_substate=(SubstateTerm(None, t, value_squared, crit),),
    )


def substate_coefficient(N: int, m: int, n: int = 3) -> Coefficient:
    """1 / (C(N-1, m-1)^(n-2) * C(N-2, m-2)^2).

    The denominator is the largest number of m-level sub-states that can
    share one nonvanishing minor term: two slots need distinct index pairs,
    and at most n - 2 slots carry a repeated index.
    """
    if n < 3:
        raise InvalidInputError(f"need at least three parties, got n={n}")
    if not 2 <= m <= N:
        raise InvalidInputError(f"need 2 <= m <= N, got m={m}, N={N}")
    denom = math.comb(N - 1, m - 1) ** (n - 2) * math.comb(N - 2, m - 2) ** 2
    return Coefficient(1, denom, N, m, n)


def enumerate_selectors(dims: Sequence[int], m: int) -> Iterator[SubstateSelector]:
    """All C(N, m)^n selectors in lexicographic order."""
    dims = tuple(dims)
    if not 2 <= m <= min(dims):
        raise InvalidInputError(f"need 2 <= m <= {min(dims)}, got m={m}")
    per_slot = [list(itertools.combinations(range(d), m)) for d in dims]
    for subsets in itertools.product(*per_slot):
        yield SubstateSelector(subsets)


def _uniform_dim(dims: tuple[int, ...]) -> int:
    if len(set(dims)) != 1:
        raise InvalidInputError(f"sub-state hierarchy needs equal subsystem dimensions, got {dims}")
    return dims[0]


def _evaluate_substate(rho: DensityMatrix, sel: SubstateSelector, inner: InnerBound) -> SubstateTerm:
    sub, sub_dims = project_substate(rho.matrix, rho.dims, sel)
    trace = float(np.trace(sub).real)
    if trace <= ZERO_TRACE:
        return SubstateTerm(sel, trace, 0.0)
    try:
        rep = inner(DensityMatrix(sub, sub_dims))
    except Exception as exc:
        raise SubstateEvaluationError(sel, exc) from exc
    crit = rep.per_substate[0].criteria if len(rep.per_substate) == 1 else None
    return SubstateTerm(sel, trace, rep.value_squared, crit)


def hierarchy_bound(
    rho: DensityMatrix,
    m: int,
    inner: InnerBound = three_qubit_bound,
    parallel: bool = False,
    workers: int | None = None,
    coefficient: Coefficient | None = None,
) -> BoundReport:
    """c * sum over all m-level sub-states of inner(sub-state)^2, square-rooted.

    The default reduction walks selectors in lexicographic order so the
    result is bit-stable. ``parallel=True`` evaluates sub-states on a
    thread pool and sums them in completion order.
    """
    N = _uniform_dim(rho.dims)
    coef = coefficient or substate_coefficient(N, m, rho.n)
    selectors = list(enumerate_selectors(rho.dims, m))
    if parallel:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = {pool.submit(_evaluate_substate, rho, s, inner): i for i, s in enumerate(selectors)}
            terms: list[SubstateTerm | None] = [None] * len(selectors)
            total = 0.0
            for fut in as_completed(futures):
                term = fut.result()
                terms[futures[fut]] = term
                total += term.value_squared
    else:
        terms = [_evaluate_substate(rho, s, inner) for s in selectors]
        total = 0.0
        for term in terms:
            total += term.value_squared
    value_squared = float(coef) * total
    return BoundReport(
        value=math.sqrt(value_squared),
        value_squared=value_squared,
        method="hierarchy",
        coefficient=coef,
        per_substate=tuple(terms),
    )


def convex_combination_bound(
    rho: DensityMatrix,
    weights: Mapping[int, float] | Sequence[tuple[int, float]],
    inner: InnerBound = three_qubit_bound,
    parallel: bool = False,
) -> BoundReport:
    """sum_m p_m * hierarchy_bound(rho, m)^2 for a probability vector over m."""
    items = sorted(dict(weights).items())
    N = _uniform_dim(rho.dims)
    if not items:
        raise InvalidInputError("no weights given")
    for m, p in items:
        if not 2 <= m <= N:
            raise InvalidInputError(f"weight on m={m} outside 2..{N}")
        if p < 0:
            raise InvalidInputError(f"negative weight {p} on m={m}")
    if abs(sum(p for _, p in items) - 1.0) > 1e-12:
        raise InvalidInputError("weights must sum to 1")
    components = []
    value_squared = 0.0
    for m, p in items:
        rep = hierarchy_bound(rho, m, inner, parallel=parallel)
        components.append((m, p, rep))
        value_squared += p * rep.value_squared
    return BoundReport(
        value=math.sqrt(value_squared),
        value_squared=value_squared,
        method="convex",
        components=tuple(components),
    )


def pure_hierarchy_check(
    psi: PureState, m: int, coefficient: Coefficient | None = None
) -> tuple[float, float]:
    """(C^2(psi), c * sum over sub-states of C^2(projected psi)).

    Projected vectors are left unnormalized; the minor form is homogeneous,
    so no rescaling is needed. The first entry should never be smaller.
    """
    if not psi.normalized:
        raise InvalidInputError("pure hierarchy check needs a normalized state")
    N = _uniform_dim(psi.dims)
    coef = coefficient or substate_coefficient(N, m, len(psi.dims))
    lhs = float(minor_sum_squared(psi.amplitudes, psi.dims))
    index_sets = np.array([s.flat_indices(psi.dims) for s in enumerate_selectors(psi.dims, m)])
    projected = psi.amplitudes[index_sets]
    rhs = float(coef) * float(np.sum(minor_sum_squared(projected, (m,) * len(psi.dims))))
    return lhs, rhs
