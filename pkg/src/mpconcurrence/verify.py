"""Seeded property suite behind ``mpconcurrence verify``.

Each check draws its cases from ``(seed, check_id, case)`` so a failing case
can be replayed alone from the echoed seed tuple.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .bounds import hierarchy_bound, pure_hierarchy_check, three_qubit_bound
from .concurrence import convex_roof_upper_estimate, pure_concurrence_minors, pure_concurrence_purity
from .states import random_mixed, random_pure, random_separable
from .tensor import hermitian_trace_norm, partial_trace, partial_transpose, realign, trace_norm

TOL = 1e-9
SANDWICH_TOL = 1e-8


@dataclass
class CheckResult:
    name: str
    cases: int = 0
    failure: str | None = None

    @property
    def passed(self) -> bool:
        return self.failure is None


def _form_equivalence(seed: int, trials: int, res: CheckResult) -> None:
    for i in range(trials):
        N = (2, 3, 4)[i % 3]
        case = (seed, 1, i)
        psi = random_pure((N, N, N), case)
        a = pure_concurrence_purity(psi).value
        b = pure_concurrence_minors(psi).value
        res.cases += 1
        if abs(a - b) > TOL:
            res.failure = f"seed={case} dims={(N,) * 3}: purity form {a!r} vs minor form {b!r}"
            return


def _proof_identities(seed: int, trials: int, res: CheckResult) -> None:
    for i in range(trials):
        case = (seed, 2, i)
        psi = random_pure((2, 2, 2), case)
        rho = np.outer(psi.amplitudes, psi.amplitudes.conj())
        for j in (1, 2, 3):
            red = partial_trace(rho, psi.dims, j)
            lhs = 1.0 - float(np.trace(red @ red).real)
            pt = 0.5 * (hermitian_trace_norm(partial_transpose(rho, psi.dims, j)) - 1) ** 2
            re = 0.5 * (trace_norm(realign(rho, psi.dims, j)) - 1) ** 2
            res.cases += 1
            if abs(lhs - pt) > TOL or abs(lhs - re) > TOL:
                res.failure = f"seed={case} j={j}: 1-Tr rho_j^2={lhs!r}, PT form={pt!r}, realign form={re!r}"
                return


def _pure_hierarchy(seed: int, trials: int, res: CheckResult) -> None:
    for k, (N, m) in enumerate(((3, 2), (4, 2), (4, 3))):
        for i in range(trials):
            case = (seed, 3, k, i)
            psi = random_pure((N, N, N), case)
            lhs, rhs = pure_hierarchy_check(psi, m)
            res.cases += 1
            if lhs < rhs - TOL:
                res.failure = f"seed={case} N={N} m={m}: C^2={lhs!r} < c*sum={rhs!r}"
                return


def _separable_nullity(seed: int, trials: int, res: CheckResult) -> None:
    for i in range(trials):
        case = (seed, 4, i)
        k = 1 + i % 4
        rho = random_separable((2, 2, 2), k, case)
        v = three_qubit_bound(rho).value
        res.cases += 1
        if v > TOL:
            res.failure = f"seed={case} dims=(2,2,2) k={k}: three-qubit bound {v!r} on separable state"
            return
    for i in range(max(1, trials // 10)):
        case = (seed, 5, i)
        rho = random_separable((3, 3, 3), 3, case)
        v = hierarchy_bound(rho, 2).value
        res.cases += 1
        if v > TOL:
            res.failure = f"seed={case} dims=(3,3,3) k=3: hierarchy bound {v!r} on separable state"
            return


def _sandwich(seed: int, trials: int, res: CheckResult) -> None:
    for i in range(max(1, trials // 10)):
        for dims in ((2, 2, 2), (3, 3, 3)):
            case = (seed, 6, dims[0], i)
            rho = random_mixed(dims, 2, case)
            upper = convex_roof_upper_estimate(rho, trials=50, seed=i)
            if dims == (2, 2, 2):
                lower = three_qubit_bound(rho).value
            else:
                lower = hierarchy_bound(rho, 2).value
            res.cases += 1
            if lower > upper + SANDWICH_TOL:
                res.failure = f"seed={case} dims={dims}: lower bound {lower!r} > upper estimate {upper!r}"
                return


CHECKS: list[tuple[str, Callable[[int, int, CheckResult], None]]] = [
    ("form-equivalence", _form_equivalence),
    ("pure-norm-identities", _proof_identities),
    ("pure-hierarchy", _pure_hierarchy),
    ("separable-nullity", _separable_nullity),
    ("sandwich", _sandwich),
]


def run_suite(trials: int = 100, seed: int = 0) -> list[CheckResult]:
    if trials < 1:
        raise ValueError("trials must be at least 1")
    results = []
    for name, check in CHECKS:
        res = CheckResult(name)
        check(seed, trials, res)
        results.append(res)
    return results
