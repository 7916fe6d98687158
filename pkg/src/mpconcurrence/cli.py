"""Command-line entry point.

Exit codes: 0 success, 1 invalid input, 2 numerical failure, 3 property-suite
failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

import numpy as np

from . import verify
from .bounds import (
    BoundReport,
    SubstateEvaluationError,
    convex_combination_bound,
    hierarchy_bound,
    three_qubit_bound,
)
from .concurrence import pure_concurrence_minors, pure_concurrence_purity
from .io import load_state
from .states import DctParams, DensityMatrix, PureState, dct_state, depolarized_ghz_333
from .tensor import InvalidInputError

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_NUMERICAL = 2
EXIT_PROPERTY = 3

SWEEP_HEADER = ["x", "bound", "pt_sum", "realign_sum"]


def parse_weights(text: str) -> dict[int, float]:
    """Parse ``m:p,m:p,...``."""
    weights: dict[int, float] = {}
    try:
        for item in text.split(","):
            m, p = item.split(":")
            weights[int(m)] = float(p)
    except ValueError as exc:
        raise InvalidInputError(f"bad --weights {text!r}; expected m:p,m:p,...") from exc
    return weights


def evaluate_bound(
    rho: DensityMatrix,
    method: str,
    m: int | None = None,
    weights: dict[int, float] | None = None,
    parallel: bool = False,
) -> BoundReport:
    if method == "theorem2":
        return three_qubit_bound(rho)
    if method == "hierarchy":
        if weights:
            return convex_combination_bound(rho, weights, parallel=parallel)
        return hierarchy_bound(rho, 2 if m is None else m, parallel=parallel)
    raise InvalidInputError(f"unknown method {method!r}")


def cmd_pure(args) -> int:
    state = load_state(args.input)
    if not isinstance(state, PureState):
        raise InvalidInputError(f"{args.input} holds a density matrix, not a pure state")
    minors = pure_concurrence_minors(state, apply_prefactor=args.prefactor)
    purity = None
    if len(state.dims) == 3 and state.normalized:
        purity = pure_concurrence_purity(state, apply_prefactor=args.prefactor)
    if args.json:
        print(json.dumps({
            "dims": list(state.dims),
            "normalized": state.normalized,
            "minors": minors.value,
            "purity": None if purity is None else purity.value,
            "difference": None if purity is None else abs(purity.value - minors.value),
        }))
        return EXIT_OK
    print(f"dims        {state.dims}")
    print(f"minor form  {minors.value!r}")
    if purity is None:
        print("purity form n/a (needs a normalized three-party state)")
    else:
        print(f"purity form {purity.value!r}")
        print(f"difference  {abs(purity.value - minors.value):.3e}")
    return EXIT_OK


def format_report(rep: BoundReport) -> str:
    lines = [
        f"method      {rep.method}",
        f"value       {rep.value!r}",
        f"value^2     {rep.value_squared!r}",
    ]
    if rep.coefficient is not None:
        lines.append(f"coefficient {rep.coefficient}")
    for m, p, sub in rep.components:
        lines.append(f"  m={m} weight={p!r} value^2={sub.value_squared!r} coefficient={sub.coefficient}")
    terms = rep.nonzero_substates()
    if terms:
        lines.append("nonzero sub-state contributions:")
        for t in terms:
            label = "rho" if t.selector is None else str(t.selector)
            line = f"  {label} trace={t.trace:.6g} inner^2={t.value_squared!r}"
            if t.criteria is not None:
                pt = ",".join(f"{d:.6g}" for d in t.criteria.pt_deficits)
                re = ",".join(f"{d:.6g}" for d in t.criteria.realign_deficits)
                line += f" pt=[{pt}] realign=[{re}]"
            lines.append(line)
    return "\n".join(lines)


def cmd_bound(args) -> int:
    state = load_state(args.input)
    rho = state.density() if isinstance(state, PureState) else state
    weights = parse_weights(args.weights) if args.weights else None
    rep = evaluate_bound(rho, args.method, args.m, weights, parallel=args.parallel)
    print(json.dumps(rep.to_dict()) if args.json else format_report(rep))
    return EXIT_OK


FAMILIES = {
    "dct": (lambda x: dct_state(DctParams.noisy_ghz(x)), "theorem2"),
    "depol333": (depolarized_ghz_333, "hierarchy"),
}


def sweep_rows(family: str, start: float, stop: float, steps: int, method: str | None = None,
               m: int | None = None, parallel: bool = False) -> list[list[float]]:
    if family not in FAMILIES:
        raise InvalidInputError(f"unknown family {family!r}")
    if steps < 2:
        raise InvalidInputError("steps must be at least 2")
    if not stop > start:
        raise InvalidInputError("sweep needs stop > start")
    build, default_method = FAMILIES[family]
    method = method or default_method
    rows = []
    for k in range(steps):
        x = start + k * (stop - start) / (steps - 1)
        rep = evaluate_bound(build(x), method, m, parallel=parallel)
        rows.append([x, rep.value, rep.pt_sum, rep.realign_sum])
    return rows


def rows_to_csv(rows: list[list[float]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SWEEP_HEADER)
    for row in rows:
        # repr gives the shortest round-trip decimal form
        writer.writerow([repr(float(v)) for v in row])
    return buf.getvalue()


def cmd_sweep(args) -> int:
    rows = sweep_rows(args.family, args.start, args.stop, args.steps, args.method, args.m, args.parallel)
    text = rows_to_csv(rows)
    if args.output in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(args.output).write_text(text)
    return EXIT_OK


def cmd_verify(args) -> int:
    results = verify.run_suite(args.trials, args.seed)
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        print(f"{status} {res.name} ({res.cases} cases)")
        if not res.passed:
            print(f"  {res.failure}")
    return EXIT_OK if all(r.passed for r in results) else EXIT_PROPERTY


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mpconcurrence", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pure", help="concurrence of a pure state file, both forms")
    p.add_argument("input")
    p.add_argument("--prefactor", action="store_true", help="apply sqrt(N/(6(N-1)))")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_pure)

    p = sub.add_parser("bound", help="lower bound for a state file")
    p.add_argument("input")
    p.add_argument("--method", choices=["theorem2", "hierarchy"], default="hierarchy")
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--weights", default=None, help="convex weights m:p,m:p,...")
    p.add_argument("--json", action="store_true")
    p.add_argument("--parallel", action="store_true")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("sweep", help="bound along a one-parameter family, as CSV")
    p.add_argument("family", choices=sorted(FAMILIES))
    p.add_argument("--start", type=float, default=0.0)
    p.add_argument("--stop", type=float, default=1.0)
    p.add_argument("--steps", type=int, default=30)
    p.add_argument("--method", choices=["theorem2", "hierarchy"], default=None)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--output", "-o", default=None)
    p.add_argument("--parallel", action="store_true")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="run the seeded property suite")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SubstateEvaluationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        if isinstance(exc.cause, (np.linalg.LinAlgError, ArithmeticError)):
            return EXIT_NUMERICAL
        return EXIT_INVALID
    # LinAlgError subclasses ValueError, so it must be caught first
    except (np.linalg.LinAlgError, ArithmeticError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (InvalidInputError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
