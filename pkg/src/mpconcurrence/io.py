"""JSON state files.

A density file looks like::

    {"dims": [2, 2, 2], "kind": "density",
     "entries": [[[re, im], [re, im], ...], ...]}

and a pure file stores a flat amplitude list under ``entries`` with
``"kind": "pure"``. When ``kind`` is missing it is inferred from the nesting.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .states import DensityMatrix, PureState
from .tensor import InvalidInputError


def _decode_complex(pair) -> complex:
    if isinstance(pair, (int, float)):
        return complex(pair)
    if not (isinstance(pair, list) and len(pair) == 2):
        raise InvalidInputError(f"entry {pair!r} is not a [real, imag] pair")
    return complex(float(pair[0]), float(pair[1]))


def _encode(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def parse_state(doc: dict) -> PureState | DensityMatrix:
    if not isinstance(doc, dict) or "dims" not in doc or "entries" not in doc:
        raise InvalidInputError("state file needs 'dims' and 'entries'")
    dims = tuple(int(d) for d in doc["dims"])
    entries = doc["entries"]
    if not isinstance(entries, list) or not entries:
        raise InvalidInputError("'entries' must be a non-empty list")
    kind = doc.get("kind")
    if kind is None:
        # a density row is a list of pairs; a pure entry is a single pair
        kind = "density" if isinstance(entries[0], list) and entries[0] and isinstance(entries[0][0], list) else "pure"
    try:
        if kind == "pure":
            amps = np.array([_decode_complex(e) for e in entries], dtype=complex)
            return PureState(amps, dims)
        if kind == "density":
            mat = np.array([[_decode_complex(e) for e in row] for row in entries], dtype=complex)
            return DensityMatrix(mat, dims)
    except (TypeError, ValueError) as exc:
        if isinstance(exc, InvalidInputError):
            raise
        raise InvalidInputError(f"malformed entries: {exc}") from exc
    raise InvalidInputError(f"unknown state kind {kind!r}")


def load_state(path: str | Path) -> PureState | DensityMatrix:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"{path}: not valid JSON ({exc})") from exc
    return parse_state(doc)


def state_to_dict(state: PureState | DensityMatrix) -> dict:
    if isinstance(state, PureState):
        return {"dims": list(state.dims), "kind": "pure",
                "entries": [_encode(z) for z in state.amplitudes]}
    return {"dims": list(state.dims), "kind": "density",
            "entries": [[_encode(z) for z in row] for row in state.matrix]}


def save_state(state: PureState | DensityMatrix, path: str | Path) -> None:
    Path(path).write_text(json.dumps(state_to_dict(state)) + "\n")
