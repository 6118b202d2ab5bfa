"""JSON state files and CSV tables.

Pure state: {"dims": [...], "amplitudes": [[re, im], ...]}
Density:    {"dims": [...], "matrix": [[[re, im], ...], ...]}
Amplitudes are row-major with party 0 most significant. Floats are written
with 17 significant digits so files round-trip bit-exactly.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import BadShape, InvalidState
from .states import DensityMatrix, PureState, make_pure


def _num(v: float) -> str:
    v = float(v)
    if not np.isfinite(v):
        raise ValueError("non-finite value in state file")
    s = format(v, ".17g")
    return s if any(c in s for c in ".en") else s + ".0"


def _emit(obj) -> str:
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_emit(o) for o in obj) + "]"
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(k)}: {_emit(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _num(obj)
    if obj is None:
        return "null"
    return json.dumps(obj)


def dumps(obj) -> str:
    """JSON text with every float at 17 significant digits."""
    return _emit(obj) + "\n"


def _pairs(z) -> list:
    z = np.asarray(z, dtype=np.complex128)
    if z.ndim == 0:
        return [float(z.real), float(z.imag)]
    return [_pairs(v) for v in z]


def state_to_dict(state) -> dict:
    if isinstance(state, PureState):
        return {"dims": list(state.dims), "amplitudes": _pairs(state.amplitudes)}
    if isinstance(state, DensityMatrix):
        return {"dims": list(state.dims), "matrix": _pairs(state.matrix)}
    raise TypeError(f"cannot serialize {type(state).__name__}")


def _complex(a) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    if a.shape[-1] != 2:
        raise BadShape("complex entries must be [re, im] pairs")
    return a[..., 0] + 1j * a[..., 1]


def state_from_dict(d: dict):
    dims = tuple(int(x) for x in d["dims"])
    if "amplitudes" in d:
        amps = _complex(d["amplitudes"])
        try:
            return PureState(dims, amps)  # keep stored bits when already normalized
        except InvalidState:
            return make_pure(dims, amps)
    if "matrix" in d:
        return DensityMatrix(dims, _complex(d["matrix"]))
    raise BadShape("state file needs 'amplitudes' or 'matrix'")


def save_state(state, path) -> None:
    Path(path).write_text(dumps(state_to_dict(state)))


def load_state(path):
    return state_from_dict(json.loads(Path(path).read_text()))


def fmt12(v: float) -> str:
    return f"{float(v):.12g}"


def csv_text(header: Sequence[str], rows: Iterable[Sequence[float]]) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(fmt12(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def read_csv(path) -> tuple[list[str], np.ndarray]:
    text = Path(path).read_text().splitlines()
    header = text[0].split(",")
    data = np.array([[float(v) for v in line.split(",")] for line in text[1:] if line])
    return header, data.reshape(-1, len(header))
