"""JSON file formats.

Matrix::

    {"rows": r, "cols": c, "data": [[re, im], ...]}      # row-major, r*c pairs

Kraus set: ``{"dim": n, "operators": [matrix, ...]}``.
Ensemble: ``{"members": [{"p": x, "state": [[re, im], ...]}, ...]}``.
Observables, density matrices and basis transformations are bare matrices.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .channel import DensityMatrix, KrausSet, PureStateEnsemble


class FormatError(ValueError):
    """Input JSON does not follow the expected layout."""


def _pairs_to_complex(pairs, what: str) -> np.ndarray:
    try:
        arr = np.array(pairs, dtype=float)
    except (TypeError, ValueError) as exc:
        raise FormatError(f"{what}: entries must be [re, im] pairs") from exc
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise FormatError(f"{what}: entries must be [re, im] pairs")
    return arr[:, 0] + 1j * arr[:, 1]


def _complex_to_pairs(values) -> list[list[float]]:
    return [[float(z.real), float(z.imag)] for z in np.asarray(values, dtype=np.complex128).ravel()]


def matrix_from_json(obj) -> np.ndarray:
    if not isinstance(obj, dict) or not {"rows", "cols", "data"} <= obj.keys():
        raise FormatError("matrix must be an object with rows, cols and data")
    rows, cols = obj["rows"], obj["cols"]
    if not (isinstance(rows, int) and isinstance(cols, int)) or rows < 1 or cols < 1:
        raise FormatError("rows and cols must be positive integers")
    flat = _pairs_to_complex(obj["data"], "matrix data")
    if flat.size != rows * cols:
        raise FormatError(f"matrix data has {flat.size} entries, expected {rows * cols}")
    if not np.all(np.isfinite(flat)):
        raise FormatError("matrix data contains non-finite values")
    return flat.reshape(rows, cols)


def matrix_to_json(m) -> dict:
    m = np.asarray(m, dtype=np.complex128)
    return {"rows": int(m.shape[0]), "cols": int(m.shape[1]), "data": _complex_to_pairs(m)}


def kraus_from_json(obj) -> KrausSet:
    if not isinstance(obj, dict) or "operators" not in obj:
        raise FormatError("Kraus set must be an object with an operators list")
    ops = [matrix_from_json(m) for m in obj["operators"]]
    if not ops:
        raise FormatError("Kraus set has no operators")
    dim = obj.get("dim", ops[0].shape[0])
    if any(m.shape != (dim, dim) for m in ops):
        raise FormatError(f"every Kraus operator must be {dim}x{dim}")
    return KrausSet(tuple(ops))


def kraus_to_json(ks: KrausSet) -> dict:
    return {"dim": ks.dim, "operators": [matrix_to_json(m) for m in ks]}


def ensemble_from_json(obj) -> PureStateEnsemble:
    if not isinstance(obj, dict) or not isinstance(obj.get("members"), list):
        raise FormatError("ensemble must be an object with a members list")
    members = []
    for entry in obj["members"]:
        if not isinstance(entry, dict) or "p" not in entry or "state" not in entry:
            raise FormatError("ensemble members need p and state")
        members.append((float(entry["p"]), _pairs_to_complex(entry["state"], "state")))
    return PureStateEnsemble(tuple(members))


def ensemble_to_json(e: PureStateEnsemble) -> dict:
    return {"members": [{"p": p, "state": _complex_to_pairs(phi)} for p, phi in e]}


def density_from_json(obj) -> DensityMatrix:
    return DensityMatrix(matrix_from_json(obj))


def load_json(path) -> object:
    with open(Path(path), encoding="utf-8") as fh:
        return json.load(fh)


def dump_json(obj, path) -> None:
    with open(Path(path), "w", encoding="utf-8") as fh:
        json.dump(obj, fh, indent=2)
        fh.write("\n")
