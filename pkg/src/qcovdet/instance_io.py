"""Reading and writing problem instances as JSON.

An instance is one density matrix plus a tuple of observables:

    {
      "n": 2,
      "density": [[[re, im], [re, im]], [[re, im], [re, im]]],
      "observables": [ <matrix>, <matrix>, ... ]
    }

where every matrix is a list of rows and every entry is a two-element
[re, im] pair.  Validation errors name the offending field path, e.g.
"observables[1][0][2]: entry must be a [re, im] pair".
"""

from __future__ import annotations

import json

import numpy as np

from .errors import InstanceFormatError
from .states import DensityMatrix, validate_observable_tuple


def _entry_to_complex(entry, path: str) -> complex:
    if isinstance(entry, (int, float)) and not isinstance(entry, bool):
        return complex(entry)
    if (
        isinstance(entry, (list, tuple))
        and len(entry) == 2
        and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in entry)
    ):
        return complex(entry[0], entry[1])
    raise InstanceFormatError(f"{path}: entry must be a [re, im] pair, got {entry!r}")


def _matrix_from_json(rows, n: int, path: str) -> np.ndarray:
    if not isinstance(rows, list) or len(rows) != n:
        raise InstanceFormatError(f"{path}: expected {n} rows, got {rows!r:.80}")
    out = np.empty((n, n), dtype=complex)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise InstanceFormatError(
                f"{path}[{i}]: expected a row of {n} entries"
            )
        for j, entry in enumerate(row):
            out[i, j] = _entry_to_complex(entry, f"{path}[{i}][{j}]")
    return out


def parse_instance(obj, source: str = "instance") -> tuple[DensityMatrix, list[np.ndarray]]:
    """Build (density, observables) from a decoded JSON object.

    Raises InstanceFormatError for schema problems and ValidationError for
    matrices that parse but violate a mathematical invariant; both carry
    the field path.
    """
    if not isinstance(obj, dict):
        raise InstanceFormatError(f"{source}: top level must be an object")
    for key in ("n", "density", "observables"):
        if key not in obj:
            raise InstanceFormatError(f"{source}: missing required key {key!r}")
    n = obj["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise InstanceFormatError(f"{source}.n: must be a positive integer, got {n!r}")
    density_arr = _matrix_from_json(obj["density"], n, f"{source}.density")
    obs_json = obj["observables"]
    if not isinstance(obs_json, list) or not obs_json:
        raise InstanceFormatError(
            f"{source}.observables: must be a nonempty list of matrices"
        )
    observables = [
        _matrix_from_json(rows, n, f"{source}.observables[{k}]")
        for k, rows in enumerate(obs_json)
    ]
    density = DensityMatrix(density_arr)
    observables = validate_observable_tuple(observables, n)
    return density, observables


def load_instance(path) -> tuple[DensityMatrix, list[np.ndarray]]:
    """Read an instance JSON file from disk."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InstanceFormatError(f"{path}: not valid JSON ({exc})") from None
    return parse_instance(obj, source=str(path))


def _matrix_to_json(arr: np.ndarray) -> list:
    return [
        [[float(v.real), float(v.imag)] for v in row] for row in np.asarray(arr, dtype=complex)
    ]


def instance_to_json(density: DensityMatrix, observables) -> dict:
    """Serialize an instance back to the JSON schema (round-trips exactly)."""
    return {
        "n": density.n,
        "density": _matrix_to_json(density.matrix),
        "observables": [_matrix_to_json(a) for a in observables],
    }


def save_instance(path, density: DensityMatrix, observables) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(instance_to_json(density, observables), fh, sort_keys=True)
        fh.write("\n")
