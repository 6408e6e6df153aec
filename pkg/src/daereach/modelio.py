"""Reading and writing model, initial-set, and unsafe-set files.

One JSON document per artifact.  Matrices are either dense nested arrays
or sparse ``{"shape": [rows, cols], "triples": [[row, col, value], ...]}``
objects with 0-based indices; reals use decimal or scientific notation.
Model files carry ``n``, ``m``, the matrices ``E``, ``A``, ``B`` and an
optional ``A_u`` (absent or null means no inputs).  Initial-set files
carry ``V``, ``C``, ``d`` and optionally ``U0``; unsafe files carry ``G``,
``f`` and optionally ``on_original_state``.

Values written by :func:`save_model` round-trip bit-exactly: JSON floats
are serialized with ``repr``, which is exact for binary doubles.
"""

import json

import numpy as np

from .benchmarks import build_rotating_masses, build_stokes
from .errors import DimensionMismatchError, EmptyPredicateError, ParseError
from .model import DaeSystem, InputModel
from .safety import UnsafeSpec
from .starset import StarSet

__all__ = [
    "load_model",
    "save_model",
    "load_initial_star",
    "save_initial_star",
    "load_unsafe",
    "save_unsafe",
    "load_directions",
]

BUILTIN_PREFIX = "builtin:"


def _load_document(path):
    try:
        with open(path, "r", encoding="utf-8") as handle:
            document = json.load(handle)
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc}", path=path)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno}: {exc.msg}", path=path)
    if not isinstance(document, dict):
        raise ParseError("top-level value must be an object", path=path)
    return document


def _matrix_from_json(value, path, field):
    if isinstance(value, dict):
        try:
            rows, cols = (int(x) for x in value["shape"])
            triples = value["triples"]
        except (KeyError, TypeError, ValueError):
            raise ParseError(
                "sparse matrix needs 'shape': [rows, cols] and 'triples'",
                path=path,
                field=field,
            )
        if rows < 1 or cols < 0:
            raise ParseError(f"bad shape [{rows}, {cols}]", path=path, field=field)
        matrix = np.zeros((rows, cols))
        for entry in triples:
            try:
                i, j, v = entry
                matrix[int(i), int(j)] = float(v)
            except (TypeError, ValueError, IndexError):
                raise ParseError(
                    f"bad sparse triple {entry!r}", path=path, field=field
                )
        return matrix
    try:
        matrix = np.array(value, dtype=float)
    except (TypeError, ValueError):
        raise ParseError("matrix must be a nested array of reals", path=path, field=field)
    if matrix.ndim != 2:
        raise ParseError(
            f"matrix must be 2-D, got shape {matrix.shape}", path=path, field=field
        )
    if not np.all(np.isfinite(matrix)):
        raise ParseError("matrix contains non-finite entries", path=path, field=field)
    return matrix


def _vector_from_json(value, path, field):
    try:
        vector = np.array(value, dtype=float)
    except (TypeError, ValueError):
        raise ParseError("expected an array of reals", path=path, field=field)
    if vector.ndim == 2 and vector.shape[1] == 1:
        vector = vector[:, 0]
    if vector.ndim != 1:
        raise ParseError(
            f"expected a flat array, got shape {vector.shape}", path=path, field=field
        )
    if not np.all(np.isfinite(vector)):
        raise ParseError("vector contains non-finite entries", path=path, field=field)
    return vector


def _require(document, key, path):
    if key not in document:
        raise ParseError("missing required field", path=path, field=key)
    return document[key]


def _parse_builtin(name):
    spec = name[len(BUILTIN_PREFIX) :]
    if spec == "rotating-masses":
        return build_rotating_masses()
    if spec.startswith("stokes:"):
        try:
            grid_n = int(spec.split(":", 1)[1])
        except ValueError:
            raise ParseError(f"bad grid size in alias {name!r}", path=name)
        if grid_n < 2:
            raise ParseError(f"stokes grid size must be >= 2, got {grid_n}", path=name)
        return build_stokes(grid_n), InputModel()
    raise ParseError(f"unknown builtin alias {name!r}", path=name)


def load_model(path):
    """Load a DAE model and its input model from a file or builtin alias.

    Aliases: ``builtin:rotating-masses`` and ``builtin:stokes:<k>``.
    """
    path = str(path)
    if path.startswith(BUILTIN_PREFIX):
        return _parse_builtin(path)
    document = _load_document(path)
    n = _require(document, "n", path)
    m = _require(document, "m", path)
    try:
        n, m = int(n), int(m)
    except (TypeError, ValueError):
        raise ParseError("n and m must be integers", path=path, field="n/m")
    if n < 1 or m < 0:
        raise ParseError(f"need n >= 1 and m >= 0, got n={n}, m={m}", path=path, field="n/m")

    E = _matrix_from_json(_require(document, "E", path), path, "E")
    A = _matrix_from_json(_require(document, "A", path), path, "A")
    if E.shape != (n, n):
        raise ParseError(f"E must be {n}x{n}, got {E.shape}", path=path, field="E")
    if A.shape != (n, n):
        raise ParseError(f"A must be {n}x{n}, got {A.shape}", path=path, field="A")

    if m == 0:
        B = np.zeros((n, 0))
        if "B" in document and document["B"] is not None:
            B = _matrix_from_json(document["B"], path, "B")
    else:
        B = _matrix_from_json(_require(document, "B", path), path, "B")
    if B.shape != (n, m):
        raise ParseError(f"B must be {n}x{m}, got {B.shape}", path=path, field="B")

    a_u = document.get("A_u")
    if a_u is None:
        inputs = InputModel()
    else:
        a_u = _matrix_from_json(a_u, path, "A_u")
        if a_u.shape != (m, m):
            raise ParseError(f"A_u must be {m}x{m}, got {a_u.shape}", path=path, field="A_u")
        inputs = InputModel(a_u)
    return DaeSystem(E, A, B), inputs


def _matrix_to_json(matrix):
    return [[float(v) for v in row] for row in np.asarray(matrix)]


def save_model(path, sys, inputs=None):
    """Write a model file (dense form) that reloads bit-identically."""
    document = {
        "n": sys.n,
        "m": sys.m,
        "E": _matrix_to_json(sys.E),
        "A": _matrix_to_json(sys.A),
        "B": _matrix_to_json(sys.B) if sys.m else None,
        "A_u": None
        if inputs is None or inputs.is_none
        else _matrix_to_json(inputs.a_u),
    }
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(document, handle, indent=1)
        handle.write("\n")


def load_initial_star(path, n, m=0):
    """Load an initial star for a system with ``n`` states and ``m`` inputs.

    ``V`` may have ``n + m`` rows (already lifted), or ``n`` rows, in
    which case the input block is taken from ``U0`` when present and
    zero-filled otherwise.  A ``center`` vector (center-form set
    ``{c + V a}``) is folded into a leading basis column whose
    coefficient is pinned to 1 by an equality pair in the predicate.
    """
    document = _load_document(path)
    V = _matrix_from_json(_require(document, "V", path), path, "V")
    C = _matrix_from_json(_require(document, "C", path), path, "C")
    d = _vector_from_json(_require(document, "d", path), path, "d")
    if "center" in document and document["center"] is not None:
        center = _vector_from_json(document["center"], path, "center")
        if center.shape[0] != V.shape[0]:
            raise ParseError(
                f"center must have {V.shape[0]} entries, got {center.shape[0]}",
                path=path,
                field="center",
            )
        V = np.column_stack([center, V])
        k = C.shape[1]
        pin = np.zeros((2, k + 1))
        pin[0, 0] = 1.0
        pin[1, 0] = -1.0
        C = np.vstack([pin, np.hstack([np.zeros((C.shape[0], 1)), C])])
        d = np.concatenate([[1.0, -1.0], d])
    if V.shape[0] == n and m > 0:
        if "U0" in document and document["U0"] is not None:
            U0 = _matrix_from_json(document["U0"], path, "U0")
            if U0.shape != (m, V.shape[1]):
                raise ParseError(
                    f"U0 must be {m}x{V.shape[1]}, got {U0.shape}", path=path, field="U0"
                )
        else:
            U0 = np.zeros((m, V.shape[1]))
        V = np.vstack([V, U0])
    if V.shape[0] != n + m:
        raise ParseError(
            f"V must have {n} or {n + m} rows, got {V.shape[0]}", path=path, field="V"
        )
    try:
        return StarSet(V, C, d)
    except (DimensionMismatchError, EmptyPredicateError, ValueError) as exc:
        raise ParseError(f"invalid initial star: {exc}", path=path)


def save_initial_star(path, star):
    document = {
        "V": _matrix_to_json(star.V),
        "C": _matrix_to_json(star.C),
        "d": [float(v) for v in star.d],
    }
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(document, handle, indent=1)
        handle.write("\n")


def load_unsafe(path):
    """Load an unsafe set ``G x <= f``."""
    document = _load_document(path)
    G = _matrix_from_json(_require(document, "G", path), path, "G")
    f = _vector_from_json(_require(document, "f", path), path, "f")
    on_original = bool(document.get("on_original_state", True))
    if G.shape[0] != f.shape[0]:
        raise ParseError(
            f"G has {G.shape[0]} rows but f has {f.shape[0]} entries",
            path=path,
            field="G/f",
        )
    return UnsafeSpec(G, f, on_original_state=on_original)


def save_unsafe(path, unsafe):
    document = {
        "G": _matrix_to_json(unsafe.G),
        "f": [float(v) for v in unsafe.f],
        "on_original_state": unsafe.on_original_state,
    }
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(document, handle, indent=1)
        handle.write("\n")


def load_directions(path):
    """Load a directions matrix ``D`` (one observation direction per row)."""
    document = _load_document(path)
    return _matrix_from_json(_require(document, "D", path), path, "D")
