"""Dense matrix validation, application, and the text interchange format.

Format: first line "rows cols", then one whitespace-separated line of decimal
entries per row. Every CLI subcommand reads and writes this shape.
"""

from __future__ import annotations

import os
from typing import Iterable

import numpy as np

# A dense matrix is a validated 2-D float64 array.
DenseMatrix = np.ndarray


def as_matrix(a: object) -> np.ndarray:
    arr = np.asarray(a, dtype=float)
    if arr.ndim != 2:
        raise ValueError(f"a dense matrix must be 2-D, got shape {arr.shape}")
    if arr.size == 0:
        raise ValueError("a dense matrix must have at least one row and one column")
    if not np.isfinite(arr).all():
        raise ValueError("matrix entries must all be finite")
    return np.ascontiguousarray(arr)


def matrix_apply(A: np.ndarray, x: np.ndarray) -> np.ndarray:
    A = as_matrix(A)
    x = np.asarray(x, dtype=float).ravel()
    if A.shape[1] != x.size:
        raise ValueError(f"matrix has {A.shape[1]} columns, vector has dimension {x.size}")
    return A @ x


def format_matrix(A: np.ndarray) -> str:
    A = as_matrix(A)
    rows, cols = A.shape
    lines = [f"{rows} {cols}"]
    for i in range(rows):
        lines.append(" ".join(repr(float(v)) for v in A[i]))
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> np.ndarray:
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise ValueError("empty matrix text")
    header = lines[0].split()
    if len(header) != 2:
        raise ValueError(f"header must be 'rows cols', got {lines[0]!r}")
    try:
        rows, cols = int(header[0]), int(header[1])
    except ValueError as exc:
        raise ValueError(f"header must hold two integers, got {lines[0]!r}") from exc
    if rows <= 0 or cols <= 0:
        raise ValueError(f"matrix dimensions must be positive, got {rows}x{cols}")
    if len(lines) - 1 != rows:
        raise ValueError(f"expected {rows} data rows, found {len(lines) - 1}")
    out = np.empty((rows, cols), dtype=float)
    for i, line in enumerate(lines[1:]):
        tokens = line.split()
        if len(tokens) != cols:
            raise ValueError(f"row {i} has {len(tokens)} entries, expected {cols}")
        try:
            out[i] = [float(tok) for tok in tokens]
        except ValueError as exc:
            raise ValueError(f"row {i} holds a non-numeric entry: {line!r}") from exc
    return as_matrix(out)


def read_matrix(path: str | os.PathLike) -> np.ndarray:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_matrix(fh.read())


def write_matrix(path: str | os.PathLike, A: np.ndarray) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_matrix(A))


def stack_basis(basis: "Iterable[np.ndarray] | np.ndarray") -> np.ndarray:
    """Basis vectors as matrix columns; accepts a list of vectors or an (m, k) array."""
    if isinstance(basis, np.ndarray) and basis.ndim == 2:
        V = np.array(basis, dtype=float)
    else:
        V = np.column_stack([np.asarray(b, dtype=float).ravel() for b in basis])
    if V.ndim != 2 or V.size == 0:
        raise ValueError("basis must hold at least one vector")
    return V
