"""Alternating-ascent inner loops.

Two interchangeable lanes: a compiled Cython kernel and a vectorized numpy
fallback. The compiled lane is used when its extension imported successfully;
set PQCERT_PURE=1 to force the fallback. Both lanes share the semantics below:

- every column of X0 is one restart, kept l_p-normalized;
- the Rayleigh quotient ||Ax||_q / ||x||_p never decreases along iterations;
- a column freezes when its relative improvement drops below tol;
- argmax tie-breaks always take the lowest index.
"""

from __future__ import annotations

import os

import numpy as np

from . import _fallback

_compiled = None
if not os.environ.get("PQCERT_PURE"):
    try:
        from . import _ascent as _compiled  # type: ignore[no-redef]
    except ImportError:
        _compiled = None


def using_compiled_kernel() -> bool:
    return _compiled is not None


def ascent_run(
    A: np.ndarray,
    X0: np.ndarray,
    p: float,
    q: float,
    tol: float = 1e-12,
    max_iter: int = 10000,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Run the ascent from every column of X0; returns (quotients, witnesses, iterations)."""
    A = np.ascontiguousarray(A, dtype=np.float64)
    X0 = np.ascontiguousarray(np.asarray(X0, dtype=np.float64))
    if X0.ndim != 2 or X0.shape[0] != A.shape[1]:
        raise ValueError(f"start columns must have dimension {A.shape[1]}")
    if _compiled is not None:
        return _compiled.ascent_run(A, X0, float(p), float(q), float(tol), int(max_iter))
    return _fallback.ascent_run(A, X0, float(p), float(q), float(tol), int(max_iter))
