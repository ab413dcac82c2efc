"""Pure numpy ascent lane: every restart advances as one column of a batch."""

from __future__ import annotations

import numpy as np


def _col_norms(X: np.ndarray, e: float) -> np.ndarray:
    A = np.abs(X)
    if np.isinf(e):
        return A.max(axis=0)
    if e == 1.0:
        return A.sum(axis=0)
    peak = A.max(axis=0)
    safe = np.where(peak > 0.0, peak, 1.0)
    return safe * ((A / safe) ** e).sum(axis=0) ** (1.0 / e)


def _q_norming_direction(Y: np.ndarray, q: float) -> np.ndarray:
    if np.isinf(q):
        idx = np.argmax(np.abs(Y), axis=0)
        cols = np.arange(Y.shape[1])
        G = np.zeros_like(Y)
        G[idx, cols] = np.where(Y[idx, cols] < 0.0, -1.0, 1.0)
        return G
    if q == 1.0:
        return np.sign(Y)
    A = np.abs(Y)
    peak = A.max(axis=0)
    safe = np.where(peak > 0.0, peak, 1.0)
    return np.sign(Y) * (A / safe) ** (q - 1.0)


def _p_dual_direction(Z: np.ndarray, p: float) -> np.ndarray:
    if p == 1.0:
        idx = np.argmax(np.abs(Z), axis=0)
        cols = np.arange(Z.shape[1])
        X = np.zeros_like(Z)
        X[idx, cols] = np.where(Z[idx, cols] < 0.0, -1.0, 1.0)
        return X
    if np.isinf(p):
        S = np.sign(Z)
        return np.where(S == 0.0, 1.0, S)
    A = np.abs(Z)
    peak = A.max(axis=0)
    safe = np.where(peak > 0.0, peak, 1.0)
    return np.sign(Z) * (A / safe) ** (1.0 / (p - 1.0))


def ascent_run(
    A: np.ndarray,
    X0: np.ndarray,
    p: float,
    q: float,
    tol: float = 1e-12,
    max_iter: int = 10000,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    A = np.ascontiguousarray(A, dtype=np.float64)
    X = np.array(X0, dtype=np.float64, copy=True)
    norms = _col_norms(X, p)
    if np.any(norms == 0.0):
        raise ValueError("ascent starts must be nonzero")
    X /= norms
    R = _col_norms(A @ X, q)
    k = X.shape[1]
    iters = np.zeros(k, dtype=np.int64)
    active = R > 0.0  # a start with zero image cannot ascend
    for _ in range(max_iter):
        live = np.where(active)[0]
        if live.size == 0:
            break
        Y = A @ X[:, live]
        G = _q_norming_direction(Y, q)
        Z = A.T @ G
        D = _p_dual_direction(Z, p)
        dn = _col_norms(D, p)
        ok = dn > 0.0
        active[live[~ok]] = False
        sub = live[ok]
        if sub.size:
            Xn = D[:, ok] / dn[ok]
            Rn = _col_norms(A @ Xn, q)
            prev = R[sub]
            if np.any(Rn < prev * (1.0 - 1e-9)):
                raise AssertionError("ascent quotient decreased; the update map is broken")
            adv = Rn >= prev
            upd = sub[adv]
            X[:, upd] = Xn[:, adv]
            R[upd] = Rn[adv]
            rel = (Rn - prev) / np.where(Rn > 0.0, Rn, 1.0)
            active[sub] = adv & (rel >= tol)
        iters[live] += 1
    return R, X, iters
