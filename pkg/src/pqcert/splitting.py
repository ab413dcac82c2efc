"""Banded truncation and the interlaced two-block-diagonal split.

A banded support keeps entry (i,j) when i <= M_j and j <= N_i (1-based, M
and N strictly increasing). Any matrix truncates onto such a support with a
certified (p,q)-error budget, and any matrix supported there splits exactly
as W + V where each part is block-diagonal for its own interlaced system of
square cut blocks.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exponents import ExponentLike, ExtendedExponent
from .matrices import DenseMatrix, as_matrix
from .norms import norm_along_axis


@dataclass(frozen=True)
class BandedSupport:
    """Per-column row bounds M and per-row column bounds N, both strictly increasing."""

    M: tuple[int, ...]
    N: tuple[int, ...]
    size: int

    def __post_init__(self) -> None:
        M = tuple(int(v) for v in self.M)
        N = tuple(int(v) for v in self.N)
        object.__setattr__(self, "M", M)
        object.__setattr__(self, "N", N)
        if len(M) != self.size or len(N) != self.size:
            raise ValueError(f"bound sequences must have length {self.size}")
        for name, seq in (("M", M), ("N", N)):
            if seq[0] < 1 or any(b <= a for a, b in zip(seq, seq[1:])):
                raise ValueError(f"{name} must be strictly increasing and positive")

    def mask(self) -> np.ndarray:
        """Boolean admissibility mask: (i,j) kept iff i < M[j] and j < N[i] (0-based)."""
        idx = np.arange(self.size)
        cols_ok = idx[:, None] < np.asarray(self.M)[None, :]
        rows_ok = idx[None, :] < np.asarray(self.N)[:, None]
        return cols_ok & rows_ok


@dataclass(frozen=True, eq=False)
class TruncationResult:
    """Banded approximation with its certified (p,q) error budget.

    Iterates as the pair (S, support) so callers can unpack just the data.
    """

    S: DenseMatrix
    support: BandedSupport
    certified_error: float
    column_budget: float
    row_budget: float

    def __iter__(self):
        return iter((self.S, self.support))


def _suffix_norms(values: np.ndarray, e: ExtendedExponent) -> np.ndarray:
    """t[k] = ||values[k:]||_e for k = 0..len, computed by reverse accumulation."""
    a = np.abs(values)[::-1]
    if e.is_infinite:
        acc = np.maximum.accumulate(a)
    elif e == 1:
        acc = np.cumsum(a)
    else:
        acc = np.cumsum(a ** float(e)) ** (1.0 / float(e))
    return np.concatenate([acc[::-1], [0.0]])


def _keep_counts(T: np.ndarray, e: ExtendedExponent, allowance: float) -> np.ndarray:
    """Per column of T, the least number of leading entries whose discard tail is within allowance."""
    m = T.shape[0]
    counts = np.empty(T.shape[1], dtype=int)
    for j in range(T.shape[1]):
        tails = _suffix_norms(T[:, j], e)
        counts[j] = int(np.argmax(tails <= allowance + 1e-300))
    return np.minimum(counts, m)


def _strictify(raw: np.ndarray) -> tuple[int, ...]:
    out = []
    prev = 0
    for v in raw:
        prev = max(int(v), prev + 1)
        out.append(prev)
    return tuple(out)


def truncate_to_banded(
    R: DenseMatrix, eps: float, p: ExponentLike, q: ExponentLike
) -> TruncationResult:
    """Zero out column and row tails while certifying ||R - S||_{p,q} <= eps.

    Half the budget goes to columns, half to rows. A discarded column tail
    of q-norm t_j contributes through the envelope ||E||_{p,q} <= l_{p'} of
    the column q-norms; a discarded row tail of p'-norm u_i contributes
    through ||E||_{p,q} <= l_q of the row p'-norms. Per-tail allowances of
    (eps/2) m^{-1/p'} and (eps/2) m^{-1/q} make both aggregates sum below
    eps/2. The reported certified_error re-aggregates the tails actually
    discarded, so it is 0 when the support already covers every nonzero.
    """
    R = as_matrix(R)
    if R.shape[0] != R.shape[1]:
        raise ValueError("banded truncation is defined for square matrices")
    if eps <= 0.0:
        raise ValueError("error budget must be positive")
    p, q = ExtendedExponent(p), ExtendedExponent(q)
    if p > q:
        raise ValueError(f"requires p <= q, got ({p},{q})")
    m = R.shape[0]
    pd = p.dual

    col_allow = (eps / 2.0) * m ** (-float(pd.reciprocal))
    M = _strictify(_keep_counts(R, q, col_allow))
    col_mask = np.arange(m)[:, None] < np.asarray(M)[None, :]
    S1 = np.where(col_mask, R, 0.0)

    row_allow = (eps / 2.0) * m ** (-float(q.reciprocal))
    N = _strictify(_keep_counts(S1.T, pd, row_allow))
    support = BandedSupport(M, N, m)
    S = np.where(support.mask(), S1, 0.0)

    col_tails = norm_along_axis(R - S1, q, axis=0)
    row_tails = norm_along_axis(S1 - S, pd, axis=1)
    achieved = float(
        norm_along_axis(col_tails.reshape(-1, 1), pd, axis=0)[0]
        + norm_along_axis(row_tails.reshape(-1, 1), q, axis=0)[0]
    )
    return TruncationResult(as_matrix(S), support, achieved, eps / 2.0, eps / 2.0)


def interlaced_cut_points(support: BandedSupport) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """The interlaced cut sequences k and l driven by the support bounds.

    k_0 = 0, l_0 = 1, then each sequence jumps past the other's bounds:
    k_{n+1} = max(M_{l_n}, N_{l_n}, k_n + 1) and l_{n+1} with the roles
    swapped, everything clamped to the matrix size. Strict increase is
    forced so degenerate supports (M_j = j) still advance.
    """
    m = support.size
    k = [0]
    ell = [1 if m > 1 else m]
    while k[-1] < m or ell[-1] < m:
        if k[-1] < m:
            j = min(ell[-1], m)
            k.append(min(max(support.M[j - 1], support.N[j - 1], k[-1] + 1), m))
        if ell[-1] < m:
            i = min(k[-1], m)
            ell.append(min(max(support.M[i - 1], support.N[i - 1], ell[-1] + 1), m))
    return tuple(k), tuple(ell)


def _block_mask(cuts: tuple[int, ...], m: int) -> np.ndarray:
    mask = np.zeros((m, m), dtype=bool)
    for a, b in zip(cuts, cuts[1:]):
        lo, hi = min(a, m), min(b, m)
        if hi > lo:
            mask[lo:hi, lo:hi] = True
    return mask


@dataclass(frozen=True, eq=False)
class BlockSplit:
    """Exact split S = W + V into two block-diagonal parts on interlaced cuts."""

    W: DenseMatrix
    V: DenseMatrix
    k_cuts: tuple[int, ...]
    l_cuts: tuple[int, ...]


def split_block_diagonal(S: DenseMatrix, support: BandedSupport) -> BlockSplit:
    """Split a banded matrix into W (k-blocks) plus V (l-blocks), entrywise exact.

    Every admissible cell is covered by a k-block or an l-block; that
    inclusion is re-verified by exhaustive scan on each call, so V = S - W
    provably lives on the l-blocks. Entries are copied or zeroed, never
    recomputed, hence W + V = S in exact floating point.
    """
    S = as_matrix(S)
    m = support.size
    if S.shape != (m, m):
        raise ValueError(f"matrix must be {m}x{m} to match the support")
    adm = support.mask()
    if np.any((S != 0.0) & ~adm):
        raise ValueError("matrix has entries outside the admissible support")
    k, ell = interlaced_cut_points(support)
    dmask = _block_mask(k, m)
    lmask = _block_mask(ell, m)
    if np.any(adm & ~(dmask | lmask)):
        raise RuntimeError("interlaced blocks failed to cover the admissible set")
    W = np.where(dmask, S, 0.0)
    V = np.where(dmask, 0.0, S)
    return BlockSplit(as_matrix(W), as_matrix(V), k, ell)
