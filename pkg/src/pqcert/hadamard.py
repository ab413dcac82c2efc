"""Sylvester Hadamard matrices, scaled unit-norm blocks, and their algebra.

H_0 = (1) and H_{n+1} = ((H_n, H_n), (H_n, -H_n)), so H_n is 2^n x 2^n,
symmetric, and H_n^2 = 2^n I. The scaled block N^{-1/min(p',q)} H_n has
(p,q)-norm exactly 1 whenever 1 <= p <= 2 <= q.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
import scipy.linalg

from .exponents import ExponentLike, ExtendedExponent
from .matrices import DenseMatrix, as_matrix
from .norms import MixedNormSpace

MAX_DOUBLINGS = 14  # 2^14 x 2^14 int8 is 256 MiB, the desk-scale ceiling


def hadamard_matrix(n: int) -> DenseMatrix:
    """Sylvester Hadamard matrix of size 2^n, entries +-1 as int8.

    Convert to a wider dtype before forming products: row sums reach 2^n.
    """
    if not 0 <= n <= MAX_DOUBLINGS:
        raise ValueError(f"doubling count must lie in [0, {MAX_DOUBLINGS}], got {n}")
    H = np.ones((1, 1), dtype=np.int8)
    for _ in range(n):
        H = np.block([[H, H], [H, -H]])
    return H


def _scaling(p: ExtendedExponent, q: ExtendedExponent) -> Fraction:
    # 1/min(p', q) = the larger reciprocal
    return max(p.dual.reciprocal, q.reciprocal)


def _check_corner(p: ExtendedExponent, q: ExtendedExponent) -> None:
    if not (1 <= p <= 2 <= q):
        raise ValueError(f"scaled blocks require p <= 2 <= q, got ({p},{q})")


def u_block(n: int, p: ExponentLike, q: ExponentLike) -> DenseMatrix:
    """The norm-one block 2^{-n/min(p',q)} H_n for 1 <= p <= 2 <= q."""
    p, q = ExtendedExponent(p), ExtendedExponent(q)
    _check_corner(p, q)
    if n < 1:
        raise ValueError("block index starts at 1")
    a = _scaling(p, q)
    return float(2.0 ** (-n * float(a))) * hadamard_matrix(n).astype(np.float64)


def u_block_inverse(n: int, p: ExponentLike, q: ExponentLike) -> DenseMatrix:
    """Inverse N^{-1/p} H_n of the scaled block, for the directly invertible corner.

    Valid when p' <= q, where the scaling is N^{-1/p'} and H^2 = N I gives the
    formula. For p' > q work with the transposed data instead.
    """
    p, q = ExtendedExponent(p), ExtendedExponent(q)
    _check_corner(p, q)
    if n < 1:
        raise ValueError("block index starts at 1")
    if p.dual > q:
        raise ValueError(
            f"direct inverse needs p' <= q, got p'={p.dual} > q={q}; "
            "use duality: apply to the transpose with exponents (q',p')"
        )
    scale = 2.0 ** (-n * float(p.reciprocal))
    return scale * hadamard_matrix(n).astype(np.float64)


def rademacher_columns(n: int) -> list[int]:
    """Indices j_1..j_n with H_n[:, j_i] equal to the i-th alternating sign pattern.

    Pattern i holds +1/-1 in blocks of length 2^{n-i}. Located by exhaustive
    column comparison rather than an index formula.
    """
    if n < 1:
        raise ValueError("need at least one sign pattern")
    H = hadamard_matrix(n)
    N = 2**n
    t = np.arange(N)
    out: list[int] = []
    for i in range(1, n + 1):
        pattern = np.where((t // 2 ** (n - i)) % 2 == 0, 1, -1).astype(np.int8)
        matches = np.nonzero((H == pattern[:, None]).all(axis=0))[0]
        if matches.size != 1:
            raise AssertionError(f"sign pattern {i} matched {matches.size} columns")
        out.append(int(matches[0]))
    return out


@dataclass(frozen=True)
class BlockOperator:
    """A block-diagonal operator between outer l_p and l_q sums of the blocks."""

    blocks: tuple[DenseMatrix, ...]
    domain_outer: ExtendedExponent
    codomain_outer: ExtendedExponent

    def __post_init__(self) -> None:
        object.__setattr__(self, "blocks", tuple(as_matrix(b) for b in self.blocks))
        object.__setattr__(self, "domain_outer", ExtendedExponent(self.domain_outer))
        object.__setattr__(self, "codomain_outer", ExtendedExponent(self.codomain_outer))

    @property
    def domain_block_sizes(self) -> tuple[int, ...]:
        return tuple(b.shape[1] for b in self.blocks)

    @property
    def codomain_block_sizes(self) -> tuple[int, ...]:
        return tuple(b.shape[0] for b in self.blocks)

    def as_matrix(self) -> DenseMatrix:
        return as_matrix(scipy.linalg.block_diag(*self.blocks))


def block_direct_sum(
    blocks: list[DenseMatrix], p: ExponentLike, q: ExponentLike
) -> BlockOperator:
    """Assemble a direct sum; for p <= q its (p,q) norm is the largest block norm."""
    if not blocks:
        raise ValueError("need at least one block")
    p, q = ExtendedExponent(p), ExtendedExponent(q)
    if p > q:
        raise ValueError(f"direct sums are tracked only for p <= q, got ({p},{q})")
    return BlockOperator(tuple(blocks), p, q)


def finite_pd_identity(
    block_sizes: list[int], p: ExponentLike, q: ExponentLike
) -> tuple[MixedNormSpace, MixedNormSpace, DenseMatrix]:
    """Identity matrix viewed from (+l_2^{m_1} + ... )_p to the same sum with outer q.

    For p <= q the mixed (p,q) operator norm is exactly 1: the outer l_p norm
    dominates the outer l_q norm coordinatewise, and any single-block vector
    is a norming witness.
    """
    p, q = ExtendedExponent(p), ExtendedExponent(q)
    if p > q:
        raise ValueError(f"norm-one identity requires p <= q, got ({p},{q})")
    sizes = tuple(int(m) for m in block_sizes)
    if not sizes or any(m < 1 for m in sizes):
        raise ValueError("block sizes must be positive")
    domain = MixedNormSpace(sizes, inner=2, outer=p)
    codomain = MixedNormSpace(sizes, inner=2, outer=q)
    return domain, codomain, np.eye(sum(sizes))


def averaging_projection(n: int) -> DenseMatrix:
    """Projection of R^{2^{n+1}} onto vectors with equal halves; idempotent, norm 1."""
    eye = np.eye(2**n)
    return 0.5 * np.block([[eye, eye], [eye, eye]])


def halving_factorization(
    n: int, p: ExponentLike, q: ExponentLike
) -> tuple[DenseMatrix, DenseMatrix]:
    """Factors (C, D) with D @ u_block(n+1) @ C = u_block(n) and norm-one legs.

    Direct construction for q <= p' (scaling exponent is 1/q): C embeds the
    first 2^n coordinates, D = 2^{1/q-1} (I I) averages the halves and
    rescales; ||C||_{p,p} = 1, ||D||_{q,q} <= 1. For q > p' the scaling is
    1/p' and the same identity transposes: build the (q',p') factors and swap
    C = D~^T, D = C~^T, using that the blocks are symmetric.
    """
    p, q = ExtendedExponent(p), ExtendedExponent(q)
    _check_corner(p, q)
    if n < 1:
        raise ValueError("block index starts at 1")
    if q > p.dual:
        Ct, Dt = halving_factorization(n, q.dual, p.dual)
        return Dt.T.copy(), Ct.T.copy()
    N = 2**n
    C = np.zeros((2 * N, N))
    C[:N] = np.eye(N)
    eye = np.eye(N)
    D = 2.0 ** (float(q.reciprocal) - 1.0) * np.hstack([eye, eye])
    return as_matrix(C), as_matrix(D)


@dataclass(frozen=True)
class UBlockFamily:
    """The scaled Hadamard block sequence at a fixed exponent pair p <= 2 <= q."""

    p: ExtendedExponent
    q: ExtendedExponent
    max_n: int
    scaling_exponent: Fraction = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "p", ExtendedExponent(self.p))
        object.__setattr__(self, "q", ExtendedExponent(self.q))
        _check_corner(self.p, self.q)
        if not 1 <= self.max_n <= MAX_DOUBLINGS:
            raise ValueError(f"max_n must lie in [1, {MAX_DOUBLINGS}]")
        object.__setattr__(self, "scaling_exponent", _scaling(self.p, self.q))

    def block(self, n: int) -> DenseMatrix:
        if not 1 <= n <= self.max_n:
            raise ValueError(f"block index must lie in [1, {self.max_n}]")
        return u_block(n, self.p, self.q)

    def direct_sum(self) -> BlockOperator:
        blocks = [self.block(n) for n in range(1, self.max_n + 1)]
        return block_direct_sum(blocks, self.p, self.q)
