"""Certified bounds on factorization constants through an l_r middle space.

If U = A B factors through l_r, then ||B||_{p,r} ||A||_{r,q} >= 1/delta
where delta = ||U^{-1}||_{r',r'}. A certified UPPER bound on delta therefore
yields a certified LOWER bound on the factorization constant; ascent
estimates are never used on this side. The same inverse gives a perturbation
radius inside which the bound only degrades by a factor 2.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .exponents import ExponentLike, ExtendedExponent
from .hadamard import u_block, u_block_inverse
from .matrices import DenseMatrix, as_matrix
from .norms import norm_along_axis
from .pqnorm import pq_norm_upper

DEFAULT_SEED = 0xD1A6


@dataclass(frozen=True, eq=False)
class FactorizationCertificate:
    """Lower bound 1/delta_upper on ||B||_{p,r} ||A||_{r,q} over factorizations U = AB."""

    r: ExtendedExponent
    delta_upper: float
    perturbation_radius: float
    derivation: tuple[str, ...]
    constant_lower: float = field(init=False)
    robust_lower: float = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "r", ExtendedExponent(self.r))
        if self.delta_upper <= 0.0:
            raise ValueError("delta bound must be positive")
        object.__setattr__(self, "constant_lower", 1.0 / self.delta_upper)
        object.__setattr__(self, "robust_lower", self.constant_lower / 2.0)

    def as_record(self) -> dict:
        """Flat JSON-ready record with the derivation trace."""
        return {
            "middle_exponent": str(self.r),
            "delta_upper": self.delta_upper,
            "constant_lower": self.constant_lower,
            "robust_lower": self.robust_lower,
            "perturbation_radius": self.perturbation_radius,
            "derivation": list(self.derivation),
        }


def factorization_lower_bound(
    Uinv: DenseMatrix, r: ExponentLike, p: ExponentLike
) -> FactorizationCertificate:
    """Certificate from the exact inverse of the operator being factored.

    delta_upper certifies ||Uinv||_{r',r'} from exact endpoints and
    interpolation; perturbation_radius = 1/(2 max_i ||Uinv e_i||_p) is the
    entry budget within which any perturbed copy still obeys the halved
    bound robust_lower.
    """
    Uinv = as_matrix(Uinv)
    if Uinv.shape[0] != Uinv.shape[1]:
        raise ValueError("inverse must be square")
    r, p = ExtendedExponent(r), ExtendedExponent(p)
    if r.is_infinite or r == 1:
        raise ValueError("middle exponent must lie strictly between 1 and inf")
    s = np.linalg.svd(Uinv, compute_uv=False)
    if s[-1] < 1e-12 * s[0]:
        raise ValueError("matrix is numerically singular, not an inverse")
    delta, steps = pq_norm_upper(Uinv, r.dual, r.dual)
    col_peak = float(norm_along_axis(Uinv, p, axis=0).max())
    radius = 1.0 / (2.0 * col_peak)
    return FactorizationCertificate(r, delta, radius, steps)


def factorization_class(p: ExponentLike, q: ExponentLike, r: ExponentLike) -> str:
    """'factorable' when p <= r <= q' or p' <= r <= q (closed ranges), else 'obstructed'."""
    p, q, r = ExtendedExponent(p), ExtendedExponent(q), ExtendedExponent(r)
    if p <= r <= q.dual or p.dual <= r <= q:
        return "factorable"
    return "obstructed"


def u_certificate_growth(
    p: ExponentLike, q: ExponentLike, r: ExponentLike, n_max: int
) -> list[tuple[int, FactorizationCertificate]]:
    """Certified factorization constants of the scaled Hadamard blocks through l_r.

    Only defined on the obstruction window max(p, q') < r < min(p', q),
    where the constants grow like N^{1/p - 1/min(r,r')} with N = 2^n. When
    q >= p' the block inverse is available directly; otherwise the data is
    transposed, which swaps the exponent pair to (q', p') and the middle to
    r' and leaves every constant unchanged (the blocks are symmetric).
    """
    p, q, r = ExtendedExponent(p), ExtendedExponent(q), ExtendedExponent(r)
    if factorization_class(p, q, r) == "factorable":
        raise ValueError(
            f"r={r} is outside the obstruction window: a bounded factorization "
            "exists, see explicit_u_factorization"
        )
    if not max(p, q.dual) < r < min(p.dual, q):
        raise ValueError(f"middle exponent {r} is outside ({max(p, q.dual)}, {min(p.dual, q)})")
    if n_max < 1:
        raise ValueError("need at least one block")
    out: list[tuple[int, FactorizationCertificate]] = []
    for n in range(1, n_max + 1):
        if q >= p.dual:
            cert = factorization_lower_bound(u_block_inverse(n, p, q), r, p)
        else:
            dual_cert = factorization_lower_bound(
                u_block_inverse(n, q.dual, p.dual), r.dual, q.dual
            )
            cert = FactorizationCertificate(
                r,
                dual_cert.delta_upper,
                dual_cert.perturbation_radius,
                dual_cert.derivation + ("transposed-data(middle measured at r')",),
            )
        out.append((n, cert))
    return out


@dataclass(frozen=True, eq=False)
class ExplicitFactorization:
    """Concrete factorization target = A @ B through an l_r middle space."""

    B: DenseMatrix
    A: DenseMatrix
    middle: ExtendedExponent
    product_norm_upper: float
    derivation: tuple[str, ...]

    def composed(self) -> DenseMatrix:
        return as_matrix(self.A @ self.B)


def explicit_u_factorization(
    n: int, p: ExponentLike, q: ExponentLike, r: ExponentLike
) -> ExplicitFactorization:
    """Two norm-one factors for the scaled Hadamard block in the factorable range.

    For p' <= r <= q the block itself, rescaled for the (p, r) pair, composes
    with the formal identity l_r -> l_q; for p <= r <= q' the formal identity
    l_p -> l_r composes with the block rescaled for (r, q). Outside both
    ranges no bounded factorization exists and this raises.
    """
    p, q, r = ExtendedExponent(p), ExtendedExponent(q), ExtendedExponent(r)
    U = u_block(n, p, q)
    N = U.shape[0]
    eye = np.eye(N)
    if p.dual <= r <= q:
        B = u_block(n, p, r)
        ub, b_steps = pq_norm_upper(B, p, r)
        ua, a_steps = pq_norm_upper(eye, r, q)
        return ExplicitFactorization(
            B,
            eye,
            r,
            ub * ua,
            (f"rescaled-block(p,{r})", *b_steps, f"formal-identity({r},q)", *a_steps),
        )
    if p <= r <= q.dual:
        A = u_block(n, r, q)
        ub, b_steps = pq_norm_upper(eye, p, r)
        ua, a_steps = pq_norm_upper(A, r, q)
        return ExplicitFactorization(
            eye,
            A,
            r,
            ub * ua,
            (f"formal-identity(p,{r})", *b_steps, f"rescaled-block({r},q)", *a_steps),
        )
    raise ValueError(
        f"r={r} lies in the obstruction range ({max(p, q.dual)}, {min(p.dual, q)}): "
        "no bounded factorization exists, see factorization_lower_bound"
    )


def pd_identity_factorization(
    block_sizes: list[int], p: ExponentLike, q: ExponentLike
) -> ExplicitFactorization:
    """Factor the mixed-norm identity through the plain l_2 of the total dimension.

    For p <= 2 <= q both legs are the identity matrix with norm at most 1:
    shrinking the outer exponent to 2 can only shrink the norm on the way in,
    and growing it to q can only shrink it on the way out.
    """
    p, q = ExtendedExponent(p), ExtendedExponent(q)
    if not p <= 2 <= q:
        raise ValueError(f"the l_2 middle space needs p <= 2 <= q, got ({p},{q})")
    sizes = tuple(int(m) for m in block_sizes)
    if not sizes or any(m < 1 for m in sizes):
        raise ValueError("block sizes must be positive")
    eye = np.eye(sum(sizes))
    return ExplicitFactorization(
        eye,
        eye,
        ExtendedExponent(2),
        1.0,
        ("outer-exponent-monotonicity(p<=2)", "outer-exponent-monotonicity(2<=q)"),
    )


def domination_gap(
    Uinv: DenseMatrix,
    r: ExponentLike,
    samples: int = 10000,
    rng_seed: int = DEFAULT_SEED,
    delta: float | None = None,
) -> float:
    """Empirical max of (sum_i |<x*, z_i>|^r / sum_i |<x*, e_i>|^r)^{1/r}.

    The vectors z_i = Uinv e_i / delta are dominated by the coordinate
    vectors in the r-sum sense whenever delta bounds ||Uinv||_{r',r'} from
    above; random functionals x* smoke-test that inequality, so values stay
    below 1 + 1e-6. Passing delta overrides the certified bound (the ratio
    scales as 1/delta).
    """
    Uinv = as_matrix(Uinv)
    if Uinv.shape[0] != Uinv.shape[1]:
        raise ValueError("inverse must be square")
    r = ExtendedExponent(r)
    if r.is_infinite or r == 1:
        raise ValueError("middle exponent must lie strictly between 1 and inf")
    if delta is None:
        delta, _ = pq_norm_upper(Uinv, r.dual, r.dual)
    if samples < 1:
        raise ValueError("need at least one sample")
    rng = np.random.default_rng(rng_seed)
    X = rng.standard_normal((Uinv.shape[0], samples))
    num = norm_along_axis(Uinv.T @ X, r, axis=0)
    den = norm_along_axis(X, r, axis=0)
    return float((num / (delta * den)).max())
