"""Two-sided estimates of the p->q operator norm, plus Schatten norms.

||A||_{p,q} = sup { ||Ax||_q : ||x||_p <= 1 }.

Lower bounds come from an alternating ascent whose Rayleigh quotient is
nondecreasing, so every reported value is a witnessed lower bound. Upper
bounds come only from certified routes: closed-form endpoints (p = 1,
q = inf, (2,2)), Riesz-Thorin interpolation between such endpoints, ball
inclusion between exponent pairs, and Hoelder envelopes. The two sides are
never mixed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import scipy.optimize

from . import kernels
from .exponents import INF, ExponentLike, ExtendedExponent
from .matrices import as_matrix
from .norms import norm_along_axis, vector_norm

DEFAULT_SEED = 0xD1A6


@dataclass(frozen=True, eq=False)
class NormEstimate:
    """A sandwich lower <= ||A||_{p,q} <= upper with a witness for the lower side."""

    lower: float
    upper: float
    witness: np.ndarray
    upper_derivation: tuple[str, ...]

    def __post_init__(self) -> None:
        if self.lower > self.upper + 1e-12 * max(1.0, abs(self.upper)):
            raise ValueError(
                f"witnessed lower bound {self.lower!r} exceeds certified upper {self.upper!r}"
            )


@dataclass(frozen=True, eq=False)
class SingularSpectrum:
    """Nonincreasing singular values s_1 >= s_2 >= ... >= 0."""

    values: np.ndarray

    def __post_init__(self) -> None:
        v = np.asarray(self.values, dtype=float).ravel()
        if v.size == 0 or np.any(v < 0) or np.any(np.diff(v) > 0):
            raise ValueError("singular values must be nonnegative and nonincreasing")
        object.__setattr__(self, "values", v)

    @classmethod
    def of(cls, A: np.ndarray) -> "SingularSpectrum":
        return cls(np.linalg.svd(as_matrix(A), compute_uv=False))

    def norm(self, r: ExponentLike) -> float:
        return vector_norm(self.values, ExtendedExponent(r))


def schatten_norm(A: np.ndarray, r: ExponentLike) -> float:
    """l_r norm of the singular values; r = 2 is Frobenius, r = inf the top value."""
    return SingularSpectrum.of(A).norm(r)


def pq_norm_exact(A: np.ndarray, p: ExponentLike, q: ExponentLike) -> float | None:
    """Closed-form ||A||_{p,q} for p = 1, q = inf, or (p, q) = (2, 2); else None."""
    A = as_matrix(A)
    p, q = ExtendedExponent(p), ExtendedExponent(q)
    if p == 1:
        return float(norm_along_axis(A, q, axis=0).max())  # best column
    if q.is_infinite:
        return float(norm_along_axis(A, p.dual, axis=1).max())  # best row
    if p == 2 and q == 2:
        return float(SingularSpectrum.of(A).values[0])
    return None


def pq_norm_upper_interpolate(
    M0: float,
    pq0: tuple[ExponentLike, ExponentLike],
    M1: float,
    pq1: tuple[ExponentLike, ExponentLike],
    theta: Fraction | int | str,
) -> tuple[ExtendedExponent, ExtendedExponent, float]:
    """Riesz-Thorin: endpoint bounds M0 at pq0 and M1 at pq1 give M0^{1-t} M1^t.

    The intermediate exponents satisfy 1/p_t = (1-t)/p0 + t/p1 (same for q),
    computed in exact rational arithmetic. Returns (p_t, q_t, bound).
    """
    theta = Fraction(theta)
    if not 0 <= theta <= 1:
        raise ValueError(f"interpolation parameter must lie in [0, 1], got {theta}")
    if M0 < 0 or M1 < 0:
        raise ValueError("endpoint bounds must be nonnegative")
    from .exponents import interpolate_exponent

    p0, q0 = (ExtendedExponent(e) for e in pq0)
    p1, q1 = (ExtendedExponent(e) for e in pq1)
    p_t = interpolate_exponent(p0, p1, theta)
    q_t = interpolate_exponent(q0, q1, theta)
    if theta == 0:
        bound = float(M0)
    elif theta == 1:
        bound = float(M1)
    else:
        bound = float(M0) ** float(1 - theta) * float(M1) ** float(theta)
    return p_t, q_t, bound


def _spectral_top(A: np.ndarray) -> float:
    return float(np.linalg.svd(A, compute_uv=False)[0])


def pq_norm_upper(
    A: np.ndarray, p: ExponentLike, q: ExponentLike
) -> tuple[float, tuple[str, ...]]:
    """Best certified upper bound on ||A||_{p,q} and its derivation trace.

    Candidate routes, all sound for any matrix:
      - the closed-form endpoint when (p, q) is one;
      - ball inclusion into the (2,2) corner when p <= 2 <= q;
      - Riesz-Thorin between (1, q*) and (2, 2), reaching (p, min(q, p'))
        for 1 < p < 2, plus ball inclusion when q > p';
      - the dual route between (2, 2) and (p*, inf) for 2 < q < inf;
      - Hoelder envelopes n^{1/p'} max_j ||col_j||_q and m^{1/q} max_i ||row_i||_{p'}.
    """
    A = as_matrix(A)
    p, q = ExtendedExponent(p), ExtendedExponent(q)
    rows, cols = A.shape
    cands: list[tuple[float, tuple[str, ...]]] = []

    exact = pq_norm_exact(A, p, q)
    if exact is not None:
        cands.append((exact, (f"exact({p},{q})",)))

    smax: float | None = None

    def spectral() -> float:
        nonlocal smax
        if smax is None:
            smax = _spectral_top(A)
        return smax

    if p <= 2 <= q and not (p == 2 and q == 2):
        cands.append((spectral(), (f"ball({p},{q})<=norm(2,2)", "exact(2,2)")))

    if 1 < p < 2:
        qa = min(q, p.dual)
        if qa >= p:  # below p the intermediate endpoint leaves [1, inf]
            theta = 2 * p.dual.reciprocal  # exact, in (0, 1)
            expr = (qa.reciprocal - theta / 2) / (1 - theta)
            qstar = INF if expr == 0 else ExtendedExponent(1 / expr)
            m0 = float(norm_along_axis(A, qstar, axis=0).max())
            val = m0 ** float(1 - theta) * spectral() ** float(theta)
            steps = (
                f"riesz-thorin(theta={theta})[(1,{qstar})x(2,2)]->({p},{qa})",
                f"exact(1,{qstar})",
                "exact(2,2)",
            )
            if qa < q:
                steps = (f"ball({p},{q})<=norm({p},{qa})",) + steps
            cands.append((val, steps))

    if 2 < q and not q.is_infinite:
        pb = max(p, q.dual)
        if pb <= q:
            theta = 1 - 2 * q.reciprocal  # exact, in (0, 1)
            expr = (pb.reciprocal - q.reciprocal) / theta
            pstar = INF if expr == 0 else ExtendedExponent(1 / expr)
            m1 = float(norm_along_axis(A, pstar.dual, axis=1).max())
            val = spectral() ** float(1 - theta) * m1 ** float(theta)
            steps = (
                f"riesz-thorin(theta={theta})[(2,2)x({pstar},inf)]->({pb},{q})",
                "exact(2,2)",
                f"exact({pstar},inf)",
            )
            if pb > p:
                steps = (f"ball({p},{q})<=norm({pb},{q})",) + steps
            cands.append((val, steps))

    col_best = float(norm_along_axis(A, q, axis=0).max())
    cands.append((cols ** float(p.dual.reciprocal) * col_best, ("hoelder-domain", f"exact(1,{q})")))
    row_best = float(norm_along_axis(A, p.dual, axis=1).max())
    cands.append((rows ** float(q.reciprocal) * row_best, ("hoelder-codomain", f"exact({p},inf)")))

    best_val, best_steps = cands[0]
    for val, steps in cands[1:]:
        if val < best_val:
            best_val, best_steps = val, steps
    return best_val, best_steps


def pq_norm_lower(
    A: np.ndarray,
    p: ExponentLike,
    q: ExponentLike,
    seeds: int = 32,
    rng_seed: int = DEFAULT_SEED,
    tol: float = 1e-12,
    max_iter: int = 10000,
) -> NormEstimate:
    """Witnessed lower bound via alternating ascent, paired with a certified upper.

    Restarts: every coordinate vector, the flat vector (1, ..., 1), and
    `seeds` Gaussian starts drawn from rng_seed. From x the next iterate is
    the p-dual power map of A^T applied to the q-norming functional of Ax;
    the quotient is nondecreasing, so the best restart is reported with its
    witness. Deterministic given rng_seed; ties take the first restart.
    """
    A = as_matrix(A)
    p, q = ExtendedExponent(p), ExtendedExponent(q)
    n = A.shape[1]
    upper, steps = pq_norm_upper(A, p, q)
    if not A.any():
        witness = np.zeros(n)
        witness[0] = 1.0
        return NormEstimate(0.0, upper, witness, steps)
    blocks = [np.eye(n), np.ones((n, 1))]
    if seeds > 0:
        rng = np.random.default_rng(rng_seed)
        blocks.append(rng.standard_normal((n, seeds)))
    X0 = np.hstack(blocks)
    R, X, _ = kernels.ascent_run(A, X0, float(p), float(q), tol, max_iter)
    best = int(np.argmax(R))
    return NormEstimate(float(R[best]), upper, X[:, best].copy(), steps)


_FACET_CACHE: dict[tuple[int, int], np.ndarray] = {}
_START_CACHE: dict[tuple[int, int, str], np.ndarray] = {}


def _per_axis(dim: int, grid: int) -> int:
    # resolution backs off with dimension so the total point count stays near grid^2
    if dim <= 2:
        return grid
    if dim == 3:
        return max(8, int(round(grid ** (2.0 / 3.0))))
    return max(6, int(round(grid**0.5)))


def _cube_surface(dim: int, grid: int) -> np.ndarray:
    key = (dim, grid)
    cached = _FACET_CACHE.get(key)
    if cached is not None:
        return cached
    if dim == 1:
        pts = np.array([[-1.0, 1.0]])
    else:
        ticks = np.linspace(-1.0, 1.0, _per_axis(dim, grid) + 1)
        faces = []
        for axis in range(dim):
            rest = np.meshgrid(*([ticks] * (dim - 1)), indexing="ij")
            flat = np.stack([r.ravel() for r in rest], axis=0)
            for sign in (-1.0, 1.0):
                face = np.insert(flat, axis, sign, axis=0)
                faces.append(face)
        pts = np.concatenate(faces, axis=1)
    _FACET_CACHE[key] = pts
    return pts


def pq_norm_oracle(A: np.ndarray, p: ExponentLike, q: ExponentLike, grid: int = 64) -> float:
    """Brute-force reference for tiny domains: dense sphere sampling plus polish.

    Deterministic cube-surface directions are p-normalized, the quotient
    ||Ax||_q / ||x||_p is evaluated everywhere, and the best points are
    polished with Nelder-Mead. Every evaluation is a valid lower bound; the
    maximum is returned. Independent of the ascent route.
    """
    A = as_matrix(A)
    p, q = ExtendedExponent(p), ExtendedExponent(q)
    n = A.shape[1]
    if n > 4:
        raise ValueError("the oracle is exhaustive and only supports up to 4 columns")
    if grid < 64:
        raise ValueError("grid must be at least 64")
    skey = (n, grid, str(p))
    U = _START_CACHE.get(skey)
    if U is None:
        D = _cube_surface(n, grid)
        U = D / norm_along_axis(D, p, axis=0)
        _START_CACHE[skey] = U
    vals = norm_along_axis(A @ U, q, axis=0)
    best = float(vals.max())
    order = np.argsort(vals, kind="stable")

    def negated_quotient(u: np.ndarray) -> float:
        nu = vector_norm(u, p)
        if nu < 1e-12:
            return 0.0
        return -vector_norm(A @ u, q) / nu

    for idx in order[-8:]:
        res = scipy.optimize.minimize(
            negated_quotient,
            U[:, idx],
            method="Nelder-Mead",
            options={"xatol": 1e-11, "fatol": 1e-13, "maxfev": 600},
        )
        best = max(best, -float(res.fun))
    return best
