"""Finite strict singularity made quantitative.

Tools: the flat-vector construction (every k-dimensional subspace of R^m
contains a vector attaining its sup-norm at k or more coordinates), the
width k^{1/q-1/p} it certifies for the formal identity l_p -> l_q, a
searched injectivity modulus, Bernstein-width estimation, the Schatten
dimension bound, and a Hilbert-Schmidt composition inequality check.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exponents import ExponentLike, ExtendedExponent
from .matrices import DenseMatrix, as_matrix, stack_basis
from .norms import MixedNormSpace, NormFunctional, norm_along_axis

FLAT_MEMBER_TOL = 1e-7  # relative slack for joining the flat set
DEFAULT_SEED = 0xD1A6


@dataclass(frozen=True, eq=False)
class FlatVectorResult:
    """A subspace vector whose sup-norm is attained on the index set flat_indices."""

    x: np.ndarray
    flat_indices: tuple[int, ...]
    flat_value: float
    coefficients: np.ndarray


def _checked_basis(basis) -> np.ndarray:
    V = stack_basis(basis)
    m, k = V.shape
    if k > m:
        raise ValueError(f"{k} vectors cannot be independent in dimension {m}")
    s = np.linalg.svd(V, compute_uv=False)
    if s[-1] < 1e-10 * s[0]:
        raise ValueError("basis is numerically rank-deficient")
    return V


def flat_vector(basis) -> FlatVectorResult:
    """Find x in span(basis) attaining its sup-norm on >= k coordinates.

    Inductive construction: keep a vector x with flat set I; while |I| < k,
    pick y in the subspace vanishing on I, and move x += s*y where s > 0 is
    the first point at which max_{j not in I} |x_j + s y_j| climbs back to
    the flat value. That map is convex piecewise affine in s, so the point
    is found by bracketing and bisection; at it a new coordinate joins I.
    """
    V = _checked_basis(basis)
    m, k = V.shape
    c = np.zeros(k)
    c[0] = 1.0
    x = V @ c
    delta = float(np.abs(x).max())
    c /= delta
    x /= delta
    delta = 1.0

    def members() -> np.ndarray:
        return np.nonzero(np.abs(x) >= delta * (1.0 - FLAT_MEMBER_TOL))[0]

    flat = members()
    while flat.size < k:
        _, _, vh = np.linalg.svd(V[flat, :], full_matrices=True)
        cy = vh[-1]
        y = V @ cy
        outside = np.ones(m, dtype=bool)
        outside[flat] = False
        peak = float(np.abs(y[outside]).max(initial=0.0))
        if peak < 1e-12:
            raise RuntimeError("tolerance breakdown: direction vanishes off the flat set")
        j_star = int(np.nonzero(outside)[0][np.argmax(np.abs(y[outside]))])
        cy = cy / y[j_star]
        y = y / y[j_star]

        def grown_peak(s: float) -> float:
            return float(np.abs(x[outside] + s * y[outside]).max())

        hi = delta / 4.0
        while grown_peak(hi) < delta:
            hi *= 2.0
        lo = 0.0
        while hi - lo > 1e-14 * delta:
            mid = 0.5 * (lo + hi)
            if grown_peak(mid) < delta:
                lo = mid
            else:
                hi = mid
        x = x + hi * y
        c = c + hi * cy
        delta = float(np.abs(x).max())
        grown = members()
        if grown.size <= flat.size:
            raise RuntimeError("tolerance breakdown: flat set failed to grow")
        flat = grown
    return FlatVectorResult(x, tuple(int(i) for i in flat), delta, c)


def ipq_width_upper(k: int, p: ExponentLike, q: ExponentLike) -> float:
    """k^{1/q - 1/p}: certified width bound for the formal identity l_p -> l_q.

    Every k-dimensional subspace contains a flat vector, and a vector flat on
    k coordinates has ||x||_q / ||x||_p <= k^{1/q-1/p}.
    """
    p, q = ExtendedExponent(p), ExtendedExponent(q)
    if not p < q:
        raise ValueError(f"the width bound needs p < q, got ({p},{q})")
    if k < 1:
        raise ValueError("dimension must be positive")
    return float(k) ** float(q.reciprocal - p.reciprocal)


def _plain_norming_cols(Y: np.ndarray, e) -> tuple[np.ndarray, np.ndarray]:
    norms = norm_along_axis(Y, e, axis=0)
    if e.is_infinite:
        G = np.zeros_like(Y)
        rows = np.argmax(np.abs(Y), axis=0)
        cols = np.arange(Y.shape[1])
        G[rows, cols] = np.sign(Y[rows, cols])  # zero columns stay zero
    elif e == 1:
        G = np.sign(Y)
    else:
        safe = np.where(norms > 0.0, norms, 1.0)
        G = np.sign(Y) * (np.abs(Y) / safe) ** (float(e) - 1.0)
    return norms, G


def _norming_batch(Y: np.ndarray, f: NormFunctional) -> tuple[np.ndarray, np.ndarray]:
    """Columnwise norms and norming functionals of Y under f."""
    if f.plain is not None:
        return _plain_norming_cols(Y, f.plain)
    space = f.mixed
    nb, ncols = len(space.block_sizes), Y.shape[1]
    bn = np.empty((nb, ncols))
    inner_g = np.empty_like(Y)
    for b, s in enumerate(space.slices):
        bn[b], inner_g[s] = _plain_norming_cols(Y[s], space.inner)
    totals, wts = _plain_norming_cols(bn, space.outer)  # bn >= 0, signs are unit
    G = np.empty_like(Y)
    for b, s in enumerate(space.slices):
        G[s] = wts[b] * inner_g[s]
    return totals, G


def injectivity_modulus(
    A: DenseMatrix,
    basis,
    dom: "NormFunctional | ExponentLike | MixedNormSpace",
    cod: "NormFunctional | ExponentLike | MixedNormSpace",
    rng_seed: int = DEFAULT_SEED,
    starts: int = 64,
    max_iter: int = 400,
    extra_starts: np.ndarray | None = None,
) -> tuple[float, np.ndarray]:
    """Search inf { ||Ax||_cod : x in span(basis), ||x||_dom = 1 } from above.

    Projected subgradient descent on the coefficient sphere from coordinate,
    Gaussian, and caller-provided starts, with per-start step control; every
    iterate is a witness, so the returned (value, witness) pair certifies an
    upper estimate of the true infimum. Deterministic given rng_seed.
    """
    A = as_matrix(A)
    V = _checked_basis(basis)
    m, k = V.shape
    dom_f, cod_f = NormFunctional.of(dom), NormFunctional.of(cod)
    if A.shape[1] != m:
        raise ValueError(f"operator expects dimension {A.shape[1]}, basis lives in {m}")
    B = A @ V

    cols = [np.eye(k)]
    if starts > k:
        rng = np.random.default_rng(rng_seed)
        cols.append(rng.standard_normal((k, starts - k)))
    if extra_starts is not None:
        cols.append(np.asarray(extra_starts, dtype=float).reshape(k, -1))
    C = np.hstack(cols)

    r, _ = _norming_batch(V @ C, dom_f)
    if np.any(r == 0.0):
        raise ValueError("descent starts must be nonzero")
    C = C / r
    f, _ = _norming_batch(B @ C, cod_f)
    eta = np.full(C.shape[1], 0.1)
    best = float(f.min())
    stale = 0
    for _ in range(max_iter):
        live = (eta >= 1e-16) & (f > 0.0)
        if not live.any():
            break
        Cl = C[:, live]
        fl = f[live]
        _, U = _norming_batch(B @ Cl, cod_f)
        _, W = _norming_batch(V @ Cl, dom_f)
        grad = B.T @ U - fl * (V.T @ W)
        trial = Cl - eta[live] * grad
        rt, _ = _norming_batch(V @ trial, dom_f)
        ok = rt > 1e-12
        trial[:, ok] = trial[:, ok] / rt[ok]
        ft = np.full_like(fl, np.inf)
        ft[ok], _ = _norming_batch(B @ trial[:, ok], cod_f)
        accept = ft <= fl
        idx = np.nonzero(live)[0]
        C[:, idx[accept]] = trial[:, accept]
        f[idx[accept]] = ft[accept]
        eta[idx[accept]] *= 1.3
        eta[idx[~accept]] /= 2.0
        now = float(f.min())
        if now < best * (1.0 - 1e-12):
            best = now
            stale = 0
        else:
            stale += 1
            if stale >= 15:  # the searched value has plateaued
                break
    j = int(np.argmin(f))
    return float(f[j]), V @ C[:, j]


@dataclass(frozen=True, eq=False)
class BernsteinEstimate:
    """Two-sided width estimate: searched lower with witness, certified upper."""

    k: int
    lower: float
    upper: float
    witness_basis: np.ndarray
    witness_vector: np.ndarray
    upper_derivation: tuple[str, ...]

    def __post_init__(self) -> None:
        if self.lower > self.upper + 1e-9:
            raise ValueError(
                f"searched width {self.lower!r} exceeds certified bound {self.upper!r}"
            )


def _orthonormal_span(rng: np.random.Generator, m: int, k: int) -> np.ndarray:
    Q, _ = np.linalg.qr(rng.standard_normal((m, k)))
    return Q


def _same_structure(a: MixedNormSpace, b: MixedNormSpace) -> bool:
    return a.block_sizes == b.block_sizes and a.inner == b.inner


def _certified_width_upper(
    A: np.ndarray, k: int, dom_f: NormFunctional, cod_f: NormFunctional
) -> tuple[float, tuple[str, ...]]:
    m = A.shape[1]
    is_identity = A.shape[0] == m and np.array_equal(A, np.eye(m))
    cands: list[tuple[float, tuple[str, ...]]] = []
    if is_identity and dom_f.plain is not None and cod_f.plain is not None:
        p, q = dom_f.plain, cod_f.plain
        if p < q:
            cands.append(
                (ipq_width_upper(k, p, q), (f"flat-vector-width(k^(1/{q}-1/{p}))",))
            )
        elif p == q:
            cands.append((1.0, ("identity-isometry",)))
    if (
        is_identity
        and dom_f.mixed is not None
        and cod_f.mixed is not None
        and _same_structure(dom_f.mixed, cod_f.mixed)
        and dom_f.mixed.outer <= cod_f.mixed.outer
    ):
        cands.append((1.0, ("outer-exponent-monotonicity",)))
    if dom_f.plain is not None and cod_f.plain is not None:
        from .pqnorm import pq_norm_upper

        val, steps = pq_norm_upper(A, dom_f.plain, cod_f.plain)
        cands.append((val, ("operator-norm-bound",) + steps))
    if not cands:
        return np.inf, ("no-certified-bound",)
    return min(cands, key=lambda t: t[0])


def bernstein_width(
    A: DenseMatrix,
    k: int,
    dom: "NormFunctional | ExponentLike | MixedNormSpace",
    cod: "NormFunctional | ExponentLike | MixedNormSpace",
    budget: int = 16,
    rng_seed: int = DEFAULT_SEED,
) -> BernsteinEstimate:
    """Estimate the k-th width sup_{dim E = k} inf_{x in E} ||Ax||_cod / ||x||_dom.

    The lower side searches a deterministic candidate pool (contiguous
    coordinate windows, extremal singular spans, `budget` random spans,
    perturbations of the best) and keeps the largest searched modulus; each
    candidate's descent is seeded with its own flat vector. The upper side
    is the smallest applicable certified bound. A searched value inside a
    relative 1e-6 band of the bound is clamped onto it; a larger violation
    is a real contradiction and raises.
    """
    A = as_matrix(A)
    m = A.shape[1]
    if not 1 <= k <= m:
        raise ValueError(f"subspace dimension must lie in [1, {m}], got {k}")
    dom_f, cod_f = NormFunctional.of(dom), NormFunctional.of(cod)
    rng = np.random.default_rng(rng_seed)

    candidates: list[np.ndarray] = []
    eye = np.eye(m)
    for start in range(m - k + 1):
        candidates.append(eye[:, start : start + k])
    if k < m:
        _, _, vh = np.linalg.svd(A)
        candidates.append(vh[:k].T.copy())
        candidates.append(vh[m - k :].T.copy())
    for _ in range(budget):
        candidates.append(_orthonormal_span(rng, m, k))

    def searched(basis: np.ndarray, seed: int) -> tuple[float, np.ndarray]:
        flat_c = flat_vector(basis).coefficients
        return injectivity_modulus(
            A,
            basis,
            dom_f,
            cod_f,
            rng_seed=seed,
            starts=min(8, max(2, k)),
            max_iter=150,
            extra_starts=flat_c.reshape(-1, 1),
        )

    lower_found = -np.inf
    best_basis = candidates[0]
    best_witness: np.ndarray | None = None
    for i, basis in enumerate(candidates):
        val, wit = searched(basis, rng_seed + i)
        if val > lower_found:
            lower_found, best_basis, best_witness = val, basis, wit
    for i in range(3):  # local refinement around the best span found
        perturbed, _ = np.linalg.qr(best_basis + 0.1 * rng.standard_normal((m, k)))
        val, wit = searched(perturbed, rng_seed + len(candidates) + i)
        if val > lower_found:
            lower_found, best_basis, best_witness = val, perturbed, wit

    upper, steps = _certified_width_upper(A, k, dom_f, cod_f)
    lower = min(lower_found, upper) if lower_found <= upper * (1.0 + 1e-6) else lower_found
    return BernsteinEstimate(k, lower, upper, best_basis, best_witness, steps)


def schatten_dim_bound(spectrum, eps: float, q: ExponentLike) -> int:
    """floor(eps^{-q}) bounds the dimension of any eps-preserved subspace.

    Requires the singular values normalized to sum(s^q) = 1; then the number
    of values >= eps is at most eps^{-q} since 1 >= count * eps^q. That
    counting inequality is asserted on the fly.
    """
    from .pqnorm import SingularSpectrum

    if not isinstance(spectrum, SingularSpectrum):
        spectrum = SingularSpectrum(np.asarray(spectrum, dtype=float))
    qf = float(ExtendedExponent(q))
    if not np.isfinite(qf):
        raise ValueError("the dimension bound needs a finite Schatten exponent")
    if eps <= 0.0:
        raise ValueError("threshold must be positive")
    s = spectrum.values
    mass = float((s**qf).sum())
    if abs(mass - 1.0) > 1e-9:
        raise ValueError(f"spectrum is not Schatten-{q} normalized: sum s^q = {mass!r}")
    count = int((s >= eps).sum())
    if count * eps**qf > 1.0 + 1e-9:
        raise AssertionError("counting inequality violated on a normalized spectrum")
    return int(np.floor(eps ** (-qf) * (1.0 + 1e-12) + 1e-12))


def hs_composition_bound_check(
    psi: np.ndarray, G: np.ndarray, d: np.ndarray
) -> tuple[float, float, bool]:
    """Check ||diag(d) o T o M_psi||_HS <= ||psi||_2 sup_n ||g_n||_inf ||d||_2.

    Model: m atoms with uniform weight 1/m; T maps f to the sequence of
    pairings (1/m) sum_t g_n(t) f(t); M_psi multiplies pointwise. The
    composite has kernel d_n g_n(t) psi(t), whose Hilbert-Schmidt norm is the
    Frobenius norm with one 1/m measure weight folded in.
    """
    psi = np.asarray(psi, dtype=float).ravel()
    d = np.asarray(d, dtype=float).ravel()
    G = as_matrix(G)
    n, m = G.shape
    if psi.size != m or d.size != n:
        raise ValueError(
            f"shape mismatch: G is {n}x{m}, psi has {psi.size}, d has {d.size}"
        )
    S = d[:, None] * G * psi[None, :]
    lhs = float(np.linalg.norm(S) / np.sqrt(m))
    rhs = float(
        np.sqrt(np.mean(psi**2)) * np.abs(G).max(initial=0.0) * np.linalg.norm(d)
    )
    return lhs, rhs, lhs <= rhs * (1.0 + 1e-9)
