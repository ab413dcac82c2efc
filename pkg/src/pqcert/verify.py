"""Named verification checks over the library's mathematical claims.

Each check exercises one falsifiable statement at fixed tolerances and
reports the worst observed value against its bound. The suites group them
by theme; `all` adds the slow cross-checks (growth tables, the exhaustive
norm oracle).
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from . import factorization, fss, hadamard, pqnorm, splitting
from .exponents import ExtendedExponent, INF
from .norms import vector_norm

DEFAULT_SEED = 0xD1A6


@dataclass(frozen=True, eq=False)
class CheckResult:
    """Outcome of one named check: worst computed value vs its bound."""

    name: str
    paper_anchor: str
    computed: float
    bound: float
    passed: bool
    runtime_s: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (
            f"{status} {self.name}: computed={self.computed:.6g} "
            f"bound={self.bound:.6g} ({self.runtime_s:.2f}s)"
        )

    def as_record(self) -> dict:
        return {
            "name": self.name,
            "paper_anchor": self.paper_anchor,
            "computed": self.computed,
            "bound": self.bound,
            "passed": self.passed,
            "runtime_s": self.runtime_s,
        }


@dataclass(frozen=True, eq=False)
class VerificationReport:
    checks: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def as_record(self) -> dict:
        return {
            "paper_anchor": "verification suite over all listed statements",
            "passed": self.passed,
            "checks": [c.as_record() for c in self.checks],
        }

    def lines(self) -> list[str]:
        out = [c.line() for c in self.checks]
        out.append(("PASS" if self.passed else "FAIL") + f" total: {len(self.checks)} checks")
        return out


def _result(name: str, anchor: str, computed: float, bound: float,
            ok: bool, t0: float) -> CheckResult:
    return CheckResult(name, anchor, float(computed), float(bound),
                       bool(ok), time.perf_counter() - t0)


def check_hadamard_algebra(rng_seed: int = DEFAULT_SEED) -> CheckResult:
    """H^2 = 2^n I and symmetry exactly (n <= 10); endpoint norms 1, 2^n, 2^(n/2) (n <= 8)."""
    t0 = time.perf_counter()
    worst = 0.0
    ok = True
    for n in range(11):
        H = hadamard.hadamard_matrix(n)
        N = 2**n
        if n <= 6:
            P = H.astype(np.int64) @ H.astype(np.int64)
        else:
            # float64 products of +-1 entries are exact well below 2^53
            P = (H.astype(np.float64) @ H.astype(np.float64)).astype(np.int64)
        ok &= np.array_equal(P, N * np.eye(N, dtype=np.int64))
        ok &= np.array_equal(H, H.T)
    for n in range(9):
        H = hadamard.hadamard_matrix(n).astype(np.float64)
        for p, q, want in ((1, INF, 1.0), (1, 1, float(2**n)), (2, 2, 2.0 ** (n / 2.0))):
            got = pqnorm.pq_norm_exact(H, p, q)
            worst = max(worst, abs(got - want) / want)
    return _result(
        "hadamard-algebra",
        "H_n^2 = 2^n I, H_n symmetric; norms ||H||_{1,inf} = 1, ||H||_{1,1} = 2^n, ||H||_{2,2} = 2^(n/2)",
        worst, 1e-9, ok and worst <= 1e-9, t0,
    )


def check_u_block_norm_one(rng_seed: int = DEFAULT_SEED) -> CheckResult:
    """Witnessed lower and certified upper of the scaled blocks both equal 1 within 1e-6."""
    t0 = time.perf_counter()
    worst = 0.0
    for p, q in (("4/3", 4), ("3/2", 3), (2, 4), ("4/3", 2)):
        for n in range(1, 7):
            est = pqnorm.pq_norm_lower(hadamard.u_block(n, p, q), p, q, rng_seed=rng_seed)
            worst = max(worst, abs(est.lower - 1.0), abs(est.upper - 1.0))
    return _result(
        "u-block-norm-one",
        "||2^(-n/min(p',q)) H_n||_{p,q} = 1, witnessed by a Hadamard column",
        worst, 1e-6, worst <= 1e-6, t0,
    )


def check_flat_vector_law(rng_seed: int = DEFAULT_SEED) -> CheckResult:
    """500 random subspaces: the flat set reaches dim k and certifies the q/p ratio law."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(rng_seed)
    pairs = [(ExtendedExponent(1), ExtendedExponent(2)),
             (ExtendedExponent("4/3"), ExtendedExponent(4))]
    worst_ratio = 0.0
    sizes_ok = True
    for _ in range(500):
        k = int(rng.integers(1, 9))
        m = int(rng.integers(k, 41))
        res = fss.flat_vector(rng.standard_normal((m, k)))
        sizes_ok &= len(res.flat_indices) >= k
        for p, q in pairs:
            ratio = vector_norm(res.x, q) / vector_norm(res.x, p)
            worst_ratio = max(worst_ratio, ratio / fss.ipq_width_upper(len(res.flat_indices), p, q))
    return _result(
        "flat-vector-law",
        "a k-dim subspace vector flat on its sup-norm set I has ||x||_q/||x||_p <= |I|^(1/q-1/p), |I| >= k",
        worst_ratio, 1.0 + 1e-6, sizes_ok and worst_ratio <= 1.0 + 1e-6, t0,
    )


def check_fss_contrast(rng_seed: int = DEFAULT_SEED) -> CheckResult:
    """Identity widths decay as k^(-1/2) at (1,2); the blockwise l_2 identity stays at width 1."""
    t0 = time.perf_counter()
    dev = 0.0
    eye = np.eye(64)
    for k in (4, 16, 64):
        est = fss.bernstein_width(eye, k, 1, 2, budget=8, rng_seed=rng_seed)
        scale = np.sqrt(float(k))
        dev = max(dev, abs(est.upper * scale - 1.0))
        dev = max(dev, est.lower * scale - 1.0, 0.8 - est.lower * scale)
    dom, cod, ident = hadamard.finite_pd_identity(list(range(1, 9)), "4/3", 4)
    for k in range(1, 9):
        est = fss.bernstein_width(ident, k, dom, cod, budget=8, rng_seed=rng_seed)
        dev = max(dev, abs(est.lower - 1.0), abs(est.upper - 1.0))
    return _result(
        "fss-contrast",
        "widths of the formal identity decay as k^(1/q-1/p); the blockwise l_2 identity has width 1 at every k",
        dev, 1e-6, dev <= 1e-6, t0,
    )


def check_certificate_growth(rng_seed: int = DEFAULT_SEED) -> CheckResult:
    """Factorization constants through l_2 at (4/3,4) grow as 2^(n/4), slope 0.25 +- 0.02."""
    t0 = time.perf_counter()
    table = factorization.u_certificate_growth("4/3", 4, 2, 6)
    consts = np.array([cert.constant_lower for _, cert in table])
    ns = np.array([n for n, _ in table], dtype=float)
    ok = bool(np.all(consts >= 2.0 ** (ns / 4.0) * (1.0 - 1e-9)))
    ok &= bool(np.all(np.diff(consts) > 0.0))
    slope = float(np.polyfit(ns, np.log2(consts), 1)[0])
    dev = abs(slope - 0.25)
    return _result(
        "certificate-growth",
        "any factorization of the scaled block through l_2 costs at least N^(1/p-1/2)",
        dev, 0.02, ok and dev <= 0.02, t0,
    )


def check_factorable_range(rng_seed: int = DEFAULT_SEED) -> CheckResult:
    """At r = p' = q the block factors with certified product norm at most 1."""
    t0 = time.perf_counter()
    fac = factorization.explicit_u_factorization(3, "4/3", 4, 4)
    compose_err = float(np.abs(fac.composed() - hadamard.u_block(3, "4/3", 4)).max())
    ok = factorization.factorization_class("4/3", 4, 4) == "factorable"
    ok &= compose_err <= 1e-10
    return _result(
        "factorable-range",
        "for p' <= r <= q the scaled block splits into two factors of norm one",
        fac.product_norm_upper, 1.0 + 1e-9,
        ok and fac.product_norm_upper <= 1.0 + 1e-9, t0,
    )


def check_interlaced_splitting(rng_seed: int = DEFAULT_SEED) -> CheckResult:
    """1000 banded instances split exactly, cover the support, and keep norms sandwiched."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(rng_seed)
    exact_ok = True
    worst_gap = -np.inf
    for _ in range(1000):
        m = int(rng.integers(4, 41))
        support = splitting.BandedSupport(
            tuple(np.cumsum(rng.integers(1, 4, size=m))),
            tuple(np.cumsum(rng.integers(1, 4, size=m))),
            m,
        )
        S = np.where(support.mask(), rng.standard_normal((m, m)), 0.0)
        parts = splitting.split_block_diagonal(S, support)  # raises if coverage fails
        exact_ok &= np.array_equal(parts.W + parts.V, S)
        lower = pqnorm.pq_norm_lower(parts.W, "4/3", 4, seeds=2, rng_seed=rng_seed).lower
        upper, _ = pqnorm.pq_norm_upper(S, "4/3", 4)
        worst_gap = max(worst_gap, lower - upper)
    return _result(
        "interlaced-splitting",
        "a banded matrix splits exactly into two block-diagonal parts covering its support",
        worst_gap, 1e-9, exact_ok and worst_gap <= 1e-9, t0,
    )


def check_schatten_dim_bound(rng_seed: int = DEFAULT_SEED) -> CheckResult:
    """1000 normalized spectra: the count above eps never exceeds eps^(-q)."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(rng_seed)
    worst = -np.inf
    for trial in range(1000):
        qf = 2.0 if trial % 2 == 0 else 4.0
        size = int(rng.integers(1, 13))
        s = np.sort(rng.uniform(0.05, 1.0, size=size))[::-1]
        s = s / (s**qf).sum() ** (1.0 / qf)
        spectrum = pqnorm.SingularSpectrum(s)
        for eps in np.linspace(0.1, 1.05, 10) * s[0]:
            count = int((s >= eps).sum())
            worst = max(worst, count * eps**qf - 1.0)
            bound = fss.schatten_dim_bound(spectrum, float(eps), int(qf))
            if count > bound:
                worst = max(worst, 1.0)
    return _result(
        "schatten-dimension-bound",
        "sum s_i^q = 1 forces #{i : s_i >= eps} <= eps^(-q)",
        worst, 1e-9, worst <= 1e-9, t0,
    )


def check_hs_composition(rng_seed: int = DEFAULT_SEED) -> CheckResult:
    """1000 random multiplier-pairing-diagonal composites obey the HS product bound."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(rng_seed)
    worst = -np.inf
    for _ in range(1000):
        m = int(rng.integers(1, 17))
        n = int(rng.integers(1, 9))
        psi = rng.standard_normal(m)
        G = rng.uniform(-1.0, 1.0, size=(n, m))
        d = rng.standard_normal(n)
        lhs, rhs, _ = fss.hs_composition_bound_check(psi, G, d)
        worst = max(worst, lhs - rhs * (1.0 + 1e-9))
    return _result(
        "hs-composition-bound",
        "||diag(d) T M_psi||_HS <= ||psi||_2 sup_n ||g_n||_inf ||d||_2",
        worst, 0.0, worst <= 0.0, t0,
    )


def check_rademacher_isometry(rng_seed: int = DEFAULT_SEED) -> CheckResult:
    """Vectors on the sign-pattern columns of H_n map isometrically from l_1 to l_inf."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(rng_seed)
    worst = 0.0
    for n in range(1, 7):
        H = hadamard.hadamard_matrix(n).astype(np.float64)
        idx = hadamard.rademacher_columns(n)
        for _ in range(100):
            x = np.zeros(2**n)
            x[idx] = rng.standard_normal(n)
            got = float(np.abs(H @ x).max())
            want = float(np.abs(x).sum())
            worst = max(worst, abs(got - want) / want)
    return _result(
        "rademacher-isometry",
        "||H_n x||_inf = ||x||_1 for x supported on the n sign-pattern columns",
        worst, 1e-9, worst <= 1e-9, t0,
    )


def check_oracle_agreement(rng_seed: int = DEFAULT_SEED) -> CheckResult:
    """Ascent lower bounds match the exhaustive small-matrix oracle to 1e-4 relative."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(rng_seed)
    pairs = [(1, 2), ("4/3", 4), (2, 2), (2, 4)]
    worst = 0.0
    for _ in range(50):
        A = rng.standard_normal((int(rng.integers(1, 5)), int(rng.integers(1, 5))))
        for p, q in pairs:
            low = pqnorm.pq_norm_lower(A, p, q, rng_seed=rng_seed).lower
            ref = pqnorm.pq_norm_oracle(A, p, q)
            worst = max(worst, abs(low - ref) / max(ref, 1e-12))
    return _result(
        "oracle-agreement",
        "the ascent norm estimate equals an exhaustive direction-search value on small matrices",
        worst, 1e-4, worst <= 1e-4, t0,
    )


def check_halving_factorization(rng_seed: int = DEFAULT_SEED) -> CheckResult:
    """D U_{n+1} C reproduces U_n entrywise within 1e-12."""
    t0 = time.perf_counter()
    worst = 0.0
    for p, q in ((2, 2), ("4/3", 2)):
        for n in range(1, 6):
            C, D = hadamard.halving_factorization(n, p, q)
            got = D @ hadamard.u_block(n + 1, p, q) @ C
            worst = max(worst, float(np.abs(got - hadamard.u_block(n, p, q)).max()))
    return _result(
        "halving-factorization",
        "D U_{n+1} C = U_n with ||C||_{p,p} <= 1 and ||D||_{q,q} <= 1",
        worst, 1e-12, worst <= 1e-12, t0,
    )


SUITES: dict[str, tuple] = {
    "hadamard": (
        check_hadamard_algebra,
        check_u_block_norm_one,
        check_rademacher_isometry,
        check_halving_factorization,
    ),
    "fss": (check_flat_vector_law, check_fss_contrast),
    "split": (check_interlaced_splitting,),
    "schatten": (check_schatten_dim_bound, check_hs_composition),
}
SUITES["all"] = (
    SUITES["hadamard"]
    + SUITES["fss"]
    + (check_certificate_growth, check_factorable_range)
    + SUITES["split"]
    + SUITES["schatten"]
    + (check_oracle_agreement,)
)


def run_suite(name: str, rng_seed: int = DEFAULT_SEED) -> VerificationReport:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}, expected one of {sorted(SUITES)}")
    return VerificationReport(tuple(check(rng_seed) for check in SUITES[name]))
