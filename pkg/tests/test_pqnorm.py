import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import array_shapes, arrays

from pqcert.exponents import INF, ExtendedExponent
from pqcert.pqnorm import (
    NormEstimate,
    SingularSpectrum,
    pq_norm_exact,
    pq_norm_lower,
    pq_norm_oracle,
    pq_norm_upper,
    pq_norm_upper_interpolate,
    schatten_norm,
)

small_matrices = arrays(
    np.float64,
    array_shapes(min_dims=2, max_dims=2, min_side=1, max_side=5),
    elements=st.floats(min_value=-10, max_value=10, allow_nan=False),
)
pq_pairs = st.sampled_from([("1", "2"), ("4/3", "4"), ("2", "2"), ("2", "inf"), ("3", "3")])


def test_estimate_rejects_crossed_bounds() -> None:
    with pytest.raises(ValueError):
        NormEstimate(2.0, 1.0, np.ones(1), ())
    # a couple of ulps of ascent overshoot is tolerated
    NormEstimate(1.0 + 2e-16, 1.0, np.ones(1), ())


def test_singular_spectrum_validation() -> None:
    with pytest.raises(ValueError):
        SingularSpectrum(np.array([1.0, 2.0]))
    with pytest.raises(ValueError):
        SingularSpectrum(np.array([1.0, -0.5]))
    s = SingularSpectrum.of(np.diag([3.0, 4.0]))
    np.testing.assert_allclose(s.values, [4.0, 3.0])
    assert s.norm(2) == pytest.approx(5.0)
    assert s.norm(INF) == pytest.approx(4.0)


def test_schatten_norm_frozen_values() -> None:
    A = np.diag([3.0, 4.0])
    assert schatten_norm(A, 1) == pytest.approx(7.0)
    assert schatten_norm(A, 2) == pytest.approx(5.0)
    assert schatten_norm(A, "inf") == pytest.approx(4.0)


def test_exact_closed_forms() -> None:
    A = np.array([[1.0, -2.0], [2.0, 2.0]])
    # p = 1: best column q-norm
    assert pq_norm_exact(A, 1, 2) == pytest.approx(math.sqrt(8.0))
    assert pq_norm_exact(A, 1, 1) == pytest.approx(4.0)
    # q = inf: best row p'-norm
    assert pq_norm_exact(A, 2, INF) == pytest.approx(math.sqrt(8.0))
    assert pq_norm_exact(A, 1, INF) == pytest.approx(2.0)
    # (2,2): top singular value
    assert pq_norm_exact(A, 2, 2) == pytest.approx(np.linalg.svd(A, compute_uv=False)[0])
    assert pq_norm_exact(A, 2, 4) is None
    assert pq_norm_exact(A, "4/3", 2) is None


def test_interpolation_bound_shape() -> None:
    p_t, q_t, bound = pq_norm_upper_interpolate(2.0, (1, 2), 8.0, (2, 2), Fraction(1, 2))
    assert p_t.fraction == Fraction(4, 3)
    assert q_t.fraction == Fraction(2)
    assert bound == pytest.approx(4.0)
    # endpoints return the endpoint bound exactly
    assert pq_norm_upper_interpolate(3.0, (1, 4), 9.0, (2, 2), 0)[2] == 3.0
    assert pq_norm_upper_interpolate(3.0, (1, 4), 9.0, (2, 2), 1)[2] == 9.0
    with pytest.raises(ValueError):
        pq_norm_upper_interpolate(1.0, (1, 2), 1.0, (2, 2), Fraction(5, 4))
    with pytest.raises(ValueError):
        pq_norm_upper_interpolate(-1.0, (1, 2), 1.0, (2, 2), Fraction(1, 2))


def test_upper_routes_on_identity() -> None:
    n = 9
    eye = np.eye(n)
    # p <= q: the identity has norm exactly 1 and the routes certify it
    for p, q in [(1, 2), ("4/3", 4), (2, 2), (2, "inf"), (1, "inf")]:
        val, steps = pq_norm_upper(eye, p, q)
        assert val == pytest.approx(1.0, abs=1e-12), (p, q, steps)
    # p > q on the identity: n^{1/q - 1/p}
    val, _ = pq_norm_upper(eye, 2, 1)
    assert val == pytest.approx(math.sqrt(n))


def test_upper_derivation_names_its_route() -> None:
    A = np.array([[1.0, 1.0], [1.0, -1.0]])
    _, steps = pq_norm_upper(A, 1, 2)
    assert steps == ("exact(1,2)",)
    _, steps = pq_norm_upper(A, "4/3", 4)
    assert any("riesz-thorin" in s or "ball" in s for s in steps)


def test_lower_matches_exact_on_hand_matrix() -> None:
    A = np.array([[1.0, 1.0], [1.0, -1.0]])
    est = pq_norm_lower(A, 2, 2, seeds=4)
    assert est.upper == pytest.approx(math.sqrt(2.0), rel=1e-12)
    assert est.lower == pytest.approx(math.sqrt(2.0), rel=1e-10)
    # the witness actually achieves the reported quotient
    num = np.linalg.norm(A @ est.witness)
    den = np.linalg.norm(est.witness)
    assert num / den == pytest.approx(est.lower, rel=1e-12)


def test_lower_is_deterministic_given_seed() -> None:
    rng = np.random.default_rng(11)
    A = rng.standard_normal((5, 4))
    a = pq_norm_lower(A, "4/3", 4, seeds=8, rng_seed=123)
    b = pq_norm_lower(A, "4/3", 4, seeds=8, rng_seed=123)
    assert a.lower == b.lower
    np.testing.assert_array_equal(a.witness, b.witness)


def test_zero_matrix_estimate() -> None:
    est = pq_norm_lower(np.zeros((3, 3)), 1, 2)
    assert est.lower == 0.0
    assert est.upper == 0.0
    assert est.witness[0] == 1.0


@given(small_matrices, pq_pairs)
@settings(max_examples=60, deadline=None)
def test_sandwich_always_holds(A: np.ndarray, pq: tuple[str, str]) -> None:
    p, q = pq
    est = pq_norm_lower(A, p, q, seeds=2)
    assert est.lower <= est.upper + 1e-12 * max(1.0, est.upper)
    # scaling the matrix scales both sides linearly
    est2 = pq_norm_lower(2.0 * A, p, q, seeds=2)
    assert est2.upper == pytest.approx(2.0 * est.upper, rel=1e-12, abs=1e-300)


def test_oracle_agrees_with_exact_values() -> None:
    A = np.array([[1.0, 1.0], [1.0, -1.0]])
    assert pq_norm_oracle(A, 2, 2) == pytest.approx(math.sqrt(2.0), rel=1e-8)
    assert pq_norm_oracle(A, 1, 2) == pytest.approx(math.sqrt(2.0), rel=1e-8)
    B = np.array([[2.0, 0.0], [0.0, 1.0], [1.0, 1.0]])
    assert pq_norm_oracle(B, 1, "inf") == pytest.approx(2.0, rel=1e-8)


def test_oracle_rejects_wide_matrices_and_coarse_grids() -> None:
    with pytest.raises(ValueError):
        pq_norm_oracle(np.ones((2, 5)), 2, 2)
    with pytest.raises(ValueError):
        pq_norm_oracle(np.ones((2, 2)), 2, 2, grid=8)


def test_oracle_brackets_between_lower_and_upper() -> None:
    rng = np.random.default_rng(5)
    for _ in range(5):
        A = rng.standard_normal((4, 3))
        est = pq_norm_lower(A, "4/3", 4, seeds=8)
        oracle = pq_norm_oracle(A, "4/3", 4)
        assert est.lower <= oracle * (1 + 1e-9)
        assert oracle <= est.upper * (1 + 1e-9)


def test_exponent_objects_and_strings_are_interchangeable() -> None:
    A = np.array([[1.0, 2.0], [3.0, 4.0]])
    via_str = pq_norm_upper(A, "4/3", "4")
    via_obj = pq_norm_upper(A, ExtendedExponent(Fraction(4, 3)), ExtendedExponent(4))
    assert via_str == via_obj
