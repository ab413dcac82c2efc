import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pqcert.exponents import ExtendedExponent
from pqcert.norms import norm_along_axis
from pqcert.pqnorm import pq_norm_lower, pq_norm_upper
from pqcert.splitting import (
    BandedSupport,
    interlaced_cut_points,
    split_block_diagonal,
    truncate_to_banded,
)


def _random_banded_instance(seed: int, m: int):
    rng = np.random.default_rng(seed)
    # bounds may exceed the matrix size; the mask clamps them naturally
    M = tuple(np.cumsum(rng.integers(1, 4, size=m)))
    N = tuple(np.cumsum(rng.integers(1, 4, size=m)))
    support = BandedSupport(M, N, m)
    S = np.where(support.mask(), rng.standard_normal((m, m)), 0.0)
    return S, support


def test_support_validation() -> None:
    with pytest.raises(ValueError):
        BandedSupport((1, 1), (1, 2), 2)  # not strictly increasing
    with pytest.raises(ValueError):
        BandedSupport((0, 1), (1, 2), 2)  # starts below 1
    with pytest.raises(ValueError):
        BandedSupport((1, 2), (1, 2, 3), 2)  # wrong length
    sup = BandedSupport((1, 3), (2, 3), 2)
    assert sup.mask().shape == (2, 2)


def test_mask_semantics_hand_case() -> None:
    # M = (1, 2): column 0 keeps row 0 only, column 1 keeps rows 0..1
    # N = (2, 3): both rows keep every column of the 2x2
    sup = BandedSupport((1, 2), (2, 3), 2)
    np.testing.assert_array_equal(sup.mask(), [[True, True], [False, True]])


def test_truncation_validation() -> None:
    with pytest.raises(ValueError):
        truncate_to_banded(np.ones((2, 3)), 0.5, "4/3", 4)
    with pytest.raises(ValueError):
        truncate_to_banded(np.eye(2), 0.0, "4/3", 4)
    with pytest.raises(ValueError):
        truncate_to_banded(np.eye(2), 0.5, 4, 2)


def test_truncation_keeps_banded_matrices_exactly() -> None:
    S, support = _random_banded_instance(17, 12)
    res = truncate_to_banded(S, 0.25, "4/3", 4)
    np.testing.assert_array_equal(res.S, S)
    assert res.certified_error == 0.0
    assert res.column_budget == 0.125
    assert res.row_budget == 0.125


def test_truncation_error_certificate_dominates_true_error() -> None:
    rng = np.random.default_rng(3)
    R = rng.standard_normal((10, 10))
    eps = 0.8 * float(np.abs(R).sum())  # generous budget, forces real discards
    res = truncate_to_banded(R, eps, "4/3", 4)
    assert res.certified_error <= eps + 1e-12
    true_err, _ = pq_norm_upper(R - res.S, "4/3", 4)
    assert true_err <= res.certified_error + 1e-12


def test_truncated_support_is_admissible() -> None:
    rng = np.random.default_rng(4)
    R = rng.standard_normal((8, 8))
    res = truncate_to_banded(R, 1.0, 1, 2)
    assert not np.any((res.S != 0.0) & ~res.support.mask())
    # result iterates as (S, support)
    S, support = res
    assert S is res.S and support is res.support


def test_cut_points_interlace_and_cover() -> None:
    sup = BandedSupport((2, 3, 4, 5), (2, 3, 4, 5), 4)
    k, ell = interlaced_cut_points(sup)
    assert k[0] == 0 and ell[0] == 1
    assert k[-1] == 4 and ell[-1] == 4
    assert all(b > a for a, b in zip(k, k[1:]))
    assert all(b > a for a, b in zip(ell, ell[1:]))


def test_split_hand_case() -> None:
    S, support = _random_banded_instance(23, 9)
    split = split_block_diagonal(S, support)
    np.testing.assert_array_equal(split.W + split.V, S)
    # W and V live on their own block diagonals
    for part, cuts in ((split.W, split.k_cuts), (split.V, split.l_cuts)):
        allowed = np.zeros_like(S, dtype=bool)
        for a, b in zip(cuts, cuts[1:]):
            allowed[a:b, a:b] = True
        assert not np.any((part != 0.0) & ~allowed)


def test_split_rejects_entries_off_support() -> None:
    sup = BandedSupport((1, 2), (1, 2), 2)
    bad = np.array([[1.0, 1.0], [0.0, 1.0]])  # (0,1) inadmissible: N[0] = 1
    with pytest.raises(ValueError):
        split_block_diagonal(bad, sup)
    with pytest.raises(ValueError):
        split_block_diagonal(np.eye(3), sup)


def test_split_parts_have_smaller_norms() -> None:
    S, support = _random_banded_instance(29, 14)
    split = split_block_diagonal(S, support)
    whole, _ = pq_norm_upper(S, "4/3", 4)
    west = pq_norm_lower(split.W, "4/3", 4, seeds=2)
    assert west.lower <= whole + 1e-9


@given(st.integers(0, 2**31 - 1), st.integers(min_value=1, max_value=16))
@settings(max_examples=120, deadline=None)
def test_split_exactness_property(seed: int, m: int) -> None:
    S, support = _random_banded_instance(seed, m)
    split = split_block_diagonal(S, support)
    # bitwise exact: entries are copied or zeroed, never recomputed
    np.testing.assert_array_equal(split.W + split.V, S)
    assert not np.any((split.W != 0.0) & (split.V != 0.0))


@given(st.integers(0, 2**31 - 1), st.integers(min_value=2, max_value=12))
@settings(max_examples=80, deadline=None)
def test_truncation_certificate_property(seed: int, m: int) -> None:
    rng = np.random.default_rng(seed)
    R = rng.standard_normal((m, m))
    eps = float(rng.uniform(0.1, 2.0))
    res = truncate_to_banded(R, eps, "4/3", 4)
    assert res.certified_error <= eps + 1e-12
    # the certificate is the tail aggregate, so it dominates any single tail
    E = R - res.S
    col_tails = norm_along_axis(E, ExtendedExponent(4), axis=0)
    assert col_tails.max(initial=0.0) <= res.certified_error + 1e-12
