import numpy as np
import pytest

from pqcert.exponents import ExtendedExponent
from pqcert.factorization import (
    FactorizationCertificate,
    domination_gap,
    explicit_u_factorization,
    factorization_class,
    factorization_lower_bound,
    pd_identity_factorization,
    u_certificate_growth,
)
from pqcert.hadamard import u_block, u_block_inverse


def test_certificate_derived_fields() -> None:
    cert = FactorizationCertificate(ExtendedExponent(2), 0.25, 0.5, ("x",))
    assert cert.constant_lower == 4.0
    assert cert.robust_lower == 2.0
    rec = cert.as_record()
    assert rec["middle_exponent"] == "2"
    assert rec["delta_upper"] == 0.25
    assert rec["derivation"] == ["x"]
    with pytest.raises(ValueError):
        FactorizationCertificate(ExtendedExponent(2), 0.0, 0.5, ())


def test_classification_ranges() -> None:
    # at (p, q) = (4/3, 4) the two closed ranges collapse to the endpoints
    # {4/3} and {4}; everything else, including r < p and r = inf, is outside
    assert factorization_class("4/3", 4, "4/3") == "factorable"
    assert factorization_class("4/3", 4, 4) == "factorable"
    assert factorization_class("4/3", 4, 1) == "obstructed"
    assert factorization_class("4/3", 4, "inf") == "obstructed"
    assert factorization_class("4/3", 4, 2) == "obstructed"
    assert factorization_class("4/3", 4, 3) == "obstructed"
    assert factorization_class("4/3", 4, "3/2") == "obstructed"
    # at (4/3, 2) the first range is the genuine interval [4/3, 2]
    assert factorization_class("4/3", 2, "3/2") == "factorable"
    assert factorization_class("4/3", 2, 2) == "factorable"
    assert factorization_class("4/3", 2, 3) == "obstructed"


def test_lower_bound_from_block_inverse_frozen_values() -> None:
    # frozen endpoint: at n = 4, (4/3, 4) through r = 2 the certificate is
    # delta = 1/2, constant >= 2, radius = 1/2
    cert = factorization_lower_bound(u_block_inverse(4, "4/3", 4), 2, "4/3")
    assert cert.delta_upper == pytest.approx(0.5, rel=1e-12)
    assert cert.constant_lower == pytest.approx(2.0, rel=1e-12)
    assert cert.robust_lower == pytest.approx(1.0, rel=1e-12)
    assert cert.perturbation_radius == pytest.approx(0.5, rel=1e-12)


def test_lower_bound_validation() -> None:
    with pytest.raises(ValueError):
        factorization_lower_bound(np.ones((2, 3)), 2, 2)
    with pytest.raises(ValueError):
        factorization_lower_bound(np.eye(2), 1, 2)
    with pytest.raises(ValueError):
        factorization_lower_bound(np.eye(2), "inf", 2)
    with pytest.raises(ValueError):
        factorization_lower_bound(np.ones((2, 2)), 2, 2)  # rank one


def test_growth_is_geometric() -> None:
    rows = u_certificate_growth("4/3", 4, 2, 5)
    consts = [cert.constant_lower for _, cert in rows]
    # 2^{n/4} exactly at this corner
    for (n, _), c in zip(rows, consts):
        assert c == pytest.approx(2.0 ** (n / 4.0), rel=1e-12)
    assert all(b > a for a, b in zip(consts, consts[1:]))


def test_growth_transposed_route_matches_direct() -> None:
    # (6/5, 3) has q < p', forcing the transposed route; its mirror image is
    # the pair (3/2, 6) with the dual middle exponent, which goes direct
    mirrored = u_certificate_growth("6/5", 3, "5/2", 3)
    direct = u_certificate_growth("3/2", 6, "5/3", 3)
    for (_, a), (_, b) in zip(direct, mirrored):
        assert b.constant_lower == pytest.approx(a.constant_lower, rel=1e-12)
    assert any("transposed-data" in s for s in mirrored[0][1].derivation)
    assert not any("transposed-data" in s for s in direct[0][1].derivation)


def test_growth_rejects_factorable_middles() -> None:
    with pytest.raises(ValueError, match="explicit_u_factorization"):
        u_certificate_growth("4/3", 4, 4, 2)
    with pytest.raises(ValueError):
        u_certificate_growth("4/3", 4, 2, 0)


def test_explicit_factorization_recomposes() -> None:
    n = 3
    fac = explicit_u_factorization(n, "4/3", 4, 4)  # r = p' = 4: block then identity
    np.testing.assert_allclose(fac.composed(), u_block(n, "4/3", 4), atol=1e-12)
    assert fac.product_norm_upper <= 1.0 + 1e-9
    fac2 = explicit_u_factorization(n, "4/3", 4, "4/3")  # r = q': identity then block
    np.testing.assert_allclose(fac2.composed(), u_block(n, "4/3", 4), atol=1e-12)
    assert fac2.product_norm_upper <= 1.0 + 1e-9


def test_explicit_factorization_rejects_obstructed_middle() -> None:
    with pytest.raises(ValueError, match="factorization_lower_bound"):
        explicit_u_factorization(2, "4/3", 4, 2)


def test_pd_identity_factorization_is_trivial() -> None:
    fac = pd_identity_factorization([2, 3], "4/3", 4)
    np.testing.assert_array_equal(fac.composed(), np.eye(5))
    assert fac.product_norm_upper == 1.0
    assert fac.middle == ExtendedExponent(2)
    with pytest.raises(ValueError):
        pd_identity_factorization([2], 3, 4)
    with pytest.raises(ValueError):
        pd_identity_factorization([], 1, 2)


def test_domination_gap_stays_below_one() -> None:
    Uinv = u_block_inverse(3, "4/3", 4)
    gap = domination_gap(Uinv, 2, samples=2000)
    assert gap <= 1.0 + 1e-6
    # the ratio scales as 1/delta
    doubled = domination_gap(Uinv, 2, samples=2000, delta=1.0)
    half_delta = domination_gap(Uinv, 2, samples=2000, delta=0.5)
    assert half_delta == pytest.approx(2.0 * doubled, rel=1e-12)


def test_domination_gap_validation() -> None:
    with pytest.raises(ValueError):
        domination_gap(np.ones((2, 3)), 2)
    with pytest.raises(ValueError):
        domination_gap(np.eye(2), 1)
    with pytest.raises(ValueError):
        domination_gap(np.eye(2), 2, samples=0)
