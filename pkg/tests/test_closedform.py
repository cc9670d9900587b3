from fractions import Fraction
from itertools import product
from math import comb, factorial

import pytest
from hypothesis import given, settings, strategies as st

from mzvren import closedform as cf
from mzvren.exact_arith import bernoulli as B
from mzvren.series import weak_compositions

F = Fraction


def bq(m):
    return B(m) / m


def explicit_ems(ks):
    """Depth <= 3 Bernoulli sums written out term by term."""
    s = (-1) ** sum(ks)
    if len(ks) == 1:
        return s * bq(ks[0] + 1)
    if len(ks) == 2:
        k1, k2 = ks
        return s * sum(comb(k2, a) * bq(k2 - a + 1) * bq(k1 + a + 1) for a in range(k2 + 1))
    k1, k2, k3 = ks
    total = F(0)
    for n12 in range(k2 + 1):
        n22 = k2 - n12
        for n13, n23, n33 in weak_compositions(k3, 3):
            coef = comb(k2, n12) * factorial(k3) // (factorial(n13) * factorial(n23) * factorial(n33))
            total += coef * bq(n33 + 1) * bq(n22 + n23 + 1) * bq(k1 + n12 + n13 + 1)
    return s * total


def test_examples():
    assert cf.zeta_fkmt((0,)) == F(-1, 2)
    assert cf.zeta_fkmt((1,)) == F(-1, 6)
    assert cf.zeta_fkmt((0, 0)) == F(1, 4)
    assert cf.zeta_ems_closed((0,)) == F(-1, 2)
    assert cf.zeta_ems_closed((2,)) == 0
    assert cf.zeta_ems_closed((1, 0)) == F(1, 24)


def test_against_explicit_sums():
    for ks in cf.compositions(3, 7):
        assert cf.zeta_ems_closed(ks) == explicit_ems(ks), ks


def test_depth_one():
    for k in range(21):
        assert cf.zeta_ems_closed((k,)) == (-1) ** k * B(k + 1) / (k + 1)
        assert cf.zeta_fkmt((k,)) == (-1) ** k * B(k + 1)


def test_all_zero_arguments():
    for n in range(1, 7):
        assert cf.zeta_ems_closed((0,) * n) == F(-1, 2) ** n
        assert cf.zeta_fkmt((0,) * n) == F(-1, 2) ** n


def test_row_reading_is_rejected():
    # both readings agree in depth one; from depth two the row reading breaks the recurrences
    bad = [ks for ks in cf.compositions(3, 4, 2)
           if cf.zeta_ems_closed(ks, layout="row") != explicit_ems(ks)]
    assert bad
    assert cf.zeta_ems_closed((0, 1), layout="row") != cf.zeta_ems_closed((0, 1))
    with pytest.raises(ValueError):
        cf.zeta_fkmt((1,), layout="diagonal")


def test_rejects_bad_compositions():
    with pytest.raises(ValueError):
        cf.zeta_fkmt(())
    with pytest.raises(ValueError):
        cf.zeta_ems_closed((1, -2))


def test_compositions_order():
    cs = list(cf.compositions(2, 1))
    assert cs == [(0,), (1,), (0, 0), (0, 1), (1, 0)]
    assert len(list(cf.compositions(3, 6, 3))) == 84


def test_recurrence_pipelines():
    for ks in cf.compositions(4, 5):
        assert cf.zeta_ems_recurrence(ks) == cf.zeta_ems_closed(ks)
        assert cf.zeta_fkmt_recurrence(ks) == cf.zeta_fkmt(ks)


def test_univariate_factors():
    ems = cf.ems_factor(6)
    # (s - (e^s - 1))/(s(e^s - 1)) = -1/2 + s/12 + 0 s^2 - ...
    assert ems.coeffs[:3] == (F(-1, 2), F(1, 12), 0)
    conv = cf.conversion_factor_uni(4)
    assert conv.coeffs == (1, F(-1, 2), F(1, 6), F(-1, 24), F(1, 120))
    fk = cf.fkmt_factor(5)
    for m in range(6):
        assert fk[m] == B(m + 1) / factorial(m)


def test_generating_function_examples():
    assert cf.gen_fkmt(1, 0).terms == {(0,): F(-1, 2)}
    assert cf.gen_fkmt(1, 3).coefficient((1,)) == F(1, 6)
    assert cf.gen_fkmt(2, 0).terms == {(0, 0): F(1, 4)}
    assert cf.gen_ems(1, 1).terms == {(0,): F(-1, 2), (1,): F(1, 12)}
    assert cf.gen_ems(2, 0).terms == {(0, 0): F(1, 4)}
    assert cf.gen_ems(1, 4).coefficient((2,)) == 0
    assert cf.conversion_factor(1, 0).terms == {(0,): 1}
    assert cf.conversion_factor(1, 3).coefficient((1,)) == F(-1, 2)
    assert cf.conversion_factor(2, 0).terms == {(0, 0): 1}


def test_coefficient_to_zeta():
    assert cf.coefficient_to_zeta(cf.gen_ems(1, 4), (0,)) == F(-1, 2)
    assert cf.coefficient_to_zeta(cf.gen_ems(1, 4), (1,)) == F(-1, 12)
    assert cf.coefficient_to_zeta(cf.gen_fkmt(2, 4), (0, 0)) == F(1, 4)
    with pytest.raises(ValueError):
        cf.coefficient_to_zeta(cf.gen_ems(1, 2), (3,))
    with pytest.raises(ValueError):
        cf.coefficient_to_zeta(cf.gen_ems(2, 2), (1,))


def test_generating_functions_match_closed_forms():
    for ks in cf.compositions(3, 8):
        n = len(ks)
        assert cf.coefficient_to_zeta(cf.gen_ems(n, 8), ks) == cf.zeta_ems_closed(ks)
        assert cf.coefficient_to_zeta(cf.gen_fkmt(n, 8), ks) == cf.zeta_fkmt(ks)


def test_series_identities():
    for n in (1, 2, 3):
        assert cf.conversion_identity_check(n, 8)
    for n in (2, 3):
        assert cf.factorized_check("fkmt", n, 8)
        assert cf.factorized_check("ems", n, 8)


def test_recurrence_identities():
    for ks in cf.compositions(3, 6, 2):
        assert cf.fkmt_recurrence_check(ks)
        assert cf.ems_recurrence_check(ks)
        assert cf.prefix_split_check(ks)
        assert cf.averaged_split_check(ks)
    with pytest.raises(ValueError):
        cf.fkmt_recurrence_check((1,))


def test_split_and_merge_identity_all_choices():
    for ks in cf.compositions(4, 4, 3):
        n = len(ks)
        for p in range(2, n):
            for ops in product("+,", repeat=n - p):
                assert cf.split_merge_check(ks, p, ops), (ks, p, ops)
    with pytest.raises(ValueError):
        cf.split_merge_check((1, 1, 1), 3, ())


def test_frak_h_identity():
    assert cf.frak_h_identity_check((0,), 4)
    assert cf.frak_h_identity_check((1,), 4)
    assert cf.frak_h_identity_check((0, 0), 3)
    for length in (1, 2):
        for prefix in product(range(3), repeat=length):
            assert cf.frak_h_identity_check(prefix, 4), prefix
    with pytest.raises(ValueError):
        cf.frak_h_identity_check((1,), 2)


def test_conversion_examples():
    assert cf.ems_from_fkmt((0,)) == F(-1, 2)
    assert cf.ems_from_fkmt((1, 0)) == F(1, 24)
    assert cf.ems_from_fkmt((0, 0, 0)) == F(-1, 8)
    assert cf.fkmt_from_ems((0,)) == F(-1, 2)
    assert cf.fkmt_from_ems((1,)) == F(-1, 6)
    assert cf.fkmt_from_ems((0, 0)) == F(1, 4)
    with pytest.raises(ValueError):
        cf.ems_from_fkmt((0, 0, 0, 0))


def alternative_sign_depth3(ks):
    # the depth-3 conversion with sign exponent v01 + v12 + v23 instead of v11 + v22 + v33
    k1, k2, k3 = ks
    total = F(0)
    for v01 in range(k1 + 1):
        for v02, v12, v22 in weak_compositions(k2, 3):
            for v03, v13, v23, v33 in weak_compositions(k3, 4):
                r = v01 + v12 + v23
                total += (comb(k1, v01) * comb(k2, v02) * comb(k2 - v02, v12)
                          * comb(k3, v03) * comb(k3 - v03, v13) * comb(k3 - v03 - v13, v23)
                          * F(1, v03 + 1) * F(1, v02 + v13 + 1) * F((-1) ** r, r + 1)
                          * cf.zeta_fkmt((k1 - v01, v22, v33)))
    return total


def test_depth3_conversion_sign():
    assert cf.ems_from_fkmt((0, 0, 1)) == cf.zeta_ems_closed((0, 0, 1))
    assert alternative_sign_depth3((0, 0, 1)) != cf.zeta_ems_closed((0, 0, 1))


def test_conversions_round_trip():
    for ks in cf.compositions(3, 6):
        assert cf.ems_from_fkmt(ks) == cf.zeta_ems_closed(ks)
        assert cf.fkmt_from_ems(ks) == cf.zeta_fkmt(ks)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 5), st.integers(1, 5))
def test_depth_two_product_identity_property(a, b):
    lhs = cf.zeta_ems_closed((a,)) * cf.zeta_ems_closed((b,))
    rhs = sum(F((-1) ** k * comb(a, k)) * cf.zeta_ems_closed((b + k, a - k)) for k in range(a + 1))
    assert lhs == rhs
