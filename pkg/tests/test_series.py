"""Truncated power series arithmetic."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quasimodes.errors import BranchPointError, SingularityError, UsageError
from quasimodes.series import TruncatedSeries


def geometric(K):
    # 1/(1 - s) truncated at degree K
    return TruncatedSeries(np.ones(K + 1))


def test_constructor_pads_to_degree():
    a = TruncatedSeries([1.0, 2.0], K=4)
    assert a.K == 4
    np.testing.assert_allclose(a.coeffs, [1, 2, 0, 0, 0])


def test_constructor_rejects_bad_input():
    with pytest.raises(UsageError):
        TruncatedSeries([])
    with pytest.raises(UsageError):
        TruncatedSeries([[1.0, 2.0]])
    with pytest.raises(UsageError):
        TruncatedSeries([1, 2, 3], K=1)


def test_coefficients_are_immutable():
    a = TruncatedSeries([1.0, 2.0, 3.0])
    with pytest.raises(ValueError):
        a.coeffs[0] = 5.0


def test_add_sub_mul_scalar():
    a = TruncatedSeries([1, 2, 3])
    b = TruncatedSeries([0, 1, 0])
    np.testing.assert_allclose((a + b).coeffs, [1, 3, 3])
    np.testing.assert_allclose((a - b).coeffs, [1, 1, 3])
    np.testing.assert_allclose((2.0 * a).coeffs, [2, 4, 6])


def test_mul_truncates():
    a = TruncatedSeries([1, 1, 1])
    prod = a * a
    np.testing.assert_allclose(prod.coeffs, [1, 2, 3])


def test_incompatible_degrees_rejected():
    with pytest.raises(UsageError):
        TruncatedSeries([1, 2]) + TruncatedSeries([1, 2, 3])


def test_recip_of_geometric():
    # (1 + s + s^2 + ...) * (1 - s) = 1
    r = geometric(8).recip()
    expect = np.zeros(9)
    expect[0], expect[1] = 1.0, -1.0
    np.testing.assert_allclose(r.coeffs, expect, atol=1e-14)


def test_recip_raises_at_zero_constant():
    with pytest.raises(SingularityError):
        TruncatedSeries([0.0, 1.0]).recip()


def test_sqrt_matches_binomial_series():
    # sqrt(1 + s): coefficients C(1/2, k)
    a = TruncatedSeries([1.0, 1.0], K=10)
    got = a.sqrt(1.0).coeffs
    ref = np.zeros(11, dtype=complex)
    c = 1.0
    for k in range(11):
        ref[k] = c
        c *= (0.5 - k) / (k + 1)
    np.testing.assert_allclose(got, ref, atol=1e-14)


def test_sqrt_branch_sign():
    a = TruncatedSeries([4.0, 1.0], K=5)
    plus = a.sqrt(2.0)
    minus = a.sqrt(-2.0)
    np.testing.assert_allclose(plus.coeffs, -minus.coeffs)


def test_sqrt_rejects_bad_branch_and_branch_point():
    a = TruncatedSeries([4.0, 1.0], K=3)
    with pytest.raises(UsageError):
        a.sqrt(1.0)
    with pytest.raises(BranchPointError):
        TruncatedSeries([0.0, 1.0]).sqrt(0.0)


def test_deriv_antideriv_roundtrip():
    a = TruncatedSeries([3.0, 1.0, 4.0, 1.0, 5.0])
    back = a.deriv().antideriv(3.0)
    np.testing.assert_allclose(back.coeffs, a.coeffs, atol=1e-15)


def test_eval_matches_horner():
    a = TruncatedSeries([1.0, -2.0, 0.5, 1j])
    s = 0.3
    expect = 1.0 - 2.0 * s + 0.5 * s**2 + 1j * s**3
    assert abs(a.eval(s) - expect) < 1e-15


def test_eval_vectorized():
    a = TruncatedSeries([2.0, 1.0])
    s = np.array([0.0, 1.0, -1.0])
    np.testing.assert_allclose(a.eval(s), [2.0, 3.0, 1.0])


def test_eval_d2_against_finite_differences():
    rng = np.random.default_rng(7)
    c = rng.standard_normal(9) + 1j * rng.standard_normal(9)
    a = TruncatedSeries(c)
    s, eps = 0.37, 1e-5
    v, d1, d2 = a.eval_d2(s)
    assert abs(v - a.eval(s)) < 1e-14
    fd1 = (a.eval(s + eps) - a.eval(s - eps)) / (2 * eps)
    fd2 = (a.eval(s + eps) - 2 * a.eval(s) + a.eval(s - eps)) / eps**2
    assert abs(d1 - fd1) < 1e-8 * max(1.0, abs(d1))
    assert abs(d2 - fd2) < 1e-4 * max(1.0, abs(d2))


def test_radius_estimate_geometric():
    # coefficients r^{-k} give radius about r
    r = 0.5
    K = 40
    a = TruncatedSeries(r ** -np.arange(K + 1.0))
    est = a.estimate_radius()
    assert 0.8 * r < est < 1.25 * r


def test_radius_estimate_polynomial_is_infinite():
    a = TruncatedSeries([1.0, 2.0, 3.0], K=30)
    assert a.estimate_radius() == np.inf


coeff = st.complex_numbers(
    min_magnitude=0.0, max_magnitude=10.0, allow_nan=False, allow_infinity=False
)


@settings(max_examples=60, deadline=None)
@given(st.lists(coeff, min_size=1, max_size=9), st.lists(coeff, min_size=1, max_size=9))
def test_mul_commutes(ca, cb):
    K = max(len(ca), len(cb)) - 1
    a = TruncatedSeries(ca, K=K)
    b = TruncatedSeries(cb, K=K)
    lhs, rhs = (a * b).coeffs, (b * a).coeffs
    scale = max(1.0, np.abs(lhs).max())
    np.testing.assert_allclose(lhs, rhs, atol=1e-13 * scale)


@settings(max_examples=60, deadline=None)
@given(
    st.lists(coeff, min_size=1, max_size=7),
    st.lists(coeff, min_size=1, max_size=7),
    st.lists(coeff, min_size=1, max_size=7),
)
def test_mul_associates(ca, cb, cc):
    K = max(len(ca), len(cb), len(cc)) - 1
    a = TruncatedSeries(ca, K=K)
    b = TruncatedSeries(cb, K=K)
    c = TruncatedSeries(cc, K=K)
    lhs, rhs = ((a * b) * c).coeffs, (a * (b * c)).coeffs
    scale = max(1.0, np.abs(lhs).max())
    np.testing.assert_allclose(lhs, rhs, atol=1e-12 * scale)


unit_coeff = st.complex_numbers(
    min_magnitude=0.0, max_magnitude=2.0, allow_nan=False, allow_infinity=False
)


@settings(max_examples=60, deadline=None)
@given(st.lists(unit_coeff, min_size=1, max_size=9))
def test_recip_inverts(cs):
    cs[0] = 1.0 + cs[0] * 0.25  # keep the constant term away from 0
    a = TruncatedSeries(cs)
    prod = (a * a.recip()).coeffs
    expect = np.zeros_like(prod)
    expect[0] = 1.0
    np.testing.assert_allclose(prod, expect, atol=1e-12)


@settings(max_examples=60, deadline=None)
@given(st.lists(unit_coeff, min_size=1, max_size=9))
def test_sqrt_squares_back(cs):
    cs[0] = 1.0 + cs[0] * 0.25
    a = TruncatedSeries(cs)
    root = a.sqrt(np.sqrt(complex(cs[0])))
    np.testing.assert_allclose((root * root).coeffs, a.coeffs, atol=1e-12)
