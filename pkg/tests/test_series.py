import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ewenspitman.errors import NonzeroConstantTerm, NotInvertible, OrderExceeded
from ewenspitman.series import (
    ExpSeries,
    ThetaPoly,
    binomial_series,
    constant_series,
    exp_series,
    extract_coeff,
    falling_factorial,
    identity_series,
    log1p_series,
    rising_factorial,
    rising_poly,
    series_compose,
    series_mul,
    series_reversion,
    theta_ratio,
)

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=9)
THETA = ThetaPoly.theta()


def series_st(order, zero_const=False, unit_linear=False):
    coeffs = st.lists(rationals, min_size=order + 1, max_size=order + 1)

    def build(cs):
        cs = list(cs)
        if zero_const:
            cs[0] = F(0)
        if unit_linear and cs[1] == 0:
            cs[1] = F(1)
        return ExpSeries(cs, order)

    return coeffs.map(build)


# --- factorial powers ---

def test_rising_factorial_examples():
    assert rising_factorial(F(1), 3, F(1, 2)) == 3
    assert rising_factorial(F(7, 3), 0, F(5)) == 1
    assert rising_factorial(THETA, 2) == ThetaPoly([0, 1, 1])


def test_falling_factorial_examples():
    assert falling_factorial(5, 2) == 20
    assert falling_factorial(F(9, 4), 0) == 1
    assert falling_factorial(3, 4) == 0


@given(rationals, st.integers(0, 6), rationals)
def test_rising_falling_duality(x, k, a):
    if k == 0:
        assert rising_factorial(x, k, a) == falling_factorial(x, k, a) == 1
    else:
        assert rising_factorial(x, k, a) == falling_factorial(x + (k - 1) * a, k, a)


def test_rising_poly_matches_pointwise():
    p = rising_poly(F(3, 2), 4, F(1, 3))
    assert p.degree == 4
    for x in (F(0), F(1, 5), F(-2)):
        assert p(x) == rising_factorial(x + F(3, 2), 4, F(1, 3))


# --- ThetaPoly ---

def test_thetapoly_canonical_form():
    assert ThetaPoly([1, 2, 0, 0]).coeffs == (1, 2)
    assert ThetaPoly([0, 0]).is_zero()
    assert ThetaPoly().degree == -1
    assert ThetaPoly([3]) == 3


@given(st.lists(rationals, max_size=5), st.lists(rationals, max_size=5), rationals)
def test_thetapoly_ring_ops_pointwise(a, b, x):
    p, q = ThetaPoly(a), ThetaPoly(b)
    assert (p + q)(x) == p(x) + q(x)
    assert (p - q)(x) == p(x) - q(x)
    assert (p * q)(x) == p(x) * q(x)


@given(st.lists(rationals, max_size=5), rationals, rationals)
def test_shift_and_difference(a, s, x):
    p = ThetaPoly(a)
    assert p.shift(s)(x) == p(x + s)
    assert p.backward_difference(s)(x) == p(x) - p(x - s)


@given(st.lists(rationals, min_size=1, max_size=6), rationals)
def test_divide_linear(a, root):
    p = ThetaPoly(a)
    q, r = p.divide_linear(root)
    assert q * ThetaPoly([-root, 1]) + r == p
    assert r == p(root)


def test_exact_div_linear_refuses_remainder():
    with pytest.raises(ArithmeticError):
        ThetaPoly([1, 1]).exact_div_linear(F(1))


def test_theta_ratio_cancels_common_root():
    num = rising_poly(0, 3, F(1, 2))
    den = rising_poly(0, 5, 1)
    # theta^{3 rising 1/2} / theta^{5 rising} at theta = 0 is (1/2)(1) / (1*2*3*4)
    assert theta_ratio(num, den, 0) == F(1, 2) / 24
    assert theta_ratio(num, den, 1) == num(1) / den(1)
    with pytest.raises(ZeroDivisionError):
        theta_ratio(ThetaPoly([1]), THETA, 0)


# --- ExpSeries products ---

def test_mul_examples():
    e = exp_series(1, 8)
    assert (e * e).coeffs == tuple(F(2) ** n for n in range(9))
    one = constant_series(1, 8)
    f = ExpSeries([F(n, 3) for n in range(9)])
    assert f * one == f
    geo = ExpSeries.from_ordinary([1] * 9, 8)
    assert (geo * geo).coeffs == tuple(F(math.factorial(n + 1)) for n in range(9))


def test_mul_tracks_min_order():
    f = exp_series(1, 5) * exp_series(1, 9)
    assert f.order == 5
    with pytest.raises(OrderExceeded):
        extract_coeff(f, 6)


@settings(max_examples=30)
@given(series_st(6), series_st(6), series_st(6))
def test_mul_commutative_associative(f, g, h):
    assert series_mul(f, g) == series_mul(g, f)
    assert (f * g) * h == f * (g * h)


@given(series_st(7).filter(lambda s: s.coeffs[0] != 0))
def test_reciprocal(f):
    assert f * f.reciprocal() == constant_series(1, 7)


def test_reciprocal_needs_unit():
    with pytest.raises(NotInvertible):
        identity_series(4).reciprocal()


# --- composition and reversion ---

def test_compose_examples():
    N = 8
    e = exp_series(1, N)
    assert series_compose(e, identity_series(N)) == e
    neglog = log1p_series(-1, N) * -1  # log(1/(1-t))
    geo = series_compose(e, neglog)
    assert geo.coeffs == tuple(F(math.factorial(n)) for n in range(N + 1))
    a = F(1, 2)
    h = (1 - binomial_series(a, -1, N)) / a
    c = binomial_series(-1 / a, -a, N)  # (1 - alpha t)^{-theta/alpha}, theta = 1
    assert series_compose(c, h).coeffs == tuple(F(math.factorial(n)) for n in range(N + 1))


def test_compose_requires_zero_constant():
    with pytest.raises(NonzeroConstantTerm):
        series_compose(exp_series(1, 4), exp_series(1, 4))


def test_reversion_examples():
    N = 8
    t = identity_series(N)
    assert series_reversion(t) == t
    a = F(1, 2)
    h = (1 - exp_series(-a, N)) / a
    expected = log1p_series(-a, N) * (-1 / a)
    assert series_reversion(h) == expected
    h2 = ExpSeries([0, 1, 1], N)  # t + t^2/2!
    assert series_compose(h2, series_reversion(h2)) == t


def test_reversion_needs_linear_term():
    with pytest.raises(NotInvertible):
        series_reversion(ExpSeries([0, 0, 1], 5))
    with pytest.raises(NonzeroConstantTerm):
        series_reversion(ExpSeries([1, 1], 5))


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 12).flatmap(lambda n: series_st(n, zero_const=True, unit_linear=True)))
def test_reversion_round_trip(h):
    t = identity_series(h.order)
    hbar = series_reversion(h)
    assert series_compose(hbar, h) == t
    assert series_compose(h, hbar) == t


@settings(max_examples=20)
@given(series_st(6), series_st(6, zero_const=True), series_st(6, zero_const=True))
def test_compose_associative(f, g, h):
    assert f(g(h)) == (f(g))(h)


# --- named series ---

def test_binomial_series_examples():
    s = binomial_series(-2, -1, 6)
    assert s.coeffs == tuple(F(math.factorial(n + 1)) for n in range(7))
    assert binomial_series(0, F(3), 5) == constant_series(1, 5)
    assert extract_coeff(binomial_series(F(1, 2), -1, 4), 2) == F(-1, 4)


@given(rationals, rationals, rationals)
def test_binomial_series_exponents_add(a, b, c):
    lhs = binomial_series(a, c, 7) * binomial_series(b, c, 7)
    assert lhs == binomial_series(a + b, c, 7)


def test_extract_coeff_examples():
    assert extract_coeff(exp_series(1, 6), 5) == 1
    assert extract_coeff(binomial_series(-3, -1, 6), 4) == 360
    assert extract_coeff(binomial_series(F(-1, 2), -1, 6), 3) == F(15, 8)
    with pytest.raises(OrderExceeded):
        extract_coeff(exp_series(1, 3), 4)


def test_log_exp_inverse():
    N = 9
    assert series_compose(exp_series(1, N) - 1, log1p_series(1, N)) == identity_series(N)


def test_falling_scale_is_tk_dk():
    # t^2 D^2 exp(a t) = a^2 t^2 exp(a t)
    a = F(3, 2)
    lhs = exp_series(a, 8).falling_scale(2)
    t2 = ExpSeries([0, 0, 2], 8)  # t^2
    assert lhs == t2 * exp_series(a, 8) * a**2


def test_thetapoly_coefficients_in_series():
    # exp(theta t) composed with log(1+t) is (1+t)^theta, coefficient n is theta^{n falling}
    N = 5
    s = series_compose(exp_series(THETA, N), log1p_series(1, N))
    for n in range(N + 1):
        assert s.coeffs[n] == falling_factorial(THETA, n)
