"""Substrate tests: rationals, polynomials, truncated series, intervals."""

from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qapprox.exact import (
    DomainError,
    InputError,
    Interval,
    Poly,
    TruncSeries,
    den_of,
    format_rational,
    log_float,
    log_interval,
    parse_rational,
    reduce_rational,
    series_mul_trunc,
    series_order,
)

fractions_st = st.fractions(
    min_value=-1000, max_value=1000, max_denominator=1000
)
polys_st = st.lists(fractions_st, max_size=6).map(Poly)


# -- rationals ----------------------------------------------------------------

def test_reduce_gcd_cancellation():
    assert reduce_rational(2, 4) == F(1, 2)


def test_reduce_sign_normalization():
    r = reduce_rational(3, -6)
    assert r == F(-1, 2)
    assert r.denominator == 2 and r.numerator == -1


def test_reduce_zero():
    r = reduce_rational(0, 5)
    assert r == 0 and r.denominator == 1


def test_reduce_zero_denominator():
    with pytest.raises(DomainError):
        reduce_rational(1, 0)


def test_den_of_basics():
    assert den_of(F(1, 2)) == 2
    assert den_of(7) == 1


def test_den_of_power_value():
    # (M^2t + 1) / M^(2t+1) at t=1, M=2 evaluates to 5/8 with gcd(5, 8) = 1
    t, m = 1, 2
    val = F(m ** (2 * t) + 1, m ** (2 * t + 1))
    assert val == F(5, 8)
    assert den_of(val) == 8
    # and den_of is the reduced denominator on any reduced input
    assert den_of(F(5, 32)) == 32


@pytest.mark.parametrize(
    "text,value",
    [("1/2", F(1, 2)), ("-3/4", F(-3, 4)), ("7", F(7)), ("-2", F(-2)), ("0", F(0))],
)
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("bad", ["1.5", "2/-3", "++2", "1e3", "", "a/b", "1/0"])
def test_parse_rational_rejects(bad):
    with pytest.raises(InputError):
        parse_rational(bad)


@given(fractions_st)
def test_rational_text_round_trip(x):
    assert parse_rational(format_rational(x)) == x


# -- polynomials ----------------------------------------------------------------

def test_poly_strips_trailing_zeros():
    p = Poly([1, 2, 0, 0])
    assert p.degree == 1
    assert Poly([]).is_zero()
    assert Poly([0, 0]).degree == -1


def test_eval_poly_examples():
    assert Poly([0, 1, 0, 1]).eval(F(1, 2)) == F(5, 8)  # z + z^3 at 1/2
    assert Poly([1, F(-1, 2)]).eval(F(1, 4)) == F(7, 8)  # 1 - z/2 at 1/4
    assert Poly([]).eval(F(3, 7)) == 0


def test_poly_divmod():
    a = Poly([-1, 0, 1])  # z^2 - 1
    b = Poly([-1, 1])  # z - 1
    q, r = a.divmod(b)
    assert q == Poly([1, 1]) and r.is_zero()
    q2, r2 = Poly([1, 0, 1]).divmod(Poly([1, 1]))
    assert Poly([1, 1]) * q2 + r2 == Poly([1, 0, 1])


def test_poly_str():
    assert str(Poly([1, F(-1, 2)])) == "1 - 1/2 z"
    assert str(Poly([0, 1])) == "z"
    assert str(Poly([])) == "0"
    assert str(Poly([0, 0, F(3, 4)])) == "3/4 z^2"
    assert str(Poly([-1, 0, -1])) == "-1 - z^2"


@given(polys_st, polys_st, fractions_st)
@settings(max_examples=60)
def test_eval_is_ring_homomorphism(p, q, x):
    assert (p * q).eval(x) == p.eval(x) * q.eval(x)
    assert (p + q).eval(x) == p.eval(x) + q.eval(x)


@given(polys_st, st.integers(min_value=0, max_value=4))
def test_shift_then_divide_round_trips(p, k):
    assert p.shift(k).divexact_zpow(k) == p


# -- truncated series ----------------------------------------------------------

def test_series_mul_example():
    a = TruncSeries.from_poly(Poly([1, F(-1, 2)]), 3)  # 1 - z/2
    b = TruncSeries.from_poly(Poly([0, 1, F(1, 2)]), 3)  # z + z^2/2
    prod = series_mul_trunc(a, b, 3)
    assert prod == TruncSeries([0, 1, 0, F(-1, 4)], 3)


def test_series_mul_identity_and_zero():
    a = TruncSeries([F(2), F(3), F(5)], 2)
    one = TruncSeries.from_poly(Poly([1]), 2)
    zero = TruncSeries.from_poly(Poly([]), 2)
    assert a.mul(one) == a
    assert a.mul(zero) == zero


def test_series_mul_order_cap():
    a = TruncSeries([1, 1], 1)
    b = TruncSeries([1, 1, 1], 2)
    assert a.mul(b).order == 1
    with pytest.raises(InputError):
        a.mul(b, 2)


def test_series_order_examples():
    assert series_order(TruncSeries([0, 1, F(1, 2)], 2)) == 1
    assert series_order(TruncSeries([], 5)) is None
    assert series_order(TruncSeries([0, 0, 0, F(-1, 12), F(1, 24)], 4)) == 3


@given(
    st.lists(fractions_st, min_size=1, max_size=5),
    st.lists(fractions_st, min_size=1, max_size=5),
)
@settings(max_examples=60)
def test_series_mul_commutes(acs, bcs):
    n = min(len(acs), len(bcs)) - 1
    a = TruncSeries(acs[: n + 1], n)
    b = TruncSeries(bcs[: n + 1], n)
    assert a.mul(b) == b.mul(a)


@given(
    st.lists(fractions_st, min_size=3, max_size=5),
    st.lists(fractions_st, min_size=3, max_size=5),
    st.lists(fractions_st, min_size=3, max_size=5),
)
@settings(max_examples=60)
def test_series_mul_distributes(acs, bcs, ccs):
    n = min(len(acs), len(bcs), len(ccs)) - 1
    a, b, c = (TruncSeries(cs[: n + 1], n) for cs in (acs, bcs, ccs))
    assert a.mul(b + c) == a.mul(b) + a.mul(c)


# -- intervals -------------------------------------------------------------------

def test_interval_validation_and_ops():
    iv = Interval(F(1, 3), F(1, 2))
    assert iv.contains(F(2, 5))
    assert not iv.contains(F(2, 3))
    assert (iv + 1).lo == F(4, 3)
    assert (-iv) == Interval(F(-1, 2), F(-1, 3))
    with pytest.raises(InputError):
        Interval(1, 0)


def test_interval_abs():
    assert Interval(-3, -1).abs() == Interval(1, 3)
    assert Interval(-2, 5).abs() == Interval(0, 5)
    assert Interval(1, 4).abs() == Interval(1, 4)


def test_interval_outward():
    iv = Interval(F(1, 3), F(2, 3)).outward(3)
    assert iv.lo == F(333, 1000) and iv.hi == F(667, 1000)
    tiny = Interval(F(1, 10**20), F(1, 10**19)).outward(3)
    assert tiny.lo == F(1, 10**20)  # positive lower endpoint survives


@given(fractions_st, fractions_st, fractions_st, fractions_st)
@settings(max_examples=60)
def test_interval_arithmetic_encloses_points(a, b, c, d):
    x = Interval(min(a, b), max(a, b))
    y = Interval(min(c, d), max(c, d))
    # the endpoints themselves are members, so their combinations must be
    assert (x + y).contains(a + c)
    assert (x - y).contains(b - d)
    assert (x * y).contains(a * d)
    assert x.abs().contains(abs(a))


def test_interval_divide():
    q = Interval(1, 2).divide(Interval(2, 4))
    assert q == Interval(F(1, 4), 1)
    with pytest.raises(DomainError):
        Interval(1, 2).divide(Interval(-1, 1))


# -- certified logs ----------------------------------------------------------------

def test_log_interval_tight_and_centered():
    import math

    ten = log_interval(F(10))
    assert ten.width < F(1, 10**40)
    assert abs(float(ten.mid) - math.log(10)) < 1e-14
    assert log_interval(F(1)) == Interval.point(0)
    half = log_interval(F(1, 2))
    assert half.hi < 0 and abs(float(half.mid) + math.log(2)) < 1e-14


def test_log_interval_brackets_one_around_e():
    # ln is increasing and ln e = 1: rationals just under/over e sandwich 1
    assert log_interval(F(2718281828, 10**9)).hi < 1
    assert log_interval(F(2718281829, 10**9)).lo > 1


def test_log_interval_additive_consistency():
    # enclosures of ln(10^5040) and 5040 * ln(10) both contain the truth,
    # so they must overlap
    ten = log_interval(F(10))
    big = log_interval(F(10) ** 5040)
    assert big.lo <= ten.hi * 5040
    assert ten.lo * 5040 <= big.hi


def test_log_interval_rejects_nonpositive():
    with pytest.raises(DomainError):
        log_interval(F(0))


def test_log_float_matches_math_log():
    import math

    assert abs(log_float(F(3, 7)) - math.log(3 / 7)) < 1e-12
    # huge arguments stay finite and accurate
    assert abs(log_float(F(10) ** 400 ) - 400 * math.log(10)) < 1e-6
