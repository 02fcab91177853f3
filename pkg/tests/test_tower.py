import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from expcensus.errors import NonPositive, PrecisionLoss, TowerOverflow
from expcensus.tower import (
    LOG_E0,
    ComplexIterateValue,
    LevelIndexReal,
    li_add,
    li_compare,
    li_div,
    li_exp,
    li_log,
    li_mul,
    li_normalize,
    li_pow,
    li_rel_gap,
    li_sub,
)
from expcensus.iterates import real_iterates

import oracles

LI = LevelIndexReal


def canonical_values():
    level0 = st.floats(min_value=1e-300, max_value=math.exp(LOG_E0) * 0.999,
                       allow_nan=False, allow_infinity=False).map(lambda x: LI(0, x))
    higher = st.tuples(st.integers(1, 3),
                       st.floats(min_value=LOG_E0, max_value=math.exp(LOG_E0) * 0.999)
                       ).map(lambda t: LI(*t))
    return st.one_of(level0, higher)


def test_normalize_demotes_small_level_one():
    x = li_normalize(LI(1, 0.5))
    assert x.level == 0
    assert x.residual == pytest.approx(math.exp(0.5), rel=1e-15)


def test_log_of_level_two_is_level_one_value():
    assert li_log(LI(2, 10.0)) == LI(1, 10.0)
    assert float(li_log(LI(2, 10.0))) == pytest.approx(math.exp(10.0), rel=1e-15)


def test_mul_small_values():
    assert li_mul(LI(0, 2.0), LI(0, 3.0)) == LI(0, 6.0)


def test_pow_one_is_identity():
    x = LI(2, 31.5)
    assert li_pow(x, 1) == x


def test_log_space_product_of_iterates():
    f2, f3 = real_iterates(3, 3.0)[1:]
    expected = math.log(3.0) + 3.0 * math.e**3 + math.log(3.0) + 3.0
    assert li_mul(f3, f2).ln() == pytest.approx(expected, rel=1e-14)
    assert li_mul(f3, f2).ln() == pytest.approx(oracles.log_f_real(3, 3.0) + oracles.log_f_real(2, 3.0),
                                                 rel=1e-14)


def test_rel_gap_small():
    assert li_rel_gap(LI(0, 110.0), LI(0, 100.0)) == pytest.approx(0.1, rel=1e-14)


def test_rel_gap_of_iterates_against_mpmath():
    a = real_iterates(3, 5.0)[-1]
    b = real_iterates(3, 5.001)[-1]
    import mpmath as mp
    d = mp.mpf(oracles.log_f_real(3, 5.001)) - mp.mpf(oracles.log_f_real(3, 5.0))
    assert li_rel_gap(b, a) == pytest.approx(float(mp.expm1(d)), rel=1e-9)
    assert li_rel_gap(a, b) < 0


def test_text_round_trip():
    x = real_iterates(4, 2.0)[-1]
    assert str(x).startswith(f"E^{x.level}(")
    assert LI.parse(str(x)) == x
    with pytest.raises(ValueError):
        LI.parse("1.5")


def test_log_below_one_raises():
    with pytest.raises(NonPositive):
        li_log(LI(0, 0.5))


def test_subtraction_cannot_go_negative():
    assert li_sub(LI(0, 3.0), LI(0, 2.0)) == LI(0, 1.0)
    with pytest.raises(NonPositive):
        li_sub(LI(0, 2.0), LI(0, 3.0))


def test_from_log_infinite_overflows():
    with pytest.raises(TowerOverflow):
        LI.from_log(math.inf)


def test_division_and_addition_of_huge_values():
    x = LI(2, 40.0)
    assert li_div(x, x) == LI(0, 1.0)
    assert li_add(x, x).ln() == pytest.approx(x.ln() + math.log(2.0), rel=1e-15)


def test_complex_value_keeps_unreduced_argument():
    v = ComplexIterateValue(math.log(10.0), math.pi / 2 + 10.0)
    assert v.form == "exact"
    z = v.to_complex()
    assert abs(z) == pytest.approx(10.0)
    assert v.log().imag == pytest.approx(math.pi / 2 + 10.0)
    big = ComplexIterateValue(1000.0, 0.0)
    assert big.form == "logpolar"
    with pytest.raises(TowerOverflow):
        big.to_complex()


@settings(max_examples=1000, deadline=None)
@given(canonical_values())
def test_round_trip_exp_log(x):
    if x < LI(0, 1.0):
        return
    y = li_exp(li_log(x))
    assert y.level == x.level
    if x.level == 0:
        # a level-0 value passes through its float logarithm
        assert y.residual == pytest.approx(x.residual, rel=4 * math.ulp(1.0) * max(1.0, abs(math.log(x.residual))))
    else:
        assert abs(y.residual - x.residual) <= math.ulp(x.residual)


@settings(max_examples=500, deadline=None)
@given(st.floats(0.1, 6.0), st.floats(1e-6, 1.0), st.integers(1, 4))
def test_monotone_in_the_seed(r, dr, m):
    lo = real_iterates(m, r)[-1]
    hi = real_iterates(m, r + dr)[-1]
    assert li_compare(lo, hi) == -1


@settings(max_examples=500, deadline=None)
@given(canonical_values(), canonical_values())
def test_rel_gap_sign_matches_compare(a, b):
    c = li_compare(a, b)
    if c == 0:
        return
    try:
        gap = li_rel_gap(a, b)
    except PrecisionLoss:
        return
    assert (gap > 0) == (c > 0)
