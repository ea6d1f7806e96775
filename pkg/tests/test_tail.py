import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from rhocert.tail import find_crossover, tail_monotone_check, tail_value

C = 1.25506


def test_tail_value_at_266():
    v = tail_value(266, C, 2)
    assert 4.9997 <= v < 5
    assert 5 - v > 1e-9


def test_tail_value_slope3():
    assert tail_value(266, C, 3) == pytest.approx(4.925041, abs=1e-6)


def test_tail_value_at_half():
    # slope*n = e^(2c) makes the denominator exactly 1/2
    c = math.log(10) / 2
    assert tail_value(5, c, 2) == pytest.approx(8, rel=1e-12)


def test_tail_value_rejects_vacuous():
    with pytest.raises(ValueError):
        tail_value(1, C, 2)


def test_crossover_k5():
    cr = find_crossover(5, C, 2)
    assert cr.n0 == 266
    assert cr.certified and not cr.conditional
    assert 4.9995 < cr.value_at_n0 < 5
    assert cr.value_before == pytest.approx(5.0005, abs=1e-4)
    assert cr.value_before >= 5 + 1e-9


@pytest.mark.parametrize("slope", [2, 3])
def test_crossover_k8_closed_form(slope):
    cr = find_crossover(8, C, slope)
    expected = math.floor(math.exp(2 * C) / slope) + 1
    assert cr.n0 == expected


def test_crossover_rejects_k4():
    with pytest.raises(ValueError):
        find_crossover(4, C, 2)


@given(
    st.fractions(min_value=Fraction(41, 10), max_value=Fraction(12)),
    st.sampled_from([2, 3]),
)
def test_crossover_is_minimal(K, slope):
    cr = find_crossover(K, C, slope)
    assert tail_value(cr.n0, C, slope) < float(K)
    try:
        before = tail_value(cr.n0 - 1, C, slope)
    except ValueError:
        return
    assert before >= float(K)
    if cr.certified:
        assert float(K) - cr.value_at_n0 >= 1e-9 and before - float(K) >= 1e-9


def test_monotone():
    assert tail_monotone_check(266, 10**6, C, 2)
    assert tail_monotone_check(266, 267, C, 2)
    with pytest.raises(ValueError):
        tail_monotone_check(266, 266, C, 2)


@given(st.integers(3, 10**7))
def test_slope3_smaller(n):
    assert tail_value(n, C, 3) < tail_value(n, C, 2)


def test_crossover_inconclusive_when_margin_too_thin():
    # near K = 4 the crossover sits at astronomically large n where
    # neighbouring tail values are closer than the guard band
    cr = find_crossover(Fraction(401, 100), C, 2)
    assert cr.status == "inconclusive"
