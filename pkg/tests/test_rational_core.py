"""
Tests for the exact rational core.
"""

import threading
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from models import RationalError
from services.rational_core import RationalCore, rational_core


@pytest.mark.parametrize("text, expected", [
    ("3/6", Fraction(1, 2)),
    ("-4", Fraction(-4)),
    (" 2 / 3 ", Fraction(2, 3)),
    ("+7/1", Fraction(7)),
    ("-1/2", Fraction(-1, 2)),
])
def test_parse(text, expected):
    assert rational_core.parse(text) == expected


@pytest.mark.parametrize("text", ["1/0", "abc", "1.5", "", "1/-2", "2/3/4"])
def test_parse_rejects(text):
    with pytest.raises(RationalError):
        rational_core.parse(text)


def test_format_drops_unit_denominator():
    assert rational_core.format(Fraction(4, 2)) == "2"
    assert rational_core.format(Fraction(-1, 2)) == "-1/2"
    assert rational_core.format(0) == "0"


@given(p=st.integers(-10**6, 10**6), q=st.integers(1, 10**6))
@settings(max_examples=50)
def test_format_parse_inverse(p, q):
    value = Fraction(p, q)
    assert rational_core.parse(rational_core.format(value)) == value


def test_divide_by_zero():
    assert rational_core.divide(1, 4) == Fraction(1, 4)
    with pytest.raises(RationalError):
        rational_core.divide(1, 0)


def test_factorial_table():
    core = RationalCore()
    assert core.factorial(0) == 1
    assert core.factorial(10) == 3628800
    assert core.factorial(3) == 6
    with pytest.raises(RationalError):
        core.factorial(-1)


def test_factorial_concurrent_growth():
    core = RationalCore()
    results = {}

    def grow(n):
        results[n] = core.factorial(n)

    threads = [threading.Thread(target=grow, args=(n,)) for n in (50, 80, 120, 30)]
    for thread in threads:
        thread.start()
    for thread in threads:
        thread.join()

    expected = RationalCore()
    assert all(results[n] == expected.factorial(n) for n in results)


def test_rising_factorial():
    assert rational_core.rising_factorial(2, 3) == 24
    assert rational_core.rising_factorial(5, 0) == 1
    assert rational_core.rising_factorial(Fraction(1, 2), 2) == Fraction(3, 4)
    with pytest.raises(RationalError):
        rational_core.rising_factorial(1, -1)


def test_binomial_and_multinomial():
    assert rational_core.binomial(5, 2) == 10
    assert rational_core.binomial(3, 5) == 0
    assert rational_core.binomial(3, -1) == 0
    assert rational_core.multinomial([1, 2]) == 3
    assert rational_core.multinomial([3, 1]) == 4
    assert rational_core.multinomial([2, 2, 1]) == 30
    assert rational_core.multinomial([0, 0]) == 1
    with pytest.raises(RationalError):
        rational_core.multinomial([1, -1])


def test_compact():
    assert type(rational_core.compact(Fraction(4, 2))) is int
    assert rational_core.compact(Fraction(1, 3)) == Fraction(1, 3)


@given(x=st.fractions(min_value=-20, max_value=20, max_denominator=7), n=st.integers(0, 15))
@settings(max_examples=40)
def test_rising_factorial_step(x, n):
    assert rational_core.rising_factorial(x, n + 1) == rational_core.rising_factorial(x, n) * (x + n)


@given(t=st.lists(st.integers(0, 6), min_size=1, max_size=5))
@settings(max_examples=40)
def test_multinomial_times_factorials(t):
    product = 1
    for part in t:
        product *= rational_core.factorial(part)
    assert rational_core.multinomial(t) * product == rational_core.factorial(sum(t))


def test_hockey_stick():
    for n in range(0, 41):
        for k in range(0, n + 1):
            assert sum(rational_core.binomial(l, k) for l in range(k, n + 1)) == rational_core.binomial(n + 1, k + 1)


def test_large_arguments_stay_exact():
    assert rational_core.binomial(500, 250) * rational_core.factorial(250) ** 2 == rational_core.factorial(500)
    assert rational_core.multinomial([2, 1, 1]) == 12
    assert rational_core.binomial(7, 3) == 35
