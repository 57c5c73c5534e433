"""
Tests for composition, Trudi and inversion sums.
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from models import CoefficientSequence, DomainError, ExplicitSeed, OperatorMode, SequenceError
from services.combinatorics_engine import combinatorics_engine
from services.rational_core import rational_core
from services.operator_engine import operator_engine

FIBONACCI = CoefficientSequence.from_seed([1, 1])
TRIBONACCI = CoefficientSequence.from_seed([1, 1, 1])

seed_values = st.lists(st.integers(-5, 5), min_size=5, max_size=5)


def test_compositions_are_lexicographic():
    compositions = list(combinatorics_engine.enumerate_compositions(4))
    assert len(compositions) == 8
    assert compositions[0] == (1, 1, 1, 1)
    assert compositions[-1] == (4,)
    assert compositions == sorted(compositions)


def test_weak_compositions_with_fixed_parts():
    assert list(combinatorics_engine.enumerate_compositions(3, parts=2, lower=0)) == [(0, 3), (1, 2), (2, 1), (3, 0)]
    with pytest.raises(DomainError):
        list(combinatorics_engine.enumerate_compositions(3, lower=0))


def test_bounded_compositions():
    assert list(combinatorics_engine.enumerate_compositions(5, lower=2, upper=3)) == [(2, 3), (3, 2)]
    assert list(combinatorics_engine.enumerate_compositions(1, lower=2)) == []


def test_exponent_vectors():
    vectors = list(combinatorics_engine.enumerate_exponent_vectors(4, 1, 2))
    assert sorted(sorted(v.items()) for v in vectors) == [
        [(1, 2), (2, 1)],
        [(1, 4)],
        [(2, 2)],
    ]


def test_composition_count():
    assert combinatorics_engine.composition_count(6, 2, 2) == 3
    assert combinatorics_engine.composition_count(7, 3, 1) == 15


def test_composition_sums_by_length():
    ones = CoefficientSequence.from_seed([1, 1])
    assert combinatorics_engine.composition_sums(ones, 4, 1, 2) == {2: 1, 3: 3, 4: 1}
    assert combinatorics_engine.composition_sums(ones, 4, 1, 0) == {}


def test_trudi_worked_example():
    assert combinatorics_engine.trudi_restricted(FIBONACCI, 2, 5) == 8
    assert combinatorics_engine.trudi_restricted(FIBONACCI, 2, 6) == 13


def test_tribonacci_inversion():
    z = operator_engine.restricted_transform(TRIBONACCI, 5)
    assert [combinatorics_engine.inversion_sum(z, n) for n in range(1, 6)] == [1, 1, 1, 0, 0]
    assert [combinatorics_engine.signed_trudi_inversion(z, n) for n in range(1, 6)] == [1, 1, 1, 0, 0]
    with pytest.raises(SequenceError):
        combinatorics_engine.inversion_sum(z, 6)


def test_associated_below_m_is_zero():
    x = ExplicitSeed([2, 3], start=3).materialize(OperatorMode.associated(3), 6)
    assert combinatorics_engine.composition_sum_associated(x, 3, 2) == 0
    assert combinatorics_engine.trudi_associated(x, 3, 2) == 0
    with pytest.raises(DomainError):
        combinatorics_engine.trudi_associated(x, 3, 0)


@given(m=st.integers(1, 5), values=seed_values)
@settings(max_examples=30)
def test_restricted_sums_match_recurrence(m, values):
    x = CoefficientSequence.from_seed(values[:m])
    z = operator_engine.restricted_transform(x, 10)
    for n in range(1, 11):
        assert combinatorics_engine.composition_sum_restricted(x, m, n) == z[n]
        assert combinatorics_engine.trudi_restricted(x, m, n) == z[n]


@given(m=st.integers(1, 5), values=seed_values)
@settings(max_examples=30)
def test_associated_sums_match_recurrence(m, values):
    mode = OperatorMode.associated(m)
    x = ExplicitSeed(values, start=m).materialize(mode, 10)
    z = operator_engine.associated_transform(x, m, 10)
    for n in range(1, 11):
        assert combinatorics_engine.composition_sum_associated(x, m, n) == z[n]
        assert combinatorics_engine.trudi_associated(x, m, n) == z[n]


@given(m=st.integers(1, 5), values=seed_values)
@settings(max_examples=30)
def test_inversion_recovers_seed_on_support(m, values):
    mode = OperatorMode.associated(m)
    x = ExplicitSeed(values, start=m).materialize(mode, 10)
    z = operator_engine.associated_transform(x, m, 10)
    for n in range(1, 11):
        expected = x.get(n) if mode.in_support(n) else 0
        assert combinatorics_engine.inversion_sum(z, n) == expected
        assert combinatorics_engine.signed_trudi_inversion(z, n) == expected


def test_weak_composition_sum_counts():
    ones = CoefficientSequence.from_seed([1, 1, 1])
    # C(n + k - 1, k - 1) weak compositions of 3 into 2 parts
    assert combinatorics_engine.weak_composition_sum(ones, 3, 2) == 4
    assert combinatorics_engine.weak_composition_sum(ones, 3, 2, allow_zero=False) == 2


def test_binomial_expansion_of_one_minus_t():
    x = CoefficientSequence.from_seed([-1])
    assert [combinatorics_engine.binomial_expansion_sum(x, n) for n in range(1, 8)] == [1] * 7
    with pytest.raises(SequenceError):
        combinatorics_engine.binomial_expansion_sum(CoefficientSequence((2, 1)), 2)


@given(values=st.lists(st.integers(-5, 5), min_size=1, max_size=4))
@settings(max_examples=30)
def test_binomial_expansion_matches_negated_operator(values):
    x = CoefficientSequence.from_seed(values)
    z = operator_engine.negated_transform(x, 9)
    for n in range(1, 10):
        assert combinatorics_engine.binomial_expansion_sum(x, n) == z[n]


def test_binomial_expansion_with_rational_parts():
    x = CoefficientSequence.from_seed([Fraction(1, 2), 0, Fraction(-1, 3)])
    z = operator_engine.negated_transform(x, 6)
    assert [combinatorics_engine.binomial_expansion_sum(x, n, lower=1, upper=3) for n in range(1, 7)] == list(z.values[1:])


def test_bounded_composition_examples():
    assert len(list(combinatorics_engine.enumerate_compositions(4, lower=1, upper=3))) == 7
    assert list(combinatorics_engine.enumerate_compositions(4, lower=4, upper=4)) == [(4,)]
    fixed = list(combinatorics_engine.enumerate_compositions(9, parts=3, lower=2))
    assert len(fixed) == combinatorics_engine.composition_count(9, 3, 2)


def test_single_part_seed_powers():
    x = CoefficientSequence.from_seed([Fraction(-2, 3)])
    for n in range(1, 8):
        assert combinatorics_engine.composition_sum_restricted(x, 1, n) == Fraction(-2, 3) ** n
        assert combinatorics_engine.trudi_restricted(x, 1, n) == Fraction(-2, 3) ** n


def test_tribonacci_composition_sum():
    assert combinatorics_engine.composition_sum_restricted(TRIBONACCI, 3, 4) == 7


def test_trudi_associated_arithmetic_cross_check():
    x = CoefficientSequence((1,) + tuple(n - 2 if n >= 3 else 0 for n in range(1, 8)))
    z = operator_engine.associated_transform(x, 3, 7)
    assert combinatorics_engine.trudi_associated(x, 3, 7) == z[7]
    assert combinatorics_engine.trudi_associated(x, 3, 3) == x[3]


def test_geometric_transform_inverts_to_single_entry():
    q = Fraction(5, 2)
    z = CoefficientSequence(tuple(q ** n for n in range(8)))
    assert combinatorics_engine.inversion_sum(z, 1) == q
    assert all(combinatorics_engine.inversion_sum(z, n) == 0 for n in range(2, 8))


def test_multinomial_counts_orderings():
    for n in range(1, 13):
        counts = {}
        for composition in combinatorics_engine.enumerate_compositions(n):
            key = tuple(sorted(composition))
            counts[key] = counts.get(key, 0) + 1
        for vector in combinatorics_engine.enumerate_exponent_vectors(n):
            key = tuple(sorted(j for j, t in vector.items() for _ in range(t)))
            assert counts[key] == rational_core.multinomial(list(vector.values()))


def test_binomial_expansion_gives_bernoulli_over_factorial():
    x = CoefficientSequence(tuple(Fraction(1, rational_core.factorial(n + 1)) for n in range(0, 9)))
    assert combinatorics_engine.binomial_expansion_sum(x, 1) == Fraction(-1, 2)
    assert combinatorics_engine.binomial_expansion_sum(x, 2) == Fraction(1, 12)
    assert combinatorics_engine.binomial_expansion_sum(x, 3) == 0
    assert combinatorics_engine.binomial_expansion_sum(x, 4) == Fraction(-1, 720)
