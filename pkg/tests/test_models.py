"""
Tests for the domain models.
"""

from fractions import Fraction

import pytest

from models import (
    ArithmeticParams, CoefficientSequence, DomainError, ExplicitSeed, Family, FamilySpec,
    GeometricParams, GeometricSeed, HessenbergSpec, IdentityResult, OnesSeed, OperatorMode,
    SequenceError, VerifyReport
)


def test_sequence_reads():
    x = CoefficientSequence.from_seed([2, Fraction(1, 3)])
    assert x.n_max == 2
    assert x[0] == 1
    assert x[2] == Fraction(1, 3)
    assert x.get(7) == 0
    with pytest.raises(SequenceError):
        x[3]
    with pytest.raises(SequenceError):
        x.get(-1)


def test_sequence_needs_constant_term():
    with pytest.raises(SequenceError):
        CoefficientSequence(())
    with pytest.raises(SequenceError):
        CoefficientSequence((2, 1)).require_unit_constant()


def test_truncate_zero_extends():
    x = CoefficientSequence.from_seed([1, 1])
    assert x.truncate(4).values == (1, 1, 1, 0, 0)
    assert x.truncate(1).values == (1, 1)


def test_operator_mode():
    restricted = OperatorMode.restricted(2)
    associated = OperatorMode.associated(3)
    assert restricted.in_support(2) and not restricted.in_support(3)
    assert associated.in_support(5) and not associated.in_support(2)
    assert associated.label() == "associated(3)"
    with pytest.raises(DomainError):
        OperatorMode.restricted(0)


def test_parameter_validation():
    with pytest.raises(DomainError):
        GeometricParams(a=0, b=1, m=1)
    with pytest.raises(DomainError):
        ArithmeticParams(a=1, b=0, m=1)
    with pytest.raises(DomainError):
        FamilySpec(Family.BERNOULLI, 0)
    assert FamilySpec(Family.EULER, 0).label() == "euler(N=0)"


def test_seed_rules_materialize():
    mode = OperatorMode.associated(2)
    geometric = GeometricSeed(GeometricParams(a=2, b=3, m=2)).materialize(mode, 4)
    assert geometric.values == (1, 0, 3, 6, 12)
    assert OnesSeed().materialize(OperatorMode.restricted(3), 10).values == (1, 1, 1, 1)
    explicit = ExplicitSeed([5, 7], start=2).materialize(mode, 4)
    assert explicit.values == (1, 0, 5, 7, 0)


def test_hessenberg_dense_layout():
    spec = HessenbergSpec(order=3, entry=lambda i, j: 10 * i + j, bandwidth=2)
    assert spec.dense() == [
        [11, 1, 0],
        [21, 22, 1],
        [0, 32, 33],
    ]
    with pytest.raises(DomainError):
        HessenbergSpec(order=0, entry=lambda i, j: 0)


def test_report_serialization():
    report = VerifyReport(scope="all", rng_seed=1, n_limit=5, identities=[
        IdentityResult(name="a", checked=3, seconds=0.5),
        IdentityResult(name="b", passed=False, checked=1, counterexample={'inputs': {'n': 1}}),
    ])
    data = report.to_dict()
    assert data['passed'] is False
    assert 'seconds' not in data['identities'][0]
    assert data['identities'][1]['counterexample'] == {'inputs': {'n': 1}}
    assert report.to_dict(include_timings=True)['identities'][0]['seconds'] == 0.5
