"""
Tests for the cross-verification suite.
"""

import json

import pytest

from models import CameronError
from services.verification import SEED_ENTRY_RANGE, Tally, VerificationSuite


def small_run(**overrides):
    options = dict(scope='section-2', seed_count=4, n_limit=8, rng_seed=42, workers=2, composition_limit=8)
    options.update(overrides)
    return VerificationSuite().run(**options)


def test_section_two_passes():
    report = small_run()
    assert report.passed, [i.to_dict() for i in report.identities if not i.passed]
    names = [i.name for i in report.identities]
    assert names[0] == 'worked-examples'
    assert 'inversion-support' in names
    assert report.findings == {}


def test_section_three_passes_with_findings():
    report = small_run(scope='section-3', n_limit=8)
    assert report.passed, [i.to_dict() for i in report.identities if not i.passed]
    assert set(report.findings) == {
        'euler-second-restricted-reading',
        'associated-composition-sign',
        'associated-binomial-sum',
        'euler-binomial-sum-at-zero-order',
    }
    assert 'm reading: holds' in report.findings['euler-second-restricted-reading']
    assert report.findings['associated-composition-sign'].startswith('printed form disagrees')


def test_reports_are_deterministic():
    first = json.dumps(small_run(workers=1).to_dict())
    second = json.dumps(small_run(workers=3).to_dict())
    assert first == second


def test_random_corpus_shape():
    cases = VerificationSuite().draw_cases(10, 12, rng_seed=7)
    assert len(cases) == 20
    low, high = SEED_ENTRY_RANGE
    for case in cases:
        assert any(case.values)
        assert all(low <= v <= high for v in case.values)
        if case.mode.is_restricted:
            assert len(case.values) == case.mode.m
    assert cases == VerificationSuite().draw_cases(10, 12, rng_seed=7)


def test_enumeration_cells_above_limit_are_skipped():
    report = small_run(composition_limit=4)
    five_way = next(i for i in report.identities if i.name == 'restricted-five-way')
    assert five_way.passed
    assert five_way.skipped > 0


def test_tally_keeps_first_counterexample():
    tally = Tally('demo')
    assert tally.agree({'n': 1}, {'a': 1, 'b': 1})
    assert not tally.agree({'n': 2}, {'a': 1, 'b': 2})
    assert not tally.expect({'n': 3}, {'a': 5}, 6)
    assert tally.result.checked == 3
    assert tally.result.counterexample == {'inputs': {'n': 2}, 'values': {'a': '1', 'b': '2'}}


def test_unknown_scope():
    with pytest.raises(CameronError):
        VerificationSuite().run(scope='section-9')


def test_section_three_enumerates_through_sixteen():
    report = small_run(scope='section-3', n_limit=16, composition_limit=8)
    assert report.passed, [i.to_dict() for i in report.identities if not i.passed]
    for name in ('hypergeometric-five-way', 'unrestricted-sums'):
        identity = next(i for i in report.identities if i.name == name)
        assert identity.skipped == 0
