"""
Cross-Verification Suite
Checks every computation route against the others and against the series oracle,
fanned out over a worker pool and assembled into a deterministic report
"""

import time
import random
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Tuple

from models import (
    ArithmeticParams, ArithmeticSeed, CameronError, CoefficientSequence, ExplicitSeed,
    Family, FamilySpec, GeometricParams, GeometricSeed, IdentityResult, OnesSeed,
    OperatorMode, VerifyReport
)
from services.rational_core import rational_core
from services.operator_engine import operator_engine
from services.determinant_engine import determinant_engine
from services.combinatorics_engine import combinatorics_engine
from services.hypergeometric_numbers import (
    READING_M, READINGS, hypergeometric_numbers
)

logger = logging.getLogger(__name__)

SCOPES = ('all', 'section-2', 'section-3')

SEED_ENTRY_RANGE = (-5, 5)
MAX_SEED_M = 5
CLOSED_FORM_LIMIT = 40
CLOSED_FORM_PARAMS = [v for v in range(-3, 4) if v != 0]
HYPER_MAX_N = 3
HYPER_MAX_M = 4
# section-3 enumerations always run through this index
HYPER_COMPOSITION_LIMIT = 16

@dataclass(frozen=True)
class SeedCase:
    """One random seed under one operator mode"""
    number: int
    mode: OperatorMode
    values: Tuple[int, ...]

    def sequence(self, n_limit: int) -> CoefficientSequence:
        if self.mode.is_restricted:
            return CoefficientSequence.from_seed(self.values)
        return ExplicitSeed(self.values, start=self.mode.m).materialize(self.mode, n_limit)

    def inputs(self, **extra) -> Dict[str, Any]:
        data = {'case': self.number, 'mode': self.mode.label(), 'seed': list(self.values)}
        data.update(extra)
        return data

class Tally:
    """Accumulates cell comparisons for one identity; keeps the first counterexample"""

    def __init__(self, name: str):
        self.result = IdentityResult(name=name)

    def agree(self, inputs: Dict[str, Any], values: Dict[str, Fraction]) -> bool:
        self.result.checked += 1
        if len(set(Fraction(v) for v in values.values())) <= 1:
            return True
        self.fail(inputs, values)
        return False

    def expect(self, inputs: Dict[str, Any], values: Dict[str, Fraction], expected: Fraction) -> bool:
        return self.agree(inputs, dict(values, expected=expected))

    def fail(self, inputs: Dict[str, Any], values: Optional[Dict[str, Any]] = None, error: str = None):
        self.result.passed = False
        if self.result.counterexample is not None:
            return
        record: Dict[str, Any] = {'inputs': inputs}
        if values:
            record['values'] = {k: rational_core.format(v) for k, v in sorted(values.items())}
        if error:
            record['error'] = error
        self.result.counterexample = record

    def skip(self, count: int = 1):
        self.result.skipped += count

class VerificationSuite:
    """Builds the identity checks for a scope and runs them"""

    def run(self, scope: str = 'all', seed_count: int = 200, n_limit: int = 22,
            rng_seed: int = 0, workers: int = 1, composition_limit: int = 14) -> VerifyReport:
        if scope not in SCOPES:
            raise CameronError(f"Unknown verify scope {scope!r}; expected one of {', '.join(SCOPES)}")
        logger.info(f"verify scope={scope} seeds={seed_count} n_limit={n_limit} rng_seed={rng_seed} workers={workers}")

        self.n_limit = n_limit
        self.composition_limit = composition_limit
        self.hyper_composition_limit = max(composition_limit, HYPER_COMPOSITION_LIMIT)
        checks: List[Tuple[str, Callable[[Tally], None]]] = []
        if scope in ('all', 'section-2'):
            cases = self.draw_cases(seed_count, n_limit, rng_seed)
            checks += [
                ('worked-examples', self.check_worked_examples),
                ('restricted-five-way', lambda t: self.check_five_way(t, [c for c in cases if c.mode.is_restricted])),
                ('associated-five-way', lambda t: self.check_five_way(t, [c for c in cases if not c.mode.is_restricted])),
                ('associated-alternate-recurrence', lambda t: self.check_alternate_recurrence(t, cases)),
                ('inversion-support', lambda t: self.check_inversion(t, cases)),
                ('binomial-expansion', lambda t: self.check_binomial_expansion(t, cases)),
                ('geometric-closed-form', self.check_geometric),
                ('geometric-windows', self.check_windows),
                ('ones-closed-form', self.check_ones),
                ('arithmetic-recurrences', self.check_arithmetic),
            ]
        if scope in ('all', 'section-3'):
            checks += [
                ('hypergeometric-five-way', self.check_hyper_five_way),
                ('classical-limits', self.check_classical_limits),
                ('euler-odd-zeros', self.check_euler_odd_zeros),
                ('hypergeometric-inversion', self.check_hyper_inversion),
                ('unrestricted-sums', self.check_limit_sums),
            ]

        with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
            identities = list(pool.map(lambda check: self._run_check(*check), checks))

        report = VerifyReport(scope=scope, rng_seed=rng_seed, n_limit=n_limit, identities=identities)
        if scope in ('all', 'section-3'):
            report.findings = self.findings()
        passed = sum(1 for i in identities if i.passed)
        logger.info(f"verify finished: {passed}/{len(identities)} identities passed")
        return report

    def _run_check(self, name: str, check: Callable[[Tally], None]) -> IdentityResult:
        tally = Tally(name)
        started = time.perf_counter()
        try:
            check(tally)
        except CameronError as e:
            tally.fail({'identity': name}, error=str(e))
        tally.result.seconds = time.perf_counter() - started
        result = tally.result
        if not result.passed:
            logger.error(f"{name} failed: {result.counterexample}")
        else:
            logger.info(f"{name} passed ({result.checked} cells)")
        if result.skipped:
            logger.warning(f"{name}: {result.skipped} enumeration cells above n={self.composition_limit} skipped")
        return result

    # -------------------------------------------------------------------------
    # Corpus
    # -------------------------------------------------------------------------

    def draw_cases(self, seed_count: int, n_limit: int, rng_seed: int) -> List[SeedCase]:
        """Each drawn seed is used once restricted and once associated with the same m"""
        rng = random.Random(rng_seed)
        cases = []
        for number in range(seed_count):
            m = rng.randint(1, MAX_SEED_M)
            cases.append(SeedCase(number, OperatorMode.restricted(m), self._draw(rng, m)))
            length = max(n_limit - m + 1, 1)
            cases.append(SeedCase(number, OperatorMode.associated(m), self._draw(rng, length)))
        return cases

    def _draw(self, rng: random.Random, length: int) -> Tuple[int, ...]:
        low, high = SEED_ENTRY_RANGE
        while True:
            values = tuple(rng.randint(low, high) for _ in range(length))
            if any(values):
                return values

    def _enumerable(self, tally: Tally, n: int, limit: Optional[int] = None) -> bool:
        if n <= (self.composition_limit if limit is None else limit):
            return True
        tally.skip()
        return False

    # -------------------------------------------------------------------------
    # Operator identities
    # -------------------------------------------------------------------------

    def check_worked_examples(self, tally: Tally):
        fibonacci = CoefficientSequence.from_seed([1, 1])
        tribonacci = CoefficientSequence.from_seed([1, 1, 1])

        for n, expected in ((6, 8), (7, 13)):
            tally.expect({'example': 'fibonacci-trudi', 'n': n},
                         {'trudi': combinatorics_engine.trudi_restricted(fibonacci, 2, n - 1)}, expected)

        z = operator_engine.restricted_transform(fibonacci, 5)
        for n, expected in zip(range(1, 6), (1, -1, 0, 0, 0)):
            tally.expect({'example': 'fibonacci-inversion-determinant', 'n': n},
                         {'determinant': determinant_engine.x_from_z_det(z, n)}, expected)

        z = operator_engine.restricted_transform(tribonacci, 5)
        for n, expected in zip(range(1, 6), (1, 1, 1, 0, 0)):
            tally.expect({'example': 'tribonacci-inversion-sum', 'n': n},
                         {'composition': combinatorics_engine.inversion_sum(z, n)}, expected)

        progression = ArithmeticParams(a=1, b=2, m=1)
        z = operator_engine.associated_transform(ArithmeticSeed(progression).materialize(OperatorMode.associated(1), 4), 1, 4)
        for n, expected in zip(range(1, 5), (2, 7, 24, 82)):
            tally.expect({'example': 'arithmetic-a1-b2', 'n': n}, {'recurrence': z[n]}, expected)

        geometric = GeometricParams(a=2, b=3, m=2)
        tally.expect({'example': 'geometric-a2-b3-m2', 'n': 4},
                     {'closed_form': operator_engine.geometric_closed_form(geometric, 4)}, 21)

    def check_five_way(self, tally: Tally, cases: List[SeedCase]):
        n_limit = self.n_limit
        for case in cases:
            mode, m = case.mode, case.mode.m
            x = case.sequence(n_limit)
            recurrence = operator_engine.transform(x, mode, n_limit)
            oracle = operator_engine.series_reciprocal(
                operator_engine.cameron_denominator(x, mode, n_limit), n_limit
            )
            for n in range(1, n_limit + 1):
                values = {'recurrence': recurrence[n], 'oracle': oracle[n]}
                if mode.is_restricted:
                    values['determinant'] = determinant_engine.restricted_z_det(x, m, n)
                    values['trudi'] = combinatorics_engine.trudi_restricted(x, m, n)
                    if self._enumerable(tally, n):
                        values['composition'] = combinatorics_engine.composition_sum_restricted(x, m, n)
                else:
                    if n >= m:
                        values['determinant'] = determinant_engine.associated_z_det(x, m, n)
                    values['trudi'] = combinatorics_engine.trudi_associated(x, m, n)
                    if self._enumerable(tally, n):
                        values['composition'] = combinatorics_engine.composition_sum_associated(x, m, n)
                if not tally.agree(case.inputs(n=n), values):
                    break

    def check_alternate_recurrence(self, tally: Tally, cases: List[SeedCase]):
        for case in cases:
            if case.mode.is_restricted:
                continue
            x = case.sequence(self.n_limit)
            first = operator_engine.associated_transform(x, case.mode.m, self.n_limit)
            second = operator_engine.associated_transform_alt(x, case.mode.m, self.n_limit)
            for n in range(1, self.n_limit + 1):
                if not tally.agree(case.inputs(n=n), {'recurrence': first[n], 'alternate': second[n]}):
                    break

    def check_inversion(self, tally: Tally, cases: List[SeedCase]):
        """Recovered x_n is the seed entry on support and 0 off it"""
        n_limit = self.n_limit
        for case in cases:
            x = case.sequence(n_limit)
            z = operator_engine.transform(x, case.mode, n_limit)
            reciprocal = operator_engine.series_reciprocal(z, n_limit)
            for n in range(1, n_limit + 1):
                expected = x.get(n) if case.mode.in_support(n) else Fraction(0)
                sign = 1 if n % 2 else -1
                values = {
                    'determinant': sign * determinant_engine.x_from_z_det(z, n),
                    'trudi': combinatorics_engine.signed_trudi_inversion(z, n),
                    'oracle': -reciprocal[n],
                }
                if self._enumerable(tally, n):
                    values['composition'] = combinatorics_engine.inversion_sum(z, n)
                if not tally.expect(case.inputs(n=n), values, expected):
                    break

    def check_binomial_expansion(self, tally: Tally, cases: List[SeedCase]):
        for case in cases:
            if not case.mode.is_restricted:
                continue
            x = CoefficientSequence.from_seed(case.values)
            oracle = operator_engine.negated_transform(x, self.composition_limit)
            for n in range(1, min(self.n_limit, self.composition_limit) + 1):
                values = {
                    'binomial': combinatorics_engine.binomial_expansion_sum(x, n),
                    'oracle': oracle[n],
                }
                if not tally.agree(case.inputs(n=n, form='negated'), values):
                    break

    def check_geometric(self, tally: Tally):
        for a in CLOSED_FORM_PARAMS:
            for b in CLOSED_FORM_PARAMS:
                for m in range(1, MAX_SEED_M + 1):
                    params = GeometricParams(a=a, b=b, m=m)
                    mode = OperatorMode.associated(m)
                    x = GeometricSeed(params).materialize(mode, CLOSED_FORM_LIMIT)
                    z = operator_engine.associated_transform(x, m, CLOSED_FORM_LIMIT)
                    recurrence = operator_engine.geometric_recurrence(params, CLOSED_FORM_LIMIT)
                    for n in range(m, CLOSED_FORM_LIMIT + 1):
                        values = {
                            'closed_form': operator_engine.geometric_closed_form(params, n),
                            'transform': z[n],
                            'recurrence': recurrence[n],
                        }
                        if not tally.agree({'a': a, 'b': b, 'm': m, 'n': n}, values):
                            break

    def check_windows(self, tally: Tally):
        for a in CLOSED_FORM_PARAMS:
            for b in CLOSED_FORM_PARAMS:
                for m in range(1, MAX_SEED_M + 1):
                    params = GeometricParams(a=a, b=b, m=m)
                    for n in range(m, 4 * m):
                        tally.agree({'a': a, 'b': b, 'm': m, 'n': n}, {
                            'window': operator_engine.geometric_window_value(params, n),
                            'closed_form': operator_engine.geometric_closed_form(params, n),
                        })

    def check_ones(self, tally: Tally):
        fibonacci = [0, 1]
        while len(fibonacci) <= CLOSED_FORM_LIMIT:
            fibonacci.append(fibonacci[-1] + fibonacci[-2])
        for m in range(1, MAX_SEED_M + 1):
            mode = OperatorMode.associated(m)
            z = operator_engine.associated_transform(OnesSeed().materialize(mode, CLOSED_FORM_LIMIT), m, CLOSED_FORM_LIMIT)
            for n in range(m, CLOSED_FORM_LIMIT + 1):
                values = {'closed_form': operator_engine.ones_closed_form(m, n), 'transform': z[n]}
                if m == 1:
                    values['power'] = Fraction(2) ** (n - 1)
                elif m == 2:
                    values['fibonacci'] = fibonacci[n - 1]
                tally.agree({'m': m, 'n': n}, values)

    def check_arithmetic(self, tally: Tally):
        for a in CLOSED_FORM_PARAMS:
            for b in CLOSED_FORM_PARAMS:
                for m in range(1, MAX_SEED_M + 1):
                    params = ArithmeticParams(a=a, b=b, m=m)
                    mode = OperatorMode.associated(m)
                    x = ArithmeticSeed(params).materialize(mode, CLOSED_FORM_LIMIT)
                    z = operator_engine.associated_transform(x, m, CLOSED_FORM_LIMIT)
                    recurrence = operator_engine.arithmetic_sequence(params, CLOSED_FORM_LIMIT)
                    for n in range(1, CLOSED_FORM_LIMIT + 1):
                        if not tally.agree({'a': a, 'b': b, 'm': m, 'n': n},
                                           {'transform': z[n], 'recurrence': recurrence[n]}):
                            break

    # -------------------------------------------------------------------------
    # Hypergeometric identities
    # -------------------------------------------------------------------------

    def hyper_configs(self) -> List[Tuple[FamilySpec, OperatorMode]]:
        configs = []
        for family in Family:
            for N in range(family.min_order, HYPER_MAX_N + 1):
                spec = FamilySpec(family, N)
                for m in range(1, HYPER_MAX_M + 1):
                    configs.append((spec, OperatorMode.restricted(m)))
                    configs.append((spec, OperatorMode.associated(m)))
        return configs

    def _hyper_inputs(self, spec: FamilySpec, mode: OperatorMode, **extra) -> Dict[str, Any]:
        data = {'family': spec.family.value, 'N': spec.N, 'mode': mode.label()}
        data.update(extra)
        return data

    def check_hyper_five_way(self, tally: Tally):
        hyper = hypergeometric_numbers
        for spec, mode in self.hyper_configs():
            definition = hyper.hyper_from_definition(spec, mode, self.n_limit)
            for p in range(self.n_limit + 1):
                order = hyper.engine_order(spec, p)
                values = {
                    'oracle': definition[p].value,
                    'recurrence': hyper.hyper_recurrence(spec, mode, p).value,
                    'determinant': hyper.hyper_det(spec, mode, p).value,
                    'trudi': hyper.hyper_trudi(spec, mode, p).value,
                }
                if order is None or self._enumerable(tally, order, self.hyper_composition_limit):
                    values['composition'] = hyper.hyper_sum(spec, mode, p).value
                    values['binom'] = hyper.hyper_binom_sum(spec, mode, p).value
                if not tally.agree(self._hyper_inputs(spec, mode, index=p), values):
                    break

    def check_classical_limits(self, tally: Tally):
        hyper = hypergeometric_numbers
        n_limit = max(self.n_limit, 20)
        bernoulli = hyper.classical_series(FamilySpec(Family.BERNOULLI, 1), n_limit)
        tally.expect({'family': 'bernoulli', 'N': 1, 'index': 1}, {'classical': bernoulli[1]}, Fraction(-1, 2))
        for p in range(3, n_limit + 1, 2):
            tally.expect({'family': 'bernoulli', 'N': 1, 'index': p}, {'classical': bernoulli[p]}, 0)
        euler = hyper.classical_series(FamilySpec(Family.EULER, 0), 2)
        tally.expect({'family': 'euler', 'N': 0, 'index': 2}, {'classical': euler[2]}, -1)

        for family in Family:
            for N in range(family.min_order, HYPER_MAX_N + 1):
                spec = FamilySpec(family, N)
                classical = hyper.classical_series(spec, n_limit)
                associated = hyper.hyper_from_definition(spec, OperatorMode.associated(1), n_limit)
                # a restricted window as wide as the range sees the whole series
                restricted = hyper.hyper_from_definition(spec, OperatorMode.restricted(n_limit + 1), n_limit, READING_M)
                for p in range(n_limit + 1):
                    tally.agree({'family': family.value, 'N': N, 'index': p}, {
                        'classical': classical[p],
                        'associated_m1': associated[p].value,
                        'restricted_wide': restricted[p].value,
                    })

    def check_euler_odd_zeros(self, tally: Tally):
        hyper = hypergeometric_numbers
        for spec, mode in self.hyper_configs():
            if not spec.family.is_euler:
                continue
            definition = hyper.hyper_from_definition(spec, mode, self.n_limit)
            for p in range(1, self.n_limit + 1, 2):
                tally.expect(self._hyper_inputs(spec, mode, index=p), {'oracle': definition[p].value}, 0)

    def check_hyper_inversion(self, tally: Tally):
        hyper = hypergeometric_numbers
        for spec, mode in self.hyper_configs():
            top = self.n_limit // 2 if spec.family.is_euler else self.n_limit
            for n in range(1, top + 1):
                inputs = self._hyper_inputs(spec, mode, order=n)
                expected = hyper.expected_inversion(spec, mode, n)
                try:
                    recovered = hyper.hyper_inversion_check(spec, mode, n)
                except CameronError as e:
                    tally.result.checked += 1
                    tally.fail(inputs, getattr(e, 'values', None), str(e))
                    break
                if not tally.expect(inputs, {'recovered': recovered}, expected):
                    break

    def check_limit_sums(self, tally: Tally):
        hyper = hypergeometric_numbers
        for family in Family:
            for N in range(family.min_order, HYPER_MAX_N + 1):
                spec = FamilySpec(family, N)
                classical = hyper.classical_series(spec, self.n_limit)
                for p in range(1, self.n_limit + 1):
                    order = hyper.engine_order(spec, p)
                    if order is not None and not self._enumerable(tally, order, self.hyper_composition_limit):
                        continue
                    tally.agree({'family': family.value, 'N': N, 'index': p}, {
                        'classical': classical[p],
                        'composition': hyper.limit_sum(spec, p),
                        'binom': hyper.limit_binom_sum(spec, p),
                    })

    # -------------------------------------------------------------------------
    # Findings on printed formulas
    # -------------------------------------------------------------------------

    def findings(self) -> Dict[str, str]:
        return {
            'euler-second-restricted-reading': self._reading_finding(),
            'associated-composition-sign': self._printed_finding(hypergeometric_numbers.printed_associated_sum),
            'associated-binomial-sum': self._printed_finding(hypergeometric_numbers.printed_associated_binom_sum),
            'euler-binomial-sum-at-zero-order': self._zero_order_finding(),
        }

    def _first_mismatch(self, cells, left: Callable, right: Callable) -> Optional[str]:
        for spec, mode, p in cells:
            if left(spec, mode, p) != right(spec, mode, p):
                return f"{spec.label()} {mode.label()} index {p}"
        return None

    def _reading_finding(self) -> str:
        """Which second-kind reading the bandwidth-m determinant reproduces"""
        hyper = hypergeometric_numbers
        top = min(self.n_limit, 12)
        cells = [
            (FamilySpec(Family.EULER_SECOND, N), OperatorMode.restricted(m), p)
            for N in range(0, 3) for m in range(1, HYPER_MAX_M + 1) for p in range(2, top + 1, 2)
        ]
        parts = []
        for reading in READINGS:
            mismatch = self._first_mismatch(
                cells,
                lambda s, md, p: hyper.hyper_det(s, md, p, READING_M).value,
                lambda s, md, p, r=reading: hyper.hyper_from_definition(s, md, p, r)[p].value,
            )
            verdict = "holds" if mismatch is None else f"fails first at {mismatch}"
            parts.append(f"{reading} reading: {verdict}")
        return "bandwidth-m determinant against the definition; " + "; ".join(parts)

    def _printed_finding(self, printed: Callable) -> str:
        hyper = hypergeometric_numbers
        top = min(self.n_limit, 8)
        cells = [
            (FamilySpec(family, N), OperatorMode.associated(m), p)
            for family in Family for N in range(family.min_order, 3)
            for m in range(1, HYPER_MAX_M) for p in range(1, top + 1)
        ]
        mismatch = self._first_mismatch(
            cells,
            lambda s, md, p: printed(s, md, p).value,
            lambda s, md, p: hyper.hyper_from_definition(s, md, p)[p].value,
        )
        if mismatch is None:
            return "printed form agrees with the definition"
        return f"printed form disagrees with the definition first at {mismatch}; the signed form is used"

    def _zero_order_finding(self) -> str:
        hyper = hypergeometric_numbers
        top = min(self.n_limit, 12)
        cells = [
            (FamilySpec(family, 0), OperatorMode.restricted(m), p)
            for family in (Family.EULER, Family.EULER_SECOND)
            for m in range(1, HYPER_MAX_M + 1) for p in range(2, top + 1, 2)
        ]
        mismatch = self._first_mismatch(
            cells,
            lambda s, md, p: hyper.hyper_binom_sum(s, md, p).value,
            lambda s, md, p: hyper.hyper_from_definition(s, md, p)[p].value,
        )
        if mismatch is None:
            return f"restricted binomial sum holds at N = 0 for both Euler kinds up to index {top}"
        return f"restricted binomial sum fails at N = 0, first at {mismatch}"

# Global verification suite instance
verification_suite = VerificationSuite()
