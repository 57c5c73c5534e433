"""
Modified Hypergeometric Numbers
Restricted and associated hypergeometric Bernoulli, Cauchy, Euler and Euler
second-kind numbers, routed through the operator, determinant and combinatorics engines
"""

import logging
from fractions import Fraction
from typing import Callable, List, Optional

from models import (
    CoefficientSequence, DomainError, EngineDisagreement, Family, FamilySpec,
    HyperNumber, Method, OperatorMode
)
from services.rational_core import rational_core
from services.operator_engine import operator_engine
from services.determinant_engine import determinant_engine
from services.combinatorics_engine import combinatorics_engine

logger = logging.getLogger(__name__)

READING_PRINTED = 'printed'
READING_M = 'm'
READINGS = (READING_PRINTED, READING_M)

class HypergeometricNumbers:
    """Family-specific alpha/xi tables feeding the shared engines.

    Engine order k is the alpha index. For Bernoulli and Cauchy numbers the
    series index equals k; for both Euler kinds order k is the series index 2k
    and odd series indices are zero.
    """

    def __init__(self, euler_second_reading: str = READING_PRINTED):
        self.euler_second_reading = READING_PRINTED
        self.configure(euler_second_reading)

    def configure(self, euler_second_reading: str):
        if euler_second_reading not in READINGS:
            raise DomainError(f"Unknown Euler second-kind reading {euler_second_reading!r}")
        self.euler_second_reading = euler_second_reading

    # -------------------------------------------------------------------------
    # Tables
    # -------------------------------------------------------------------------

    def alpha(self, spec: FamilySpec, j: int) -> Fraction:
        if j < 1:
            raise DomainError(f"alpha_j is defined for j >= 1, got {j}")
        f = rational_core.factorial
        N = spec.N
        if spec.family is Family.BERNOULLI:
            return Fraction(f(N), f(N + j))
        if spec.family is Family.CAUCHY:
            return Fraction(N, N + j)
        if spec.family is Family.EULER:
            return Fraction(f(2 * N), f(2 * N + 2 * j))
        return Fraction(f(2 * N + 1), f(2 * N + 2 * j + 1))

    def xi(self, spec: FamilySpec, n: int) -> Fraction:
        if n < 0:
            raise DomainError(f"xi_n is defined for n >= 0, got {n}")
        f = rational_core.factorial
        sign = -1 if n % 2 else 1
        if spec.family is Family.BERNOULLI:
            return Fraction(sign * f(n))
        if spec.family is Family.CAUCHY:
            return Fraction(f(n))
        return Fraction(sign * f(2 * n))

    def engine_order(self, spec: FamilySpec, index: int) -> Optional[int]:
        """Alpha index behind a series index; None where the number is identically 0"""
        if index < 0:
            raise DomainError(f"Negative index {index}")
        if spec.family.is_euler:
            return None if index % 2 else index // 2
        return index

    def series_index(self, spec: FamilySpec, order: int) -> int:
        return 2 * order if spec.family.is_euler else order

    def support_width(self, spec: FamilySpec, mode: OperatorMode, reading: Optional[str] = None) -> int:
        """Highest alpha index of a restricted denominator (m, or m-1 for the printed second-kind reading)"""
        reading = reading or self.euler_second_reading
        if spec.family is Family.EULER_SECOND and reading == READING_PRINTED:
            return mode.m - 1
        return mode.m

    def in_support(self, spec: FamilySpec, mode: OperatorMode, j: int, reading: Optional[str] = None) -> bool:
        if mode.is_restricted:
            return 1 <= j <= self.support_width(spec, mode, reading)
        return j >= mode.m

    def alpha_sequence(self, spec: FamilySpec, mode: OperatorMode, order: int,
                       reading: Optional[str] = None, sign: Callable[[int], int] = lambda j: 1) -> CoefficientSequence:
        """(1, s_1 alpha_1, ..., s_k alpha_k) with zeros outside the mode's support"""
        values = [Fraction(1)]
        for j in range(1, order + 1):
            if self.in_support(spec, mode, j, reading):
                values.append(sign(j) * self.alpha(spec, j))
            else:
                values.append(Fraction(0))
        return CoefficientSequence(tuple(values))

    def _bounds(self, spec: FamilySpec, mode: OperatorMode, order: int, reading: Optional[str]):
        if mode.is_restricted:
            return 1, self.support_width(spec, mode, reading)
        return mode.m, order

    # -------------------------------------------------------------------------
    # Definitions
    # -------------------------------------------------------------------------

    def definition_series(self, spec: FamilySpec, mode: OperatorMode, n_max: int,
                          reading: Optional[str] = None) -> CoefficientSequence:
        """Denominator of the defining generating function, coefficients of x^0..x^n_max"""
        reading = reading or self.euler_second_reading
        N = spec.N
        rising = rational_core.rising_factorial

        def term(n: int) -> Fraction:
            # coefficient of the n-th summand of the printed denominator
            if spec.family is Family.BERNOULLI:
                return 1 / rising(N + 1, n)
            if spec.family is Family.CAUCHY:
                return Fraction(N * (-1) ** n, N + n)
            if spec.family is Family.EULER:
                return 1 / rising(2 * N + 1, 2 * n)
            return 1 / rising(2 * N + 2, 2 * n)

        step = 2 if spec.family.is_euler else 1
        if mode.is_restricted:
            upper = mode.m
            if spec.family is Family.EULER_SECOND and reading == READING_PRINTED:
                upper = mode.m - 1
            summands = range(0, upper + 1)
        else:
            summands = range(mode.m, n_max // step + 1)

        d = [Fraction(0)] * (n_max + 1)
        d[0] = Fraction(1)
        for n in summands:
            if n * step <= n_max:
                d[n * step] = term(n)
        return CoefficientSequence(tuple(d))

    def hyper_from_definition(self, spec: FamilySpec, mode: OperatorMode, n_max: int,
                              reading: Optional[str] = None) -> List[HyperNumber]:
        """Numbers at series indices 0..n_max from the series reciprocal of the definition"""
        if n_max < 0:
            raise DomainError(f"n_max must be nonnegative, got {n_max}")
        d = self.definition_series(spec, mode, n_max, reading)
        r = operator_engine.series_reciprocal(d, n_max)
        return [
            HyperNumber(r[p] * rational_core.factorial(p), spec, mode, p)
            for p in range(n_max + 1)
        ]

    # -------------------------------------------------------------------------
    # Engine routes
    # -------------------------------------------------------------------------

    def _number(self, spec: FamilySpec, mode: OperatorMode, index: int,
                compute: Callable[[int], Fraction]) -> HyperNumber:
        order = self.engine_order(spec, index)
        if order is None:
            value = Fraction(0)
        elif order == 0:
            value = Fraction(1)
        else:
            value = compute(order)
        return HyperNumber(Fraction(value), spec, mode, index)

    def hyper_recurrence(self, spec: FamilySpec, mode: OperatorMode, n: int,
                         reading: Optional[str] = None) -> HyperNumber:
        """xi_k (-1)^k z_k with z the Cameron transform of x_j = -alpha_j"""
        def compute(k: int) -> Fraction:
            seed = self.alpha_sequence(spec, mode, k, reading, sign=lambda j: -1)
            if mode.is_restricted:
                width = self.support_width(spec, mode, reading)
                if width == 0:
                    return Fraction(0)
                z = operator_engine.restricted_transform(seed.truncate(width), k)
            else:
                z = operator_engine.associated_transform(seed, mode.m, k)
            return self.xi(spec, k) * (-1) ** k * z[k]
        return self._number(spec, mode, n, compute)

    def hyper_det(self, spec: FamilySpec, mode: OperatorMode, n: int,
                  reading: Optional[str] = None) -> HyperNumber:
        """xi_k times the determinant of the banded (restricted) or shifted (associated) alpha matrix"""
        def compute(k: int) -> Fraction:
            # (-1)^(j-1) alpha_j makes the determinant engine lay out alpha_{i-j+1} unsigned
            seed = self.alpha_sequence(spec, mode, k, reading, sign=lambda j: (-1) ** (j - 1))
            if mode.is_restricted:
                width = self.support_width(spec, mode, reading)
                if width == 0:
                    return Fraction(0)
                det = determinant_engine.restricted_z_det(seed, width, k)
            else:
                if k < mode.m:
                    return Fraction(0)
                det = determinant_engine.associated_z_det(seed, mode.m, k)
            return self.xi(spec, k) * det
        return self._number(spec, mode, n, compute)

    def hyper_sum(self, spec: FamilySpec, mode: OperatorMode, n: int,
                  reading: Optional[str] = None) -> HyperNumber:
        """xi_k sum_j (-1)^(k-j) sum over j-part compositions of alpha products"""
        def compute(k: int) -> Fraction:
            lower, upper = self._bounds(spec, mode, k, reading)
            alphas = self.alpha_sequence(spec, mode, k, reading)
            sums = combinatorics_engine.composition_sums(alphas, k, lower, upper)
            total = sum((v if (k - j) % 2 == 0 else -v) for j, v in sums.items())
            return self.xi(spec, k) * total
        return self._number(spec, mode, n, compute)

    def hyper_binom_sum(self, spec: FamilySpec, mode: OperatorMode, n: int,
                        reading: Optional[str] = None) -> HyperNumber:
        """xi_k sum_j (-1)^(k-j) C(k+1, j+1) sum over zero-allowing j-part compositions, alpha_0 = 1"""
        def compute(k: int) -> Fraction:
            lower, upper = self._bounds(spec, mode, k, reading)
            alphas = self.alpha_sequence(spec, mode, k, reading)
            # the expansion carries (-1)^j; the extra (-1)^k turns it into (-1)^(k-j)
            expansion = combinatorics_engine.binomial_expansion_sum(alphas, k, lower, upper)
            return self.xi(spec, k) * (-1) ** k * expansion
        return self._number(spec, mode, n, compute)

    def hyper_trudi(self, spec: FamilySpec, mode: OperatorMode, n: int,
                    reading: Optional[str] = None) -> HyperNumber:
        """(-1)^k xi_k sum_t multinomial(t) (-1)^(t_1+...) prod alpha_j^t_j"""
        def compute(k: int) -> Fraction:
            lower, upper = self._bounds(spec, mode, k, reading)
            alphas = self.alpha_sequence(spec, mode, k, reading)
            total = sum(
                (-term if parts % 2 else term)
                for parts, term in combinatorics_engine.trudi_terms(alphas, k, lower, upper)
            )
            return (-1) ** k * self.xi(spec, k) * total
        return self._number(spec, mode, n, compute)

    def hyper_by_method(self, spec: FamilySpec, mode: OperatorMode, method: Method, n: int,
                        reading: Optional[str] = None) -> HyperNumber:
        if method is Method.ORACLE:
            return self.hyper_from_definition(spec, mode, n, reading)[n]
        routes = {
            Method.RECURRENCE: self.hyper_recurrence,
            Method.DETERMINANT: self.hyper_det,
            Method.COMPOSITION: self.hyper_sum,
            Method.BINOM: self.hyper_binom_sum,
            Method.TRUDI: self.hyper_trudi,
        }
        if method not in routes:
            raise DomainError(f"No single hypergeometric route for method {method.value}")
        return routes[method](spec, mode, n, reading)

    # -------------------------------------------------------------------------
    # Printed variants kept for the verification findings
    # -------------------------------------------------------------------------

    def printed_associated_sum(self, spec: FamilySpec, mode: OperatorMode, n: int) -> HyperNumber:
        """Associated composition sum exactly as printed: no (-1)^(k-j) factor"""
        def compute(k: int) -> Fraction:
            alphas = self.alpha_sequence(spec, mode, k)
            sums = combinatorics_engine.composition_sums(alphas, k, mode.m, k)
            return self.xi(spec, k) * sum(sums.values())
        return self._number(spec, mode, n, compute)

    def printed_associated_binom_sum(self, spec: FamilySpec, mode: OperatorMode, n: int) -> HyperNumber:
        """Associated binomial sum exactly as printed: no sign factor, parts >= m-1"""
        def compute(k: int) -> Fraction:
            alphas = CoefficientSequence((Fraction(1),) + tuple(self.alpha(spec, j) for j in range(1, k + 1)))
            lower = mode.m - 1
            total = Fraction(0)
            for j in range(1, k + 1):
                inner = combinatorics_engine.weak_composition_sum(
                    alphas, k, j, lower=max(lower, 1), allow_zero=(lower == 0)
                )
                total += rational_core.binomial(k + 1, j + 1) * inner
            return self.xi(spec, k) * total
        return self._number(spec, mode, n, compute)

    # -------------------------------------------------------------------------
    # Inversion
    # -------------------------------------------------------------------------

    def expected_inversion(self, spec: FamilySpec, mode: OperatorMode, n: int,
                           reading: Optional[str] = None) -> Fraction:
        """alpha_n inside the mode's support window, 0 outside"""
        return self.alpha(spec, n) if self.in_support(spec, mode, n, reading) else Fraction(0)

    def hyper_inversion_check(self, spec: FamilySpec, mode: OperatorMode, n: int,
                              reading: Optional[str] = None) -> Fraction:
        """Recover alpha_n from A_1/xi_1 .. A_n/xi_n by determinant and by multinomial sum.

        n is the alpha index (for Euler kinds A_j is the number at series index 2j).
        """
        if n < 1:
            raise DomainError(f"Inversion check needs n >= 1, got {n}")
        numbers = self.hyper_from_definition(spec, mode, self.series_index(spec, n), reading)
        ratios = [Fraction(1)]
        for j in range(1, n + 1):
            ratios.append(rational_core.divide(numbers[self.series_index(spec, j)].value, self.xi(spec, j)))
        d = CoefficientSequence(tuple(ratios))

        det_form = determinant_engine.x_from_z_det(d, n)
        multinomial_form = Fraction(sum(
            (term if (n - parts) % 2 == 0 else -term)
            for parts, term in combinatorics_engine.trudi_terms(d, n)
        ))
        if det_form != multinomial_form:
            raise EngineDisagreement(
                f"Inversion forms disagree for {spec.label()} {mode.label()} n={n}",
                {'determinant': det_form, 'multinomial': multinomial_form},
            )
        return det_form

    # -------------------------------------------------------------------------
    # Unrestricted limits
    # -------------------------------------------------------------------------

    def _limit_weights(self, spec: FamilySpec, order: int):
        """Per-part weights of the unrestricted sums, from factorials directly"""
        f = rational_core.factorial
        N = spec.N
        weights = []
        for i in range(0, order + 1):
            if spec.family is Family.BERNOULLI:
                weights.append(Fraction(-f(N), f(N + i)))
            elif spec.family is Family.CAUCHY:
                weights.append(Fraction(N, N + i))
            elif spec.family is Family.EULER:
                weights.append(Fraction(-f(2 * N), f(2 * N + 2 * i)))
            else:
                weights.append(Fraction(-f(2 * N + 1), f(2 * N + 2 * i + 1)))
        scale = f(2 * order) if spec.family.is_euler else f(order)
        return CoefficientSequence(tuple(weights)), scale

    def limit_sum(self, spec: FamilySpec, n: int) -> Fraction:
        """Unrestricted number at series index n as the composition sum over parts >= 1"""
        def compute(k: int) -> Fraction:
            weights, scale = self._limit_weights(spec, k)
            sums = combinatorics_engine.composition_sums(weights, k, 1, k)
            total = Fraction(0)
            for j, value in sums.items():
                if spec.family is Family.CAUCHY and (k - j) % 2:
                    value = -value
                total += value
            return scale * total
        return self._number(spec, OperatorMode.associated(1), n, compute).value

    def limit_binom_sum(self, spec: FamilySpec, n: int) -> Fraction:
        """Unrestricted number at series index n as the binomial sum over parts >= 0"""
        def compute(k: int) -> Fraction:
            weights, scale = self._limit_weights(spec, k)
            sums = combinatorics_engine.composition_sums(weights, k, 1, k)
            total = Fraction(0)
            for j in range(1, k + 1):
                inner = combinatorics_engine.weak_composition_sum(weights, k, j, sums=sums)
                if spec.family is Family.CAUCHY and (k - j) % 2:
                    inner = -inner
                total += rational_core.binomial(k + 1, j + 1) * inner
            return scale * total
        return self._number(spec, OperatorMode.associated(1), n, compute).value

    def classical_series(self, spec: FamilySpec, n_max: int) -> List[Fraction]:
        """Unrestricted numbers from the elementary-function generating functions.

        e^x, log(1+x), cosh x and sinh x minus their first N terms, divided by
        the leading remaining term, then reciprocated.
        """
        f = rational_core.factorial
        N = spec.N
        d = [Fraction(0)] * (n_max + 1)
        for p in range(n_max + 1):
            if spec.family is Family.BERNOULLI:
                # e^x coefficient 1/(N+p)!, leading term x^N/N!
                d[p] = Fraction(f(N), f(N + p))
            elif spec.family is Family.CAUCHY:
                # log(1+x) coefficient (-1)^(N+p-1)/(N+p), leading term (-1)^(N-1) x^N/N
                d[p] = Fraction((-1) ** p * N, N + p)
            elif p % 2 == 0 and spec.family is Family.EULER:
                # cosh x coefficient 1/(2N+p)!, leading term x^(2N)/(2N)!
                d[p] = Fraction(f(2 * N), f(2 * N + p))
            elif p % 2 == 0:
                # sinh x coefficient 1/(2N+1+p)!, leading term x^(2N+1)/(2N+1)!
                d[p] = Fraction(f(2 * N + 1), f(2 * N + 1 + p))
        r = operator_engine.series_reciprocal(d, n_max)
        return [r[p] * f(p) for p in range(n_max + 1)]

# Global hypergeometric numbers instance
hypergeometric_numbers = HypergeometricNumbers()
