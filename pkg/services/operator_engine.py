"""
Cameron Operator Engine
Restricted and associated transforms by recurrence, the series-reciprocal oracle,
and the closed forms for geometric and arithmetic-progression seeds
"""

import logging
from fractions import Fraction
from typing import List, Sequence, Union

from models import (
    ArithmeticParams, CoefficientSequence, DomainError, GeometricParams,
    OperatorMode, SequenceError
)
from services.rational_core import rational_core

logger = logging.getLogger(__name__)

SeriesLike = Union[CoefficientSequence, Sequence[Fraction]]

class OperatorEngine:
    """Computes z from x by the defining recurrences"""

    def restricted_transform(self, x: CoefficientSequence, n_max: int) -> CoefficientSequence:
        """z_n = sum_{k=1}^{min(n,m)} x_k z_{n-k}, with m = x.n_max"""
        m = x.n_max
        if m == 0:
            raise SequenceError("Restricted transform needs at least x_1")
        if n_max < 1:
            raise DomainError(f"n_max must be positive, got {n_max}")

        seed = [rational_core.compact(v) for v in x.values]
        z = [1]
        for n in range(1, n_max + 1):
            total = 0
            for k in range(1, min(n, m) + 1):
                if seed[k]:
                    total += seed[k] * z[n - k]
            z.append(total)

        logger.debug(f"restricted_transform m={m} n_max={n_max}")
        return CoefficientSequence(tuple(z))

    def associated_transform(self, x: CoefficientSequence, m: int, n_max: int) -> CoefficientSequence:
        """z_n = sum_{k=0}^{n-m} x_{m+k} z_{n-m-k}; z_1 = ... = z_{m-1} = 0"""
        if m < 1:
            raise DomainError(f"Associated transform needs m >= 1, got {m}")
        if m > n_max:
            return CoefficientSequence((Fraction(1),) + (Fraction(0),) * n_max)

        seed = self._associated_seed(x, m, n_max)
        z = [1] + [0] * n_max
        for n in range(m, n_max + 1):
            total = 0
            for k in range(0, n - m + 1):
                if seed[m + k]:
                    total += seed[m + k] * z[n - m - k]
            z[n] = total

        logger.debug(f"associated_transform m={m} n_max={n_max}")
        return CoefficientSequence(tuple(z))

    def associated_transform_alt(self, x: CoefficientSequence, m: int, n_max: int) -> CoefficientSequence:
        """z_n = x_n + sum_{k=0}^{n-2m} x_{m+k} z_{n-m-k} for n >= m"""
        if m < 1:
            raise DomainError(f"Associated transform needs m >= 1, got {m}")
        if m > n_max:
            return CoefficientSequence((Fraction(1),) + (Fraction(0),) * n_max)

        seed = self._associated_seed(x, m, n_max)
        z = [1] + [0] * n_max
        for n in range(m, n_max + 1):
            total = seed[n]
            for k in range(0, n - 2 * m + 1):
                if seed[m + k]:
                    total += seed[m + k] * z[n - m - k]
            z[n] = total
        return CoefficientSequence(tuple(z))

    def _associated_seed(self, x: CoefficientSequence, m: int, n_max: int) -> List:
        if x.n_max < n_max:
            raise SequenceError(
                f"Associated seed supplies indices up to {x.n_max}, transform needs {n_max}"
            )
        # entries below m are outside the seed's support
        return [0] * m + [rational_core.compact(x[n]) for n in range(m, n_max + 1)]

    def series_reciprocal(self, d: SeriesLike, n_max: int) -> CoefficientSequence:
        """Truncated formal reciprocal of sum d_n t^n; d is zero-extended past its end"""
        if not isinstance(d, CoefficientSequence):
            d = CoefficientSequence(tuple(d))
        d.require_unit_constant("Series denominator")

        coeffs = [rational_core.compact(d.get(k)) for k in range(n_max + 1)]
        r = [1]
        for n in range(1, n_max + 1):
            total = 0
            for k in range(1, n + 1):
                if coeffs[k]:
                    total += coeffs[k] * r[n - k]
            r.append(-total)
        return CoefficientSequence(tuple(r))

    def inverse_transform(self, z: CoefficientSequence, n_max: int) -> CoefficientSequence:
        """x_n = z_n - sum_{k=1}^{n-1} x_k z_{n-k}, read off z_n = sum_k x_k z_{n-k}"""
        z.require_unit_constant("Transform")
        if z.n_max < n_max:
            raise SequenceError(f"Sequence supplies z_1..z_{z.n_max}, inversion needs z_{n_max}")

        x = [1]
        for n in range(1, n_max + 1):
            value = z[n]
            for k in range(1, n):
                if x[k]:
                    value -= x[k] * z[n - k]
            x.append(rational_core.compact(Fraction(value)))
        logger.debug(f"inverse_transform: recovered x_1..x_{n_max}")
        return CoefficientSequence(tuple(x))

    def cameron_denominator(self, x: CoefficientSequence, mode: OperatorMode, n_max: int) -> CoefficientSequence:
        """1 - sum x_n t^n over the mode's support, truncated at n_max"""
        values = [Fraction(1)]
        for n in range(1, n_max + 1):
            values.append(-x.get(n) if mode.in_support(n) else Fraction(0))
        return CoefficientSequence(tuple(values))

    def transform(self, x: CoefficientSequence, mode: OperatorMode, n_max: int) -> CoefficientSequence:
        """Dispatch on the operator mode"""
        if mode.is_restricted:
            return self.restricted_transform(x.truncate(mode.m), n_max)
        return self.associated_transform(x.truncate(n_max), mode.m, n_max)

    def negated_transform(self, x: CoefficientSequence, n_max: int) -> CoefficientSequence:
        """z of 1 + sum z_n t^n = (sum_{n>=0} x_n t^n)^(-1) with x_0 = 1"""
        x.require_unit_constant("Seed of the negated operator")
        return self.series_reciprocal(x, n_max)

    # -------------------------------------------------------------------------
    # Closed forms
    # -------------------------------------------------------------------------

    def geometric_closed_form(self, p: GeometricParams, n: int) -> Fraction:
        """sum_{k=1}^{floor(n/m)} C(n-km+k-1, k-1) a^(n-km) b^k"""
        if n < p.m:
            raise DomainError(f"Geometric closed form needs n >= m = {p.m}, got {n}")
        total = 0
        for k in range(1, n // p.m + 1):
            total += rational_core.binomial(n - k * p.m + k - 1, k - 1) * p.a ** (n - k * p.m) * p.b ** k
        return Fraction(total)

    def geometric_window_value(self, p: GeometricParams, n: int) -> Fraction:
        """Initial-value windows m <= n <= 4m-1 written out term by term"""
        m, a, b = p.m, p.a, p.b
        if n < m or n > 4 * m - 1:
            raise DomainError(f"Initial-value windows cover {m}..{4 * m - 1}, got {n}")
        value = Fraction(a) ** (n - m) * b
        if n >= 2 * m:
            value += (n - 2 * m + 1) * Fraction(a) ** (n - 2 * m) * b ** 2
        if n >= 3 * m:
            value += rational_core.binomial(n - 3 * m + 2, 2) * Fraction(a) ** (n - 3 * m) * b ** 3
        return value

    def geometric_recurrence(self, p: GeometricParams, n_max: int) -> CoefficientSequence:
        """z_n = a z_{n-1} + b z_{n-m}, z_0 = 1, z_1 = ... = z_{m-1} = 0, z_m = b"""
        z = [1] + [0] * n_max
        for n in range(p.m, n_max + 1):
            if n == p.m:
                z[n] = p.b
            else:
                z[n] = p.a * z[n - 1] + p.b * z[n - p.m]
        return CoefficientSequence(tuple(z))

    def ones_closed_form(self, m: int, n: int) -> Fraction:
        """sum_{k=1}^{floor(n/m)} C(n-km+k-1, k-1): compositions of n into parts >= m"""
        if m < 1 or n < m:
            raise DomainError(f"Ones closed form needs n >= m >= 1, got m={m}, n={n}")
        return Fraction(sum(
            rational_core.binomial(n - k * m + k - 1, k - 1) for k in range(1, n // m + 1)
        ))

    def arithmetic_start(self, p: ArithmeticParams) -> int:
        """First index the arithmetic-progression recurrence produces"""
        return p.m + 1 if p.m >= 3 else 3

    def arithmetic_initial_values(self, p: ArithmeticParams) -> List[Fraction]:
        """z_0 .. z_{start-1} as stated alongside each recurrence"""
        if p.m >= 3:
            return [Fraction(1)] + [Fraction(0)] * (p.m - 1) + [Fraction(p.b)]
        if p.m == 2:
            return [Fraction(1), Fraction(0), Fraction(p.b)]
        return [Fraction(1), Fraction(p.b), Fraction(p.a + p.b * (p.b + 1))]

    def arithmetic_recurrence_step(self, p: ArithmeticParams, history: SeriesLike, n: int) -> Fraction:
        """z_n from z_0..z_{n-1} for the seed x_n = (n-m) a + b"""
        start = self.arithmetic_start(p)
        if n < start:
            raise DomainError(f"Recurrence for m={p.m} starts at n={start}, got {n}")
        if len(history) < n:
            raise SequenceError(f"History holds {len(history)} values, step {n} needs {n}")

        z = history
        a, b, m = p.a, p.b, p.m
        if m >= 3:
            return Fraction(2 * z[n - 1] - z[n - 2] + b * z[n - m] + (a - b) * z[n - m - 1])
        if m == 2:
            return Fraction(2 * z[n - 1] + (b - 1) * z[n - 2] + (a - b) * z[n - 3])
        return Fraction((b + 2) * z[n - 1] + (a - b - 1) * z[n - 2])

    def arithmetic_sequence(self, p: ArithmeticParams, n_max: int) -> CoefficientSequence:
        """Whole z_0..z_{n_max} from the recurrence and its initial values"""
        z = self.arithmetic_initial_values(p)
        for n in range(len(z), n_max + 1):
            z.append(self.arithmetic_recurrence_step(p, z, n))
        return CoefficientSequence(tuple(z[:n_max + 1]))

# Global operator engine instance
operator_engine = OperatorEngine()
