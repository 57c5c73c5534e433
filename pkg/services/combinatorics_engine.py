"""
Combinatorial Summation Engine
Composition sums, Trudi multinomial sums over exponent vectors, the inversion sums
and the binomial expansion for the negated operator
"""

import logging
from collections import defaultdict
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Tuple

from models import CoefficientSequence, DomainError, SequenceError
from services.rational_core import rational_core

logger = logging.getLogger(__name__)

class CombinatoricsEngine:
    """Computes z_n and x_n by explicit enumeration"""

    # -------------------------------------------------------------------------
    # Enumerators
    # -------------------------------------------------------------------------

    def enumerate_compositions(self, n: int, parts: Optional[int] = None,
                               lower: int = 1, upper: Optional[int] = None) -> Iterator[Tuple[int, ...]]:
        """Ordered tuples with parts in [lower, upper] summing to n, lexicographic.

        With `parts` given the tuple length is fixed and lower may be 0;
        without it the length is free and lower must be positive.
        """
        if parts is None and lower < 1:
            raise DomainError("Zero parts need an explicit part count")
        if lower < 0 or n < 0:
            return
        top = n if upper is None else upper
        if top < lower:
            return
        yield from self._compositions(n, parts, lower, top)

    def _compositions(self, remaining: int, parts: Optional[int], lower: int, upper: int):
        if parts == 0 or (parts is None and remaining == 0):
            if remaining == 0:
                yield ()
            return
        if parts is None:
            first_range = range(lower, min(upper, remaining) + 1)
        else:
            lo = max(lower, remaining - (parts - 1) * upper)
            hi = min(upper, remaining - (parts - 1) * lower)
            first_range = range(lo, hi + 1)
        rest_parts = None if parts is None else parts - 1
        for first in first_range:
            for rest in self._compositions(remaining - first, rest_parts, lower, upper):
                yield (first,) + rest

    def enumerate_exponent_vectors(self, n: int, lower: int = 1,
                                   upper: Optional[int] = None) -> Iterator[Dict[int, int]]:
        """Vectors {j: t_j} with sum j*t_j = n over lower <= j <= upper (zeros omitted)"""
        if lower < 1 or n < 0:
            return
        top = n if upper is None else min(upper, n)
        yield from self._exponent_vectors(n, top, lower)

    def _exponent_vectors(self, remaining: int, largest: int, lower: int):
        if remaining == 0:
            yield {}
            return
        if largest < lower:
            return
        # choose the multiplicity of the largest allowed part, then recurse below it
        for count in range(remaining // largest, -1, -1):
            for rest in self._exponent_vectors(remaining - count * largest, largest - 1, lower):
                if count:
                    vector = dict(rest)
                    vector[largest] = count
                    yield vector
                else:
                    yield rest

    def composition_count(self, n: int, k: int, m: int) -> int:
        """Number of compositions of n into k parts, each >= m"""
        return rational_core.binomial(n - k * m + k - 1, k - 1)

    # -------------------------------------------------------------------------
    # Core weighted sums
    # -------------------------------------------------------------------------

    def _weights(self, x: CoefficientSequence, lower: int, upper: int) -> List:
        # index j holds x_j; positions below `lower` are never read
        return [0] * lower + [rational_core.compact(x.get(j)) for j in range(lower, upper + 1)]

    def composition_sums(self, x: CoefficientSequence, n: int, lower: int = 1,
                         upper: Optional[int] = None) -> Dict[int, Fraction]:
        """{k: sum over compositions of n into k parts in [lower, upper] of x_{i_1}...x_{i_k}}"""
        if lower < 1:
            raise DomainError("Composition sums take positive parts")
        top = n if upper is None else min(upper, n)
        sums: Dict[int, Fraction] = defaultdict(int)
        if n < 1 or top < lower:
            return {}
        weights = self._weights(x, lower, top)

        # depth-first walk over compositions sharing prefix products; zero weights prune
        stack = [(n, 0, 1)]
        while stack:
            remaining, length, product = stack.pop()
            for part in range(lower, min(top, remaining) + 1):
                weight = weights[part]
                if not weight:
                    continue
                if part == remaining:
                    sums[length + 1] += product * weight
                elif remaining - part >= lower:
                    stack.append((remaining - part, length + 1, product * weight))
        return {k: Fraction(v) for k, v in sorted(sums.items())}

    def trudi_terms(self, x, n: int, lower: int = 1,
                    upper: Optional[int] = None) -> Iterator[Tuple[int, Fraction]]:
        """(t_lower + ... + t_upper, multinomial(t) * prod x_j^t_j) per exponent vector"""
        top = n if upper is None else min(upper, n)
        if top < lower:
            return
        weights = self._weights(x, lower, top)
        for vector in self.enumerate_exponent_vectors(n, lower, top):
            term = rational_core.multinomial(list(vector.values()))
            for j, t in vector.items():
                term *= weights[j] ** t
            if term:
                yield sum(vector.values()), term

    # -------------------------------------------------------------------------
    # Transform by enumeration
    # -------------------------------------------------------------------------

    def composition_sum_restricted(self, x: CoefficientSequence, m: int, n: int) -> Fraction:
        """sum_k sum_{i_1+...+i_k=n, 1<=i_j<=m} x_{i_1}...x_{i_k}"""
        self._require_positive(n)
        return Fraction(sum(self.composition_sums(x, n, 1, m).values()))

    def composition_sum_associated(self, x: CoefficientSequence, m: int, n: int) -> Fraction:
        """Same sum with every part >= m"""
        self._require_positive(n)
        if n < m:
            return Fraction(0)
        return Fraction(sum(self.composition_sums(x, n, m, n).values()))

    def trudi_restricted(self, x: CoefficientSequence, m: int, n: int) -> Fraction:
        """sum over t_1 + 2 t_2 + ... + m t_m = n of multinomial(t) x_1^t_1 ... x_m^t_m"""
        self._require_positive(n)
        return Fraction(sum(term for _, term in self.trudi_terms(x, n, 1, m)))

    def trudi_associated(self, x: CoefficientSequence, m: int, n: int) -> Fraction:
        """Vectors (t_m, ..., t_n) with sum j t_j = n; top index t_m + ... + t_n"""
        self._require_positive(n)
        if n < m:
            return Fraction(0)
        return Fraction(sum(term for _, term in self.trudi_terms(x, n, m, n)))

    # -------------------------------------------------------------------------
    # Inversion
    # -------------------------------------------------------------------------

    def inversion_sum(self, z: CoefficientSequence, n: int) -> Fraction:
        """sum_k (-1)^(k-1) sum_{i_1+...+i_k=n} z_{i_1}...z_{i_k}; recovers x_n"""
        self._require_positive(n)
        if z.n_max < n:
            raise SequenceError(f"Sequence supplies z_1..z_{z.n_max}, inversion needs z_{n}")
        sums = self.composition_sums(z, n, 1, n)
        return Fraction(sum(v if k % 2 else -v for k, v in sums.items()))

    def signed_trudi_inversion(self, z: CoefficientSequence, n: int) -> Fraction:
        """sum_t multinomial(t) (-1)^(t_1+...+t_n-1) z_1^t_1 ... z_n^t_n"""
        self._require_positive(n)
        if z.n_max < n:
            raise SequenceError(f"Sequence supplies z_1..z_{z.n_max}, inversion needs z_{n}")
        return Fraction(sum(term if parts % 2 else -term for parts, term in self.trudi_terms(z, n)))

    # -------------------------------------------------------------------------
    # Negated operator
    # -------------------------------------------------------------------------

    def weak_composition_sum(self, x: CoefficientSequence, n: int, k: int, lower: int = 1,
                             upper: Optional[int] = None, allow_zero: bool = True,
                             sums: Optional[Dict[int, Fraction]] = None) -> Fraction:
        """Sum over k-part compositions of n whose nonzero parts lie in [lower, upper].

        Zero parts carry weight x_0. A tuple with r nonzero parts is a
        composition of n into r positive parts with k - r zeros placed in
        C(k, r) ways, so only positive compositions are enumerated.
        """
        if sums is None:
            sums = self.composition_sums(x, n, max(lower, 1), upper)
        if not allow_zero:
            return Fraction(sums.get(k, 0))
        zero_weight = x[0]
        total = Fraction(0)
        for r, value in sums.items():
            if r <= k:
                total += rational_core.binomial(k, r) * zero_weight ** (k - r) * value
        return total

    def binomial_expansion_sum(self, x: CoefficientSequence, n: int, lower: int = 1,
                               upper: Optional[int] = None, allow_zero: bool = True) -> Fraction:
        """z_n of (sum_{n>=0} x_n t^n)^(-1): sum_k (-1)^k C(n+1, k+1) sum prod x over weak compositions"""
        self._require_positive(n)
        x.require_unit_constant("Seed of the binomial expansion")
        sums = self.composition_sums(x, n, max(lower, 1), upper)
        total = Fraction(0)
        for k in range(1, n + 1):
            inner = self.weak_composition_sum(x, n, k, lower, upper, allow_zero, sums)
            if inner:
                sign = -1 if k % 2 else 1
                total += sign * rational_core.binomial(n + 1, k + 1) * inner
        return total

    def _require_positive(self, n: int):
        if n < 1:
            raise DomainError(f"Enumeration sums need n >= 1, got {n}")

# Global combinatorics engine instance
combinatorics_engine = CombinatoricsEngine()
