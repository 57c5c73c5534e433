"""
Hessenberg Determinant Engine
Exact determinants of lower-Hessenberg matrices with unit superdiagonal,
used as an oracle independent of the defining recurrences
"""

import logging
from fractions import Fraction
from typing import Callable, List, Sequence

from models import CoefficientSequence, DomainError, HessenbergSpec, SequenceError
from services.rational_core import rational_core

logger = logging.getLogger(__name__)

class DeterminantEngine:
    """Banded elimination over exact rationals"""

    def hessenberg_det(self, spec: HessenbergSpec) -> Fraction:
        """Determinant by elimination on the unit superdiagonal.

        Moving column 1 to the end turns rows 1..n-1 into unit pivots, so the
        elimination never divides and never searches for a pivot; only the
        moved column changes. The cyclic shift contributes (-1)^(n-1).
        """
        n = spec.order
        width = min(spec.bandwidth or n, n)

        # band[i][d] holds H[i][i-d] (0-based), d = 0..width-1
        band: List[List] = []
        for i in range(n):
            row = []
            for d in range(min(width, i + 1)):
                row.append(rational_core.compact(spec.entry(i + 1, i - d + 1)))
            band.append(row)

        def sub(i: int, j: int):
            d = i - j
            return band[i][d] if 0 <= d < len(band[i]) else 0

        tail = [sub(i, 0) for i in range(n)]
        for k in range(n - 1):
            pivot_tail = tail[k]
            if not pivot_tail:
                continue
            # rows below k that see column k+1 inside the band
            for i in range(k + 1, min(n, k + width + 1)):
                factor = sub(i, k + 1)
                if factor:
                    tail[i] -= factor * pivot_tail

        sign = -1 if (n - 1) % 2 else 1
        return Fraction(sign * tail[n - 1])

    def cofactor_det(self, matrix: Sequence[Sequence[Fraction]]) -> Fraction:
        """Laplace expansion along the first row; exponential, small orders only"""
        n = len(matrix)
        if n == 0:
            return Fraction(1)
        if any(len(row) != n for row in matrix):
            raise DomainError("Cofactor expansion needs a square matrix")
        if n == 1:
            return Fraction(matrix[0][0])
        if n == 2:
            return Fraction(matrix[0][0] * matrix[1][1] - matrix[0][1] * matrix[1][0])

        total = Fraction(0)
        for j in range(n):
            element = matrix[0][j]
            if element == 0:
                continue
            minor = [row[:j] + row[j + 1:] for row in matrix[1:]]
            sign = -1 if j % 2 else 1
            total += sign * element * self.cofactor_det(minor)
        return total

    def toeplitz_spec(self, coefficient: Callable[[int], Fraction], order: int, bandwidth=None) -> HessenbergSpec:
        """Entry (i, j) = coefficient(i - j + 1) below the superdiagonal"""
        return HessenbergSpec(
            order=order,
            entry=lambda i, j: coefficient(i - j + 1),
            bandwidth=bandwidth,
        )

    def restricted_z_det(self, x: CoefficientSequence, m: int, n: int) -> Fraction:
        """z_n of the restricted operator as a banded determinant.

        Column j holds (-1)^(i-j) x_{i-j+1} at row i, with x_k = 0 for k > m.
        """
        if n < 1 or m < 1:
            raise DomainError(f"Restricted determinant needs n, m >= 1, got n={n}, m={m}")
        width = min(n, m)
        if x.n_max < width:
            raise SequenceError(f"Seed supplies x_1..x_{x.n_max}, determinant needs x_{width}")

        def coefficient(k: int) -> Fraction:
            if k > m:
                return Fraction(0)
            return x[k] if k % 2 else -x[k]

        return self.hessenberg_det(self.toeplitz_spec(coefficient, n, width))

    def associated_z_det(self, x: CoefficientSequence, m: int, n: int) -> Fraction:
        """z_n of the associated operator; first column (0,..,0,(-1)^(m-1) x_m,..,(-1)^(n-1) x_n)"""
        if m < 1:
            raise DomainError(f"Associated determinant needs m >= 1, got {m}")
        if n < m:
            raise DomainError(f"Associated determinant needs n >= m, got n={n}, m={m}")
        if x.n_max < n:
            raise SequenceError(f"Seed supplies indices up to {x.n_max}, determinant needs {n}")

        def coefficient(k: int) -> Fraction:
            if k < m:
                return Fraction(0)
            return x[k] if k % 2 else -x[k]

        return self.hessenberg_det(self.toeplitz_spec(coefficient, n))

    def x_from_z_det(self, z: CoefficientSequence, n: int) -> Fraction:
        """det of the matrix with first column z_1..z_n; equals (-1)^(n-1) x_n"""
        if n < 1:
            raise DomainError(f"Inversion determinant needs n >= 1, got {n}")
        if z.n_max < n:
            raise SequenceError(f"Sequence supplies z_1..z_{z.n_max}, determinant needs z_{n}")
        return self.hessenberg_det(self.toeplitz_spec(lambda k: z[k], n))

# Global determinant engine instance
determinant_engine = DeterminantEngine()
