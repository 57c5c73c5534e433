"""
Exact Rational Core for Cameron Operator Toolkit
Rational parsing and rendering, factorial tables, rising factorials, binomial and multinomial coefficients
"""

import re
import logging
import threading
from fractions import Fraction
from math import comb
from typing import List, Sequence

from models import Rational, RationalError

logger = logging.getLogger(__name__)

_RATIONAL_PATTERN = re.compile(r'^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$')

class RationalCore:
    """Exact scalar arithmetic shared by every engine"""

    def __init__(self):
        # Grows on demand; appends happen under the lock, reads never block
        self._factorials: List[int] = [1]
        self._lock = threading.Lock()

    def parse(self, text: str) -> Fraction:
        """Parse "p", "-p", "p/q" or "-p/q" into a normalized Fraction"""
        if isinstance(text, (int, Fraction)) and not isinstance(text, bool):
            return Fraction(text)
        match = _RATIONAL_PATTERN.match(str(text))
        if not match:
            raise RationalError(f"Cannot parse rational from {text!r}")
        numerator = int(match.group(1))
        denominator = int(match.group(2)) if match.group(2) is not None else 1
        if denominator == 0:
            raise RationalError(f"Zero denominator in {text!r}")
        return Fraction(numerator, denominator)

    def format(self, value: Rational) -> str:
        """Render as "p/q", or bare "p" when the denominator is 1"""
        return str(Fraction(value))

    def divide(self, numerator: Rational, denominator: Rational) -> Fraction:
        if denominator == 0:
            raise RationalError(f"Division of {numerator} by zero")
        return Fraction(numerator) / Fraction(denominator)

    def factorial(self, n: int) -> int:
        if n < 0:
            raise RationalError(f"Factorial of negative integer {n}")
        table = self._factorials
        if n < len(table):
            return table[n]
        with self._lock:
            while len(self._factorials) <= n:
                k = len(self._factorials)
                self._factorials.append(self._factorials[-1] * k)
            return self._factorials[n]

    def rising_factorial(self, x: Rational, n: int) -> Fraction:
        """x (x+1) ... (x+n-1), and 1 when n = 0"""
        if n < 0:
            raise RationalError(f"Rising factorial needs n >= 0, got {n}")
        x = Fraction(x)
        result = Fraction(1)
        for k in range(n):
            result *= x + k
        return result

    def binomial(self, n: int, k: int) -> int:
        """C(n, k), zero outside 0 <= k <= n"""
        if k < 0 or n < 0 or k > n:
            return 0
        return comb(n, k)

    def multinomial(self, t: Sequence[int]) -> int:
        """(t_1 + ... + t_m)! / (t_1! ... t_m!)"""
        if any(part < 0 for part in t):
            raise RationalError(f"Multinomial needs nonnegative entries, got {list(t)}")
        result = 1
        running = 0
        # product of binomials avoids the big factorial quotient
        for part in t:
            running += part
            result *= comb(running, part)
        return result

    def compact(self, value: Rational) -> Rational:
        """Integer-valued rationals as int so hot loops stay in int arithmetic"""
        value = Fraction(value)
        return value.numerator if value.denominator == 1 else value

# Global rational core instance
rational_core = RationalCore()
