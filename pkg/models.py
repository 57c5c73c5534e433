"""
Domain Models for Cameron Operator Toolkit
Coefficient sequences, operator modes, seed rules, hypergeometric families and report records
"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

Rational = Union[int, Fraction]

# =============================================================================
# ERRORS
# =============================================================================

class CameronError(Exception):
    """Base class for every error raised by the toolkit"""
    pass

class RationalError(CameronError):
    """Zero division or unparsable rational text"""
    pass

class SequenceError(CameronError):
    """Out-of-range read, empty seed or broken x_0 / z_0 convention"""
    pass

class DomainError(CameronError):
    """Index or parameter outside an operation's domain"""
    pass

class FormatError(CameronError):
    """Malformed input file or output that the chosen format cannot carry"""
    pass

class EngineDisagreement(CameronError):
    """Two computation methods produced different values for the same cell"""

    def __init__(self, message: str, values: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.values = values or {}

# =============================================================================
# SEQUENCES AND OPERATOR MODES
# =============================================================================

@dataclass(frozen=True)
class CoefficientSequence:
    """Finite list x_0..x_n of exact rationals; x_0 = 1 by convention"""
    values: Tuple[Fraction, ...]

    def __post_init__(self):
        if not self.values:
            raise SequenceError("A coefficient sequence needs at least the index-0 entry")
        object.__setattr__(self, 'values', tuple(Fraction(v) for v in self.values))

    @classmethod
    def from_seed(cls, seed: Iterable[Rational]) -> 'CoefficientSequence':
        """Build x_0..x_m from x_1..x_m with the implied x_0 = 1"""
        return cls((Fraction(1),) + tuple(Fraction(v) for v in seed))

    @property
    def n_max(self) -> int:
        return len(self.values) - 1

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, n: int) -> Fraction:
        if not isinstance(n, int) or n < 0 or n > self.n_max:
            raise SequenceError(f"Index {n} outside 0..{self.n_max}")
        return self.values[n]

    def __iter__(self):
        return iter(self.values)

    def get(self, n: int) -> Fraction:
        """Zero-extending read: indices beyond n_max are 0"""
        if n < 0:
            raise SequenceError(f"Negative index {n}")
        return self.values[n] if n <= self.n_max else Fraction(0)

    def truncate(self, n_max: int) -> 'CoefficientSequence':
        return CoefficientSequence(tuple(self.get(n) for n in range(n_max + 1)))

    def require_unit_constant(self, what: str = "sequence"):
        if self.values[0] != 1:
            raise SequenceError(f"{what} must have index-0 entry 1, got {self.values[0]}")

class OperatorKind(Enum):
    """Which Cameron operator variant is applied"""
    RESTRICTED = "restricted"
    ASSOCIATED = "associated"

@dataclass(frozen=True)
class OperatorMode:
    """restricted(m): seed x_1..x_m; associated(m): seed x_m, x_{m+1}, ..."""
    kind: OperatorKind
    m: int

    def __post_init__(self):
        if not isinstance(self.m, int) or self.m < 1:
            raise DomainError(f"Operator parameter m must be a positive integer, got {self.m}")

    @classmethod
    def restricted(cls, m: int) -> 'OperatorMode':
        return cls(OperatorKind.RESTRICTED, m)

    @classmethod
    def associated(cls, m: int) -> 'OperatorMode':
        return cls(OperatorKind.ASSOCIATED, m)

    @property
    def is_restricted(self) -> bool:
        return self.kind is OperatorKind.RESTRICTED

    def in_support(self, n: int) -> bool:
        """Whether index n >= 1 carries a seed entry under this mode"""
        if self.is_restricted:
            return 1 <= n <= self.m
        return n >= self.m

    def label(self) -> str:
        return f"{self.kind.value}({self.m})"

@dataclass(frozen=True)
class GeometricParams:
    """Associated seed x_n = a^(n-m) b for n >= m"""
    a: int
    b: int
    m: int

    def __post_init__(self):
        if self.a == 0 or self.b == 0:
            raise DomainError("Geometric parameters a and b must be nonzero")
        if self.m < 1:
            raise DomainError("Geometric parameter m must be positive")

@dataclass(frozen=True)
class ArithmeticParams:
    """Associated seed x_n = (n-m) a + b for n >= m"""
    a: int
    b: int
    m: int

    def __post_init__(self):
        if self.a == 0 or self.b == 0:
            raise DomainError("Arithmetic parameters a and b must be nonzero")
        if self.m < 1:
            raise DomainError("Arithmetic parameter m must be positive")

@dataclass(frozen=True)
class HessenbergSpec:
    """Lower-Hessenberg n x n matrix with unit superdiagonal.

    `entry(row, col)` is 1-based and only consulted for col <= row.
    `bandwidth` is the number of nonzero diagonals on and below the main
    diagonal; None means the full lower triangle.
    """
    order: int
    entry: Callable[[int, int], Fraction]
    bandwidth: Optional[int] = None

    def __post_init__(self):
        if self.order < 1:
            raise DomainError(f"Matrix order must be positive, got {self.order}")
        if self.bandwidth is not None and self.bandwidth < 1:
            raise DomainError(f"Bandwidth must be positive, got {self.bandwidth}")

    def dense(self) -> List[List[Fraction]]:
        """Materialize every entry; only for small orders"""
        width = self.bandwidth or self.order
        rows = []
        for i in range(1, self.order + 1):
            row = []
            for j in range(1, self.order + 1):
                if j == i + 1:
                    row.append(Fraction(1))
                elif j <= i and i - j < width:
                    row.append(Fraction(self.entry(i, j)))
                else:
                    row.append(Fraction(0))
            rows.append(row)
        return rows

# =============================================================================
# SEED RULES
# =============================================================================

class SeedRule:
    """Seed x_n (n >= 1) evaluated lazily up to whatever index a transform needs"""

    name = "seed"

    def value(self, n: int) -> Fraction:
        raise NotImplementedError

    def materialize(self, mode: OperatorMode, n_max: int) -> CoefficientSequence:
        """x_0..x_m for restricted modes, x_0..x_{n_max} (zero below m) for associated ones"""
        if mode.is_restricted:
            return CoefficientSequence.from_seed(self.value(n) for n in range(1, mode.m + 1))
        values = [Fraction(1)]
        for n in range(1, n_max + 1):
            values.append(self.value(n) if n >= mode.m else Fraction(0))
        return CoefficientSequence(tuple(values))

class ExplicitSeed(SeedRule):
    """Listed values starting at index `start`; zero beyond the list"""

    name = "explicit"

    def __init__(self, values: Sequence[Rational], start: int = 1):
        if start < 1:
            raise SequenceError("Explicit seeds start at index 1 or later")
        self.values = tuple(Fraction(v) for v in values)
        self.start = start

    def value(self, n: int) -> Fraction:
        offset = n - self.start
        if 0 <= offset < len(self.values):
            return self.values[offset]
        return Fraction(0)

class OnesSeed(SeedRule):
    """x_n = 1 for every n"""

    name = "ones"

    def value(self, n: int) -> Fraction:
        return Fraction(1)

class GeometricSeed(SeedRule):
    """x_n = a^(n-m) b"""

    name = "geometric"

    def __init__(self, params: GeometricParams):
        self.params = params

    def value(self, n: int) -> Fraction:
        p = self.params
        if n < p.m:
            return Fraction(0)
        return Fraction(p.a) ** (n - p.m) * p.b

class ArithmeticSeed(SeedRule):
    """x_n = (n-m) a + b"""

    name = "arithmetic"

    def __init__(self, params: ArithmeticParams):
        self.params = params

    def value(self, n: int) -> Fraction:
        p = self.params
        if n < p.m:
            return Fraction(0)
        return Fraction((n - p.m) * p.a + p.b)

# =============================================================================
# HYPERGEOMETRIC FAMILIES
# =============================================================================

class Family(Enum):
    """Modified hypergeometric number families"""
    BERNOULLI = "bernoulli"
    CAUCHY = "cauchy"
    EULER = "euler"
    EULER_SECOND = "euler-second"

    @property
    def is_euler(self) -> bool:
        return self in (Family.EULER, Family.EULER_SECOND)

    @property
    def min_order(self) -> int:
        return 0 if self.is_euler else 1

@dataclass(frozen=True)
class FamilySpec:
    """Family together with its order N"""
    family: Family
    N: int

    def __post_init__(self):
        if not isinstance(self.N, int) or self.N < self.family.min_order:
            raise DomainError(
                f"{self.family.value} numbers need N >= {self.family.min_order}, got {self.N}"
            )

    def label(self) -> str:
        return f"{self.family.value}(N={self.N})"

@dataclass(frozen=True)
class HyperNumber:
    """One modified hypergeometric number; `index` is the series index (2n for Euler kinds)"""
    value: Fraction
    family: FamilySpec
    mode: OperatorMode
    index: int

# =============================================================================
# CLI REQUESTS AND REPORTS
# =============================================================================

class Method(Enum):
    """Computation methods selectable from the command line"""
    RECURRENCE = "recurrence"
    DETERMINANT = "determinant"
    COMPOSITION = "composition"
    TRUDI = "trudi"
    BINOM = "binom"
    ORACLE = "oracle"
    ALL = "all"

class OutputFormat(Enum):
    JSON = "json"
    CSV = "csv"
    BFILE = "bfile"

@dataclass
class ComputeRequest:
    """Parsed `compute` invocation"""
    target: str  # transform, hyper, closed-form
    mode: Optional[OperatorMode] = None
    family: Optional[FamilySpec] = None
    seed: Optional[SeedRule] = None
    method: Method = Method.RECURRENCE
    n_min: int = 0
    n_max: int = 10
    output_format: OutputFormat = OutputFormat.JSON
    closed_form: Optional[str] = None  # geometric, ones, arithmetic
    params: Optional[Tuple[int, int]] = None

@dataclass
class IdentityResult:
    """Outcome of one verified identity"""
    name: str
    passed: bool = True
    checked: int = 0
    skipped: int = 0
    counterexample: Optional[Dict[str, Any]] = None
    seconds: float = 0.0

    def to_dict(self, include_timings: bool = False) -> Dict[str, Any]:
        data = {
            'name': self.name,
            'passed': self.passed,
            'checked': self.checked,
            'skipped': self.skipped,
        }
        if self.counterexample is not None:
            data['counterexample'] = self.counterexample
        if include_timings:
            data['seconds'] = round(self.seconds, 4)
        return data

@dataclass
class VerifyReport:
    """Result of a `verify` run"""
    scope: str
    rng_seed: int
    n_limit: int
    identities: List[IdentityResult] = field(default_factory=list)
    findings: Dict[str, str] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(identity.passed for identity in self.identities)

    def to_dict(self, include_timings: bool = False) -> Dict[str, Any]:
        return {
            'scope': self.scope,
            'rng_seed': self.rng_seed,
            'n_limit': self.n_limit,
            'passed': self.passed,
            'identities': [i.to_dict(include_timings) for i in self.identities],
            'findings': dict(sorted(self.findings.items())),
        }
