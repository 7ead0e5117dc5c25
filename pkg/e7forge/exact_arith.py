"""Exact scalars: rationals, quadratic extensions, prime fields, modular rank."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
from sympy import factorint, integer_nthroot, isprime, nextprime
from sympy.ntheory.residue_ntheory import sqrt_mod

from .config import DEFAULT_PRIME_COUNT, PRIME_FLOOR
from .errors import BadPrime, DivisionByZero, FieldMismatch

Rational = Fraction


def as_rational(value: Any) -> Fraction:
    """Coerce ints, Fractions and ``"num/den"`` strings to a Fraction."""

    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, QuadExtScalar):
        return value.to_rational()
    raise TypeError(f"cannot interpret {value!r} as a rational")


def rational_sqrt(value: Fraction) -> Optional[Fraction]:
    """Exact square root of a non-negative rational, or None."""

    value = as_rational(value)
    if value < 0:
        return None
    num_root, num_exact = integer_nthroot(value.numerator, 2)
    den_root, den_exact = integer_nthroot(value.denominator, 2)
    if num_exact and den_exact:
        return Fraction(int(num_root), int(den_root))
    return None


def is_squarefree(d: int) -> bool:
    if d in (0, 1):
        return False
    if d == -1:
        return True
    return all(exponent == 1 for exponent in factorint(abs(d)).values())


def square_class(value: Fraction) -> Tuple[int, Dict[int, int]]:
    """Return (sign bit, {prime: exponent parity}) of a nonzero rational."""

    value = as_rational(value)
    if value == 0:
        raise DivisionByZero("zero has no square class")
    parities: Dict[int, int] = {}
    for part in (value.numerator, value.denominator):
        for prime, exponent in factorint(abs(part)).items():
            parities[prime] = (parities.get(prime, 0) + exponent) % 2
    return (1 if value < 0 else 0), {p: e for p, e in parities.items() if e}


# Field descriptors -----------------------------------------------------------


class RationalField:
    name = "QQ"

    def coerce(self, value: Any) -> Fraction:
        return as_rational(value)

    def sqrt(self, value: Any) -> Optional[Fraction]:
        return rational_sqrt(as_rational(value))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("QQ")

    def __repr__(self) -> str:
        return "RationalField()"


RATIONALS = RationalField()


@dataclass(frozen=True)
class QuadField:
    """The field Q(sqrt d) for a square-free integer d."""

    d: int

    def __post_init__(self) -> None:
        if not is_squarefree(int(self.d)):
            raise ValueError(f"d={self.d} must be a square-free integer other than 0 and 1")

    @property
    def name(self) -> str:
        return f"QQ(sqrt({self.d}))"

    def coerce(self, value: Any) -> "QuadExtScalar":
        if isinstance(value, QuadExtScalar):
            if value.d != self.d:
                raise FieldMismatch(f"element of Q(sqrt {value.d}) used in {self.name}")
            return value
        return QuadExtScalar(as_rational(value), Fraction(0), self.d)

    def sqrt(self, value: Any) -> Optional["QuadExtScalar"]:
        """Square roots of rational elements only."""

        rational = as_rational(value)
        root = rational_sqrt(rational)
        if root is not None:
            return QuadExtScalar(root, Fraction(0), self.d)
        root = rational_sqrt(rational / self.d)
        if root is not None:
            return QuadExtScalar(Fraction(0), root, self.d)
        return None


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self) -> None:
        if self.p <= 2 or not isprime(self.p):
            raise ValueError(f"p={self.p} must be an odd prime")

    @property
    def name(self) -> str:
        return f"GF({self.p})"

    def coerce(self, value: Any) -> "PrimeScalar":
        if isinstance(value, PrimeScalar):
            if value.p != self.p:
                raise FieldMismatch(f"element of GF({value.p}) used in {self.name}")
            return value
        return PrimeScalar.reduce(as_rational(value), self.p)

    def sqrt(self, value: Any) -> Optional["PrimeScalar"]:
        element = self.coerce(value)
        root = sqrt_mod(element.residue, self.p)
        return None if root is None else PrimeScalar(int(root), self.p)


FieldDescriptor = Union[RationalField, QuadField, PrimeField]


def field_of(value: Any) -> FieldDescriptor:
    if isinstance(value, QuadExtScalar):
        return QuadField(value.d)
    if isinstance(value, PrimeScalar):
        return PrimeField(value.p)
    return RATIONALS


def parse_field(name: str) -> FieldDescriptor:
    if name == "QQ":
        return RATIONALS
    if name.startswith("QQ(sqrt(") and name.endswith("))"):
        return QuadField(int(name[len("QQ(sqrt("):-2]))
    if name.startswith("GF(") and name.endswith(")"):
        return PrimeField(int(name[3:-1]))
    raise ValueError(f"unknown field descriptor {name!r}")


# Quadratic extension ---------------------------------------------------------


class QuadExtScalar:
    """x + y*sqrt(d) with rational x, y."""

    __slots__ = ("x", "y", "d")

    def __init__(self, x: Any, y: Any, d: int) -> None:
        self.x = as_rational(x)
        self.y = as_rational(y)
        self.d = int(d)

    def _lift(self, other: Any) -> Optional["QuadExtScalar"]:
        if isinstance(other, QuadExtScalar):
            if other.d != self.d:
                raise FieldMismatch(f"Q(sqrt {self.d}) vs Q(sqrt {other.d})")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return QuadExtScalar(other, 0, self.d)
        return None

    def __add__(self, other: Any) -> "QuadExtScalar":
        rhs = self._lift(other)
        if rhs is None:
            return NotImplemented
        return QuadExtScalar(self.x + rhs.x, self.y + rhs.y, self.d)

    __radd__ = __add__

    def __neg__(self) -> "QuadExtScalar":
        return QuadExtScalar(-self.x, -self.y, self.d)

    def __sub__(self, other: Any) -> "QuadExtScalar":
        rhs = self._lift(other)
        if rhs is None:
            return NotImplemented
        return QuadExtScalar(self.x - rhs.x, self.y - rhs.y, self.d)

    def __rsub__(self, other: Any) -> "QuadExtScalar":
        lhs = self._lift(other)
        if lhs is None:
            return NotImplemented
        return lhs - self

    def __mul__(self, other: Any) -> "QuadExtScalar":
        rhs = self._lift(other)
        if rhs is None:
            return NotImplemented
        return QuadExtScalar(
            self.x * rhs.x + self.d * self.y * rhs.y,
            self.x * rhs.y + self.y * rhs.x,
            self.d,
        )

    __rmul__ = __mul__

    def inverse(self) -> "QuadExtScalar":
        norm = self.x * self.x - self.d * self.y * self.y
        if norm == 0:
            raise DivisionByZero("inverse of zero in a quadratic field")
        return QuadExtScalar(self.x / norm, -self.y / norm, self.d)

    def __truediv__(self, other: Any) -> "QuadExtScalar":
        rhs = self._lift(other)
        if rhs is None:
            return NotImplemented
        return self * rhs.inverse()

    def __rtruediv__(self, other: Any) -> "QuadExtScalar":
        lhs = self._lift(other)
        if lhs is None:
            return NotImplemented
        return lhs * self.inverse()

    def __eq__(self, other: object) -> bool:
        if isinstance(other, QuadExtScalar):
            if other.d != self.d:
                raise FieldMismatch(f"Q(sqrt {self.d}) vs Q(sqrt {other.d})")
            return self.x == other.x and self.y == other.y
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.y == 0 and self.x == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.y == 0:
            return hash(self.x)
        return hash((self.x, self.y, self.d))

    def __bool__(self) -> bool:
        return bool(self.x) or bool(self.y)

    def to_rational(self) -> Fraction:
        if self.y != 0:
            raise ValueError(f"{self} is not rational")
        return self.x

    def __repr__(self) -> str:
        return f"QuadExtScalar({format_scalar(self)!r})"

    def __str__(self) -> str:
        return format_scalar(self)


# Prime field -----------------------------------------------------------------


class PrimeScalar:
    __slots__ = ("residue", "p")

    def __init__(self, residue: int, p: int) -> None:
        self.p = int(p)
        self.residue = int(residue) % self.p

    @classmethod
    def reduce(cls, value: Fraction, p: int) -> "PrimeScalar":
        value = as_rational(value)
        if value.denominator % p == 0:
            raise BadPrime(p, str(value))
        return cls(value.numerator * pow(value.denominator, -1, p), p)

    def _lift(self, other: Any) -> Optional["PrimeScalar"]:
        if isinstance(other, PrimeScalar):
            if other.p != self.p:
                raise FieldMismatch(f"GF({self.p}) vs GF({other.p})")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return PrimeScalar.reduce(Fraction(other), self.p)
        return None

    def __add__(self, other: Any) -> "PrimeScalar":
        rhs = self._lift(other)
        if rhs is None:
            return NotImplemented
        return PrimeScalar(self.residue + rhs.residue, self.p)

    __radd__ = __add__

    def __neg__(self) -> "PrimeScalar":
        return PrimeScalar(-self.residue, self.p)

    def __sub__(self, other: Any) -> "PrimeScalar":
        rhs = self._lift(other)
        if rhs is None:
            return NotImplemented
        return PrimeScalar(self.residue - rhs.residue, self.p)

    def __rsub__(self, other: Any) -> "PrimeScalar":
        lhs = self._lift(other)
        if lhs is None:
            return NotImplemented
        return lhs - self

    def __mul__(self, other: Any) -> "PrimeScalar":
        rhs = self._lift(other)
        if rhs is None:
            return NotImplemented
        return PrimeScalar(self.residue * rhs.residue, self.p)

    __rmul__ = __mul__

    def inverse(self) -> "PrimeScalar":
        if self.residue == 0:
            raise DivisionByZero(f"inverse of zero in GF({self.p})")
        return PrimeScalar(pow(self.residue, -1, self.p), self.p)

    def __truediv__(self, other: Any) -> "PrimeScalar":
        rhs = self._lift(other)
        if rhs is None:
            return NotImplemented
        return self * rhs.inverse()

    def __rtruediv__(self, other: Any) -> "PrimeScalar":
        lhs = self._lift(other)
        if lhs is None:
            return NotImplemented
        return lhs * self.inverse()

    def __eq__(self, other: object) -> bool:
        if isinstance(other, PrimeScalar):
            if other.p != self.p:
                raise FieldMismatch(f"GF({self.p}) vs GF({other.p})")
            return self.residue == other.residue
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.residue == PrimeScalar.reduce(Fraction(other), self.p).residue
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.residue, self.p))

    def __bool__(self) -> bool:
        return self.residue != 0

    def __repr__(self) -> str:
        return f"PrimeScalar({self.residue}, {self.p})"


Scalar = Union[Fraction, QuadExtScalar, PrimeScalar]


def scalar_inverse(value: Any) -> Any:
    if isinstance(value, (QuadExtScalar, PrimeScalar)):
        return value.inverse()
    value = as_rational(value)
    if value == 0:
        raise DivisionByZero("inverse of zero")
    return 1 / value


def field_ops(a: Any, b: Any, op: str) -> Any:
    """Single entry point for field arithmetic; ``b`` is ignored by neg/inv."""

    if op in ("neg", "inv"):
        if op == "neg":
            return -a
        return scalar_inverse(a)

    left_field, right_field = field_of(a), field_of(b)
    if left_field != right_field and RATIONALS not in (left_field, right_field):
        raise FieldMismatch(f"{left_field.name} vs {right_field.name}")

    if op == "add":
        result = a + b
    elif op == "sub":
        result = a - b
    elif op == "mul":
        result = a * b
    elif op == "div":
        if b == 0:
            raise DivisionByZero("division by zero")
        result = a * scalar_inverse(b)
    elif op == "eq":
        return a == b
    else:
        raise ValueError(f"unknown field operation {op!r}")

    if isinstance(result, int):
        return Fraction(result)
    return result


# Serialization ---------------------------------------------------------------


def _format_rational(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def format_scalar(value: Any) -> str:
    if isinstance(value, QuadExtScalar):
        return f"{_format_rational(value.x)}+{_format_rational(value.y)}*sqrt({value.d})"
    if isinstance(value, PrimeScalar):
        return f"{value.residue} mod {value.p}"
    return _format_rational(as_rational(value))


def parse_scalar(text: str) -> Scalar:
    text = str(text).strip()
    if "*sqrt(" in text:
        head, _, tail = text.partition("*sqrt(")
        d = int(tail.rstrip(")"))
        # head is "x+y"; x itself may carry a leading sign.
        split_at = head.find("+", 1)
        while split_at != -1 and head[split_at - 1] in "eE":
            split_at = head.find("+", split_at + 1)
        if split_at == -1:
            raise ValueError(f"malformed quadratic scalar {text!r}")
        return QuadExtScalar(Fraction(head[:split_at]), Fraction(head[split_at + 1:]), d)
    if " mod " in text:
        residue, _, prime = text.partition(" mod ")
        return PrimeScalar(int(residue), int(prime))
    return Fraction(text)


# Modular rank ----------------------------------------------------------------


def prime_pool(count: int = DEFAULT_PRIME_COUNT, floor: int = PRIME_FLOOR) -> List[int]:
    primes: List[int] = []
    candidate = floor
    while len(primes) < count:
        candidate = int(nextprime(candidate))
        primes.append(candidate)
    return primes


def reduce_mod_p(value: Any, p: int) -> int:
    value = as_rational(value)
    if value.denominator % p == 0:
        raise BadPrime(p, str(value))
    return value.numerator * pow(value.denominator, -1, p) % p


MatrixLike = Union[Sequence[Sequence[Any]], Sequence[Mapping[int, Any]]]


def matrix_mod_p(rows: MatrixLike, p: int, ncols: Optional[int] = None) -> np.ndarray:
    """Reduce a dense (list of lists) or sparse (list of dicts) matrix mod p."""

    rows = list(rows)
    if ncols is None:
        ncols = 0
        for row in rows:
            if isinstance(row, Mapping):
                ncols = max(ncols, max(row, default=-1) + 1)
            else:
                ncols = max(ncols, len(row))
    reduced = np.zeros((len(rows), ncols), dtype=np.int64)
    for r, row in enumerate(rows):
        items: Iterable[Tuple[int, Any]] = row.items() if isinstance(row, Mapping) else enumerate(row)
        for c, value in items:
            if value:
                reduced[r, c] = reduce_mod_p(value, p)
    return reduced


def rank_of_residues(matrix: np.ndarray, p: int) -> int:
    """Gaussian elimination over GF(p) on an int64 array with entries in [0, p)."""

    work = np.array(matrix, dtype=np.int64, copy=True) % p
    nrows, ncols = work.shape
    rank = 0
    for col in range(ncols):
        if rank == nrows:
            break
        candidates = np.nonzero(work[rank:, col])[0]
        if candidates.size == 0:
            continue
        pivot = rank + int(candidates[0])
        if pivot != rank:
            work[[rank, pivot]] = work[[pivot, rank]]
        inverse = pow(int(work[rank, col]), -1, p)
        work[rank] = (work[rank] * inverse) % p
        below = work[rank + 1:, col]
        targets = np.nonzero(below)[0]
        if targets.size:
            idx = rank + 1 + targets
            work[idx] = (work[idx] - np.outer(work[idx, col], work[rank]) % p) % p
        rank += 1
    return rank


def rank_mod_p(matrix: MatrixLike, p: int, ncols: Optional[int] = None) -> int:
    """Rank over GF(p); a lower bound for the rational rank.

    Raises BadPrime when p divides one of the denominators.
    """

    return rank_of_residues(matrix_mod_p(matrix, p, ncols), p)


def matmul_mod(left: np.ndarray, right: np.ndarray, p: int) -> np.ndarray:
    """Exact product mod p through float64 BLAS, splitting ``right`` into 10-bit halves."""

    left_f = (np.asarray(left, dtype=np.int64) % p).astype(np.float64)
    right_i = np.asarray(right, dtype=np.int64) % p
    low = (right_i & 0x3FF).astype(np.float64)
    high = (right_i >> 10).astype(np.float64)
    bound = left_f.shape[1] * float(p) * 2 ** 11
    if bound >= 2 ** 53:
        raise OverflowError("matrix too wide for the float64 modular product")
    part_low = np.fmod(left_f @ low, p).astype(np.int64)
    part_high = np.fmod(left_f @ high, p).astype(np.int64)
    return (part_high * 1024 + part_low) % p
