"""Sparse exact linear algebra over any exact field.

Vectors are ``dict`` objects mapping a sortable key (usually an ``int``) to a
nonzero scalar. Every routine here works for Fractions, quadratic-extension
scalars and prime-field scalars alike.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple

from .errors import BadPrime, DivisionByZero, NotInSpan
from .exact_arith import rank_mod_p, scalar_inverse

Vector = Dict[Hashable, Any]


def axpy(target: Vector, coefficient: Any, source: Mapping[Hashable, Any]) -> Vector:
    """In place: target += coefficient * source. Zero entries are dropped."""

    if not coefficient:
        return target
    for key, value in source.items():
        updated = target.get(key, 0) + coefficient * value
        if updated:
            target[key] = updated
        else:
            target.pop(key, None)
    return target


def scale(vector: Mapping[Hashable, Any], coefficient: Any) -> Vector:
    if not coefficient:
        return {}
    return {key: coefficient * value for key, value in vector.items()}


def add(left: Mapping[Hashable, Any], right: Mapping[Hashable, Any]) -> Vector:
    return axpy(dict(left), 1, right)


def sub(left: Mapping[Hashable, Any], right: Mapping[Hashable, Any]) -> Vector:
    return axpy(dict(left), -1, right)


def combine(terms: Iterable[Tuple[Any, Mapping[Hashable, Any]]]) -> Vector:
    result: Vector = {}
    for coefficient, vector in terms:
        axpy(result, coefficient, vector)
    return result


class SparseEchelon:
    """Incremental, fully reduced row echelon form.

    Each stored row has value 1 at its pivot and 0 at every other pivot column.
    With ``track=True`` every row also carries its combination of the inserted
    vectors (keyed by insertion tag).
    """

    def __init__(self, track: bool = False) -> None:
        self.track = track
        self.rows: Dict[Hashable, Vector] = {}
        self.transforms: Dict[Hashable, Vector] = {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> List[Hashable]:
        return sorted(self.rows)

    def reduce(self, vector: Mapping[Hashable, Any], transform: Optional[Vector] = None) -> Tuple[Vector, Vector]:
        residual = dict(vector)
        combination = dict(transform or {})
        for column in [key for key in residual if key in self.rows]:
            coefficient = residual.get(column)
            if not coefficient:
                continue
            axpy(residual, -coefficient, self.rows[column])
            if self.track:
                axpy(combination, -coefficient, self.transforms[column])
        return residual, combination

    def add(self, vector: Mapping[Hashable, Any], tag: Hashable = None) -> bool:
        """Insert a vector; returns False when it is dependent on earlier ones."""

        residual, combination = self.reduce(vector, {tag: 1} if self.track else None)
        if not residual:
            return False
        pivot = min(residual)
        inverse = scalar_inverse(residual[pivot])
        residual = scale(residual, inverse)
        combination = scale(combination, inverse) if self.track else {}
        for column, row in self.rows.items():
            coefficient = row.get(pivot)
            if coefficient:
                axpy(row, -coefficient, residual)
                if self.track:
                    axpy(self.transforms[column], -coefficient, combination)
        self.rows[pivot] = residual
        if self.track:
            self.transforms[pivot] = combination
        return True


def exact_rank(rows: Iterable[Mapping[Hashable, Any]]) -> int:
    echelon = SparseEchelon()
    for row in rows:
        echelon.add(row)
    return echelon.rank


def nullspace(rows: Iterable[Mapping[int, Any]], ncols: int) -> List[Vector]:
    """Basis of {x : row . x = 0 for every row}, one vector per free column."""

    echelon = SparseEchelon()
    for row in rows:
        if row:
            echelon.add(row)
    basis: List[Vector] = []
    for free in range(ncols):
        if free in echelon.rows:
            continue
        vector: Vector = {free: Fraction(1)}
        for pivot, row in echelon.rows.items():
            coefficient = row.get(free)
            if coefficient:
                vector[pivot] = -coefficient
        basis.append(vector)
    return basis


class Subspace:
    """Span of independent vectors with exact coordinate extraction."""

    def __init__(self, basis: Sequence[Mapping[Hashable, Any]], *, allow_dependent: bool = False) -> None:
        self.echelon = SparseEchelon(track=True)
        self.basis: List[Vector] = []
        self.kept: List[int] = []
        for index, vector in enumerate(basis):
            if self.echelon.add(vector, tag=len(self.basis)):
                self.basis.append(dict(vector))
                self.kept.append(index)
            elif not allow_dependent:
                raise ValueError(f"basis vector {index} is linearly dependent on earlier ones")

    @classmethod
    def spanned_by(cls, vectors: Sequence[Mapping[Hashable, Any]]) -> "Subspace":
        return cls(vectors, allow_dependent=True)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def residual(self, vector: Mapping[Hashable, Any]) -> Vector:
        return self.echelon.reduce(vector)[0]

    def contains(self, vector: Mapping[Hashable, Any]) -> bool:
        return not self.residual(vector)

    def coordinates(self, vector: Mapping[Hashable, Any], *, check: bool = True) -> Dict[int, Any]:
        """Coefficients c with vector = sum c[k] * basis[k]."""

        coords: Dict[int, Any] = {}
        rows = self.echelon.rows
        for key, value in vector.items():
            if key in rows:
                axpy(coords, value, self.echelon.transforms[key])
        if check:
            rebuilt = self.vector(coords)
            if sub(vector, rebuilt):
                raise NotInSpan("vector does not lie in the subspace")
        return coords

    def vector(self, coordinates: Mapping[int, Any]) -> Vector:
        return combine((value, self.basis[index]) for index, value in coordinates.items())

    def rref_basis(self) -> List[Vector]:
        return [dict(self.echelon.rows[pivot]) for pivot in self.echelon.pivots]


def dense_inverse(matrix: Sequence[Sequence[Any]]) -> List[List[Any]]:
    """Gauss-Jordan inverse of a square matrix over an exact field."""

    size = len(matrix)
    work = [list(row) + [Fraction(int(r == c)) for c in range(size)] for r, row in enumerate(matrix)]
    for col in range(size):
        pivot = next((r for r in range(col, size) if work[r][col]), None)
        if pivot is None:
            raise DivisionByZero("matrix is singular")
        work[col], work[pivot] = work[pivot], work[col]
        inverse = scalar_inverse(work[col][col])
        work[col] = [value * inverse for value in work[col]]
        for r in range(size):
            if r != col and work[r][col]:
                factor = work[r][col]
                work[r] = [a - factor * b for a, b in zip(work[r], work[col])]
    return [row[size:] for row in work]


def certified_rank(rows: Sequence[Mapping[int, Any]], ncols: int, primes: Sequence[int]) -> Tuple[int, str]:
    """Rank with its certificate: ``"mod p"`` when full rank shows up modulo a
    pool prime, ``"exact"`` when exact elimination had to decide."""

    rows = list(rows)
    bound = min(len(rows), ncols)
    for p in primes:
        try:
            if rank_mod_p(rows, p, ncols) == bound:
                return bound, f"mod {p}"
        except BadPrime:
            continue
        except (TypeError, ValueError):
            break
        break
    return exact_rank(rows), "exact"


def modular_ranks(rows: Sequence[Mapping[int, Any]], ncols: int, primes: Sequence[int]) -> Dict[str, Optional[int]]:
    """Rank modulo each prime; ``None`` where the prime divides a denominator
    or the entries have no reduction (non-rational fields)."""

    rows = list(rows)
    ranks: Dict[str, Optional[int]] = {}
    for p in primes:
        try:
            ranks[str(p)] = rank_mod_p(rows, p, ncols)
        except (BadPrime, TypeError, ValueError):
            ranks[str(p)] = None
    return ranks
