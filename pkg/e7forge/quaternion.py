"""Quaternion algebras (a, b) over an exact field."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .errors import AlgebraMismatch, NotSplitHere, SymbolMismatch
from .exact_arith import RATIONALS, FieldDescriptor, format_scalar, scalar_inverse
from .linalg import exact_rank

BASIS_NAMES = ("1", "i", "j", "k")
# Indices of the trace-zero basis (i, j, k) of sl1(Q).
PURE_INDICES = (1, 2, 3)

Matrix4 = List[List[Any]]


@dataclass(frozen=True)
class QuaternionAlgebra:
    a: Any
    b: Any
    declared_split: bool = False
    field: FieldDescriptor = field(default=RATIONALS, compare=False)

    def __post_init__(self) -> None:
        a = self.field.coerce(self.a)
        b = self.field.coerce(self.b)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        if not a or not b:
            raise ValueError("quaternion symbols must be nonzero")
        if self.declared_split and (a != 1 or b != 1):
            raise ValueError("declared split algebras must use the presentation (1,1)")

    @property
    def symbol(self) -> Tuple[Any, Any]:
        return (self.a, self.b)

    def symbol_strings(self) -> List[str]:
        return [format_scalar(self.a), format_scalar(self.b)]

    def same_symbol(self, other: "QuaternionAlgebra") -> bool:
        return self.a == other.a and self.b == other.b

    def over(self, target: FieldDescriptor) -> "QuaternionAlgebra":
        return QuaternionAlgebra(target.coerce(self.a), target.coerce(self.b), self.declared_split, target)

    def element(self, *coords: Any) -> "QuatElement":
        if len(coords) == 1 and isinstance(coords[0], (list, tuple)):
            coords = tuple(coords[0])
        if len(coords) != 4:
            raise ValueError("a quaternion has four coordinates")
        return QuatElement(tuple(self.field.coerce(c) for c in coords), self)

    def unit(self, index: int) -> "QuatElement":
        return self.element(*[int(i == index) for i in range(4)])

    @property
    def one(self) -> "QuatElement":
        return self.unit(0)

    def basis(self) -> List["QuatElement"]:
        return [self.unit(i) for i in range(4)]

    def product_coordinates(self, x: Sequence[Any], y: Sequence[Any]) -> Tuple[Any, Any, Any, Any]:
        a, b = self.a, self.b
        x0, x1, x2, x3 = x
        y0, y1, y2, y3 = y
        return (
            x0 * y0 + a * x1 * y1 + b * x2 * y2 - a * b * x3 * y3,
            x0 * y1 + x1 * y0 - b * x2 * y3 + b * x3 * y2,
            x0 * y2 + x2 * y0 + a * x1 * y3 - a * x3 * y1,
            x0 * y3 + x3 * y0 + x1 * y2 - x2 * y1,
        )

    def left_matrix(self, s: "QuatElement") -> Matrix4:
        """Matrix (rows = output coordinate) of z -> s z."""

        return self._matrix_of(lambda z: qmul(s, z))

    def right_matrix(self, s: "QuatElement") -> Matrix4:
        """Matrix of z -> z s."""

        return self._matrix_of(lambda z: qmul(z, s))

    def _matrix_of(self, function) -> Matrix4:
        columns = [function(self.unit(c)).coords for c in range(4)]
        return [[columns[c][r] for c in range(4)] for r in range(4)]

    def commutator(self, x: "QuatElement", y: "QuatElement") -> "QuatElement":
        return qmul(x, y) - qmul(y, x)

    def sl1_coordinates(self, x: "QuatElement") -> Tuple[Any, Any, Any]:
        if x.coords[0]:
            raise ValueError("element is not trace-zero")
        return x.coords[1], x.coords[2], x.coords[3]

    def casimir_weights(self) -> Tuple[Any, Any, Any]:
        """Dual-basis factors of (i, j, k) under the reduced trace form Trd(xy)."""

        a, b = self.a, self.b
        return (
            scalar_inverse(2 * a),
            scalar_inverse(2 * b),
            -scalar_inverse(2 * a * b),
        )

    def __str__(self) -> str:
        return f"({format_scalar(self.a)},{format_scalar(self.b)})"


@dataclass(frozen=True)
class QuatElement:
    coords: Tuple[Any, Any, Any, Any]
    algebra: QuaternionAlgebra

    def _check(self, other: "QuatElement") -> None:
        if not isinstance(other, QuatElement):
            raise TypeError("expected a quaternion")
        if other.algebra is not self.algebra and other.algebra != self.algebra:
            raise AlgebraMismatch(f"{self.algebra} vs {other.algebra}")

    def __add__(self, other: "QuatElement") -> "QuatElement":
        self._check(other)
        return QuatElement(tuple(x + y for x, y in zip(self.coords, other.coords)), self.algebra)

    def __sub__(self, other: "QuatElement") -> "QuatElement":
        self._check(other)
        return QuatElement(tuple(x - y for x, y in zip(self.coords, other.coords)), self.algebra)

    def __neg__(self) -> "QuatElement":
        return QuatElement(tuple(-x for x in self.coords), self.algebra)

    def __mul__(self, other: Any) -> "QuatElement":
        if isinstance(other, QuatElement):
            return qmul(self, other)
        coefficient = self.algebra.field.coerce(other)
        return QuatElement(tuple(coefficient * x for x in self.coords), self.algebra)

    def __rmul__(self, other: Any) -> "QuatElement":
        coefficient = self.algebra.field.coerce(other)
        return QuatElement(tuple(coefficient * x for x in self.coords), self.algebra)

    def __truediv__(self, other: Any) -> "QuatElement":
        return self * scalar_inverse(self.algebra.field.coerce(other))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QuatElement):
            return NotImplemented
        return self.algebra == other.algebra and all(x == y for x, y in zip(self.coords, other.coords))

    def __hash__(self) -> int:
        return hash(self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __str__(self) -> str:
        parts = [f"{format_scalar(c)}{'' if n == '1' else '*' + n}" for c, n in zip(self.coords, BASIS_NAMES) if c]
        return " + ".join(parts) or "0"


def qmul(x: QuatElement, y: QuatElement) -> QuatElement:
    x._check(y)
    return QuatElement(x.algebra.product_coordinates(x.coords, y.coords), x.algebra)


def qconj(x: QuatElement) -> QuatElement:
    x0, x1, x2, x3 = x.coords
    return QuatElement((x0, -x1, -x2, -x3), x.algebra)


def trd(x: QuatElement) -> Any:
    return 2 * x.coords[0]


def nrd(x: QuatElement) -> Any:
    a, b = x.algebra.a, x.algebra.b
    x0, x1, x2, x3 = x.coords
    return x0 * x0 - a * x1 * x1 - b * x2 * x2 + a * b * x3 * x3


def qconj_trd_nrd(x: QuatElement) -> Tuple[QuatElement, Any, Any]:
    return qconj(x), trd(x), nrd(x)


@dataclass(frozen=True)
class MatrixUnits:
    e11: QuatElement
    e12: QuatElement
    e21: QuatElement
    e22: QuatElement
    root: Any
    slot: str

    def as_tuple(self) -> Tuple[QuatElement, QuatElement, QuatElement, QuatElement]:
        return self.e11, self.e12, self.e21, self.e22

    @property
    def h(self) -> QuatElement:
        return self.e11 - self.e22


def split_matrix_units(Q: QuaternionAlgebra) -> MatrixUnits:
    """Matrix units of Q from a square slot t**2 = a (or t**2 = b).

    e11 = (1 + u/t)/2 with u the generator squaring to t**2, e12 = e11*w and
    e21 = e22*w/c where w is the other generator and w**2 = c.
    """

    i, j = Q.unit(1), Q.unit(2)
    root = Q.field.sqrt(Q.a)
    if root is not None:
        u, w, c, slot = i, j, Q.b, "a"
    else:
        root = Q.field.sqrt(Q.b)
        if root is None:
            raise NotSplitHere(f"{Q} has no square slot over {Q.field.name}")
        u, w, c, slot = j, i, Q.a, "b"

    e11 = (Q.one + u / root) / 2
    e22 = Q.one - e11
    e12 = qmul(e11, w)
    e21 = qmul(e22, w) / c
    return MatrixUnits(e11, e12, e21, e22, root, slot)


class QTensorMap:
    """The map x (x) y -> (z -> x z conj(y)) from Q (x) Q to End(Q)."""

    def __init__(self, Q: QuaternionAlgebra) -> None:
        self.algebra = Q

    def image(self, x: QuatElement, y: QuatElement) -> Matrix4:
        y_bar = qconj(y)
        return self.algebra._matrix_of(lambda z: qmul(qmul(x, z), y_bar))

    def basis_image(self, r: int, c: int) -> Matrix4:
        return self.image(self.algebra.unit(r), self.algebra.unit(c))

    def coefficient_matrix(self) -> List[List[Any]]:
        """16 x 16: one flattened image per basis tensor e_r (x) e_c."""

        rows = []
        for r in range(4):
            for c in range(4):
                image = self.basis_image(r, c)
                rows.append([image[p][q] for p in range(4) for q in range(4)])
        return rows

    def is_bijective(self) -> bool:
        rows = self.coefficient_matrix()
        return exact_rank({k: v for k, v in enumerate(row) if v} for row in rows) == 16

    def is_multiplicative(self) -> bool:
        """image(e_a e_c, e_b e_d) == image(e_a, e_b) image(e_c, e_d) on all basis tensors."""

        Q = self.algebra
        for a, b, c, d in itertools.product(range(4), repeat=4):
            left = self.image(qmul(Q.unit(a), Q.unit(c)), qmul(Q.unit(b), Q.unit(d)))
            if left != matmul4(self.basis_image(a, b), self.basis_image(c, d)):
                return False
        return True


def qtensor_to_end(Q: QuaternionAlgebra, partner: Optional[QuaternionAlgebra] = None) -> QTensorMap:
    if partner is not None and not Q.same_symbol(partner):
        raise SymbolMismatch(f"cannot pair {Q} with {partner}")
    return QTensorMap(Q)


def matmul4(left: Matrix4, right: Matrix4) -> Matrix4:
    size = len(left)
    return [
        [sum((left[r][k] * right[k][c] for k in range(size)), Fraction(0)) for c in range(size)]
        for r in range(size)
    ]


def symbol_from_strings(values: Sequence[Any], declared_split: bool, target: FieldDescriptor = RATIONALS) -> QuaternionAlgebra:
    if len(values) != 2:
        raise ValueError("a symbol is a pair [a, b]")
    return QuaternionAlgebra(target.coerce(values[0]), target.coerce(values[1]), declared_split, target)


def sl1_structure(Q: QuaternionAlgebra) -> Dict[Tuple[int, int], Dict[int, Any]]:
    """Commutators of the basis (i, j, k) of sl1(Q), indexed 0..2."""

    table: Dict[Tuple[int, int], Dict[int, Any]] = {}
    for s in range(3):
        for t in range(3):
            if s == t:
                continue
            bracket = Q.commutator(Q.unit(PURE_INDICES[s]), Q.unit(PURE_INDICES[t]))
            table[(s, t)] = {k: value for k, value in enumerate(Q.sl1_coordinates(bracket)) if value}
    return table
