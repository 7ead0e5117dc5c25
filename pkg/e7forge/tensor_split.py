"""The 16-dimensional modules V_alpha and exact spaces of equivariant maps."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import PairingUnavailable
from .exact_arith import matmul_mod, prime_pool, reduce_mod_p
from .fano import PLANE, FanoLabeling, Line, Pairing
from .linalg import SparseEchelon, Subspace, axpy, nullspace
from .quaternion import (
    BASIS_NAMES,
    PURE_INDICES,
    QuaternionAlgebra,
    qconj,
    qmul,
    qtensor_to_end,
    sl1_structure,
    trd,
)

Column = Dict[int, Any]
Matrix = List[Column]
ZERO = Fraction(0)
HALF = Fraction(1, 2)


# Sparse column matrices ------------------------------------------------------


def columns_from_dense(rows: Sequence[Sequence[Any]]) -> Matrix:
    size = len(rows[0]) if rows else 0
    return [{r: rows[r][c] for r in range(len(rows)) if rows[r][c]} for c in range(size)]


def identity(dim: int) -> Matrix:
    return [{c: Fraction(1)} for c in range(dim)]


def kron(left: Matrix, right: Matrix, right_rows: Optional[int] = None) -> Matrix:
    """Kronecker product; output index = row_left * rows(right) + row_right."""

    rows_right = right_rows if right_rows is not None else len(right)
    result: Matrix = []
    for left_column in left:
        for right_column in right:
            column: Column = {}
            for r1, v1 in left_column.items():
                for r2, v2 in right_column.items():
                    column[r1 * rows_right + r2] = v1 * v2
            result.append(column)
    return result


def apply(matrix: Matrix, vector: Mapping[int, Any]) -> Column:
    result: Column = {}
    for index, value in vector.items():
        axpy(result, value, matrix[index])
    return result


def matmul(left: Matrix, right: Matrix) -> Matrix:
    return [apply(left, column) for column in right]


def madd(left: Matrix, right: Matrix, coefficient: Any = 1) -> Matrix:
    return [axpy(dict(a), coefficient, b) for a, b in zip(left, right)]


def mscale(matrix: Matrix, coefficient: Any) -> Matrix:
    return [{r: coefficient * v for r, v in column.items()} for column in matrix]


def transpose(matrix: Matrix, rows: Optional[int] = None) -> Matrix:
    size = rows if rows is not None else len(matrix)
    result: Matrix = [dict() for _ in range(size)]
    for c, column in enumerate(matrix):
        for r, value in column.items():
            result[r][c] = value
    return result


def commutator(left: Matrix, right: Matrix) -> Matrix:
    return madd(matmul(left, right), matmul(right, left), -1)


def is_zero_matrix(matrix: Matrix) -> bool:
    return all(not column for column in matrix)


def dense_mod_p(matrix: Matrix, rows: int, p: int) -> np.ndarray:
    dense = np.zeros((rows, len(matrix)), dtype=np.int64)
    for c, column in enumerate(matrix):
        for r, value in column.items():
            dense[r, c] = reduce_mod_p(value, p)
    return dense


# Representations -------------------------------------------------------------


@dataclass(frozen=True)
class Representation:
    """A module for the product of the sl1(Q_point) with commuting actions.

    ``actions[point]`` holds the matrices of (i, j, k) of sl1(Q_point);
    ``spins[point]`` is the isotypic spin of that action and ``casimir[point]``
    the reduced-trace dual-basis weights of (i, j, k).
    """

    name: str
    dim: int
    labels: Tuple[str, ...]
    actions: Mapping[str, Tuple[Matrix, Matrix, Matrix]]
    spins: Mapping[str, Fraction] = field(default_factory=dict)
    casimir: Mapping[str, Tuple[Any, Any, Any]] = field(default_factory=dict)

    def dual(self) -> "Representation":
        return Representation(
            name=f"{self.name}*",
            dim=self.dim,
            labels=tuple(f"{label}*" for label in self.labels),
            actions={
                point: tuple(mscale(transpose(m, self.dim), -1) for m in gens)  # type: ignore[misc]
                for point, gens in self.actions.items()
            },
            spins=dict(self.spins),
            casimir=dict(self.casimir),
        )


@dataclass(frozen=True)
class TensorSpace:
    factors: Tuple[Representation, ...]
    antisymmetric: bool = False

    def __post_init__(self) -> None:
        if self.antisymmetric and (len(self.factors) != 2 or self.factors[0] is not self.factors[1]):
            raise ValueError("antisymmetric tensor spaces are exterior squares of one module")

    @property
    def shape(self) -> Tuple[int, ...]:
        return tuple(f.dim for f in self.factors)


@dataclass(frozen=True)
class VAlphaModule:
    line: Line
    line_name: str
    pairing: Pairing
    first: QuaternionAlgebra
    second: QuaternionAlgebra
    representation: Representation

    @property
    def basis(self) -> Tuple[str, ...]:
        return self.representation.labels

    @property
    def actions(self) -> Mapping[str, Tuple[Matrix, Matrix, Matrix]]:
        return self.representation.actions

    @property
    def dim(self) -> int:
        return self.representation.dim


def _generator_matrices(Q: QuaternionAlgebra, right_conjugate: bool) -> List[Matrix]:
    matrices = []
    for index in PURE_INDICES:
        s = Q.unit(index)
        if right_conjugate:
            dense = Q.right_matrix(qconj(s))
        else:
            dense = Q.left_matrix(s)
        matrices.append(columns_from_dense(dense))
    return matrices


def build_valpha(labeling: FanoLabeling, line: Any) -> VAlphaModule:
    """V_alpha = Q_x (x) Q_u for the pairing ((x, y), (u, v)) of the line."""

    alpha = PLANE._require(line)
    name = PLANE.line_name(alpha)
    pairing = labeling.pairing_at(alpha)
    if pairing is None:
        raise PairingUnavailable(f"line {name} has no admissible pairing")
    (x, y), (u, v) = pairing
    for first, second in pairing:
        if not labeling.symbol_at[first].same_symbol(labeling.symbol_at[second]):
            raise PairingUnavailable(f"line {name}: {first} and {second} carry different symbols")

    Qx, Qu = labeling.symbol_at[x], labeling.symbol_at[u]
    eye = identity(4)
    actions = {
        x: tuple(kron(m, eye) for m in _generator_matrices(Qx, False)),
        y: tuple(kron(m, eye) for m in _generator_matrices(Qx, True)),
        u: tuple(kron(eye, m) for m in _generator_matrices(Qu, False)),
        v: tuple(kron(eye, m) for m in _generator_matrices(Qu, True)),
    }
    labels = tuple(f"{BASIS_NAMES[r]}x{BASIS_NAMES[c]}" for r in range(4) for c in range(4))
    representation = Representation(
        name=f"V[{name}]",
        dim=16,
        labels=labels,
        actions=actions,  # type: ignore[arg-type]
        spins={p: HALF for p in (x, y, u, v)},
        casimir={p: labeling.symbol_at[p].casimir_weights() for p in (x, y, u, v)},
    )
    return VAlphaModule(alpha, name, pairing, Qx, Qu, representation)


def sl1_module(Q: QuaternionAlgebra, point: str) -> Representation:
    """Adjoint module of sl1(Q_point) on its basis (i, j, k)."""

    table = sl1_structure(Q)
    generators = tuple([table.get((s, t), {}) for t in range(3)] for s in range(3))
    return Representation(
        name=f"sl1[{point}]",
        dim=3,
        labels=tuple(f"{point}:{BASIS_NAMES[i]}" for i in PURE_INDICES),
        actions={point: generators},  # type: ignore[dict-item]
        spins={point: Fraction(1)},
        casimir={point: Q.casimir_weights()},
    )


def tensor_representation(factors: Sequence[Representation]) -> Representation:
    dims = [f.dim for f in factors]
    total = int(np.prod(dims))
    points = sorted({p for f in factors for p in f.actions})
    actions: Dict[str, Tuple[Matrix, Matrix, Matrix]] = {}
    for point in points:
        gens = []
        for s in range(3):
            summed: Matrix = [dict() for _ in range(total)]
            for position, factor in enumerate(factors):
                if point not in factor.actions:
                    continue
                term: Matrix = [{0: Fraction(1)}]
                for other, piece in enumerate(factors):
                    block = piece.actions[point][s] if other == position else identity(piece.dim)
                    term = kron(term, block, piece.dim)
                summed = madd(summed, term)
            gens.append(summed)
        actions[point] = tuple(gens)  # type: ignore[assignment]
    labels = tuple("(x)".join(parts) for parts in itertools.product(*(f.labels for f in factors)))
    return Representation("(x)".join(f.name for f in factors), total, labels, actions)


def wedge_pairs(dim: int) -> List[Tuple[int, int]]:
    return [(a, b) for a in range(dim) for b in range(a + 1, dim)]


def exterior_square(rep: Representation) -> Representation:
    pairs = wedge_pairs(rep.dim)
    index = {pair: n for n, pair in enumerate(pairs)}

    def wedge(r: int, c: int) -> Tuple[Optional[int], int]:
        if r == c:
            return None, 0
        return (index[(r, c)], 1) if r < c else (index[(c, r)], -1)

    actions: Dict[str, Tuple[Matrix, Matrix, Matrix]] = {}
    for point, gens in rep.actions.items():
        mats = []
        for matrix in gens:
            columns: Matrix = []
            for a, b in pairs:
                column: Column = {}
                for r, value in matrix[a].items():
                    slot, sign = wedge(r, b)
                    if slot is not None:
                        axpy(column, sign * value, {slot: 1})
                for r, value in matrix[b].items():
                    slot, sign = wedge(a, r)
                    if slot is not None:
                        axpy(column, sign * value, {slot: 1})
                columns.append(column)
            mats.append(columns)
        actions[point] = tuple(mats)  # type: ignore[assignment]
    labels = tuple(f"{rep.labels[a]}^{rep.labels[b]}" for a, b in pairs)
    return Representation(f"L2({rep.name})", len(pairs), labels, actions)


# Module checks ---------------------------------------------------------------


def generated_algebra_dimension(matrices: Iterable[Matrix], dim: int) -> int:
    """Dimension of the unital associative algebra generated by ``matrices``."""

    generators = list(matrices)

    def flatten(matrix: Matrix) -> Dict[int, Any]:
        return {c * dim + r: v for c, column in enumerate(matrix) for r, v in column.items()}

    echelon = SparseEchelon()
    start = identity(dim)
    echelon.add(flatten(start))
    frontier = [start]
    while frontier:
        fresh: List[Matrix] = []
        for element in frontier:
            for generator in generators:
                product = matmul(generator, element)
                if echelon.add(flatten(product)):
                    fresh.append(product)
        frontier = fresh
    return echelon.rank


def check_module(module: VAlphaModule, labeling: FanoLabeling) -> Dict[str, Any]:
    """Commutation, Lie-homomorphism and generated-algebra checks."""

    actions = module.actions
    points = list(actions)
    commute = all(
        is_zero_matrix(commutator(actions[p][s], actions[q][t]))
        for p, q in itertools.combinations(points, 2)
        for s in range(3)
        for t in range(3)
    )
    homomorphism = True
    for point in points:
        table = sl1_structure(labeling.symbol_at[point])
        for s in range(3):
            for t in range(3):
                if s == t:
                    continue
                expected: Matrix = [dict() for _ in range(module.dim)]
                for k, value in table[(s, t)].items():
                    expected = madd(expected, actions[point][k], value)
                if not is_zero_matrix(madd(commutator(actions[point][s], actions[point][t]), expected, -1)):
                    homomorphism = False
    generated = generated_algebra_dimension((m for gens in actions.values() for m in gens), module.dim)
    tensor_iso = True
    for first, second in module.pairing:
        iso = qtensor_to_end(labeling.symbol_at[first], labeling.symbol_at[second])
        tensor_iso = tensor_iso and iso.is_bijective() and iso.is_multiplicative()
    return {
        "line": module.line_name,
        "pairing": [list(pair) for pair in module.pairing],
        "commute": commute,
        "homomorphism": homomorphism,
        "generated_dimension": generated,
        "tensor_iso": tensor_iso,
        "ok": commute and homomorphism and tensor_iso and generated == module.dim ** 2,
    }


# Equivariant maps ------------------------------------------------------------

MapBasis = List[Dict[Tuple[int, ...], Dict[int, Any]]]


@dataclass
class IntertwinerSpace:
    """Basis of Hom(source, target); each map sends a source key to a target vector."""

    label: str
    dimension: int
    maps: MapBasis
    method: str
    prime: Optional[int] = None

    def to_payload(self) -> Dict[str, Any]:
        return {"label": self.label, "dimension": self.dimension, "method": self.method, "prime": self.prime}


def clebsch_gordan_spins(spins: Iterable[Fraction]) -> List[Fraction]:
    totals = {Fraction(0)}
    for spin in spins:
        combined = set()
        for total in totals:
            current = abs(total - spin)
            while current <= total + spin:
                combined.add(current)
                current += 1
        totals = combined
    return sorted(totals)


def casimir_value(spin: Fraction) -> Fraction:
    return 2 * spin * (spin + 1)


def _zeros(shape: Tuple[int, ...]) -> np.ndarray:
    return np.full(shape, ZERO, dtype=object)


def apply_axis(tensor: np.ndarray, matrix: Matrix, axis: int) -> np.ndarray:
    out = _zeros(tensor.shape)
    source = np.moveaxis(tensor, axis, 0)
    target = np.moveaxis(out, axis, 0)
    for c, column in enumerate(matrix):
        block = source[c]
        for r, value in column.items():
            target[r] = target[r] + value * block
    return out


def _act(tensor: np.ndarray, factors: Sequence[Representation], point: str, s: int) -> np.ndarray:
    out = _zeros(tensor.shape)
    for axis, factor in enumerate(factors):
        if point in factor.actions:
            out = out + apply_axis(tensor, factor.actions[point][s], axis)
    return out


def _point_data(factors: Sequence[Representation], point: str) -> Tuple[List[int], List[Fraction], Tuple[Any, Any, Any]]:
    axes = [axis for axis, f in enumerate(factors) if point in f.actions]
    spins = [factors[axis].spins[point] for axis in axes]
    weights = factors[axes[0]].casimir[point]
    return axes, spins, weights


def _apply_invariant_projector(tensor: np.ndarray, factors: Sequence[Representation]) -> np.ndarray:
    points = sorted({p for f in factors for p in f.actions})
    for point in points:
        _, spins, weights = _point_data(factors, point)
        for spin in clebsch_gordan_spins(spins):
            if spin == 0:
                continue
            value = casimir_value(spin)
            casimir = _zeros(tensor.shape)
            for s in range(3):
                casimir = casimir + _act(_act(tensor, factors, point, s), factors, point, s) * weights[s]
            tensor = (casimir - tensor * value) * (-1 / value)
    return tensor


def _projector_mod_p(factors: Sequence[Representation], axes: Sequence[int], point: str, p: int) -> np.ndarray:
    """Invariant projector of one point on the tensor of the factors in ``axes``."""

    dims = [factors[a].dim for a in axes]
    total = int(np.prod(dims))
    _, spins, weights = _point_data(factors, point)
    generators = []
    for s in range(3):
        summed = np.zeros((total, total), dtype=np.int64)
        for position, axis in enumerate(axes):
            term = np.ones((1, 1), dtype=np.int64)
            for other, other_axis in enumerate(axes):
                dim = factors[other_axis].dim
                if other == position and point in factors[other_axis].actions:
                    block = dense_mod_p(factors[other_axis].actions[point][s], dim, p)
                else:
                    block = np.eye(dim, dtype=np.int64)
                term = np.kron(term, block) % p
            if point in factors[axis].actions:
                summed = (summed + term) % p
        generators.append(summed)
    casimir = np.zeros((total, total), dtype=np.int64)
    for s in range(3):
        casimir = (casimir + matmul_mod(generators[s], generators[s], p) * reduce_mod_p(weights[s], p)) % p
    projector = np.eye(total, dtype=np.int64)
    for spin in clebsch_gordan_spins(spins):
        if spin == 0:
            continue
        value = reduce_mod_p(casimir_value(spin), p)
        factor = (casimir - value * np.eye(total, dtype=np.int64)) % p
        factor = factor * pow(-value % p, -1, p) % p
        projector = matmul_mod(projector, factor, p)
    return projector


def invariant_dimension_mod_p(factors: Sequence[Representation], p: int) -> int:
    """Trace of the product of the commuting invariant projectors, reduced mod p.

    The trace is an integer in [0, dim], so for p larger than the total
    dimension the residue is the dimension itself.
    """

    dims = [f.dim for f in factors]
    total = int(np.prod(dims))
    points = sorted({pt for f in factors for pt in f.actions})
    if total <= 1024:
        product = np.eye(total, dtype=np.int64)
        for point in points:
            product = matmul_mod(product, _projector_mod_p(factors, list(range(len(factors))), point, p), p)
        return int(np.trace(product) % p)

    if len(factors) != 3:
        raise ValueError("large invariant spaces need exactly three tensor factors")
    blocks: Dict[Tuple[int, int], np.ndarray] = {}
    for point in points:
        axes = tuple(a for a, f in enumerate(factors) if point in f.actions)
        if len(axes) != 2:
            raise ValueError(f"point {point} must act on exactly two of the three factors")
        local = _projector_mod_p(factors, axes, point, p)
        blocks[axes] = matmul_mod(blocks[axes], local, p) if axes in blocks else local
    n0, n1, n2 = dims
    x01 = blocks.get((0, 1), np.eye(n0 * n1, dtype=np.int64)).reshape(n0, n1, n0, n1)
    x02 = blocks.get((0, 2), np.eye(n0 * n2, dtype=np.int64)).reshape(n0, n2, n0, n2)
    x12 = blocks.get((1, 2), np.eye(n1 * n2, dtype=np.int64)).reshape(n1, n2, n1, n2)
    staged = np.einsum("abxy,xcaz->bcyz", x01, x02) % p
    return int(np.einsum("bcyz,yzbc->", staged, x12) % p)


def _invariant_violation(tensor: np.ndarray, factors: Sequence[Representation]) -> bool:
    for point in sorted({p for f in factors for p in f.actions}):
        for s in range(3):
            if any(value != 0 for value in _act(tensor, factors, point, s).flat):
                return True
    return False


def _tensor_to_vector(tensor: np.ndarray) -> Dict[int, Any]:
    return {index: value for index, value in enumerate(tensor.flat) if value != 0}


def _vector_to_map(vector: Mapping[int, Any], shape: Tuple[int, ...]) -> Dict[Tuple[int, ...], Dict[int, Any]]:
    result: Dict[Tuple[int, ...], Dict[int, Any]] = {}
    for flat, value in vector.items():
        target, *source = np.unravel_index(flat, shape)
        result.setdefault(tuple(int(i) for i in source), {})[int(target)] = value
    return result


def _projector_space(source: TensorSpace, target: Representation, label: str, primes: Sequence[int], seed: int) -> IntertwinerSpace:
    factors = [target] + [f.dual() for f in source.factors]
    shape = tuple(f.dim for f in factors)
    prime = primes[0]
    dimension = invariant_dimension_mod_p(factors, prime)
    if dimension == 0:
        return IntertwinerSpace(label, 0, [], "casimir-projector", prime)

    rng = random.Random(seed)
    span = Subspace.spanned_by([])
    attempts = 0
    while span.dim < dimension:
        attempts += 1
        if attempts > 4 * dimension + 8:
            raise ArithmeticError(f"{label}: could not realise {dimension} independent invariants")
        start = np.array([Fraction(rng.randint(-3, 3)) for _ in range(int(np.prod(shape)))], dtype=object).reshape(shape)
        invariant = _apply_invariant_projector(start, factors)
        if _invariant_violation(invariant, factors):
            raise ArithmeticError(f"{label}: projected tensor is not invariant")
        vector = _tensor_to_vector(invariant)
        if vector:
            span = Subspace.spanned_by(span.basis + [vector])
    maps = [_vector_to_map(vector, shape) for vector in span.rref_basis()]

    if source.antisymmetric:
        antisymmetric = []
        for basis_map in maps:
            skew: Dict[int, Any] = {}
            for (i, j), column in basis_map.items():
                for k, value in column.items():
                    axpy(skew, value * HALF, {(k * shape[1] + i) * shape[2] + j: 1})
                    axpy(skew, -value * HALF, {(k * shape[1] + j) * shape[2] + i: 1})
            antisymmetric.append(skew)
        reduced = Subspace.spanned_by([v for v in antisymmetric if v])
        maps = [
            {key: column for key, column in _vector_to_map(v, shape).items() if key[0] < key[1]}
            for v in reduced.rref_basis()
        ]
        dimension = reduced.dim
    return IntertwinerSpace(label, dimension, maps, "casimir-projector", prime)


def solve_equivariance_system(source: Representation, target: Representation, label: str = "") -> IntertwinerSpace:
    """Exact kernel of M -> M rho_source(s) - rho_target(s) M over all generators."""

    ds, dt = source.dim, target.dim
    rows: List[Dict[int, Any]] = []
    for point in sorted(set(source.actions) | set(target.actions)):
        for s in range(3):
            rho_source = source.actions[point][s] if point in source.actions else None
            rho_target_rows = transpose(target.actions[point][s], dt) if point in target.actions else None
            for t in range(dt):
                for col in range(ds):
                    row: Dict[int, Any] = {}
                    if rho_source is not None:
                        for s_prime, value in rho_source[col].items():
                            axpy(row, value, {t * ds + s_prime: 1})
                    if rho_target_rows is not None:
                        for t_prime, value in rho_target_rows[t].items():
                            axpy(row, -value, {t_prime * ds + col: 1})
                    if row:
                        rows.append(row)
    kernel = nullspace(rows, ds * dt)
    maps = []
    for vector in kernel:
        basis_map: Dict[Tuple[int, ...], Dict[int, Any]] = {}
        for unknown, value in vector.items():
            t, col = divmod(unknown, ds)
            basis_map.setdefault((col,), {})[t] = value
        maps.append(basis_map)
    return IntertwinerSpace(label or f"Hom({source.name},{target.name})", len(maps), maps, "linear-system")


def equivariant_map_space(
    source: Union[Representation, TensorSpace],
    target: Representation,
    *,
    method: str = "auto",
    primes: Optional[Sequence[int]] = None,
    seed: int = 0,
    label: str = "",
) -> IntertwinerSpace:
    """Basis of the equivariant maps source -> target.

    ``method="linear"`` solves the equivariance equations directly; the
    projector engine needs every factor to carry isotypic spin data and is
    what ``"auto"`` picks whenever that data is present.
    """

    space = source if isinstance(source, TensorSpace) else TensorSpace((source,))
    joiner = "^" if space.antisymmetric else "(x)"
    label = label or f"Hom({joiner.join(f.name for f in space.factors)},{target.name})"
    has_spins = all(set(f.spins) == set(f.actions) for f in (*space.factors, target))
    if method == "auto":
        method = "projector" if has_spins else "linear"

    if method == "linear":
        if space.antisymmetric:
            rep = exterior_square(space.factors[0])
            pairs = wedge_pairs(space.factors[0].dim)
            result = solve_equivariance_system(rep, target, label)
            result.maps = [{pairs[key[0]]: column for key, column in m.items()} for m in result.maps]
            return result
        rep = space.factors[0] if len(space.factors) == 1 else tensor_representation(space.factors)
        result = solve_equivariance_system(rep, target, label)
        if len(space.factors) > 1:
            shape = space.shape
            result.maps = [
                {tuple(int(i) for i in np.unravel_index(key[0], shape)): column for key, column in m.items()}
                for m in result.maps
            ]
        return result

    if not has_spins:
        raise ValueError("projector engine needs spin data on every factor")
    return _projector_space(space, target, label, list(primes or prime_pool(1)), seed)


# Trace-form comparison -------------------------------------------------------


def trace_form_self_map(module: VAlphaModule, point: str) -> Dict[Tuple[int, int], Dict[int, Any]]:
    """Closed-form Lambda^2 V_alpha -> sl1(Q_point) built from reduced traces.

    For V = Q_x (x) Q_u the point x receives Trd(z2 conj(z2')) (z1 conj(z1') - z1' conj(z1)),
    y the same with conj(z1) z1' - conj(z1') z1, and u, v symmetrically.
    """

    (x, y), (u, v) = module.pairing
    if point in (x, y):
        own, other, own_slot = module.first, module.second, 0
    elif point in (u, v):
        own, other, own_slot = module.second, module.first, 1
    else:
        raise ValueError(f"{point} does not act on {module.line_name}")
    right = point in (y, v)

    def factor(index: int, slot: int) -> Any:
        r, c = divmod(index, 4)
        return (r, c)[slot]

    result: Dict[Tuple[int, int], Dict[int, Any]] = {}
    for a, b in wedge_pairs(16):
        z1, z1p = own.unit(factor(a, own_slot)), own.unit(factor(b, own_slot))
        z2, z2p = other.unit(factor(a, 1 - own_slot)), other.unit(factor(b, 1 - own_slot))
        scalar = trd(qmul(z2, qconj(z2p)))
        if not scalar:
            continue
        if right:
            element = qmul(qconj(z1), z1p) - qmul(qconj(z1p), z1)
        else:
            element = qmul(z1, qconj(z1p)) - qmul(z1p, qconj(z1))
        column = {k: scalar * value for k, value in enumerate(element.coords[1:]) if value}
        if column:
            result[(a, b)] = column
    return result


def proportionality(left: Mapping[Any, Mapping[int, Any]], right: Mapping[Any, Mapping[int, Any]]) -> Optional[Any]:
    """Scalar c with left = c * right, or None when they are not proportional."""

    ratio = None
    for key in set(left) | set(right):
        lcol, rcol = left.get(key, {}), right.get(key, {})
        for index in set(lcol) | set(rcol):
            lval, rval = lcol.get(index, 0), rcol.get(index, 0)
            if not rval:
                if lval:
                    return None
                continue
            candidate = lval / rval if not isinstance(rval, int) else Fraction(lval) / rval
            if ratio is None:
                ratio = candidate
            elif candidate != ratio:
                return None
    return ratio if ratio else None


def self_bracket_space(module: VAlphaModule, target: Representation, **options: Any) -> IntertwinerSpace:
    """Hom(Lambda^2 V_alpha, sl1(Q_v)); expected to be a line for each point of the quadruple."""

    space = TensorSpace((module.representation, module.representation), antisymmetric=True)
    return equivariant_map_space(space, target, **options)


def cross_bracket_space(first: VAlphaModule, second: VAlphaModule, target: VAlphaModule, **options: Any) -> IntertwinerSpace:
    """Hom(V_alpha (x) V_beta, V_gamma) for gamma = alpha + beta."""

    space = TensorSpace((first.representation, second.representation))
    return equivariant_map_space(space, target.representation, **options)
