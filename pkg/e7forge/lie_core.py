"""Lie algebras given by sparse structure constants.

An :class:`SCAlgebra` stores ``brackets[i][j] = {k: c}`` for the basis
brackets ``[b_i, b_j] = sum_k c b_k``; both orders of every pair are kept.
Elements are sparse vectors (``dict`` index -> scalar) as in :mod:`e7forge.linalg`.
"""

from __future__ import annotations

import itertools
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from dataclasses import field as dc_field
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from sympy import Matrix, zeros

from .config import DEFAULT_PRIME_COUNT, FULL_JACOBI_MAX_DIM
from .errors import (
    DegenerateOnS,
    GoldenFormatError,
    NotCartan,
    NotInSpan,
    NotSemisimpleOverField,
    NotSplit,
    Unrecognized,
)
from .exact_arith import (
    RATIONALS,
    FieldDescriptor,
    QuadField,
    format_scalar,
    parse_field,
    parse_scalar,
    prime_pool,
)
from .linalg import Subspace, Vector, axpy, certified_rank, combine, dense_inverse, exact_rank, nullspace

Bracket = Dict[int, Dict[int, Dict[int, Any]]]
EIGENVALUE_BOUND = 16


@dataclass
class SCAlgebra:
    names: Tuple[str, ...]
    brackets: Bracket
    field: FieldDescriptor = RATIONALS
    _killing: Optional["KillingForm"] = dc_field(default=None, repr=False, compare=False)

    @classmethod
    def from_table(
        cls,
        names: Sequence[str],
        table: Mapping[Tuple[int, int], Mapping[int, Any]],
        field: FieldDescriptor = RATIONALS,
    ) -> "SCAlgebra":
        """Build from brackets of ordered pairs i < j; the other order is filled in."""

        brackets: Bracket = {}
        for (i, j), vector in table.items():
            if i == j:
                if any(vector.values()):
                    raise ValueError(f"[b_{i}, b_{i}] must vanish")
                continue
            clean = {k: field.coerce(v) for k, v in vector.items() if v}
            if not clean:
                continue
            brackets.setdefault(i, {})[j] = clean
            brackets.setdefault(j, {})[i] = {k: -v for k, v in clean.items()}
        return cls(tuple(names), brackets, field)

    @property
    def dim(self) -> int:
        return len(self.names)

    def basis_bracket(self, i: int, j: int) -> Dict[int, Any]:
        return self.brackets.get(i, {}).get(j, {})

    def bracket(self, x: Mapping[int, Any], y: Mapping[int, Any]) -> Vector:
        result: Vector = {}
        for i, xi in x.items():
            row = self.brackets.get(i)
            if not row:
                continue
            for j, yj in y.items():
                vector = row.get(j)
                if vector:
                    axpy(result, xi * yj, vector)
        return result

    def ad(self, x: Mapping[int, Any]) -> List[Vector]:
        """Columns of ad x: column j is [x, b_j]."""

        return [self.bracket(x, {j: 1}) for j in range(self.dim)]

    def entries(self) -> Iterable[Tuple[int, int, int, Any]]:
        for i in sorted(self.brackets):
            row = self.brackets[i]
            for j in sorted(row):
                for k in sorted(row[j]):
                    yield i, j, k, row[j][k]

    def unit(self, name: str) -> Vector:
        return {self.names.index(name): self.field.coerce(1)}

    def describe(self, vector: Mapping[int, Any]) -> str:
        parts = [f"{format_scalar(v)}*{self.names[k]}" for k, v in sorted(vector.items())]
        return " + ".join(parts) or "0"


# Golden files ----------------------------------------------------------------


def algebra_to_payload(L: SCAlgebra) -> Dict[str, Any]:
    return {
        "dim": L.dim,
        "names": list(L.names),
        "field": L.field.name,
        "c": [[i, j, k, format_scalar(v)] for i, j, k, v in L.entries()],
    }


def algebra_from_payload(payload: Mapping[str, Any]) -> SCAlgebra:
    """Load the sparse golden format, rejecting entries that break antisymmetry."""

    try:
        dim = int(payload["dim"])
        names = tuple(str(n) for n in payload["names"])
        field_name = payload.get("field", "QQ")
        entries = payload["c"]
    except (KeyError, TypeError, ValueError) as exc:
        raise GoldenFormatError(f"malformed golden header: {exc}") from exc
    if len(names) != dim:
        raise GoldenFormatError(f"{len(names)} names for dimension {dim}")
    target = parse_field(field_name)

    brackets: Bracket = {}
    for entry in entries:
        if not isinstance(entry, (list, tuple)) or len(entry) != 4:
            raise GoldenFormatError("entries are [i, j, k, value]", entry)
        i, j, k, text = entry
        if not all(isinstance(n, int) and 0 <= n < dim for n in (i, j, k)):
            raise GoldenFormatError("index out of range", entry)
        try:
            value = target.coerce(parse_scalar(str(text)))
        except (ValueError, ZeroDivisionError) as exc:
            raise GoldenFormatError(f"bad scalar: {exc}", entry) from exc
        if i == j and value:
            raise GoldenFormatError("diagonal bracket must vanish", entry)
        if value:
            brackets.setdefault(i, {}).setdefault(j, {})[k] = value

    for i, row in brackets.items():
        for j, vector in row.items():
            mirror = brackets.get(j, {}).get(i, {})
            for k, value in vector.items():
                if mirror.get(k, 0) != -value:
                    raise GoldenFormatError("antisymmetry violated", [i, j, k, format_scalar(value)])
            for k in mirror:
                if k not in vector:
                    raise GoldenFormatError("antisymmetry violated", [j, i, k, format_scalar(mirror[k])])
    return SCAlgebra(names, brackets, target)


# Jacobi ----------------------------------------------------------------------


@dataclass
class JacobiReport:
    mode: str
    triples_checked: int
    passed: bool
    witness: Optional[Tuple[str, str, str]] = None
    witness_indices: Optional[Tuple[int, int, int]] = None
    residual: Dict[str, str] = field(default_factory=dict)

    def to_payload(self) -> Dict[str, Any]:
        return {
            "mode": self.mode,
            "triples_checked": self.triples_checked,
            "passed": self.passed,
            "witness": list(self.witness) if self.witness else None,
            "residual": self.residual,
        }


def _double_bracket(brackets: Bracket, i: int, j: int, k: int) -> Vector:
    """[[b_i, b_j], b_k]."""

    result: Vector = {}
    inner = brackets.get(i, {}).get(j)
    if not inner:
        return result
    for m, value in inner.items():
        outer = brackets.get(m, {}).get(k)
        if outer:
            axpy(result, value, outer)
    return result


def jacobiator(brackets: Bracket, i: int, j: int, k: int) -> Vector:
    result = _double_bracket(brackets, i, j, k)
    axpy(result, 1, _double_bracket(brackets, j, k, i))
    axpy(result, 1, _double_bracket(brackets, k, i, j))
    return result


def _jacobi_chunk(args: Tuple[Bracket, int, Sequence[int]]) -> Tuple[int, Optional[Tuple[int, int, int]]]:
    brackets, dim, firsts = args
    checked = 0
    for i in firsts:
        for j in range(i + 1, dim):
            for k in range(j + 1, dim):
                checked += 1
                if jacobiator(brackets, i, j, k):
                    return checked, (i, j, k)
    return checked, None


def jacobi_check(
    L: SCAlgebra,
    mode: str = "auto",
    *,
    samples: int = 1000,
    seed: int = 0,
    threads: int = 1,
) -> JacobiReport:
    """Jacobi identity on basis triples; the witness is the first failure in lexicographic order."""

    if mode == "auto":
        mode = "full" if L.dim <= FULL_JACOBI_MAX_DIM else "sampled"

    if mode == "sampled":
        rng = random.Random(seed)
        failures = []
        for _ in range(samples):
            triple = tuple(sorted(rng.sample(range(L.dim), 3))) if L.dim >= 3 else None
            if triple and jacobiator(L.brackets, *triple):
                failures.append(triple)
        return _jacobi_report(L, "sampled", samples, min(failures) if failures else None)

    if mode != "full":
        raise ValueError(f"unknown Jacobi mode {mode!r}")

    if threads > 1 and L.dim > 3:
        chunks = [list(range(start, L.dim, threads)) for start in range(threads)]
        with ProcessPoolExecutor(max_workers=threads) as executor:
            results = list(executor.map(_jacobi_chunk, [(L.brackets, L.dim, chunk) for chunk in chunks]))
        failures = [witness for _, witness in results if witness is not None]
        if failures:
            # a failing chunk stops early; rescan up to the earliest witness for the exact count
            witness = min(failures)
            return _jacobi_report(L, "full", _count_until(L.dim, witness), witness)
        return _jacobi_report(L, "full", sum(count for count, _ in results), None)

    checked, witness = _jacobi_chunk((L.brackets, L.dim, range(L.dim)))
    return _jacobi_report(L, "full", checked, witness)


def _count_until(dim: int, witness: Tuple[int, int, int]) -> int:
    return sum(1 for triple in itertools.combinations(range(dim), 3) if triple <= witness)


def _jacobi_report(L: SCAlgebra, mode: str, checked: int, witness: Optional[Tuple[int, int, int]]) -> JacobiReport:
    if witness is None:
        return JacobiReport(mode, checked, True)
    residual = jacobiator(L.brackets, *witness)
    return JacobiReport(
        mode,
        checked,
        False,
        tuple(L.names[n] for n in witness),  # type: ignore[arg-type]
        witness,
        {L.names[k]: format_scalar(v) for k, v in sorted(residual.items())},
    )


# Killing form ----------------------------------------------------------------


@dataclass
class KillingForm:
    rows: List[Dict[int, Any]]
    rank: int
    certificate: str

    @property
    def nondegenerate(self) -> bool:
        return self.rank == len(self.rows)

    def value(self, x: Mapping[int, Any], y: Mapping[int, Any]) -> Any:
        total: Any = 0
        for i, xi in x.items():
            row = self.rows[i]
            for j, yj in y.items():
                entry = row.get(j)
                if entry:
                    total = total + xi * yj * entry
        return total

    def gram(self, vectors: Sequence[Mapping[int, Any]]) -> List[List[Any]]:
        return [[self.value(a, b) for b in vectors] for a in vectors]

    def to_payload(self) -> Dict[str, Any]:
        return {"rank": self.rank, "certificate": self.certificate, "nondegenerate": self.nondegenerate}


def killing(L: SCAlgebra, primes: Optional[Sequence[int]] = None) -> KillingForm:
    """K_ij = trace(ad b_i ad b_j) = sum over m, k of c_im^k c_jk^m."""

    if L._killing is not None:
        return L._killing
    # per basis element: {(m, k): c_im^k} and its transposed lookup {(m, k): c_ik^m}
    forward: List[Dict[Tuple[int, int], Any]] = []
    backward: List[Dict[Tuple[int, int], Any]] = []
    for i in range(L.dim):
        row = L.brackets.get(i, {})
        forward.append({(m, k): v for m, vector in row.items() for k, v in vector.items()})
        backward.append({(k, m): v for m, vector in row.items() for k, v in vector.items()})
    rows: List[Dict[int, Any]] = [dict() for _ in range(L.dim)]
    for i in range(L.dim):
        if not forward[i]:
            continue
        for j in range(i, L.dim):
            lookup = backward[j]
            total: Any = 0
            for key, value in forward[i].items():
                other = lookup.get(key)
                if other:
                    total = total + value * other
            if total:
                rows[i][j] = total
                rows[j][i] = total
    rank, certificate = certified_rank(rows, L.dim, primes or prime_pool(DEFAULT_PRIME_COUNT))
    L._killing = KillingForm(rows, rank, certificate)
    return L._killing


def base_change(L: SCAlgebra, d: int) -> SCAlgebra:
    """The same structure constants over Q(sqrt d)."""

    target = QuadField(d)
    brackets: Bracket = {
        i: {j: {k: target.coerce(v) for k, v in vector.items()} for j, vector in row.items()}
        for i, row in L.brackets.items()
    }
    return SCAlgebra(L.names, brackets, target)


def subalgebra(L: SCAlgebra, basis: Sequence[Mapping[int, Any]], names: Optional[Sequence[str]] = None) -> SCAlgebra:
    """Structure constants of a bracket-closed subspace in its own basis."""

    span = Subspace(basis)
    table: Dict[Tuple[int, int], Dict[int, Any]] = {}
    for a, b in itertools.combinations(range(span.dim), 2):
        image = L.bracket(span.basis[a], span.basis[b])
        try:
            table[(a, b)] = span.coordinates(image)
        except NotInSpan as exc:
            raise NotInSpan(f"subspace is not closed: bracket of basis {a} and {b} leaves it") from exc
    labels = list(names) if names is not None else [f"s{n}" for n in range(span.dim)]
    return SCAlgebra.from_table(labels, table, L.field)


def is_closed(L: SCAlgebra, basis: Sequence[Mapping[int, Any]], against: Optional[Sequence[Mapping[int, Any]]] = None) -> bool:
    """[against, basis] inside span(basis); ``against`` defaults to the basis itself."""

    span = Subspace.spanned_by(basis)
    others = basis if against is None else against
    return all(span.contains(L.bracket(x, y)) for x in others for y in basis)


# Adjoint eigenspaces ---------------------------------------------------------


def _candidate_eigenvalues(expected: Optional[Sequence[Any]]) -> List[Any]:
    if expected is not None:
        return list(expected)
    values: List[Any] = [0]
    for n in range(1, EIGENVALUE_BOUND + 1):
        values.extend((n, -n))
    return values


def ad_eigendecomposition(
    L: SCAlgebra,
    h: Mapping[int, Any],
    expected: Optional[Sequence[Any]] = None,
    within: Optional[Sequence[Mapping[int, Any]]] = None,
) -> Dict[Any, List[Vector]]:
    """Exact eigenspaces of ad h on ``within`` (default: all of L).

    Raises NotSemisimpleOverField when the eigenspaces for the candidate
    eigenvalues do not fill the space.
    """

    vectors = list(within) if within is not None else [{n: L.field.coerce(1)} for n in range(L.dim)]
    span = Subspace(vectors)
    size = span.dim
    rows: List[Dict[int, Any]] = [dict() for _ in range(size)]
    for c, vector in enumerate(span.basis):
        image = L.bracket(h, vector)
        try:
            coords = span.coordinates(image)
        except NotInSpan as exc:
            raise NotInSpan("subspace is not stable under ad h") from exc
        for r, value in coords.items():
            rows[r][c] = value

    spaces: Dict[Any, List[Vector]] = {}
    filled = 0
    for value in _candidate_eigenvalues(expected):
        shifted = [axpy(dict(row), -value, {r: 1}) for r, row in enumerate(rows)]
        kernel = nullspace(shifted, size)
        if kernel:
            spaces[value] = [span.vector(coords) for coords in kernel]
            filled += len(kernel)
        if filled == size:
            break
    if filled != size:
        raise NotSemisimpleOverField(
            f"eigenspaces of ad h cover {filled} of {size} dimensions over {L.field.name}"
        )
    return spaces


def simultaneous_eigenspaces(
    L: SCAlgebra,
    elements: Sequence[Mapping[int, Any]],
    within: Optional[Sequence[Mapping[int, Any]]] = None,
    expected: Optional[Sequence[Any]] = None,
) -> Dict[Tuple[Any, ...], List[Vector]]:
    pieces: Dict[Tuple[Any, ...], List[Vector]] = {
        (): list(within) if within is not None else [{n: L.field.coerce(1)} for n in range(L.dim)]
    }
    for element in elements:
        refined: Dict[Tuple[Any, ...], List[Vector]] = {}
        for weight, basis in pieces.items():
            for value, vectors in ad_eigendecomposition(L, element, expected, basis).items():
                refined[weight + (value,)] = vectors
        pieces = refined
    return pieces


# Root data -------------------------------------------------------------------


@dataclass
class RootDatum:
    cartan: List[Vector]
    roots: List[Tuple[Any, ...]]
    root_spaces: Dict[Tuple[Any, ...], List[Vector]]
    gram: List[List[Any]]
    gram_inverse: List[List[Any]]

    @property
    def rank(self) -> int:
        return len(self.cartan)

    def inner(self, left: Sequence[Any], right: Sequence[Any]) -> Any:
        total: Any = 0
        for i, a in enumerate(left):
            if not a:
                continue
            for j, b in enumerate(right):
                if b:
                    total = total + a * self.gram_inverse[i][j] * b
        return total


def roots(
    L: SCAlgebra,
    cartan: Sequence[Mapping[int, Any]],
    within: Optional[Sequence[Mapping[int, Any]]] = None,
    expected: Optional[Sequence[Any]] = None,
) -> RootDatum:
    cartan = [dict(h) for h in cartan]
    if exact_rank(cartan) != len(cartan):
        raise NotCartan("the supplied elements are linearly dependent")
    for x, y in itertools.combinations(cartan, 2):
        if L.bracket(x, y):
            raise NotCartan("the supplied elements do not commute")
    spaces = simultaneous_eigenspaces(L, cartan, within, expected)
    zero = tuple(0 for _ in cartan)
    zero_space = spaces.pop(zero, [])
    if len(zero_space) != len(cartan) or not all(Subspace.spanned_by(zero_space).contains(h) for h in cartan):
        raise NotCartan(f"zero-weight space has dimension {len(zero_space)}, expected {len(cartan)}")
    for weight, vectors in spaces.items():
        if len(vectors) != 1:
            raise NotSplit(f"root space of {weight} has dimension {len(vectors)}")
    for weight in spaces:
        if tuple(-w for w in weight) not in spaces:
            raise NotSplit(f"root {weight} has no negative")
    form = killing(L)
    gram = form.gram(cartan)
    return RootDatum(cartan, sorted(spaces), spaces, gram, dense_inverse(gram))


# Type identification ---------------------------------------------------------

_E_EDGES = ((1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4))


def bourbaki_cartan_matrix(letter: str, n: int) -> Matrix:
    """Cartan matrix with A[i][j] = 2(a_i, a_j)/(a_j, a_j), simple roots numbered as in Bourbaki."""

    A = 2 * Matrix.eye(n)
    chain = zeros(n, n)

    def link(i: int, j: int, forward: int = -1, backward: int = -1) -> None:
        chain[i - 1, j - 1] = forward
        chain[j - 1, i - 1] = backward

    if letter in "ABC":
        for i in range(1, n):
            link(i, i + 1)
        if letter == "B" and n >= 2:
            link(n - 1, n, -2, -1)
        if letter == "C" and n >= 2:
            link(n - 1, n, -1, -2)
    elif letter == "D":
        for i in range(1, n - 1):
            link(i, i + 1)
        link(n - 2, n)
    elif letter == "E":
        for i, j in _E_EDGES:
            if j <= n:
                link(i, j)
    elif letter == "F":
        link(1, 2)
        link(2, 3, -2, -1)
        link(3, 4)
    elif letter == "G":
        link(1, 2, -1, -3)
    else:
        raise ValueError(f"unknown Cartan type {letter}")
    return A + chain


def _library(rank: int) -> List[Tuple[str, int]]:
    candidates = [("A", rank)]
    if rank >= 2:
        candidates.append(("B", rank))
    if rank >= 3:
        candidates.append(("C", rank))
    if rank >= 4:
        candidates.append(("D", rank))
    if rank in (6, 7, 8):
        candidates.append(("E", rank))
    if rank == 4:
        candidates.append(("F", 4))
    if rank == 2:
        candidates.append(("G", 2))
    return candidates


def match_cartan_matrix(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Optional[List[int]]:
    """Ordering ``o`` with A[o[a]][o[b]] == B[a][b], or None."""

    n = len(B)
    if len(A) != n:
        return None
    order: List[int] = []
    used = [False] * n

    def extend() -> bool:
        a = len(order)
        if a == n:
            return True
        for candidate in range(n):
            if used[candidate]:
                continue
            if all(A[candidate][order[b]] == B[a][b] and A[order[b]][candidate] == B[b][a] for b in range(a)):
                order.append(candidate)
                used[candidate] = True
                if extend():
                    return True
                order.pop()
                used[candidate] = False
        return False

    return list(order) if extend() else None


@dataclass
class Component:
    letter: str
    rank: int
    nodes: List[int]

    @property
    def label(self) -> str:
        return f"{self.letter}{self.rank}"


@dataclass
class TypeIdentification:
    label: str
    components: List[Component]
    simple_roots: List[Tuple[Any, ...]]
    cartan_matrix: List[List[int]]

    def bourbaki_simple_roots(self) -> List[Tuple[Any, ...]]:
        if len(self.components) != 1:
            raise Unrecognized(f"{self.label} is not irreducible")
        return [self.simple_roots[n] for n in self.components[0].nodes]

    def to_payload(self) -> Dict[str, Any]:
        return {
            "label": self.label,
            "rank": len(self.simple_roots),
            "components": [{"type": c.label, "nodes": c.nodes} for c in self.components],
            "cartan_matrix": self.cartan_matrix,
        }


def _as_int(value: Any) -> int:
    value = value.to_rational() if hasattr(value, "to_rational") else Fraction(value)
    if value.denominator != 1:
        raise Unrecognized(f"non-integral Cartan entry {value}")
    return int(value)


def classify_cartan_matrix(A: Sequence[Sequence[int]]) -> Tuple[str, List[Component]]:
    n = len(A)
    seen = [False] * n
    components: List[Component] = []
    for start in range(n):
        if seen[start]:
            continue
        stack, nodes = [start], []
        seen[start] = True
        while stack:
            node = stack.pop()
            nodes.append(node)
            for other in range(n):
                if not seen[other] and A[node][other]:
                    seen[other] = True
                    stack.append(other)
        nodes.sort()
        block = [[A[i][j] for j in nodes] for i in nodes]
        for letter, rank in _library(len(nodes)):
            reference = bourbaki_cartan_matrix(letter, rank)
            order = match_cartan_matrix(block, [[int(reference[i, j]) for j in range(rank)] for i in range(rank)])
            if order is not None:
                components.append(Component(letter, rank, [nodes[o] for o in order]))
                break
        else:
            raise Unrecognized(f"no Bourbaki type matches the component on nodes {nodes}")
    components.sort(key=lambda c: (c.letter, c.rank))
    counts: Dict[str, int] = {}
    for component in components:
        counts[component.label] = counts.get(component.label, 0) + 1
    label = "+".join(f"{count if count > 1 else ''}{name}" for name, count in counts.items())
    return label, components


def positive_roots(R: RootDatum, seed: int = 0, functional: Optional[Sequence[int]] = None) -> List[Tuple[Any, ...]]:
    rng = random.Random(seed)
    for _ in range(100):
        weights = list(functional) if functional is not None else [rng.randint(-1000, 1000) for _ in range(R.rank)]
        values = {root: sum(w * a for w, a in zip(weights, root)) for root in R.roots}
        if all(values.values()):
            return [root for root in R.roots if values[root] > 0]
        if functional is not None:
            raise ValueError("the functional vanishes on a root")
    raise Unrecognized("could not find a generic functional")


def simple_roots(positives: Sequence[Tuple[Any, ...]]) -> List[Tuple[Any, ...]]:
    pool = set(positives)
    simple = []
    for root in positives:
        decomposable = any(
            tuple(a - b for a, b in zip(root, other)) in pool for other in positives if other != root
        )
        if not decomposable:
            simple.append(root)
    return sorted(simple)


def identify_type(R: RootDatum, seed: int = 0, functional: Optional[Sequence[int]] = None) -> TypeIdentification:
    simple = simple_roots(positive_roots(R, seed, functional))
    if len(simple) != R.rank:
        raise Unrecognized(f"{len(simple)} simple roots for rank {R.rank}")
    matrix = [[_as_int(2 * R.inner(a, b) / R.inner(b, b)) for b in simple] for a in simple]
    label, components = classify_cartan_matrix(matrix)
    return TypeIdentification(label, components, simple, matrix)


def simple_coordinates(R: RootDatum, ident: TypeIdentification, root: Sequence[Any]) -> List[Any]:
    """Coordinates of a root in the Bourbaki-ordered simple roots."""

    basis = ident.bourbaki_simple_roots()
    gram = [[R.inner(a, b) for b in basis] for a in basis]
    inverse = dense_inverse(gram)
    rhs = [R.inner(root, a) for a in basis]
    return [sum((inverse[i][j] * rhs[j] for j in range(len(basis))), Fraction(0)) for i in range(len(basis))]


def highest_root(R: RootDatum, ident: TypeIdentification) -> Tuple[Tuple[Any, ...], List[int]]:
    best, best_coords, best_height = None, None, None
    for root in R.roots:
        coords = [_as_int(c) for c in simple_coordinates(R, ident, root)]
        height = sum(coords)
        if best_height is None or height > best_height:
            best, best_coords, best_height = root, coords, height
    return best, best_coords  # type: ignore[return-value]


def erase_extended_node(R: RootDatum, ident: TypeIdentification, node: int) -> str:
    """Type left after erasing Bourbaki node ``node`` (0 = lowest root) from the extended diagram."""

    theta, _ = highest_root(R, ident)
    extended = [tuple(-x for x in theta)] + ident.bourbaki_simple_roots()
    kept = [root for index, root in enumerate(extended) if index != node]
    matrix = [[_as_int(2 * R.inner(a, b) / R.inner(b, b)) for b in kept] for a in kept]
    label, _ = classify_cartan_matrix(matrix)
    return label


# Killing complements ---------------------------------------------------------


def killing_complement(
    L: SCAlgebra,
    S: Sequence[Mapping[int, Any]],
    ambient: Optional[Sequence[Mapping[int, Any]]] = None,
    form: Optional[KillingForm] = None,
) -> List[Vector]:
    form = form or killing(L)
    S = [dict(s) for s in S]
    if exact_rank({n: v for n, v in enumerate(row) if v} for row in form.gram(S)) != len(S):
        raise DegenerateOnS("the Killing form is degenerate on the given subspace")
    vectors = list(ambient) if ambient is not None else [{n: L.field.coerce(1)} for n in range(L.dim)]
    rows = []
    for s in S:
        values = ((a, form.value(vector, s)) for a, vector in enumerate(vectors))
        rows.append({a: value for a, value in values if value})
    return [combine((value, vectors[a]) for a, value in coords.items()) for coords in nullspace(rows, len(vectors))]
