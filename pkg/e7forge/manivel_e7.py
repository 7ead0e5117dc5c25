"""The 133-dimensional Lie algebra h + sum of the seven V_alpha.

Basis layout: the 21 elements of h come first (points in canonical order, each
with its (i, j, k)), followed by the seven 16-dimensional blocks V_alpha in
line order 1..7. Brackets between blocks are fixed by the intertwiners of
:mod:`e7forge.tensor_split`, each scaled by one unknown constant; the constants
are solved from the Jacobi identity.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

from .config import SIGN_SEARCH_RADIUS
from .errors import IntertwinerDimensionError, LabelingRejected, NoSolution, NotSplitHere
from .exact_arith import QuadField, format_scalar, rational_sqrt, square_class
from .fano import PLANE, POINT_NAMES, POINT_ORDER, FanoLabeling, Line, validate_labeling
from .lie_core import (
    JacobiReport,
    SCAlgebra,
    algebra_to_payload,
    base_change,
    identify_type,
    is_closed,
    jacobi_check,
    killing,
    roots,
)
from .linalg import SparseEchelon, Vector, axpy, nullspace
from .quaternion import BASIS_NAMES, PURE_INDICES, split_matrix_units, sl1_structure
from .tensor_split import (
    IntertwinerSpace,
    VAlphaModule,
    apply,
    build_valpha,
    cross_bracket_space,
    self_bracket_space,
    sl1_module,
)

H_DIM = 3 * len(POINT_NAMES)
BLOCK = 16
DIM = H_DIM + BLOCK * len(PLANE.lines)
# Slots of V_beta used as the third argument when sampling Jacobi equations.
SAMPLE_SLOTS = (0, 5, 10, 15)

Table = Dict[Tuple[int, ...], Dict[int, Any]]
Monomial = Tuple[Tuple[str, Any], ...]


def h_index(point: str, s: int) -> int:
    return 3 * POINT_ORDER[point] + s


def v_index(line: Line, n: int) -> int:
    return H_DIM + BLOCK * (line - 1) + n


def basis_names(modules: Mapping[Line, VAlphaModule]) -> List[str]:
    names = [f"{p}:{BASIS_NAMES[i]}" for p in POINT_NAMES for i in PURE_INDICES]
    for alpha in PLANE.lines:
        names.extend(f"{modules[alpha].line_name}:{label}" for label in modules[alpha].basis)
    return names


def block_of(index: int) -> str:
    if index < H_DIM:
        return POINT_NAMES[index // 3]
    return PLANE.line_name((index - H_DIM) // BLOCK + 1)


def pair_key(alpha: Line, beta: Line) -> Tuple[Line, Line]:
    return (alpha, beta) if alpha < beta else (beta, alpha)


def constant_name(key: Tuple[str, Any]) -> str:
    kind, value = key
    if kind == "a":
        line, point = value
        return f"a[{PLANE.line_name(line)},{point}]"
    if kind == "c":
        first, second = value
        return f"c[{PLANE.line_name(first)},{PLANE.line_name(second)}]"
    return f"lambda[{PLANE.line_name(value)}]"


def _bilinear(table: Table, x: Mapping[int, Any], y: Mapping[int, Any], antisymmetric: bool) -> Vector:
    result: Vector = {}
    for a, xa in x.items():
        for b, yb in y.items():
            if antisymmetric:
                if a == b:
                    continue
                key, sign = ((a, b), 1) if a < b else ((b, a), -1)
            else:
                key, sign = (a, b), 1
            column = table.get(key)
            if column:
                axpy(result, sign * xa * yb, column)
    return result


class BracketModel:
    """Brackets of the assembly with every unknown constant set to 1.

    ``self_maps[(alpha, v)]`` is the generator of Hom(Lambda^2 V_alpha, sl1(Q_v)) and
    ``cross_maps[(alpha, beta)]`` (alpha < beta) the generator of
    Hom(V_alpha (x) V_beta, V_alpha+beta).
    """

    def __init__(
        self,
        labeling: FanoLabeling,
        modules: Mapping[Line, VAlphaModule],
        self_maps: Mapping[Tuple[Line, str], Table],
        cross_maps: Mapping[Tuple[Line, Line], Table],
    ) -> None:
        self.labeling = labeling
        self.modules = dict(modules)
        self.self_maps = dict(self_maps)
        self.cross_maps = dict(cross_maps)
        self.ratios: Dict[Line, Dict[str, Any]] = {}

    def act(self, point: str, element: Mapping[int, Any], line: Line, z: Mapping[int, Any]) -> Vector:
        """sl1(Q_point) element (coordinates in i, j, k) acting on V_line."""

        actions = self.modules[line].actions
        if point not in actions:
            return {}
        result: Vector = {}
        for s, coefficient in element.items():
            axpy(result, coefficient, apply(actions[point][s], z))
        return result

    def self_part(self, line: Line, point: str, x: Mapping[int, Any], y: Mapping[int, Any]) -> Vector:
        return _bilinear(self.self_maps[(line, point)], x, y, antisymmetric=True)

    def self_bracket(self, line: Line, x: Mapping[int, Any], y: Mapping[int, Any]) -> Dict[str, Vector]:
        """[x, y] for x, y in V_line with a = ratios (lambda = 1), per point."""

        result: Dict[str, Vector] = {}
        for point, ratio in self.ratios[line].items():
            if ratio:
                part = self.self_part(line, point, x, y)
                if part:
                    result[point] = {s: ratio * v for s, v in part.items()}
        return result

    def cross(self, alpha: Line, beta: Line, x: Mapping[int, Any], y: Mapping[int, Any]) -> Vector:
        if alpha < beta:
            return _bilinear(self.cross_maps[(alpha, beta)], x, y, antisymmetric=False)
        result = _bilinear(self.cross_maps[(beta, alpha)], y, x, antisymmetric=False)
        return {k: -v for k, v in result.items()}

    def vv(self, alpha: Line, x: Mapping[int, Any], beta: Line, y: Mapping[int, Any]) -> Tuple[Monomial, Any]:
        """Unit-constant [x, y] for x in V_alpha, y in V_beta, with its constant as a monomial."""

        if alpha == beta:
            return (("lam", alpha),), ("h", self.self_bracket(alpha, x, y))
        gamma = PLANE.third_line(alpha, beta)
        return (("c", pair_key(alpha, beta)),), ("v", gamma, self.cross(alpha, beta, x, y))

    def double_bracket(self, alpha: Line, x: Mapping[int, Any], beta: Line, y: Mapping[int, Any], delta: Line, z: Mapping[int, Any]) -> Tuple[Monomial, Vector]:
        """[[x, y], z] as (monomial, global vector)."""

        first, inner = self.vv(alpha, x, beta, y)
        if inner[0] == "h":
            result: Vector = {}
            for point, element in inner[1].items():
                axpy(result, 1, self.act(point, element, delta, z))
            return first, _globalize_v(delta, result)
        _, gamma, w = inner
        second, outer = self.vv(gamma, w, delta, z)
        monomial = tuple(sorted(first + second))
        if outer[0] == "h":
            return monomial, _globalize_h(outer[1])
        return monomial, _globalize_v(outer[1], outer[2])

    def jacobi_terms(self, alpha: Line, x: int, beta: Line, y: int, delta: Line, z: int) -> Dict[Monomial, Vector]:
        """Jacobiator of three V basis vectors grouped by constant monomial."""

        ex, ey, ez = {x: 1}, {y: 1}, {z: 1}
        grouped: Dict[Monomial, Vector] = {}
        for args in ((alpha, ex, beta, ey, delta, ez), (beta, ey, delta, ez, alpha, ex), (delta, ez, alpha, ex, beta, ey)):
            monomial, vector = self.double_bracket(*args)
            if vector:
                axpy(grouped.setdefault(monomial, {}), 1, vector)
        return {m: v for m, v in grouped.items() if v}

    # algebra --------------------------------------------------------------

    def table(self, constants: Mapping[Tuple[str, Any], Any]) -> Dict[Tuple[int, int], Dict[int, Any]]:
        """Structure constants for i < j given the self and cross constants."""

        table: Dict[Tuple[int, int], Dict[int, Any]] = {}
        for point in POINT_NAMES:
            structure = sl1_structure(self.labeling.symbol_at[point])
            for s, t in itertools.combinations(range(3), 2):
                table[(h_index(point, s), h_index(point, t))] = {h_index(point, k): v for k, v in structure[(s, t)].items()}

        for alpha, module in self.modules.items():
            for point, generators in module.actions.items():
                for s in range(3):
                    for n, column in enumerate(generators[s]):
                        if column:
                            table[(h_index(point, s), v_index(alpha, n))] = {v_index(alpha, r): v for r, v in column.items()}

        for (alpha, point), maps in self.self_maps.items():
            a = constants[("a", (alpha, point))]
            if not a:
                continue
            for (x, y), column in maps.items():
                target = table.setdefault((v_index(alpha, x), v_index(alpha, y)), {})
                for s, value in column.items():
                    axpy(target, a * value, {h_index(point, s): 1})

        for (alpha, beta), maps in self.cross_maps.items():
            c = constants[("c", (alpha, beta))]
            gamma = PLANE.third_line(alpha, beta)
            for (x, y), column in maps.items():
                table[(v_index(alpha, x), v_index(beta, y))] = {v_index(gamma, k): c * v for k, v in column.items()}
        return table

    def algebra(self, constants: Mapping[Tuple[str, Any], Any]) -> SCAlgebra:
        return SCAlgebra.from_table(basis_names(self.modules), self.table(constants), self.labeling.field)


def _globalize_v(line: Line, vector: Mapping[int, Any]) -> Vector:
    return {v_index(line, n): value for n, value in vector.items()}


def _globalize_h(parts: Mapping[str, Mapping[int, Any]]) -> Vector:
    return {h_index(point, s): value for point, element in parts.items() for s, value in element.items()}


# Intertwiners ----------------------------------------------------------------


def _single(space: IntertwinerSpace) -> Table:
    if space.dimension != 1:
        raise IntertwinerDimensionError(space.label, space.dimension)
    return space.maps[0]


def compute_intertwiners(
    labeling: FanoLabeling,
    modules: Mapping[Line, VAlphaModule],
    *,
    method: str = "auto",
    primes: Optional[Sequence[int]] = None,
    seed: int = 0,
) -> Dict[str, IntertwinerSpace]:
    """The 28 self-bracket and 21 cross-line intertwiner spaces, keyed by constant name."""

    spaces: Dict[str, IntertwinerSpace] = {}
    targets = {p: sl1_module(labeling.symbol_at[p], p) for p in POINT_NAMES}
    for alpha in PLANE.lines:
        module = modules[alpha]
        for point in PLANE.quadruple(alpha):
            name = constant_name(("a", (alpha, point)))
            spaces[name] = self_bracket_space(module, targets[point], method=method, primes=primes, seed=seed, label=name)
    for alpha, beta in PLANE.line_pairs():
        gamma = PLANE.third_line(alpha, beta)
        name = constant_name(("c", (alpha, beta)))
        spaces[name] = cross_bracket_space(
            modules[alpha], modules[beta], modules[gamma], method=method, primes=primes, seed=seed, label=name
        )
    return spaces


def bracket_model(labeling: FanoLabeling, modules: Mapping[Line, VAlphaModule], intertwiners: Mapping[str, IntertwinerSpace]) -> BracketModel:
    self_maps = {
        (alpha, point): _single(intertwiners[constant_name(("a", (alpha, point)))])
        for alpha in PLANE.lines
        for point in PLANE.quadruple(alpha)
    }
    cross_maps = {pair: _single(intertwiners[constant_name(("c", pair))]) for pair in PLANE.line_pairs()}
    return BracketModel(labeling, modules, self_maps, cross_maps)


# Constant solver -------------------------------------------------------------


@dataclass
class GaugeRecord:
    ratios: Dict[Line, Dict[str, Any]] = field(default_factory=dict)
    kappa: Dict[Tuple[Line, str], Any] = field(default_factory=dict)
    lambdas: Dict[Line, Any] = field(default_factory=dict)
    triangle_signs: Dict[str, int] = field(default_factory=dict)
    candidate_rank: int = 0
    candidates_tried: int = 0

    def to_payload(self) -> Dict[str, Any]:
        return {
            "ratios": {
                PLANE.line_name(line): {p: format_scalar(v) for p, v in sorted(r.items())}
                for line, r in sorted(self.ratios.items())
            },
            "kappa": {
                f"{PLANE.line_name(line)}@{point}": format_scalar(v) for (line, point), v in sorted(self.kappa.items())
            },
            "lambda": {PLANE.line_name(line): format_scalar(v) for line, v in sorted(self.lambdas.items())},
            "triangle_signs": dict(sorted(self.triangle_signs.items())),
            "candidate_rank": self.candidate_rank,
            "candidates_tried": self.candidates_tried,
        }


def solve_self_ratios(model: BracketModel, line: Line) -> Dict[str, Any]:
    """Jacobi on V_alpha^3 is linear in the four self constants; its kernel must be a line."""

    points = PLANE.quadruple(line)
    rows: List[Dict[int, Any]] = []
    for x, y, z in itertools.combinations(range(BLOCK), 3):
        ex, ey, ez = {x: 1}, {y: 1}, {z: 1}
        per_point: List[Vector] = []
        for point in points:
            total: Vector = {}
            for first, second, third in ((ex, ey, ez), (ey, ez, ex), (ez, ex, ey)):
                element = model.self_part(line, point, first, second)
                axpy(total, 1, model.act(point, element, line, third))
            per_point.append(total)
        for k in set().union(*per_point):
            row = {n: vector[k] for n, vector in enumerate(per_point) if vector.get(k)}
            if row:
                rows.append(row)
    kernel = nullspace(rows, len(points))
    if len(kernel) != 1:
        raise NoSolution(
            f"self constants of {PLANE.line_name(line)} span a {len(kernel)}-dimensional solution space",
            constraint=("self", PLANE.line_name(line)),
        )
    vector = kernel[0]
    lead = vector[min(vector)]
    return {point: vector.get(n, 0) / lead for n, point in enumerate(points)}


def solve_kappas(model: BracketModel) -> Dict[Tuple[Line, str], Any]:
    """c(alpha,beta) c(alpha,gamma) = kappa * lambda_alpha around each meeting point."""

    kappas: Dict[Tuple[Line, str], Any] = {}
    for alpha in PLANE.lines:
        for beta in PLANE.lines:
            if beta == alpha:
                continue
            gamma = PLANE.third_line(alpha, beta)
            point = PLANE.meeting_point(alpha, beta)
            own: Monomial = (("lam", alpha),)
            product: Monomial = tuple(sorted((("c", pair_key(alpha, beta)), ("c", pair_key(alpha, gamma)))))
            found: Optional[Any] = None
            for x, y in itertools.combinations(range(BLOCK), 2):
                for z in SAMPLE_SLOTS:
                    terms = model.jacobi_terms(alpha, x, alpha, y, beta, z)
                    if set(terms) - {own, product}:
                        raise NoSolution("unexpected constant in Jacobi equation", constraint=sorted(terms))
                    t1, t23 = terms.get(own, {}), terms.get(product, {})
                    for k in set(t1) | set(t23):
                        if not t23.get(k):
                            raise NoSolution(
                                f"lambda[{PLANE.line_name(alpha)}] forced to zero",
                                constraint=(PLANE.line_name(alpha), PLANE.line_name(beta)),
                            )
                        value = -Fraction(t1.get(k, 0)) / t23[k]
                        if found is None:
                            found = value
                        elif value != found:
                            raise NoSolution(
                                "inconsistent kappa",
                                constraint=(PLANE.line_name(alpha), PLANE.line_name(beta), format_scalar(found), format_scalar(value)),
                            )
            if found is None or not found:
                raise NoSolution("no equation links the cross constants", constraint=(alpha, beta))
            previous = kappas.get((alpha, point))
            if previous is not None and previous != found:
                raise NoSolution(
                    f"kappa around {point} differs between partners of {PLANE.line_name(alpha)}",
                    constraint=(PLANE.line_name(alpha), point),
                )
            kappas[(alpha, point)] = found
    return kappas


def collect_triple_equations(model: BracketModel) -> Dict[Tuple[Line, Line, Line], SparseEchelon]:
    """Jacobi on three distinct lines, reduced to linear relations between constant monomials."""

    equations: Dict[Tuple[Line, Line, Line], SparseEchelon] = {}
    for alpha, beta, delta in itertools.combinations(PLANE.lines, 3):
        echelon = SparseEchelon()
        for x in range(BLOCK):
            for y in range(BLOCK):
                for z in SAMPLE_SLOTS:
                    terms = model.jacobi_terms(alpha, x, beta, y, delta, z)
                    for k in set().union(*terms.values()):
                        row = {m: vector[k] for m, vector in terms.items() if vector.get(k)}
                        if row:
                            echelon.add(row)
            if echelon.rank >= 3:
                break
        equations[(alpha, beta, delta)] = echelon
    return equations


def _coordinate_solutions(rhs: Mapping[str, int]) -> List[Tuple[int, ...]]:
    """Bit assignments b (one per line) with b_alpha + b_beta + b_gamma = rhs[point] around every point."""

    triples = dict(PLANE.concurrent_triples())
    solutions = []
    for bits in itertools.product((0, 1), repeat=len(PLANE.lines)):
        if all((bits[a - 1] + bits[b - 1] + bits[c - 1]) % 2 == rhs[p] for p, (a, b, c) in triples.items()):
            solutions.append(bits)
    return solutions


def lambda_candidates(kappas: Mapping[Tuple[Line, str], Any]) -> List[Dict[Line, Fraction]]:
    """Square-free lambda vectors making every c(alpha,beta)**2 a rational square."""

    classes: Dict[str, Tuple[int, Dict[int, int]]] = {}
    primes: set = set()
    for point, lines in PLANE.concurrent_triples():
        product = Fraction(1)
        for line in lines:
            product *= kappas[(line, point)]
        classes[point] = square_class(product)
        primes.update(classes[point][1])

    coordinates: List[Any] = ["sign"] + sorted(primes)
    per_coordinate: List[List[Tuple[int, ...]]] = []
    for coordinate in coordinates:
        if coordinate == "sign":
            rhs = {point: sign for point, (sign, _) in classes.items()}
        else:
            rhs = {point: parities.get(coordinate, 0) for point, (_, parities) in classes.items()}
        solutions = _coordinate_solutions(rhs)
        if not solutions:
            raise NoSolution("no lambda square class satisfies the triangle conditions", constraint=coordinate)
        per_coordinate.append(solutions)

    candidates = []
    for choice in itertools.product(*per_coordinate):
        lambdas: Dict[Line, Fraction] = {}
        for line in PLANE.lines:
            value = Fraction(1)
            for coordinate, bits in zip(coordinates, choice):
                if bits[line - 1]:
                    value *= -1 if coordinate == "sign" else coordinate
            lambdas[line] = value
        candidates.append(lambdas)

    radius = set(SIGN_SEARCH_RADIUS)

    def weight(lambdas: Mapping[Line, Fraction]) -> Tuple[Any, ...]:
        sizes = [abs(v) for _, v in sorted(lambdas.items())]
        return (not all(s in radius for s in sizes), sum(sizes), sum(v < 0 for v in lambdas.values()), tuple(sorted(lambdas.items())))

    return sorted(candidates, key=weight)


def cross_constants(kappas: Mapping[Tuple[Line, str], Any], lambdas: Mapping[Line, Fraction]) -> Optional[Dict[Tuple[Line, Line], Fraction]]:
    """Positive-first c's from c(a,b) c(a,g) = P_a around every point, or None if not rational."""

    constants: Dict[Tuple[Line, Line], Fraction] = {}
    for point, (a, b, g) in PLANE.concurrent_triples():
        P = {line: kappas[(line, point)] * lambdas[line] for line in (a, b, g)}
        root = rational_sqrt(abs(P[a] * P[b] / P[g]))
        if not root:
            return None
        c_ab = root
        c_ag = P[a] / c_ab
        c_bg = P[b] / c_ab
        if c_ag * c_bg != P[g]:
            return None
        constants[pair_key(a, b)] = c_ab
        constants[pair_key(a, g)] = c_ag
        constants[pair_key(b, g)] = c_bg
    return constants


def _monomial_value(monomial: Monomial, lambdas: Mapping[Line, Any], cs: Mapping[Tuple[Line, Line], Any]) -> Any:
    value: Any = 1
    for kind, key in monomial:
        value = value * (lambdas[key] if kind == "lam" else cs[key])
    return value


def _satisfies(equations: Mapping[Any, SparseEchelon], lambdas: Mapping[Line, Any], cs: Mapping[Tuple[Line, Line], Any]) -> bool:
    for echelon in equations.values():
        for row in echelon.rows.values():
            if sum((coef * _monomial_value(m, lambdas, cs) for m, coef in row.items()), Fraction(0)):
                return False
    return True


def constants_from(model: BracketModel, lambdas: Mapping[Line, Any], cs: Mapping[Tuple[Line, Line], Any]) -> Dict[Tuple[str, Any], Any]:
    constants: Dict[Tuple[str, Any], Any] = {}
    for line, ratios in model.ratios.items():
        for point, ratio in ratios.items():
            constants[("a", (line, point))] = lambdas[line] * ratio
    for pair, value in cs.items():
        constants[("c", pair)] = value
    return constants


def solve_constants(
    model: BracketModel,
    *,
    certify: bool = True,
    threads: int = 1,
    max_certifications: int = 8,
) -> Tuple[Dict[Tuple[str, Any], Any], GaugeRecord, Optional[JacobiReport]]:
    """Solve the self and cross constants; with ``certify`` the first candidate
    passing the sampled equations must also pass the full Jacobi sweep."""

    gauge = GaugeRecord()
    for line in PLANE.lines:
        gauge.ratios[line] = solve_self_ratios(model, line)
    model.ratios = gauge.ratios
    gauge.kappa = solve_kappas(model)
    equations = collect_triple_equations(model)
    for key, echelon in equations.items():
        if echelon.rank >= 3:
            raise NoSolution("only the zero solution remains", constraint=[PLANE.line_name(l) for l in key])
    gauge.candidate_rank = max((e.rank for e in equations.values()), default=0)

    triangles = PLANE.concurrent_triples()
    certifications = 0
    for lambdas in lambda_candidates(gauge.kappa):
        base = cross_constants(gauge.kappa, lambdas)
        if base is None:
            continue
        for flips in range(2 ** len(triangles)):
            gauge.candidates_tried += 1
            cs = dict(base)
            signs: Dict[str, int] = {}
            for bit, (point, (a, b, g)) in enumerate(triangles):
                sign = -1 if flips >> bit & 1 else 1
                signs[point] = sign
                for pair in (pair_key(a, b), pair_key(a, g), pair_key(b, g)):
                    cs[pair] = sign * cs[pair]
            if not _satisfies(equations, lambdas, cs):
                continue
            constants = constants_from(model, lambdas, cs)
            report = None
            if certify:
                if certifications >= max_certifications:
                    raise NoSolution("no candidate survived the full Jacobi sweep", constraint="certification")
                certifications += 1
                report = jacobi_check(model.algebra(constants), "full", threads=threads)
                if not report.passed:
                    continue
            gauge.lambdas = dict(lambdas)
            gauge.triangle_signs = signs
            return constants, gauge, report
    raise NoSolution("no lambda and sign pattern satisfies the Jacobi equations", constraint="triangles")


# Assembly --------------------------------------------------------------------


@dataclass
class E7Assembly:
    algebra: SCAlgebra
    labeling: FanoLabeling
    modules: Dict[Line, VAlphaModule]
    intertwiners: Dict[str, IntertwinerSpace]
    constants: Dict[str, Any]
    gauge: GaugeRecord
    certificates: Dict[str, Any] = field(default_factory=dict)

    @property
    def block_index(self) -> Dict[str, str]:
        return {name: block_of(n) for n, name in enumerate(self.algebra.names)}

    def h_basis(self) -> List[Vector]:
        return [{n: self.algebra.field.coerce(1)} for n in range(H_DIM)]

    def point_basis(self, point: str) -> List[Vector]:
        return [{h_index(point, s): self.algebra.field.coerce(1)} for s in range(3)]

    def line_basis(self, line: Line) -> List[Vector]:
        return [{v_index(line, n): self.algebra.field.coerce(1)} for n in range(BLOCK)]

    def constants_payload(self) -> Dict[str, str]:
        return {name: format_scalar(value) for name, value in sorted(self.constants.items())}


def assemble(
    labeling: FanoLabeling,
    *,
    certify: bool = True,
    method: str = "auto",
    primes: Optional[Sequence[int]] = None,
    seed: int = 0,
    threads: int = 1,
) -> E7Assembly:
    report = validate_labeling(labeling)
    if not report.accepted:
        raise LabelingRejected(report.violations)

    modules = {alpha: build_valpha(labeling, alpha) for alpha in PLANE.lines}
    intertwiners = compute_intertwiners(labeling, modules, method=method, primes=primes, seed=seed)
    model = bracket_model(labeling, modules, intertwiners)
    constants, gauge, jacobi = solve_constants(model, certify=certify, threads=threads)
    algebra = model.algebra(constants)

    assembly = E7Assembly(
        algebra,
        labeling,
        modules,
        intertwiners,
        {constant_name(key): value for key, value in constants.items()},
        gauge,
    )
    if jacobi is not None:
        assembly.certificates["jacobi"] = jacobi.to_payload()
        assembly.certificates["killing"] = killing(algebra, primes).to_payload()
    return assembly


def block_containment_violations(A: E7Assembly) -> List[Dict[str, Any]]:
    """Basis brackets that leave the block prescribed by the decomposition."""

    violations = []
    L = A.algebra
    for i, j, k, _ in L.entries():
        if i > j:
            continue
        bi, bj, bk = block_of(i), block_of(j), block_of(k)
        if i < H_DIM and j < H_DIM:
            ok = bi == bj == bk
        elif i < H_DIM:
            ok = bk == bj and bi in PLANE.quadruple(bj)
        elif bi == bj:
            ok = k < H_DIM and bk in PLANE.quadruple(bi)
        else:
            ok = k >= H_DIM and PLANE.line_by_name(bk) == PLANE.third_line(PLANE.line_by_name(bi), PLANE.line_by_name(bj))
        if not ok:
            violations.append({"pair": [L.names[i], L.names[j]], "lands_in": L.names[k]})
    return violations


def split_cartan(A: E7Assembly) -> Dict[str, Vector]:
    """h_v = e11 - e22 in sl1(Q_v) for every point with matrix units over the assembly's field."""

    cartan: Dict[str, Vector] = {}
    for point in POINT_NAMES:
        try:
            units = split_matrix_units(A.labeling.symbol_at[point])
        except NotSplitHere:
            continue
        coords = units.h.coords[1:]
        cartan[point] = {h_index(point, s): value for s, value in enumerate(coords) if value}
    return cartan


def base_change_assembly(A: E7Assembly, d: int) -> E7Assembly:
    target = QuadField(d)
    return E7Assembly(
        base_change(A.algebra, d),
        A.labeling.over(target),
        A.modules,
        A.intertwiners,
        {name: target.coerce(value) for name, value in A.constants.items()},
        A.gauge,
        dict(A.certificates),
    )


def line_subalgebra_check(A: E7Assembly, line: Line) -> Dict[str, Any]:
    """h + V_line is a subalgebra; the four sl1 of its quadruple plus V_line form an ideal."""

    L = A.algebra
    quad = PLANE.quadruple(line)
    others = [p for p in POINT_NAMES if p not in quad]
    block = A.line_basis(line)
    sub = A.h_basis() + block
    ideal = [v for p in quad for v in A.point_basis(p)] + block

    leakage = []
    for x, y in itertools.combinations(range(BLOCK), 2):
        image = L.basis_bracket(v_index(line, x), v_index(line, y))
        stray = sorted({block_of(k) for k in image} - set(quad))
        if stray:
            leakage.append({"pair": [L.names[v_index(line, x)], L.names[v_index(line, y)]], "blocks": stray})

    centralizes = all(not L.bracket(u, w) for p in others for u in A.point_basis(p) for w in ideal)
    report: Dict[str, Any] = {
        "line": PLANE.line_name(line),
        "closed": is_closed(L, sub),
        "dim": len(sub),
        "leakage": leakage,
        "ideal_dim": len(ideal),
        "ideal": is_closed(L, ideal, against=sub),
        "centralized_by_rest": centralizes,
    }

    cartan = split_cartan(A)
    if all(p in cartan for p in quad):
        datum = roots(L, [cartan[p] for p in quad], within=ideal)
        report["ideal_type"] = identify_type(datum).label
        report["ideal_roots"] = len(datum.roots)
    else:
        report["ideal_type"] = None
        report["skipped"] = "matrix units missing on the quadruple"
    report["ok"] = (
        report["closed"]
        and not leakage
        and report["ideal"]
        and centralizes
        and report["ideal_type"] in ("D4", None)
    )
    return report


def h_subalgebra_check(A: E7Assembly) -> Dict[str, Any]:
    L = A.algebra
    cartan = split_cartan(A)
    report: Dict[str, Any] = {"dim": H_DIM, "closed": is_closed(L, A.h_basis())}
    if len(cartan) == len(POINT_NAMES):
        datum = roots(L, [cartan[p] for p in POINT_NAMES], within=A.h_basis())
        report["type"] = identify_type(datum).label
    else:
        report["type"] = None
    report["ok"] = report["closed"] and report["type"] in ("7A1", None)
    return report


def golden_payload(A: E7Assembly) -> Dict[str, Any]:
    payload = algebra_to_payload(A.algebra)
    payload["constants"] = A.constants_payload()
    payload["labeling"] = A.labeling.to_payload()
    return payload
