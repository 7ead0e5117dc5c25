"""Fano plane combinatorics and quaternion labelings of its points."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .errors import EqualLines, LabelingSchemaError, UnknownLine
from .exact_arith import RATIONALS, FieldDescriptor
from .jsonio import load_json
from .quaternion import QuaternionAlgebra, symbol_from_strings

# Canonical point order. Points are the nonzero vectors of GF(2)^3; the center Q
# is (1,1,1), the outer triangle Q1, Q2, Q3 are the unit vectors and Hk is the
# midpoint of the edge opposite Qk.
POINT_NAMES: Tuple[str, ...] = ("Q", "Q1", "Q2", "Q3", "H1", "H2", "H3")
POINT_VECTORS: Dict[str, int] = {"Q": 7, "Q1": 1, "Q2": 2, "Q3": 4, "H1": 6, "H2": 5, "H3": 3}
VECTOR_POINTS: Dict[int, str] = {vector: name for name, vector in POINT_VECTORS.items()}
POINT_ORDER: Dict[str, int] = {name: index for index, name in enumerate(POINT_NAMES)}

Line = int
Pairing = Tuple[Tuple[str, str], Tuple[str, str]]


def _parity(value: int) -> int:
    return bin(value).count("1") % 2


def _canonical(points: Iterable[str]) -> Tuple[str, ...]:
    return tuple(sorted(points, key=POINT_ORDER.__getitem__))


class FanoPlane:
    """The projective plane over GF(2).

    Lines are the nonzero covectors 1..7; a point lies on a line when the
    pairing of their vectors is even. Line ``alpha`` and line ``beta`` meet at
    the point whose vector is orthogonal to both, and the third line through
    that point is ``alpha ^ beta``.
    """

    points: Tuple[str, ...] = POINT_NAMES
    lines: Tuple[Line, ...] = tuple(range(1, 8))

    def _require(self, line: Any) -> Line:
        if isinstance(line, str):
            return self.line_by_name(line)
        if isinstance(line, (set, frozenset, tuple, list)):
            return self.line_through_points(line)
        if line not in self.lines:
            raise UnknownLine(f"unknown line {line!r}")
        return int(line)

    def points_on(self, line: Any) -> Tuple[str, ...]:
        alpha = self._require(line)
        return _canonical(p for p in POINT_NAMES if _parity(POINT_VECTORS[p] & alpha) == 0)

    def quadruple(self, line: Any) -> Tuple[str, str, str, str]:
        alpha = self._require(line)
        return _canonical(p for p in POINT_NAMES if _parity(POINT_VECTORS[p] & alpha) == 1)  # type: ignore[return-value]

    def third_line(self, alpha: Any, beta: Any) -> Line:
        first, second = self._require(alpha), self._require(beta)
        if first == second:
            raise EqualLines(f"line {self.line_name(first)} given twice")
        return first ^ second

    def meeting_point(self, alpha: Any, beta: Any) -> str:
        first, second = self._require(alpha), self._require(beta)
        if first == second:
            raise EqualLines(f"line {self.line_name(first)} given twice")
        (point,) = set(self.points_on(first)) & set(self.points_on(second))
        return point

    def lines_through(self, point: str) -> Tuple[Line, ...]:
        return tuple(alpha for alpha in self.lines if point in self.points_on(alpha))

    def line_name(self, line: Any) -> str:
        return "-".join(self.points_on(line))

    def line_by_name(self, name: str) -> Line:
        return self.line_through_points(name.split("-"))

    def line_through_points(self, points: Iterable[str]) -> Line:
        wanted = set(points)
        for alpha in self.lines:
            if set(self.points_on(alpha)) == wanted:
                return alpha
        raise UnknownLine(f"{sorted(wanted)} is not a line")

    def concurrent_triples(self) -> List[Tuple[str, Tuple[Line, Line, Line]]]:
        """For every point, the three lines through it (sorted)."""

        return [(point, tuple(sorted(self.lines_through(point)))) for point in POINT_NAMES]  # type: ignore[misc]

    def line_pairs(self) -> List[Tuple[Line, Line]]:
        return [(a, b) for a in self.lines for b in self.lines if a < b]


PLANE = FanoPlane()


@dataclass(frozen=True)
class FanoLabeling:
    symbol_at: Mapping[str, QuaternionAlgebra]
    class_at: Mapping[str, Tuple[int, ...]]
    class_rank: int
    declared_pairings: Mapping[Line, Pairing] = field(default_factory=dict)
    field: FieldDescriptor = RATIONALS

    def pairing_at(self, line: Any) -> Optional[Pairing]:
        alpha = PLANE._require(line)
        if alpha in self.declared_pairings:
            return self.declared_pairings[alpha]
        options = admissible_pairings(self, alpha)
        return options[0] if options else None

    def pairing_source(self, line: Any) -> str:
        alpha = PLANE._require(line)
        if alpha in self.declared_pairings:
            return "declared"
        return "derived-unique" if len(admissible_pairings(self, alpha)) == 1 else "derived-canonical"

    def over(self, target: FieldDescriptor) -> "FanoLabeling":
        return FanoLabeling(
            {p: Q.over(target) for p, Q in self.symbol_at.items()},
            dict(self.class_at),
            self.class_rank,
            dict(self.declared_pairings),
            target,
        )

    def to_payload(self) -> Dict[str, Any]:
        return {
            "class_rank": self.class_rank,
            "points": {
                p: {
                    "symbol": self.symbol_at[p].symbol_strings(),
                    "class": list(self.class_at[p]),
                    "split": self.symbol_at[p].declared_split,
                }
                for p in POINT_NAMES
            },
            "pairings": {
                PLANE.line_name(alpha): [list(pair) for pair in pairing]
                for alpha, pairing in sorted(self.declared_pairings.items())
            },
        }


def _candidate_pairings(quad: Sequence[str]) -> List[Pairing]:
    q0, q1, q2, q3 = quad
    return [((q0, q1), (q2, q3)), ((q0, q2), (q1, q3)), ((q0, q3), (q1, q2))]


def _pair_ok(labeling: FanoLabeling, pair: Tuple[str, str]) -> bool:
    first, second = pair
    return labeling.class_at[first] == labeling.class_at[second] and labeling.symbol_at[first].same_symbol(
        labeling.symbol_at[second]
    )


def admissible_pairings(labeling: FanoLabeling, line: Line) -> List[Pairing]:
    return [
        pairing
        for pairing in _candidate_pairings(PLANE.quadruple(line))
        if all(_pair_ok(labeling, pair) for pair in pairing)
    ]


# Loading --------------------------------------------------------------------


def labeling_from_payload(payload: Any, target: FieldDescriptor = RATIONALS) -> FanoLabeling:
    if not isinstance(payload, Mapping):
        raise LabelingSchemaError("$", "labeling must be a JSON object")

    rank = payload.get("class_rank")
    if not isinstance(rank, int) or isinstance(rank, bool) or rank < 0:
        raise LabelingSchemaError("class_rank", "must be a non-negative integer")

    points = payload.get("points")
    if not isinstance(points, Mapping):
        raise LabelingSchemaError("points", "must be an object keyed by point name")
    unknown = sorted(set(points) - set(POINT_NAMES))
    if unknown:
        raise LabelingSchemaError(f"points.{unknown[0]}", "unknown point name")

    symbols: Dict[str, QuaternionAlgebra] = {}
    classes: Dict[str, Tuple[int, ...]] = {}
    for name in POINT_NAMES:
        if name not in points:
            raise LabelingSchemaError(f"points.{name}", "missing point")
        entry = points[name]
        if not isinstance(entry, Mapping):
            raise LabelingSchemaError(f"points.{name}", "must be an object")
        split = entry.get("split", False)
        if not isinstance(split, bool):
            raise LabelingSchemaError(f"points.{name}.split", "must be a boolean")
        symbol = entry.get("symbol")
        if not isinstance(symbol, (list, tuple)) or len(symbol) != 2:
            raise LabelingSchemaError(f"points.{name}.symbol", "must be a pair [a, b]")
        try:
            symbols[name] = symbol_from_strings(symbol, split, target)
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise LabelingSchemaError(f"points.{name}.symbol", str(exc)) from exc
        bits = entry.get("class")
        if not isinstance(bits, (list, tuple)) or any(b not in (0, 1) or isinstance(b, bool) for b in bits):
            raise LabelingSchemaError(f"points.{name}.class", "must be a list of 0/1 entries")
        if len(bits) != rank:
            raise LabelingSchemaError(f"points.{name}.class", f"expected {rank} entries, got {len(bits)}")
        classes[name] = tuple(int(b) for b in bits)

    declared: Dict[Line, Pairing] = {}
    raw_pairings = payload.get("pairings", {}) or {}
    if not isinstance(raw_pairings, Mapping):
        raise LabelingSchemaError("pairings", "must be an object keyed by line name")
    for line_name, value in raw_pairings.items():
        try:
            alpha = PLANE.line_by_name(line_name)
        except UnknownLine as exc:
            raise LabelingSchemaError(f"pairings.{line_name}", "not a line of the plane") from exc
        if (
            not isinstance(value, (list, tuple))
            or len(value) != 2
            or any(not isinstance(pair, (list, tuple)) or len(pair) != 2 for pair in value)
        ):
            raise LabelingSchemaError(f"pairings.{line_name}", "must be [[p, q], [r, s]]")
        pairing = (tuple(value[0]), tuple(value[1]))
        if sorted(pairing[0] + pairing[1], key=lambda p: POINT_ORDER.get(p, 99)) != list(PLANE.quadruple(alpha)):
            raise LabelingSchemaError(f"pairings.{line_name}", "must partition the complementary quadruple")
        declared[alpha] = pairing  # type: ignore[assignment]

    return FanoLabeling(symbols, classes, rank, declared, target)


def load_labeling(path: Union[str, Path], target: FieldDescriptor = RATIONALS) -> FanoLabeling:
    try:
        payload = load_json(Path(path))
    except ValueError as exc:
        raise LabelingSchemaError("$", f"invalid JSON: {exc}") from exc
    return labeling_from_payload(payload, target)


# Validation ------------------------------------------------------------------


@dataclass
class ValidationReport:
    violations: List[Dict[str, Any]] = field(default_factory=list)
    notes: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def accepted(self) -> bool:
        return not self.violations

    def to_payload(self) -> Dict[str, Any]:
        return {"accepted": self.accepted, "violations": self.violations, "notes": self.notes}


def _class_sum(labeling: FanoLabeling, points: Iterable[str]) -> Tuple[int, ...]:
    total = [0] * labeling.class_rank
    for point in points:
        for index, bit in enumerate(labeling.class_at[point]):
            total[index] ^= bit
    return tuple(total)


def validate_labeling(labeling: FanoLabeling) -> ValidationReport:
    report = ValidationReport()
    zero = tuple([0] * labeling.class_rank)

    for point in POINT_NAMES:
        Q = labeling.symbol_at[point]
        if Q.declared_split and (Q.a != 1 or Q.b != 1):
            report.violations.append({"rule": "split-presentation", "point": point})

    for first in POINT_NAMES:
        for second in POINT_NAMES:
            if POINT_ORDER[first] >= POINT_ORDER[second]:
                continue
            if labeling.class_at[first] != labeling.class_at[second]:
                continue
            Q1, Q2 = labeling.symbol_at[first], labeling.symbol_at[second]
            if not (Q1.same_symbol(Q2) or (Q1.declared_split and Q2.declared_split)):
                report.violations.append(
                    {"rule": "equal-class-symbols", "points": [first, second], "detail": f"{Q1} vs {Q2}"}
                )

    for alpha in PLANE.lines:
        name = PLANE.line_name(alpha)
        if _class_sum(labeling, PLANE.points_on(alpha)) != zero:
            report.violations.append({"rule": "line-sum", "line": name})
        if _class_sum(labeling, PLANE.quadruple(alpha)) != zero:
            report.violations.append({"rule": "quadruple-sum", "line": name})

        if alpha in labeling.declared_pairings:
            for pair in labeling.declared_pairings[alpha]:
                if not _pair_ok(labeling, pair):
                    report.violations.append({"rule": "pairing", "line": name, "pair": list(pair)})
            continue

        options = admissible_pairings(labeling, alpha)
        if not options:
            report.violations.append({"rule": "pairing-unavailable", "line": name})
        else:
            report.notes.append(
                {
                    "line": name,
                    "pairing": [list(pair) for pair in options[0]],
                    "source": labeling.pairing_source(alpha),
                }
            )

    return report
