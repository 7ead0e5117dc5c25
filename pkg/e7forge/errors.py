"""Exception hierarchy shared by the toolkit."""

from __future__ import annotations

from typing import Any, Optional


class E7ForgeError(Exception):
    """Base class for every domain error raised by the toolkit."""


class DivisionByZero(E7ForgeError, ZeroDivisionError):
    pass


class FieldMismatch(E7ForgeError, TypeError):
    pass


class BadPrime(E7ForgeError, ArithmeticError):
    def __init__(self, prime: int, detail: str = "") -> None:
        super().__init__(f"prime {prime} divides a denominator{': ' + detail if detail else ''}")
        self.prime = prime


class AlgebraMismatch(E7ForgeError, ValueError):
    pass


class SymbolMismatch(E7ForgeError, ValueError):
    pass


class NotSplitHere(E7ForgeError, ValueError):
    pass


class UnknownLine(E7ForgeError, KeyError):
    pass


class EqualLines(E7ForgeError, ValueError):
    pass


class LabelingSchemaError(E7ForgeError, ValueError):
    """Labeling payload does not match the schema; ``field`` names the culprit."""

    def __init__(self, field: str, message: str) -> None:
        super().__init__(f"{field}: {message}")
        self.field = field


class PairingUnavailable(E7ForgeError, ValueError):
    pass


class LabelingRejected(E7ForgeError, ValueError):
    def __init__(self, violations: Any) -> None:
        super().__init__(f"labeling rejected: {violations!r}")
        self.violations = violations


class NotSemisimpleOverField(E7ForgeError, ArithmeticError):
    pass


class NotCartan(E7ForgeError, ValueError):
    pass


class NotSplit(E7ForgeError, ValueError):
    pass


class Unrecognized(E7ForgeError, ValueError):
    pass


class DegenerateOnS(E7ForgeError, ValueError):
    pass


class NotInSpan(E7ForgeError, ValueError):
    pass


class NoSolution(E7ForgeError, ArithmeticError):
    """Constant solver found no consistent assignment."""

    def __init__(self, message: str, constraint: Optional[Any] = None) -> None:
        super().__init__(message)
        self.constraint = constraint


class IntertwinerDimensionError(E7ForgeError, ArithmeticError):
    def __init__(self, label: str, dimension: int) -> None:
        super().__init__(f"intertwiner space {label} has dimension {dimension}, expected 1")
        self.label = label
        self.dimension = dimension


class CenterNotSplit(E7ForgeError, ValueError):
    pass


class DegeneratePairing(E7ForgeError, ArithmeticError):
    pass


class _WitnessError(E7ForgeError, ArithmeticError):
    def __init__(self, message: str, witness: Optional[Any] = None) -> None:
        super().__init__(message)
        self.witness = witness


class NoConsistentGauge(_WitnessError):
    pass


class GaugeInconsistent(_WitnessError):
    pass


class LieTripleSystemError(_WitnessError):
    pass


class GoldenFormatError(E7ForgeError, ValueError):
    def __init__(self, message: str, entry: Optional[Any] = None) -> None:
        super().__init__(message if entry is None else f"{message}: {entry!r}")
        self.entry = entry
