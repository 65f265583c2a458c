from __future__ import annotations

from dataclasses import dataclass


class QidaError(Exception):
    """Root of every error raised by multiqida."""


class FcidumpParseError(QidaError, ValueError):
    def __init__(self, line_no: int, line: str, message: str) -> None:
        super().__init__(f"FCIDUMP line {line_no}: {message} ({line.strip()!r})")
        self.line_no = line_no
        self.line = line
        self.message = message


class QubitCountMismatchError(QidaError, ValueError):
    def __init__(self, expected: int, got: int, what: str = "operand") -> None:
        super().__init__(f"{what} acts on {got} qubits, expected {expected}")
        self.expected = expected
        self.got = got


class PauliAlgebraError(QidaError, ValueError):
    pass


class ParameterCountError(QidaError, ValueError):
    def __init__(self, expected: int, got: int) -> None:
        super().__init__(f"parameter vector has length {got}, circuit expects {expected}")
        self.expected = expected
        self.got = got


class SizeLimitError(QidaError, ValueError):
    def __init__(self, n_qubits: int, limit: int) -> None:
        super().__init__(f"{n_qubits} qubits exceeds the dense limit of {limit}")
        self.n_qubits = n_qubits
        self.limit = limit


class NumericalInconsistencyError(QidaError, ArithmeticError):
    pass


class DeterminantFileError(QidaError, ValueError):
    def __init__(self, line_no: int | None, message: str) -> None:
        where = f"line {line_no}: " if line_no is not None else ""
        super().__init__(f"determinant file {where}{message}")
        self.line_no = line_no
        self.message = message


class FinesseRatioError(QidaError, ValueError):
    pass


class UndefinedMetricError(QidaError, ArithmeticError):
    pass


@dataclass(frozen=True)
class ConfigIssue:
    path: str
    message: str


class ConfigError(QidaError, ValueError):
    def __init__(self, errors: list[ConfigIssue]) -> None:
        detail = "; ".join(f"{e.path}: {e.message}" for e in errors)
        super().__init__(f"invalid experiment configuration: {detail}")
        self.errors = errors
