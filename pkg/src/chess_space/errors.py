"""
Exception hierarchy for chess_space.

UsageError subclasses mean the input itself is malformed (CLI exit 1);
DomainError subclasses mean the input is well formed but outside what the
operation accepts (CLI exit 2).
"""

from typing import Sequence


class ChessSpaceError(Exception):
    """Base class for all chess_space errors."""


class UsageError(ChessSpaceError, ValueError):
    """Malformed input."""


class PieceSetParseError(UsageError):
    def __init__(self, message: str, character: str, position: int):
        super().__init__(message)
        self.character = character
        self.position = position


class BoardSpecError(UsageError):
    pass


class PlacementParseError(UsageError):
    pass


class DomainError(ChessSpaceError):
    """Well-formed input outside the operation's domain."""


class UndefinedRatioError(DomainError):
    pass


class BudgetExceededError(DomainError):
    def __init__(self, raw_count: int, budget: int):
        super().__init__(
            f"Enumeration budget exceeded: {raw_count} ordered square sequences > budget {budget}"
        )
        self.raw_count = raw_count
        self.budget = budget


class ChessValidationError(DomainError):
    def __init__(self, violations: Sequence[str]):
        super().__init__(f"Not a valid chess piece set: {', '.join(violations)}")
        self.violations = list(violations)


class UnsupportedBoardError(DomainError):
    pass


class SymmetryGroupError(DomainError):
    pass


class SamplingError(DomainError):
    pass
