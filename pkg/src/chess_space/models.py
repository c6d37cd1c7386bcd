"""
Pydantic models for chess piece sets, boards, placements and reports.
"""

from collections import Counter
from enum import Enum
from typing import Iterable, Mapping, Optional

from pydantic import BaseModel, ConfigDict, Field, PlainSerializer, computed_field, field_validator, model_validator
from typing_extensions import Annotated

from .config import MAX_BOARD_SIDE, STANDARD_SIDE
from .errors import BoardSpecError

# Arbitrary-precision non-negative count; JSON carries it as a digit string.
BigCount = Annotated[int, Field(ge=0), PlainSerializer(str, return_type=str, when_used="json")]


class Color(str, Enum):
    WHITE = "w"
    BLACK = "b"

    @property
    def other(self) -> "Color":
        return Color.BLACK if self is Color.WHITE else Color.WHITE

    @property
    def display_name(self) -> str:
        return "White" if self is Color.WHITE else "Black"


class Role(str, Enum):
    KING = "K"
    QUEEN = "Q"
    ROOK = "R"
    BISHOP = "B"
    KNIGHT = "N"
    PAWN = "P"


ROLE_ORDER = tuple(Role)
COLOR_ORDER = (Color.WHITE, Color.BLACK)


class PieceKind(BaseModel):
    """A colored piece kind; identical kinds are indistinguishable."""
    model_config = ConfigDict(frozen=True)

    role: Role
    color: Color

    @property
    def symbol(self) -> str:
        """FEN letter: uppercase for White, lowercase for Black."""
        return self.role.value if self.color is Color.WHITE else self.role.value.lower()

    @property
    def sort_key(self) -> tuple[int, int]:
        return COLOR_ORDER.index(self.color), ROLE_ORDER.index(self.role)

    @classmethod
    def from_symbol(cls, symbol: str) -> "PieceKind":
        role = Role(symbol.upper())
        return cls(role=role, color=Color.WHITE if symbol.isupper() else Color.BLACK)

    def swapped(self) -> "PieceKind":
        return PieceKind(role=self.role, color=self.color.other)


class PieceCount(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: PieceKind
    count: int = Field(ge=1, description="Multiplicity of the kind; absent kinds are omitted.")


class PieceSet(BaseModel):
    """A multiset of piece kinds, kept in canonical order (White before Black, then K,Q,R,B,N,P)."""
    model_config = ConfigDict(frozen=True)

    entries: tuple[PieceCount, ...] = ()

    @field_validator("entries")
    @classmethod
    def canonicalize(cls, v: tuple[PieceCount, ...]) -> tuple[PieceCount, ...]:
        merged: Counter = Counter()
        for entry in v:
            merged[entry.kind] += entry.count
        return tuple(PieceCount(kind=k, count=merged[k]) for k in sorted(merged, key=lambda k: k.sort_key))

    @classmethod
    def from_counts(cls, counts: Mapping[PieceKind, int]) -> "PieceSet":
        return cls(entries=tuple(PieceCount(kind=k, count=c) for k, c in counts.items()))

    @classmethod
    def from_kinds(cls, kinds: Iterable[PieceKind]) -> "PieceSet":
        return cls.from_counts(Counter(kinds))

    @property
    def total_pieces(self) -> int:
        return sum(e.count for e in self.entries)

    @property
    def kinds(self) -> tuple[PieceKind, ...]:
        return tuple(e.kind for e in self.entries)

    @property
    def multiplicities(self) -> tuple[int, ...]:
        return tuple(e.count for e in self.entries)

    @property
    def has_pawns(self) -> bool:
        return any(k.role is Role.PAWN for k in self.kinds)

    def count_of(self, kind: PieceKind) -> int:
        for entry in self.entries:
            if entry.kind == kind:
                return entry.count
        return 0

    def expand(self) -> tuple[PieceKind, ...]:
        """Canonical expansion with repetition, e.g. K N N N N k q."""
        return tuple(e.kind for e in self.entries for _ in range(e.count))

    def with_piece(self, kind: PieceKind, count: int = 1) -> "PieceSet":
        return PieceSet(entries=self.entries + (PieceCount(kind=kind, count=count),))

    def swapped_colors(self) -> "PieceSet":
        return PieceSet(entries=tuple(PieceCount(kind=e.kind.swapped(), count=e.count) for e in self.entries))


class BoardSpec(BaseModel):
    """Rectangular board; square index = rank * width + file, a1 = 0."""
    model_config = ConfigDict(frozen=True)

    width: int = Field(STANDARD_SIDE, ge=1, le=MAX_BOARD_SIDE, description="Number of files.")
    height: int = Field(STANDARD_SIDE, ge=1, le=MAX_BOARD_SIDE, description="Number of ranks.")

    @computed_field
    @property
    def squares(self) -> int:
        return self.width * self.height

    @property
    def is_standard(self) -> bool:
        return self.width == STANDARD_SIDE and self.height == STANDARD_SIDE

    @property
    def is_square(self) -> bool:
        return self.width == self.height

    @property
    def label(self) -> str:
        return f"{self.width}x{self.height}"

    def file_of(self, square: int) -> int:
        return square % self.width

    def rank_of(self, square: int) -> int:
        return square // self.width

    def square_at(self, file: int, rank: int) -> int:
        return rank * self.width + file

    @classmethod
    def parse(cls, text: str) -> "BoardSpec":
        """Parse 'WxH' (e.g. '8x8', '1x6')."""
        parts = text.strip().lower().split("x")
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise BoardSpecError(f"Board must be given as WxH, got {text!r}")
        width, height = int(parts[0]), int(parts[1])
        if not (1 <= width <= MAX_BOARD_SIDE and 1 <= height <= MAX_BOARD_SIDE):
            raise BoardSpecError(f"Board sides must be between 1 and {MAX_BOARD_SIDE}, got {text!r}")
        return cls(width=width, height=height)


STANDARD_BOARD = BoardSpec(width=STANDARD_SIDE, height=STANDARD_SIDE)


class SquareAssignment(BaseModel):
    model_config = ConfigDict(frozen=True)

    square: int = Field(ge=0)
    kind: PieceKind


class Placement(BaseModel):
    """Pieces on distinct squares, stored sorted by square (canonical form)."""
    model_config = ConfigDict(frozen=True)

    board: BoardSpec = STANDARD_BOARD
    assignments: tuple[SquareAssignment, ...] = ()
    side_to_move: Optional[Color] = None

    @field_validator("assignments")
    @classmethod
    def sort_by_square(cls, v: tuple[SquareAssignment, ...]) -> tuple[SquareAssignment, ...]:
        return tuple(sorted(v, key=lambda a: a.square))

    @model_validator(mode="after")
    def check_squares(self) -> "Placement":
        squares = [a.square for a in self.assignments]
        if len(set(squares)) != len(squares):
            raise ValueError("Placement squares must be distinct")
        if squares and squares[-1] >= self.board.squares:
            raise ValueError(f"Square {squares[-1]} is outside the {self.board.label} board")
        return self

    @classmethod
    def from_pairs(
        cls,
        board: BoardSpec,
        pairs: Iterable[tuple[int, PieceKind]],
        side_to_move: Optional[Color] = None,
    ) -> "Placement":
        return cls(
            board=board,
            assignments=tuple(SquareAssignment(square=s, kind=k) for s, k in pairs),
            side_to_move=side_to_move,
        )

    @property
    def piece_set(self) -> PieceSet:
        return PieceSet.from_kinds(a.kind for a in self.assignments)

    @property
    def occupied(self) -> frozenset[int]:
        return frozenset(a.square for a in self.assignments)

    def piece_at(self, square: int) -> Optional[PieceKind]:
        for a in self.assignments:
            if a.square == square:
                return a.kind
        return None


class LegalityReason(str, Enum):
    MISSING_KING = "missing-king"
    MULTIPLE_KINGS = "multiple-kings"
    PAWN_ON_TERMINAL_RANK = "pawn-on-terminal-rank"
    OPPONENT_IN_CHECK = "opponent-in-check"


class LegalityVerdict(BaseModel):
    model_config = ConfigDict(frozen=True)

    legal: bool
    reasons: tuple[LegalityReason, ...] = ()

    @model_validator(mode="after")
    def legal_iff_no_reasons(self) -> "LegalityVerdict":
        if self.legal == bool(self.reasons):
            raise ValueError("legal must be true exactly when reasons is empty")
        return self

    @classmethod
    def from_reasons(cls, reasons: Iterable[LegalityReason]) -> "LegalityVerdict":
        found = set(reasons)
        ordered = tuple(r for r in LegalityReason if r in found)
        return cls(legal=not ordered, reasons=ordered)


class SetViolation(BaseModel):
    model_config = ConfigDict(frozen=True)

    code: str = Field(description="missing-king, multiple-kings, too-many-pawns or too-many-pieces.")
    color: Optional[Color] = None

    def describe(self) -> str:
        return f"{self.code} ({self.color.display_name})" if self.color else self.code


class SetValidation(BaseModel):
    model_config = ConfigDict(frozen=True)

    violations: tuple[SetViolation, ...] = ()

    @computed_field
    @property
    def ok(self) -> bool:
        return not self.violations


class Ratio(BaseModel):
    """Exact ratio with deterministic decimal renderings."""
    model_config = ConfigDict(frozen=True)

    numerator: BigCount
    denominator: BigCount = Field(gt=0)
    precision: int = Field(ge=1)
    rendered: str = Field(description="numerator/denominator in plain decimal notation.")
    percent: str = Field(description="100 x numerator/denominator in plain decimal notation.")


class ExhaustiveTimeEstimate(BaseModel):
    model_config = ConfigDict(frozen=True)

    total: BigCount
    rate_per_second: BigCount = Field(gt=0)
    seconds: str
    days: str
    years: str


class EstimateResult(BaseModel):
    """Monte Carlo estimate of the legal fraction of a piece set's placements."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    piece_set: str
    board: str
    side_to_move: Color
    samples: int = Field(ge=1)
    legal_hits: int = Field(ge=0)
    point_estimate: float = Field(ge=0.0, le=1.0)
    ci_low: float = Field(ge=0.0, le=1.0)
    ci_high: float = Field(ge=0.0, le=1.0)
    confidence: float = Field(gt=0.0, lt=1.0)
    seed: int = Field(ge=0, lt=2**64)
    generator: str
    total_placements: BigCount
    estimated_legal_count: str

    @model_validator(mode="after")
    def check_interval(self) -> "EstimateResult":
        if self.legal_hits > self.samples:
            raise ValueError("legal_hits cannot exceed samples")
        if not (self.ci_low <= self.point_estimate <= self.ci_high):
            raise ValueError("interval must contain the point estimate")
        return self

    @property
    def halfwidth(self) -> float:
        return (self.ci_high - self.ci_low) / 2


class GroupId(str, Enum):
    IDENTITY = "id"
    MIRROR = "mirror"
    R180 = "r180"
    C4 = "c4"
    D4 = "d4"


class CycleStructure(BaseModel):
    """Disjoint cycles of one board permutation."""
    model_config = ConfigDict(frozen=True)

    cycles: tuple[tuple[int, ...], ...]

    @property
    def lengths(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.cycles)

    @property
    def squares(self) -> int:
        return sum(self.lengths)


class SymmetryGroup(BaseModel):
    model_config = ConfigDict(frozen=True)

    identifier: GroupId
    board: BoardSpec
    names: tuple[str, ...]
    elements: tuple[tuple[int, ...], ...] = Field(description="Square permutations; element[i] is the image of square i.")

    @property
    def order(self) -> int:
        return len(self.elements)


# === CLI / TOOL OUTPUT MODELS ===

class _Report(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")


class CountReport(_Report):
    piece_set: str
    board: str
    placements: BigCount
    side_to_move_factor: int = Field(ge=1, le=2)
    count: BigCount
    exhaustive_time: Optional[ExhaustiveTimeEstimate] = None


class EnumerationReport(_Report):
    piece_set: str
    board: str
    limit: Optional[int] = None
    count: int
    placements: list[str]


class LegalExactReport(_Report):
    piece_set: str
    board: str
    side_to_move: Color
    legal: BigCount
    total: BigCount
    fraction: Ratio


class ClassesReport(_Report):
    piece_set: str
    board: str
    group: GroupId
    group_order: int
    classes: BigCount
    placements: BigCount
    warnings: list[str] = []


class RatioReport(_Report):
    piece_set: str
    board: str
    examined: BigCount
    total: BigCount
    total_source: str = Field(description="board, explicit or tablebase.")
    fraction: str
    percent: str
    precision: int


class ErrorDetail(_Report):
    kind: str
    message: str


class ErrorReport(_Report):
    input: Optional[str] = None
    error: ErrorDetail
