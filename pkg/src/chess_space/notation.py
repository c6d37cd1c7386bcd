"""
Piece-set strings ("KNNNNvkq"), square names and board-field serialization.

Color is decided by position relative to the 'v' separator, never by letter
case, so "KNNNNvKRR" and "KNNNNvkrr" are the same set. Canonical output
lowercases Black.
"""

import logging
import re
from collections import Counter
from typing import Optional

from .config import STANDARD_SIDE
from .errors import ChessValidationError, PieceSetParseError, PlacementParseError
from .models import (
    COLOR_ORDER,
    BoardSpec,
    Color,
    PieceKind,
    PieceSet,
    Placement,
    Role,
    SetValidation,
    SetViolation,
    SquareAssignment,
)

logger = logging.getLogger(__name__)

SEPARATOR = "v"
PIECE_LETTERS = "".join(r.value for r in Role)
FILE_LETTERS = "abcdefghijklmnop"
MAX_PAWNS_PER_SIDE = 8
MAX_PIECES = STANDARD_SIDE * STANDARD_SIDE

_RUN_TOKEN = re.compile(r"\[(\d+)\]|(\d)|([A-Za-z])")


def parse_piece_set(text: str) -> PieceSet:
    """
    Parse `<white letters> v <black letters>`.

    Letters are K, Q, R, B, N, P in either case; either side may be empty.
    """
    text = text.strip()
    counts: Counter = Counter()
    color = Color.WHITE
    separator_at = None
    for position, char in enumerate(text):
        if char in (SEPARATOR, SEPARATOR.upper()):
            if separator_at is not None:
                raise PieceSetParseError(
                    f"Unexpected second separator {char!r} at position {position} in {text!r}",
                    character=char,
                    position=position,
                )
            separator_at = position
            color = Color.BLACK
            continue
        if char.upper() not in PIECE_LETTERS:
            raise PieceSetParseError(
                f"Invalid piece letter {char!r} at position {position} in {text!r}; allowed: {PIECE_LETTERS}",
                character=char,
                position=position,
            )
        counts[PieceKind(role=Role(char.upper()), color=color)] += 1
    if separator_at is None:
        raise PieceSetParseError(
            f"Missing separator 'v' in {text!r}",
            character="",
            position=len(text),
        )
    return PieceSet.from_counts(counts)


def format_piece_set(piece_set: PieceSet) -> str:
    """Canonical form: White uppercase, 'v', Black lowercase, each in K,Q,R,B,N,P order."""
    sides = {color: "" for color in COLOR_ORDER}
    for kind in piece_set.expand():
        sides[kind.color] += kind.symbol
    return f"{sides[Color.WHITE]}{SEPARATOR}{sides[Color.BLACK]}"


def validate_chess_set(piece_set: PieceSet) -> SetValidation:
    """Check one king per color, at most eight pawns per color and at most 64 pieces."""
    violations = []
    for color in COLOR_ORDER:
        kings = piece_set.count_of(PieceKind(role=Role.KING, color=color))
        if kings == 0:
            violations.append(SetViolation(code="missing-king", color=color))
        elif kings > 1:
            violations.append(SetViolation(code="multiple-kings", color=color))
        if piece_set.count_of(PieceKind(role=Role.PAWN, color=color)) > MAX_PAWNS_PER_SIDE:
            violations.append(SetViolation(code="too-many-pawns", color=color))
    if piece_set.total_pieces > MAX_PIECES:
        violations.append(SetViolation(code="too-many-pieces"))
    return SetValidation(violations=tuple(violations))


def require_chess_set(piece_set: PieceSet) -> None:
    """Raise ChessValidationError unless the set is a valid chess set."""
    result = validate_chess_set(piece_set)
    if not result.ok:
        raise ChessValidationError([v.describe() for v in result.violations])


def square_name(board: BoardSpec, square: int) -> str:
    return f"{FILE_LETTERS[board.file_of(square)]}{board.rank_of(square) + 1}"


def parse_square(board: BoardSpec, name: str) -> int:
    """Square index of a name such as 'e4'."""
    match = re.fullmatch(r"([a-p])(\d{1,2})", name.strip().lower())
    if not match:
        raise PlacementParseError(f"Invalid square name {name!r}")
    file, rank = FILE_LETTERS.index(match.group(1)), int(match.group(2)) - 1
    if file >= board.width or not 0 <= rank < board.height:
        raise PlacementParseError(f"Square {name!r} is outside the {board.label} board")
    return board.square_at(file, rank)


def _empty_run(length: int) -> str:
    return str(length) if length <= 9 else f"[{length}]"


def serialize_placement(placement: Placement) -> str:
    """
    Board field, highest rank first, ranks separated by '/'.

    On 8x8 boards this is the FEN board field; longer empty runs are written
    as bracketed lengths ("[12]"). The side to move follows after a space
    when present.
    """
    board = placement.board
    occupant = {a.square: a.kind for a in placement.assignments}
    ranks = []
    for rank in reversed(range(board.height)):
        text, empty = "", 0
        for file in range(board.width):
            kind = occupant.get(board.square_at(file, rank))
            if kind is None:
                empty += 1
                continue
            if empty:
                text += _empty_run(empty)
                empty = 0
            text += kind.symbol
        if empty:
            text += _empty_run(empty)
        ranks.append(text)
    field = "/".join(ranks)
    if placement.side_to_move is not None:
        field += f" {placement.side_to_move.value}"
    return field


def _parse_rank(text: str) -> tuple[int, list[tuple[int, PieceKind]]]:
    file, pieces, position = 0, [], 0
    while position < len(text):
        match = _RUN_TOKEN.match(text, position)
        if not match:
            raise PlacementParseError(f"Unexpected {text[position]!r} in rank {text!r}")
        bracketed, digit, letter = match.groups()
        if letter is not None:
            if letter.upper() not in PIECE_LETTERS:
                raise PlacementParseError(f"Invalid piece letter {letter!r} in rank {text!r}")
            pieces.append((file, PieceKind.from_symbol(letter)))
            file += 1
        else:
            run = int(bracketed if bracketed is not None else digit)
            if run == 0:
                raise PlacementParseError(f"Empty run of length 0 in rank {text!r}")
            file += run
        position = match.end()
    return file, pieces


def parse_placement(text: str, board: Optional[BoardSpec] = None) -> Placement:
    """Inverse of serialize_placement; the board is inferred from the ranks when omitted."""
    fields = text.split()
    if not 1 <= len(fields) <= 2:
        raise PlacementParseError(f"Expected a board field and optional side to move, got {text!r}")
    side_to_move = None
    if len(fields) == 2:
        try:
            side_to_move = Color(fields[1])
        except ValueError:
            raise PlacementParseError(f"Side to move must be 'w' or 'b', got {fields[1]!r}") from None

    rank_texts = fields[0].split("/")
    parsed = [_parse_rank(r) for r in rank_texts]
    widths = {width for width, _ in parsed}
    if len(widths) != 1:
        raise PlacementParseError(f"Ranks have differing widths {sorted(widths)} in {text!r}")
    inferred = BoardSpec(width=widths.pop(), height=len(rank_texts))
    if board is not None and board != inferred:
        raise PlacementParseError(f"Placement describes a {inferred.label} board, expected {board.label}")
    board = inferred

    assignments = []
    for index, (_, pieces) in enumerate(parsed):
        rank = board.height - 1 - index
        for file, kind in pieces:
            assignments.append(SquareAssignment(square=board.square_at(file, rank), kind=kind))
    return Placement(board=board, assignments=tuple(assignments), side_to_move=side_to_move)
