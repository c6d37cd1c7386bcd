"""
Exhaustive enumeration of placements on small boards.

This is an independent oracle for the counting formula: it walks the piece
kinds in canonical order and, for each kind, every combination of the still
free squares, so identical pieces are never permuted among themselves.
"""

import itertools
import logging
from typing import Iterator, Optional

from .config import ENUMERATION_BUDGET
from .counting import falling_factorial
from .errors import BudgetExceededError, UnsupportedBoardError
from .legality import placement_violations
from .models import BoardSpec, Color, PieceCount, PieceKind, PieceSet, Placement, SquareAssignment
from .notation import require_chess_set

logger = logging.getLogger(__name__)

Pairs = tuple[tuple[int, PieceKind], ...]


def check_budget(board: BoardSpec, piece_set: PieceSet, budget: int = ENUMERATION_BUDGET) -> int:
    """Raise BudgetExceededError when the ordered-sequence count exceeds `budget`."""
    raw = falling_factorial(board.squares, piece_set.total_pieces)
    logger.debug("enumeration budget check on %s: %d raw sequences, budget %d", board.label, raw, budget)
    if raw > budget:
        raise BudgetExceededError(raw_count=raw, budget=budget)
    return raw


def _walk(entries: tuple[PieceCount, ...], free: tuple[int, ...], chosen: list[tuple[int, PieceKind]]) -> Iterator[Pairs]:
    if not entries:
        yield tuple(sorted(chosen))
        return
    head, rest = entries[0], entries[1:]
    for squares in itertools.combinations(free, head.count):
        taken = set(squares)
        remaining = tuple(s for s in free if s not in taken)
        chosen.extend((s, head.kind) for s in squares)
        yield from _walk(rest, remaining, chosen)
        del chosen[-head.count:]


def iter_square_pairs(board: BoardSpec, piece_set: PieceSet) -> Iterator[Pairs]:
    """Every distinct placement as sorted (square, kind) pairs, in deterministic order."""
    return _walk(piece_set.entries, tuple(range(board.squares)), [])


def enumerate_placements(
    board: BoardSpec,
    piece_set: PieceSet,
    limit: Optional[int] = None,
    side_to_move: Optional[Color] = None,
    budget: int = ENUMERATION_BUDGET,
) -> Iterator[Placement]:
    """
    Yield every distinct placement of `piece_set` on `board` exactly once.

    Order is lexicographic over each kind's sorted square tuple, kinds in
    canonical order. The budget is checked before anything is yielded.
    """
    check_budget(board, piece_set, budget)
    if limit is not None and limit < 0:
        raise ValueError(f"Limit must be non-negative, got {limit}")

    def _stream() -> Iterator[Placement]:
        pairs_stream = iter_square_pairs(board, piece_set)
        if limit is not None:
            pairs_stream = itertools.islice(pairs_stream, limit)
        for pairs in pairs_stream:
            # pairs are already sorted and distinct, skip re-validation
            yield Placement.model_construct(
                board=board,
                assignments=tuple(SquareAssignment.model_construct(square=s, kind=k) for s, k in pairs),
                side_to_move=side_to_move,
            )

    return _stream()


def count_by_enumeration(board: BoardSpec, piece_set: PieceSet, budget: int = ENUMERATION_BUDGET) -> int:
    """Count distinct placements by walking them all."""
    raw = check_budget(board, piece_set, budget)
    logger.info("Enumerating %s on %s (%d raw sequences)...", piece_set.multiplicities, board.label, raw)
    return sum(1 for _ in iter_square_pairs(board, piece_set))


def count_legal_by_enumeration(
    board: BoardSpec,
    piece_set: PieceSet,
    side_to_move: Color,
    budget: int = ENUMERATION_BUDGET,
) -> tuple[int, int]:
    """Exact (legal, total) placement counts with the given side to move."""
    if not board.is_standard:
        raise UnsupportedBoardError(f"Legality is defined for 8x8 boards only, got {board.label}")
    require_chess_set(piece_set)
    check_budget(board, piece_set, budget)
    legal = total = 0
    for pairs in iter_square_pairs(board, piece_set):
        total += 1
        if not placement_violations(pairs, side_to_move):
            legal += 1
    logger.info("Exact legality: %d of %d placements legal with %s to move", legal, total, side_to_move.display_name)
    return legal, total
