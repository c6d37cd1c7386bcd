"""
Static legality of placements on the standard board.

A placement is legal when each side has exactly one king, no pawn stands on
the first or last rank, and the side not to move is not in check. Castling,
en passant and repetition need move history and are not considered.

Attack sets come from python-chess's precomputed bitboard tables; square
indices coincide with python-chess's (a1 = 0, h8 = 63).
"""

import logging
from typing import Iterable

import chess

from .errors import UnsupportedBoardError, UsageError
from .models import Color, LegalityReason, LegalityVerdict, PieceKind, Placement, Role

logger = logging.getLogger(__name__)

PIECE_TYPES = {
    Role.KING: chess.KING,
    Role.QUEEN: chess.QUEEN,
    Role.ROOK: chess.ROOK,
    Role.BISHOP: chess.BISHOP,
    Role.KNIGHT: chess.KNIGHT,
    Role.PAWN: chess.PAWN,
}

BB_TERMINAL_RANKS = chess.BB_RANK_1 | chess.BB_RANK_8


def attacks_mask(square: int, kind: PieceKind, occupied: int) -> int:
    """Bitboard of squares attacked from `square`; sliders stop at (and include) the first blocker."""
    role = kind.role
    if role is Role.KING:
        return chess.BB_KING_ATTACKS[square]
    if role is Role.KNIGHT:
        return chess.BB_KNIGHT_ATTACKS[square]
    if role is Role.PAWN:
        return chess.BB_PAWN_ATTACKS[kind.color is Color.WHITE][square]
    mask = 0
    if role in (Role.BISHOP, Role.QUEEN):
        mask |= chess.BB_DIAG_ATTACKS[square][chess.BB_DIAG_MASKS[square] & occupied]
    if role in (Role.ROOK, Role.QUEEN):
        mask |= chess.BB_RANK_ATTACKS[square][chess.BB_RANK_MASKS[square] & occupied]
        mask |= chess.BB_FILE_ATTACKS[square][chess.BB_FILE_MASKS[square] & occupied]
    return mask


def attacks(attacker_square: int, kind: PieceKind, occupied: Iterable[int]) -> chess.SquareSet:
    """Squares attacked by a `kind` piece on `attacker_square` given the occupied squares."""
    occupied_set = chess.SquareSet(occupied)
    if attacker_square not in occupied_set:
        raise ValueError(f"Attacker square {chess.square_name(attacker_square)} must be occupied")
    return chess.SquareSet(attacks_mask(attacker_square, kind, int(occupied_set)))


def placement_violations(pairs: Iterable[tuple[int, PieceKind]], side_to_move: Color) -> tuple[LegalityReason, ...]:
    """Violated legality rules for (square, kind) pairs on the standard board."""
    pairs = tuple(pairs)
    reasons = set()
    occupied = 0
    kings = {Color.WHITE: 0, Color.BLACK: 0}
    king_counts = {Color.WHITE: 0, Color.BLACK: 0}
    for square, kind in pairs:
        bb = chess.BB_SQUARES[square]
        occupied |= bb
        if kind.role is Role.KING:
            kings[kind.color] |= bb
            king_counts[kind.color] += 1
        elif kind.role is Role.PAWN and bb & BB_TERMINAL_RANKS:
            reasons.add(LegalityReason.PAWN_ON_TERMINAL_RANK)

    for count in king_counts.values():
        if count == 0:
            reasons.add(LegalityReason.MISSING_KING)
        elif count > 1:
            reasons.add(LegalityReason.MULTIPLE_KINGS)

    target = kings[side_to_move.other]
    if target:
        for square, kind in pairs:
            if kind.color is side_to_move and attacks_mask(square, kind, occupied) & target:
                reasons.add(LegalityReason.OPPONENT_IN_CHECK)
                break
    return tuple(r for r in LegalityReason if r in reasons)


def is_legal(placement: Placement) -> LegalityVerdict:
    """Legality verdict for a placement on the standard board with a side to move."""
    if not placement.board.is_standard:
        raise UnsupportedBoardError(f"Legality is defined for 8x8 boards only, got {placement.board.label}")
    if placement.side_to_move is None:
        raise UsageError("Legality needs a side to move")
    reasons = placement_violations(((a.square, a.kind) for a in placement.assignments), placement.side_to_move)
    return LegalityVerdict.from_reasons(reasons)


def to_chess_board(placement: Placement) -> chess.Board:
    """python-chess board holding the placement (no castling rights, no en passant square)."""
    if not placement.board.is_standard:
        raise UnsupportedBoardError(f"python-chess boards are 8x8, got {placement.board.label}")
    board = chess.Board(None)
    for a in placement.assignments:
        board.set_piece_at(a.square, chess.Piece(PIECE_TYPES[a.kind.role], a.kind.color is Color.WHITE))
    board.turn = placement.side_to_move is not Color.BLACK
    return board
