"""
Tests for attack generation and static legality.
"""
import sys
import random
from pathlib import Path

import chess
import pytest

# Add the project root to the Python path to allow imports
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.chess_space.errors import UnsupportedBoardError, UsageError
from src.chess_space.legality import attacks, is_legal, placement_violations, to_chess_board
from src.chess_space.models import BoardSpec, Color, LegalityReason, PieceKind, Placement, Role
from src.chess_space.notation import parse_placement

W = Color.WHITE
B = Color.BLACK


def kind(role, color):
    return PieceKind(role=role, color=color)


class TestAttacks:
    """Tests for attacks."""

    def test_knight_in_corner_region(self):
        """Nb1 attacks a3, c3 and d2."""
        result = attacks(chess.B1, kind(Role.KNIGHT, W), [chess.B1])
        assert result == chess.SquareSet([chess.A3, chess.C3, chess.D2])

    def test_rook_stops_at_blocker(self):
        """Re4 with a piece on e7 sees e7 but not e8."""
        result = attacks(chess.E4, kind(Role.ROOK, W), [chess.E4, chess.E7])
        assert chess.E7 in result
        assert chess.E8 not in result
        assert len(result) == 13

    def test_white_pawn_attacks_diagonally_forward(self):
        """Pe4 attacks d5 and f5."""
        assert attacks(chess.E4, kind(Role.PAWN, W), [chess.E4]) == chess.SquareSet([chess.D5, chess.F5])

    def test_black_pawn_attacks_diagonally_down(self):
        """pe5 attacks d4 and f4."""
        assert attacks(chess.E5, kind(Role.PAWN, B), [chess.E5]) == chess.SquareSet([chess.D4, chess.F4])

    def test_queen_combines_rook_and_bishop(self):
        """An unobstructed queen on d4 sees 27 squares."""
        assert len(attacks(chess.D4, kind(Role.QUEEN, B), [chess.D4])) == 27

    def test_king_on_edge(self):
        """Ka1 attacks a2, b1 and b2."""
        assert attacks(chess.A1, kind(Role.KING, W), [chess.A1]) == chess.SquareSet([chess.A2, chess.B1, chess.B2])

    def test_attacker_square_must_be_occupied(self):
        """The attacker's square is part of the occupancy."""
        with pytest.raises(ValueError, match="must be occupied"):
            attacks(chess.E4, kind(Role.ROOK, W), [chess.E7])

    def test_matches_python_chess(self):
        """Attack sets agree with python-chess on random boards."""
        rng = random.Random(11)
        kinds = [kind(r, c) for c in (W, B) for r in Role]
        for _ in range(300):
            squares = rng.sample(range(64), rng.randint(1, 10))
            placement = Placement.from_pairs(BoardSpec(), [(s, rng.choice(kinds)) for s in squares])
            board = to_chess_board(placement)
            for a in placement.assignments:
                assert attacks(a.square, a.kind, squares) == board.attacks(a.square)


class TestIsLegal:
    """Tests for is_legal."""

    def test_kings_apart(self):
        """Ke1 ke8, White to move: legal."""
        verdict = is_legal(parse_placement("4k3/8/8/8/8/8/8/4K3 w"))
        assert verdict.legal
        assert verdict.reasons == ()

    def test_adjacent_kings(self):
        """Ke1 ke2: the side not to move is in check."""
        verdict = is_legal(parse_placement("8/8/8/8/8/8/4k3/4K3 w"))
        assert not verdict.legal
        assert verdict.reasons == (LegalityReason.OPPONENT_IN_CHECK,)

    def test_checking_the_side_to_move_is_fine(self):
        """Black to move while in check from a White rook is legal."""
        verdict = is_legal(parse_placement("4k3/8/8/8/8/8/8/K3R3 b"))
        assert verdict.legal

    def test_checking_the_side_not_to_move_is_illegal(self):
        """The same position with White to move is illegal."""
        verdict = is_legal(parse_placement("4k3/8/8/8/8/8/8/K3R3 w"))
        assert verdict.reasons == (LegalityReason.OPPONENT_IN_CHECK,)

    def test_blocked_check(self):
        """A blocker between rook and king removes the check."""
        assert is_legal(parse_placement("4k3/8/8/4n3/8/8/8/K3R3 w")).legal

    def test_pawn_on_first_rank(self):
        """Pawns cannot stand on rank 1 or 8."""
        verdict = is_legal(parse_placement("4k3/8/8/8/8/8/8/K3P3 w"))
        assert verdict.reasons == (LegalityReason.PAWN_ON_TERMINAL_RANK,)

    def test_missing_king(self):
        """A side without a king is illegal."""
        verdict = is_legal(parse_placement("8/8/8/8/8/8/8/K7 w"))
        assert verdict.reasons == (LegalityReason.MISSING_KING,)

    def test_multiple_reasons_in_fixed_order(self):
        """Reasons are reported in a fixed order."""
        verdict = is_legal(parse_placement("p7/8/8/8/8/8/1k6/KK6 w"))
        assert verdict.reasons == (
            LegalityReason.MULTIPLE_KINGS,
            LegalityReason.PAWN_ON_TERMINAL_RANK,
            LegalityReason.OPPONENT_IN_CHECK,
        )

    def test_requires_side_to_move(self):
        """Legality depends on the side to move."""
        with pytest.raises(UsageError):
            is_legal(parse_placement("4k3/8/8/8/8/8/8/4K3"))

    def test_requires_standard_board(self):
        """Only 8x8 boards are supported."""
        with pytest.raises(UnsupportedBoardError):
            is_legal(parse_placement("K1k w"))

    def test_color_symmetry(self):
        """Swapping colors, mirroring ranks and swapping the side to move keeps the verdict."""
        rng = random.Random(3)
        others = [kind(r, c) for c in (W, B) for r in (Role.QUEEN, Role.ROOK, Role.BISHOP, Role.KNIGHT, Role.PAWN)]
        for _ in range(500):
            squares = rng.sample(range(64), rng.randint(2, 7))
            pieces = [kind(Role.KING, W), kind(Role.KING, B)] + [rng.choice(others) for _ in squares[2:]]
            stm = rng.choice([W, B])
            original = placement_violations(zip(squares, pieces), stm)
            mirrored = placement_violations(
                ((chess.square_mirror(s), k.swapped()) for s, k in zip(squares, pieces)), stm.other,
            )
            assert original == mirrored

    def test_agrees_with_python_chess_status(self):
        """Static legality matches python-chess on positions with one king each."""
        rng = random.Random(5)
        others = [kind(r, c) for c in (W, B) for r in (Role.QUEEN, Role.ROOK, Role.BISHOP, Role.KNIGHT, Role.PAWN)]
        relevant = chess.STATUS_NO_WHITE_KING | chess.STATUS_NO_BLACK_KING | chess.STATUS_TOO_MANY_KINGS \
            | chess.STATUS_PAWNS_ON_BACKRANK | chess.STATUS_OPPOSITE_CHECK
        for _ in range(1000):
            squares = rng.sample(range(64), rng.randint(2, 6))
            pieces = [kind(Role.KING, W), kind(Role.KING, B)] + [rng.choice(others) for _ in squares[2:]]
            placement = Placement.from_pairs(BoardSpec(), zip(squares, pieces), rng.choice([W, B]))
            verdict = is_legal(placement)
            status = to_chess_board(placement).status()
            assert verdict.legal == (not status & relevant)
