"""
Tests for board symmetries and Burnside class counting.
"""
import sys
from itertools import combinations_with_replacement
from pathlib import Path

import pytest

# Add the project root to the Python path to allow imports
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.chess_space.counting import multiset_placements
from src.chess_space.enumeration import enumerate_placements
from src.chess_space.errors import SymmetryGroupError
from src.chess_space.models import BoardSpec, Color, CycleStructure, GroupId, PieceKind, PieceSet, Role
from src.chess_space.notation import parse_piece_set
from src.chess_space.symmetry import (
    board_symmetries,
    canonical_form,
    compose,
    count_classes,
    cycle_structure,
    default_group,
    fixed_placements,
    symmetry_warnings,
)

A = PieceKind(role=Role.KNIGHT, color=Color.WHITE)
B = PieceKind(role=Role.ROOK, color=Color.BLACK)
C = PieceKind(role=Role.BISHOP, color=Color.WHITE)


class TestBoardSymmetries:
    """Tests for board_symmetries."""

    @pytest.mark.parametrize("group", list(GroupId))
    def test_group_axioms_on_square_board(self, group):
        """Elements are permutations, include the identity and are closed under composition."""
        board = BoardSpec(width=4, height=4)
        symmetries = board_symmetries(board, group)
        elements = set(symmetries.elements)
        identity = tuple(range(16))
        assert identity in elements
        assert len(elements) == symmetries.order
        for g in elements:
            assert sorted(g) == list(range(16))
            for h in elements:
                assert compose(g, h) in elements

    def test_orders(self, standard_board):
        """id 1, mirror 2, r180 2, c4 4, d4 8."""
        orders = {g: board_symmetries(standard_board, g).order for g in GroupId}
        assert orders == {GroupId.IDENTITY: 1, GroupId.MIRROR: 2, GroupId.R180: 2, GroupId.C4: 4, GroupId.D4: 8}

    def test_quarter_turn_on_rectangle_rejected(self):
        """c4 and d4 need a square board."""
        with pytest.raises(SymmetryGroupError):
            board_symmetries(BoardSpec(width=2, height=3), GroupId.C4)
        with pytest.raises(SymmetryGroupError):
            board_symmetries(BoardSpec(width=2, height=3), "d4")

    def test_unknown_group(self, standard_board):
        """Only the named groups exist."""
        with pytest.raises(SymmetryGroupError, match="Unknown"):
            board_symmetries(standard_board, "c3")

    def test_default_group(self):
        """c4 on square boards, r180 otherwise."""
        assert default_group(BoardSpec()) is GroupId.C4
        assert default_group(BoardSpec(width=1, height=6)) is GroupId.R180


class TestCycleStructure:
    """Tests for cycle_structure."""

    def test_quarter_turn_on_standard_board(self, standard_board):
        """A 90 degree turn of 8x8 has sixteen 4-cycles."""
        r90 = board_symmetries(standard_board, GroupId.C4).elements[1]
        assert cycle_structure(r90, standard_board).lengths == (4,) * 16

    def test_half_turn_on_odd_board(self):
        """A half turn of 3x3 fixes the centre and pairs the other 8 squares."""
        board = BoardSpec(width=3, height=3)
        r180 = board_symmetries(board, GroupId.R180).elements[1]
        assert sorted(cycle_structure(r180, board).lengths) == [1, 2, 2, 2, 2]

    def test_cycles_partition_the_squares(self):
        """Every square lies in exactly one cycle."""
        board = BoardSpec(width=5, height=5)
        for element in board_symmetries(board, GroupId.D4).elements:
            cycles = cycle_structure(element, board)
            assert sorted(s for c in cycles.cycles for s in c) == list(range(25))
            assert cycles.squares == 25

    def test_rejects_non_permutation(self):
        """A repeated image is not a permutation."""
        with pytest.raises(ValueError):
            cycle_structure((0, 0, 1, 2), BoardSpec(width=2, height=2))


class TestFixedPlacements:
    """Tests for fixed_placements."""

    def test_identity_fixes_everything(self, standard_board, knights_vs_queen):
        """Under the identity every placement is fixed."""
        identity = CycleStructure(cycles=tuple((s,) for s in range(64)))
        assert fixed_placements(identity, knights_vs_queen) == multiset_placements(standard_board, knights_vs_queen)

    def test_two_identical_pieces_under_half_turn(self):
        """Two identical pieces on 2x2 under r180: the two diagonals."""
        board = BoardSpec(width=2, height=2)
        r180 = board_symmetries(board, GroupId.R180).elements[1]
        assert fixed_placements(cycle_structure(r180, board), PieceSet.from_kinds([A, A])) == 2

    def test_distinct_pieces_not_fixed_by_free_rotation(self):
        """A rotation without fixed squares fixes no placement of distinct pieces."""
        board = BoardSpec(width=2, height=2)
        r90 = board_symmetries(board, GroupId.C4).elements[1]
        assert fixed_placements(cycle_structure(r90, board), PieceSet.from_kinds([A, B])) == 0

    def test_four_identical_fill_one_cycle(self):
        """Four identical pieces fill the single 4-cycle of a quarter-turned 2x2."""
        board = BoardSpec(width=2, height=2)
        r90 = board_symmetries(board, GroupId.C4).elements[1]
        assert fixed_placements(cycle_structure(r90, board), PieceSet.from_kinds([A] * 4)) == 1

    def test_empty_set(self):
        """The empty placement is fixed by everything."""
        assert fixed_placements(CycleStructure(cycles=((0, 1), (2, 3))), PieceSet()) == 1


class TestCountClasses:
    """Tests for count_classes."""

    def test_two_distinct_pieces_on_two_by_two(self):
        """12 placements fall into 3 classes under c4."""
        assert count_classes(BoardSpec(width=2, height=2), PieceSet.from_kinds([A, B]), GroupId.C4) == 3

    def test_one_piece_on_two_by_two(self):
        """All four squares are equivalent."""
        assert count_classes(BoardSpec(width=2, height=2), PieceSet.from_kinds([A]), GroupId.C4) == 1

    def test_one_piece_on_standard_board(self, standard_board):
        """64 squares, 16 rotation orbits."""
        assert count_classes(standard_board, PieceSet.from_kinds([A]), GroupId.C4) == 16

    def test_one_piece_under_full_group(self, standard_board):
        """Under d4 a lone piece has 10 distinct squares."""
        assert count_classes(standard_board, PieceSet.from_kinds([A]), GroupId.D4) == 10

    def test_identity_group_is_plain_count(self, standard_board, knights_vs_queen):
        """With only the identity, classes equal placements."""
        assert count_classes(standard_board, knights_vs_queen, GroupId.IDENTITY) == 130455400320

    def test_bounds(self, standard_board, knights_vs_queen):
        """placements / |G| <= classes <= placements."""
        placements = multiset_placements(standard_board, knights_vs_queen)
        for group in GroupId:
            classes = count_classes(standard_board, knights_vs_queen, group)
            order = board_symmetries(standard_board, group).order
            assert placements <= classes * order
            assert classes <= placements

    @pytest.mark.slow
    @pytest.mark.parametrize("board", [BoardSpec(width=w, height=h) for w in range(1, 4) for h in range(1, 4)],
                             ids=lambda b: b.label)
    def test_matches_brute_force_orbits(self, board):
        """Counting distinct canonical forms gives the same number of classes."""
        groups = [g for g in GroupId if board.is_square or g not in (GroupId.C4, GroupId.D4)]
        for size in range(0, 4):
            for pieces in combinations_with_replacement((A, B, C), size):
                piece_set = PieceSet.from_kinds(pieces)
                for group in groups:
                    symmetries = board_symmetries(board, group)
                    orbits = {canonical_form(p, symmetries) for p in enumerate_placements(board, piece_set)}
                    assert count_classes(board, piece_set, group) == len(orbits)


class TestSymmetryWarnings:
    """Tests for symmetry_warnings."""

    def test_pawns_under_rotation(self):
        """Rotations do not respect pawn direction."""
        warnings = symmetry_warnings(parse_piece_set("KPvk"), GroupId.C4)
        assert len(warnings) == 1
        assert "pawn" in warnings[0]

    def test_pawns_under_mirror(self):
        """A left-right mirror keeps pawns moving forward."""
        assert symmetry_warnings(parse_piece_set("KPvk"), GroupId.MIRROR) == []

    def test_no_pawns(self):
        """Pawnless sets never warn."""
        assert symmetry_warnings(parse_piece_set("KNNNNvkq"), GroupId.D4) == []
