"""
Placement counts up to board rotation and reflection (Burnside's lemma).

Group elements are square permutations built from numpy index grids
(grid[rank, file] = square). Counting is purely geometric; a 90 degree turn
is meaningless for pawns, which `symmetry_warnings` reports.
"""

import logging
from collections import defaultdict
from typing import Callable, Union

import numpy as np

from .errors import SymmetryGroupError
from .models import BoardSpec, CycleStructure, GroupId, PieceSet, Placement, SquareAssignment, SymmetryGroup
from .notation import serialize_placement

logger = logging.getLogger(__name__)

Permutation = tuple[int, ...]

# name -> (grid transform, needs a square board)
TRANSFORMS: dict[str, tuple[Callable[[np.ndarray], np.ndarray], bool]] = {
    "identity": (lambda g: g, False),
    "r90": (lambda g: np.rot90(g, 1), True),
    "r180": (lambda g: np.rot90(g, 2), False),
    "r270": (lambda g: np.rot90(g, 3), True),
    "flip-files": (np.fliplr, False),
    "flip-ranks": (np.flipud, False),
    "diagonal": (lambda g: g.T, True),
    "anti-diagonal": (lambda g: np.rot90(g, 2).T, True),
}

GROUP_ELEMENTS: dict[GroupId, tuple[str, ...]] = {
    GroupId.IDENTITY: ("identity",),
    GroupId.MIRROR: ("identity", "flip-files"),
    GroupId.R180: ("identity", "r180"),
    GroupId.C4: ("identity", "r90", "r180", "r270"),
    GroupId.D4: ("identity", "r90", "r180", "r270", "flip-files", "flip-ranks", "diagonal", "anti-diagonal"),
}

# groups whose elements keep White pawns moving up the board
PAWN_SAFE_GROUPS = frozenset({GroupId.IDENTITY, GroupId.MIRROR})


def default_group(board: BoardSpec) -> GroupId:
    return GroupId.C4 if board.is_square else GroupId.R180


def _permutation(board: BoardSpec, name: str) -> Permutation:
    transform, needs_square = TRANSFORMS[name]
    if needs_square and not board.is_square:
        raise SymmetryGroupError(f"{name} needs a square board, got {board.label}")
    grid = np.arange(board.squares).reshape(board.height, board.width)
    moved = transform(grid)
    # moved[r, f] is the square that lands on (r, f)
    image = np.empty(board.squares, dtype=np.int64)
    image[moved.ravel()] = np.arange(board.squares)
    return tuple(image.tolist())


def board_symmetries(board: BoardSpec, group: Union[GroupId, str]) -> SymmetryGroup:
    """Explicit square permutations of `group` acting on `board`."""
    try:
        group_id = GroupId(group)
    except ValueError:
        raise SymmetryGroupError(f"Unknown symmetry group {group!r}; choose from {[g.value for g in GroupId]}") from None
    if group_id in (GroupId.C4, GroupId.D4) and not board.is_square:
        raise SymmetryGroupError(f"Group {group_id.value} needs a square board, got {board.label}")
    names = GROUP_ELEMENTS[group_id]
    return SymmetryGroup(
        identifier=group_id,
        board=board,
        names=names,
        elements=tuple(_permutation(board, name) for name in names),
    )


def compose(outer: Permutation, inner: Permutation) -> Permutation:
    """Apply `inner`, then `outer`."""
    return tuple(outer[i] for i in inner)


def cycle_structure(element: Permutation, board: BoardSpec) -> CycleStructure:
    """Disjoint cycle decomposition of a board permutation."""
    if sorted(element) != list(range(board.squares)):
        raise ValueError(f"Not a permutation of the {board.squares} squares of a {board.label} board")
    seen = [False] * board.squares
    cycles = []
    for start in range(board.squares):
        if seen[start]:
            continue
        cycle, square = [], start
        while not seen[square]:
            seen[square] = True
            cycle.append(square)
            square = element[square]
        cycles.append(tuple(cycle))
    return CycleStructure(cycles=tuple(cycles))


def fixed_placements(cycles: CycleStructure, piece_set: PieceSet) -> int:
    """
    Placements left unchanged by a permutation with the given cycles.

    Each cycle is either empty or filled by a single kind, using up
    cycle-length copies of it. Dynamic programming over the cycles, keyed by
    the remaining multiplicity vector.
    """
    lengths = cycles.lengths
    squares_left = sum(lengths)
    states: dict[tuple[int, ...], int] = {piece_set.multiplicities: 1}
    for length in lengths:
        squares_left -= length
        following: dict[tuple[int, ...], int] = defaultdict(int)
        for remaining, ways in states.items():
            if sum(remaining) <= squares_left:
                following[remaining] += ways
            for k, left in enumerate(remaining):
                if left >= length:
                    after = remaining[:k] + (left - length,) + remaining[k + 1:]
                    if sum(after) <= squares_left:
                        following[after] += ways
        states = following
    return states.get(tuple(0 for _ in piece_set.multiplicities), 0)


def count_classes(board: BoardSpec, piece_set: PieceSet, group: Union[GroupId, str]) -> int:
    """Number of placement classes under `group`: the mean of the fixed-placement counts."""
    symmetries = board_symmetries(board, group)
    fixed = [fixed_placements(cycle_structure(e, board), piece_set) for e in symmetries.elements]
    classes, remainder = divmod(sum(fixed), symmetries.order)
    if remainder:
        raise ArithmeticError(f"Fixed-point sum {sum(fixed)} is not divisible by |G| = {symmetries.order}")
    logger.debug("fixed placements per element of %s: %s", symmetries.identifier.value, dict(zip(symmetries.names, fixed)))
    return classes


def apply_symmetry(element: Permutation, placement: Placement) -> Placement:
    return placement.model_copy(update={
        "assignments": tuple(sorted(
            (SquareAssignment(square=element[a.square], kind=a.kind) for a in placement.assignments),
            key=lambda a: a.square,
        )),
    })


def canonical_form(placement: Placement, symmetries: SymmetryGroup) -> str:
    """Smallest serialization among the placement's images under the group."""
    return min(serialize_placement(apply_symmetry(e, placement)) for e in symmetries.elements)


def symmetry_warnings(piece_set: PieceSet, group: Union[GroupId, str]) -> list[str]:
    if piece_set.has_pawns and GroupId(group) not in PAWN_SAFE_GROUPS:
        return [f"Group {GroupId(group).value} does not preserve pawn direction; class counts are geometric only"]
    return []

