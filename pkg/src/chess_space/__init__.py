"""
Search-space sizes of chess piece sets: exact counts, enumeration,
legality sampling and symmetry classes.
"""

# Export models and core operations for external use
from .models import (
    BoardSpec,
    Color,
    EstimateResult,
    GroupId,
    PieceKind,
    PieceSet,
    Placement,
    Role,
    STANDARD_BOARD,
)
from .counting import effort_ratio, exhaustive_time, falling_factorial, multiset_placements, render_significant
from .notation import format_piece_set, parse_piece_set, parse_placement, serialize_placement, validate_chess_set
from .enumeration import count_by_enumeration, count_legal_by_enumeration, enumerate_placements
from .legality import attacks, is_legal
from .sampling import estimate_legal_fraction, sample_uniform_placement, wilson_interval
from .symmetry import board_symmetries, count_classes, cycle_structure, fixed_placements

# Don't import server module here; it pulls in fastmcp
# The mcp instance should be imported directly from server module
