"""
Exact placement counting for piece sets.

Every count here is a Python int, so results never overflow; ratios are
rendered from the exact rational value with decimal arithmetic rounded half
away from zero.
"""

import logging
import math
from decimal import ROUND_HALF_UP, Decimal, localcontext

from .config import DAYS_PER_YEAR, DEFAULT_PRECISION, SECONDS_PER_DAY
from .errors import UndefinedRatioError
from .models import BoardSpec, ExhaustiveTimeEstimate, PieceSet, Ratio

logger = logging.getLogger(__name__)


def falling_factorial(squares: int, pieces: int) -> int:
    """
    Number of ordered selections of `pieces` distinct squares out of `squares`.

    Returns 1 for pieces == 0 and 0 when pieces > squares.
    """
    if squares < 0 or pieces < 0:
        raise ValueError(f"Counts must be non-negative, got squares={squares}, pieces={pieces}")
    return math.perm(squares, pieces)


def multiplicity_divisor(piece_set: PieceSet) -> int:
    """Product of factorial(multiplicity) over the set's kinds."""
    return math.prod(math.factorial(m) for m in piece_set.multiplicities)


def multiset_placements(board: BoardSpec, piece_set: PieceSet) -> int:
    """
    Number of distinct placements of `piece_set` on `board`.

    Identical pieces are interchangeable, so the ordered count is divided by
    the multiplicity divisor.
    """
    ordered = falling_factorial(board.squares, piece_set.total_pieces)
    divisor = multiplicity_divisor(piece_set)
    placements, remainder = divmod(ordered, divisor)
    if remainder:
        raise ArithmeticError(f"{divisor} does not divide {ordered}")
    logger.debug(
        "placements on %s: %d pieces, %d ordered / %d = %d",
        board.label, piece_set.total_pieces, ordered, divisor, placements,
    )
    return placements


def render_significant(numerator: int, denominator: int, precision: int = DEFAULT_PRECISION) -> str:
    """
    Render numerator/denominator in plain decimal notation, rounded to
    `precision` significant figures (half away from zero), trailing zeros dropped.
    """
    if denominator <= 0:
        raise UndefinedRatioError("Ratio denominator must be positive")
    if precision < 1:
        raise ValueError(f"Precision must be at least 1, got {precision}")
    with localcontext() as ctx:
        ctx.prec = precision
        ctx.rounding = ROUND_HALF_UP
        value = (Decimal(numerator) / Decimal(denominator)).normalize()
    return format(value, "f")


def effort_ratio(examined: int, total: int, precision: int = DEFAULT_PRECISION) -> Ratio:
    """Share of a search space that was examined, as a fraction and a percentage."""
    if total == 0:
        raise UndefinedRatioError("Effort ratio is undefined for an empty search space")
    if examined < 0 or total < 0:
        raise ValueError(f"Counts must be non-negative, got examined={examined}, total={total}")
    return Ratio(
        numerator=examined,
        denominator=total,
        precision=precision,
        rendered=render_significant(examined, total, precision),
        percent=render_significant(100 * examined, total, precision),
    )


def exhaustive_time(total: int, rate_per_second: int, precision: int = DEFAULT_PRECISION) -> ExhaustiveTimeEstimate:
    """Time needed to examine every one of `total` positions at a fixed rate."""
    if rate_per_second <= 0:
        raise ValueError(f"Rate must be positive, got {rate_per_second}")
    # exact 1461/4 days per year
    year_num, year_den = Decimal(DAYS_PER_YEAR).as_integer_ratio()
    return ExhaustiveTimeEstimate(
        total=total,
        rate_per_second=rate_per_second,
        seconds=render_significant(total, rate_per_second, precision),
        days=render_significant(total, rate_per_second * SECONDS_PER_DAY, precision),
        years=render_significant(total * year_den, rate_per_second * SECONDS_PER_DAY * year_num, precision),
    )
