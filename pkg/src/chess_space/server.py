# src/chess_space/server.py
import logging
from typing import Any, Optional

import anyio
from pydantic import Field
from typing_extensions import Annotated

from fastmcp import FastMCP, Context

from . import counting, enumeration, sampling, symmetry
from .config import DEFAULT_CONFIDENCE, SpaceConfig
from .legality import is_legal
from .models import STANDARD_BOARD, BoardSpec, Color, GroupId
from .notation import format_piece_set, parse_piece_set, parse_placement, serialize_placement

logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

mcp = FastMCP(
    name="Chess Search Space",
    instructions="Counts, enumerates, samples and classifies placements of chess piece sets.",
)

SetInput = Annotated[str, Field(description="Piece set such as 'KNNNNvkq' (white before 'v', black after).")]
BoardInput = Annotated[str, Field(description="Board as WxH, e.g. '8x8'.")]


def _board(text: str) -> BoardSpec:
    return BoardSpec.parse(text) if text else STANDARD_BOARD


# === TOOLS ===

async def count_placements(
    piece_set: SetInput,
    ctx: Context,
    board: BoardInput = "8x8",
    side_to_move_factor: Annotated[bool, Field(description="Double the count for side to move.")] = False,
) -> dict[str, Any]:
    """Exact number of distinct placements of a piece set on a board."""
    await ctx.info(f"Counting placements of {piece_set} on {board}")
    try:
        spec, pieces = _board(board), parse_piece_set(piece_set)
        placements = counting.multiset_placements(spec, pieces)
        factor = 2 if side_to_move_factor else 1
        return {
            "piece_set": format_piece_set(pieces),
            "board": spec.label,
            "placements": str(placements),
            "count": str(placements * factor),
        }
    except Exception as e:
        await ctx.error(f"Error counting placements: {e}")
        raise ValueError(f"Failed to count placements: {e}") from e


async def effort_ratio(
    examined: Annotated[int, Field(ge=0, description="Positions examined.")],
    total: Annotated[int, Field(gt=0, description="Size of the search space.")],
    ctx: Context,
    precision: Annotated[Optional[int], Field(ge=1, description="Significant figures.")] = None,
) -> dict[str, Any]:
    """Share of a search space that was examined, as a fraction and a percentage."""
    await ctx.info(f"Computing effort ratio {examined}/{total}")
    try:
        digits = precision or SpaceConfig.from_env().precision
        return counting.effort_ratio(examined, total, digits).model_dump(mode="json")
    except Exception as e:
        await ctx.error(f"Error computing effort ratio: {e}")
        raise ValueError(f"Failed to compute effort ratio: {e}") from e


async def enumerate_placements(
    piece_set: SetInput,
    ctx: Context,
    board: BoardInput = "8x8",
    limit: Annotated[int, Field(ge=0, le=10_000, description="Maximum placements returned.")] = 100,
) -> dict[str, Any]:
    """Lists placements of a piece set in deterministic order (small boards only)."""
    await ctx.info(f"Enumerating up to {limit} placements of {piece_set} on {board}")
    config = SpaceConfig.from_env()
    try:
        spec, pieces = _board(board), parse_piece_set(piece_set)
        placements = await anyio.to_thread.run_sync(
            lambda: [serialize_placement(p) for p in enumeration.enumerate_placements(
                spec, pieces, limit=limit, budget=config.enumeration_budget,
            )]
        )
        return {"piece_set": format_piece_set(pieces), "board": spec.label, "count": len(placements), "placements": placements}
    except Exception as e:
        await ctx.error(f"Error enumerating placements: {e}")
        raise ValueError(f"Failed to enumerate placements: {e}") from e


async def count_legal_exact(
    piece_set: SetInput,
    side_to_move: Annotated[str, Field(description="'w' or 'b'.")],
    ctx: Context,
) -> dict[str, Any]:
    """Exact legal and total placement counts on the standard board."""
    await ctx.info(f"Counting legal placements of {piece_set} with {side_to_move} to move")
    config = SpaceConfig.from_env()
    try:
        pieces, stm = parse_piece_set(piece_set), Color(side_to_move)
        legal, total = await anyio.to_thread.run_sync(
            lambda: enumeration.count_legal_by_enumeration(STANDARD_BOARD, pieces, stm, budget=config.enumeration_budget)
        )
        return {
            "piece_set": format_piece_set(pieces),
            "side_to_move": stm.value,
            "legal": str(legal),
            "total": str(total),
            "fraction": counting.render_significant(legal, total, config.precision),
        }
    except Exception as e:
        await ctx.error(f"Error counting legal placements: {e}")
        raise ValueError(f"Failed to count legal placements: {e}") from e


async def estimate_legal_fraction(
    piece_set: SetInput,
    samples: Annotated[int, Field(ge=1, description="Number of uniform samples.")],
    seed: Annotated[int, Field(ge=0, lt=2**64, description="Seed; results are reproducible from it.")],
    ctx: Context,
    side_to_move: Annotated[str, Field(description="'w' or 'b'.")] = "w",
    confidence: Annotated[float, Field(gt=0.0, lt=1.0)] = DEFAULT_CONFIDENCE,
) -> dict[str, Any]:
    """Monte Carlo estimate of the legal fraction with a Wilson interval."""
    await ctx.info(f"Sampling {samples} placements of {piece_set} (seed {seed})")
    config = SpaceConfig.from_env()
    try:
        pieces, stm = parse_piece_set(piece_set), Color(side_to_move)
        result = await anyio.to_thread.run_sync(
            lambda: sampling.estimate_legal_fraction(
                STANDARD_BOARD, pieces, samples=samples, seed=seed, confidence=confidence,
                side_to_move=stm, chunk_size=config.sample_chunk_size, workers=config.workers,
            )
        )
        return result.model_dump(mode="json")
    except Exception as e:
        await ctx.error(f"Error estimating legal fraction: {e}")
        raise ValueError(f"Failed to estimate legal fraction: {e}") from e


async def count_classes(
    piece_set: SetInput,
    ctx: Context,
    board: BoardInput = "8x8",
    group: Annotated[Optional[str], Field(description="id, mirror, r180, c4 or d4.")] = None,
) -> dict[str, Any]:
    """Number of placements up to board rotation and reflection."""
    await ctx.info(f"Counting classes of {piece_set} on {board}")
    try:
        spec, pieces = _board(board), parse_piece_set(piece_set)
        group_id = GroupId(group) if group else symmetry.default_group(spec)
        for warning in symmetry.symmetry_warnings(pieces, group_id):
            await ctx.warning(warning)
        classes = await anyio.to_thread.run_sync(lambda: symmetry.count_classes(spec, pieces, group_id))
        return {"piece_set": format_piece_set(pieces), "board": spec.label, "group": group_id.value, "classes": str(classes)}
    except Exception as e:
        await ctx.error(f"Error counting classes: {e}")
        raise ValueError(f"Failed to count classes: {e}") from e


async def check_legality(
    placement: Annotated[str, Field(description="Placement in board notation with side to move, e.g. '8/8/8/8/8/8/8/K6k w'.")],
    ctx: Context,
) -> dict[str, Any]:
    """Static legality verdict for one placement on the standard board."""
    await ctx.info(f"Checking legality of {placement}")
    try:
        verdict = is_legal(parse_placement(placement, STANDARD_BOARD))
        return verdict.model_dump(mode="json")
    except Exception as e:
        await ctx.error(f"Error checking legality: {e}")
        raise ValueError(f"Failed to check legality: {e}") from e


for _tool in (
    count_placements,
    effort_ratio,
    enumerate_placements,
    count_legal_exact,
    estimate_legal_fraction,
    count_classes,
    check_legality,
):
    mcp.tool()(_tool)


if __name__ == "__main__":
    logger.info("Starting Chess Search Space MCP server...")
    mcp.run()
