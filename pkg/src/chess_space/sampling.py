"""
Uniform placement sampling and Monte Carlo estimates of the legal fraction.

Samples are drawn in fixed-size chunks. Chunk c uses a Philox generator keyed
by SeedSequence(seed, spawn_key=(c,)), so each sample depends only on the
seed and its index; results are identical for any number of workers.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Iterator, Optional

import numpy as np
from scipy import stats

from .config import DEFAULT_CONFIDENCE, ESTIMATE_PRECISION, GENERATOR_ID, SAMPLE_CHUNK_SIZE
from .counting import multiset_placements, render_significant
from .errors import SamplingError, UnsupportedBoardError
from .legality import placement_violations
from .models import BoardSpec, Color, EstimateResult, PieceSet, Placement
from .notation import format_piece_set, require_chess_set

logger = logging.getLogger(__name__)

MAX_SEED = 2**64 - 1


def chunk_generator(seed: int, chunk: int) -> np.random.Generator:
    """Counter-based generator for one chunk of samples."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(chunk,))))


def sample_square_tuples(rng: np.random.Generator, squares: int, pieces: int, size: int) -> np.ndarray:
    """
    `size` ordered tuples of `pieces` distinct squares, shape (size, pieces).

    Each row is the prefix of a partial Fisher-Yates shuffle of range(squares),
    consuming one bounded integer per position.
    """
    if pieces > squares:
        raise SamplingError(f"Cannot place {pieces} pieces on {squares} squares")
    deck = np.tile(np.arange(squares, dtype=np.int64), (size, 1))
    rows = np.arange(size)
    for position in range(pieces):
        picks = rng.integers(position, squares, size=size)
        chosen = deck[rows, picks]
        deck[rows, picks] = deck[rows, position]
        deck[rows, position] = chosen
    return deck[:, :pieces]


def sample_uniform_placement(
    board: BoardSpec,
    piece_set: PieceSet,
    rng: np.random.Generator,
    side_to_move: Optional[Color] = None,
) -> Placement:
    """
    One placement, uniform over the distinct placements of `piece_set`.

    The canonical expansion of the set is laid onto a uniform ordered tuple of
    distinct squares; every distinct placement arises from the same number of
    tuples, so the result is uniform.
    """
    row = sample_square_tuples(rng, board.squares, piece_set.total_pieces, 1)[0]
    return Placement.from_pairs(board, zip(row.tolist(), piece_set.expand()), side_to_move)


def draw_placements(
    board: BoardSpec,
    piece_set: PieceSet,
    count: int,
    seed: int,
    side_to_move: Optional[Color] = None,
    chunk_size: int = SAMPLE_CHUNK_SIZE,
) -> Iterator[Placement]:
    """Stream `count` seeded uniform placements, chunk by chunk."""
    kinds = piece_set.expand()
    for chunk, size in enumerate(_chunk_sizes(count, chunk_size)):
        rows = sample_square_tuples(chunk_generator(seed, chunk), board.squares, len(kinds), size)
        for row in rows.tolist():
            yield Placement.from_pairs(board, zip(row, kinds), side_to_move)


def _chunk_sizes(samples: int, chunk_size: int) -> list[int]:
    full, rest = divmod(samples, chunk_size)
    return [chunk_size] * full + ([rest] if rest else [])


def wilson_interval(successes: int, trials: int, confidence: float = DEFAULT_CONFIDENCE) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion, clamped to [0, 1]."""
    if trials <= 0:
        raise SamplingError("Wilson interval needs at least one trial")
    z = float(stats.norm.ppf(0.5 + confidence / 2))
    p_hat = successes / trials
    denominator = 1 + z**2 / trials
    center = (p_hat + z**2 / (2 * trials)) / denominator
    margin = (z / denominator) * math.sqrt(p_hat * (1 - p_hat) / trials + z**2 / (4 * trials**2))
    # rounding can leave p_hat a hair outside at 0 or 1
    return max(0.0, min(center - margin, p_hat)), min(1.0, max(center + margin, p_hat))


def _legal_hits(seed: int, chunk: int, size: int, squares: int, piece_set: PieceSet, side_to_move: Color) -> int:
    kinds = piece_set.expand()
    rows = sample_square_tuples(chunk_generator(seed, chunk), squares, len(kinds), size)
    return sum(1 for row in rows.tolist() if not placement_violations(zip(row, kinds), side_to_move))


def estimate_legal_fraction(
    board: BoardSpec,
    piece_set: PieceSet,
    samples: int,
    seed: int,
    confidence: float = DEFAULT_CONFIDENCE,
    side_to_move: Color = Color.WHITE,
    chunk_size: int = SAMPLE_CHUNK_SIZE,
    workers: int = 1,
) -> EstimateResult:
    """
    Estimate the share of legal placements by seeded uniform sampling.

    Returns the hit count, point estimate and Wilson interval at `confidence`.
    """
    if not board.is_standard:
        raise UnsupportedBoardError(f"Legality is defined for 8x8 boards only, got {board.label}")
    require_chess_set(piece_set)
    if samples < 1:
        raise SamplingError(f"Need at least one sample, got {samples}")
    if not 0.0 < confidence < 1.0:
        raise SamplingError(f"Confidence must lie strictly between 0 and 1, got {confidence}")
    if not 0 <= seed <= MAX_SEED:
        raise SamplingError(f"Seed must be a 64-bit unsigned value, got {seed}")
    if chunk_size < 1:
        raise SamplingError(f"Chunk size must be positive, got {chunk_size}")

    sizes = _chunk_sizes(samples, chunk_size)
    logger.info("Sampling %d placements in %d chunks (seed %d, %d workers)...", samples, len(sizes), seed, workers)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            hits = sum(pool.map(
                lambda job: _legal_hits(seed, job[0], job[1], board.squares, piece_set, side_to_move),
                enumerate(sizes),
            ))
    else:
        hits = sum(_legal_hits(seed, chunk, size, board.squares, piece_set, side_to_move) for chunk, size in enumerate(sizes))

    low, high = wilson_interval(hits, samples, confidence)
    total = multiset_placements(board, piece_set)
    return EstimateResult(
        piece_set=format_piece_set(piece_set),
        board=board.label,
        side_to_move=side_to_move,
        samples=samples,
        legal_hits=hits,
        point_estimate=hits / samples,
        ci_low=low,
        ci_high=high,
        confidence=confidence,
        seed=seed,
        generator=f"{GENERATOR_ID}/{chunk_size}",
        total_placements=total,
        estimated_legal_count=render_significant(hits * total, samples, ESTIMATE_PRECISION),
    )
