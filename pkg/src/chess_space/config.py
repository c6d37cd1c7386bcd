"""
Guardrails and tunables for counting, enumeration and sampling.
"""

import os
from typing import Optional

from pydantic import BaseModel, Field

# Board sides are capped to keep enumeration and notation work bounded.
# The counting formula itself has no such limit.
MAX_BOARD_SIDE = 16
STANDARD_SIDE = 8

# Enumeration refuses when the raw ordered-sequence count exceeds this.
ENUMERATION_BUDGET = 10**8

DEFAULT_PRECISION = 6
ESTIMATE_PRECISION = 4
DEFAULT_CONFIDENCE = 0.95

# Samples per Philox chunk; chunk c is seeded with spawn_key=(c,).
SAMPLE_CHUNK_SIZE = 4096
GENERATOR_ID = "numpy-philox4x64-seedsequence-chunk"

# Reference size of the complete seven-piece endgame tablebase.
SEVEN_PIECE_TABLEBASE_POSITIONS = 500_000_000_000_000

SECONDS_PER_DAY = 86_400
DAYS_PER_YEAR = "365.25"


class SpaceConfig(BaseModel):
    """Overridable runtime settings."""
    enumeration_budget: int = Field(ENUMERATION_BUDGET, ge=1, description="Maximum raw ordered sequences an enumeration may cover.")
    precision: int = Field(DEFAULT_PRECISION, ge=1, le=100, description="Significant figures for rendered ratios.")
    sample_chunk_size: int = Field(SAMPLE_CHUNK_SIZE, ge=1, description="Samples drawn per generator chunk.")
    workers: int = Field(1, ge=1, le=256, description="Worker threads used for sampling.")

    @classmethod
    def from_env(cls, environ: Optional[dict[str, str]] = None) -> "SpaceConfig":
        """Build a config from CHESS_SPACE_* environment variables."""
        env = os.environ if environ is None else environ
        values = {}
        for field_name in ("enumeration_budget", "precision", "sample_chunk_size", "workers"):
            raw = env.get(f"CHESS_SPACE_{field_name.upper()}")
            if raw is not None:
                values[field_name] = raw
        return cls.model_validate(values)
