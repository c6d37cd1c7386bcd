"""
Pytest configuration file for chess-space tests.
Contains shared boards, piece sets and a mock FastMCP Context.
"""
import sys
from pathlib import Path
from unittest.mock import AsyncMock, MagicMock

import pytest
from fastmcp import Context

# Add the project root to the Python path to allow imports
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.chess_space.models import STANDARD_BOARD, BoardSpec
from src.chess_space.notation import parse_piece_set


@pytest.fixture
def standard_board():
    """The 8x8 board."""
    return STANDARD_BOARD


@pytest.fixture
def small_board():
    """A 3x3 board, small enough for exhaustive checks."""
    return BoardSpec(width=3, height=3)


@pytest.fixture
def kings_only():
    """Bare kings, Kvk."""
    return parse_piece_set("Kvk")


@pytest.fixture
def knights_vs_queen():
    """Four knights against a queen, KNNNNvkq."""
    return parse_piece_set("KNNNNvkq")


@pytest.fixture
def knights_vs_rooks():
    """Four knights against two rooks with a duplicated upper-case king, KNNNNvKRR."""
    return parse_piece_set("KNNNNvKRR")


@pytest.fixture
def mock_context():
    """Fixture to provide a mock FastMCP Context with async logging methods."""
    context = MagicMock(spec=Context)

    # Make info, warning and error methods async
    context.info = AsyncMock()
    context.error = AsyncMock()
    context.warning = AsyncMock()

    return context
