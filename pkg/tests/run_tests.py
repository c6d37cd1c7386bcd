#!/usr/bin/env python3
"""
Test runner script for chess-space tests.
Wraps pytest with options for coverage, a fast subset and per-module runs.
"""
import sys
import subprocess
import argparse
from pathlib import Path

# Add the project root to the Python path to allow imports
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

MODULES = ["models", "counting", "notation", "enumeration", "legality", "sampling", "symmetry", "cli", "server"]


def main():
    """Run the tests with appropriate configuration."""
    parser = argparse.ArgumentParser(description="Run chess-space tests")
    parser.add_argument("--cov", action="store_true", help="Run with coverage reporting")
    parser.add_argument("--verbose", "-v", action="store_true", help="Run with verbose output")
    parser.add_argument("--fast", action="store_true", help="Skip tests marked slow")
    parser.add_argument("--module", choices=MODULES, help="Run the tests of one library module")
    parser.add_argument("--test-function", help="Run tests whose name contains this string")
    args = parser.parse_args()

    cmd = ["pytest"]
    if args.verbose:
        cmd.append("-v")
    if args.cov:
        cmd.extend(["--cov=src.chess_space", "--cov-report=term", "--cov-report=html"])
    if args.fast:
        cmd.extend(["-m", "not slow"])
    if args.test_function:
        cmd.extend(["-k", args.test_function])
    cmd.append(f"tests/test_{args.module}.py" if args.module else "tests/")

    print(f"Running: {' '.join(cmd)}")
    return subprocess.run(cmd, cwd=project_root).returncode


if __name__ == "__main__":
    sys.exit(main())
