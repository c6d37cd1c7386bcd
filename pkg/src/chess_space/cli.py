"""
Command-line interface: `chess-space <command> ...`.

Exit codes: 0 success, 1 usage or parse errors, 2 domain errors (validation
failure, budget exceeded, ...). Data goes to stdout, diagnostics to stderr.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Callable, Iterable, Optional, TextIO

from pydantic import BaseModel, ValidationError

from . import counting, enumeration, sampling, symmetry
from .config import DEFAULT_CONFIDENCE, SEVEN_PIECE_TABLEBASE_POSITIONS, SpaceConfig
from .errors import DomainError, UsageError
from .models import (
    STANDARD_BOARD,
    BoardSpec,
    ClassesReport,
    Color,
    CountReport,
    EnumerationReport,
    ErrorDetail,
    ErrorReport,
    EstimateResult,
    GroupId,
    LegalExactReport,
    RatioReport,
)
from .notation import format_piece_set, parse_piece_set, serialize_placement

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2

REPORT_MODELS: dict[str, type[BaseModel]] = {
    "count": CountReport,
    "enumerate": EnumerationReport,
    "legal-exact": LegalExactReport,
    "legal-sample": EstimateResult,
    "classes": ClassesReport,
    "ratio": RatioReport,
    "error": ErrorReport,
}


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that raises UsageError instead of exiting."""

    def error(self, message: str):
        raise UsageError(message)


def _count_arg(text: str) -> int:
    """Non-negative integer; ',' and '_' digit separators are accepted."""
    cleaned = text.replace(",", "").replace("_", "")
    if not cleaned.isdigit():
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text!r}")
    return int(cleaned)


def _positive_arg(text: str) -> int:
    value = _count_arg(text)
    if value == 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _board_arg(text: str) -> BoardSpec:
    try:
        return BoardSpec.parse(text)
    except UsageError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


STM_NAMES = {"w": Color.WHITE, "white": Color.WHITE, "b": Color.BLACK, "black": Color.BLACK}


def _stm_arg(text: str) -> Color:
    try:
        return STM_NAMES[text.lower()]
    except KeyError:
        raise argparse.ArgumentTypeError(f"side to move must be w or b, got {text!r}") from None


def _single_set(line: str) -> str:
    tokens = line.split()
    if len(tokens) != 1:
        raise UsageError(f"Expected one piece set, got {line!r}")
    return tokens[0]


# === COMMAND HANDLERS ===
# Each takes the parsed args, the effective config and one piece-set line.

def _count(args: argparse.Namespace, config: SpaceConfig, line: str) -> CountReport:
    piece_set = parse_piece_set(_single_set(line))
    placements = counting.multiset_placements(args.board, piece_set)
    factor = 2 if args.stm_factor else 1
    count = placements * factor
    return CountReport(
        piece_set=format_piece_set(piece_set),
        board=args.board.label,
        placements=placements,
        side_to_move_factor=factor,
        count=count,
        exhaustive_time=counting.exhaustive_time(count, args.rate, config.precision) if args.rate else None,
    )


def _enumerate(args: argparse.Namespace, config: SpaceConfig, line: str) -> EnumerationReport:
    piece_set = parse_piece_set(_single_set(line))
    stream = enumeration.enumerate_placements(
        args.board, piece_set, limit=args.limit, side_to_move=args.stm, budget=config.enumeration_budget,
    )
    placements = [serialize_placement(p) for p in stream]
    return EnumerationReport(
        piece_set=format_piece_set(piece_set),
        board=args.board.label,
        limit=args.limit,
        count=len(placements),
        placements=placements,
    )


def _legal_exact(args: argparse.Namespace, config: SpaceConfig, line: str) -> LegalExactReport:
    piece_set = parse_piece_set(_single_set(line))
    legal, total = enumeration.count_legal_by_enumeration(
        args.board, piece_set, args.stm, budget=config.enumeration_budget,
    )
    return LegalExactReport(
        piece_set=format_piece_set(piece_set),
        board=args.board.label,
        side_to_move=args.stm,
        legal=legal,
        total=total,
        fraction=counting.effort_ratio(legal, total, config.precision),
    )


def _legal_sample(args: argparse.Namespace, config: SpaceConfig, line: str) -> EstimateResult:
    piece_set = parse_piece_set(_single_set(line))
    return sampling.estimate_legal_fraction(
        args.board,
        piece_set,
        samples=args.samples,
        seed=args.seed,
        confidence=args.confidence,
        side_to_move=args.stm,
        chunk_size=config.sample_chunk_size,
        workers=config.workers,
    )


def _classes(args: argparse.Namespace, config: SpaceConfig, line: str) -> ClassesReport:
    piece_set = parse_piece_set(_single_set(line))
    group = GroupId(args.group) if args.group else symmetry.default_group(args.board)
    warnings = symmetry.symmetry_warnings(piece_set, group)
    return ClassesReport(
        piece_set=format_piece_set(piece_set),
        board=args.board.label,
        group=group,
        group_order=symmetry.board_symmetries(args.board, group).order,
        classes=symmetry.count_classes(args.board, piece_set, group),
        placements=counting.multiset_placements(args.board, piece_set),
        warnings=warnings,
    )


def _ratio(args: argparse.Namespace, config: SpaceConfig, line: str) -> RatioReport:
    tokens = line.split()
    if not 1 <= len(tokens) <= 2:
        raise UsageError(f"Expected '<SET> [EXAMINED]', got {line!r}")
    piece_set = parse_piece_set(tokens[0])
    placements = counting.multiset_placements(args.board, piece_set)
    if len(tokens) == 2:
        try:
            examined = _count_arg(tokens[1])
        except argparse.ArgumentTypeError as e:
            raise UsageError(str(e)) from None
    else:
        examined = args.examined if args.examined is not None else placements

    if args.total is not None:
        total, source = args.total, "explicit"
    elif args.against_tablebase:
        total, source = SEVEN_PIECE_TABLEBASE_POSITIONS, "tablebase"
    else:
        total, source = placements, "board"
    ratio = counting.effort_ratio(examined, total, config.precision)
    return RatioReport(
        piece_set=format_piece_set(piece_set),
        board=args.board.label,
        examined=examined,
        total=total,
        total_source=source,
        fraction=ratio.rendered,
        percent=ratio.percent,
        precision=config.precision,
    )


HANDLERS: dict[str, Callable[[argparse.Namespace, SpaceConfig, str], BaseModel]] = {
    "count": _count,
    "enumerate": _enumerate,
    "legal-exact": _legal_exact,
    "legal-sample": _legal_sample,
    "classes": _classes,
    "ratio": _ratio,
}


# === TEXT RENDERING ===

def _rows(report: BaseModel) -> list[tuple[str, str]]:
    if isinstance(report, CountReport):
        rows = [("piece set", report.piece_set), ("board", report.board),
                ("placements", str(report.placements)), ("stm factor", str(report.side_to_move_factor)),
                ("count", str(report.count))]
        if report.exhaustive_time:
            t = report.exhaustive_time
            rows += [("rate/s", str(t.rate_per_second)), ("seconds", t.seconds), ("days", t.days), ("years", t.years)]
        return rows
    if isinstance(report, EnumerationReport):
        return [("piece set", report.piece_set), ("board", report.board), ("placements", str(report.count))]
    if isinstance(report, LegalExactReport):
        return [("piece set", report.piece_set), ("board", report.board),
                ("side to move", report.side_to_move.value), ("legal", str(report.legal)),
                ("total", str(report.total)), ("fraction", report.fraction.rendered),
                ("percent", f"{report.fraction.percent}%")]
    if isinstance(report, EstimateResult):
        return [("piece set", report.piece_set), ("board", report.board),
                ("side to move", report.side_to_move.value), ("samples", str(report.samples)),
                ("legal hits", str(report.legal_hits)), ("estimate", repr(report.point_estimate)),
                ("interval", f"[{report.ci_low!r}, {report.ci_high!r}]"), ("confidence", repr(report.confidence)),
                ("seed", str(report.seed)), ("generator", report.generator),
                ("placements", str(report.total_placements)), ("est. legal", report.estimated_legal_count)]
    if isinstance(report, ClassesReport):
        return [("piece set", report.piece_set), ("board", report.board),
                ("group", f"{report.group.value} (order {report.group_order})"),
                ("classes", str(report.classes)), ("placements", str(report.placements))]
    if isinstance(report, RatioReport):
        return [("piece set", report.piece_set), ("board", report.board),
                ("examined", str(report.examined)), ("total", f"{report.total} ({report.total_source})"),
                ("fraction", report.fraction), ("percent", f"{report.percent}%")]
    if isinstance(report, ErrorReport):
        return [("input", report.input or ""), ("error", f"{report.error.kind}: {report.error.message}")]
    raise TypeError(f"No text rendering for {type(report).__name__}")


def _render_text(report: BaseModel) -> list[str]:
    if isinstance(report, CountReport):
        lines = [str(report.count)]
        if report.exhaustive_time:
            lines += _aligned(_rows(report)[-4:])
        return lines
    if isinstance(report, EnumerationReport):
        return list(report.placements)
    return _aligned(_rows(report))


def _aligned(rows: list[tuple[str, str]]) -> list[str]:
    width = max(len(label) for label, _ in rows)
    return [f"{label.ljust(width)}  {value}" for label, value in rows]


# === PARSER ===

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="chess-space", description="Search-space sizes of chess piece sets.")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="INFO logging; repeat for DEBUG.")

    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="Emit a JSON object instead of text.")
    common.add_argument("--batch", type=Path, help="Read one piece set per line from FILE ('#' comments ignored).")
    common.add_argument("--precision", type=_positive_arg, help="Significant figures for rendered ratios.")
    common.add_argument("--budget", type=_positive_arg, help="Enumeration budget in ordered square sequences.")
    common.add_argument("--workers", type=_positive_arg, help="Worker threads for sampling.")

    def _board(p: argparse.ArgumentParser) -> None:
        p.add_argument("--board", type=_board_arg, default=STANDARD_BOARD, help="Board as WxH (default 8x8).")

    commands = parser.add_subparsers(dest="command", required=True)

    p = commands.add_parser("count", parents=[common], help="Exact placement count.")
    p.add_argument("piece_set", nargs="?", help="Piece set such as KNNNNvkq.")
    _board(p)
    p.add_argument("--stm-factor", action="store_true", help="Double the count to include side to move (tablebase-style).")
    p.add_argument("--rate", type=_positive_arg, help="Positions examined per second, for an exhaustive-time estimate.")

    p = commands.add_parser("enumerate", parents=[common], help="List every placement (small cases).")
    p.add_argument("piece_set", nargs="?")
    _board(p)
    p.add_argument("--limit", type=_count_arg, help="Stop after N placements.")
    p.add_argument("--stm", type=_stm_arg, help="Side to move appended to each placement.")

    p = commands.add_parser("legal-exact", parents=[common], help="Exact legal and total counts by enumeration.")
    p.add_argument("piece_set", nargs="?")
    _board(p)
    p.add_argument("--stm", type=_stm_arg, required=True)

    p = commands.add_parser("legal-sample", parents=[common], help="Monte Carlo estimate of the legal fraction.")
    p.add_argument("piece_set", nargs="?")
    _board(p)
    p.add_argument("--samples", type=_positive_arg, required=True)
    p.add_argument("--seed", type=_count_arg, required=True)
    p.add_argument("--confidence", type=float, default=DEFAULT_CONFIDENCE)
    p.add_argument("--stm", type=_stm_arg, required=True)

    p = commands.add_parser("classes", parents=[common], help="Placement classes up to rotation/reflection.")
    p.add_argument("piece_set", nargs="?")
    _board(p)
    p.add_argument("--group", choices=[g.value for g in GroupId],
                   help="Symmetry group (default c4 on square boards, r180 otherwise).")

    p = commands.add_parser("ratio", parents=[common], help="Effort ratio: examined positions over the search space.")
    p.add_argument("piece_set", nargs="?")
    _board(p)
    p.add_argument("--examined", type=_count_arg, help="Positions examined (default: the set's own count).")
    totals = p.add_mutually_exclusive_group()
    totals.add_argument("--total", type=_positive_arg, help="Explicit search-space size instead of the set's count.")
    totals.add_argument("--against-tablebase", action="store_true",
                        help=f"Compare against the seven-piece tablebase ({SEVEN_PIECE_TABLEBASE_POSITIONS} positions).")

    commands.add_parser("schema", help="Print the JSON Schema of every --json output.")
    commands.add_parser("serve", help="Run the MCP tool server over stdio.")
    return parser


def _config_from(args: argparse.Namespace) -> SpaceConfig:
    values = SpaceConfig.from_env().model_dump()
    for field_name, flag in (("precision", "precision"), ("enumeration_budget", "budget"), ("workers", "workers")):
        if getattr(args, flag, None) is not None:
            values[field_name] = getattr(args, flag)
    return SpaceConfig.model_validate(values)


def _exit_code(error: Exception) -> int:
    return EXIT_DOMAIN if isinstance(error, DomainError) else EXIT_USAGE


def _error_report(line: Optional[str], error: Exception) -> ErrorReport:
    return ErrorReport(input=line, error=ErrorDetail(kind=type(error).__name__, message=str(error)))


def _warn(report: BaseModel, err: TextIO) -> None:
    for warning in getattr(report, "warnings", ()):
        print(f"warning: {warning}", file=err)


def _batch_lines(path: Path) -> Iterable[str]:
    try:
        text = path.read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        raise UsageError(f"Batch file {path} is not UTF-8: {e.reason} at byte {e.start}") from e
    for raw in text.splitlines():
        line = raw.strip()
        if line and not line.startswith("#"):
            yield line


def _run_batch(args: argparse.Namespace, config: SpaceConfig, out: TextIO, err: TextIO) -> int:
    handler = HANDLERS[args.command]
    code = EXIT_OK
    for line in _batch_lines(args.batch):
        try:
            report = handler(args, config, line)
        except (UsageError, DomainError, ValidationError) as e:
            code = max(code, _exit_code(e))
            print(f"error: {line}: {e}", file=err)
            report = _error_report(line, e)
        _warn(report, err)
        if args.json:
            print(report.model_dump_json(), file=out)
        else:
            print("  ".join(value for _, value in _rows(report)), file=out)
    return code


def run(argv: Optional[list[str]] = None, stdout: Optional[TextIO] = None, stderr: Optional[TextIO] = None) -> int:
    """Run one CLI invocation and return its exit code."""
    out = stdout or sys.stdout
    err = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        print(f"error: {e}", file=err)
        return EXIT_USAGE

    logging.basicConfig(
        level=logging.DEBUG if args.verbose > 1 else logging.INFO if args.verbose else logging.WARNING,
        stream=err,
        format="%(levelname)s %(name)s: %(message)s",
    )

    if args.command == "schema":
        schemas = {name: model.model_json_schema(mode="serialization") for name, model in REPORT_MODELS.items()}
        print(json.dumps(schemas, indent=2, sort_keys=True), file=out)
        return EXIT_OK
    if args.command == "serve":
        from .server import mcp
        logger.info("Running chess-space tool server (stdio transport)...")
        mcp.run(transport="stdio")
        return EXIT_OK

    try:
        config = _config_from(args)
        if args.batch is not None:
            if args.piece_set is not None:
                raise UsageError("Give either a piece set or --batch, not both")
            return _run_batch(args, config, out, err)
        if args.piece_set is None:
            raise UsageError("A piece set is required (or --batch FILE)")
        report = HANDLERS[args.command](args, config, args.piece_set)
    except (UsageError, DomainError, ValidationError, OSError) as e:
        print(f"error: {e}", file=err)
        return EXIT_USAGE if isinstance(e, OSError) else _exit_code(e)

    _warn(report, err)
    if args.json:
        print(report.model_dump_json(), file=out)
    else:
        for line in _render_text(report):
            print(line, file=out)
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
