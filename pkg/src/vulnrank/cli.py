"""Command-line entry point: ``vulnrank analyze | evaluate | export-scores``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .complexity import METRIC_NAMES as COMPLEXITY_METRICS
from .evaluation import (
    DEFAULT_FRACTIONS,
    DIMENSIONS,
    EvaluationError,
    EvaluationReport,
    NoMatchedGroundTruth,
    SensitivityReport,
    evaluate,
    load_ground_truth,
    sensitivity_analysis,
)
from .pipeline import ScanResult, scan
from .ranking import CandidateList, InvalidFraction, build_bins, priority_scores, select_candidates
from .vulnerability import METRIC_NAMES as VULNERABILITY_METRICS

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NO_FUNCTIONS = 2
EXIT_NO_MATCH = 3


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_ERROR) -> None:
        super().__init__(message)
        self.code = code


@dataclass
class AnalysisConfig:
    target_dir: Path
    include: list[str] = field(default_factory=list)
    exclude: list[str] = field(default_factory=list)
    p: float = 0.20
    fractions: tuple[float, ...] = DEFAULT_FRACTIONS
    ground_truth: Path | None = None
    format: str = "json"
    out: Path | None = None
    sensitivity: bool = False
    baselines: bool = False
    jobs: int = 1

    def validate(self) -> None:
        for f in (self.p, *self.fractions):
            if not 0 < f <= 1:
                raise CliError(f"InvalidFraction: {f} is outside (0, 1]")
        if not self.target_dir.is_dir():
            raise CliError(f"not a directory: {self.target_dir}")


def _num(x: float) -> float:
    return round(x, 6)


# -- serialization ---------------------------------------------------------------


def _function_row(sf, candidate) -> dict:
    return {
        "file_path": sf.id.file_path,
        "function_name": sf.id.function_name,
        "start_line": sf.id.start_line,
        "sloc": sf.sloc,
        "complexity": {**sf.complexity.as_dict(), "score": sf.complexity_score},
        "vulnerability": {
            **sf.vulnerability.as_dict(),
            "score": sf.vulnerability_score,
            "data_dependent_variables": list(sf.vulnerability.data_dependent_variables),
            "predicate_variables": list(sf.vulnerability.predicate_variables),
        },
        "selected": candidate is not None,
        "selection_rank": candidate.rank if candidate else None,
    }


def analysis_document(result: ScanResult, cands: CandidateList, p: float) -> dict:
    by_id = {c.function.id: c for c in cands.entries}
    return {
        "p": p,
        "files": result.files,
        "total_functions": len(result.functions),
        "selected": len(cands),
        "selected_fraction": _num(cands.selected_fraction),
        "functions": [_function_row(sf, by_id.get(sf.id)) for sf in result.functions],
        "candidates": [
            {
                "file_path": c.function.id.file_path,
                "function_name": c.function.id.function_name,
                "start_line": c.function.id.start_line,
                "selection_rank": c.rank,
                "bin": c.function.complexity_score,
                "position_in_bin": c.position,
                "complexity_score": c.function.complexity_score,
                "vulnerability_score": c.function.vulnerability_score,
            }
            for c in cands.entries
        ],
    }


def analysis_csv(result: ScanResult, cands: CandidateList) -> str:
    by_id = {c.function.id: c for c in cands.entries}
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(
        ["file_path", "function_name", "start_line", "sloc", *COMPLEXITY_METRICS, "complexity_score",
         *VULNERABILITY_METRICS, "vulnerability_score", "selected", "selection_rank"]
    )
    for sf in result.functions:
        c = by_id.get(sf.id)
        w.writerow(
            [sf.id.file_path, sf.id.function_name, sf.id.start_line, sf.sloc,
             *sf.complexity.as_dict().values(), sf.complexity_score,
             *sf.vulnerability.as_dict().values(), sf.vulnerability_score,
             int(c is not None), c.rank if c else ""]
        )
    return buf.getvalue()


def _points(points) -> list[dict]:
    return [
        {"fraction": _num(pt.fraction), "selected_fraction": _num(pt.selected_fraction), "coverage": _num(pt.coverage)}
        for pt in points
    ]


def evaluation_document(report: EvaluationReport, sens: SensitivityReport | None) -> dict:
    doc = {
        "total_functions": report.total_functions,
        "matched": report.matched,
        "unmatched": [str(e) for e in report.unmatched],
        "methods": {"tool": _points(report.points)}
        | {name: _points(pts) for name, pts in report.baseline_points.items()},
    }
    if sens is not None:
        doc["sensitivity"] = {
            dim: [{"fraction": _num(f), "recall_delta": _num(d)} for f, d in zip(sens.fractions, deltas)]
            for dim, deltas in sens.deltas.items()
        }
    return doc


def evaluation_csv(doc: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["kind", "name", "fraction", "selected_fraction", "value"])
    for method, points in doc["methods"].items():
        for pt in points:
            w.writerow(["coverage", method, pt["fraction"], pt["selected_fraction"], pt["coverage"]])
    for dim, rows in doc.get("sensitivity", {}).items():
        for row in rows:
            w.writerow(["recall_delta", dim, row["fraction"], "", row["recall_delta"]])
    for entry in doc["unmatched"]:
        w.writerow(["unmatched", entry, "", "", ""])
    return buf.getvalue()


def scores_csv(scores: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["file_path", "function_name", "priority_score"])
    for fid, score in sorted(scores.items(), key=lambda kv: (-kv[1], kv[0])):
        w.writerow([fid.file_path, fid.function_name, f"{score:.2f}"])
    return buf.getvalue()


# -- commands ----------------------------------------------------------------------


def _scan(config: AnalysisConfig) -> ScanResult:
    config.validate()
    result = scan(config.target_dir, config.include, config.exclude, config.jobs)
    for line in result.diagnostics:
        print(line, file=sys.stderr)
    if not result.functions:
        raise CliError(f"no functions found under {config.target_dir}", EXIT_NO_FUNCTIONS)
    return result


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    try:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot write {out}: {exc}") from None


def _dump(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def cmd_analyze(config: AnalysisConfig) -> int:
    result = _scan(config)
    try:
        cands = select_candidates(build_bins(result.functions), config.p)
    except InvalidFraction as exc:
        raise CliError(f"InvalidFraction: {exc}") from None
    if config.format == "csv":
        _emit(analysis_csv(result, cands), config.out)
    else:
        _emit(_dump(analysis_document(result, cands, config.p)), config.out)
    return EXIT_OK


def cmd_evaluate(config: AnalysisConfig) -> int:
    if config.ground_truth is None:
        raise CliError("--ground-truth is required")
    try:
        gt = load_ground_truth(config.ground_truth)
    except OSError as exc:
        raise CliError(f"cannot read ground truth: {exc}") from None
    except EvaluationError as exc:
        raise CliError(f"{config.ground_truth}: {exc}") from None
    result = _scan(config)
    try:
        report = evaluate(result.functions, gt, config.fractions, baselines=config.baselines)
        sens = sensitivity_analysis(result.functions, gt, config.fractions) if config.sensitivity else None
    except NoMatchedGroundTruth as exc:
        raise CliError(str(exc), EXIT_NO_MATCH) from None
    for entry in report.unmatched:
        print(f"warning: unmatched ground-truth entry {entry}", file=sys.stderr)
    doc = evaluation_document(report, sens)
    _emit(evaluation_csv(doc) if config.format == "csv" else _dump(doc), config.out)
    return EXIT_OK


def cmd_export_scores(config: AnalysisConfig) -> int:
    result = _scan(config)
    _emit(scores_csv(priority_scores(build_bins(result.functions))), config.out)
    return EXIT_OK


# -- argument parsing ----------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # usage errors are config errors, not "no functions"
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _fractions(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="vulnrank", description="Rank C functions by vulnerability-proneness.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--dir", required=True, type=Path, help="source tree to analyze")
        sp.add_argument("--include", action="append", default=[], metavar="GLOB")
        sp.add_argument("--exclude", action="append", default=[], metavar="GLOB")
        sp.add_argument("--out", type=Path, help="output file (default: stdout)")
        sp.add_argument("--jobs", type=int, default=1, help="parallel parser processes")

    a = sub.add_parser("analyze", help="per-function metrics and the candidate list")
    common(a)
    a.add_argument("--p", type=float, default=0.20, help="fraction of functions to select")
    a.add_argument("--format", choices=("json", "csv"), default="json")

    e = sub.add_parser("evaluate", help="coverage of ground-truth vulnerable functions")
    common(e)
    e.add_argument("--ground-truth", required=True, type=Path)
    e.add_argument("--fractions", type=_fractions, default=DEFAULT_FRACTIONS)
    e.add_argument("--baselines", action="store_true", help="include the SLOC baselines")
    e.add_argument("--sensitivity", action="store_true", help=f"drop each of {', '.join(DIMENSIONS)} in turn")
    e.add_argument("--format", choices=("json", "csv"), default="json")

    x = sub.add_parser("export-scores", help="priority score per function for fuzzer seed scheduling")
    common(x)
    return parser


def config_from_args(ns: argparse.Namespace) -> AnalysisConfig:
    return AnalysisConfig(
        target_dir=ns.dir,
        include=ns.include,
        exclude=ns.exclude,
        p=getattr(ns, "p", 0.20),
        fractions=tuple(getattr(ns, "fractions", DEFAULT_FRACTIONS)),
        ground_truth=getattr(ns, "ground_truth", None),
        format=getattr(ns, "format", "json"),
        out=ns.out,
        sensitivity=getattr(ns, "sensitivity", False),
        baselines=getattr(ns, "baselines", False),
        jobs=ns.jobs,
    )


COMMANDS = {"analyze": cmd_analyze, "evaluate": cmd_evaluate, "export-scores": cmd_export_scores}


def main(argv: Sequence[str] | None = None) -> int:
    try:
        ns = build_parser().parse_args(argv)
    except SystemExit as exc:  # usage errors and --help
        return exc.code if isinstance(exc.code, int) else EXIT_ERROR
    try:
        return COMMANDS[ns.command](config_from_args(ns))
    except CliError as exc:
        print(f"vulnrank: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
