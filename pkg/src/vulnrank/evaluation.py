"""Coverage of known-vulnerable functions by ranked selections, baselines and ablations."""

from __future__ import annotations

import csv
import posixpath
import warnings
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Callable, Iterable, Sequence

from .frontend.model import FunctionId
from .ranking import CandidateList, ScoredFunction, build_bins, manual_down, manual_up, select_candidates

DEFAULT_FRACTIONS = (0.05, 0.10, 0.15, 0.20, 0.25, 0.30)

# dimension -> the metrics it removes from the complexity or vulnerability sum
DIMENSIONS: dict[str, tuple[str, ...]] = {
    "CD1": ("c1_cyclomatic",),
    "CD2": ("c2_loops", "c3_nested_loop_pairs", "c4_max_loop_nesting"),
    "VD1": ("v1_params", "v2_callee_arg_vars"),
    "VD2": ("v3_pointer_arith", "v4_pointer_arith_vars", "v5_max_pointer_arith_per_var"),
    "VD3": (
        "v6_nested_control_pairs",
        "v7_max_control_nesting",
        "v8_max_control_dependent",
        "v9_max_data_dependent",
        "v10_if_without_else",
        "v11_predicate_vars",
    ),
}


class EvaluationError(Exception):
    pass


class FormatError(EvaluationError):
    def __init__(self, message: str, line: int) -> None:
        super().__init__(f"line {line}: {message}")
        self.line = line


class NoMatchedGroundTruth(EvaluationError):
    pass


class DuplicateEntry(UserWarning):
    pass


@dataclass(frozen=True, order=True)
class TruthEntry:
    file_path: str
    function_name: str
    start_line: int | None = None

    def __str__(self) -> str:
        suffix = f",{self.start_line}" if self.start_line is not None else ""
        return f"{self.file_path},{self.function_name}{suffix}"

    def matches(self, fid: FunctionId) -> bool:
        if fid.function_name != self.function_name:
            return False
        if self.start_line is not None and fid.start_line != self.start_line:
            return False
        return fid.file_path == self.file_path or fid.file_path.endswith("/" + self.file_path)


@dataclass(frozen=True)
class GroundTruth:
    vulnerable: tuple[TruthEntry, ...]

    def __len__(self) -> int:
        return len(self.vulnerable)

    def match(self, ids: Iterable[FunctionId]) -> tuple[frozenset[FunctionId], tuple[TruthEntry, ...]]:
        """Codebase functions hit by some entry, and the entries that hit nothing."""
        by_name: dict[str, list[FunctionId]] = {}
        for fid in ids:
            by_name.setdefault(fid.function_name, []).append(fid)
        hit: set[FunctionId] = set()
        unmatched = []
        for entry in self.vulnerable:
            found = [fid for fid in by_name.get(entry.function_name, ()) if entry.matches(fid)]
            if found:
                hit.update(found)
            else:
                unmatched.append(entry)
        return frozenset(hit), tuple(unmatched)


def normalize_path(path: str) -> str:
    path = posixpath.normpath(path.strip().replace("\\", "/"))
    while path.startswith("./"):
        path = path[2:]
    return path.lstrip("/")


def load_ground_truth(file: str | Path) -> GroundTruth:
    """Read ``file_path,function_name[,start_line]`` rows; ``#`` starts a comment."""
    entries: list[TruthEntry] = []
    seen: set[TruthEntry] = set()
    with open(file, encoding="utf-8", newline="") as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.split("#", 1)[0].strip()
            if not text:
                continue
            row = [c.strip() for c in next(csv.reader([text]))]
            if len(row) not in (2, 3) or not row[0] or not row[1]:
                raise FormatError(f"expected 'file_path,function_name[,start_line]', got {text!r}", lineno)
            start = None
            if len(row) == 3 and row[2]:
                try:
                    start = int(row[2])
                except ValueError:
                    raise FormatError(f"start_line must be an integer, got {row[2]!r}", lineno) from None
                if start < 1:
                    raise FormatError("start_line must be >= 1", lineno)
            entry = TruthEntry(normalize_path(row[0]), row[1], start)
            if entry in seen:
                warnings.warn(f"{file}:{lineno}: duplicate entry {entry}", DuplicateEntry, stacklevel=2)
                continue
            seen.add(entry)
            entries.append(entry)
    return GroundTruth(tuple(entries))


@dataclass(frozen=True)
class CoveragePoint:
    fraction: float  # requested share of functions identified
    selected_fraction: float  # share actually selected (ties can push it above the request)
    coverage: float  # share of matched vulnerable functions inside the selection


@dataclass(frozen=True)
class EvaluationReport:
    points: tuple[CoveragePoint, ...]
    baseline_points: dict[str, tuple[CoveragePoint, ...]]
    matched: int
    unmatched: tuple[TruthEntry, ...]
    total_functions: int


Selector = Callable[[float], CandidateList]


def coverage_curve(
    select: Selector,
    vulnerable: frozenset[FunctionId],
    fractions: Sequence[float] = DEFAULT_FRACTIONS,
) -> tuple[CoveragePoint, ...]:
    if not vulnerable:
        raise NoMatchedGroundTruth("no ground-truth entry matches a function in the codebase")
    points = []
    for f in fractions:
        chosen = select(f)
        hit = sum(1 for fid in chosen.ids if fid in vulnerable)
        points.append(CoveragePoint(f, chosen.selected_fraction, hit / len(vulnerable)))
    return tuple(points)


def tool_selector(functions: Sequence[ScoredFunction]) -> Selector:
    bt = build_bins(functions)
    return lambda p: select_candidates(bt, p)


def evaluate(
    functions: Sequence[ScoredFunction],
    gt: GroundTruth,
    fractions: Sequence[float] = DEFAULT_FRACTIONS,
    baselines: bool = True,
) -> EvaluationReport:
    vulnerable, unmatched = gt.match(sf.id for sf in functions)
    points = coverage_curve(tool_selector(functions), vulnerable, fractions)
    baseline_points = {}
    if baselines:
        baseline_points["manual_down"] = coverage_curve(lambda p: manual_down(functions, p), vulnerable, fractions)
        baseline_points["manual_up"] = coverage_curve(lambda p: manual_up(functions, p), vulnerable, fractions)
    return EvaluationReport(points, baseline_points, len(gt) - len(unmatched), unmatched, len(functions))


def ablate(sf: ScoredFunction, dimension: str | None) -> ScoredFunction:
    """Copy of ``sf`` whose scores omit the metrics of ``dimension`` (None keeps all)."""
    if dimension is None:
        return sf
    dropped = DIMENSIONS[dimension]
    if dimension.startswith("CD"):
        values = sf.complexity.as_dict()
        return replace(sf, complexity_override=sf.complexity_score - sum(values[m] for m in dropped))
    values = sf.vulnerability.as_dict()
    return replace(sf, vulnerability_override=sf.vulnerability_score - sum(values[m] for m in dropped))


@dataclass(frozen=True)
class SensitivityReport:
    fractions: tuple[float, ...]
    full: tuple[CoveragePoint, ...]
    deltas: dict[str, tuple[float, ...]] = field(default_factory=dict)  # dimension -> per-fraction recall delta


def sensitivity_analysis(
    functions: Sequence[ScoredFunction],
    gt: GroundTruth,
    fractions: Sequence[float] = DEFAULT_FRACTIONS,
    dimensions: Sequence[str] = tuple(DIMENSIONS),
) -> SensitivityReport:
    vulnerable, _ = gt.match(sf.id for sf in functions)
    full = coverage_curve(tool_selector(functions), vulnerable, fractions)

    def run(dim: str) -> tuple[float, ...]:
        reduced = [ablate(sf, dim) for sf in functions]
        curve = coverage_curve(tool_selector(reduced), vulnerable, fractions)
        return tuple(a.coverage - b.coverage for a, b in zip(curve, full))

    return SensitivityReport(tuple(fractions), full, {dim: run(dim) for dim in dimensions})
