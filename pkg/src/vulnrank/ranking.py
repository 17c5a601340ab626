"""Binning by exact complexity score, in-bin ranking and iterative top-k selection."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .complexity import ComplexityVector, complexity_vector
from .frontend.model import FunctionId, FunctionModel
from .vulnerability import VulnerabilityVector, vulnerability_vector

# guards p*N against float noise such as 0.1 * 30 = 3.0000000000000004
_EPS = 1e-9


class RankingError(ValueError):
    pass


class EmptyInput(RankingError):
    pass


class InvalidFraction(RankingError):
    pass


@dataclass(frozen=True)
class ScoredFunction:
    id: FunctionId
    complexity: ComplexityVector
    vulnerability: VulnerabilityVector
    sloc: int
    # set explicitly only for ablations; None means the full vector sum
    complexity_override: int | None = field(default=None, repr=False)
    vulnerability_override: int | None = field(default=None, repr=False)

    @classmethod
    def from_model(cls, fm: FunctionModel) -> ScoredFunction:
        return cls(fm.id, complexity_vector(fm), vulnerability_vector(fm), fm.sloc)

    @property
    def complexity_score(self) -> int:
        if self.complexity_override is not None:
            return self.complexity_override
        return self.complexity.score

    @property
    def vulnerability_score(self) -> int:
        if self.vulnerability_override is not None:
            return self.vulnerability_override
        return self.vulnerability.score


def _tiebreak(sf: ScoredFunction) -> tuple[str, str, int]:
    return (sf.id.file_path, sf.id.function_name, sf.id.start_line)


@dataclass(frozen=True)
class BinTable:
    """Functions grouped by complexity score, keys descending, each bin by vulnerability descending."""

    bins: dict[int, tuple[ScoredFunction, ...]]

    @property
    def total(self) -> int:
        return sum(len(b) for b in self.bins.values())

    def __iter__(self):
        return iter(self.bins.items())

    def __len__(self) -> int:
        return len(self.bins)


def build_bins(functions: Iterable[ScoredFunction]) -> BinTable:
    grouped: dict[int, list[ScoredFunction]] = {}
    for sf in functions:
        grouped.setdefault(sf.complexity_score, []).append(sf)
    if not grouped:
        raise EmptyInput("no functions to bin")
    bins = {
        key: tuple(sorted(grouped[key], key=lambda sf: (-sf.vulnerability_score, _tiebreak(sf))))
        for key in sorted(grouped, reverse=True)
    }
    return BinTable(bins)


def dense_ranks(members: Sequence[ScoredFunction]) -> list[int]:
    """1-based dense ranks of an already sorted bin."""
    ranks = []
    rank = 0
    last = None
    for sf in members:
        if sf.vulnerability_score != last:
            rank += 1
            last = sf.vulnerability_score
        ranks.append(rank)
    return ranks


@dataclass(frozen=True)
class Candidate:
    function: ScoredFunction
    rank: int  # selection iteration k (baselines: dense SLOC rank)
    position: int  # 1-based position within the bin (baselines: within the sort order)


@dataclass(frozen=True)
class CandidateList:
    entries: tuple[Candidate, ...]
    total_functions: int
    requested: float

    @property
    def selected_fraction(self) -> float:
        return len(self.entries) / self.total_functions

    @property
    def ids(self) -> list[FunctionId]:
        return [c.function.id for c in self.entries]

    def __len__(self) -> int:
        return len(self.entries)


def _check_fraction(p: float) -> None:
    if not (isinstance(p, (int, float)) and 0 < p <= 1) or math.isnan(p):
        raise InvalidFraction(f"fraction must lie in (0, 1], got {p!r}")


def _quota(p: float, n: int) -> int:
    return max(1, math.ceil(p * n - _EPS))


def select_candidates(bt: BinTable, p: float) -> CandidateList:
    """Take the dense-rank-k functions of every bin for k = 1, 2, ... until a fraction p is selected.

    Ties at rank k are taken together, and a round is always completed over all
    bins before the stop condition is checked.
    """
    _check_fraction(p)
    total = bt.total
    quota = _quota(p, total)
    ranked = [(members, dense_ranks(members)) for _, members in bt]
    entries: list[Candidate] = []
    k = 0
    while len(entries) < quota:
        k += 1
        for members, ranks in ranked:
            for pos, (sf, r) in enumerate(zip(members, ranks), start=1):
                if r == k:
                    entries.append(Candidate(sf, k, pos))
    return CandidateList(tuple(entries), total, p)


def _sloc_baseline(functions: Sequence[ScoredFunction], p: float, descending: bool) -> CandidateList:
    _check_fraction(p)
    if not functions:
        raise EmptyInput("no functions to rank")
    sign = -1 if descending else 1
    ordered = sorted(functions, key=lambda sf: (sign * sf.sloc, _tiebreak(sf)))
    quota = _quota(p, len(ordered))
    cut = quota
    while cut < len(ordered) and ordered[cut].sloc == ordered[quota - 1].sloc:
        cut += 1
    entries = []
    rank = 0
    last = None
    for pos, sf in enumerate(ordered[:cut], start=1):
        if sf.sloc != last:
            rank += 1
            last = sf.sloc
        entries.append(Candidate(sf, rank, pos))
    return CandidateList(tuple(entries), len(ordered), p)


def manual_down(functions: Sequence[ScoredFunction], p: float) -> CandidateList:
    """Largest functions first."""
    return _sloc_baseline(functions, p, descending=True)


def manual_up(functions: Sequence[ScoredFunction], p: float) -> CandidateList:
    """Smallest functions first."""
    return _sloc_baseline(functions, p, descending=False)


def priority_scores(bt: BinTable) -> dict[FunctionId, float]:
    """Seed-prioritization score per function: 100 minus the cumulative share selected up to its round."""
    full = select_candidates(bt, 1.0)
    per_round = Counter(c.rank for c in full.entries)
    total = full.total_functions
    cumulative = 0
    score_at: dict[int, float] = {}
    for k in sorted(per_round):
        cumulative += per_round[k]
        score_at[k] = 100.0 - 100.0 * cumulative / total
    scores = {sf.id: 0.0 for _, members in bt for sf in members}
    for c in full.entries:
        scores[c.function.id] = score_at[c.rank]
    return scores
