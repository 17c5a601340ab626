"""Score-table strategies and the selection properties checked against them."""

from __future__ import annotations

from dataclasses import replace

from hypothesis import strategies as st

from vulnrank.complexity import ComplexityVector
from vulnrank.frontend.model import FunctionId
from vulnrank.ranking import CandidateList, ScoredFunction, build_bins, dense_ranks, select_candidates
from vulnrank.vulnerability import VulnerabilityVector


def make(name: str, complexity: int, vulnerability: int, sloc: int = 10, path: str = "f.c") -> ScoredFunction:
    cv = ComplexityVector(complexity, 0, 0, 0)
    vv = VulnerabilityVector(vulnerability, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0)
    return ScoredFunction(FunctionId(path, name, 1), cv, vv, sloc)


score_tables = st.lists(
    st.tuples(st.integers(1, 6), st.integers(0, 8), st.integers(1, 60)),
    min_size=1,
    max_size=40,
).map(lambda rows: [make(f"fn{i:03d}", c, v, s) for i, (c, v, s) in enumerate(rows)])

fractions = st.floats(min_value=0.01, max_value=1.0, allow_nan=False)


def key(c):
    return (c.function.id, c.rank)


def check_minimal_over_selection(fns: list[ScoredFunction], p: float) -> None:
    cl = select_candidates(build_bins(fns), p)
    n = len(fns)
    assert len(cl) / n >= p - 1e-9
    last = max(c.rank for c in cl.entries)
    before = sum(1 for c in cl.entries if c.rank < last)
    assert before / n < p
    ranks = [c.rank for c in cl.entries]
    assert ranks == sorted(ranks)


def check_monotone_prefix(fns: list[ScoredFunction], p1: float, p2: float) -> None:
    lo, hi = sorted((p1, p2))
    bt = build_bins(fns)
    a = select_candidates(bt, lo).entries
    b = select_candidates(bt, hi).entries
    assert list(map(key, a)) == list(map(key, b[: len(a)]))


def check_bins_before_rank_two(fns: list[ScoredFunction], p: float) -> None:
    bt = build_bins(fns)
    cl = select_candidates(bt, p)
    first_round = {c.function.complexity_score for c in cl.entries if c.rank == 1}
    assert first_round == set(bt.bins)
    seen_two = False
    for c in cl.entries:
        if c.rank >= 2:
            seen_two = True
        else:
            assert not seen_two


def check_ties_atomic(fns: list[ScoredFunction], p: float) -> None:
    bt = build_bins(fns)
    chosen = {c.function.id for c in select_candidates(bt, p).entries}
    for members in bt.bins.values():
        for sf in members:
            if sf.id in chosen:
                same = [o for o in members if o.vulnerability_score == sf.vulnerability_score]
                assert all(o.id in chosen for o in same)
    # dense ranks agree with the tie rule
    for members in bt.bins.values():
        ranks = dense_ranks(members)
        for a, b, ra, rb in zip(members, members[1:], ranks, ranks[1:]):
            assert (ra == rb) == (a.vulnerability_score == b.vulnerability_score)


def check_rescaling(fns: list[ScoredFunction], p: float, factor: int) -> None:
    scaled = [replace(sf, vulnerability_override=sf.vulnerability_score * factor) for sf in fns]
    a: CandidateList = select_candidates(build_bins(fns), p)
    b: CandidateList = select_candidates(build_bins(scaled), p)
    assert [(c.function.id, c.rank, c.position) for c in a.entries] == [
        (c.function.id, c.rank, c.position) for c in b.entries
    ]
