"""Complexity metrics (cyclomatic complexity and loop structure) used as the binning key."""

from __future__ import annotations

from dataclasses import dataclass, fields

from .frontend.model import ControlStructure, FunctionModel


@dataclass(frozen=True)
class ComplexityVector:
    c1_cyclomatic: int
    c2_loops: int
    c3_nested_loop_pairs: int
    c4_max_loop_nesting: int

    @property
    def score(self) -> int:
        return self.c1_cyclomatic + self.c2_loops + self.c3_nested_loop_pairs + self.c4_max_loop_nesting

    def as_dict(self) -> dict[str, int]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


METRIC_NAMES = tuple(f.name for f in fields(ComplexityVector))


def cyclomatic_complexity(fm: FunctionModel) -> int:
    """Decision points plus one.

    Decision points are if/while/for/do-while, case labels, ``?:`` and each
    ``&&``/``||``; the frontend has already counted them.
    """
    return fm.decision_points + 1


def _loop_walk(node: ControlStructure, loops_above: int) -> tuple[int, int, int]:
    """(loops, ancestor-descendant loop pairs, deepest loop count on a path) for a subtree."""
    here = 1 if node.is_loop else 0
    loops = here
    pairs = loops_above if node.is_loop else 0
    deepest = loops_above + here
    for child in node.children:
        cl, cp, cd = _loop_walk(child, loops_above + here)
        loops += cl
        pairs += cp
        deepest = max(deepest, cd)
    return loops, pairs, deepest


def loop_metrics(fm: FunctionModel) -> tuple[int, int, int]:
    loops = pairs = deepest = 0
    for root in fm.control_roots:
        cl, cp, cd = _loop_walk(root, 0)
        loops += cl
        pairs += cp
        deepest = max(deepest, cd)
    return loops, pairs, deepest


def complexity_vector(fm: FunctionModel) -> ComplexityVector:
    c2, c3, c4 = loop_metrics(fm)
    return ComplexityVector(cyclomatic_complexity(fm), c2, c3, c4)
