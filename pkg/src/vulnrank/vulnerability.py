"""Vulnerability metrics: dependency, pointer usage and control-structure coupling.

Control dependence is approximated by syntactic nesting: a structure controls
every structure nested inside its body. Data dependence groups the structures
whose predicates read one common variable.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field, fields

from .frontend.model import ControlStructure, FunctionModel


@dataclass(frozen=True)
class VulnerabilityVector:
    v1_params: int
    v2_callee_arg_vars: int
    v3_pointer_arith: int
    v4_pointer_arith_vars: int
    v5_max_pointer_arith_per_var: int
    v6_nested_control_pairs: int
    v7_max_control_nesting: int
    v8_max_control_dependent: int
    v9_max_data_dependent: int
    v10_if_without_else: int
    v11_predicate_vars: int
    # variables behind v9 and v11, reported for auditors; not part of the score
    data_dependent_variables: tuple[str, ...] = field(default=(), compare=False)
    predicate_variables: tuple[str, ...] = field(default=(), compare=False)

    @property
    def score(self) -> int:
        return sum(getattr(self, name) for name in METRIC_NAMES)

    def as_dict(self) -> dict[str, int]:
        return {name: getattr(self, name) for name in METRIC_NAMES}


METRIC_NAMES = tuple(f.name for f in fields(VulnerabilityVector) if f.name.startswith("v"))


def dependency_metrics(fm: FunctionModel) -> tuple[int, int]:
    arg_vars: set[str] = set()
    for call in fm.call_sites:
        arg_vars |= call.argument_variables
    return len(fm.parameters), len(arg_vars)


def pointer_metrics(fm: FunctionModel) -> tuple[int, int, int]:
    per_var = Counter(op.variable for op in fm.pointer_ops)
    return len(fm.pointer_ops), len(per_var), max(per_var.values(), default=0)


def _subtree(node: ControlStructure, depth: int, acc: dict) -> int:
    """Accumulate nesting facts; return the size of the subtree rooted at ``node``."""
    acc["depth"] = max(acc["depth"], depth)
    size = 1
    for child in node.children:
        acc["pairs"] += 1
        size += _subtree(child, depth + 1, acc)
    acc["group"] = max(acc["group"], size)
    return size


def control_structure_metrics(fm: FunctionModel) -> tuple[int, int, int, int, int, int]:
    acc = {"pairs": 0, "depth": 0, "group": 0}
    for root in fm.control_roots:
        _subtree(root, 1, acc)
    structures = list(fm.control_structures())
    readers = Counter(v for cs in structures for v in cs.predicate_variables)
    without_else = sum(1 for cs in structures if cs.kind == "if" and not cs.has_else)
    return (
        acc["pairs"],
        acc["depth"],
        acc["group"],
        max(readers.values(), default=0),
        without_else,
        len(readers),
    )


def vulnerability_vector(fm: FunctionModel) -> VulnerabilityVector:
    v1, v2 = dependency_metrics(fm)
    v3, v4, v5 = pointer_metrics(fm)
    v6, v7, v8, v9, v10, v11 = control_structure_metrics(fm)
    readers = Counter(v for cs in fm.control_structures() for v in cs.predicate_variables)
    return VulnerabilityVector(
        v1, v2, v3, v4, v5, v6, v7, v8, v9, v10, v11,
        data_dependent_variables=tuple(sorted(v for v, c in readers.items() if c == v9)),
        predicate_variables=tuple(sorted(readers)),
    )
