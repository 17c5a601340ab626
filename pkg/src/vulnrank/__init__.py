"""Rank C functions by vulnerability-proneness from complexity and vulnerability metrics."""

from .complexity import ComplexityVector, complexity_vector, cyclomatic_complexity, loop_metrics
from .frontend import FunctionModel, parse_translation_unit
from .pipeline import ScanResult, scan
from .ranking import (
    BinTable,
    CandidateList,
    ScoredFunction,
    build_bins,
    manual_down,
    manual_up,
    priority_scores,
    select_candidates,
)
from .vulnerability import (
    VulnerabilityVector,
    control_structure_metrics,
    dependency_metrics,
    pointer_metrics,
    vulnerability_vector,
)

__version__ = "0.1.0"
