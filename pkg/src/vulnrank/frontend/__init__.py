"""C frontend: source discovery and parsing into FunctionModel records."""

from .discover import discover_sources
from .model import (
    CallSite,
    ControlStructure,
    FunctionId,
    FunctionModel,
    ParseError,
    PointerOperation,
    RecoverySkipped,
)
from .parser import collect_predicate_variables, parse_translation_unit

__all__ = [
    "CallSite",
    "ControlStructure",
    "FunctionId",
    "FunctionModel",
    "ParseError",
    "PointerOperation",
    "RecoverySkipped",
    "collect_predicate_variables",
    "discover_sources",
    "parse_translation_unit",
]
