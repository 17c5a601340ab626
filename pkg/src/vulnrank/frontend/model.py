"""Immutable records produced by the C frontend."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

LOOP_KINDS = frozenset({"for", "while", "do-while"})
CONTROL_KINDS = frozenset({"if", "switch"}) | LOOP_KINDS
POINTER_OP_KINDS = frozenset(
    {"member_access", "dereference", "increment", "decrement", "subscript", "offset_arith"}
)


@dataclass(frozen=True, order=True)
class FunctionId:
    file_path: str
    function_name: str
    start_line: int

    def __post_init__(self) -> None:
        if self.start_line < 1:
            raise ValueError(f"start_line must be >= 1, got {self.start_line}")

    def __str__(self) -> str:
        return f"{self.file_path}:{self.start_line}:{self.function_name}"


@dataclass(frozen=True)
class ControlStructure:
    kind: str
    line: int
    predicate_variables: frozenset[str] = frozenset()
    has_else: bool = False
    children: tuple[ControlStructure, ...] = ()

    def __post_init__(self) -> None:
        if self.kind not in CONTROL_KINDS:
            raise ValueError(f"unknown control structure kind {self.kind!r}")

    @property
    def is_loop(self) -> bool:
        return self.kind in LOOP_KINDS

    def walk(self) -> Iterator[ControlStructure]:
        """Yield this structure and every structure nested below it, in source order."""
        yield self
        for child in self.children:
            yield from child.walk()


@dataclass(frozen=True)
class PointerOperation:
    variable: str
    op_kind: str
    line: int

    def __post_init__(self) -> None:
        if not self.variable:
            raise ValueError("pointer operation needs a variable")
        if self.op_kind not in POINTER_OP_KINDS:
            raise ValueError(f"unknown pointer op kind {self.op_kind!r}")


@dataclass(frozen=True)
class CallSite:
    callee_name: str
    argument_variables: frozenset[str]
    line: int = 0


@dataclass(frozen=True)
class FunctionModel:
    id: FunctionId
    parameters: tuple[str, ...] = ()
    pointer_parameters: frozenset[str] = frozenset()
    control_roots: tuple[ControlStructure, ...] = ()
    pointer_ops: tuple[PointerOperation, ...] = ()
    call_sites: tuple[CallSite, ...] = ()
    decision_points: int = 0
    sloc: int = 1

    def __post_init__(self) -> None:
        if self.sloc < 1:
            raise ValueError("sloc must be >= 1")
        if self.decision_points < 0:
            raise ValueError("decision_points must be >= 0")
        if not self.pointer_parameters <= set(self.parameters):
            raise ValueError("pointer_parameters must be a subset of parameters")

    @property
    def name(self) -> str:
        return self.id.function_name

    def control_structures(self) -> Iterator[ControlStructure]:
        """Every control structure of the function, flattened in source order."""
        for root in self.control_roots:
            yield from root.walk()


@dataclass(frozen=True)
class RecoverySkipped:
    """Diagnostic for a function body the parser gave up on."""

    file_path: str
    line: int
    function_name: str
    message: str

    def __str__(self) -> str:
        return f"{self.file_path}:{self.line}: skipped {self.function_name}: {self.message}"


class ParseError(Exception):
    def __init__(self, message: str, file_path: str = "<string>", line: int = 0) -> None:
        super().__init__(f"{file_path}:{line}: {message}")
        self.file_path = file_path
        self.line = line
        self.message = message


@dataclass
class _Scratch:
    """Mutable twin of ControlStructure used while a body is being parsed."""

    kind: str
    line: int
    predicate_variables: set[str] = field(default_factory=set)
    has_else: bool = False
    children: list[_Scratch] = field(default_factory=list)

    def freeze(self) -> ControlStructure:
        return ControlStructure(
            kind=self.kind,
            line=self.line,
            predicate_variables=frozenset(self.predicate_variables),
            has_else=self.has_else,
            children=tuple(c.freeze() for c in self.children),
        )
