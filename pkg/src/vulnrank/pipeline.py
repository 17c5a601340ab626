"""Discovery -> parsing -> metrics for a whole source tree."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from .frontend import ParseError, RecoverySkipped, discover_sources, parse_translation_unit
from .ranking import ScoredFunction


@dataclass
class ScanResult:
    functions: list[ScoredFunction] = field(default_factory=list)
    diagnostics: list[str] = field(default_factory=list)
    files: int = 0


def _scan_file(root: str, rel: str) -> tuple[list[ScoredFunction], list[str]]:
    text = Path(root, rel).read_text(encoding="utf-8", errors="replace")
    skipped: list[RecoverySkipped] = []
    try:
        models = parse_translation_unit(text, rel, skipped)
    except ParseError as exc:
        return [], [f"error: {exc}"]
    scored = [ScoredFunction.from_model(fm) for fm in models]
    for sf in scored:
        assert sf.vulnerability.score == sum(sf.vulnerability.as_dict().values())
    return scored, [f"warning: {d}" for d in skipped]


def scan(
    root: str | os.PathLike[str],
    include: Iterable[str] = (),
    exclude: Iterable[str] = (),
    jobs: int = 1,
) -> ScanResult:
    """Parse and score every function under ``root``; output order is by FunctionId."""
    root = str(root)
    files = discover_sources(root, include, exclude)
    result = ScanResult(files=len(files))
    if jobs > 1 and len(files) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outputs = list(pool.map(_scan_file, [root] * len(files), files, chunksize=8))
    else:
        outputs = [_scan_file(root, rel) for rel in files]
    for scored, diags in outputs:
        result.functions.extend(scored)
        result.diagnostics.extend(diags)
    result.functions.sort(key=lambda sf: sf.id)
    return result
