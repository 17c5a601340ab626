"""Walk a directory tree for C sources."""

from __future__ import annotations

import fnmatch
import os
from pathlib import Path
from typing import Iterable

SOURCE_SUFFIXES = (".c", ".h")


def discover_sources(
    root: str | os.PathLike[str],
    include: Iterable[str] = (),
    exclude: Iterable[str] = (),
    suffixes: tuple[str, ...] = SOURCE_SUFFIXES,
) -> list[str]:
    """Relative POSIX paths of C sources under ``root``, sorted.

    ``include`` globs, when given, must match for a file to be kept; ``exclude``
    globs drop matching files. Globs are matched against the relative path and
    against the bare file name.
    """
    root = Path(root)
    include = list(include)
    exclude = list(exclude)
    found = []
    for dirpath, dirnames, filenames in os.walk(root):
        dirnames.sort()
        for name in filenames:
            if not name.endswith(suffixes):
                continue
            rel = Path(dirpath, name).relative_to(root).as_posix()
            if include and not _matches(rel, name, include):
                continue
            if exclude and _matches(rel, name, exclude):
                continue
            found.append(rel)
    return sorted(found)


def _matches(rel: str, name: str, globs: list[str]) -> bool:
    return any(fnmatch.fnmatchcase(rel, g) or fnmatch.fnmatchcase(name, g) for g in globs)
