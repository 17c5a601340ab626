"""Comment stripping, directive handling and tokenization for C sources."""

from __future__ import annotations

import re
from typing import NamedTuple

from .model import ParseError

KEYWORDS = frozenset(
    """
    auto break case char const continue default do double else enum extern float for goto
    if inline int long register restrict return short signed sizeof static struct switch
    typedef union unsigned void volatile while _Bool _Complex _Imaginary _Alignas _Alignof
    _Atomic _Generic _Noreturn _Static_assert _Thread_local __inline __inline__ __restrict
    __restrict__ __const __volatile__ __attribute__ __asm__ asm __extension__ __typeof__ typeof
    __declspec __cdecl __stdcall __fastcall
    """.split()
)

TYPE_KEYWORDS = frozenset(
    """
    char double float int long short signed unsigned void _Bool _Complex _Imaginary
    const volatile restrict static extern register auto inline typedef struct union enum
    __inline __inline__ __restrict __restrict__ __const __volatile__ _Atomic _Thread_local
    _Noreturn __extension__
    """.split()
)


class Token(NamedTuple):
    kind: str  # ident, keyword, number, string, char, punct
    text: str
    line: int


_PUNCTUATORS = sorted(
    """
    ... <<= >>= -> ++ -- << >> <= >= == != && || *= /= %= += -= &= ^= |= ##
    [ ] ( ) { } . & * + - ~ ! / % < > ^ | ? : ; = , #
    """.split(),
    key=len,
    reverse=True,
)

_TOKEN_RE = re.compile(
    r"""
    (?P<nl>\n)
    |(?P<ws>[ \t\r\f\v\\]+)
    |(?P<string>(?:u8|[uUL])?"(?:\\.|[^"\\\n])*"?)
    |(?P<char>(?:[uUL])?'(?:\\.|[^'\\\n])*'?)
    |(?P<ident>[A-Za-z_$][A-Za-z0-9_$]*)
    |(?P<number>\.?[0-9](?:[eEpP][+-]|[A-Za-z0-9_.'])*)
    |(?P<punct>"""
    + "|".join(re.escape(p) for p in _PUNCTUATORS)
    + r""")
    |(?P<other>.)
    """,
    re.VERBOSE,
)


def strip_comments(source: str, file_path: str = "<string>") -> str:
    """Replace comments with spaces, keeping newlines so line numbers survive."""
    out: list[str] = []
    i, n, line = 0, len(source), 1
    while i < n:
        c = source[i]
        if c == "/" and i + 1 < n and source[i + 1] == "*":
            end = source.find("*/", i + 2)
            if end < 0:
                raise ParseError("unterminated comment", file_path, line)
            chunk = source[i : end + 2]
            nls = chunk.count("\n")
            out.append(" " if not nls else "\n" * nls)
            line += nls
            i = end + 2
        elif c == "/" and i + 1 < n and source[i + 1] == "/":
            # a trailing backslash continues a line comment
            j = i
            while j < n and source[j] != "\n":
                if source[j] == "\\" and j + 1 < n and source[j + 1] == "\n":
                    j += 2
                    out.append("\n")
                    line += 1
                    continue
                j += 1
            out.append(" ")
            i = j
        elif c in "\"'":
            j = i + 1
            while j < n and source[j] != c and source[j] != "\n":
                j += 2 if source[j] == "\\" else 1
            j = min(j + 1, n) if j < n and source[j] == c else j
            out.append(source[i:j])
            i = j
        else:
            if c == "\n":
                line += 1
            out.append(c)
            i += 1
    return "".join(out)


_DIRECTIVE_RE = re.compile(r"^\s*#\s*(\w*)(.*)$", re.DOTALL)
_DEFINE_RE = re.compile(r"\s*([A-Za-z_]\w*)(\()?")
_IF_ZERO_RE = re.compile(r"\s*0\s*$")


class Preprocessed(NamedTuple):
    text: str
    macros: frozenset[str]


def preprocess(text: str) -> Preprocessed:
    """Blank out directives and the text of conditional branches that are not taken.

    The first branch of every conditional group is kept, except for a literal
    ``#if 0`` whose next branch is kept instead. Nothing is expanded; only the
    names of ``#define``d macros are recorded.
    """
    lines = text.split("\n")
    out: list[str] = []
    macros: set[str] = set()
    # each frame: [active, taken_a_branch, parent_active]
    stack: list[list[bool]] = []

    def active() -> bool:
        return not stack or stack[-1][0]

    i = 0
    while i < len(lines):
        raw = lines[i]
        m = _DIRECTIVE_RE.match(raw)
        if not m:
            out.append(raw if active() else "")
            i += 1
            continue
        # gather continuation lines
        logical = raw
        span = 1
        while logical.endswith("\\") and i + span < len(lines):
            logical = logical[:-1] + " " + lines[i + span]
            span += 1
        out.extend([""] * span)
        i += span
        name, rest = _DIRECTIVE_RE.match(logical).group(1, 2)
        if name in ("if", "ifdef", "ifndef"):
            parent = active()
            take = parent and not (name == "if" and _IF_ZERO_RE.match(rest))
            stack.append([take, take, parent])
        elif name in ("elif", "else"):
            if not stack:
                continue
            frame = stack[-1]
            take = frame[2] and not frame[1]
            frame[0] = take
            frame[1] = frame[1] or take
        elif name == "endif":
            if stack:
                stack.pop()
        elif name == "define" and active():
            d = _DEFINE_RE.match(rest)
            if d:
                macros.add(d.group(1))
    return Preprocessed("\n".join(out), frozenset(macros))


def tokenize(text: str, file_path: str = "<string>") -> list[Token]:
    tokens: list[Token] = []
    line = 1
    for m in _TOKEN_RE.finditer(text):
        kind = m.lastgroup
        value = m.group()
        if kind == "nl":
            line += 1
        elif kind == "ws":
            continue
        elif kind == "ident":
            tokens.append(Token("keyword" if value in KEYWORDS else "ident", value, line))
        elif kind == "other":
            tokens.append(Token("punct", value, line))
        else:
            tokens.append(Token(kind, value, line))
    return tokens


def code_lines(stripped: str) -> list[bool]:
    """Per physical line (0-based), whether it carries anything besides comments and blanks."""
    return [bool(s.strip()) for s in stripped.split("\n")]
