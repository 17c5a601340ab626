"""A tolerant recursive-descent reader for the C subset the metrics need.

The parser does not build a full AST. Function bodies are walked statement by
statement to recover the control-structure forest, while expressions are
scanned at token level for decision points, call sites and pointer operations.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field

from .lexer import KEYWORDS, TYPE_KEYWORDS, Token, code_lines, preprocess, strip_comments, tokenize
from .model import (
    CallSite,
    ControlStructure,
    FunctionId,
    FunctionModel,
    ParseError,
    PointerOperation,
    RecoverySkipped,
    _Scratch,
)

log = logging.getLogger(__name__)

_EOF = Token("eof", "", 0)
_OPEN = {"(": ")", "[": "]", "{": "}"}
_CLOSE = {")", "]", "}"}
_ATTRIBUTE_KW = frozenset({"__attribute__", "__declspec", "__asm__", "asm"})
_TAG_KW = frozenset({"struct", "union", "enum"})
_BASE_TYPE_KW = frozenset(
    {"char", "double", "float", "int", "long", "short", "signed", "unsigned", "void", "_Bool", "_Complex"}
)
_STMT_KW = frozenset({"if", "for", "while", "do", "switch", "return", "else", "case", "default", "goto"})
_CONSTANT_NAMES = frozenset({"NULL", "true", "false", "nullptr", "__func__", "__FUNCTION__"})
_ALL_CAPS = re.compile(r"^[A-Z_][A-Z0-9_]+$")


class _SyntaxError(Exception):
    def __init__(self, message: str, line: int) -> None:
        super().__init__(message)
        self.line = line


@dataclass
class _FileContext:
    macros: frozenset[str]
    typedefs: set[str] = field(default_factory=set)
    enum_constants: set[str] = field(default_factory=set)
    functions: set[str] = field(default_factory=set)
    globals: dict[str, bool] = field(default_factory=dict)  # name -> pointer-typed

    def is_non_variable(self, name: str) -> bool:
        return (
            name in self.typedefs
            or name in self.macros
            or name in self.enum_constants
            or name in self.functions
        )


def _match(tokens: list[Token], i: int) -> int:
    """Index of the bracket closing ``tokens[i]``; raises _SyntaxError when unbalanced."""
    stack = [_OPEN[tokens[i].text]]
    j = i + 1
    while j < len(tokens):
        t = tokens[j].text
        if tokens[j].kind == "punct":
            if t in _OPEN:
                stack.append(_OPEN[t])
            elif t in _CLOSE:
                if t != stack[-1]:
                    raise _SyntaxError(f"mismatched {t!r}", tokens[j].line)
                stack.pop()
                if not stack:
                    return j
        j += 1
    raise _SyntaxError(f"unclosed {tokens[i].text!r}", tokens[i].line)


def _split_top(tokens: list[Token], sep: str = ",") -> list[list[Token]]:
    parts: list[list[Token]] = [[]]
    depth = 0
    for t in tokens:
        if t.kind == "punct":
            if t.text in _OPEN:
                depth += 1
            elif t.text in _CLOSE:
                depth -= 1
            elif t.text == sep and depth == 0:
                parts.append([])
                continue
        parts[-1].append(t)
    return [p for p in parts if p]


# -- declarations --------------------------------------------------------------


@dataclass
class _Declarator:
    name: str
    pointer: bool
    is_function: bool
    array_empty: bool
    is_array: bool
    dims: list[list[Token]]
    initializer: list[Token]


@dataclass
class _Declaration:
    is_typedef: bool
    declarators: list[_Declarator]
    enum_constants: list[str]
    spec_exprs: list[list[Token]]  # typeof/_Alignas operands


def _skip_specifiers(tokens: list[Token], ctx: _FileContext | None) -> tuple[int, bool, list[str], list[list[Token]]]:
    """Consume declaration specifiers; return (index after them, typedef?, enum constants, typeof operands)."""
    i = 0
    base_seen = False
    is_typedef = False
    enums: list[str] = []
    exprs: list[list[Token]] = []
    n = len(tokens)
    while i < n:
        t = tokens[i]
        if t.kind == "keyword":
            if t.text == "typedef":
                is_typedef = True
                i += 1
            elif t.text in _TAG_KW:
                base_seen = True
                i += 1
                if i < n and tokens[i].kind == "ident":
                    i += 1
                while i < n and tokens[i].text in _ATTRIBUTE_KW:
                    i = _skip_attribute(tokens, i)
                if i < n and tokens[i].text == "{":
                    j = _match(tokens, i)
                    if t.text == "enum":
                        enums.extend(_enum_names(tokens[i + 1 : j]))
                    i = j + 1
            elif t.text in _ATTRIBUTE_KW:
                i = _skip_attribute(tokens, i)
            elif t.text in ("typeof", "__typeof__", "_Alignas", "_Atomic") and i + 1 < n and tokens[i + 1].text == "(":
                j = _match(tokens, i + 1)
                exprs.append(tokens[i + 2 : j])
                base_seen = True
                i = j + 1
            elif t.text in TYPE_KEYWORDS:
                base_seen = base_seen or t.text in _BASE_TYPE_KW
                i += 1
            else:
                break
        elif t.kind == "ident" and not base_seen:
            nxt = tokens[i + 1] if i + 1 < n else _EOF
            known = ctx is not None and t.text in ctx.typedefs
            if known or nxt.kind in ("ident", "keyword") or nxt.text == "*" or (
                nxt.text == "(" and i + 2 < n and tokens[i + 2].text in ("*", "^")
            ):
                base_seen = True
                i += 1
            else:
                break
        else:
            break
    return i, is_typedef, enums, exprs


def _skip_attribute(tokens: list[Token], i: int) -> int:
    i += 1
    while i < len(tokens) and tokens[i].text in ("volatile", "__volatile__", "goto", "inline"):
        i += 1
    if i < len(tokens) and tokens[i].text == "(":
        return _match(tokens, i) + 1
    return i


def _enum_names(body: list[Token]) -> list[str]:
    names = []
    for part in _split_top(body):
        if part and part[0].kind == "ident":
            names.append(part[0].text)
    return names


def _parse_declarator(tokens: list[Token]) -> _Declarator | None:
    init: list[Token] = []
    proper = tokens
    depth = 0
    for k, t in enumerate(tokens):
        if t.kind == "punct":
            if t.text in _OPEN:
                depth += 1
            elif t.text in _CLOSE:
                depth -= 1
            elif t.text == "=" and depth == 0:
                proper, init = tokens[:k], tokens[k + 1 :]
                break
    name_idx = None
    pointer = False
    k = 0
    while k < len(proper):
        t = proper[k]
        if t.kind == "ident":
            name_idx = k
            break
        if t.text in _ATTRIBUTE_KW:
            k = _skip_attribute(proper, k)
            continue
        if t.text in ("*", "^"):
            pointer = True
        k += 1
    if name_idx is None:
        return None
    rest = proper[name_idx + 1 :]
    # close parens belonging to a grouped declarator like (*fp)
    while rest and rest[0].text == ")":
        rest = rest[1:]
    is_function = bool(rest) and rest[0].text == "(" and not pointer
    dims: list[list[Token]] = []
    is_array = array_empty = False
    k = 0
    while k < len(rest) and rest[k].text == "[":
        j = _match(rest, k)
        is_array = True
        if j == k + 1:
            array_empty = True
        dims.append(rest[k + 1 : j])
        k = j + 1
    return _Declarator(proper[name_idx].text, pointer, is_function, array_empty, is_array, dims, init)


def _parse_declaration(tokens: list[Token], ctx: _FileContext | None) -> _Declaration:
    i, is_typedef, enums, exprs = _skip_specifiers(tokens, ctx)
    decls = []
    for part in _split_top(tokens[i:]):
        d = _parse_declarator(part)
        if d is not None:
            decls.append(d)
    return _Declaration(is_typedef, decls, enums, exprs)


def _parse_parameters(tokens: list[Token], ctx: _FileContext) -> list[tuple[str, bool]]:
    params = []
    for part in _split_top(tokens):
        if len(part) == 1 and part[0].text in ("void", "..."):
            continue
        i, _, _, _ = _skip_specifiers(part, ctx)
        if i == 0 and len(part) == 1:
            continue  # lone typedef name, unnamed parameter
        d = _parse_declarator(part[i:])
        if d is None:
            continue
        params.append((d.name, d.pointer or d.array_empty))
    return params


# -- function bodies -----------------------------------------------------------


class _BodyParser:
    def __init__(self, tokens: list[Token], ctx: _FileContext, params: list[tuple[str, bool]]) -> None:
        self.toks = tokens
        self.pos = 0
        self.ctx = ctx
        self.scopes: list[dict[str, bool]] = [dict(params)]
        self.roots: list[_Scratch] = []
        self.pointer_ops: list[PointerOperation] = []
        self.calls: list[CallSite] = []
        self.decisions = 0

    # token helpers

    def peek(self, k: int = 0) -> Token:
        j = self.pos + k
        return self.toks[j] if j < len(self.toks) else _EOF

    def advance(self) -> Token:
        t = self.peek()
        if t is _EOF:
            raise _SyntaxError("unexpected end of function body", self.toks[-1].line if self.toks else 0)
        self.pos += 1
        return t

    def expect(self, text: str) -> Token:
        t = self.peek()
        if t.text != text:
            raise _SyntaxError(f"expected {text!r}, found {t.text or 'end of body'!r}", t.line)
        return self.advance()

    def group(self) -> list[Token]:
        """Consume a parenthesized group and return its inner tokens."""
        if self.peek().text != "(":
            raise _SyntaxError(f"expected '(' found {self.peek().text!r}", self.peek().line)
        j = _match(self.toks, self.pos)
        inner = self.toks[self.pos + 1 : j]
        self.pos = j + 1
        return inner

    def until(self, stop: str = ";", *, loose: bool = False) -> list[Token]:
        """Consume a balanced run of tokens up to (and including) ``stop`` at depth 0."""
        start = self.pos
        depth = 0
        while True:
            t = self.peek()
            if t is _EOF:
                raise _SyntaxError(f"missing {stop!r}", self.toks[start].line if start < len(self.toks) else 0)
            if t.kind == "punct":
                if t.text in _OPEN:
                    if loose and depth == 0 and t.text == "{" and self._macro_block(start):
                        return self.toks[start : self.pos]
                    depth += 1
                elif t.text in _CLOSE:
                    if depth == 0:
                        raise _SyntaxError(f"unexpected {t.text!r}", t.line)
                    depth -= 1
                elif t.text == stop and depth == 0:
                    self.pos += 1
                    return self.toks[start : self.pos - 1]
            elif loose and depth == 0 and t.kind == "keyword" and t.text in _STMT_KW and self.pos > start:
                # macro invocation used as a statement without a trailing semicolon
                return self.toks[start : self.pos]
            self.pos += 1

    def _macro_block(self, start: int) -> bool:
        toks = self.toks
        return (
            self.pos - start >= 3
            and toks[start].kind == "ident"
            and toks[start + 1].text == "("
            and toks[self.pos - 1].text == ")"
            and _match(toks, start + 1) == self.pos - 1
        )

    # scopes

    def lookup(self, name: str) -> bool | None:
        for scope in reversed(self.scopes):
            if name in scope:
                return scope[name]
        return self.ctx.globals.get(name)

    def declare(self, name: str, pointer: bool) -> None:
        self.scopes[-1][name] = pointer

    # statements

    def parse(self) -> list[_Scratch]:
        while self.peek() is not _EOF:
            self.statement(self.roots)
        return self.roots

    def statement(self, container: list[_Scratch]) -> None:
        t = self.peek()
        text = t.text
        if t.kind == "punct" and text == "{":
            self.advance()
            self.scopes.append({})
            while self.peek().text != "}":
                if self.peek() is _EOF:
                    raise _SyntaxError("unclosed block", t.line)
                self.statement(container)
            self.advance()
            self.scopes.pop()
        elif t.kind == "punct" and text == ";":
            self.advance()
        elif t.kind == "keyword" and text == "if":
            self.advance()
            node = _Scratch("if", t.line, self.expression(self.group()))
            self.decisions += 1
            container.append(node)
            self.statement(node.children)
            if self.peek().text == "else":
                self.advance()
                node.has_else = True
                if self.peek().text == "if":
                    self.statement(container)
                else:
                    self.statement(node.children)
        elif t.kind == "keyword" and text in ("while", "switch"):
            self.advance()
            node = _Scratch(text, t.line, self.expression(self.group()))
            if text == "while":
                self.decisions += 1
            container.append(node)
            self.statement(node.children)
        elif t.kind == "keyword" and text == "for":
            self.advance()
            self.for_statement(t, container)
        elif t.kind == "keyword" and text == "do":
            self.advance()
            node = _Scratch("do-while", t.line)
            self.decisions += 1
            container.append(node)
            self.statement(node.children)
            self.expect("while")
            node.predicate_variables |= self.expression(self.group())
            self.expect(";")
        elif t.kind == "keyword" and text == "case":
            self.advance()
            self.decisions += 1
            self.case_label()
        elif t.kind == "keyword" and text == "default":
            self.advance()
            self.expect(":")
        elif t.kind == "keyword" and text == "goto":
            self.until(";")
        elif t.kind == "keyword" and text in ("return", "break", "continue"):
            self.advance()
            self.expression(self.until(";"))
        elif t.kind == "keyword" and text in ("asm", "__asm__"):
            self.until(";")
        elif t.kind == "keyword" and text == "else":
            raise _SyntaxError("'else' without 'if'", t.line)
        elif t.kind == "ident" and self.peek(1).text == ":" and self.peek(2).text != ":":
            self.advance()
            self.advance()
        elif self.is_declaration():
            self.declaration(self.until(";"))
        else:
            self.expression(self.until(";", loose=True))

    def for_statement(self, kw: Token, container: list[_Scratch]) -> None:
        inner = self.group()
        parts: list[list[Token]] = [[]]
        depth = 0
        for tok in inner:
            if tok.text in _OPEN:
                depth += 1
            elif tok.text in _CLOSE:
                depth -= 1
            if tok.text == ";" and depth == 0:
                parts.append([])
            else:
                parts[-1].append(tok)
        if len(parts) != 3:
            raise _SyntaxError("malformed for header", kw.line)
        self.scopes.append({})
        init, cond, step = parts
        preds: set[str] = set()
        if init and self._starts_declaration(init, 0):
            preds |= self.declaration(init)
        else:
            preds |= self.expression(init)
        preds |= self.expression(cond)
        preds |= self.expression(step)
        node = _Scratch("for", kw.line, preds)
        self.decisions += 1
        container.append(node)
        self.statement(node.children)
        self.scopes.pop()

    def case_label(self) -> None:
        depth = ternaries = 0
        while True:
            t = self.advance()
            if t.text in _OPEN:
                depth += 1
            elif t.text in _CLOSE:
                depth -= 1
            elif t.text == "?" and depth == 0:
                ternaries += 1
            elif t.text == ":" and depth == 0:
                if ternaries == 0:
                    return
                ternaries -= 1
            elif t.text in (";", "{", "}") and depth <= 0:
                raise _SyntaxError("malformed case label", t.line)

    def is_declaration(self) -> bool:
        return self._starts_declaration(self.toks, self.pos)

    def _starts_declaration(self, toks: list[Token], i: int) -> bool:
        t = toks[i] if i < len(toks) else _EOF
        if t.kind == "keyword":
            return t.text in TYPE_KEYWORDS or t.text in ("typeof", "__typeof__", "_Alignas", "_Static_assert")
        if t.kind != "ident" or self.lookup(t.text) is not None:
            return False
        nxt = toks[i + 1] if i + 1 < len(toks) else _EOF
        if t.text in self.ctx.typedefs:
            return nxt.text not in ("(", "=", ".", "->", "[", "++", "--") or (
                nxt.text == "(" and i + 2 < len(toks) and toks[i + 2].text == "*"
            )
        if nxt.kind == "ident" or nxt.text in ("const", "volatile", "restrict", "__restrict"):
            return True
        if nxt.text == "*":
            k = i + 1
            while k < len(toks) and toks[k].text in ("*", "const", "volatile", "restrict", "__restrict"):
                k += 1
            if k < len(toks) and toks[k].kind == "ident":
                after = toks[k + 1] if k + 1 < len(toks) else _EOF
                return after.text in (";", "=", ",", "[", ")")
        return False

    def declaration(self, tokens: list[Token]) -> set[str]:
        """Register declared names; return declared names plus variables read by initializers."""
        decl = _parse_declaration(tokens, self.ctx)
        names: set[str] = set()
        for e in decl.spec_exprs:
            names |= self.expression(e)
        if decl.enum_constants:
            self.ctx.enum_constants.update(decl.enum_constants)
        for d in decl.declarators:
            if decl.is_typedef:
                self.ctx.typedefs.add(d.name)
                continue
            if d.is_function:
                continue
            for dim in d.dims:
                names |= self.expression(dim)
            self.declare(d.name, d.pointer)
            names.add(d.name)
            if d.initializer:
                names |= self.expression(d.initializer)
        return names

    # expressions

    def is_variable(self, toks: list[Token], k: int) -> bool:
        name = toks[k].text
        if self.lookup(name) is not None:
            return True
        if name in _CONSTANT_NAMES or self.ctx.is_non_variable(name) or _ALL_CAPS.match(name):
            return False
        prev = toks[k - 1] if k > 0 else _EOF
        if prev.text in _TAG_KW or prev.text == "goto":
            return False
        nxt = toks[k + 1] if k + 1 < len(toks) else _EOF
        if prev.text == "(" and k >= 2 and toks[k - 2].text == "sizeof":
            return False
        if prev.text == "(" or (prev.kind == "keyword" and prev.text in TYPE_KEYWORDS):
            j = k + 1
            while j < len(toks) and toks[j].text in ("*", "const", "volatile"):
                j += 1
            if j < len(toks) and toks[j].text == ")" and (j > k + 1 or self._cast_operand(toks, j + 1)):
                return False  # type name inside a cast or sizeof
        if nxt.kind == "ident":
            return False  # typedef name starting a declaration, e.g. compound literal
        return True

    @staticmethod
    def _cast_operand(toks: list[Token], j: int) -> bool:
        if j >= len(toks):
            return False
        t = toks[j]
        return t.kind in ("ident", "number", "string", "char") or t.text in ("(", "!", "~")

    def expression(self, toks: list[Token]) -> set[str]:
        """Scan an expression; record decisions, calls and pointer ops; return variables read."""
        n = len(toks)
        var_at: list[str | None] = [None] * n
        calls: list[tuple[int, int]] = []
        for k, t in enumerate(toks):
            if t.kind == "punct":
                if t.text in ("&&", "||", "?"):
                    self.decisions += 1
                continue
            if t.kind == "keyword" and t.text in ("if", "for", "while", "switch", "do"):
                raise _SyntaxError(f"unexpected {t.text!r} inside expression", t.line)
            if t.kind != "ident":
                continue
            prev = toks[k - 1] if k > 0 else _EOF
            nxt = toks[k + 1] if k + 1 < n else _EOF
            if nxt.text == "(":
                calls.append((k, _match(toks, k + 1)))
                continue
            if prev.text in (".", "->"):
                continue
            if not self.is_variable(toks, k):
                continue
            var_at[k] = t.text
            if self.lookup(t.text):
                self._pointer_ops(toks, k)
        # dereference of a parenthesized pointer expression, e.g. *(p + 1)
        for k, t in enumerate(toks):
            if t.text == "*" and k + 1 < n and toks[k + 1].text == "(" and self._unary(toks, k):
                j = k + 1
                while j < n and toks[j].text == "(":
                    j += 1
                if j < n and var_at[j] and self.lookup(var_at[j]):
                    self.pointer_ops.append(PointerOperation(var_at[j], "dereference", toks[j].line))
        for k, close in calls:
            args = frozenset(v for v in var_at[k + 2 : close] if v)
            self.calls.append(CallSite(toks[k].text, args, toks[k].line))
        return {v for v in var_at if v}

    @staticmethod
    def _operand_end(t: Token) -> bool:
        return t.kind in ("ident", "number", "string", "char") or t.text in (")", "]", "++", "--")

    def _unary(self, toks: list[Token], k: int) -> bool:
        if k == 0 or not self._operand_end(toks[k - 1]):
            return True
        if toks[k - 1].text in ("++", "--"):
            return k < 2 or not self._operand_end(toks[k - 2])
        return toks[k - 1].text == ")" and self._closes_cast(toks, k - 1)

    def _closes_cast(self, toks: list[Token], close: int) -> bool:
        """Whether the group ending at ``close`` holds only a type name, as in ``(unsigned char)``."""
        depth = 0
        j = close
        while j >= 0:
            if toks[j].text == ")":
                depth += 1
            elif toks[j].text == "(":
                depth -= 1
                if depth == 0:
                    break
            j -= 1
        inner = toks[j + 1 : close]
        if j < 0 or not inner:
            return False
        if j > 0 and (toks[j - 1].kind == "ident" or toks[j - 1].text == "sizeof"):
            return False  # call or sizeof operand
        for t in inner:
            if t.kind == "keyword" and t.text in TYPE_KEYWORDS:
                continue
            if t.text == "*" or (t.kind == "ident" and (t.text in self.ctx.typedefs or t.text.endswith("_t"))):
                continue
            if t.kind == "ident" and t is inner[-1] and len(inner) >= 2 and inner[0].text in ("struct", "union", "enum"):
                continue
            return False
        return True

    def _pointer_ops(self, toks: list[Token], k: int) -> None:
        t = toks[k]
        n = len(toks)
        prev = toks[k - 1] if k > 0 else _EOF
        nxt = toks[k + 1] if k + 1 < n else _EOF
        ops = []
        if nxt.text == "->":
            ops.append("member_access")
        elif nxt.text == "[":
            ops.append("subscript")
        elif nxt.text == "++":
            ops.append("increment")
        elif nxt.text == "--":
            ops.append("decrement")
        if prev.text == "++":
            ops.append("increment")
        elif prev.text == "--":
            ops.append("decrement")
        deref = prev.text == "*" and self._unary(toks, k - 1)
        if deref:
            ops.append("dereference")
        if not deref and prev.text != "&" and nxt.text not in ("->", "[", "++", "--", "."):
            binary_prev = prev.text in ("+", "-") and k >= 2 and self._operand_end(toks[k - 2])
            if nxt.text in ("+", "-", "+=", "-=") or binary_prev:
                ops.append("offset_arith")
        for op in ops:
            self.pointer_ops.append(PointerOperation(t.text, op, t.line))


# -- translation unit ----------------------------------------------------------


@dataclass
class _Definition:
    name: str
    start: int  # token index of the first header token
    name_idx: int
    params: list[Token]
    body_open: int
    body_close: int


def _strip_trailing_attributes(header: list[Token]) -> list[Token]:
    while len(header) >= 2 and header[-1].text == ")":
        depth = 0
        k = len(header) - 1
        while k >= 0:
            if header[k].text == ")":
                depth += 1
            elif header[k].text == "(":
                depth -= 1
                if depth == 0:
                    break
            k -= 1
        if k > 0 and header[k - 1].text in _ATTRIBUTE_KW:
            header = header[: k - 1]
        else:
            break
    return header


def _function_header(tokens: list[Token], start: int, brace: int) -> _Definition | None:
    header = _strip_trailing_attributes(tokens[start:brace])
    if not header or header[-1].text != ")" or any(t.text == "=" for t in header):
        return None
    if header[0].text in ("struct", "union", "enum", "typedef") and not any(t.text == "(" for t in header):
        return None
    depth = 0
    k = len(header) - 1
    while k >= 0:
        if header[k].text == ")":
            depth += 1
        elif header[k].text == "(":
            depth -= 1
            if depth == 0:
                break
        k -= 1
    if k <= 0 or header[k - 1].kind != "ident":
        return None
    name_idx = start + k - 1
    # walk back over specifiers to find where this definition really starts
    s = k - 2
    while s >= 0:
        t = header[s]
        if t.kind in ("ident", "keyword") or t.text in ("*", ":"):
            s -= 1
        elif t.text == ")":
            depth = 0
            m = s
            while m >= 0:
                if header[m].text == ")":
                    depth += 1
                elif header[m].text == "(":
                    depth -= 1
                    if depth == 0:
                        break
                m -= 1
            if m > 0 and header[m - 1].text in _ATTRIBUTE_KW:
                s = m - 2
            else:
                break
        else:
            break
    return _Definition(
        name=header[k - 1].text,
        start=start + s + 1,
        name_idx=name_idx,
        params=header[k + 1 : -1],
        body_open=brace,
        body_close=-1,
    )


def _match_top(tokens: list[Token], i: int, file_path: str) -> int:
    """Closing brace for a top-level ``{``; only braces count so body errors stay local."""
    depth = 0
    for j in range(i, len(tokens)):
        t = tokens[j]
        if t.kind == "punct":
            if t.text == "{":
                depth += 1
            elif t.text == "}":
                depth -= 1
                if depth == 0:
                    return j
    raise ParseError("unclosed '{'", file_path, tokens[i].line)


def parse_translation_unit(
    source: str,
    file_path: str = "<string>",
    diagnostics: list[RecoverySkipped] | None = None,
) -> list[FunctionModel]:
    """Parse one C file into a FunctionModel per function definition.

    Function bodies that cannot be read are skipped; a RecoverySkipped record is
    appended to ``diagnostics`` when a list is given, and logged either way.
    Unbalanced braces or an unterminated comment raise ParseError.
    """
    stripped = strip_comments(source, file_path)
    has_code = code_lines(stripped)
    pp = preprocess(stripped)
    tokens = tokenize(pp.text, file_path)
    ctx = _FileContext(macros=pp.macros)

    definitions: list[_Definition] = []
    i = start = 0
    n = len(tokens)
    while i < n:
        t = tokens[i]
        if t.kind == "punct" and t.text == ";":
            _file_scope_declaration(tokens[start:i], ctx)
            start = i + 1
        elif t.kind == "punct" and t.text == "}":
            start = i + 1  # closes an extern "C" or namespace block
        elif t.kind == "punct" and t.text == "(":
            try:
                i = _match(tokens, i)
            except _SyntaxError as exc:
                raise ParseError(str(exc), file_path, exc.line) from None
        elif t.kind == "punct" and t.text == "{":
            header = tokens[start:i]
            if _is_linkage_block(header):
                start = i + 1
            else:
                close = _match_top(tokens, i, file_path)
                d = _function_header(tokens, start, i)
                if d is not None:
                    d.body_close = close
                    definitions.append(d)
                    ctx.functions.add(d.name)
                    start = close + 1
                elif header and header[-1].text == "enum" or (len(header) >= 2 and header[-2].text == "enum"):
                    ctx.enum_constants.update(_enum_names(tokens[i + 1 : close]))
                i = close
        i += 1

    functions: list[FunctionModel] = []
    seen: set[tuple[str, int]] = set()
    for d in definitions:
        first = tokens[d.start]
        last = tokens[d.body_close]
        key = (d.name, first.line)
        if key in seen:
            continue
        seen.add(key)
        try:
            params = _parse_parameters(d.params, ctx)
            body = _BodyParser(tokens[d.body_open + 1 : d.body_close], ctx, params)
            roots = body.parse()
        except _SyntaxError as exc:
            diag = RecoverySkipped(file_path, exc.line or first.line, d.name, str(exc))
            log.warning("%s", diag)
            if diagnostics is not None:
                diagnostics.append(diag)
            continue
        sloc = sum(has_code[first.line - 1 : last.line])
        functions.append(
            FunctionModel(
                id=FunctionId(file_path, d.name, first.line),
                parameters=tuple(p for p, _ in params),
                pointer_parameters=frozenset(p for p, ptr in params if ptr),
                control_roots=tuple(r.freeze() for r in roots),
                pointer_ops=tuple(body.pointer_ops),
                call_sites=tuple(body.calls),
                decision_points=body.decisions,
                sloc=max(sloc, 1),
            )
        )
    return functions


def _is_linkage_block(header: list[Token]) -> bool:
    if len(header) == 2 and header[0].text == "extern" and header[1].kind == "string":
        return True
    return bool(header) and header[0].text == "namespace" and len(header) <= 2


def _file_scope_declaration(tokens: list[Token], ctx: _FileContext) -> None:
    if not tokens or tokens[0].text in ("_Static_assert", "static_assert"):
        return
    try:
        decl = _parse_declaration(tokens, ctx)
    except _SyntaxError:
        return
    ctx.enum_constants.update(decl.enum_constants)
    for d in decl.declarators:
        if decl.is_typedef:
            ctx.typedefs.add(d.name)
        elif d.is_function:
            ctx.functions.add(d.name)
        else:
            ctx.globals[d.name] = d.pointer


def collect_predicate_variables(cs: ControlStructure) -> frozenset[str]:
    """Variables read by the condition of ``cs`` (all three clauses for ``for``)."""
    return cs.predicate_variables
