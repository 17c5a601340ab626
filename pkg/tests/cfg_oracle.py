"""Random structured C functions plus an independent CFG builder for them.

The generator keeps its own statement tree, renders it to C, and builds the
control-flow graph straight from that tree, so cyclomatic complexity computed
as E - N + 2 never goes through the package's parser.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

VARS = ("a", "b", "c", "d")


@dataclass
class Atom:
    text: str


@dataclass
class And:
    left: object
    right: object


@dataclass
class Or:
    left: object
    right: object


@dataclass
class Stmt:
    kind: str  # assign, ternary, if, while, for, do, switch
    cond: object = None
    body: list = field(default_factory=list)
    orelse: list | None = None
    cases: list[list] = field(default_factory=list)
    has_default: bool = False


def render_cond(c) -> str:
    if isinstance(c, Atom):
        return c.text
    op = "&&" if isinstance(c, And) else "||"
    return f"({render_cond(c.left)} {op} {render_cond(c.right)})"


def render(stmts: list, indent: int = 1) -> list[str]:
    pad = "    " * indent
    out: list[str] = []
    for s in stmts:
        if s.kind == "assign":
            out.append(f"{pad}x = x + 1;")
        elif s.kind == "ternary":
            out.append(f"{pad}x = {render_cond(s.cond)} ? x : 0;")
        elif s.kind == "if":
            out.append(f"{pad}if ({render_cond(s.cond)}) {{")
            out += render(s.body, indent + 1)
            if s.orelse is not None:
                out.append(f"{pad}}} else {{")
                out += render(s.orelse, indent + 1)
            out.append(f"{pad}}}")
        elif s.kind == "while":
            out.append(f"{pad}while ({render_cond(s.cond)}) {{")
            out += render(s.body, indent + 1)
            out.append(f"{pad}}}")
        elif s.kind == "for":
            out.append(f"{pad}for (a = 0; {render_cond(s.cond)}; a++) {{")
            out += render(s.body, indent + 1)
            out.append(f"{pad}}}")
        elif s.kind == "do":
            out.append(f"{pad}do {{")
            out += render(s.body, indent + 1)
            out.append(f"{pad}}} while ({render_cond(s.cond)});")
        elif s.kind == "switch":
            out.append(f"{pad}switch (x) {{")
            for i, body in enumerate(s.cases):
                out.append(f"{pad}case {i}:")
                out += render(body, indent + 1)
                out.append(f"{pad}    break;")
            if s.has_default:
                out.append(f"{pad}default:")
                out.append(f"{pad}    break;")
            out.append(f"{pad}}}")
    return out


def render_function(name: str, stmts: list) -> str:
    lines = [f"int {name}(int a, int b, int c, int d) {{", "    int x = 0;"]
    lines += render(stmts)
    lines += ["    return x;", "}", ""]
    return "\n".join(lines)


class Generator:
    def __init__(self, seed: int) -> None:
        self.rng = random.Random(seed)

    def cond(self, depth: int = 0):
        r = self.rng.random()
        if depth < 2 and r < 0.35:
            cls = And if self.rng.random() < 0.5 else Or
            return cls(self.cond(depth + 1), self.cond(depth + 1))
        v = self.rng.choice(VARS)
        return Atom(f"{v} < {self.rng.randint(0, 9)}")

    def block(self, depth: int) -> list:
        return [self.stmt(depth) for _ in range(self.rng.randint(0, 3))]

    def stmt(self, depth: int) -> Stmt:
        kinds = ["assign", "ternary"]
        if depth < 3:
            kinds += ["if", "if", "while", "for", "do", "switch"]
        kind = self.rng.choice(kinds)
        if kind == "assign":
            return Stmt("assign")
        if kind == "switch":
            n = self.rng.randint(1, 3)
            return Stmt("switch", cases=[self.block(depth + 1) for _ in range(n)], has_default=self.rng.random() < 0.5)
        s = Stmt(kind, cond=self.cond())
        if kind == "if":
            s.body = self.block(depth + 1)
            if self.rng.random() < 0.5:
                s.orelse = self.block(depth + 1)
        elif kind != "ternary":
            s.body = self.block(depth + 1)
        return s

    def function(self) -> list:
        return [self.stmt(0) for _ in range(self.rng.randint(1, 4))]


class CFG:
    def __init__(self) -> None:
        self.nodes = 0
        self.edges: list[tuple[int, int]] = []

    def new(self) -> int:
        self.nodes += 1
        return self.nodes - 1

    def edge(self, a: int, b: int) -> None:
        self.edges.append((a, b))

    def cond(self, c, pred: int) -> tuple[int, int]:
        if isinstance(c, Atom):
            n, t, f = self.new(), self.new(), self.new()
            self.edge(pred, n)
            self.edge(n, t)
            self.edge(n, f)
            return t, f
        lt, lf = self.cond(c.left, pred)
        if isinstance(c, And):
            rt, rf = self.cond(c.right, lt)
            f = self.new()
            self.edge(lf, f)
            self.edge(rf, f)
            return rt, f
        rt, rf = self.cond(c.right, lf)
        t = self.new()
        self.edge(lt, t)
        self.edge(rt, t)
        return t, rf

    def block(self, stmts: list, pred: int) -> int:
        for s in stmts:
            pred = self.stmt(s, pred)
        return pred

    def stmt(self, s: Stmt, pred: int) -> int:
        if s.kind == "assign":
            n = self.new()
            self.edge(pred, n)
            return n
        if s.kind == "ternary":
            t, f = self.cond(s.cond, pred)
            j = self.new()
            self.edge(t, j)
            self.edge(f, j)
            return j
        if s.kind == "if":
            t, f = self.cond(s.cond, pred)
            te = self.block(s.body, t)
            fe = self.block(s.orelse or [], f)
            j = self.new()
            self.edge(te, j)
            self.edge(fe, j)
            return j
        if s.kind == "while":
            h = self.new()
            self.edge(pred, h)
            t, f = self.cond(s.cond, h)
            self.edge(self.block(s.body, t), h)
            return f
        if s.kind == "for":
            init, h, step = self.new(), self.new(), self.new()
            self.edge(pred, init)
            self.edge(init, h)
            t, f = self.cond(s.cond, h)
            self.edge(self.block(s.body, t), step)
            self.edge(step, h)
            return f
        if s.kind == "do":
            h = self.new()
            self.edge(pred, h)
            t, f = self.cond(s.cond, self.block(s.body, h))
            self.edge(t, h)
            return f
        if s.kind == "switch":
            head, join = self.new(), self.new()
            self.edge(pred, head)
            for body in s.cases:
                c = self.new()
                self.edge(head, c)
                self.edge(self.block(body, c), join)
            if s.has_default:
                d = self.new()
                self.edge(head, d)
                self.edge(d, join)
            else:
                self.edge(head, join)
            return join
        raise ValueError(s.kind)


def cyclomatic_by_cfg(stmts: list) -> int:
    g = CFG()
    entry = g.new()
    exit_ = g.new()
    g.edge(g.block(stmts, entry), exit_)
    return len(g.edges) - g.nodes + 2


def generated_cases(count: int, seed: int = 0) -> list[tuple[str, int]]:
    """(C source, oracle cyclomatic complexity) pairs."""
    cases = []
    for i in range(count):
        stmts = Generator(seed * 100_003 + i).function()
        cases.append((render_function(f"gen{i}", stmts), cyclomatic_by_cfg(stmts)))
    return cases
