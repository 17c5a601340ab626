from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vulnrank.complexity import ComplexityVector, complexity_vector, cyclomatic_complexity, loop_metrics

from .cfg_oracle import Generator, generated_cases, render, render_function
from .conftest import TRIPLE_LOOP, parse_one


def test_fibonacci(fib):
    assert cyclomatic_complexity(fib) == 5
    assert loop_metrics(fib) == (1, 0, 1)
    cv = complexity_vector(fib)
    assert cv == ComplexityVector(5, 1, 0, 1)
    assert cv.score == 7


def test_empty_function():
    fm = parse_one("void f(void){}")
    assert cyclomatic_complexity(fm) == 1
    assert loop_metrics(fm) == (0, 0, 0)
    assert complexity_vector(fm).score == 1


def test_short_circuit_condition():
    assert cyclomatic_complexity(parse_one("void f(int a, int b) { if (a && b) {} }")) == 3


def test_triple_nested_loop():
    fm = parse_one(TRIPLE_LOOP)
    assert loop_metrics(fm) == (3, 3, 3)
    cv = complexity_vector(fm)
    assert (cv.c1_cyclomatic, cv.score) == (4, 13)


def test_nested_loop_pairs_skip_non_loop_levels():
    src = """
    void f(int n) {
        while (n) {
            if (n > 2) {
                for (;n;) { n--; }
                do { n--; } while (n);
            }
            n--;
        }
        for (;n;) {}
    }
    """
    # pairs: (while, for), (while, do); deepest path holds 2 loops
    assert loop_metrics(parse_one(src)) == (4, 2, 2)


@pytest.mark.parametrize("src, expected", generated_cases(60, seed=7))
def test_cyclomatic_matches_cfg_oracle(src, expected):
    assert cyclomatic_complexity(parse_one(src)) == expected


def _vector_invariants(cv: ComplexityVector) -> None:
    assert cv.c1_cyclomatic >= 1
    if cv.c2_loops <= 1:
        assert cv.c3_nested_loop_pairs == 0
    assert cv.c4_max_loop_nesting <= cv.c2_loops
    assert (cv.c4_max_loop_nesting == 0) == (cv.c2_loops == 0)
    assert cv.score == cv.c1_cyclomatic + cv.c2_loops + cv.c3_nested_loop_pairs + cv.c4_max_loop_nesting


@settings(max_examples=200, deadline=None)
@given(st.integers(min_value=0, max_value=10**6))
def test_vector_invariants(seed):
    _vector_invariants(complexity_vector(parse_one(render_function("g", Generator(seed).function()))))


@settings(max_examples=100, deadline=None)
@given(st.integers(min_value=0, max_value=10**6))
def test_plain_statement_leaves_vector_unchanged(seed):
    stmts = Generator(seed).function()
    base = render_function("g", stmts)
    extra = base.replace("    return x;", "    x = a + b;\n    foo(x);\n    return x;")
    assert complexity_vector(parse_one(base)) == complexity_vector(parse_one(extra))


@settings(max_examples=100, deadline=None)
@given(st.integers(min_value=0, max_value=10**6))
def test_wrapping_body_in_loop(seed):
    stmts = Generator(seed).function()
    body = "\n".join(render(stmts, 2))
    plain = f"int g(int a, int b, int c, int d) {{\n    int x = 0;\n{body}\n    return x;\n}}\n"
    wrapped = f"int g(int a, int b, int c, int d) {{\n    int x = 0;\n    while (a) {{\n{body}\n    }}\n    return x;\n}}\n"
    before = complexity_vector(parse_one(plain))
    after = complexity_vector(parse_one(wrapped))
    assert after.c2_loops == before.c2_loops + 1
    assert after.c4_max_loop_nesting == before.c4_max_loop_nesting + 1
