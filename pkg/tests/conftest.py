from __future__ import annotations

from pathlib import Path

import pytest

from vulnrank.frontend import FunctionModel, parse_translation_unit

FIXTURES = Path(__file__).parent / "fixtures"

FIBONACCI = """\
void fibonacci(int *res, int n) {
	if (n <= 0) {
		return;
	}
	res[0] = 0;
	res[1] = 1;
	if (n > 1) {
		if (n == 3) {
			res[2] = 1;
			return;
		}
		for(int i = 2; i <= n; i++) {
			res[i] = res[i-1] + res[i-2];
		}
	}
}
"""

TRIPLE_LOOP = """\
void triple(int n) {
    int s = 0;
    for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++)
            for (int k = 0; k < n; k++)
                s++;
}
"""


def parse_one(source: str, path: str = "t.c") -> FunctionModel:
    models = parse_translation_unit(source, path)
    assert len(models) == 1, models
    return models[0]


@pytest.fixture
def fib() -> FunctionModel:
    return parse_one(FIBONACCI, "fib.c")


def write_tree(root: Path, files: dict[str, str]) -> Path:
    for rel, text in files.items():
        p = root / rel
        p.parent.mkdir(parents=True, exist_ok=True)
        p.write_text(text)
    return root


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
