from pathlib import Path

import pytest

from gentle_deq import parse_presentation, parse_triangulation

DATA = Path(__file__).resolve().parents[1] / "data"

# lines reported by tests/test_acceptance.py, echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def load_alg(name: str):
    return parse_presentation((DATA / f"{name}.alg").read_text())


def load_tri(name: str):
    return parse_triangulation((DATA / f"{name}.tri").read_text())


@pytest.fixture(scope="session")
def gentle_corpus():
    from generators import corpus
    return corpus(200)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
