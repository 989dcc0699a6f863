import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from mixlab.graph import even_subgraph_corpus  # noqa: E402

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def corpus6():
    """Connected even-degree spanning subgraphs of K6 (full enumeration)."""
    return list(even_subgraph_corpus(6, connected_only=True))


@pytest.fixture(scope="session")
def corpus_upto7():
    return [g for n in range(3, 8) for g in even_subgraph_corpus(n, connected_only=True)]


@pytest.fixture(scope="session")
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
