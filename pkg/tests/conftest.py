import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from medianswf.relations import GroundSet, Profile, parse_preorder  # noqa: E402


@pytest.fixture(scope="session")
def g3():
    return GroundSet.parse("a,b,c")


@pytest.fixture(scope="session")
def g4():
    return GroundSet.parse("a,b,c,d")


@pytest.fixture
def pre(g3):
    return lambda text: parse_preorder(text, g3)


@pytest.fixture
def prof(g3):
    return lambda *texts: Profile.parse(texts, g3)


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def criterion():
    """Record one PASS/FAIL line per acceptance criterion and print it."""

    def report(number, ok, message):
        line = f"CRITERION {number:>2} {'PASS' if ok else 'FAIL'}: {message}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
