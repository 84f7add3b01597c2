import pytest

from ellipcheck import catalog

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def default_run():
    """One timed verify_all over the default grid, shared across test modules."""
    return catalog.verify_all()


@pytest.fixture
def criterion():
    """Record one pass/fail line per acceptance criterion; lines are echoed in the summary."""

    def record(number: int, title: str, ok: bool, detail: str = ""):
        line = f"criterion {number:>2} {'PASS' if ok else 'FAIL'}: {title}" + (f" ({detail})" if detail else "")
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
