import pytest

from zetaforms.saddle import find_saddle

_ACCEPTANCE = []


@pytest.fixture(scope="session")
def saddle20():
    return find_saddle(20, 50)


@pytest.fixture
def acceptance_line():
    """Record one PASS/FAIL line for the terminal summary, then let the test assert."""

    def record(criterion: int, ok: bool, detail: str = "") -> bool:
        _ACCEPTANCE.append((criterion, bool(ok), detail))
        print(f"criterion {criterion}: {'PASS' if ok else 'FAIL'} {detail}")
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, ok, detail in sorted(_ACCEPTANCE, key=lambda r: r[0]):
        terminalreporter.write_line(f"criterion {criterion:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
