import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

DATA = Path(__file__).parent / "data"

_criteria: dict[int, tuple[str, str]] = {}


@pytest.fixture
def data_dir() -> Path:
    return DATA


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    number = getattr(item.function, "criterion", None)
    if number is None:
        return
    if report.when == "call" or (report.when == "setup" and report.failed):
        label = (item.function.__doc__ or item.name).strip().splitlines()[0]
        status = "PASS" if report.passed else "FAIL"
        if number not in _criteria or status == "FAIL":
            _criteria[number] = (status, label)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        status, label = _criteria[number]
        terminalreporter.write_line(f"criterion {number:2d}: {status}  {label}")
