import sys
from contextlib import contextmanager
from pathlib import Path
from time import perf_counter

import pytest
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

_ACCEPTANCE = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_ACCEPTANCE] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)


@pytest.fixture
def criterion(request):
    """Context manager that times a block, records one PASS/FAIL line and enforces the runtime limit.

    The block receives a list to which it appends short detail strings.
    """
    lines = request.config.stash[_ACCEPTANCE]

    @contextmanager
    def run(number, title, limit_seconds):
        details = []
        start = perf_counter()
        status, error = "FAIL", None
        try:
            yield details
            status = "PASS"
        except AssertionError as exc:
            error = exc
            details.append(str(exc).splitlines()[0] if str(exc) else "assertion failed")
        elapsed = perf_counter() - start
        if status == "PASS" and elapsed >= limit_seconds:
            status = "FAIL"
            details.append(f"runtime {elapsed:.2f}s over the {limit_seconds}s limit")
        line = f"CRITERION {number}: {status} {title} ({elapsed:.2f}s)"
        if details:
            line += " | " + "; ".join(details)
        lines.append(line)
        print(line)
        if error is not None:
            raise error
        assert status == "PASS", line

    return run
