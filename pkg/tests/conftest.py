import pytest

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def criterion(request):
    """Time a criterion body, enforce its runtime limit and log one status line."""
    import time
    from contextlib import contextmanager

    @contextmanager
    def run(number, title, limit_s):
        start = time.perf_counter()
        status = "FAIL"
        try:
            yield
            elapsed = time.perf_counter() - start
            assert elapsed < limit_s, f"runtime {elapsed:.2f} s exceeds {limit_s} s"
            status = "PASS"
        finally:
            elapsed = time.perf_counter() - start
            ACCEPTANCE_LINES.append(f"{status}  [{number:2d}] {title}  ({elapsed:.2f} s / limit {limit_s} s)")

    return run
