import time
from contextlib import contextmanager

RESULTS = []


@contextmanager
def criterion(label, limit=None):
    """Record one acceptance line: PASS only if the block succeeds within ``limit`` seconds."""
    started = time.perf_counter()
    try:
        yield
    except BaseException as exc:
        elapsed = time.perf_counter() - started
        line = f"FAIL {label} ({elapsed:.2f}s): {type(exc).__name__}: {str(exc).splitlines()[0] if str(exc) else ''}"
        RESULTS.append(line)
        print(line)
        raise
    elapsed = time.perf_counter() - started
    if limit is not None and elapsed >= limit:
        line = f"FAIL {label} ({elapsed:.2f}s, limit {limit}s)"
        RESULTS.append(line)
        print(line)
        raise AssertionError(line)
    line = f"PASS {label} ({elapsed:.2f}s)"
    RESULTS.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
