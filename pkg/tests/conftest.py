import pytest

ACCEPTANCE = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[ACCEPTANCE] = []


@pytest.fixture
def acceptance(request):
    """Record one PASS/FAIL line per acceptance criterion, then assert it."""

    def record(number, title, ok, detail="", elapsed=None, limit=None):
        timing = ""
        if elapsed is not None:
            timing = f" [{elapsed:.2f}s" + (f" < {limit}s" if limit else "") + "]"
            if limit is not None and elapsed >= limit:
                ok = False
                detail += f"; runtime {elapsed:.2f}s exceeds {limit}s"
        line = f"criterion {number} {'PASS' if ok else 'FAIL'}: {title}{timing} {detail}".rstrip()
        request.config.stash[ACCEPTANCE].append(line)
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
