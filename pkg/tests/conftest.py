import contextlib

import pytest

_ACCEPTANCE_KEY = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_ACCEPTANCE_KEY] = []


@pytest.fixture
def acceptance(request):
    """Context manager recording one PASS/FAIL line per acceptance criterion."""
    lines = request.config.stash[_ACCEPTANCE_KEY]

    @contextlib.contextmanager
    def record(label):
        try:
            yield
        except BaseException as exc:
            lines.append(f"FAIL  {label}  ({type(exc).__name__}: {str(exc).splitlines()[0] if str(exc) else ''})")
            raise
        lines.append(f"PASS  {label}")

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_ACCEPTANCE_KEY, [])
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for line in lines:
        terminalreporter.write_line(line)
