import pytest

_RESULTS: list[tuple[int, bool, str]] = []


class _Recorder:
    def __call__(self, number: int, ok: bool, detail: str = "") -> bool:
        _RESULTS.append((number, bool(ok), detail))
        return ok


@pytest.fixture
def record():
    return _Recorder()


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, ok, detail in sorted(_RESULTS):
        line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}"
        terminalreporter.write_line(f"{line}  {detail}" if detail else line)
