import pytest

_ACCEPTANCE: dict[int, tuple[str, bool, str]] = {}


def register_criterion(num: int, title: str, ok: bool, detail: str = "") -> None:
    _ACCEPTANCE[num] = (title, ok, detail)


@pytest.fixture
def criterion():
    return register_criterion


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_ACCEPTANCE):
        title, ok, detail = _ACCEPTANCE[num]
        line = f"criterion {num:02d}: {'PASS' if ok else 'FAIL'}  {title}"
        if detail:
            line += f"  [{detail}]"
        terminalreporter.write_line(line)
