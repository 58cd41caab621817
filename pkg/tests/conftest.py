import pytest

# criterion id -> (status, detail); filled by test_acceptance
ACCEPTANCE: dict[int, tuple[str, str]] = {}


@pytest.fixture
def record():
    def put(criterion: int, ok: bool, detail: str = "", status: str | None = None):
        ACCEPTANCE[criterion] = (status or ("PASS" if ok else "FAIL"), detail)
    return put


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for c in sorted(ACCEPTANCE):
        status, detail = ACCEPTANCE[c]
        terminalreporter.write_line(f"criterion {c}: {status}  {detail}".rstrip())
