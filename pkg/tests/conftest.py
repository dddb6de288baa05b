import pytest

# criterion number -> (passed, summary line); filled by test_acceptance.py
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, line = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {line}")


@pytest.fixture
def record_criterion():
    def record(k, ok, line):
        ACCEPTANCE[k] = (bool(ok), line)
        print(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {line}")
        return ok
    return record
