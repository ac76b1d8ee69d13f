import pytest

from freewidth.instances import STANDARD

# criterion id -> (passed, detail); filled by tests/test_acceptance.py
ACCEPTANCE: dict[str, tuple[bool, str]] = {}


@pytest.fixture(scope="session")
def inst():
    """All standard instances, built once."""
    return {name: build() for name, build in STANDARD.items()}


def _order_key(cid: str):
    digits = "".join(ch for ch in cid if ch.isdigit())
    return int(digits), cid


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for cid in sorted(ACCEPTANCE, key=_order_key):
        ok, detail = ACCEPTANCE[cid]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {cid}: {detail}")
