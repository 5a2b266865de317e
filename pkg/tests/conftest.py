import time

import pytest

from dlq.rootsys import build_root_system, named_cartan

_ACCEPTANCE: dict = {}
_START = time.perf_counter()
SUITE_BUDGET = 120.0


def record(criterion: str, ok: bool, detail: str = "") -> None:
    _ACCEPTANCE.setdefault(criterion, []).append((ok, detail))


@pytest.fixture(scope="session")
def rs_of():
    cache = {}

    def get(label):
        if label not in cache:
            cache[label] = build_root_system(named_cartan(label))
        return cache[label]

    return get


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    elapsed = time.perf_counter() - _START
    if "criterion 8" in _ACCEPTANCE:
        record("criterion 8", elapsed < SUITE_BUDGET, f"whole suite took {elapsed:.1f}s")
    terminalreporter.section("acceptance criteria")
    for crit in sorted(_ACCEPTANCE, key=lambda c: int(c.split()[1].rstrip(":"))):
        runs = _ACCEPTANCE[crit]
        ok = all(r for r, _ in runs)
        failed = "; ".join(d for r, d in runs if not r)
        terminalreporter.write_line(f"{crit}: {'PASS' if ok else 'FAIL'}" + (f" ({failed})" if failed else ""))
