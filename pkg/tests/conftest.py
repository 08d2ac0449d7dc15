from importlib.resources import files

import pytest

from causecov import kripke

DATA = files("causecov.data")


@pytest.fixture
def req_grant_path():
    return str(DATA / "req_grant.json")


@pytest.fixture
def path_path():
    return str(DATA / "until_path.json")


@pytest.fixture
def req_grant(req_grant_path):
    return kripke.load(req_grant_path)


@pytest.fixture
def until_path(path_path):
    return kripke.load(path_path)


# --- acceptance summary ---------------------------------------------------------

import re  # noqa: E402

_CRITERIA: dict[int, list[str]] = {}
_CRITERION = re.compile(r"test_acceptance\.py::test_criterion_(\d+)_")


def pytest_runtest_logreport(report):
    m = _CRITERION.search(report.nodeid)
    if not m:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _CRITERIA.setdefault(int(m.group(1)), []).append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        outcomes = _CRITERIA[n]
        ok = all(o == "passed" for o in outcomes)
        detail = f" ({outcomes.count('passed')}/{len(outcomes)} cases)" if len(outcomes) > 1 else ""
        tr.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}{detail}")
    if {4, 7} <= set(_CRITERIA):
        ok = all(o == "passed" for n in (4, 7) for o in _CRITERIA[n])
        tr.write_line(f"criterion 9: {'PASS' if ok else 'FAIL'} (oracle bound of 4, reduction of 7)")
