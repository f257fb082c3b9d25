import re

import numpy as np
import pytest

_ACCEPTANCE = {}
_CRITERION_RE = re.compile(r"test_criterion_(\d+)")


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    match = _CRITERION_RE.search(item.name)
    if match is None or "test_acceptance" not in str(item.fspath):
        return
    num = int(match.group(1))
    label = (item.function.__doc__ or item.name).strip().splitlines()[0]
    # setup failures count as failures; a pass is only recorded on call
    if report.when == "call" or report.failed:
        passed = _ACCEPTANCE.get(num, (True, label))[0]
        _ACCEPTANCE[num] = (passed and report.passed, label)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_ACCEPTANCE):
        passed, label = _ACCEPTANCE[num]
        verdict = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"{verdict} criterion {num}: {label}")
