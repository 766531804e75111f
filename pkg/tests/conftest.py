from __future__ import annotations

import pytest

from moufang.algebras import octonions, quaternions, sedenions, split_octonions
from moufang.triality import pair_from_alternative
from moufang.yamaguti import check_equivalence_corpus, equivalence_corpus

_acceptance: dict[str, str] = {}


@pytest.fixture(scope="session")
def octo():
    return octonions()


@pytest.fixture(scope="session")
def quat():
    return quaternions()


@pytest.fixture(scope="session")
def sed():
    return sedenions()


@pytest.fixture(scope="session")
def octo_pair(octo):
    return pair_from_alternative(octo)


@pytest.fixture(scope="session")
def quat_pair(quat):
    return pair_from_alternative(quat)


@pytest.fixture(scope="session")
def sed_pair(sed):
    return pair_from_alternative(sed)


@pytest.fixture(scope="session")
def split_pair():
    return pair_from_alternative(split_octonions())


@pytest.fixture(scope="session")
def corpus():
    return equivalence_corpus()


@pytest.fixture(scope="session")
def corpus_report(corpus):
    return check_equivalence_corpus(corpus)


def pytest_runtest_logreport(report):
    if "test_acceptance.py" in report.nodeid and report.when == "call":
        _acceptance[report.nodeid.split("::")[-1]] = report.outcome
    elif "test_acceptance.py" in report.nodeid and report.failed:
        _acceptance[report.nodeid.split("::")[-1]] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_acceptance):
        verdict = "PASS" if _acceptance[name] == "passed" else "FAIL"
        terminalreporter.write_line(f"{verdict}  {name}")
