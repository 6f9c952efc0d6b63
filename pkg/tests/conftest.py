import re

import pytest

from symcrit.fixtures import load_curve


@pytest.fixture
def curve():
    return load_curve


# ---------------------------------------------------------------- acceptance summary

ACCEPTANCE = {
    1: "triple table regression",
    2: "Diophantine residual scans",
    3: "oracle agrees with the good-reduction criterion",
    4: "existence gate over cyclic subgroups",
    5: "Frobenius identities",
    6: "class polynomials",
    7: "Weil pairing properties",
    8: "hyperelliptic parity chains",
}
_results: dict = {}
_pat = re.compile(r"test_acceptance\.py::test_criterion_(\d+)")


def pytest_runtest_logreport(report):
    m = _pat.search(report.nodeid)
    if not m:
        return
    n = int(m.group(1))
    status = _results.setdefault(n, [])
    if report.failed:
        status.append("fail")
    elif report.when == "call" or report.skipped:
        if hasattr(report, "wasxfail"):
            status.append("xfail")
        elif report.skipped:
            status.append("skip")
        else:
            status.append("pass")


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        got = _results.get(n)
        if not got:
            continue
        ok = all(s == "pass" for s in got)
        note = ""
        if "xfail" in got:
            note = "  (part of the criterion is a known, documented failure)"
        tr.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {ACCEPTANCE[n]}{note}")
