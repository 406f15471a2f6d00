import re

import pytest
from hypothesis import strategies as st

from branchcover.laurent import LaurentPoly


@st.composite
def laurent_polys(draw, max_terms=6, min_exp=-4, max_exp=8, coeff=9, nonzero=False):
    n = draw(st.integers(1 if nonzero else 0, max_terms))
    exps = draw(st.lists(st.integers(min_exp, max_exp), min_size=n, max_size=n, unique=True))
    cs = draw(st.lists(st.integers(-coeff, coeff).filter(bool), min_size=n, max_size=n))
    return LaurentPoly(dict(zip(exps, cs)))


@st.composite
def ordinary_polys(draw, max_deg=8, coeff=9):
    cs = draw(st.lists(st.integers(-coeff, coeff), min_size=1, max_size=max_deg + 1))
    p = LaurentPoly.from_dense(cs)
    if not p:
        p = LaurentPoly.const(draw(st.integers(1, coeff)))
    return p


_ACCEPTANCE = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    m = re.search(r"test_criterion_(\d+\w*)", report.nodeid)
    if not m:
        return
    key = m.group(1)
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _ACCEPTANCE[key] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for key in sorted(_ACCEPTANCE, key=lambda k: (int(re.match(r"\d+", k).group()), k)):
        tr.write_line(f"criterion {key}: {'PASS' if _ACCEPTANCE[key] == 'passed' else 'FAIL'}")
    tr.write_line("criterion 7: excluded (existence/genericity theorems are not computable here)")
