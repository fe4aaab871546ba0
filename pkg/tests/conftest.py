from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import settings, strategies as st

from partisan_symmetry.election import HALF, DistrictResult, Election

settings.register_profile("default", max_examples=150, deadline=None)
settings.load_profile("default")

FIXTURES = Path(__file__).resolve().parent.parent / "src" / "partisan_symmetry" / "fixtures"


@st.composite
def elections(draw, min_n=1, max_n=12, max_den=40):
    den = draw(st.integers(2, max_den))
    n = draw(st.integers(min_n, max_n))
    nums = draw(st.lists(st.integers(0, den), min_size=n, max_size=n))
    out = []
    for k in nums:
        share = Fraction(k, den)
        out.append(DistrictResult(share, draw(st.booleans()) if share == HALF else None))
    return Election(tuple(out))


@pytest.fixture
def fixtures_dir():
    return FIXTURES


# -- acceptance summary: one line per criterion -----------------------------------

_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion this test checks")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when not in ("setup", "call"):
        return
    if rep.when == "setup" and rep.passed:
        return
    number, title = mark.args
    detail = "; ".join(str(v) for k, v in item.user_properties if k == "detail")
    prev = _CRITERIA.get(number)
    ok = rep.passed and (prev is None or prev[0])
    _CRITERIA[number] = (ok, title, detail if prev is None else "; ".join(filter(None, (prev[2], detail))))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        ok, title, detail = _CRITERIA[number]
        line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {title}"
        if detail:
            line += f"  ({detail})"
        terminalreporter.write_line(line)
