import os
from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

from qtorus.rings.laurent import MultiLaurent
from qtorus.torus import TorusElement

settings.register_profile("default", max_examples=100, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

coefficients = st.one_of(
    st.integers(-6, 6).filter(bool),
    st.fractions(min_value=-3, max_value=3, max_denominator=4).filter(bool),
)


def laurent(variables=("t", "M"), low=-3, high=3, max_terms=5):
    exps = st.tuples(*[st.integers(low, high) for _ in variables])
    return st.dictionaries(exps, coefficients, max_size=max_terms).map(lambda d: MultiLaurent(d, variables))


tm_laurent = laurent()
t_laurent = laurent(("t",), -4, 4)
integral_tm = st.dictionaries(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), st.integers(-5, 5).filter(bool),
                              max_size=5).map(lambda d: MultiLaurent(d, ("t", "M")))
nonneg_tm = st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)), st.integers(-5, 5).filter(bool),
                            max_size=4).map(lambda d: MultiLaurent(d, ("t", "M")))
torus = st.dictionaries(st.integers(-2, 2), laurent(max_terms=3), max_size=3).map(TorusElement)
half = Fraction(1, 2)


# -- acceptance criteria summary -------------------------------------------------------

CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): the test decides acceptance criterion n")


def pytest_runtest_logreport(report):
    mark = CRITERIA.get(report.nodeid)
    if mark is None:
        return
    if report.failed or (report.when == "call" and mark["status"] is None):
        mark["status"] = "FAIL" if report.failed else "PASS"


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m is not None:
            CRITERIA[item.nodeid] = {"n": m.args[0], "title": m.args[1], "status": None}


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for mark in sorted(CRITERIA.values(), key=lambda m: m["n"]):
        status = mark["status"] or "NOT RUN"
        terminalreporter.write_line(f"CRITERION {mark['n']:2}: {status} - {mark['title']}")
