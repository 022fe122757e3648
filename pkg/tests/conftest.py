import pytest

from qsl2.derham import complex_for
from qsl2.hodge import hodge_for
from qsl2.maxwell import maxwell_for

# criterion number -> (description, list of outcomes); filled by test_acceptance
ACCEPTANCE: dict[int, list] = {}


def record(n: int, title: str, ok: bool, detail: str = "") -> None:
    ACCEPTANCE.setdefault(n, [title, []])[1].append((ok, detail))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        title, outcomes = ACCEPTANCE[n]
        ok = all(o for o, _ in outcomes)
        details = "; ".join(d for _, d in outcomes if d)
        tr.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {title}"
                      + (f"  [{details}]" if details else ""))


@pytest.fixture(scope="session")
def cx3():
    return complex_for(3)


@pytest.fixture(scope="session")
def cx5():
    return complex_for(5)


@pytest.fixture(scope="session")
def h3():
    return hodge_for(3)


@pytest.fixture(scope="session")
def h5():
    return hodge_for(5)


@pytest.fixture(scope="session")
def max3():
    return maxwell_for(3)


@pytest.fixture(scope="session")
def max5():
    return maxwell_for(5)
