import pytest

from affine_heaps.series import TruncatedSeries


def poly(terms, trunc):
    """Build a series from ``{(dx, dy, dq): coef}``."""
    return TruncatedSeries(terms, trunc)


@pytest.fixture
def t3():
    return (3, 3, 3)


def pytest_terminal_summary(terminalreporter):
    """Echo one line per acceptance criterion at the end of the run."""
    from test_acceptance import CRITERIA, _results

    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for index, name in enumerate(CRITERIA, 1):
        if name in _results:
            terminalreporter.write_line(f"{'PASS' if _results[name] else 'FAIL'} {index:2d} {name}")
