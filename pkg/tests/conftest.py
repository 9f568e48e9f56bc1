import pytest
from hypothesis import strategies as st

from qpartlab.series import QSeries, ZPoly

_acceptance_lines: list[str] = []


@pytest.fixture
def record_criterion():
    """Collect one summary line per acceptance criterion."""

    def record(name: str, ok: bool, detail: str = ""):
        _acceptance_lines.append(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}".rstrip())
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)


def truncated(full: QSeries, valid_to: int) -> QSeries:
    return full.truncate(valid_to)


@st.composite
def zpolys(draw, max_deg=2, bound=4):
    return ZPoly(tuple(draw(st.lists(st.integers(-bound, bound), max_size=max_deg + 1))))


@st.composite
def qseries(draw, min_lo=-3, min_hi=3, max_len=7, z_deg=2):
    lo = draw(st.integers(min_lo, min_hi))
    coeffs = draw(st.lists(zpolys(max_deg=z_deg), max_size=max_len))
    pad = draw(st.integers(0, 3))
    return QSeries(coeffs, lo, lo + len(coeffs) - 1 + pad)


@st.composite
def units(draw, max_len=6):
    lead = draw(st.sampled_from([1, -1]))
    rest = draw(st.lists(zpolys(max_deg=1, bound=3), max_size=max_len))
    pad = draw(st.integers(0, 4))
    return QSeries([lead] + rest, 0, len(rest) + pad)
