from fractions import Fraction

from hypothesis import strategies as st

from gwmajor.matrix import RationalMatrix

small_rationals = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 9))


@st.composite
def matrices(draw, rows=None, cols=None, max_dim=4):
    r = rows if rows is not None else draw(st.integers(1, max_dim))
    c = cols if cols is not None else draw(st.integers(1, max_dim))
    data = draw(st.lists(st.lists(small_rationals, min_size=c, max_size=c), min_size=r, max_size=r))
    return RationalMatrix(data, shape=(r, c))


@st.composite
def g_row_stochastic(draw, n):
    rows = []
    for _ in range(n):
        head = draw(st.lists(small_rationals, min_size=n - 1, max_size=n - 1))
        rows.append(head + [1 - sum(head, Fraction(0))])
    return RationalMatrix(rows, shape=(n, n))


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
