from __future__ import annotations

from hypothesis import strategies as st

from bowvar.brane import BraneDiagram, BraneKind, parse_diagram
from bowvar.charring import Weight
from bowvar.fixedpoints import Bct, coverage

# Running example: 6 NS5 and 5 D5 branes, with the fixed point drawn as a tie diagram.
RUNNING = parse_diagram("/2\\2/2\\4/3/3/4\\3/2\\2\\")
RUNNING_TABLE = Bct.from_rows(
    [
        (1, 1, 0, 0, 0),
        (1, 0, 0, 0, 0),
        (0, 0, 1, 0, 0),
        (1, 0, 1, 0, 0),
        (1, 1, 0, 0, 1),
        (1, 0, 0, 0, 1),
    ]
)
RUNNING_TIES = frozenset(
    {(3, 1), (3, 2), (4, 2), (6, 2), (6, 3), (1, 1), (1, 2), (3, 3), (4, 3), (5, 5), (6, 5)}
)
FIVE_BY_TWO = parse_diagram("/1/2/3/4/5\\2\\")
THREE_BY_THREE = parse_diagram("/2/3/5\\3\\2\\")


def mono(m: int, h: int = 0, **u: int) -> Weight:
    """``mono(5, 4, u2=1, u5=-1)`` is ``u2 h^4 / u5``."""
    exps = [0] * m
    for name, e in u.items():
        exps[int(name[1:]) - 1] += e
    return Weight(tuple(exps), h)


@st.composite
def tables(draw, max_rows: int = 4, max_cols: int = 4) -> Bct:
    n = draw(st.integers(1, max_rows))
    m = draw(st.integers(1, max_cols))
    bits = draw(st.lists(st.lists(st.integers(0, 1), min_size=m, max_size=m), min_size=n, max_size=n))
    return Bct.from_rows(bits, m)


@st.composite
def diagram_with_table(draw, max_rows: int = 4, max_cols: int = 4) -> tuple[BraneDiagram, Bct]:
    """A brane order together with a table; multiplicities come from the induced ties."""
    b = draw(tables(max_rows, max_cols))
    kinds = draw(st.permutations([BraneKind.NS5] * b.rows + [BraneKind.D5] * b.cols))
    bare = BraneDiagram(tuple(kinds), (0,) * (len(kinds) - 1))
    ns5, d5 = bare.ns5_positions(), bare.d5_positions()
    ties = frozenset(
        (i, j)
        for i in range(1, b.rows + 1)
        for j in range(1, b.cols + 1)
        if b.entry(i, j) == int(ns5[i - 1] < d5[j - 1])
    )
    cov = coverage(bare, ties)
    return BraneDiagram(tuple(kinds), tuple(cov[1 : len(kinds)])), b


def diagrams(max_rows: int = 4, max_cols: int = 4):
    return diagram_with_table(max_rows, max_cols).map(lambda pair: pair[0])
