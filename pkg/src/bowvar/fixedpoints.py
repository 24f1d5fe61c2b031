"""Torus fixed points as binary contingency tables (BCTs) and their other codes.

Row ``i`` of a table belongs to the NS5 brane ``V_i`` and column ``j`` to the
D5 brane ``U_j``; indices exposed to users are 1-based.  Fixed points are
listed in ascending lexicographic order of the row-major flattening and the
1-based position in that list is the canonical fixed-point index.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Iterator, Sequence

from .brane import BraneDiagram, BraneKind, Margins, charges, hw_step
from .errors import InvalidTies, MarginMismatch, UnknownFixedPoint

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Bct:
    rows: int
    cols: int
    bits: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        bits = tuple(tuple(int(x) for x in row) for row in self.bits)
        object.__setattr__(self, "bits", bits)
        if len(bits) != self.rows or any(len(row) != self.cols for row in bits):
            raise ValueError(f"bits do not form a {self.rows}x{self.cols} matrix")
        if any(x not in (0, 1) for row in bits for x in row):
            raise ValueError("a BCT has 0/1 entries only")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> Bct:
        rows = [tuple(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, tuple(rows))

    @cached_property
    def margins(self) -> Margins:
        r = tuple(sum(row) for row in self.bits)
        c = tuple(sum(row[j] for row in self.bits) for j in range(self.cols))
        return Margins(r, c)

    def entry(self, i: int, j: int) -> int:
        """``M_ij`` with 1-based indices."""
        return self.bits[i - 1][j - 1]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j - 1] for row in self.bits)

    def flat(self) -> tuple[int, ...]:
        return tuple(x for row in self.bits for x in row)

    def with_columns(self, j1: int, j2: int, rows: range) -> Bct:
        """Swap columns ``j1`` and ``j2`` on the given 1-based rows."""
        bits = [list(row) for row in self.bits]
        for i in rows:
            row = bits[i - 1]
            row[j1 - 1], row[j2 - 1] = row[j2 - 1], row[j1 - 1]
        return Bct(self.rows, self.cols, tuple(tuple(r) for r in bits))

    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols, "bits": [list(r) for r in self.bits]}

    @classmethod
    def from_json(cls, data: dict) -> Bct:
        return cls(int(data["rows"]), int(data["cols"]), tuple(tuple(r) for r in data["bits"]))

    def __str__(self) -> str:
        return "\n".join(" ".join(str(x) for x in row) for row in self.bits)


def conjugate(parts: Sequence[int], length: int) -> list[int]:
    """Conjugate of a composition, truncated or padded to ``length`` entries."""
    return [sum(1 for p in parts if p > k) for k in range(length)]


def gale_ryser(r: Sequence[int], c: Sequence[int]) -> bool:
    """Whether some 0/1 matrix has row sums ``r`` and column sums ``c``."""
    n, m = len(r), len(c)
    if any(x < 0 or x > m for x in r) or any(x < 0 or x > n for x in c):
        return False
    if sum(r) != sum(c):
        return False
    cs = sorted(c, reverse=True)
    rc = conjugate(r, m)
    lhs = rhs = 0
    for k in range(m):
        lhs += cs[k]
        rhs += rc[k]
        if lhs > rhs:
            return False
    return True


def margin_diagnostic(margins: Margins) -> str | None:
    """Why a margin pair has no tables, or ``None`` when tables exist."""
    r, c = margins.r, margins.c
    for i, x in enumerate(r, start=1):
        if x < 0 or x > len(c):
            return f"NegativeMargin: r_{i} = {x} is outside [0, {len(c)}]"
    for j, x in enumerate(c, start=1):
        if x < 0 or x > len(r):
            return f"NegativeMargin: c_{j} = {x} is outside [0, {len(r)}]"
    if sum(r) != sum(c):
        return f"NegativeMargin: sum(r) = {sum(r)} differs from sum(c) = {sum(c)}"
    if not gale_ryser(r, c):
        return "NegativeMargin: margins fail the Gale-Ryser condition"
    return None


@lru_cache(maxsize=None)
def _rows_with_ones(m: int, k: int) -> tuple[tuple[int, ...], ...]:
    rows = []
    for ones in combinations(range(m), k):
        row = [0] * m
        for j in ones:
            row[j] = 1
        rows.append(tuple(row))
    return tuple(sorted(rows))


def iter_bcts(margins: Margins) -> Iterator[Bct]:
    """All tables with the given margins, in canonical order."""
    r, c = margins.r, margins.c
    n, m = len(r), len(c)
    if margin_diagnostic(margins) is not None:
        return
    chosen: list[tuple[int, ...]] = []

    def rec(i: int, remaining: tuple[int, ...]) -> Iterator[Bct]:
        if i == n:
            if not any(remaining):
                yield Bct(n, m, tuple(chosen))
            return
        for row in _rows_with_ones(m, r[i]):
            rest = tuple(x - y for x, y in zip(remaining, row))
            if min(rest, default=0) < 0:
                continue
            if not gale_ryser(r[i + 1 :], rest):
                continue
            chosen.append(row)
            yield from rec(i + 1, rest)
            chosen.pop()

    yield from rec(0, tuple(c))


def enumerate_fixed_points(d: BraneDiagram) -> list[Bct]:
    margins = charges(d)
    problem = margin_diagnostic(margins)
    if problem is not None:
        log.warning("%s has no fixed points: %s", d, problem)
        return []
    return list(iter_bcts(margins))


class FixedPointIndex:
    """Lookup between tables and their canonical 1-based indices."""

    def __init__(self, bcts: Sequence[Bct]):
        self.bcts = list(bcts)
        self._pos = {b.bits: k for k, b in enumerate(self.bcts, start=1)}

    def __len__(self) -> int:
        return len(self.bcts)

    def __iter__(self):
        return iter(self.bcts)

    def index(self, b: Bct) -> int:
        try:
            return self._pos[b.bits]
        except KeyError:
            raise UnknownFixedPoint("table is not a fixed point of this diagram") from None

    def get(self, k: int) -> Bct:
        if not 1 <= k <= len(self.bcts):
            raise UnknownFixedPoint(f"fixed point {k} out of range 1..{len(self.bcts)}")
        return self.bcts[k - 1]

    def contains(self, b: Bct) -> bool:
        return b.bits in self._pos

    def by_label(self, label: str) -> int:
        for k, b in enumerate(self.bcts, start=1):
            if subset_label(b) == label:
                return k
        raise UnknownFixedPoint(f"no fixed point carries the label {label!r}")


def subset_label(b: Bct) -> str | None:
    """Subset alias such as ``"13"`` when rows have one 1 each and there are two columns.

    The alias lists the rows whose 1 sits in the second column.
    """
    if b.cols != 2 or any(sum(row) != 1 for row in b.bits):
        return None
    return "".join(str(i) for i, row in enumerate(b.bits, start=1) if row[1])


# --- tie diagrams ---------------------------------------------------------------


@dataclass(frozen=True)
class TieDiagram:
    diagram: BraneDiagram
    ties: frozenset[tuple[int, int]]

    def ties_at_d5(self, j: int) -> list[int]:
        return sorted(i for i, jj in self.ties if jj == j)

    def to_json(self) -> dict:
        return {"diagram": str(self.diagram), "ties": [list(t) for t in sorted(self.ties)]}


@dataclass(frozen=True)
class TableWithMargins:
    bct: Bct
    separating_line: tuple[str, ...]

    def to_json(self) -> dict:
        return {**self.bct.to_json(), "line": "".join(self.separating_line)}


def _brane_positions(d: BraneDiagram) -> tuple[list[int], list[int]]:
    return d.ns5_positions(), d.d5_positions()


def tie_span(d: BraneDiagram, i: int, j: int) -> range:
    """Segments ``X_k`` (0-based ``k``) strictly between ``V_i`` and ``U_j``."""
    ns5, d5 = _brane_positions(d)
    a, b = ns5[i - 1], d5[j - 1]
    lo, hi = min(a, b), max(a, b)
    return range(lo + 1, hi + 1)


def coverage(d: BraneDiagram, ties: frozenset[tuple[int, int]]) -> list[int]:
    cov = [0] * (len(d.branes) + 1)
    for i, j in ties:
        for k in tie_span(d, i, j):
            cov[k] += 1
    return cov


def bct_to_ties(b: Bct, d: BraneDiagram) -> TieDiagram:
    if b.margins != charges(d):
        raise MarginMismatch(f"table margins {b.margins} differ from charges {charges(d)}")
    ns5, d5 = _brane_positions(d)
    ties = set()
    for i in range(1, b.rows + 1):
        for j in range(1, b.cols + 1):
            left = ns5[i - 1] < d5[j - 1]
            if b.entry(i, j) == (1 if left else 0):
                ties.add((i, j))
    return TieDiagram(d, frozenset(ties))


def separating_line(d: BraneDiagram) -> tuple[str, ...]:
    return tuple("D" if k is BraneKind.NS5 else "R" for k in d.branes)


def ties_to_bct(t: TieDiagram) -> TableWithMargins:
    d = t.diagram
    n, m = d.n, d.m
    for i, j in t.ties:
        if not (1 <= i <= n and 1 <= j <= m):
            raise InvalidTies(f"tie ({i}, {j}) names a brane that does not exist")
    cov = coverage(d, t.ties)
    seg = d.segments()
    for k in range(len(seg)):
        if cov[k] != seg[k]:
            raise InvalidTies(f"segment X_{k} is covered by {cov[k]} ties but has multiplicity {seg[k]}")
    ns5, d5 = _brane_positions(d)
    bits = tuple(
        tuple(
            int(((i, j) in t.ties) == (ns5[i - 1] < d5[j - 1]))
            for j in range(1, m + 1)
        )
        for i in range(1, n + 1)
    )
    return TableWithMargins(Bct(n, m, bits), separating_line(d))


def hw_fixed_point(t: TieDiagram, k: int) -> TieDiagram:
    """Hanany-Witten transition at 1-based position ``k`` acting on a tie diagram."""
    d = t.diagram
    new_d = hw_step(d, k)
    # NS5/D5 ordinals are unchanged by an adjacent swap of opposite kinds.
    i = sum(1 for b in d.branes[: k + 1] if b is BraneKind.NS5)
    j = sum(1 for b in d.branes[: k + 1] if b is BraneKind.D5)
    ties = set(t.ties)
    ties ^= {(i, j)}
    return TieDiagram(new_d, frozenset(ties))


# --- Young diagrams ------------------------------------------------------------------


def young_diagrams(b: Bct) -> tuple[tuple[int, ...], ...]:
    """One strict partition per column: parts ``n - i + 1`` over rows ``i`` holding a 1."""
    n = b.rows
    return tuple(
        tuple(n - i + 1 for i in range(1, n + 1) if b.entry(i, j))
        for j in range(1, b.cols + 1)
    )


def bct_from_young(n: int, diagrams: Sequence[Sequence[int]]) -> Bct:
    bits = [[0] * len(diagrams) for _ in range(n)]
    for j, parts in enumerate(diagrams):
        if any(a <= b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"column {j + 1} partition {tuple(parts)} is not strictly decreasing")
        for part in parts:
            if not 1 <= part <= n:
                raise ValueError(f"part {part} outside 1..{n}")
            bits[n - part][j] = 1
    return Bct(n, len(diagrams), tuple(tuple(r) for r in bits))
