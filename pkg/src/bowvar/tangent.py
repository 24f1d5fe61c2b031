"""Tangent weights read directly off a fixed-point table, without cancellation.

For a row ``i`` and columns ``j0 < j1`` with ``M[i][j0] = 0`` and
``M[i][j1] = 1`` (a 01-pair) the tangent space gets the two weights

    u_j0 / u_j1 * h^(s[i][j1] - s[i][j0])
    u_j1 / u_j0 * h^(s[i][j0] - s[i][j1] + 1)

where ``s[i][j]`` counts the 1s in column ``j`` down to row ``i``.  Diagrams
that are not separated shift each ``u_j`` by ``h^sigma_j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import accumulate
from typing import Sequence

from .brane import Margins
from .charring import Weight
from .errors import SigmaLengthMismatch
from .fixedpoints import Bct


@dataclass(frozen=True)
class PairTable:
    s: tuple[tuple[int, ...], ...]  # s[i][j - 1] for i = 0..n
    pairs01: tuple[tuple[int, int, int], ...]  # (i, j0, j1): M[i][j0] = 0, M[i][j1] = 1, j0 < j1
    pairs10: tuple[tuple[int, int, int], ...]  # (i, j1, j0): M[i][j1] = 1, M[i][j0] = 0, j1 < j0

    def partial(self, i: int, j: int) -> int:
        return self.s[i][j - 1]


def pair_table(b: Bct) -> PairTable:
    s = [tuple([0] * b.cols)]
    p01: list[tuple[int, int, int]] = []
    p10: list[tuple[int, int, int]] = []
    for i, row in enumerate(b.bits, start=1):
        s.append(tuple(a + x for a, x in zip(s[-1], row)))
        for j0 in range(b.cols):
            for j1 in range(j0 + 1, b.cols):
                if row[j0] == 0 and row[j1] == 1:
                    p01.append((i, j0 + 1, j1 + 1))
                elif row[j0] == 1 and row[j1] == 0:
                    p10.append((i, j0 + 1, j1 + 1))
    return PairTable(tuple(s), tuple(p01), tuple(p10))


def tangent_weights_general(b: Bct, sigma: Sequence[int]) -> list[Weight]:
    if len(sigma) != b.cols:
        raise SigmaLengthMismatch(f"sigma has {len(sigma)} entries for {b.cols} D5 branes")
    pt = pair_table(b)
    m = b.cols
    out = []
    for i, j0, j1 in pt.pairs01:
        gap = pt.partial(i, j1) - pt.partial(i, j0) + sigma[j0 - 1] - sigma[j1 - 1]
        out.append(Weight.ratio(m, j0, j1, gap))
        out.append(Weight.ratio(m, j1, j0, 1 - gap))
    return sorted(out)


def tangent_weights(b: Bct) -> list[Weight]:
    """Weights for a separated diagram."""
    return tangent_weights_general(b, (0,) * b.cols)


def pair_count_from_margins(margins: Margins) -> int:
    """Number of 01-pairs shared by every table with these margins.

    Computed as half the dimension of the separated bow variety.  In separated
    form the NS5 segments carry the running sums of ``r`` and the D5 segments
    carry the running sums of ``c`` taken from the right end.
    """
    r, c = margins.r, margins.c
    n = len(r)
    rr = [0, *accumulate(r)]
    cc = [0, *accumulate(reversed(c))]
    total = 0
    for j in range(1, len(c) + 1):
        total += cc[j] * (cc[j] + 1) + cc[j - 1] * (cc[j - 1] + 1)
        total -= 2 * cc[j] ** 2
    for i in range(1, n + 1):
        total += 2 * rr[i - 1] * rr[i]
    for i in range(1, n):
        total -= 2 * rr[i] ** 2
    return total // 2


def dimension(b: Bct) -> int:
    return 2 * len(pair_table(b).pairs01)
