"""Seeded random diagrams for property checks.

A diagram is drawn by picking a brane order and a random 0/1 table, then
reading the multiplicities off the ties that the table induces.  Every
diagram produced this way has at least one fixed point.
"""

from __future__ import annotations

import random
from typing import Iterator

from .brane import BraneDiagram, BraneKind
from .fixedpoints import Bct, coverage


def random_diagram(rng: random.Random, max_size: int = 8, max_margin: int = 4) -> BraneDiagram:
    size = rng.randint(2, max(2, max_size))
    # balanced shapes and medium density give tables with many fixed points
    half = size // 2
    n = rng.randint(max(1, half - 1), min(size - 1, half + 1))
    m = size - n
    kinds = [BraneKind.NS5] * n + [BraneKind.D5] * m
    rng.shuffle(kinds)
    while True:
        density = rng.uniform(0.3, 0.7)
        bits = tuple(tuple(int(rng.random() < density) for _ in range(m)) for _ in range(n))
        b = Bct(n, m, bits)
        if max(b.margins.r + b.margins.c) <= max_margin:
            break
    skeleton = BraneDiagram(tuple(kinds), (0,) * (size - 1))
    ns5, d5 = skeleton.ns5_positions(), skeleton.d5_positions()
    ties = frozenset(
        (i, j)
        for i in range(1, n + 1)
        for j in range(1, m + 1)
        if b.entry(i, j) == int(ns5[i - 1] < d5[j - 1])
    )
    cov = coverage(skeleton, ties)
    return BraneDiagram(tuple(kinds), tuple(cov[1:size]))


def random_corpus(seed: int, count: int, max_size: int = 8, max_margin: int = 4) -> Iterator[BraneDiagram]:
    rng = random.Random(seed)
    for _ in range(count):
        yield random_diagram(rng, max_size, max_margin)
