"""Slow, obviously-correct reference implementations used to cross-check the fast paths."""

from __future__ import annotations

from itertools import product

from .brane import Margins
from .fixedpoints import Bct, young_diagrams

Box = tuple[int, int]


def brute_force_bcts(margins: Margins) -> list[Bct]:
    """Every 0/1 matrix with the margins, found by trying all ``2^(n*m)`` fillings."""
    n, m = margins.n, margins.m
    out = []
    for flat in product((0, 1), repeat=n * m):
        rows = tuple(tuple(flat[i * m : (i + 1) * m]) for i in range(n))
        if tuple(map(sum, rows)) != margins.r:
            continue
        if tuple(sum(r[j] for r in rows) for j in range(m)) != margins.c:
            continue
        out.append(Bct(n, m, rows))
    return out


def direct_pair_count(b: Bct) -> int:
    return sum(
        1
        for row in b.bits
        for j0 in range(b.cols)
        for j1 in range(j0 + 1, b.cols)
        if row[j0] == 0 and row[j1] == 1
    )


def _is_strict_diagram(boxes: set[Box]) -> bool:
    if not boxes:
        return True
    rows = max(r for r, _ in boxes)
    lengths = []
    for k in range(1, rows + 1):
        row = sorted(o for r, o in boxes if r == k)
        if not row or row != list(range(len(row))):
            return False
        lengths.append(len(row))
    return all(a > b for a, b in zip(lengths, lengths[1:]))


def _connected(site: set[Box]) -> bool:
    start = next(iter(site))
    seen = {start}
    frontier = [start]
    while frontier:
        r, o = frontier.pop()
        for nb in ((r + a, o + b) for a in (-1, 0, 1) for b in (-1, 0, 1)):
            if nb in site and nb not in seen:
                seen.add(nb)
                frontier.append(nb)
    return len(seen) == len(site)


def brute_force_surgeries(b: Bct) -> set[tuple]:
    """All connected surgeries at ``b`` satisfying the box constraint.

    Returned as ``(source, target, sorted site, displacement)`` tuples, where the
    displacement is the number of rows moved down.
    """
    young = young_diagrams(b)
    c = b.margins.c
    out = set()
    for src in range(1, b.cols + 1):
        lam = young[src - 1]
        lam_boxes = {(k, o) for k, part in enumerate(lam, start=1) for o in range(part)}
        for keep in product(*(range(part + 1) for part in lam)):
            site = {(k, o) for k, part in enumerate(lam, start=1) for o in range(keep[k - 1], part)}
            if not site or not _connected(site):
                continue
            if any((r + 1, o) in lam_boxes and (r + 1, o) not in site for r, o in site):
                continue
            if not _is_strict_diagram(lam_boxes - site):
                continue
            right = sum(1 for _, o in site if o == 0)
            for tgt in range(1, b.cols + 1):
                if tgt == src:
                    continue
                if right and src < tgt and right < c[src - 1] - c[tgt - 1] + 1:
                    continue
                mu = young[tgt - 1]
                mu_boxes = {(k, o) for k, part in enumerate(mu, start=1) for o in range(part)}
                for shift in range(-b.rows, b.rows + 1):
                    moved = {(r + shift, o) for r, o in site}
                    if any(r < 1 for r, _ in moved) or moved & mu_boxes:
                        continue
                    if _is_strict_diagram(mu_boxes | moved):
                        out.add((src, tgt, tuple(sorted(site)), shift))
    return out
