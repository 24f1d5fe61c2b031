"""Butterfly diagrams, vertex heights, tautological restrictions and the
brute-force expansion of the tangent K-class at a fixed point.

Every D5 brane ``U`` gets one butterfly.  Its vertices sit in columns indexed
by segments ``X_k``; column ``k`` holds one vertex per tie at ``U`` that
covers ``X_k``.  A vertex is identified by ``(k, y)`` where ``y`` is its
height, so vertices in the same row share ``y``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .brane import BraneKind
from .charring import KClass, Weight, end, hom, weights_of
from .fixedpoints import TieDiagram, tie_span

Node = Optional[tuple[int, int]]  # None is the framing vertex


@dataclass(frozen=True)
class Edge:
    kind: str  # "A", "B", "C", "D", "a" or "b"
    src: Node
    dst: Node

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "src": None if self.src is None else list(self.src),
            "dst": None if self.dst is None else list(self.dst),
        }


@dataclass(frozen=True)
class Butterfly:
    d5: int  # 1-based index j of U_j
    position: int  # 0-based brane position of U_j
    counts: tuple[int, ...]  # vertices per segment X_0 .. X_N
    bottoms: tuple[int, ...]  # height of the lowest vertex in each column
    edges: tuple[Edge, ...]

    def column(self, k: int) -> list[int]:
        """Heights in column ``k``, top first."""
        b, cnt = self.bottoms[k], self.counts[k]
        return list(range(b + cnt - 1, b - 1, -1))

    def top(self, k: int) -> int:
        return self.bottoms[k] + self.counts[k] - 1

    @property
    def vertices(self) -> list[tuple[int, int]]:
        return [(k, y) for k in range(len(self.counts)) for y in self.column(k)]

    def to_json(self) -> dict:
        return {
            "d5": self.d5,
            "vertices": [list(v) for v in self.vertices],
            "edges": [e.to_json() for e in self.edges],
        }


@dataclass(frozen=True)
class ButterflyDiagram:
    ties: TieDiagram
    butterflies: tuple[Butterfly, ...]

    @property
    def m(self) -> int:
        return len(self.butterflies)

    def to_json(self) -> dict:
        return {"diagram": str(self.ties.diagram), "butterflies": [b.to_json() for b in self.butterflies]}


def _column_counts(t: TieDiagram, j: int) -> list[int]:
    d = t.diagram
    counts = [0] * (len(d.branes) + 1)
    for i in t.ties_at_d5(j):
        for k in tie_span(d, i, j):
            counts[k] += 1
    return counts


def _bottoms(kinds: tuple[BraneKind, ...], p: int, counts: list[int]) -> list[int]:
    """Bottom heights per column, anchored at the two columns beside ``U``.

    Beside ``U`` the columns are bottom-aligned and the top vertex of the left
    one has height 0, so both bottoms sit at ``1 - counts[p]``.  That also puts
    the vertex feeding the outgoing framing edge at height 1.
    """
    size = len(counts)
    bottoms = [0] * size
    bottoms[p] = bottoms[p + 1] = 1 - counts[p]
    for k in range(p + 1, size - 1):
        if kinds[k] is BraneKind.D5:
            bottoms[k + 1] = bottoms[k]
        else:  # tops aligned
            bottoms[k + 1] = bottoms[k] + counts[k] - counts[k + 1]
    for k in range(p, 0, -1):
        if kinds[k - 1] is BraneKind.D5:
            bottoms[k - 1] = bottoms[k]
        else:  # left top one row lower
            bottoms[k - 1] = bottoms[k] + counts[k] - 1 - counts[k - 1]
    return bottoms


def _edges(kinds: tuple[BraneKind, ...], p: int, counts: list[int], bottoms: list[int]) -> list[Edge]:
    def has(k: int, y: int) -> bool:
        return 0 <= k < len(counts) and bottoms[k] <= y < bottoms[k] + counts[k]

    def heights(k: int) -> range:
        return range(bottoms[k] + counts[k] - 1, bottoms[k] - 1, -1)

    edges: list[Edge] = []
    for k in range(len(counts) - 1):
        kind = kinds[k]  # brane between X_k and X_{k+1}
        for y in heights(k + 1):
            if kind is BraneKind.D5 and has(k, y):
                edges.append(Edge("A", (k + 1, y), (k, y)))
            if kind is BraneKind.NS5 and has(k, y - 1):
                edges.append(Edge("C", (k + 1, y), (k, y - 1)))
        if kind is BraneKind.NS5:
            for y in heights(k):
                if has(k + 1, y):
                    edges.append(Edge("D", (k, y), (k + 1, y)))
    for k in range(len(counts)):
        next_to_d5 = (k > 0 and kinds[k - 1] is BraneKind.D5) or (
            k < len(kinds) and kinds[k] is BraneKind.D5
        )
        if next_to_d5:
            for y in heights(k):
                if has(k, y - 1):
                    edges.append(Edge("B", (k, y), (k, y - 1)))
    lo, hi = counts[p], counts[p + 1]
    if lo > 0:
        edges.append(Edge("a", None, (p, bottoms[p] + lo - 1)))
    if hi > lo:
        top = bottoms[p + 1] + hi - 1
        edges.append(Edge("b", (p + 1, top - (hi - lo - 1)), None))
    return edges


def build_butterfly(t: TieDiagram, j: int) -> Butterfly:
    d = t.diagram
    p = d.d5_positions()[j - 1]
    counts = _column_counts(t, j)
    bottoms = _bottoms(d.branes, p, counts)
    return Butterfly(j, p, tuple(counts), tuple(bottoms), tuple(_edges(d.branes, p, counts, bottoms)))


def build_butterfly_diagram(t: TieDiagram) -> ButterflyDiagram:
    return ButterflyDiagram(t, tuple(build_butterfly(t, j) for j in range(1, t.diagram.m + 1)))


def taut_restrictions(bd: ButterflyDiagram) -> list[KClass]:
    """Restriction of each tautological bundle ``xi_X`` to the fixed point, for ``X_0 .. X_N``."""
    m = bd.m
    size = len(bd.ties.diagram.branes) + 1
    out: list[dict[tuple[int, ...], int]] = [{} for _ in range(size)]
    for bf in bd.butterflies:
        for k in range(size):
            for y in bf.column(k):
                exps = [0] * (m + 1)
                exps[bf.d5 - 1] = 1
                exps[m] = y
                key = tuple(exps)
                out[k][key] = out[k].get(key, 0) + 1
    return [KClass(m, terms) for terms in out]


def tangent_class(t: TieDiagram) -> KClass:
    """Expand the tangent K-class at the fixed point from the tautological restrictions."""
    d = t.diagram
    m = d.m
    xi = taut_restrictions(build_butterfly_diagram(t))
    h = KClass.h(m)
    one_plus_h = KClass.one(m) + h
    one_minus_h = KClass.one(m) - h
    total = KClass.zero(m)
    j = 0
    for p, kind in enumerate(d.branes):
        minus, plus = xi[p], xi[p + 1]
        if kind is BraneKind.D5:
            j += 1
            u = KClass.u(m, j)
            # (1 - h) Hom(plus, minus): the D5 triangle term net of its correction
            total = (
                total
                + one_minus_h * hom(plus, minus)
                + hom(u, minus)
                + h * (hom(plus, u) + end(minus) + end(plus))
            )
        else:
            total = total + h * hom(plus, minus) + hom(minus, plus)
    for x in xi:
        total = total - one_plus_h * end(x)
    return total


def tangent_class_oracle(t: TieDiagram) -> list[Weight]:
    """Tangent weights at the fixed point, canonically sorted."""
    return weights_of(tangent_class(t))


def render_butterfly(bf: Butterfly, label_width: int = 4) -> str:
    """Column-aligned ASCII picture: one text row per height, ``*`` for a vertex."""
    cols = [k for k, c in enumerate(bf.counts) if c]
    if not cols:
        return f"U{bf.d5}: empty"
    ys = [y for k in cols for y in bf.column(k)]
    lines = [f"U{bf.d5}   " + " ".join(f"X{k}".rjust(3) for k in cols)]
    for y in range(max(ys), min(ys) - 1, -1):
        cells = []
        for k in cols:
            present = bf.bottoms[k] <= y <= bf.top(k)
            cells.append("  *" if present else "  .")
        lines.append(f"h^{y}".rjust(label_width) + "  " + " ".join(cells))
    return "\n".join(lines)
