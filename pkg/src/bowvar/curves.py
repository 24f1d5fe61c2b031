"""Torus-invariant curves through a fixed point of a separated diagram.

Curves are coded by Young diagram surgeries.  Column ``j`` of a table gives a
strict partition ``lambda^(j)`` drawn right-aligned with longer rows on top.
A surgery lifts a set of boxes (the site) out of ``lambda^(source)`` and
drops it, rigidly and vertically, directly below ``lambda^(target)``.  Boxes
are addressed as ``(row, offset)`` with 1-based rows inside the source
diagram and offset 0 for the rightmost column.

Three kinds of curve appear:

* type I: a connected surgery whose site avoids the rightmost column;
  these are compact and end at another fixed point;
* type II: a connected surgery touching the rightmost column;
* type III: curves that need no surgery, depending only on the margins.
"""

from __future__ import annotations

import enum
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .brane import BraneDiagram, charges, is_separated, separate
from .charring import Weight
from .errors import MarginMismatch, NotAPair, NotSeparated
from .fixedpoints import (
    Bct,
    FixedPointIndex,
    bct_from_young,
    iter_bcts,
    subset_label,
    young_diagrams,
)
from .tangent import pair_table

Box = tuple[int, int]


class CurveType(str, enum.Enum):
    I = "I"
    II = "II"
    III = "III"


@dataclass(frozen=True)
class Surgery:
    source: int
    target: int
    site: frozenset[Box]
    delta_y: int

    @property
    def shift(self) -> int:
        """Rows travelled downwards by every box."""
        return -self.delta_y

    @property
    def right_col_boxes(self) -> int:
        return sum(1 for _, o in self.site if o == 0)

    @property
    def components(self) -> int:
        return len(_components(self.site))

    @property
    def key(self) -> tuple:
        return (self.source, self.target, tuple(sorted(self.site)))

    def weight(self, m: int) -> Weight:
        return Weight.ratio(m, self.source, self.target, self.shift)

    def to_json(self) -> dict:
        return {
            "source": self.source,
            "target": self.target,
            "site": [list(b) for b in sorted(self.site)],
            "delta_y": self.delta_y,
        }


@dataclass(frozen=True)
class Blocked:
    """A pair whose surgery violates the rightmost-column box constraint."""

    pair: tuple[int, int, int]
    surgery: Surgery
    required: int

    def to_json(self) -> dict:
        return {
            "pair": list(self.pair),
            "surgery": self.surgery.to_json(),
            "right_col_boxes": self.surgery.right_col_boxes,
            "required": self.required,
        }


@dataclass(frozen=True)
class Curve:
    curve_type: CurveType
    weight_at_p: Weight
    surgery: Surgery | None = None
    type3_index: tuple[int, int, int] | None = None
    endpoint: int | None = None

    @property
    def compact(self) -> bool:
        return self.curve_type is CurveType.I

    def to_json(self) -> dict:
        out: dict = {"type": self.curve_type.value, "weight": self.weight_at_p.to_json(), "compact": self.compact}
        if self.surgery is not None:
            out["surgery"] = self.surgery.to_json()
        if self.type3_index is not None:
            out["type3"] = list(self.type3_index)
        if self.endpoint is not None:
            out["endpoint"] = self.endpoint
        return out


@dataclass
class CurveReport:
    bct: Bct
    by_weight: dict[Weight, list[Curve]] = field(default_factory=dict)
    blocked: list[Blocked] = field(default_factory=list)

    @property
    def curves(self) -> list[Curve]:
        return [c for w in sorted(self.by_weight) for c in self.by_weight[w]]

    def weights(self) -> list[Weight]:
        return sorted(c.weight_at_p for c in self.curves)

    def pencil(self, w: Weight) -> list[Curve]:
        return self.by_weight.get(w, [])

    def to_json(self) -> dict:
        return {
            "pencils": [
                {"weight": w.to_json(), "dim": len(cs), "curves": [c.to_json() for c in cs]}
                for w, cs in sorted(self.by_weight.items())
            ],
            "blocked": [b.to_json() for b in self.blocked],
        }


# --- box geometry -------------------------------------------------------------------


def _components(site: Iterable[Box]) -> list[frozenset[Box]]:
    """Connected pieces of a box set, boxes taken as closed squares (corners touch)."""
    todo = set(site)
    out = []
    while todo:
        seed = min(todo)
        todo.remove(seed)
        comp = {seed}
        stack = [seed]
        while stack:
            r, o = stack.pop()
            for dr in (-1, 0, 1):
                for do in (-1, 0, 1):
                    nb = (r + dr, o + do)
                    if nb in todo:
                        todo.remove(nb)
                        comp.add(nb)
                        stack.append(nb)
        out.append(frozenset(comp))
    return sorted(out, key=lambda c: sorted(c))


def diagram_boxes(parts: Sequence[int]) -> set[Box]:
    return {(k, o) for k, part in enumerate(parts, start=1) for o in range(part)}


def parts_from_boxes(boxes: set[Box]) -> tuple[int, ...] | None:
    """Row lengths if ``boxes`` is a right-aligned strict diagram, else ``None``."""
    if not boxes:
        return ()
    rows = max(r for r, _ in boxes)
    parts = []
    for k in range(1, rows + 1):
        length = sum(1 for r, _ in boxes if r == k)
        if length == 0 or any((k, o) not in boxes for o in range(length)):
            return None
        parts.append(length)
    if any(a <= b for a, b in zip(parts, parts[1:])):
        return None
    return tuple(parts)


def apply_surgery(young: Sequence[Sequence[int]], s: Surgery) -> tuple[tuple[int, ...], ...]:
    """Young diagrams after the surgery; raises ``ValueError`` if it is not legal."""
    src = diagram_boxes(young[s.source - 1])
    tgt = diagram_boxes(young[s.target - 1])
    if not s.site <= src:
        raise ValueError("site is not contained in the source diagram")
    for r, o in s.site:
        if (r + 1, o) in src and (r + 1, o) not in s.site:
            raise ValueError("site is not closed downwards")
    moved = {(r + s.shift, o) for r, o in s.site}
    if moved & tgt or any(r < 1 for r, _ in moved):
        raise ValueError("moved boxes collide with the target diagram")
    new_src = parts_from_boxes(src - s.site)
    new_tgt = parts_from_boxes(tgt | moved)
    if new_src is None or new_tgt is None:
        raise ValueError("surgery does not leave strict partitions")
    out = [tuple(p) for p in young]
    out[s.source - 1] = new_src
    out[s.target - 1] = new_tgt
    return tuple(out)


# --- surgeries from pairs ---------------------------------------------------------------


def matched_block_end(b: Bct, i: int, a: int, c: int) -> int | None:
    """Last row of the smallest block from row ``i`` where columns ``a`` and ``c`` have equal sums."""
    balance = 0
    for r in range(i, b.rows + 1):
        balance += b.entry(r, a) - b.entry(r, c)
        if balance == 0:
            return r
    return None


def surgery_for_pair(b: Bct, pair: tuple[int, int, int]) -> Surgery | Blocked:
    """Surgery attached to row ``i`` moving boxes from column ``a`` (a 1) to column ``c`` (a 0)."""
    i, a, c = pair
    if not (1 <= i <= b.rows and 1 <= a <= b.cols and 1 <= c <= b.cols) or a == c:
        raise NotAPair(f"{pair} is outside a {b.rows}x{b.cols} table")
    if b.entry(i, a) != 1 or b.entry(i, c) != 0:
        raise NotAPair(f"row {i} reads ({b.entry(i, a)}, {b.entry(i, c)}) on columns ({a}, {c}), not (1, 0)")
    n = b.rows
    s = pair_table(b).s
    last = matched_block_end(b, i, a, c) or n
    ones_a = [r for r in range(i, last + 1) if b.entry(r, a)]
    ones_c = [r for r in range(i, last + 1) if b.entry(r, c)]
    site = set()
    for k, ra in enumerate(ones_a):
        row = s[ra][a - 1]
        keep = n - ones_c[k] + 1 if k < len(ones_c) else 0
        site.update((row, o) for o in range(keep, n - ra + 1))
    shift = s[i - 1][c - 1] - s[i - 1][a - 1]
    surgery = Surgery(a, c, frozenset(site), -shift)
    right = surgery.right_col_boxes
    if right and a < c:
        cm = b.margins.c
        required = cm[a - 1] - cm[c - 1] + 1
        if right < required:
            return Blocked(pair, surgery, required)
    return surgery


def split_components(s: Surgery) -> list[Surgery]:
    return [Surgery(s.source, s.target, comp, s.delta_y) for comp in _components(s.site)]


def nonsurgery_curves(b: Bct) -> list[Curve]:
    c = b.margins.c
    m = len(c)
    out = []
    for j in range(1, m + 1):
        for jj in range(j + 1, m + 1):
            for t in range(1, max(0, c[jj - 1] - c[j - 1]) + 1):
                out.append(Curve(CurveType.III, Weight.ratio(m, j, jj, t), type3_index=(j, jj, t)))
    return out


def connected_surgeries(b: Bct) -> tuple[list[Surgery], list[Blocked]]:
    """All connected surgeries coming from 01- and 10-pairs, deduplicated by site."""
    pt = pair_table(b)
    pairs = [(i, j1, j0) for i, j0, j1 in pt.pairs01] + list(pt.pairs10)
    found: dict[tuple, Surgery] = {}
    blocked: list[Blocked] = []
    for pair in sorted(pairs):
        res = surgery_for_pair(b, pair)
        if isinstance(res, Blocked):
            blocked.append(res)
            continue
        for piece in split_components(res):
            found.setdefault(piece.key, piece)
    return [found[k] for k in sorted(found)], blocked


def classify_curves(b: Bct, d: BraneDiagram | None = None, index: FixedPointIndex | None = None) -> CurveReport:
    """Every invariant curve through the fixed point ``b``, grouped into pencils by weight."""
    if d is not None:
        if not is_separated(d):
            raise NotSeparated(f"{d} is not separated; classify on its separated form")
        if charges(d) != b.margins:
            raise MarginMismatch(f"table margins {b.margins} differ from charges {charges(d)}")
    if index is None:
        index = FixedPointIndex(list(iter_bcts(b.margins)))
    m = b.cols
    young = young_diagrams(b)
    surgeries, blocked = connected_surgeries(b)
    curves: list[Curve] = []
    for s in surgeries:
        if s.right_col_boxes == 0:
            end = bct_from_young(b.rows, apply_surgery(young, s))
            curves.append(Curve(CurveType.I, s.weight(m), s, endpoint=index.index(end)))
        else:
            curves.append(Curve(CurveType.II, s.weight(m), s))
    curves.extend(nonsurgery_curves(b))
    grouped: dict[Weight, list[Curve]] = defaultdict(list)
    for c in curves:
        grouped[c.weight_at_p].append(c)
    order = {CurveType.I: 0, CurveType.II: 1, CurveType.III: 2}
    by_weight = {w: sorted(cs, key=lambda c: (order[c.curve_type], c.endpoint or 0)) for w, cs in sorted(grouped.items())}
    return CurveReport(b, by_weight, blocked)


# --- block swaps ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BlockSwap:
    top: int
    bottom: int
    source: int  # column holding the 1 in the top row
    target: int
    result: Bct

    def weight(self, b: Bct) -> Weight:
        s = pair_table(b).s
        shift = s[self.top - 1][self.target - 1] - s[self.top - 1][self.source - 1]
        return Weight.ratio(b.cols, self.source, self.target, shift)


def block_swaps(b: Bct) -> list[BlockSwap]:
    """Indecomposable swaps: smallest matched blocks whose top row differs on the two columns."""
    out = []
    for x in range(1, b.cols + 1):
        for y in range(x + 1, b.cols + 1):
            for i in range(1, b.rows + 1):
                if b.entry(i, x) == b.entry(i, y):
                    continue
                src, tgt = (x, y) if b.entry(i, x) else (y, x)
                last = matched_block_end(b, i, src, tgt)
                if last is not None:
                    out.append(BlockSwap(i, last, src, tgt, b.with_columns(x, y, range(i, last + 1))))
    return out


# --- GKM skeleton -----------------------------------------------------------------------------


@dataclass(frozen=True)
class SkeletonEdge:
    """A compact pencil between two fixed points.

    ``pencil_at`` lists the endpoints at which the edge is a whole pencil.  A
    boundary curve of a higher-dimensional pencil is a full pencil only from
    its other end, so it is owned by that end alone.
    """

    p1: int
    p2: int
    dim: int
    w1: Weight
    w2: Weight
    pencil_at: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "p1": self.p1,
            "p2": self.p2,
            "dim": self.dim,
            "w1": self.w1.to_json(),
            "w2": self.w2.to_json(),
            "pencil_at": list(self.pencil_at),
        }


@dataclass(frozen=True)
class SkeletonRay:
    """Noncompact part of a pencil: ``dim`` counts its noncompact spanning curves."""

    p: int
    dim: int
    w: Weight
    types: tuple[str, ...]

    @property
    def pencil_dim(self) -> int:
        return len(self.types)

    def to_json(self) -> dict:
        return {"p": self.p, "dim": self.dim, "w": self.w.to_json(), "types": list(self.types), "pencil_dim": self.pencil_dim}


@dataclass(frozen=True)
class Skeleton:
    diagram: BraneDiagram
    separated: BraneDiagram
    sigma: tuple[int, ...]
    fixed_points: tuple[Bct, ...]
    edges: tuple[SkeletonEdge, ...]
    rays: tuple[SkeletonRay, ...]

    def incident_dim(self, p: int) -> int:
        """Dimension of the pencils based at ``p``; equals the tangent dimension there."""
        return sum(e.dim for e in self.edges if p in e.pencil_at) + sum(r.dim for r in self.rays if r.p == p)

    def to_json(self) -> dict:
        return {
            "diagram": str(self.diagram),
            "separated": str(self.separated),
            "sigma": list(self.sigma),
            "fixed_points": [b.to_json() for b in self.fixed_points],
            "edges": [e.to_json() for e in self.edges],
            "rays": [r.to_json() for r in self.rays],
        }


def pencil_endpoint(report: CurveReport, w: Weight, index: FixedPointIndex) -> tuple[int, int] | None:
    """Far end and dimension of the compact part of the pencil at weight ``w``.

    The type I members have disjoint sites and a common displacement, so their
    union is itself a surgery; applying it lands on the opposite corner of the
    pencil's closure.
    """
    members = [c.surgery for c in report.pencil(w) if c.curve_type is CurveType.I]
    if not members:
        return None
    first = members[0]
    site: frozenset[Box] = frozenset().union(*(s.site for s in members))
    union = Surgery(first.source, first.target, site, first.delta_y)
    b = report.bct
    end = bct_from_young(b.rows, apply_surgery(young_diagrams(b), union))
    return index.index(end), len(members)


def skeleton(d: BraneDiagram) -> Skeleton:
    sep, trace = separate(d)
    sigma = trace.sigma
    index = FixedPointIndex(list(iter_bcts(charges(sep))))
    edges: dict[tuple[int, int, Weight], tuple[int, set[int]]] = {}
    rays: list[SkeletonRay] = []
    for p, b in enumerate(index.bcts, start=1):
        report = classify_curves(b, sep, index)
        for w, members in report.by_weight.items():
            wo = w.reparametrize(sigma)
            found = pencil_endpoint(report, w, index)
            if found is not None:
                q, dim = found
                key = (p, q, wo) if p < q else (q, p, wo.inverse())
                prev_dim, owners = edges.setdefault(key, (dim, set()))
                if prev_dim != dim:
                    raise AssertionError(f"pencil {key} has dimension {dim} at {p} but {prev_dim} at its other end")
                owners.add(p)
            noncompact = [c for c in members if not c.compact]
            if noncompact:
                types = tuple(c.curve_type.value for c in members)
                rays.append(SkeletonRay(p, len(noncompact), wo, types))
    return Skeleton(
        d,
        sep,
        tuple(sigma),
        tuple(index.bcts),
        tuple(
            SkeletonEdge(p1, p2, dim, w1, w1.inverse(), tuple(sorted(owners)))
            for (p1, p2, w1), (dim, owners) in sorted(edges.items())
        ),
        tuple(sorted(rays, key=lambda r: (r.p, r.w))),
    )


def skeleton_to_dot(sk: Skeleton) -> str:
    lines = ["graph skeleton {", '  node [shape=circle];']
    for p, b in enumerate(sk.fixed_points, start=1):
        alias = subset_label(b)
        label = f"{p}" if alias is None else f"{p} ({alias})"
        lines.append(f'  {p} [label="{label}"];')
    for e in sk.edges:
        lines.append(f'  {e.p1} -- {e.p2} [label="dim {e.dim}, {e.w1}"];')
    for r in sk.rays:
        kinds = "+".join(r.types)
        lines.append(f'  {r.p} -- {r.p} [style=dashed, label="ray dim {r.dim}, {r.w} ({kinds})"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
