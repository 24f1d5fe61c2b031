"""Brane diagrams: text format, charges, Hanany-Witten moves and separation.

A diagram is a left-to-right sequence of NS5 and D5 branes with a D3
multiplicity on every interior segment.  In text form ``/`` is an NS5 brane,
``\\`` is a D5 brane, and a decimal integer sits between any two consecutive
branes, e.g. ``/2\\2/2\\4/3/3/4\\3/2\\2\\``.  The letters ``s`` and ``b`` may
stand in for ``/`` and ``\\`` so that diagrams can be typed without shell
quoting.

Brane positions in the public API are 1-based, matching the ``V_i`` / ``U_j``
labels used in output.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterator

from .errors import (
    MalformedDiagram,
    NegativeMultiplicity,
    SameKind,
    check_int64,
)


class BraneKind(str, enum.Enum):
    NS5 = "NS5"
    D5 = "D5"

    @property
    def symbol(self) -> str:
        return "/" if self is BraneKind.NS5 else "\\"


_SYMBOLS = {"/": BraneKind.NS5, "s": BraneKind.NS5, "\\": BraneKind.D5, "b": BraneKind.D5}
_TOKEN = re.compile(r"[/\\sb]|\d+")


@dataclass(frozen=True)
class Margins:
    """Charges of the NS5 branes (``r``) and D5 branes (``c``)."""

    r: tuple[int, ...]
    c: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.r)

    @property
    def m(self) -> int:
        return len(self.c)

    def to_json(self) -> dict:
        return {"r": list(self.r), "c": list(self.c)}


@dataclass(frozen=True)
class BraneDiagram:
    branes: tuple[BraneKind, ...]
    multiplicities: tuple[int, ...]

    def __post_init__(self) -> None:
        branes = tuple(BraneKind(b) for b in self.branes)
        mults = tuple(int(d) for d in self.multiplicities)
        object.__setattr__(self, "branes", branes)
        object.__setattr__(self, "multiplicities", mults)
        if not branes:
            raise MalformedDiagram("a diagram needs at least one brane")
        if len(mults) != len(branes) - 1:
            raise MalformedDiagram(
                f"{len(branes)} branes need {len(branes) - 1} multiplicities, got {len(mults)}"
            )
        for k, d in enumerate(mults, start=1):
            if d < 0:
                raise NegativeMultiplicity(f"segment {k} has multiplicity {d}")
            check_int64(d, f"segment {k} multiplicity")

    @property
    def n(self) -> int:
        return sum(1 for b in self.branes if b is BraneKind.NS5)

    @property
    def m(self) -> int:
        return len(self.branes) - self.n

    def segment(self, k: int) -> int:
        """Multiplicity of segment ``X_k``; ``X_0`` and ``X_{n+m}`` are 0."""
        if k <= 0 or k >= len(self.branes):
            return 0
        return self.multiplicities[k - 1]

    def segments(self) -> tuple[int, ...]:
        """All segment multiplicities ``X_0 .. X_{n+m}`` including the zero ends."""
        return (0, *self.multiplicities, 0)

    def ns5_positions(self) -> list[int]:
        """0-based brane positions of V_1..V_n."""
        return [p for p, b in enumerate(self.branes) if b is BraneKind.NS5]

    def d5_positions(self) -> list[int]:
        """0-based brane positions of U_1..U_m."""
        return [p for p, b in enumerate(self.branes) if b is BraneKind.D5]

    def __str__(self) -> str:
        return format_diagram(self)


def parse_diagram(text: str) -> BraneDiagram:
    if re.search(r"\d\s+\d", text):
        raise MalformedDiagram("whitespace inside a multiplicity")
    compact = "".join(text.split())
    if not compact:
        raise MalformedDiagram("empty input")
    pos = 0
    tokens: list[str] = []
    for match in _TOKEN.finditer(compact):
        if match.start() != pos:
            raise MalformedDiagram(f"illegal character {compact[pos]!r} at offset {pos}")
        tokens.append(match.group())
        pos = match.end()
    if pos != len(compact):
        raise MalformedDiagram(f"illegal character {compact[pos]!r} at offset {pos}")

    branes: list[BraneKind] = []
    mults: list[int] = []
    expect_brane = True
    for tok in tokens:
        if tok in _SYMBOLS:
            if not expect_brane:
                raise MalformedDiagram(f"missing multiplicity before brane {len(branes) + 1}")
            branes.append(_SYMBOLS[tok])
            expect_brane = False
        else:
            if not branes:
                raise MalformedDiagram("diagram must start with a brane symbol")
            if expect_brane:
                raise MalformedDiagram(f"two integers in a row after brane {len(branes)}")
            if len(tok) > 1 and tok[0] == "0":
                raise MalformedDiagram(f"leading zero in multiplicity {tok!r}")
            mults.append(check_int64(int(tok), "multiplicity"))
            expect_brane = True
    if expect_brane:
        raise MalformedDiagram("diagram must end with a brane symbol")
    return BraneDiagram(tuple(branes), tuple(mults))


def format_diagram(d: BraneDiagram, ascii_aliases: bool = False) -> str:
    out = []
    for k, b in enumerate(d.branes):
        if k:
            out.append(str(d.multiplicities[k - 1]))
        if ascii_aliases:
            out.append("s" if b is BraneKind.NS5 else "b")
        else:
            out.append(b.symbol)
    return "".join(out)


def charges(d: BraneDiagram) -> Margins:
    seg = d.segments()
    r: list[int] = []
    c: list[int] = []
    d5_left = 0
    ns5_total = d.n
    ns5_left = 0
    for p, b in enumerate(d.branes):
        left, right = seg[p], seg[p + 1]
        if b is BraneKind.NS5:
            r.append(right - left + d5_left)
            ns5_left += 1
        else:
            c.append(left - right + (ns5_total - ns5_left))
            d5_left += 1
    return Margins(tuple(r), tuple(c))


def is_separated(d: BraneDiagram) -> bool:
    seen_d5 = False
    for b in d.branes:
        if b is BraneKind.D5:
            seen_d5 = True
        elif seen_d5:
            return False
    return True


def hw_step(d: BraneDiagram, k: int) -> BraneDiagram:
    """Swap branes ``k`` and ``k+1`` (1-based) by a Hanany-Witten transition."""
    size = len(d.branes)
    if not 1 <= k < size:
        raise MalformedDiagram(f"position {k} is not followed by another brane (1..{size - 1})")
    p = k - 1
    a, b = d.branes[p], d.branes[p + 1]
    if a is b:
        raise SameKind(f"branes {k} and {k + 1} are both {a.value}")
    d1, d2, d3 = d.segment(p), d.segment(p + 1), d.segment(p + 2)
    new = check_int64(d1 + d3 + 1 - d2, "new multiplicity")
    if new < 0:
        raise NegativeMultiplicity(
            f"transition at {k} would give multiplicity {d1} + {d3} + 1 - {d2} = {new}"
        )
    branes = list(d.branes)
    branes[p], branes[p + 1] = b, a
    mults = list(d.multiplicities)
    mults[p] = new
    return BraneDiagram(tuple(branes), tuple(mults))


@dataclass(frozen=True)
class HwStep:
    position: int
    old_mult: int
    new_mult: int

    def to_json(self) -> dict:
        return {"position": self.position, "old_mult": self.old_mult, "new_mult": self.new_mult}


@dataclass(frozen=True)
class HwTrace:
    steps: tuple[HwStep, ...]
    sigma: tuple[int, ...]

    def replay(self, d: BraneDiagram) -> BraneDiagram:
        for step in self.steps:
            d = hw_step(d, step.position)
        return d

    def to_json(self) -> dict:
        return {"steps": [s.to_json() for s in self.steps], "sigma": list(self.sigma)}


def ns5_right_counts(d: BraneDiagram) -> tuple[int, ...]:
    """For each D5 brane, the number of NS5 branes strictly to its right."""
    out = []
    right = d.n
    for b in d.branes:
        if b is BraneKind.NS5:
            right -= 1
        else:
            out.append(right)
    return tuple(out)


def _leftmost_d5_ns5(d: BraneDiagram) -> int | None:
    for p in range(len(d.branes) - 1):
        if d.branes[p] is BraneKind.D5 and d.branes[p + 1] is BraneKind.NS5:
            return p + 1
    return None


def separate(d: BraneDiagram) -> tuple[BraneDiagram, HwTrace]:
    """Move every NS5 brane to the left, always acting on the leftmost D5/NS5 pair."""
    sigma = ns5_right_counts(d)
    steps: list[HwStep] = []
    cur = d
    while (k := _leftmost_d5_ns5(cur)) is not None:
        old = cur.segment(k)
        cur = hw_step(cur, k)
        steps.append(HwStep(k, old, cur.segment(k)))
    return cur, HwTrace(tuple(steps), sigma)


def separated_from_margins(margins: Margins) -> BraneDiagram:
    """The unique separated diagram with the given charges."""
    r, c = margins.r, margins.c
    mults: list[int] = []
    total = 0
    for ri in r:
        total += ri
        mults.append(total)
    for cj in c:
        total -= cj
        mults.append(total)
    if not mults or mults[-1] != 0:
        raise NegativeMultiplicity(f"charges do not balance: sum(r) - sum(c) = {mults[-1] if mults else 0}")
    if any(x < 0 for x in mults):
        raise NegativeMultiplicity("charges give a negative multiplicity in separated form")
    branes = (BraneKind.NS5,) * len(r) + (BraneKind.D5,) * len(c)
    return BraneDiagram(branes, tuple(mults[:-1]))


def legal_hw_positions(d: BraneDiagram) -> Iterator[int]:
    """1-based positions where ``hw_step`` succeeds."""
    for k in range(1, len(d.branes)):
        if d.branes[k - 1] is d.branes[k]:
            continue
        if d.segment(k - 1) + d.segment(k + 1) + 1 - d.segment(k) >= 0:
            yield k

