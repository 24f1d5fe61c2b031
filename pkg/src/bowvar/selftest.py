"""Invariant suites run by ``bowvar selftest`` over a seeded random corpus.

Each check takes one diagram and returns a list of failure messages; an
empty list means the invariant held.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable

from .brane import (
    BraneDiagram,
    charges,
    format_diagram,
    hw_step,
    is_separated,
    legal_hw_positions,
    parse_diagram,
    separate,
)
from .butterfly import build_butterfly_diagram, taut_restrictions, tangent_class_oracle
from .charring import KClass, Weight, check_self_dual
from .corpus import random_corpus
from .curves import (
    CurveType,
    FixedPointIndex,
    Skeleton,
    block_swaps,
    classify_curves,
    connected_surgeries,
    nonsurgery_curves,
    skeleton,
)
from .fixedpoints import (
    bct_to_ties,
    enumerate_fixed_points,
    gale_ryser,
    hw_fixed_point,
    ties_to_bct,
)
from .oracles import brute_force_bcts, brute_force_surgeries, direct_pair_count
from .tangent import pair_count_from_margins, tangent_weights, tangent_weights_general

Check = Callable[[BraneDiagram], list[str]]


# --- brane ----------------------------------------------------------------------------


def check_brane(d: BraneDiagram) -> list[str]:
    errs = []
    text = format_diagram(d)
    if format_diagram(parse_diagram(text)) != text:
        errs.append(f"{text}: text round trip failed")
    for k in legal_hw_positions(d):
        if charges(hw_step(d, k)) != charges(d):
            errs.append(f"{text}: charges change under the transition at {k}")
    sep, trace = separate(d)
    if not is_separated(sep) or trace.replay(d) != sep:
        errs.append(f"{text}: separation trace does not replay")
    if separate(sep)[0] != sep or any(separate(sep)[1].sigma):
        errs.append(f"{text}: separation is not idempotent")
    if charges(sep) != charges(d):
        errs.append(f"{text}: separation changes charges")
    return errs


# --- charring --------------------------------------------------------------------------


def random_kclass(rng: random.Random, m: int, terms: int = 3, spread: int = 2) -> KClass:
    data: dict[tuple[int, ...], int] = {}
    for _ in range(rng.randint(0, terms)):
        exps = tuple(rng.randint(-spread, spread) for _ in range(m + 1))
        data[exps] = data.get(exps, 0) + rng.randint(-3, 3)
    return KClass(m, data)


def check_ring(rng: random.Random, m: int = 2) -> list[str]:
    a, b, c = (random_kclass(rng, m) for _ in range(3))
    errs = []
    if (a * b) * c != a * (b * c):
        errs.append("multiplication is not associative")
    if a * (b + c) != a * b + a * c:
        errs.append("multiplication does not distribute")
    if a - a:
        errs.append("a - a is not zero")
    if a.dual().dual() != a or (a * b).dual() != a.dual() * b.dual():
        errs.append("dual is not a ring involution")
    return errs


# --- fixed points ----------------------------------------------------------------------


def check_fixed_points(d: BraneDiagram) -> list[str]:
    errs = []
    margins = charges(d)
    fps = enumerate_fixed_points(d)
    if margins.n * margins.m <= 12 and fps != brute_force_bcts(margins):
        errs.append(f"{d}: enumeration differs from exhaustive search")
    if bool(fps) != gale_ryser(margins.r, margins.c):
        errs.append(f"{d}: Gale-Ryser disagrees with enumeration")
    positions = list(legal_hw_positions(d))
    for b in fps:
        t = bct_to_ties(b, d)
        if ties_to_bct(t).bct != b:
            errs.append(f"{d}: tie round trip fails")
        for k in positions:
            moved = hw_fixed_point(t, k)
            if ties_to_bct(moved).bct != b:
                errs.append(f"{d}: transition at {k} changes the table")
            if hw_fixed_point(moved, k) != t:
                errs.append(f"{d}: transition at {k} is not an involution on ties")
    return errs


# --- butterfly -------------------------------------------------------------------------


def separated_restrictions(b, m: int) -> list[KClass]:
    """Closed form of the tautological restrictions for a separated diagram."""
    n = b.rows
    s = [[0] * m]
    for row in b.bits:
        s.append([x + y for x, y in zip(s[-1], row)])

    def string(j: int, length: int, top: int) -> dict:
        return {tuple([1 if q == j else 0 for q in range(m)] + [top - t]): 1 for t in range(length)}

    out = [KClass.zero(m)]
    for k in range(1, n + 1):
        acc = KClass.zero(m)
        for j in range(m):
            acc = acc + KClass(m, string(j, s[k][j], k - n))
        out.append(acc)
    for k in range(n + 1, n + m + 1):
        acc = KClass.zero(m)
        for j in range(k - n, m):
            acc = acc + KClass(m, string(j, s[n][j], 0))
        out.append(acc)
    return out


def check_butterfly(d: BraneDiagram) -> list[str]:
    errs = []
    seg = d.segments()
    sep = is_separated(d)
    for b in enumerate_fixed_points(d):
        bd = build_butterfly_diagram(bct_to_ties(b, d))
        for k, total in enumerate(seg):
            if sum(bf.counts[k] for bf in bd.butterflies) != total:
                errs.append(f"{d}: butterfly columns over X_{k} do not add up to {total}")
        for bf in bd.butterflies:
            for e in bf.edges:
                if e.kind == "a" and e.dst[1] != 0:
                    errs.append(f"{d}: incoming framing edge of U{bf.d5} lands at height {e.dst[1]}")
                if e.kind == "b" and e.src[1] != 1:
                    errs.append(f"{d}: outgoing framing edge of U{bf.d5} leaves height {e.src[1]}")
                if e.kind == "B" and e.src[1] - e.dst[1] != 1:
                    errs.append(f"{d}: downward edge of U{bf.d5} drops {e.src[1] - e.dst[1]}")
        if sep and taut_restrictions(bd) != separated_restrictions(b, d.m):
            errs.append(f"{d}: restrictions differ from the separated closed form")
    return errs


# --- tangent ---------------------------------------------------------------------------


def check_tangent(d: BraneDiagram) -> list[str]:
    errs = []
    sigma = separate(d)[1].sigma
    fps = enumerate_fixed_points(d)
    counts = {direct_pair_count(b) for b in fps}
    if fps and counts != {pair_count_from_margins(charges(d))}:
        errs.append(f"{d}: 01-pair counts {sorted(counts)} differ from the margin formula")
    for b in fps:
        fast = tangent_weights_general(b, sigma)
        if not check_self_dual(fast):
            errs.append(f"{d}: weights are not self-dual")
        if tangent_class_oracle(bct_to_ties(b, d)) != fast:
            errs.append(f"{d}: oracle disagrees with the formula at {b.bits}")
    return errs


def oracle_mismatches(d: BraneDiagram) -> list[str]:
    sigma = separate(d)[1].sigma
    return [
        f"{d}: fixed point {p}"
        for p, b in enumerate(enumerate_fixed_points(d), start=1)
        if tangent_class_oracle(bct_to_ties(b, d)) != tangent_weights_general(b, sigma)
    ]


# --- curves ----------------------------------------------------------------------------


def check_curves(d: BraneDiagram) -> list[str]:
    errs = []
    sep, _ = separate(d)
    index = FixedPointIndex(enumerate_fixed_points(sep))
    reports = {p: classify_curves(b, sep, index) for p, b in enumerate(index.bcts, start=1)}
    for p, rep in reports.items():
        b = rep.bct
        if rep.weights() != tangent_weights(b):
            errs.append(f"{sep}: curves at {p} do not span the tangent space")
        for w, members in rep.by_weight.items():
            kinds = Counter(c.curve_type for c in members)
            if kinds[CurveType.II] and kinds[CurveType.III]:
                errs.append(f"{sep}: weight {w} at {p} has both type II and type III curves")
            if len(members) - kinds[CurveType.I] > 1:
                errs.append(f"{sep}: weight {w} at {p} has several noncompact spanning curves")
            sites = [c.surgery.site for c in members if c.surgery is not None]
            if sum(map(len, sites)) != len(frozenset().union(*sites)):
                errs.append(f"{sep}: weight {w} at {p} has overlapping sites")
        compact = set()
        for c in rep.curves:
            if c.compact:
                compact.add((c.endpoint, c.weight_at_p))
                mirror = reports[c.endpoint].pencil(c.weight_at_p.inverse())
                if not any(x.compact and x.endpoint == p for x in mirror):
                    errs.append(f"{sep}: curve {p}->{c.endpoint} has no mirror")
        swaps = {(index.index(s.result), s.weight(b)) for s in block_swaps(b)}
        if swaps != compact:
            errs.append(f"{sep}: block swaps at {p} differ from compact curves")
        if b.rows <= 4 and b.cols <= 3:
            mine = {(s.source, s.target, tuple(sorted(s.site)), s.shift) for s in connected_surgeries(b)[0]}
            if mine != brute_force_surgeries(b):
                errs.append(f"{sep}: surgeries at {p} differ from exhaustive search")
        if [c.weight_at_p for c in nonsurgery_curves(b)] != [
            c.weight_at_p for c in nonsurgery_curves(index.bcts[0])
        ]:
            errs.append(f"{sep}: type III curves depend on more than the margins")
    return errs


def skeleton_signature(sk: Skeleton) -> tuple:
    """Edges and rays keyed by table, with weights moved back to separated coordinates."""
    back = tuple(-s for s in sk.sigma)
    keys = [b.bits for b in sk.fixed_points]
    edges = sorted(
        (keys[e.p1 - 1], keys[e.p2 - 1], e.dim, e.w1.reparametrize(back), tuple(keys[q - 1] for q in e.pencil_at))
        for e in sk.edges
    )
    rays = sorted((keys[r.p - 1], r.dim, r.w.reparametrize(back), r.types) for r in sk.rays)
    return tuple(edges), tuple(rays)


def hw_isomorphic(before: Skeleton, after: Skeleton) -> bool:
    """Whether two skeletons agree once one D5 variable is rescaled by ``h^{+-1}``."""
    shift = [b - a for a, b in zip(before.sigma, after.sigma)]
    if len(before.sigma) != len(after.sigma) or sorted(map(abs, shift)) not in ([], [0] * (len(shift) - 1) + [1]):
        return False
    mapped = [
        (e.p1, e.p2, e.dim, e.w1.reparametrize(shift), e.pencil_at) for e in before.edges
    ]
    target = [(e.p1, e.p2, e.dim, e.w1, e.pencil_at) for e in after.edges]
    rays_b = [(r.p, r.dim, r.w.reparametrize(shift), r.types) for r in before.rays]
    rays_a = [(r.p, r.dim, r.w, r.types) for r in after.rays]
    same_nodes = [b.bits for b in before.fixed_points] == [b.bits for b in after.fixed_points]
    return same_nodes and sorted(mapped) == sorted(target) and sorted(rays_b) == sorted(rays_a)


def check_skeleton(d: BraneDiagram) -> list[str]:
    errs = []
    sk = skeleton(d)
    for p, b in enumerate(sk.fixed_points, start=1):
        if sk.incident_dim(p) != 2 * direct_pair_count(b):
            errs.append(f"{d}: pencils at {p} do not add up to the tangent dimension")
    for e in sk.edges:
        if e.w2 != e.w1.inverse() or not e.p1 < e.p2:
            errs.append(f"{d}: edge {e.p1}-{e.p2} is not reciprocal")
    for k in legal_hw_positions(d):
        if not hw_isomorphic(sk, skeleton(hw_step(d, k))):
            errs.append(f"{d}: skeleton changes under the transition at {k}")
    return errs


SUITES: dict[str, Check] = {
    "brane": check_brane,
    "fixedpoints": check_fixed_points,
    "butterfly": check_butterfly,
    "tangent": check_tangent,
    "curves": check_curves,
    "skeleton": check_skeleton,
}


@dataclass
class SuiteResult:
    name: str
    passed: int = 0
    total: int = 0
    failures: list[str] = field(default_factory=list)


def run_selftest(seed: int, max_size: int, count: int = 60) -> list[SuiteResult]:
    corpus = list(random_corpus(seed, count, max_size))
    results = []
    rng = random.Random(seed)
    ring = SuiteResult("charring")
    for _ in range(count):
        errs = check_ring(rng)
        ring.total += 1
        ring.passed += not errs
        ring.failures.extend(errs)
    results.append(ring)
    for name, check in SUITES.items():
        res = SuiteResult(name)
        for d in corpus:
            errs = check(d)
            res.total += 1
            res.passed += not errs
            res.failures.extend(errs)
        results.append(res)
    return results


def weight_list(ws: list[Weight]) -> str:
    return ", ".join(map(str, ws))
