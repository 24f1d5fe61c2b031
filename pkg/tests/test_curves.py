import re
from collections import Counter

import pytest
from hypothesis import given, settings

from bowvar.brane import hw_step, legal_hw_positions, separate
from bowvar.curves import (
    CurveType,
    Surgery,
    apply_surgery,
    block_swaps,
    classify_curves,
    connected_surgeries,
    nonsurgery_curves,
    skeleton,
    skeleton_to_dot,
    split_components,
)
from bowvar.errors import MarginMismatch, NotSeparated
from bowvar.fixedpoints import Bct, FixedPointIndex, enumerate_fixed_points, subset_label, young_diagrams
from bowvar.oracles import brute_force_surgeries, direct_pair_count
from bowvar.selftest import hw_isomorphic
from bowvar.tangent import tangent_weights

from conftest import FIVE_BY_TWO, RUNNING, THREE_BY_THREE, diagram_with_table, mono


def report(d, k):
    index = FixedPointIndex(enumerate_fixed_points(d))
    return classify_curves(index.get(k), d, index), index


def kinds(rep, w):
    return [c.curve_type for c in rep.pencil(w)]


def test_five_by_two_point_13():
    index = FixedPointIndex(enumerate_fixed_points(FIVE_BY_TWO))
    k = index.by_label("13")
    rep = classify_curves(index.get(k), FIVE_BY_TWO, index)
    down, up = mono(2, u1=-1, u2=1), mono(2, 1, u1=1, u2=-1)
    assert rep.weights() == sorted([down, down, up, up])
    assert kinds(rep, down) == [CurveType.I, CurveType.I]
    assert sorted(subset_label(index.get(c.endpoint)) for c in rep.pencil(down)) == ["14", "23"]
    assert kinds(rep, up) == [CurveType.I, CurveType.II]
    assert subset_label(index.get(rep.pencil(up)[0].endpoint)) == "12"
    [blocked] = rep.blocked
    assert blocked.required == 2 and blocked.surgery.right_col_boxes == 1
    assert len(blocked.surgery.site) == 1


def test_three_by_three_point_3():
    rep, _ = report(THREE_BY_THREE, 3)
    assert rep.weights() == tangent_weights(rep.bct)
    type3 = [c for c in rep.curves if c.curve_type is CurveType.III]
    assert [c.weight_at_p for c in type3] == [mono(3, 1, u2=1, u3=-1)]
    surgeries, _ = connected_surgeries(rep.bct)
    per_pair = Counter(frozenset((s.source, s.target)) for s in surgeries)
    assert [per_pair[frozenset(p)] for p in ((1, 2), (2, 3), (1, 3))] == [2, 3, 0]
    assert kinds(rep, mono(3, u2=-1, u3=1)) == [CurveType.I, CurveType.II]
    assert kinds(rep, mono(3, 1, u2=1, u3=-1)) == [CurveType.I, CurveType.III]


def test_classification_requires_separated_diagram():
    b = enumerate_fixed_points(RUNNING)[0]
    with pytest.raises(NotSeparated):
        classify_curves(b, RUNNING)
    with pytest.raises(MarginMismatch):
        classify_curves(Bct.from_rows([(1, 0)]), FIVE_BY_TWO)


def test_illegal_surgery_rejected():
    b = Bct.from_rows([(1, 0), (0, 1)])
    with pytest.raises(ValueError):
        apply_surgery(young_diagrams(b), Surgery(1, 2, frozenset({(1, 0)}), 0))


def test_split_components_diagonal_site_is_connected():
    s = Surgery(1, 2, frozenset({(1, 1), (2, 0)}), 0)
    assert len(split_components(s)) == 1
    s = Surgery(1, 2, frozenset({(1, 2), (3, 0)}), 0)
    assert len(split_components(s)) == 2


def edge_labels(sk):
    return sorted(
        (subset_label(sk.fixed_points[e.p1 - 1]), subset_label(sk.fixed_points[e.p2 - 1]), e.dim) for e in sk.edges
    )


def test_five_by_two_skeleton():
    sk = skeleton(FIVE_BY_TWO)
    assert len(sk.fixed_points) == 10
    got = [(min(a, b), max(a, b), dim) for a, b, dim in edge_labels(sk)]
    two = {("13", "24"), ("24", "35")}
    pairs = "12-13 12-34 13-14 13-23 13-24 14-15 14-24 15-25 23-24 23-45 24-25 24-34 24-35 25-35 34-35 35-45"
    expected = [(*p.split("-"), 2 if tuple(p.split("-")) in two else 1) for p in pairs.split()]
    assert sorted(got) == sorted(expected)
    for p, b in enumerate(sk.fixed_points, start=1):
        assert sk.incident_dim(p) == 2 * direct_pair_count(b)
    dot = skeleton_to_dot(sk)
    nodes = [line for line in dot.splitlines() if re.match(r"\s+\d+ \[label=", line)]
    assert len(nodes) == 10 and dot.startswith("graph skeleton {")
    assert dot.count(" -- ") == len(sk.edges) + len(sk.rays)


def test_three_by_three_skeleton():
    sk = skeleton(THREE_BY_THREE)
    assert len(sk.fixed_points) == 5
    assert sorted((e.p1, e.p2) for e in sk.edges) == [(1, 3), (1, 5), (2, 3), (2, 4), (3, 4), (3, 5)]


def test_skeleton_weights_in_original_coordinates():
    sk = skeleton(RUNNING)
    sep = skeleton(separate(RUNNING)[0])
    assert len(sk.edges) == len(sep.edges)
    assert all(a.w1 == b.w1.reparametrize(sk.sigma) for a, b in zip(sk.edges, sep.edges))


@settings(max_examples=40, deadline=None)
@given(diagram_with_table(4, 3))
def test_curves_span_tangent_space(pair):
    d, _ = pair
    sep, _ = separate(d)
    index = FixedPointIndex(enumerate_fixed_points(sep))
    reports = {p: classify_curves(b, sep, index) for p, b in enumerate(index.bcts, start=1)}
    for p, rep in reports.items():
        assert rep.weights() == tangent_weights(rep.bct)
        for w, members in rep.by_weight.items():
            ks = Counter(c.curve_type for c in members)
            assert not (ks[CurveType.II] and ks[CurveType.III])
            assert len(members) - ks[CurveType.I] <= 1
        for c in rep.curves:
            assert c.compact == (c.curve_type is CurveType.I) == (c.endpoint is not None)
            if c.compact:
                mirror = reports[c.endpoint].pencil(c.weight_at_p.inverse())
                assert any(x.compact and x.endpoint == p for x in mirror)
        compact = {(c.endpoint, c.weight_at_p) for c in rep.curves if c.compact}
        assert {(index.index(s.result), s.weight(rep.bct)) for s in block_swaps(rep.bct)} == compact


@settings(max_examples=60, deadline=None)
@given(diagram_with_table(4, 3))
def test_surgeries_match_exhaustive_search(pair):
    _, b = pair
    mine = {(s.source, s.target, tuple(sorted(s.site)), s.shift) for s in connected_surgeries(b)[0]}
    assert mine == brute_force_surgeries(b)


@settings(max_examples=40, deadline=None)
@given(diagram_with_table(4, 3))
def test_type_three_curves_depend_on_margins_only(pair):
    d, _ = pair
    fps = enumerate_fixed_points(d)
    ws = {tuple(c.weight_at_p for c in nonsurgery_curves(b)) for b in fps}
    assert len(ws) == 1


@settings(max_examples=30, deadline=None)
@given(diagram_with_table(3, 3))
def test_skeleton_invariant_under_transitions(pair):
    d, _ = pair
    sk = skeleton(d)
    for k in legal_hw_positions(d):
        assert hw_isomorphic(sk, skeleton(hw_step(d, k)))


def test_projective_line_skeleton():
    from bowvar.brane import parse_diagram

    sk = skeleton(parse_diagram("/1/2\\1\\"))
    [edge] = sk.edges
    assert (edge.p1, edge.p2, edge.dim) == (1, 2, 1)
    assert edge.w1 == mono(2, u1=-1, u2=1) and edge.w2 == mono(2, u1=1, u2=-1)
    # the other tangent weight at each end is a noncompact ray
    assert [(r.p, r.w) for r in sk.rays] == [(1, mono(2, 1, u1=1, u2=-1)), (2, mono(2, 1, u1=-1, u2=1))]
