from hypothesis import given, settings

from bowvar.brane import is_separated, separate
from bowvar.butterfly import (
    build_butterfly,
    build_butterfly_diagram,
    render_butterfly,
    tangent_class,
    tangent_class_oracle,
    taut_restrictions,
)
from bowvar.charring import KClass, check_self_dual
from bowvar.fixedpoints import TieDiagram, bct_to_ties, enumerate_fixed_points

from conftest import RUNNING, RUNNING_TIES, diagram_with_table, mono


def running_butterflies():
    return build_butterfly_diagram(TieDiagram(RUNNING, RUNNING_TIES))


def test_restriction_over_seventh_segment():
    # X_7 sits between V_5 and U_3 and is spanned by butterflies U_2, U_3 and U_5
    xi = taut_restrictions(running_butterflies())[7]
    expected = sum(
        (KClass.monomial(w) for w in [mono(5, 2, u2=1), mono(5, u3=1), mono(5, -1, u3=1), mono(5, -1, u5=1)]),
        KClass.zero(5),
    )
    assert xi == expected


def test_empty_butterfly_for_zero_charge():
    bf = build_butterfly(TieDiagram(RUNNING, RUNNING_TIES), 4)
    assert not any(bf.counts) and bf.edges == ()


def test_render_is_deterministic():
    bf = running_butterflies().butterflies[0]
    assert render_butterfly(bf) == render_butterfly(bf)
    assert render_butterfly(bf).count("*") == sum(bf.counts)


def test_cotangent_of_projective_line_by_hand():
    from bowvar.brane import parse_diagram

    d = parse_diagram("/1/2\\1\\")
    fps = enumerate_fixed_points(d)
    got = [tangent_class_oracle(bct_to_ties(b, d)) for b in fps]
    # [[0,1],[1,0]] then [[1,0],[0,1]]
    assert got == [
        sorted([mono(2, 1, u1=1, u2=-1), mono(2, u1=-1, u2=1)]),
        sorted([mono(2, u1=1, u2=-1), mono(2, 1, u1=-1, u2=1)]),
    ]


@settings(max_examples=80)
@given(diagram_with_table())
def test_butterfly_shape(pair):
    d, b = pair
    bd = build_butterfly_diagram(bct_to_ties(b, d))
    seg = d.segments()
    for k, total in enumerate(seg):
        assert sum(bf.counts[k] for bf in bd.butterflies) == total
    for k, xi in enumerate(taut_restrictions(bd)):
        assert xi.rank() == seg[k]
    for bf in bd.butterflies:
        vertices = set(bf.vertices)
        for e in bf.edges:
            for v in (e.src, e.dst):
                assert v is None or v in vertices
            if e.kind == "B":
                assert e.src[0] == e.dst[0] and e.src[1] - e.dst[1] == 1
            if e.kind in "AD":
                assert e.src[1] == e.dst[1] and abs(e.src[0] - e.dst[0]) == 1
            if e.kind == "C":
                assert e.src[1] - e.dst[1] == 1 and e.src[0] - e.dst[0] == 1
            if e.kind == "a":
                assert e.src is None and e.dst == (bf.position, 0)
            if e.kind == "b":
                assert e.dst is None and e.src == (bf.position + 1, 1)
        framing = [e.kind for e in bf.edges if e.kind in "ab"]
        assert len(framing) <= 2 and len(set(framing)) == len(framing)
        assert bool(framing) == any(bf.counts)


def closed_form(b):
    """Restrictions for a separated diagram, written straight from column partial sums."""
    n, m = b.rows, b.cols
    s = [[sum(b.bits[r][j] for r in range(i)) for j in range(m)] for i in range(n + 1)]

    def string(j, length, top):
        return sum((KClass.monomial(mono(m, top - t, **{f"u{j + 1}": 1})) for t in range(length)), KClass.zero(m))

    out = [KClass.zero(m)]
    out += [sum((string(j, s[k][j], k - n) for j in range(m)), KClass.zero(m)) for k in range(1, n + 1)]
    out += [sum((string(j, s[n][j], 0) for j in range(k, m)), KClass.zero(m)) for k in range(1, m + 1)]
    return out


@settings(max_examples=80)
@given(diagram_with_table())
def test_separated_restrictions(pair):
    d, b = pair
    sep, _ = separate(d)
    assert is_separated(sep)
    assert taut_restrictions(build_butterfly_diagram(bct_to_ties(b, sep))) == closed_form(b)


@settings(max_examples=80)
@given(diagram_with_table())
def test_tangent_class_is_an_honest_self_dual_character(pair):
    d, b = pair
    t = bct_to_ties(b, d)
    cls = tangent_class(t)
    assert all(c > 0 for _, c in cls.items())
    assert check_self_dual(tangent_class_oracle(t))
