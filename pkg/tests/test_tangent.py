import pytest
from hypothesis import given, settings

from bowvar.brane import charges, separate
from bowvar.butterfly import tangent_class_oracle
from bowvar.charring import check_self_dual
from bowvar.errors import SigmaLengthMismatch
from bowvar.fixedpoints import Bct, bct_to_ties, enumerate_fixed_points
from bowvar.oracles import direct_pair_count
from bowvar.tangent import (
    dimension,
    pair_count_from_margins,
    pair_table,
    tangent_weights,
    tangent_weights_general,
)

from conftest import FIVE_BY_TWO, RUNNING, RUNNING_TABLE, THREE_BY_THREE, diagram_with_table, mono


def test_pair_table_small():
    pt = pair_table(Bct.from_rows([(0, 1, 1), (1, 0, 1)]))
    assert pt.pairs01 == ((1, 1, 2), (1, 1, 3), (2, 2, 3))
    assert pt.pairs10 == ((2, 1, 2),)
    assert pt.partial(2, 3) == 2


def test_pair_counts_by_hand():
    assert direct_pair_count(RUNNING_TABLE) == 8
    assert pair_count_from_margins(charges(RUNNING)) == 8
    assert pair_count_from_margins(charges(FIVE_BY_TWO)) == 2  # four tangent weights at each point
    # 3x3 table with margins r=(2,1,2), c=(2,1,2): [[1,0,1],[0,1,0],[1,0,1]] has pairs in rows 1..3: 1 + 1 + 1
    assert pair_count_from_margins(charges(THREE_BY_THREE)) == 3


def test_sigma_length_checked():
    with pytest.raises(SigmaLengthMismatch):
        tangent_weights_general(RUNNING_TABLE, (0, 0))


def test_single_pair_by_hand():
    # one 01-pair in row 1 with both columns still empty above: u1/u2 * h and u2/u1
    b = Bct.from_rows([(0, 1), (1, 0)])
    assert tangent_weights(b) == sorted([mono(2, 1, u1=1, u2=-1), mono(2, u1=-1, u2=1)])
    assert dimension(b) == 2


@settings(max_examples=100)
@given(diagram_with_table(4, 4))
def test_formula_matches_full_expansion(pair):
    d, b = pair
    sigma = separate(d)[1].sigma
    fast = tangent_weights_general(b, sigma)
    assert fast == tangent_class_oracle(bct_to_ties(b, d))
    assert check_self_dual(fast)
    assert len(fast) == dimension(b)


@settings(max_examples=60)
@given(diagram_with_table(4, 4))
def test_pair_count_depends_only_on_margins(pair):
    d, b = pair
    expected = pair_count_from_margins(b.margins)
    assert {direct_pair_count(x) for x in enumerate_fixed_points(d)} == {expected}


def test_pairs_at_subset_13():
    # rows 1 and 3 hold their 1 in the second column
    pt = pair_table(Bct.from_rows([(0, 1), (1, 0), (0, 1), (1, 0), (1, 0)]))
    assert pt.pairs01 == ((1, 1, 2), (3, 1, 2))
    assert pt.pairs10 == ((2, 1, 2), (4, 1, 2), (5, 1, 2))


def test_single_pair_contribution_in_running_example():
    sigma = separate(RUNNING)[1].sigma
    ws = tangent_weights_general(RUNNING_TABLE, sigma)
    assert mono(5, 3, u1=1, u3=-1) in ws and mono(5, -2, u3=1, u1=-1) in ws
