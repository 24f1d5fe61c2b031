import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bowvar.brane import (
    BraneDiagram,
    BraneKind,
    Margins,
    charges,
    format_diagram,
    hw_step,
    is_separated,
    legal_hw_positions,
    ns5_right_counts,
    parse_diagram,
    separate,
    separated_from_margins,
)
from bowvar.errors import IntegerOverflow, MalformedDiagram, NegativeMultiplicity, SameKind

from conftest import FIVE_BY_TWO, RUNNING, diagrams


def test_parse_trivial():
    d = parse_diagram("/0\\")
    assert format_diagram(d) == "/0\\"
    assert charges(d) == Margins((0,), (0,))


def test_ascii_aliases_and_whitespace():
    assert parse_diagram("s1s2s3s4s5b2b") == FIVE_BY_TWO
    assert parse_diagram(" /1 /2/3/4/5 \\2\\ ") == FIVE_BY_TWO
    assert format_diagram(FIVE_BY_TWO, ascii_aliases=True) == "s1s2s3s4s5b2b"


@pytest.mark.parametrize("text", ["", "1/", "/1", "//", "/1 2/", "/x/", "/01/", "/-1/"])
def test_malformed(text):
    with pytest.raises((MalformedDiagram, NegativeMultiplicity)):
        parse_diagram(text)


def test_overflow_rejected():
    with pytest.raises(IntegerOverflow):
        parse_diagram(f"/{2**63}\\")


def test_running_example_charges():
    # hand count: r_i = d_right - d_left + #D5 to the left, c_j = d_left - d_right + #NS5 to the right
    assert charges(RUNNING) == Margins((2, 1, 1, 2, 3, 2), (5, 2, 2, 0, 2))


def test_hw_step_by_hand():
    # /1\1/ : swap the D5 and the right NS5; middle becomes 1 + 0 + 1 - 1
    d = parse_diagram("/1\\1/")
    assert hw_step(d, 2) == parse_diagram("/1/1\\")
    with pytest.raises(SameKind):
        hw_step(FIVE_BY_TWO, 1)
    with pytest.raises(NegativeMultiplicity):
        hw_step(parse_diagram("/0\\3/"), 2)


def test_separate_running_example():
    sep, trace = separate(RUNNING)
    assert format_diagram(sep) == "/2/3/4/6/9/11\\6\\4\\2\\2\\"
    assert trace.sigma == (5, 4, 1, 0, 0)
    assert trace.replay(RUNNING) == sep


def test_ns5_right_counts():
    assert ns5_right_counts(parse_diagram("\\1/1\\1/0\\")) == (2, 1, 0)


@given(diagrams())
def test_round_trip(d):
    assert parse_diagram(format_diagram(d)) == d
    assert parse_diagram(format_diagram(d, ascii_aliases=True)) == d


@given(diagrams())
def test_hw_conserves_charges_and_is_involutive(d):
    for k in legal_hw_positions(d):
        e = hw_step(d, k)
        assert charges(e) == charges(d)
        assert hw_step(e, k) == d


@given(diagrams())
def test_separate_is_idempotent(d):
    sep, trace = separate(d)
    assert is_separated(sep)
    assert charges(sep) == charges(d)
    again, trace2 = separate(sep)
    assert again == sep and trace2.steps == () and not any(trace2.sigma)
    assert sep == separated_from_margins(charges(d))


@settings(max_examples=50)
@given(st.lists(st.sampled_from(list(BraneKind)), min_size=2, max_size=6))
def test_sigma_counts_ns5_to_the_right(kinds):
    d = BraneDiagram(tuple(kinds), (5,) * (len(kinds) - 1))
    sigma = ns5_right_counts(d)
    assert len(sigma) == d.m
    assert list(sigma) == sorted(sigma, reverse=True)


def test_separate_single_step():
    sep, trace = separate(parse_diagram("\\0/1\\"))
    assert format_diagram(sep) == "/2\\1\\"
    assert trace.sigma == (1, 0) and len(trace.steps) == 1
