import random

import pytest
from hypothesis import given, settings, strategies as st

from tailelim.cubes import Cover, Cube, equivalent
from tailelim.engine import (AnchorPolicy, EndReason, IterationRecord, Mode,
                             end_condition, removable_candidates, select_removal,
                             te_minimize)
from tailelim.expand import expand_cover
from tailelim.temap import build_te_map

C = Cube.from_string

EXAMPLE_4 = Cover.from_strings(4, ["0-00", "010-", "-101", "11-1", "1-11"])
EXAMPLE_3 = Cover.from_strings(3, ["0-0", "01-", "-11"])


def test_end_condition_examples():
    assert end_condition(build_te_map(Cover.from_strings(4, ["0-00", "-101", "1-11"]))) \
        is EndReason.ALL_QUOTIENTS_POSITIVE
    assert end_condition(build_te_map(EXAMPLE_4)) is None
    # A' + B' + A + B: every cube is fully overlapped twice.
    v = Cover.from_strings(2, ["0-", "-0", "1-", "-1"])
    assert build_te_map(v).quotients == [0, 0, 0, 0]
    assert end_condition(build_te_map(v)) is EndReason.ALL_QUOTIENTS_EQUAL


def test_select_removal_golden_map():
    m = build_te_map(EXAMPLE_4)
    assert removable_candidates(m) == [1, 3]
    assert select_removal(m, Mode.FAITHFUL, EXAMPLE_4) == C("010-")
    assert select_removal(m, Mode.SAFE, EXAMPLE_4) == C("010-")


def test_second_iteration_single_candidate():
    v = Cover.from_strings(4, ["0-00", "-101", "11-1", "1-11"])
    m = build_te_map(v)
    assert [m.implicants[i] for i in removable_candidates(m)] == [C("11-1")]
    assert select_removal(m, Mode.FAITHFUL, v) == C("11-1")


def test_no_selective_overlaps_a_tail():
    # Tail is 0-11 (quotient 1), selective is 000- (quotient -1); they are disjoint.
    v = Cover.from_strings(4, ["-000", "0-00", "0-11", "00-1", "000-"])
    m = build_te_map(v)
    assert m.quotients == [0, 0, 1, 0, -1]
    assert removable_candidates(m) == []
    assert select_removal(m, Mode.FAITHFUL, v) is None
    trace = te_minimize(v, Mode.FAITHFUL)
    assert trace.end_reason is EndReason.NO_REMOVABLE_SELECTIVE
    assert trace.final == v


def test_golden_four_variable_run():
    trace = te_minimize(EXAMPLE_4, Mode.FAITHFUL)
    assert trace.final.encodings() == ["0-00", "-101", "1-11"]
    assert trace.removals == [C("010-"), C("11-1")]
    assert trace.end_reason is EndReason.ALL_QUOTIENTS_POSITIVE
    assert trace.equivalent_to_input
    assert [s.map.quotients for s in trace.steps] == [[1, 0, 0, 0, 1], [2, 1, 0, 1], [2, 2, 2]]
    assert [s.map.totals for s in trace.steps] == [[1, 2, 2, 2, 1], [0, 1, 2, 1], [0, 0, 0]]


def test_golden_three_variable_run():
    trace = te_minimize(EXAMPLE_3, Mode.FAITHFUL)
    assert trace.final.encodings() == ["0-0", "-11"]
    assert trace.removals == [C("01-")]
    assert equivalent(trace.final, EXAMPLE_3)


def test_single_cube():
    trace = te_minimize(Cover.from_strings(3, ["0-0"]))
    assert trace.removals == []
    assert trace.end_reason is EndReason.ALL_QUOTIENTS_POSITIVE
    assert len(trace.steps) == 1


def test_empty_cover_rejected():
    with pytest.raises(ValueError):
        te_minimize(Cover(3))


def test_expand_flag():
    trace = te_minimize(Cover.from_strings(3, ["0-0", "-11"]), Mode.FAITHFUL, expand=True)
    assert set(trace.initial.encodings()) == {"0-0", "01-", "-11"}
    assert set(trace.final.encodings()) == {"0-0", "-11"}


def test_iteration_record_requires_exactly_one_outcome():
    m = build_te_map(EXAMPLE_3)
    with pytest.raises(ValueError):
        IterationRecord(EXAMPLE_3, m, (), (), ())
    with pytest.raises(ValueError):
        IterationRecord(EXAMPLE_3, m, (), (), (), removed=C("01-"),
                        end_reason=EndReason.ALL_QUOTIENTS_EQUAL)


def test_faithful_can_break_the_function_and_reports_it():
    # B'C + A'C + A'B' + ABC': ABC' overlaps nothing, the other three tie at
    # quotient 0 and are tails and selectives at once.  Removing B'C loses 101.
    v = Cover.from_strings(3, ["-01", "0-1", "00-", "110"])
    trace = te_minimize(v, Mode.FAITHFUL)
    assert trace.removals == [C("-01")]
    assert not trace.equivalent_to_input
    safe = te_minimize(v, Mode.SAFE)
    assert safe.equivalent_to_input
    assert safe.end_reason is EndReason.NO_SAFE_REMOVAL
    assert safe.steps[-1].skipped_unsafe == (C("-01"), C("0-1"), C("00-"))


@st.composite
def prime_covers(draw):
    n = draw(st.integers(2, 5))
    on = draw(st.sets(st.integers(0, (1 << n) - 1), min_size=1))
    return expand_cover(Cover(n, tuple(Cube.minterm(n, m) for m in sorted(on))))


@settings(max_examples=150, deadline=None)
@given(prime_covers(), st.sampled_from(list(AnchorPolicy)))
def test_safe_mode_always_equivalent(v, anchor):
    trace = te_minimize(v, Mode.SAFE, anchor)
    assert trace.equivalent_to_input
    assert equivalent(trace.final, v)


@settings(max_examples=150, deadline=None)
@given(prime_covers(), st.sampled_from(list(Mode)), st.sampled_from(list(AnchorPolicy)))
def test_trace_invariants(v, mode, anchor):
    trace = te_minimize(v, mode, anchor)
    assert len(trace.steps) <= len(v)
    assert set(trace.final.cubes) <= set(v.cubes)
    assert len(trace.removals) == len(v) - len(trace.final)
    assert trace.steps[-1].end_reason is not None
    assert all(s.end_reason is None for s in trace.steps[:-1])
    assert te_minimize(v, mode, anchor) == trace


def test_any_essential_anchor_widens_candidates():
    rng = random.Random(2)
    widened = 0
    for _ in range(300):
        n = 4
        on = [m for m in range(16) if rng.random() < 0.5]
        if not on:
            continue
        v = expand_cover(Cover(n, tuple(Cube.minterm(n, m) for m in on)))
        m = build_te_map(v)
        tail = set(removable_candidates(m, AnchorPolicy.TAIL_ONLY))
        wide = set(removable_candidates(m, AnchorPolicy.ANY_ESSENTIAL))
        assert tail <= wide
        widened += wide > tail
    assert widened > 0
