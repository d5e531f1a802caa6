"""Digit-sequence domain: classification, replacement, bounded enumeration."""

import math
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from pierceleap.digits import (
    INF,
    DigitSeq,
    SequenceClass,
    ZcPrefix,
    classify,
    enumerate_zc,
    format_digit_seq,
    jump_positions,
    parse_digit_seq,
    replace_prefix,
)
from pierceleap.errors import (
    IllFormedReplacement,
    InsufficientPrefix,
    MalformedTail,
    NotMonotone,
    OutOfDomain,
    ThetaViolation,
)


def increasing_prefixes(min_size=1, max_size=10, max_jump=9):
    """Strictly increasing positive-integer tuples, built from positive jumps."""
    return st.lists(
        st.integers(1, max_jump), min_size=min_size, max_size=max_size
    ).map(lambda jumps: tuple(_running_sum(jumps)))


def _running_sum(jumps):
    total = 0
    for jump in jumps:
        total += jump
        yield total


class TestDigitSeq:
    def test_rejects_non_increasing(self):
        with pytest.raises(NotMonotone):
            DigitSeq((3, 3))
        with pytest.raises(NotMonotone):
            DigitSeq((5, 2))
        with pytest.raises(NotMonotone):
            DigitSeq((0, 1))

    def test_rejects_empty_extendable(self):
        with pytest.raises(NotMonotone):
            DigitSeq((), extendable=True)

    def test_entry_and_require(self):
        s = DigitSeq((3, 8, 21), extendable=True)
        assert s.entry(2) == 8
        with pytest.raises(InsufficientPrefix):
            s.entry(4)
        with pytest.raises(InsufficientPrefix):
            s.require(4)

    @given(increasing_prefixes())
    def test_position_lower_bound(self, prefix):
        # strict increase from a positive start forces entry k >= k
        for k, digit in enumerate(prefix, start=1):
            assert digit >= k


class TestClassify:
    def test_all_infinity_is_the_zero_expansion(self):
        report = classify([INF, INF, INF])
        assert report.kind is SequenceClass.SIGMA_0
        assert report.canonical

    def test_terminated_canonical(self):
        report = classify(DigitSeq((2, 5, 11)))
        assert report.kind is SequenceClass.SIGMA_N
        assert report.length == 3
        assert report.canonical

    def test_terminated_consecutive_tail_not_canonical(self):
        report = classify([2, 3, INF])
        assert report.kind is SequenceClass.SIGMA_N
        assert report.length == 2
        assert not report.canonical

    def test_raw_list_without_marker_is_a_prefix(self):
        report = classify([2, 3])
        assert report.kind is SequenceClass.SIGMA_INFINITY_PREFIX
        assert report.canonical

    def test_errors(self):
        with pytest.raises(NotMonotone):
            classify([3, 2])
        with pytest.raises(MalformedTail):
            classify([2, INF, 5])

    @given(st.integers(1, 10**6))
    def test_single_entries_always_canonical(self, digit):
        assert classify([digit, INF]).canonical
        assert classify(DigitSeq((digit,))).canonical


class TestReplacePrefix:
    def test_spec_examples(self):
        x = DigitSeq((3, 8, 21), extendable=True)
        assert replace_prefix(x, (1, 2)) == DigitSeq((1, 2, 21), extendable=True)
        with pytest.raises(IllFormedReplacement):
            replace_prefix(DigitSeq((3, 8), extendable=True), (25,))
        replaced = replace_prefix(DigitSeq((1, 3, 7)), (2, 5))
        assert replaced == DigitSeq((2, 5, 7))
        from pierceleap.codec import decode

        assert decode(replaced) == Fraction(29, 70)

    def test_replacement_must_increase(self):
        with pytest.raises(IllFormedReplacement):
            replace_prefix(DigitSeq((1, 2, 9), extendable=True), (5, 3))

    def test_terminated_needs_room(self):
        with pytest.raises(InsufficientPrefix):
            replace_prefix(DigitSeq((1, 3)), (2, 5))

    def test_empty_replacement_is_identity(self):
        x = DigitSeq((2, 7), extendable=True)
        assert replace_prefix(x, ()) == x

    @given(increasing_prefixes(min_size=2, max_size=8), st.data())
    def test_round_trip(self, prefix, data):
        x = DigitSeq(prefix, extendable=True)
        cut = data.draw(st.integers(1, len(prefix) - 1))
        room = prefix[cut] - 1
        if room < cut:
            return  # no strictly increasing replacement of this length fits
        tau = tuple(sorted(data.draw(
            st.sets(st.integers(1, room), min_size=cut, max_size=cut)
        )))
        replaced = replace_prefix(x, tau)
        assert replaced.prefix[:cut] == tau
        assert replaced.prefix[cut:] == prefix[cut:]
        assert replace_prefix(replaced, prefix[:cut]) == x


def brute_force_bounded_prefixes(c, depth):
    """Oracle: filter all strictly increasing tuples instead of searching."""
    top = depth + math.floor(Fraction(c))
    return [
        candidate
        for candidate in combinations(range(1, top + 1), depth)
        if all(candidate[i] <= (i + 1) + Fraction(c) for i in range(depth))
    ]


class TestEnumerateZc:
    def test_budget_below_one_pins_the_identity_prefix(self):
        out = enumerate_zc(Fraction(1, 2), 1, 5)
        assert [p.prefix.prefix for p in out] == [(1, 2, 3, 4, 5)]

    def test_budget_one_depth_three(self):
        out = enumerate_zc(1, 1, 3)
        assert [p.prefix.prefix for p in out] == [
            (1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4),
        ]

    def test_budget_zero_forces_identity(self):
        out = enumerate_zc(0, 1, 4)
        assert [p.prefix.prefix for p in out] == [(1, 2, 3, 4)]

    @pytest.mark.parametrize("c", [0, Fraction(1, 2), 1, Fraction(3, 2), 2, 3])
    @pytest.mark.parametrize("depth", [4, 7, 10])
    def test_matches_brute_force(self, c, depth):
        out = [p.prefix.prefix for p in enumerate_zc(c, 1, depth)]
        assert out == brute_force_bounded_prefixes(c, depth)
        assert out == sorted(set(out))

    @pytest.mark.parametrize("c", [1, 2, 3])
    @pytest.mark.parametrize("start_index", [2, 3, 5, 10])
    def test_start_index_is_immaterial(self, c, start_index):
        depth = 10
        baseline = [p.prefix.prefix for p in enumerate_zc(c, 1, depth)]
        shifted = [p.prefix.prefix for p in enumerate_zc(c, start_index, depth)]
        assert shifted == baseline

    def test_parameter_validation(self):
        with pytest.raises(OutOfDomain):
            enumerate_zc(-1, 1, 3)
        with pytest.raises(OutOfDomain):
            enumerate_zc(1, 0, 3)
        with pytest.raises(OutOfDomain):
            enumerate_zc(1, 4, 3)


class TestJumpPositions:
    def test_spec_examples(self):
        assert jump_positions(ZcPrefix(DigitSeq((1, 2, 4, 5), extendable=True), 1, 1)) == [3]
        assert jump_positions(ZcPrefix(DigitSeq((1, 2, 3, 4), extendable=True), 1, 1)) == []
        assert jump_positions(ZcPrefix(DigitSeq((2, 3, 4, 5), extendable=True), 1, 1)) == [1]

    def test_double_jump_repeats_the_position(self):
        p = ZcPrefix(DigitSeq((1, 2, 5, 6), extendable=True), 2, 1)
        assert jump_positions(p) == [3, 3]

    def test_excess_above_budget_raises(self):
        with pytest.raises(ThetaViolation):
            jump_positions(ZcPrefix(DigitSeq((1, 5), extendable=True), 1, 1))

    def test_injective_when_budget_fully_spent(self):
        prefixes = enumerate_zc(2, 1, 12)
        tuples = [tuple(jump_positions(p)) for p in prefixes]
        assert len(set(tuples)) == len(prefixes)


class TestSerialization:
    def test_round_trip_examples(self):
        for text in ("3,8,21,...", "3,8,21", "0", "1,...", "4"):
            assert format_digit_seq(parse_digit_seq(text)) == text

    def test_zero_is_the_empty_expansion(self):
        assert parse_digit_seq("0") == DigitSeq(())

    @given(increasing_prefixes(), st.booleans())
    def test_round_trip_property(self, prefix, extendable):
        seq = DigitSeq(prefix, extendable=extendable)
        assert parse_digit_seq(format_digit_seq(seq)) == seq

    def test_reject_garbage(self):
        with pytest.raises(NotMonotone):
            parse_digit_seq("3,two,9")
