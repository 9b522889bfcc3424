import pytest
from hypothesis import given, strategies as st

from wittk.errors import DomainError, UsageError
from wittk.truncation import (
    TruncationSet,
    p_free_part,
    p_typical_lengths,
    p_typical_set,
    ts_divide,
    ts_interval,
)


def test_interval():
    assert ts_interval(4).elements == (1, 2, 3, 4)
    assert ts_interval(1).elements == (1,)
    assert ts_interval(0).elements == ()


def test_divide():
    assert ts_divide(ts_interval(8), 2) == ts_interval(4)
    assert ts_divide(ts_interval(8), 3) == TruncationSet.of([1, 2])
    assert ts_divide(ts_interval(4), 5) == ts_interval(0)


def test_p_typical_lengths():
    assert p_typical_lengths(ts_interval(4), 2) == {1: 3, 3: 1}
    assert p_typical_lengths(ts_interval(3), 3) == {1: 2, 2: 1}
    assert p_typical_lengths(ts_interval(1), 5) == {1: 1}


def test_rejects_sets_not_closed_under_division():
    with pytest.raises(DomainError):
        TruncationSet.of([1, 4])
    with pytest.raises(DomainError):
        TruncationSet.of([0, 1])


@pytest.mark.parametrize("text,expected", [
    ("1..6", (1, 2, 3, 4, 5, 6)),
    ("{1, 2, 4}", (1, 2, 4)),
    ("{}", ()),
])
def test_parse(text, expected):
    S = TruncationSet.parse(text)
    assert S.elements == expected
    assert TruncationSet.parse(str(S)) == S


@pytest.mark.parametrize("text", ["1..", "{1,,2}", "abc", "{1;2}"])
def test_parse_malformed(text):
    with pytest.raises(UsageError):
        TruncationSet.parse(text)


def test_p_typical_helpers():
    assert p_typical_set(3, 3).elements == (1, 3, 9)
    assert p_free_part(24, 2) == (3, 3)
    assert p_free_part(7, 3) == (0, 7)


def divisor_closed_sets():
    return st.lists(st.integers(1, 40), max_size=6).map(
        lambda xs: TruncationSet.of({d for x in xs for d in range(1, x + 1) if x % d == 0})
    )


@given(divisor_closed_sets(), st.integers(1, 6), st.integers(1, 6))
def test_divide_laws(S, a, b):
    assert ts_divide(S, 1) == S
    assert ts_divide(S, a).issubset(S)
    assert ts_divide(ts_divide(S, a), b) == ts_divide(S, a * b)


@given(divisor_closed_sets(), st.sampled_from([2, 3, 5, 7]))
def test_lengths_partition_the_set(S, p):
    assert sum(p_typical_lengths(S, p).values()) == len(S)
