import itertools
from collections import Counter

import pytest

from qpartlab.errors import BudgetExceeded
from qpartlab.oracle import (CountTable, PartitionFamily, count_bounded_diff,
                             count_distinct_bounded_diff, count_odd_bounded_diff,
                             count_overpartition, overpartitions_of, tabulate,
                             windowed_partitions)


def all_partitions(n, largest=None):
    """Every partition of n as a non-increasing tuple (filter-based reference)."""
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in all_partitions(n - first, first):
            yield (first,) + rest


def filtered(n, t, distinct=False, odd=False):
    out = []
    for p in all_partitions(n):
        if p[0] - p[-1] > t:
            continue
        if distinct and len(set(p)) != len(p):
            continue
        if odd and any(x % 2 == 0 for x in p):
            continue
        out.append(p)
    return out


def test_examples():
    assert count_bounded_diff(1, 7) == 1
    assert count_bounded_diff(4, 2) == 5
    assert count_bounded_diff(4, 1) == 4
    assert count_distinct_bounded_diff(1, 0) == 1
    assert count_distinct_bounded_diff(6, 2) == 3
    assert count_distinct_bounded_diff(5, 2) == 2
    assert count_odd_bounded_diff(2, 2) == 1
    assert count_odd_bounded_diff(5, 2) == 3
    assert count_odd_bounded_diff(4, 2) == 2
    assert count_overpartition(2, 1) == {0: 2, 1: 2}
    assert count_overpartition(1, 4) == {0: 1, 1: 1}


def test_explicit_lists():
    assert sorted(windowed_partitions(4, 2)) == sorted([(4,), (3, 1), (2, 2), (2, 1, 1),
                                                        (1, 1, 1, 1)])
    assert sorted(windowed_partitions(6, 2, distinct=True)) == [(3, 2, 1), (4, 2), (6,)]
    assert sorted(windowed_partitions(4, 2, odd=True)) == [(1, 1, 1, 1), (3, 1)]


@pytest.mark.parametrize("n", range(1, 16))
@pytest.mark.parametrize("t", [0, 1, 2, 4])
def test_windowed_matches_filter(n, t):
    for distinct, odd in [(False, False), (True, False), (False, True)]:
        if t == 0 and not distinct:
            continue
        got = sorted(windowed_partitions(n, t, distinct=distinct, odd=odd))
        assert got == sorted(filtered(n, t, distinct, odd))


@pytest.mark.parametrize("n", range(1, 20))
def test_counts_match_listing(n):
    for t in range(1, 5):
        assert count_bounded_diff(n, t) == len(filtered(n, t))
        assert count_odd_bounded_diff(n, t) == len(filtered(n, t, odd=True))
    for t in range(0, 5):
        assert count_distinct_bounded_diff(n, t) == len(filtered(n, t, distinct=True))


def literal_overpartitions(n, t):
    """Enumerate overpartitions as (partition, overlined-set) pairs, then filter."""
    counts = Counter()
    for p in filtered(n, t):
        values = sorted(set(p))
        for mask in itertools.product((0, 1), repeat=len(values)):
            over = {v for v, on in zip(values, mask) if on}
            if p[0] - p[-1] == t and p[0] in over:
                continue
            counts[len(over)] += 1
    return dict(sorted(counts.items()))


@pytest.mark.parametrize("n", range(1, 15))
@pytest.mark.parametrize("t", [1, 2, 3])
def test_overpartition_matches_literal(n, t):
    assert count_overpartition(n, t) == literal_overpartitions(n, t)


def test_overpartition_total_at_z_one():
    for n in range(1, 12):
        total = sum(len(list(overpartitions_of(p, 2))) for p in windowed_partitions(n, 2))
        assert sum(count_overpartition(n, 2).values()) == total


def test_overpartition_m_bounded_by_distinct_parts():
    for n in range(1, 25):
        for t in (1, 2, 3):
            max_distinct = max(len(set(p)) for p in windowed_partitions(n, t))
            assert max(count_overpartition(n, t)) <= max_distinct


@pytest.mark.parametrize("t", range(1, 6))
def test_odd_window_parity(t):
    for n in range(1, 61):
        assert count_odd_bounded_diff(n, 2 * t) == count_odd_bounded_diff(n, 2 * t + 1)


def test_monotone_in_t():
    for n in range(1, 41):
        for t in range(1, 6):
            assert count_bounded_diff(n, t) <= count_bounded_diff(n, t + 1)
            assert count_odd_bounded_diff(n, t) <= count_odd_bounded_diff(n, t + 1)
        for t in range(0, 6):
            assert count_distinct_bounded_diff(n, t) <= count_distinct_bounded_diff(n, t + 1)


def test_budget():
    assert count_bounded_diff(80, 2) > 0
    with pytest.raises(BudgetExceeded):
        count_bounded_diff(81, 2)
    with pytest.raises(BudgetExceeded):
        count_overpartition(30, 2, budget=20)
    assert count_distinct_bounded_diff(100, 3, budget=100) >= 1


def test_family_and_table():
    with pytest.raises(ValueError):
        PartitionFamily("bounded-diff", 0)
    PartitionFamily("distinct-bounded-diff", 0)
    table = tabulate(PartitionFamily("overpartition-bounded-diff", 1), 2)
    assert isinstance(table, CountTable)
    assert table.flat_rows() == [(1, 0, 1), (1, 1, 1), (2, 0, 2), (2, 1, 2)]
    assert tabulate(PartitionFamily("bounded-diff", 1), 1).flat_rows() == [(1, 1)]
