"""Brute-force counts of partitions with bounded part differences.

Nothing here touches a generating function: every count comes from walking
the partitions themselves, grouped by smallest part ``r`` and built from the
window of allowed parts ``r .. r + t``.
"""

from __future__ import annotations

import itertools
import os
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator

from .errors import BudgetExceeded

__all__ = [
    "DEFAULT_BUDGET",
    "FAMILIES",
    "PartitionFamily",
    "CountTable",
    "windowed_partitions",
    "count_bounded_diff",
    "count_distinct_bounded_diff",
    "count_odd_bounded_diff",
    "count_overpartition",
    "overline_choices",
    "overpartitions_of",
    "tabulate",
]

DEFAULT_BUDGET = int(os.environ.get("QPL_ORACLE_BUDGET", "80"))

FAMILIES = ("bounded-diff", "distinct-bounded-diff", "odd-bounded-diff",
            "overpartition-bounded-diff")


def _check(n: int, t: int, budget: int | None, min_t: int = 1) -> None:
    budget = DEFAULT_BUDGET if budget is None else budget
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if t < min_t:
        raise ValueError(f"t must be >= {min_t}, got {t}")
    if n > budget:
        raise BudgetExceeded(f"n={n} exceeds the enumeration budget {budget}")


def _fill(remaining: int, parts: list[int], distinct: bool) -> Iterator[tuple[int, ...]]:
    """Multisets (as non-increasing tuples) of ``parts`` summing to ``remaining``.

    ``parts`` is sorted descending.  With ``distinct`` each part is used at most once.
    """
    if remaining == 0:
        yield ()
        return
    if not parts:
        return
    head, rest = parts[0], parts[1:]
    top = 1 if distinct else remaining // head
    for k in range(min(top, remaining // head), -1, -1):
        for tail in _fill(remaining - k * head, rest, distinct):
            yield (head,) * k + tail


def windowed_partitions(n: int, t: int, *, distinct: bool = False,
                        odd: bool = False) -> Iterator[tuple[int, ...]]:
    """All partitions of ``n`` whose parts lie in ``[r, r + t]`` with smallest part ``r``.

    Partitions are yielded as non-increasing tuples, grouped by smallest part.
    """
    for r in range(1, n + 1):
        if odd and r % 2 == 0:
            continue
        window = [p for p in range(min(r + t, n), r, -1) if not odd or p % 2]
        # one copy of r is placed up front; repeats of r only when not distinct
        parts = window if distinct else window + [r]
        for tail in _fill(n - r, parts, distinct):
            yield tail + (r,)


@lru_cache(maxsize=None)
def _count_fill(remaining: int, parts: tuple[int, ...], distinct: bool) -> int:
    # same branching as _fill, counting leaves instead of building them
    if remaining == 0:
        return 1
    if not parts:
        return 0
    head, rest = parts[0], parts[1:]
    top = 1 if distinct else remaining // head
    return sum(_count_fill(remaining - k * head, rest, distinct)
               for k in range(min(top, remaining // head) + 1))


def _count_windowed(n: int, t: int, distinct: bool = False, odd: bool = False) -> int:
    total = 0
    for r in range(1, n + 1):
        if odd and r % 2 == 0:
            continue
        window = tuple(p for p in range(min(r + t, n), r, -1) if not odd or p % 2)
        if distinct:
            total += _count_fill(n - r, window, True)
        else:
            # at least one copy of r is already placed; more are free
            total += _count_fill(n - r, window + (r,), False)
    return total


def count_bounded_diff(n: int, t: int, budget: int | None = None) -> int:
    """p_t(n): partitions of n with largest minus smallest part at most t."""
    _check(n, t, budget)
    return _count_windowed(n, t)


def count_distinct_bounded_diff(n: int, t: int, budget: int | None = None) -> int:
    """pd_t(n): partitions of n into distinct parts, largest minus smallest at most t."""
    _check(n, t, budget, min_t=0)
    return _count_windowed(n, t, distinct=True)


def count_odd_bounded_diff(n: int, t: int, budget: int | None = None) -> int:
    """po_t(n): partitions of n into odd parts, largest minus smallest at most t."""
    _check(n, t, budget)
    return _count_windowed(n, t, odd=True)


def overline_choices(values: Iterable[int], locked: bool) -> Iterator[frozenset[int]]:
    """Admissible sets of overlined values for a partition with these distinct parts.

    Each distinct value may have its first occurrence overlined.  ``locked``
    (spread exactly ``t``) forbids overlining the largest value.
    """
    values = sorted(set(values))
    for mask in itertools.product((False, True), repeat=len(values)):
        chosen = frozenset(v for v, on in zip(values, mask) if on)
        if locked and values[-1] in chosen:
            continue
        yield chosen


def overpartitions_of(partition: tuple[int, ...], t: int) -> Iterator[frozenset[int]]:
    """Overline patterns admissible for one partition under window ``t``."""
    return overline_choices(partition, partition[0] - partition[-1] == t)


def count_overpartition(n: int, t: int, budget: int | None = None) -> dict[int, int]:
    """g_t(m, n) for every m with a nonzero count, as ``{m: count}``.

    Partitions are grouped by smallest part ``r`` and set of distinct parts;
    the overline patterns depend only on that set, and the number of
    partitions sharing it is counted by distributing the remaining weight
    over extra copies of its parts.
    """
    _check(n, t, budget)
    counts: Counter[int] = Counter()
    for r in range(1, n + 1):
        above = range(r + 1, min(r + t, n) + 1)
        for k in range(len(above) + 1):
            for extra in itertools.combinations(above, k):
                support = (r,) + extra
                rest = n - sum(support)
                if rest < 0:
                    continue
                ways = _count_fill(rest, tuple(reversed(support)), False)
                if not ways:
                    continue
                for chosen in overline_choices(support, support[-1] - r == t):
                    counts[len(chosen)] += ways
    return dict(sorted(counts.items()))


@dataclass(frozen=True)
class PartitionFamily:
    kind: str
    t: int

    def __post_init__(self):
        if self.kind not in FAMILIES:
            raise ValueError(f"unknown family {self.kind!r}; expected one of {FAMILIES}")
        min_t = 0 if self.kind == "distinct-bounded-diff" else 1
        if self.t < min_t:
            raise ValueError(f"{self.kind} needs t >= {min_t}")

    def count(self, n: int, budget: int | None = None):
        fn = {
            "bounded-diff": count_bounded_diff,
            "distinct-bounded-diff": count_distinct_bounded_diff,
            "odd-bounded-diff": count_odd_bounded_diff,
            "overpartition-bounded-diff": count_overpartition,
        }[self.kind]
        return fn(n, self.t, budget)


@dataclass
class CountTable:
    family: PartitionFamily
    rows: dict = field(default_factory=dict)

    def flat_rows(self) -> list[tuple[int, ...]]:
        """``(n, count)`` rows, or ``(n, m, count)`` for overpartitions."""
        out = []
        for n, v in self.rows.items():
            if isinstance(v, dict):
                out.extend((n, m, c) for m, c in v.items())
            else:
                out.append((n, v))
        return out


def tabulate(family: PartitionFamily, n_max: int, budget: int | None = None) -> CountTable:
    return CountTable(family, {n: family.count(n, budget) for n in range(1, n_max + 1)})
