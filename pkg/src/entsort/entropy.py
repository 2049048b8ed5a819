"""Empirical entropy of a sequence, by context order.

This is measurement code: it may hash and compare elements freely, and none
of its work is charged to a comparison ledger.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from math import log2
from typing import Iterable, Sequence


def h0(counts: Iterable[int]) -> float:
    """Zeroth-order entropy in bits per element, from a frequency multiset."""
    counts = list(counts)
    if not counts:
        raise ValueError("at least one frequency is required")
    if any(c < 1 for c in counts):
        raise ValueError("frequencies must be positive integers")
    m = sum(counts)
    return sum(c / m * log2(m / c) for c in counts)


def _context_counts(seq: Sequence, order: int) -> dict[tuple, Counter]:
    """Successor frequency table per order-length context tuple."""
    table: dict[tuple, Counter] = defaultdict(Counter)
    m = len(seq)
    for i in range(order, m):
        table[tuple(seq[i - order:i])][seq[i]] += 1
    return table


def h_order(seq: Sequence, order: int) -> float:
    """Order-k entropy: expected uncertainty about an element given the k
    elements preceding it. A context that only occurs as the sequence's
    suffix contributes nothing (it has no successor)."""
    m = len(seq)
    if m == 0:
        raise ValueError("sequence must be non-empty")
    if order < 0:
        raise ValueError("order must be >= 0")
    if order == 0:
        return h0(Counter(seq).values())
    if order >= m:
        return 0.0
    table = _context_counts(seq, order)
    return sum(sum(c.values()) * h0(c.values()) for c in table.values()) / m


@dataclass
class EntropyProfile:
    """Entropy at orders 0..max_order plus the per-context breakdown.

    context_tables[k] maps each k-tuple context to (successor count, H0 of
    the successor distribution).
    """

    m: int
    n: int
    h: list[float]
    context_tables: list[dict[tuple, tuple[int, float]]] = field(repr=False)

    @property
    def max_order(self) -> int:
        return len(self.h) - 1

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "h": list(self.h),
            "contexts_per_order": [len(t) for t in self.context_tables],
        }


def profile(seq: Sequence, max_order: int) -> EntropyProfile:
    """Entropy profile H0..H_max_order with context tables."""
    m = len(seq)
    if m == 0:
        raise ValueError("sequence must be non-empty")
    if not 0 <= max_order <= m:
        raise ValueError("max_order must be in [0, len(seq)]")
    freqs = Counter(seq)
    h: list[float] = []
    tables: list[dict[tuple, tuple[int, float]]] = []
    for k in range(max_order + 1):
        if k == 0:
            tables.append({(): (m, h0(freqs.values()))})
            h.append(tables[0][()][1])
            continue
        table = _context_counts(seq, k)
        entry = {ctx: (sum(c.values()), h0(c.values()))
                 for ctx, c in table.items()}
        tables.append(entry)
        h.append(sum(size * bits for size, bits in entry.values()) / m)
    return EntropyProfile(m=m, n=len(freqs), h=h, context_tables=tables)
