"""Order-k sorter: one statistics tree per context, chained by rank codes.

Maintains a statistics tree per distinct k-tuple of preceding elements. Each
element is searched only in its context's tree, so search costs track the
order-k entropy rather than the order-0 entropy. Two dictionaries realize
the context lookup: RankDictionary (element -> first-appearance rank, the
only dictionary that compares elements) and CodeDictionary (gamma-coded rank
tuple -> tree, bit-string comparisons only). A repeat (k+1)-tuple never
touches either dictionary: the quadruple found by the search carries a
handle to the successor context's tree.

Finalization collects every quadruple plus one dummy per warm-up position,
sorts the groups by key with the instrumented merge sort, and concatenates
index lists; equal keys' lists are merged in increasing index order so the
permutation is stable.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from math import log2
from typing import Optional, Sequence

from . import entropy
from .bst import CodeDictionary, RankDictionary, avl_height_bound
from .comparator import (PHASE_MERGE, CountingComparator, delta)
from .gamma import encode_tuple
from .intmath import ceil_log2
from .kernel import EQUAL, PREDECESSOR, get_kernel
from .msort import mergesort_perm
from .sort0 import SortOutcome, comparison_budget, invert


@dataclass(frozen=True)
class BudgetBreakdown:
    """Exactly computable comparison bounds for one (sequence, order) run.

    All fields are derived from the input alone by direct scans, independent
    of the sorter. total = context_total + b1 + merge bounds binary_count.
    """

    order: int
    context_total: int
    b1_ops: int
    b1: int
    merge_groups: int
    merge: int

    @property
    def total(self) -> int:
        return self.context_total + self.b1 + self.merge


def context_sequences(seq: Sequence, order: int) -> dict[tuple, list]:
    """Successor sequence per order-tuple context, in occurrence order."""
    table: dict[tuple, list] = defaultdict(list)
    for i in range(order, len(seq)):
        table[tuple(seq[i - order:i])].append(seq[i])
    return dict(table)


def context_budget_sum(seq: Sequence, order: int) -> int:
    """Sum of per-context sort0 budgets; bounds search+verify comparisons."""
    return sum(comparison_budget(part)
               for part in context_sequences(seq, order).values())


def budget_breakdown(seq: Sequence, order: int) -> BudgetBreakdown:
    m = len(seq)
    distinct = len(set(seq))
    new_tuples = 0
    if m > order:
        seen: set = set()
        for i in range(order, m):
            seen.add(tuple(seq[i - order:i + 1]))
        new_tuples = len(seen)
    dummies = min(order, m)
    b1_ops = (order if m > order else 0) + new_tuples
    per_op = avl_height_bound(distinct) + 1
    groups = new_tuples + dummies
    merge = groups * ceil_log2(groups) + groups if groups > 1 else 0
    return BudgetBreakdown(
        order=order,
        context_total=context_budget_sum(seq, order),
        b1_ops=b1_ops,
        b1=b1_ops * per_op,
        merge_groups=groups,
        merge=merge,
    )


def _merge_groups(groups: list[tuple], cmp: CountingComparator) -> list[int]:
    """Sort (key, index list) groups by key and flatten stably.

    Groups are sorted with the instrumented merge sort; adjacent equal keys
    (one comparison each: sortedness already gives a <= b) get their index
    lists pooled and ordered by position, which is integer bookkeeping, not
    an element comparison.
    """
    def leq(a, b):
        return cmp.leq(a[0], b[0], PHASE_MERGE)

    order = mergesort_perm(groups, leq)
    permutation: list[int] = []
    run: list[int] = []
    prev_key = None
    for gi in order:
        key, indices = groups[gi]
        if run and cmp.leq(key, prev_key, PHASE_MERGE):
            run.extend(indices)
        else:
            run.sort()
            permutation.extend(run)
            run = list(indices)
        prev_key = key
    run.sort()
    permutation.extend(run)
    return permutation


def sortk(seq: Sequence, order: int = 0,
          comparator: Optional[CountingComparator] = None,
          kernel_name: Optional[str] = None) -> SortOutcome:
    """Stable-sort *seq* using order-*order* context trees."""
    m = len(seq)
    if m == 0:
        raise ValueError("sequence must be non-empty")
    if order < 0:
        raise ValueError("order must be >= 0")
    cmp = comparator if comparator is not None else CountingComparator()
    before = cmp.snapshot()
    kern = get_kernel(kernel_name)
    tree_cls = kern.StatsTree

    b1 = RankDictionary(cmp)
    b2 = CodeDictionary()

    def tree_for(ranks: list[int]) -> object:
        code = encode_tuple(ranks)
        tree = b2.get(code)
        if tree is None:
            tree = tree_cls(context_ranks=ranks[1:])
            b2.insert(code, tree)
        return tree

    def query_black_box(current, s):
        """Rank s via the element dictionary, then fetch or create the
        successor context's tree via the code dictionary."""
        rank, _ = b1.lookup_or_insert(s)
        if order == 0:
            return tree_for([])
        return tree_for(list(current.context_ranks) + [rank])

    if m > order:
        boot_ranks = [b1.lookup_or_insert(seq[k])[0] for k in range(order)]
        current = tree_for(boot_ranks)
        for i in range(order + 1, m + 1):
            s = seq[i - 1]
            if len(current) == 0:
                nxt = query_black_box(current, s)
                current.insert(s, i, 1, nxt)
                current = nxt
                continue
            j, rel, _, _ = current.descend(s, cmp)
            if rel == EQUAL:
                current.increment(j)
                current.append(i, j)
                current = current.handle_at(j)
            else:
                nxt = query_black_box(current, s)
                current.insert(s, i, j + 1 if rel == PREDECESSOR else j, nxt)
                current = nxt

    groups: list[tuple] = []
    for _, tree in b2:
        for key, _, indices, _ in tree.quadruples():
            groups.append((key, indices))
    for k in range(min(order, m)):
        groups.append((seq[k], [k + 1]))
    permutation = _merge_groups(groups, cmp)

    breakdown = budget_breakdown(seq, order)
    warnings: tuple[str, ...] = ()
    n = len(b1) if m > order else len(set(seq))
    if n > 1 and (n ** (order + 1)) * log2(n) > m:
        warnings = (
            f"n^(order+1)*log2(n) = {(n ** (order + 1)) * log2(n):.0f} "
            f"exceeds m = {m}; entropy bound not guaranteed",
        )
    return SortOutcome(
        permutation=permutation,
        inverse=invert(permutation),
        ledger=delta(before, cmp.snapshot()),
        budget=breakdown.total,
        h0=entropy.h_order(seq, 0),
        order=order,
        context_budget=breakdown.context_total,
        h_order=entropy.h_order(seq, order),
        warnings=warnings,
    )
