"""Shared fixtures and oracles for the test suite."""

from __future__ import annotations

import random

import pytest

from entsort.errors import NavigationError
from entsort.intmath import ceil_div, ceil_log2
from entsort.kernel import available_kernels, get_kernel


@pytest.fixture(params=available_kernels())
def kernel(request):
    """Each available kernel module (pure Python always; C when built)."""
    return get_kernel(request.param)


def stable_perm(seq) -> list[int]:
    """Reference stable sorting permutation, 1-based (independent oracle)."""
    return sorted(range(1, len(seq) + 1), key=lambda i: seq[i - 1])


class Spy:
    """Element wrapper that counts order comparisons made on it.

    Order dunders bump a class counter; equality and hashing stay free so
    measurement code (Counter-based entropy) is not charged. Used to prove
    that every order query flows through the instrumented comparator.
    """

    order_comparisons = 0

    __slots__ = ("value",)

    def __init__(self, value):
        self.value = value

    def __le__(self, other):
        Spy.order_comparisons += 1
        return self.value <= other.value

    def __lt__(self, other):
        Spy.order_comparisons += 1
        return self.value < other.value

    def __ge__(self, other):
        Spy.order_comparisons += 1
        return self.value >= other.value

    def __gt__(self, other):
        Spy.order_comparisons += 1
        return self.value > other.value

    def __eq__(self, other):
        return isinstance(other, Spy) and self.value == other.value

    def __hash__(self):
        return hash(self.value)

    def __repr__(self):
        return f"Spy({self.value!r})"

    @classmethod
    def reset(cls):
        cls.order_comparisons = 0


class FlatStatsTree:
    """Brute-force flat-list twin of the statistics tree (test oracle).

    Every operation is a linear scan straight off the definitions; used to
    check the real trees on randomized operation sequences.
    """

    def __init__(self):
        self.rows: list[list] = []  # [key, weight, indices, next]

    def __len__(self):
        return len(self.rows)

    @property
    def total_weight(self):
        return sum(r[1] for r in self.rows)

    def search(self, num, den=1):
        if den <= 0 or num < 0:
            raise ValueError("bad threshold")
        if not self.rows:
            raise ValueError("search on empty tree")
        if den * self.total_weight < num:
            raise ValueError("threshold exceeds total weight")
        acc = 0
        for j, row in enumerate(self.rows, start=1):
            acc += row[1]
            if den * acc >= num:
                return j
        raise AssertionError("unreachable")

    def sum(self, j):
        if not 1 <= j <= len(self.rows):
            raise IndexError(j)
        return sum(r[1] for r in self.rows[:j])

    def triple(self, j):
        if not 1 <= j <= len(self.rows):
            raise IndexError(j)
        return tuple(self.rows[j - 1])

    def increment(self, j):
        if not 1 <= j <= len(self.rows):
            raise IndexError(j)
        self.rows[j - 1][1] += 1

    def append(self, i, j):
        if not 1 <= j <= len(self.rows):
            raise IndexError(j)
        self.rows[j - 1][2].append(i)

    def insert(self, a, i, j, next=None):
        if not 1 <= j <= len(self.rows) + 1:
            raise IndexError(j)
        self.rows.insert(j - 1, [a, 1, [i], next])

    def quadruples(self):
        return [tuple(r) for r in self.rows]

    # Navigation oracle: enumerate every leaf code from the definition.
    def _codes(self):
        big_w = self.total_weight
        codes = []
        before = 0
        for key, w, _, _ in self.rows:
            depth = ceil_log2(ceil_div(big_w, w)) + 1
            num = 2 * before + w
            codes.append(((num << depth) // (2 * big_w), depth))
            before += w
        return codes

    @staticmethod
    def _starts_with(code, depth, sig, length):
        if length > depth:
            return False
        return (code >> (depth - length)) == sig

    def sigma(self, j):
        return self._codes()[j - 1]

    def classify(self, sig, length):
        """In-contract only: sig must be a prefix of some leaf code."""
        matches = [j for j, (c, d) in enumerate(self._codes(), start=1)
                   if self._starts_with(c, d, sig, length)]
        if not matches:
            raise NavigationError("path code matches no leaf")
        if len(matches) == 1:
            return (1, matches[0], 0, 0, 0)
        left = [j for j in matches
                if self._starts_with(*self._codes()[j - 1],
                                     sig * 2, length + 1)]
        right = [j for j in matches
                 if self._starts_with(*self._codes()[j - 1],
                                      sig * 2 + 1, length + 1)]
        has_left = 1 if left else 0
        has_right = 1 if right else 0
        split = max(left) if (left and right) else 0
        return (0, 0, has_left, has_right, split)


def random_op_mix(tree, oracle, rng: random.Random, ops: int,
                  key_pool=None) -> None:
    """Drive tree and oracle with the same random op stream, checking
    outputs agree after every step."""
    if key_pool is None:
        key_pool = list(range(10 ** 6))
    next_index = 1
    for _ in range(ops):
        t = len(oracle)
        choice = rng.random()
        if t == 0 or choice < 0.25:
            j = rng.randrange(1, t + 2)
            key = rng.choice(key_pool)
            tree.insert(key, next_index, j)
            oracle.insert(key, next_index, j)
            next_index += 1
        elif choice < 0.6:
            # Hit update: increment + append are always paired, keeping
            # weight == len(indices).
            j = rng.randrange(1, t + 1)
            tree.increment(j)
            oracle.increment(j)
            tree.append(next_index, j)
            oracle.append(next_index, j)
            next_index += 1
        elif choice < 0.75:
            j = rng.randrange(1, t + 1)
            assert tree.sum(j) == oracle.sum(j)
            got = tree.triple(j)
            want = oracle.triple(j)
            assert got[0] == want[0] and got[1] == want[1]
            assert list(got[2]) == list(want[2])
        else:
            total = oracle.total_weight
            den = rng.randrange(1, 5)
            num = rng.randrange(0, den * total + 1)
            assert tree.search(num, den) == oracle.search(num, den)
