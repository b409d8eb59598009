"""Independent brute-force oracles used by the test-suite."""

import itertools
from fractions import Fraction
from functools import lru_cache


def vacuum_expectation(c, h):
    """<h| L_{w_1} ... L_{w_r} |h> by pushing non-negative modes to the right."""

    @lru_cache(maxsize=None)
    def E(word):
        if not word:
            return Fraction(1)
        if word[0] < 0:
            return Fraction(0)
        # rightmost non-negative mode; everything to its right is a creation mode
        i = max(j for j, m in enumerate(word) if m >= 0)
        m = word[i]
        if i == len(word) - 1:
            return h * E(word[:-1]) if m == 0 else Fraction(0)
        n = word[i + 1]
        head, tail = word[:i], word[i + 2 :]
        total = E(head + (n, m) + tail) + (m - n) * E(head + (m + n,) + tail)
        if m + n == 0:
            total += c * Fraction(m**3 - m, 12) * E(head + tail)
        return total

    return E


def brute_gram(c, h, basis):
    E = vacuum_expectation(Fraction(c), Fraction(h))
    return [[E(tuple(reversed(mu)) + tuple(-k for k in nu)) for nu in basis] for mu in basis]


def partition_numbers(n_max):
    """p(n) by counting nonincreasing tuples drawn from itertools products."""
    out = []
    for n in range(n_max + 1):
        count = 0
        for length in range(n + 1):
            for parts in itertools.combinations_with_replacement(range(1, n + 1), length):
                if sum(parts) == n:
                    count += 1
        out.append(count)
    return out


def multiset_counts(dims, max_level):
    """Graded dimension of the symmetric algebra by enumerating multisets of basis elements."""
    gens = [(deg, idx) for deg, d in enumerate(dims, start=1) for idx in range(d) if deg <= max_level]
    out = [0] * (max_level + 1)
    for size in range(max_level + 1):
        for ms in itertools.combinations_with_replacement(gens, size):
            total = sum(deg for deg, _ in ms)
            if total <= max_level:
                out[total] += 1
    return out


def wall_chain_count(walls, n):
    """Count chains from a wall set down to the empty set, one wall removed per step.

    Works on raw subsets of {1, ..., n-1} so it never touches composition merging.
    """
    walls = frozenset(walls)
    if not walls:
        return 1
    universe = [frozenset(s) for r in range(len(walls)) for s in itertools.combinations(range(1, n), r)]
    return sum(
        wall_chain_count(smaller, n)
        for smaller in universe
        if smaller < walls and len(walls - smaller) == 1
    )
