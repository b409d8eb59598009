"""Standard parabolic subgroups of GL(n) as compositions, and towers between them.

A composition (n_1, ..., n_l) of n is the block upper-triangular parabolic
with Levi factor GL(n_1) x ... x GL(n_l). Merging two adjacent blocks is a
maximal inclusion; a tower is a chain of such merges ending at GL(n).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence


class TotalMismatch(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Composition:
    parts: tuple

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if not parts or any(p < 1 for p in parts):
            raise ValueError(f"composition parts must be positive and nonempty, got {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def parse(cls, text: str) -> "Composition":
        return cls(tuple(int(x) for x in text.split(",")))

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def corank(self) -> int:
        return len(self.parts) - 1

    def walls(self) -> frozenset:
        """Partial sums strictly between 0 and n (block boundaries)."""
        out, acc = set(), 0
        for p in self.parts[:-1]:
            acc += p
            out.add(acc)
        return frozenset(out)

    def merge(self, i: int) -> "Composition":
        """Merge parts i and i+1."""
        p = self.parts
        return Composition(p[:i] + (p[i] + p[i + 1],) + p[i + 2 :])

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"


def covers(P: Composition, Q: Composition) -> bool:
    """True iff Q comes from P by merging exactly one pair of adjacent blocks."""
    if P.n != Q.n:
        raise TotalMismatch(f"compositions of {P.n} and {Q.n}")
    if len(Q.parts) != len(P.parts) - 1:
        return False
    return any(P.merge(i) == Q for i in range(len(P.parts) - 1))


def towers(P: Composition) -> list:
    """All maximal chains P -> ... -> (n), each step one merge, in lexicographic order."""
    if len(P.parts) == 1:
        return [(P,)]
    out = []
    for i in range(len(P.parts) - 1):
        for rest in towers(P.merge(i)):
            out.append((P,) + rest)
    return sorted(out, key=lambda chain: [c.parts for c in chain])


def tower_count(P: Composition) -> int:
    return len(towers(P))


def compositions(n: int) -> list:
    """All compositions of n, lexicographically."""
    if n == 0:
        return []
    out = []

    def rec(remaining, prefix):
        if remaining == 0:
            out.append(Composition(tuple(prefix)))
            return
        for first in range(1, remaining + 1):
            rec(remaining - first, prefix + [first])

    rec(n, [])
    return sorted(out)


@dataclass(frozen=True)
class LeviData:
    blocks: tuple
    corank: int
    radical_dim: int

    def to_dict(self) -> dict:
        return {"blocks": list(self.blocks), "corank": self.corank, "radical_dim": self.radical_dim}


def levi_data(P: Composition) -> LeviData:
    """Levi blocks, corank, and dim of the unipotent radical (sum_{i<j} n_i n_j)."""
    p = P.parts
    rad = sum(p[i] * p[j] for i in range(len(p)) for j in range(i + 1, len(p)))
    return LeviData(p, P.corank, rad)


def tower_to_json(chain: Sequence[Composition]) -> list:
    return [list(c.parts) for c in chain]
