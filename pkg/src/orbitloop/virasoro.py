"""Virasoro Verma modules V(c, h): mode action, Shapovalov form, singular vectors.

Basis vectors are partitions k_1 >= k_2 >= ... >= k_m standing for
L_{-k_1} L_{-k_2} ... L_{-k_m}|h>. Everything is exact over Q.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Mapping

from .exact import RationalMatrix, determinant, kernel_basis, rational_str, span, to_rational


def partitions(n: int, max_part: int | None = None) -> Iterator[tuple]:
    """Partitions of n as nonincreasing tuples, in reverse-lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def partition_count(n: int) -> int:
    return sum(1 for _ in partitions(n))


@dataclass(frozen=True)
class VermaModule:
    c: Fraction
    h: Fraction

    def __post_init__(self):
        object.__setattr__(self, "c", to_rational(self.c))
        object.__setattr__(self, "h", to_rational(self.h))

    def basis(self, level: int) -> list:
        return list(partitions(level))

    def highest(self) -> "VermaVector":
        return VermaVector(self, {(): 1})

    def vector(self, coeffs: Mapping) -> "VermaVector":
        return VermaVector(self, coeffs)

    def monomial(self, *parts: int) -> "VermaVector":
        """L_{-k_1}...L_{-k_m}|h> for any order of parts, rewritten in the PBW basis."""
        v = self.highest()
        for k in reversed(parts):
            v = act(-k, v)
        return v


class VermaVector:
    """Homogeneous vector: partitions of a single level mapped to coefficients."""

    __slots__ = ("module", "level", "coeffs")

    def __init__(self, module: VermaModule, coeffs: Mapping, level: int | None = None):
        clean = {}
        for part, x in coeffs.items():
            part = tuple(part)
            if any(a < b for a, b in zip(part, part[1:])) or any(p <= 0 for p in part):
                raise ValueError(f"{part} is not a partition in nonincreasing order")
            x = to_rational(x)
            if x:
                clean[part] = clean.get(part, 0) + x
        levels = {sum(p) for p in clean}
        if len(levels) > 1:
            raise ValueError(f"mixed levels {sorted(levels)}")
        if levels:
            lv = levels.pop()
            if level is not None and level != lv:
                raise ValueError(f"level {level} does not match coefficients at level {lv}")
            level = lv
        self.module = module
        self.level = 0 if level is None else level
        self.coeffs = {p: x for p, x in sorted(clean.items(), reverse=True) if x}

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, part) -> Fraction:
        return self.coeffs.get(tuple(part), Fraction(0))

    def __add__(self, other: "VermaVector") -> "VermaVector":
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        acc = dict(self.coeffs)
        for p, x in other.coeffs.items():
            acc[p] = acc.get(p, 0) + x
        return VermaVector(self.module, acc)

    def __sub__(self, other: "VermaVector") -> "VermaVector":
        return self + other.scale(-1)

    def scale(self, c) -> "VermaVector":
        c = to_rational(c)
        return VermaVector(self.module, {p: c * x for p, x in self.coeffs.items()}, self.level)

    def __eq__(self, other) -> bool:
        if not isinstance(other, VermaVector):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return self.module == other.module
        return self.module == other.module and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.module, tuple(self.coeffs.items())))

    def __repr__(self) -> str:
        return f"VermaVector({self})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for p, x in self.coeffs.items():
            ops = "".join(f"L(-{k})" for k in p)
            terms.append(f"{rational_str(x)}*{ops}|h>" if ops else f"{rational_str(x)}*|h>")
        return " + ".join(terms)

    def to_list(self, basis: list | None = None) -> list:
        if basis is None:
            basis = list(partitions(self.level))
        return [self[p] for p in basis]


@lru_cache(maxsize=None)
def _act_basis(c: Fraction, h: Fraction, m: int, part: tuple) -> tuple:
    """L_m applied to the PBW monomial ``part``; returns sorted (partition, coeff) pairs."""
    acc: dict = {}

    def add(vec, coef):
        for p, x in vec:
            acc[p] = acc.get(p, 0) + coef * x

    level = sum(part)
    if m == 0:
        return ((part, h + level),) if (h + level) != 0 else ()
    if not part:
        return (((-m,), Fraction(1)),) if m < 0 else ()
    k1, rest = part[0], part[1:]
    if m < 0:
        j = -m
        if j >= k1:
            return (((j,) + part, Fraction(1)),)
        # L_{-j} L_{-k1} = L_{-k1} L_{-j} + (k1 - j) L_{-(j+k1)}
        for p, x in _act_basis(c, h, m, rest):
            add(_act_basis(c, h, -k1, p), x)
        add(_act_basis(c, h, -(j + k1), rest), k1 - j)
    else:
        if m > level:
            return ()
        # L_m L_{-k1} = L_{-k1} L_m + (m + k1) L_{m-k1} + (c/12)(m^3 - m) delta_{m,k1}
        for p, x in _act_basis(c, h, m, rest):
            add(_act_basis(c, h, -k1, p), x)
        add(_act_basis(c, h, m - k1, rest), m + k1)
        if m == k1:
            add(((rest, Fraction(1)),), c * (m**3 - m) / 12)
    return tuple(sorted((p, x) for p, x in acc.items() if x))


def act(m: int, v: VermaVector) -> VermaVector:
    """Apply L_m; the result sits at level ``v.level - m`` (zero below level 0)."""
    V = v.module
    target = v.level - m
    if target < 0:
        return VermaVector(V, {}, 0)
    acc: dict = {}
    for part, x in v.coeffs.items():
        for p, y in _act_basis(V.c, V.h, m, part):
            acc[p] = acc.get(p, 0) + x * y
    return VermaVector(V, acc, target)


def pairing(V: VermaModule, mu: tuple, nu: tuple) -> Fraction:
    """<mu|nu> with L_n^dagger = L_{-n} and <h|h> = 1."""
    v = VermaVector(V, {nu: 1})
    for k in mu:
        v = act(k, v)
        if v.is_zero():
            return Fraction(0)
    return v[()]


@dataclass(frozen=True)
class GramMatrix:
    level: int
    basis: tuple
    matrix: RationalMatrix

    def to_dict(self) -> dict:
        return {
            "level": self.level,
            "basis": [list(p) for p in self.basis],
            "matrix": [[rational_str(x) for x in row] for row in self.matrix.to_rows()],
        }


def gram_matrix(V: VermaModule, level: int) -> GramMatrix:
    if level < 0:
        raise ValueError("level must be nonnegative")
    basis = tuple(partitions(level))
    rows = [[pairing(V, mu, nu) for nu in basis] for mu in basis]
    return GramMatrix(level, basis, RationalMatrix.from_rows(rows, len(basis)))


def kac_determinant(V: VermaModule, level: int) -> Fraction:
    return determinant(gram_matrix(V, level).matrix)


def _positive_mode_matrix(V: VermaModule, level: int, modes=(1, 2)) -> RationalMatrix:
    basis = list(partitions(level))
    rows = []
    for m in modes:
        if m > level:
            continue
        target = list(partitions(level - m))
        images = [act(m, VermaVector(V, {p: 1})) for p in basis]
        for q in target:
            rows.append([img[q] for img in images])
    return RationalMatrix.from_rows(rows, len(basis)) if rows else RationalMatrix(0, len(basis))


def singular_vectors(V: VermaModule, level: int) -> list:
    """Basis of vectors at ``level`` killed by L_1 and L_2, in reduced echelon form.

    L_1 and L_2 generate every L_n with n > 0, so this is the full singular space.
    """
    if level < 1:
        raise ValueError("singular vectors are sought at level >= 1")
    basis = list(partitions(level))
    ker = span(kernel_basis(_positive_mode_matrix(V, level)), len(basis))
    return [VermaVector(V, dict(zip(basis, v)), level) for v in ker]


def irreducible_graded_dims(V: VermaModule, max_level: int) -> list:
    """Level dimensions of V modulo the radical of the Shapovalov form."""
    return [gram_matrix(V, lv).matrix.rank() for lv in range(max_level + 1)]


def total_state_dims(left: list, right: list) -> dict:
    """Graded dimensions of a tensor product of a holomorphic and an antiholomorphic copy."""
    return {(a, b): da * db for a, da in enumerate(left) for b, db in enumerate(right)}


def relation_failures(V: VermaModule, max_mode: int, max_level: int, central_denominator: int = 12) -> list:
    """Check [L_m, L_n] = (m-n) L_{m+n} + (c/12) m (m^2-1) delta_{m+n,0} on the basis.

    Returns sorted (m, n, partition) triples where the identity fails.
    ``central_denominator`` exists so a tampered cocycle can be exercised.
    """
    bad = []
    modes = range(-max_mode, max_mode + 1)
    for level in range(max_level + 1):
        for part in partitions(level):
            v = VermaVector(V, {part: 1})
            for m in modes:
                for n in modes:
                    lhs = act(m, act(n, v)) - act(n, act(m, v))
                    rhs = act(m + n, v).scale(m - n)
                    if m + n == 0:
                        rhs = rhs + v.scale(V.c * (m**3 - m) / central_denominator)
                    if lhs != rhs:
                        bad.append((m, n, part))
    return sorted(bad)
