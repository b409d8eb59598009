"""Polynomial-coefficient differential operators with a formal central scalar.

A :class:`WeylOperator` in k variables is a finite sum of terms
``c * l^d * q^a * d^b`` kept in normal order (all multiplications left of all
derivatives), where ``l`` is the formal parameter lambda. The lambda exponent
``d`` is an integer and may be negative (Laurent in lambda), which the
momentum-coordinate normalization in :mod:`orbitloop.orbit` needs for
higher-step nilpotent algebras.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from math import comb, perm
from typing import Iterable, Mapping

from .exact import DimensionMismatch, rational_str, to_rational


def _check_k(k: int, other_k: int) -> None:
    if k != other_k:
        raise DimensionMismatch(f"operators in {k} and {other_k} variables")


def _addto(acc: dict, key, c) -> None:
    v = acc.get(key, 0) + c
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


class Polynomial:
    """Sparse polynomial in q_1..q_k over Q, keyed by exponent tuples."""

    __slots__ = ("k", "_terms")

    def __init__(self, k: int, terms: Mapping | None = None):
        self.k = k
        clean = {}
        for a, c in (terms or {}).items():
            a = tuple(a)
            if len(a) != k or any(e < 0 for e in a):
                raise ValueError(f"bad exponent {a} for {k} variables")
            c = to_rational(c)
            if c:
                clean[a] = clean.get(a, 0) + c
        self._terms = {a: c for a, c in sorted(clean.items()) if c}

    @classmethod
    def constant(cls, k: int, c=1) -> "Polynomial":
        return cls(k, {(0,) * k: c})

    @classmethod
    def variable(cls, k: int, i: int) -> "Polynomial":
        return cls(k, {tuple(int(j == i) for j in range(k)): 1})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        return max((sum(a) for a in self._terms), default=-1)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        _check_k(self.k, other.k)
        acc = dict(self._terms)
        for a, c in other._terms.items():
            _addto(acc, a, c)
        return Polynomial(self.k, acc)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.k, {a: -c for a, c in self._terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            c = to_rational(other)
            return Polynomial(self.k, {a: c * x for a, x in self._terms.items()})
        _check_k(self.k, other.k)
        acc: dict = {}
        for a, x in self._terms.items():
            for b, y in other._terms.items():
                _addto(acc, tuple(i + j for i, j in zip(a, b)), x * y)
        return Polynomial(self.k, acc)

    __rmul__ = __mul__

    def derivative(self, i: int, times: int = 1) -> "Polynomial":
        acc = {}
        for a, c in self._terms.items():
            if a[i] >= times:
                b = list(a)
                b[i] -= times
                acc[tuple(b)] = c * perm(a[i], times)
        return Polynomial(self.k, acc)

    def evaluate(self, point) -> Fraction:
        total = Fraction(0)
        for a, c in self._terms.items():
            t = c
            for x, e in zip(point, a):
                t *= Fraction(x) ** e
            total += t
        return total

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.k == other.k and self._terms == other._terms

    def __hash__(self):
        return hash((self.k, tuple(self._terms.items())))

    def __repr__(self) -> str:
        return f"Polynomial({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for a, c in self._terms.items():
            factors = [f"q{i + 1}^{e}" for i, e in enumerate(a) if e]
            parts.append("*".join([rational_str(c)] + factors))
        return " + ".join(parts)


def _sort_key(key):
    d, a, b = key
    return (d, a, b)


class WeylOperator:
    """Normal-ordered element sum c * l^d * q^a * d^b of the Weyl algebra."""

    __slots__ = ("k", "_terms")

    def __init__(self, k: int, terms: Mapping | None = None):
        self.k = k
        clean: dict = {}
        for key, c in (terms or {}).items():
            a, b, d = key
            a, b = tuple(a), tuple(b)
            if len(a) != k or len(b) != k or any(e < 0 for e in a + b):
                raise ValueError(f"bad multi-degree {key} for {k} variables")
            _addto(clean, (a, b, int(d)), to_rational(c))
        self._terms = dict(sorted(clean.items(), key=lambda kv: _sort_key((kv[0][2], kv[0][0], kv[0][1]))))

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, k: int) -> "WeylOperator":
        return cls(k)

    @classmethod
    def scalar(cls, k: int, c=1, lam: int = 0) -> "WeylOperator":
        z = (0,) * k
        return cls(k, {(z, z, lam): c})

    @classmethod
    def lam(cls, k: int) -> "WeylOperator":
        return cls.scalar(k, 1, 1)

    @classmethod
    def q(cls, k: int, i: int) -> "WeylOperator":
        e = tuple(int(j == i) for j in range(k))
        return cls(k, {(e, (0,) * k, 0): 1})

    @classmethod
    def d(cls, k: int, i: int) -> "WeylOperator":
        e = tuple(int(j == i) for j in range(k))
        return cls(k, {((0,) * k, e, 0): 1})

    @classmethod
    def from_polynomial(cls, p: Polynomial, lam: int = 0) -> "WeylOperator":
        z = (0,) * p.k
        return cls(p.k, {(a, z, lam): c for a, c in p.terms.items()})

    # -- arithmetic -----------------------------------------------------

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __add__(self, other: "WeylOperator") -> "WeylOperator":
        _check_k(self.k, other.k)
        acc = dict(self._terms)
        for key, c in other._terms.items():
            _addto(acc, key, c)
        return WeylOperator(self.k, acc)

    def __neg__(self) -> "WeylOperator":
        return WeylOperator(self.k, {key: -c for key, c in self._terms.items()})

    def __sub__(self, other: "WeylOperator") -> "WeylOperator":
        return self + (-other)

    def scale(self, c) -> "WeylOperator":
        c = to_rational(c)
        return WeylOperator(self.k, {key: c * x for key, x in self._terms.items()})

    def times_lambda(self, power: int = 1) -> "WeylOperator":
        return WeylOperator(self.k, {(a, b, d + power): c for (a, b, d), c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, WeylOperator):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeylOperator):
            return NotImplemented
        return self.k == other.k and self._terms == other._terms

    def __hash__(self):
        return hash((self.k, tuple(self._terms.items())))

    def degree_q(self) -> int:
        return max((sum(a) for a, _, _ in self._terms), default=-1)

    def degree_d(self) -> int:
        return max((sum(b) for _, b, _ in self._terms), default=-1)

    def lambda_degrees(self) -> set:
        return {d for _, _, d in self._terms}

    # -- text / json ------------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for (a, b, d), c in self._terms.items():
            factors = [rational_str(c)]
            if d:
                factors.append(f"l^{d}")
            factors += [f"q{i + 1}^{e}" for i, e in enumerate(a) if e]
            factors += [f"d{i + 1}^{e}" for i, e in enumerate(b) if e]
            parts.append("*".join(factors))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"WeylOperator(k={self.k}: {self})"

    def to_json_dict(self) -> dict:
        return {
            "k": self.k,
            "terms": [
                {"lambda": d, "q": list(a), "d": list(b), "coeff": rational_str(c)}
                for (a, b, d), c in self._terms.items()
            ],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "WeylOperator":
        k = int(data["k"])
        return cls(k, {(tuple(t["q"]), tuple(t["d"]), int(t["lambda"])): to_rational(t["coeff"]) for t in data["terms"]})

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    @classmethod
    def parse(cls, text: str, k: int) -> "WeylOperator":
        """Inverse of ``str``: terms like ``-3/2*l^1*q1^2*d1^1`` joined by ``+``."""
        text = text.strip()
        if text == "0":
            return cls.zero(k)
        acc: dict = {}
        for chunk in re.split(r"\s+\+\s+", text):
            factors = chunk.split("*")
            c = to_rational(factors[0])
            a, b, d = [0] * k, [0] * k, 0
            for f in factors[1:]:
                m = re.fullmatch(r"(l|q|d)(\d*)\^(-?\d+)", f)
                if not m:
                    raise ValueError(f"bad factor {f!r} in {chunk!r}")
                kind, idx, e = m.group(1), m.group(2), int(m.group(3))
                if kind == "l":
                    d += e
                else:
                    i = int(idx) - 1
                    if not 0 <= i < k:
                        raise ValueError(f"variable index {idx} out of range")
                    (a if kind == "q" else b)[i] += e
            _addto(acc, (tuple(a), tuple(b), d), c)
        return cls(k, acc)


def _commute_d_past_q(b: tuple, c: tuple) -> Iterable:
    """Expand d^b q^c = sum_j prod_i C(b_i, j_i) c_i!/(c_i-j_i)! q^(c-j) d^(b-j)."""
    ranges = [range(min(bi, ci) + 1) for bi, ci in zip(b, c)]

    def rec(i, coef, qs, ds):
        if i == len(b):
            yield coef, tuple(qs), tuple(ds)
            return
        for j in ranges[i]:
            yield from rec(i + 1, coef * comb(b[i], j) * perm(c[i], j), qs + [c[i] - j], ds + [b[i] - j])

    yield from rec(0, 1, [], [])


def multiply(A: WeylOperator, B: WeylOperator) -> WeylOperator:
    _check_k(A.k, B.k)
    acc: dict = {}
    for (a1, b1, d1), x in A.terms.items():
        for (a2, b2, d2), y in B.terms.items():
            for coef, qs, ds in _commute_d_past_q(b1, a2):
                key = (
                    tuple(i + j for i, j in zip(a1, qs)),
                    tuple(i + j for i, j in zip(ds, b2)),
                    d1 + d2,
                )
                _addto(acc, key, coef * x * y)
    return WeylOperator(A.k, acc)


def commutator(A: WeylOperator, B: WeylOperator) -> WeylOperator:
    return multiply(A, B) - multiply(B, A)


def apply(A: WeylOperator, p: Polynomial, lambda_value) -> Polynomial:
    """Act on a polynomial with lambda specialized to ``lambda_value``."""
    _check_k(A.k, p.k)
    lv = to_rational(lambda_value)
    out = Polynomial(A.k)
    for (a, b, d), c in A.terms.items():
        if d < 0 and lv == 0:
            raise ZeroDivisionError("operator has negative powers of lambda; cannot specialize at 0")
        r = p
        for i, e in enumerate(b):
            if e:
                r = r.derivative(i, e)
        if r.is_zero():
            continue
        out = out + Polynomial(A.k, {a: c * lv**d}) * r
    return out
