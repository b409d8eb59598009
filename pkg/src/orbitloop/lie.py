"""Finite-dimensional Lie algebras over Q given by structure constants."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exact import (
    DimensionMismatch,
    RationalMatrix,
    add,
    in_span,
    kernel_basis,
    rational_str,
    span,
    to_rational,
    unit_vector,
    zero_vector,
)


class JacobiError(ValueError):
    pass


class ParseError(ValueError):
    pass


@dataclass(frozen=True)
class JacobiReport:
    passed: bool
    triple: tuple | None = None
    residual: tuple | None = None

    def to_dict(self, labels: Sequence[str] | None = None) -> dict:
        if self.passed:
            return {"status": "pass"}
        out = {
            "status": "fail",
            "triple": list(self.triple),
            "residual": [rational_str(x) for x in self.residual],
        }
        if labels is not None:
            out["labels"] = [labels[i] for i in self.triple]
        return out


class LieAlgebra:
    """Lie algebra with basis e_0..e_{n-1} and brackets [e_i, e_j] for i < j.

    ``brackets`` maps (i, j) to {k: coeff}. Pairs with i > j are accepted and
    flipped with a sign; i == j must be zero. Jacobi is checked eagerly unless
    ``check=False``.
    """

    def __init__(self, labels: Sequence[str], brackets: dict, check: bool = True):
        labels = tuple(labels)
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate basis labels in {labels}")
        n = len(labels)
        table: dict = {}
        for (i, j), terms in brackets.items():
            if not (0 <= i < n and 0 <= j < n):
                raise IndexError(f"bracket index ({i}, {j}) out of range for dim {n}")
            sign = 1
            if i == j:
                if any(to_rational(c) != 0 for c in terms.values()):
                    raise ValueError(f"[e{i}, e{i}] must vanish")
                continue
            if i > j:
                i, j, sign = j, i, -1
            row = table.setdefault((i, j), {})
            for k, c in terms.items():
                if not 0 <= k < n:
                    raise IndexError(f"bracket target {k} out of range")
                row[k] = row.get(k, Fraction(0)) + sign * to_rational(c)
        self.labels = labels
        self.dim = n
        self._table = {
            key: tuple(sorted((k, c) for k, c in row.items() if c != 0))
            for key, row in sorted(table.items())
        }
        self._table = {key: row for key, row in self._table.items() if row}
        if check:
            report = check_jacobi(self)
            if not report.passed:
                raise JacobiError(
                    f"Jacobi identity fails on {tuple(labels[i] for i in report.triple)}: "
                    f"residual {[rational_str(x) for x in report.residual]}"
                )

    @property
    def structure(self) -> dict:
        return {key: dict(row) for key, row in self._table.items()}

    def basis_vector(self, i) -> tuple:
        if isinstance(i, str):
            i = self.index(i)
        return unit_vector(self.dim, i)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"no basis element {label!r}; have {list(self.labels)}") from None

    def zero(self) -> tuple:
        return zero_vector(self.dim)

    def bracket_basis(self, i: int, j: int) -> tuple:
        if i == j:
            return self.zero()
        sign = 1
        if i > j:
            i, j, sign = j, i, -1
        out = [Fraction(0)] * self.dim
        for k, c in self._table.get((i, j), ()):
            out[k] = sign * c
        return tuple(out)

    def bracket(self, x: Sequence, y: Sequence) -> tuple:
        if len(x) != self.dim or len(y) != self.dim:
            raise DimensionMismatch(f"vectors of length {len(x)}, {len(y)} in a {self.dim}-dim algebra")
        out = [Fraction(0)] * self.dim
        for (i, j), row in self._table.items():
            coef = x[i] * y[j] - x[j] * y[i]
            if coef != 0:
                for k, c in row:
                    out[k] += coef * c
        return tuple(out)

    def ad(self, x: Sequence) -> RationalMatrix:
        """Matrix of ad x acting on column coordinate vectors."""
        cols = [self.bracket(x, unit_vector(self.dim, j)) for j in range(self.dim)]
        return RationalMatrix.from_rows([[cols[j][i] for j in range(self.dim)] for i in range(self.dim)], self.dim)

    def is_abelian(self) -> bool:
        return not self._table

    def __eq__(self, other) -> bool:
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return self.labels == other.labels and self._table == other._table

    def __hash__(self):
        return hash((self.labels, tuple(self._table.items())))

    def __repr__(self) -> str:
        rels = []
        for (i, j), row in self._table.items():
            rhs = " + ".join(f"{rational_str(c)}*{self.labels[k]}" for k, c in row)
            rels.append(f"[{self.labels[i]},{self.labels[j]}]={rhs}")
        return f"LieAlgebra({', '.join(self.labels)}; {'; '.join(rels) or 'abelian'})"

    def format_vector(self, v: Sequence) -> str:
        terms = [f"{rational_str(c)}*{self.labels[i]}" for i, c in enumerate(v) if c != 0]
        return " + ".join(terms) if terms else "0"

    # -- serialization -------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "dim": self.dim,
            "basis": list(self.labels),
            "brackets": [
                {"i": i, "j": j, "terms": [{"k": k, "coeff": rational_str(c)} for k, c in row]}
                for (i, j), row in self._table.items()
            ],
        }

    @classmethod
    def from_json_dict(cls, data: dict, check: bool = True) -> "LieAlgebra":
        try:
            labels = data["basis"]
            dim = data.get("dim", len(labels))
            if dim != len(labels):
                raise ParseError(f"dim {dim} does not match {len(labels)} basis labels")
            brackets: dict = {}
            for entry in data.get("brackets", []):
                i, j = int(entry["i"]), int(entry["j"])
                row = brackets.setdefault((i, j), {})
                for term in entry["terms"]:
                    k = int(term["k"])
                    row[k] = row.get(k, Fraction(0)) + to_rational(term["coeff"])
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"malformed algebra document: {exc}") from exc
        return cls(labels, brackets, check=check)

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str, check: bool = True) -> "LieAlgebra":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from exc
        return cls.from_json_dict(data, check=check)


def check_jacobi(g: LieAlgebra) -> JacobiReport:
    """Check [[x,y],z] + [[y,z],x] + [[z,x],y] = 0 over all basis triples i<j<k."""
    e = [g.basis_vector(i) for i in range(g.dim)]
    for i, j, k in itertools.combinations(range(g.dim), 3):
        r = add(
            add(g.bracket(g.bracket(e[i], e[j]), e[k]), g.bracket(g.bracket(e[j], e[k]), e[i])),
            g.bracket(g.bracket(e[k], e[i]), e[j]),
        )
        if any(r):
            return JacobiReport(False, (i, j, k), r)
    return JacobiReport(True)


@dataclass(frozen=True)
class Functional:
    """A point F of the dual space, in the dual basis."""

    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(to_rational(x) for x in self.coords))

    @classmethod
    def parse(cls, text: str) -> "Functional":
        from .exact import parse_rational_list

        return cls(parse_rational_list(text))

    @classmethod
    def dual(cls, g: LieAlgebra, label: str) -> "Functional":
        """The dual basis element e_label^*."""
        return cls(g.basis_vector(label))

    def __call__(self, x: Sequence) -> Fraction:
        if len(x) != len(self.coords):
            raise DimensionMismatch(f"functional of length {len(self.coords)} applied to vector of length {len(x)}")
        return sum((a * b for a, b in zip(self.coords, x)), Fraction(0))

    def check_dim(self, g: LieAlgebra) -> None:
        if len(self.coords) != g.dim:
            raise DimensionMismatch(f"functional has {len(self.coords)} coordinates, algebra has dimension {g.dim}")

    def __str__(self) -> str:
        return ",".join(rational_str(x) for x in self.coords)


@dataclass(frozen=True)
class Subalgebra:
    """Subspace of ``parent`` with an echelon-canonical basis, closed under bracket."""

    parent: LieAlgebra
    basis: tuple = field(default=())

    def __post_init__(self):
        canon = span(self.basis, self.parent.dim)
        object.__setattr__(self, "basis", canon)
        for x, y in itertools.combinations(canon, 2):
            if not in_span(canon, self.parent.bracket(x, y), self.parent.dim):
                raise ValueError("subspace is not closed under the bracket")

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def matrix(self) -> RationalMatrix:
        return RationalMatrix.from_rows([list(b) for b in self.basis], self.parent.dim)

    def contains(self, v: Sequence) -> bool:
        return in_span(self.basis, v, self.parent.dim)

    def contains_subspace(self, other: Sequence[Sequence]) -> bool:
        return all(self.contains(v) for v in other)

    def is_ideal(self) -> bool:
        g = self.parent
        return all(self.contains(g.bracket(g.basis_vector(i), b)) for i in range(g.dim) for b in self.basis)

    def labels(self) -> list:
        return [self.parent.format_vector(b) for b in self.basis]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subalgebra):
            return NotImplemented
        return self.parent == other.parent and self.basis == other.basis

    def __hash__(self):
        return hash((self.parent, self.basis))


def subalgebra(g: LieAlgebra, *generators) -> Subalgebra:
    """Span of the given vectors or basis labels (must already be closed)."""
    vs = [g.basis_vector(x) if isinstance(x, (str, int)) else tuple(x) for x in generators]
    return Subalgebra(g, tuple(vs))


def bracket_space(g: LieAlgebra, a: Sequence[Sequence], b: Sequence[Sequence]) -> tuple:
    return span([g.bracket(x, y) for x in a for y in b], g.dim)


def _full(g: LieAlgebra) -> tuple:
    return tuple(g.basis_vector(i) for i in range(g.dim))


def lower_central_series(g: LieAlgebra) -> list:
    """g, [g,g], [g,[g,g]], ... until the terms stop shrinking."""
    terms = [span(_full(g), g.dim)]
    while True:
        nxt = bracket_space(g, _full(g), terms[-1])
        if len(nxt) == len(terms[-1]):
            break
        terms.append(nxt)
    return [Subalgebra(g, t) for t in terms]


def derived_series(g: LieAlgebra) -> list:
    terms = [span(_full(g), g.dim)]
    while True:
        nxt = bracket_space(g, terms[-1], terms[-1])
        if len(nxt) == len(terms[-1]):
            break
        terms.append(nxt)
    return [Subalgebra(g, t) for t in terms]


def is_nilpotent(g: LieAlgebra) -> bool:
    return lower_central_series(g)[-1].dim == 0


def is_solvable(g: LieAlgebra) -> bool:
    return derived_series(g)[-1].dim == 0


def center(g: LieAlgebra) -> Subalgebra:
    # x is central iff ad(e_i) x = 0 for all i; stack the ad matrices
    rows = []
    for i in range(g.dim):
        rows.extend(g.ad(g.basis_vector(i)).to_rows())
    if not rows:
        return Subalgebra(g, ())
    m = RationalMatrix.from_rows(rows, g.dim)
    return Subalgebra(g, tuple(kernel_basis(m)))


def classify(g: LieAlgebra) -> dict:
    lcs = lower_central_series(g)
    ds = derived_series(g)
    z = center(g)
    return {
        "dim": g.dim,
        "nilpotent": lcs[-1].dim == 0,
        "solvable": ds[-1].dim == 0,
        "lower_central_dims": [s.dim for s in lcs],
        "derived_dims": [s.dim for s in ds],
        "center": [g.format_vector(v) for v in z.basis],
    }


# -- catalog ------------------------------------------------------------


def abelian(n: int) -> LieAlgebra:
    return LieAlgebra([f"e{i + 1}" for i in range(n)], {})


def heisenberg(n: int) -> LieAlgebra:
    """h_{2n+1} with basis X_1..X_n, Y_1..Y_n, Z and [X_i, Y_i] = Z."""
    if n < 1:
        raise ValueError("heisenberg(n) needs n >= 1")
    if n == 1:
        labels = ["X", "Y", "Z"]
    else:
        labels = [f"X{i + 1}" for i in range(n)] + [f"Y{i + 1}" for i in range(n)] + ["Z"]
    return LieAlgebra(labels, {(i, n + i): {2 * n: 1} for i in range(n)})


def filiform4() -> LieAlgebra:
    """Standard filiform n_4: [e1,e2]=e3, [e1,e3]=e4."""
    return LieAlgebra(["e1", "e2", "e3", "e4"], {(0, 1): {2: 1}, (0, 2): {3: 1}})


def diamond() -> LieAlgebra:
    """Oscillator (diamond) algebra: [T,X]=Y, [T,Y]=-X, [X,Y]=Z."""
    return LieAlgebra(["T", "X", "Y", "Z"], {(0, 1): {2: 1}, (0, 2): {1: -1}, (1, 2): {3: 1}})


def affine_line() -> LieAlgebra:
    """Two-dimensional non-abelian algebra [X,Y]=Y."""
    return LieAlgebra(["X", "Y"], {(0, 1): {1: 1}})


def sl2() -> LieAlgebra:
    return LieAlgebra(["H", "E", "F"], {(0, 1): {1: 2}, (0, 2): {2: -2}, (1, 2): {0: 1}})


CATALOG = {
    "abelian1": lambda: abelian(1),
    "abelian2": lambda: abelian(2),
    "abelian3": lambda: abelian(3),
    "h3": lambda: heisenberg(1),
    "h5": lambda: heisenberg(2),
    "h7": lambda: heisenberg(3),
    "filiform4": filiform4,
    "diamond": diamond,
    "affine2": affine_line,
    "sl2": sl2,
}
CATALOG_ALIASES = {"heisenberg3": "h3", "heisenberg5": "h5", "heisenberg7": "h7", "n4": "filiform4", "oscillator": "diamond"}


def catalog(name: str) -> LieAlgebra:
    key = CATALOG_ALIASES.get(name, name)
    if key not in CATALOG:
        raise KeyError(f"unknown catalog algebra {name!r}; known: {sorted(CATALOG) + sorted(CATALOG_ALIASES)}")
    return CATALOG[key]()
