"""Exact rational scalars and sparse matrices over Q.

Rationals are :class:`fractions.Fraction`; :class:`RationalMatrix` stores only
nonzero entries and iterates them in sorted order so printed output is stable.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction
Vector = tuple  # tuple of Fraction


class NonSquareError(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


def to_rational(x) -> Fraction:
    """Coerce ints, Fractions and strings such as ``"-3/4"`` to a Fraction.

    Floats are rejected: every quantity in this package is exact.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        if not s or any(ch in s for ch in ".eE"):
            raise ValueError(f"not an exact rational: {x!r}")
        return Fraction(s)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def rational_str(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational_list(text: str) -> tuple:
    """Parse ``"0,0,1/2"`` into a tuple of Fractions."""
    text = text.strip()
    if not text:
        return ()
    return tuple(to_rational(part) for part in text.split(","))


def vec(*xs) -> tuple:
    return tuple(to_rational(x) for x in xs)


def zero_vector(n: int) -> tuple:
    return (Fraction(0),) * n


def unit_vector(n: int, i: int) -> tuple:
    return tuple(Fraction(1 if j == i else 0) for j in range(n))


def add(u: Sequence, v: Sequence) -> tuple:
    if len(u) != len(v):
        raise DimensionMismatch(f"length {len(u)} vs {len(v)}")
    return tuple(a + b for a, b in zip(u, v))


def scale(c, u: Sequence) -> tuple:
    return tuple(c * a for a in u)


def dot(u: Sequence, v: Sequence) -> Fraction:
    if len(u) != len(v):
        raise DimensionMismatch(f"length {len(u)} vs {len(v)}")
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def is_zero(u: Iterable) -> bool:
    return all(a == 0 for a in u)


class RationalMatrix:
    """Sparse rows x cols matrix over Q.

    Immutable by convention: operations return new matrices.
    """

    __slots__ = ("rows", "cols", "_entries")

    def __init__(self, rows: int, cols: int, entries: dict | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("negative shape")
        self.rows = rows
        self.cols = cols
        clean = {}
        for (i, j), x in (entries or {}).items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise IndexError(f"entry ({i}, {j}) outside {rows}x{cols}")
            x = to_rational(x)
            if x != 0:
                clean[(i, j)] = x
        self._entries = dict(sorted(clean.items()))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "RationalMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        entries = {}
        for i, r in enumerate(rows):
            if len(r) != cols:
                raise DimensionMismatch("ragged rows")
            for j, x in enumerate(r):
                entries[(i, j)] = x
        return cls(len(rows), cols, entries)

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls(rows, cols)

    @property
    def entries(self) -> dict:
        return dict(self._entries)

    @property
    def shape(self) -> tuple:
        return (self.rows, self.cols)

    def __getitem__(self, key) -> Fraction:
        i, j = key
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(key)
        return self._entries.get((i, j), Fraction(0))

    def to_rows(self) -> list:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (i, j), x in self._entries.items():
            out[i][j] = x
        return out

    def row(self, i: int) -> tuple:
        return tuple(self[i, j] for j in range(self.cols))

    def column(self, j: int) -> tuple:
        return tuple(self[i, j] for i in range(self.rows))

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(self.cols, self.rows, {(j, i): x for (i, j), x in self._entries.items()})

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"{self.shape} @ {other.shape}")
        by_row: dict = {}
        for (k, j), y in other._entries.items():
            by_row.setdefault(k, []).append((j, y))
        acc: dict = {}
        for (i, k), x in self._entries.items():
            for j, y in by_row.get(k, ()):
                acc[(i, j)] = acc.get((i, j), 0) + x * y
        return RationalMatrix(self.rows, other.cols, acc)

    def apply(self, v: Sequence) -> tuple:
        """Matrix-vector product m . v."""
        if len(v) != self.cols:
            raise DimensionMismatch(f"{self.shape} . vector of length {len(v)}")
        out = [Fraction(0)] * self.rows
        for (i, j), x in self._entries.items():
            out[i] += x * v[j]
        return tuple(out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self._entries == other._entries

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(self._entries.items())))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(rational_str(x) for x in r) for r in self.to_rows())
        return f"RationalMatrix({self.rows}x{self.cols}: [{body}])"

    def is_zero(self) -> bool:
        return not self._entries

    def is_symmetric(self) -> bool:
        return self == self.transpose()

    def rref(self) -> "RationalMatrix":
        return RationalMatrix.from_rows(_rref_rows(self.to_rows(), self.cols)[0], self.cols) if self.rows else self

    def rank(self) -> int:
        return len(_rref_rows(self.to_rows(), self.cols)[1])

    def kernel_basis(self) -> list:
        return kernel_basis(self)

    def determinant(self) -> Fraction:
        return determinant(self)


def _rref_rows(rows: list, ncols: int) -> tuple:
    """Gauss-Jordan elimination on a dense copy; returns (rows, pivot columns)."""
    a = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(a):
            break
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        if p != 1:
            a[r] = [x / p for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a, pivots


def rref(m: RationalMatrix) -> RationalMatrix:
    return m.rref()


def kernel_basis(m: RationalMatrix) -> list:
    """Basis of {v : m v = 0}, one vector per free column in ascending order.

    The vector for free column f has a 1 in position f and zeros in the other
    free positions.
    """
    rows, pivots = _rref_rows(m.to_rows(), m.cols)
    pivot_set = set(pivots)
    basis = []
    for f in range(m.cols):
        if f in pivot_set:
            continue
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -rows[r][f]
        basis.append(tuple(v))
    return basis


def determinant(m: RationalMatrix) -> Fraction:
    if m.rows != m.cols:
        raise NonSquareError(f"determinant of a {m.rows}x{m.cols} matrix")
    a = m.to_rows()
    n = m.rows
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        p = a[c][c]
        det *= p
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c] / p
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return det


# Subspaces of Q^n are passed around as row-reduced bases (tuples of vectors).


def span(vectors: Iterable[Sequence], n: int) -> tuple:
    """Echelon-canonical basis (nonzero rref rows) of the span of ``vectors``."""
    vs = [tuple(to_rational(x) for x in v) for v in vectors]
    if not vs:
        return ()
    for v in vs:
        if len(v) != n:
            raise DimensionMismatch(f"vector of length {len(v)} in Q^{n}")
    rows, pivots = _rref_rows(vs, n)
    return tuple(tuple(rows[i]) for i in range(len(pivots)))


def in_span(basis: Sequence[Sequence], v: Sequence, n: int) -> bool:
    return len(span(list(basis) + [v], n)) == len(span(basis, n))


def reduce_mod(basis: Sequence[Sequence], v: Sequence) -> tuple:
    """Reduce v against an rref basis, killing its pivot coordinates."""
    out = list(v)
    for b in basis:
        pc = next(i for i, x in enumerate(b) if x != 0)
        if out[pc] != 0:
            f = out[pc] / b[pc]
            out = [x - f * y for x, y in zip(out, b)]
    return tuple(out)


def intersect(a: Sequence[Sequence], b: Sequence[Sequence], n: int) -> tuple:
    if not a or not b:
        return ()
    # x A = y B  <=>  (x, -y) in left kernel of [A; B]
    stacked = RationalMatrix.from_rows([list(v) for v in a] + [list(v) for v in b], n)
    vecs = []
    for k in kernel_basis(stacked.transpose()):
        coeffs = k[: len(a)]
        vecs.append(tuple(sum((c * row[j] for c, row in zip(coeffs, a)), Fraction(0)) for j in range(n)))
    return span(vecs, n)


def coordinates(basis: Sequence[Sequence], v: Sequence) -> tuple | None:
    """Coefficients c with sum c_i basis_i = v, or None if v is not in the span."""
    if not basis:
        return () if is_zero(v) else None
    n = len(v)
    m = RationalMatrix.from_rows([list(b) for b in basis], n).transpose()
    aug = [row + [v[i]] for i, row in enumerate(m.to_rows())]
    rows, pivots = _rref_rows(aug, len(basis) + 1)
    if len(basis) in pivots:
        return None
    c = [Fraction(0)] * len(basis)
    for r, pc in enumerate(pivots):
        c[pc] = rows[r][-1]
    return tuple(c)


def inverse(m: RationalMatrix) -> RationalMatrix:
    if m.rows != m.cols:
        raise NonSquareError("inverse of a non-square matrix")
    n = m.rows
    aug = [row + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m.to_rows())]
    rows, pivots = _rref_rows(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ZeroDivisionError("singular matrix")
    return RationalMatrix.from_rows([r[n:] for r in rows], n)
