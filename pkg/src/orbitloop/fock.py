"""Loop algebras, the oscillator Fock space and its free-field Virasoro action."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .exact import RationalMatrix, rational_str, to_rational
from .lie import LieAlgebra
from .orbit import Quantization, quantize_nilpotent
from .virasoro import partitions
from .weyl import WeylOperator, commutator


class AlgebraMismatch(ValueError):
    pass


class FormNotInvariant(ValueError):
    pass


# -- loop elements ------------------------------------------------------------


@dataclass(frozen=True)
class LoopElement:
    """Finite Laurent sum sum_n c_n z^n with c_n in g, plus a central coefficient."""

    algebra: LieAlgebra
    terms: Mapping = field(default_factory=dict)
    central: Fraction = Fraction(0)

    def __post_init__(self):
        clean = {}
        for n, v in self.terms.items():
            v = tuple(to_rational(x) for x in v)
            if len(v) != self.algebra.dim:
                raise ValueError(f"coefficient of z^{n} has length {len(v)}, algebra has dim {self.algebra.dim}")
            if any(v):
                clean[int(n)] = v
        object.__setattr__(self, "terms", dict(sorted(clean.items())))
        object.__setattr__(self, "central", to_rational(self.central))

    @classmethod
    def monomial(cls, g: LieAlgebra, label, n: int, coeff=1) -> "LoopElement":
        return cls(g, {n: tuple(to_rational(coeff) * x for x in g.basis_vector(label))})

    def __add__(self, other: "LoopElement") -> "LoopElement":
        _same_algebra(self, other)
        acc = dict(self.terms)
        for n, v in other.terms.items():
            acc[n] = tuple(a + b for a, b in zip(acc.get(n, self.algebra.zero()), v))
        return LoopElement(self.algebra, acc, self.central + other.central)

    def scale(self, c) -> "LoopElement":
        c = to_rational(c)
        return LoopElement(self.algebra, {n: tuple(c * x for x in v) for n, v in self.terms.items()}, c * self.central)

    def is_zero(self) -> bool:
        return not self.terms and self.central == 0

    def __str__(self) -> str:
        g = self.algebra
        parts = [
            f"{rational_str(c)}*{g.labels[i]}@{n}" for n, v in self.terms.items() for i, c in enumerate(v) if c
        ]
        if self.central:
            parts.append(f"{rational_str(self.central)}*K")
        return " + ".join(parts) if parts else "0"


def _same_algebra(a: LoopElement, b: LoopElement) -> None:
    if a.algebra != b.algebra:
        raise AlgebraMismatch("loop elements over different algebras")


def check_invariant_form(g: LieAlgebra, form: RationalMatrix) -> None:
    if form.shape != (g.dim, g.dim):
        raise FormNotInvariant(f"form has shape {form.shape}, expected {(g.dim, g.dim)}")
    if not form.is_symmetric():
        raise FormNotInvariant("form is not symmetric")
    rows = form.to_rows()

    def B(x, y):
        return sum((x[i] * rows[i][j] * y[j] for i in range(g.dim) for j in range(g.dim) if rows[i][j]), Fraction(0))

    e = [g.basis_vector(i) for i in range(g.dim)]
    for x in e:
        for y in e:
            for z in e:
                if B(g.bracket(x, y), z) != B(x, g.bracket(y, z)):
                    raise FormNotInvariant("form([x,y],z) != form(x,[y,z]) on a basis triple")


def loop_bracket(A: LoopElement, B: LoopElement, form: RationalMatrix | None = None) -> LoopElement:
    """[x z^m, y z^n] = [x,y] z^(m+n) + m delta_{m+n,0} form(x,y) K."""
    _same_algebra(A, B)
    g = A.algebra
    if form is not None:
        check_invariant_form(g, form)
        rows = form.to_rows()
    acc: dict = {}
    central = Fraction(0)
    for m, x in A.terms.items():
        for n, y in B.terms.items():
            br = g.bracket(x, y)
            acc[m + n] = tuple(a + b for a, b in zip(acc.get(m + n, g.zero()), br))
            if form is not None and m + n == 0 and m != 0:
                central += m * sum(
                    (x[i] * rows[i][j] * y[j] for i in range(g.dim) for j in range(g.dim) if rows[i][j]),
                    Fraction(0),
                )
    return LoopElement(g, acc, central)


def parse_loop(g: LieAlgebra, text: str) -> LoopElement:
    """Parse ``"X@1"``, ``"2*X@1 + -1/2*Y@-1"`` into a loop element."""
    out = LoopElement(g)
    text = text.strip()
    if not text or text == "0":
        return out
    for chunk in re.split(r"\s*\+\s*(?=[^@]*@)", text):
        m = re.fullmatch(r"\s*(?:([-+]?\d+(?:/\d+)?)\s*\*\s*)?([^@*\s]+)\s*@\s*(-?\d+)\s*", chunk)
        if not m:
            raise ValueError(f"bad loop monomial {chunk!r}; expected <label>@<exponent>")
        coeff = to_rational(m.group(1)) if m.group(1) else Fraction(1)
        out = out + LoopElement.monomial(g, m.group(2), int(m.group(3)), coeff)
    return out


@dataclass(frozen=True)
class OperatorLoop:
    """Finite Laurent sum with Weyl-operator coefficients in k variables."""

    k: int
    terms: Mapping = field(default_factory=dict)

    def __post_init__(self):
        clean = {int(n): op for n, op in self.terms.items() if not op.is_zero()}
        for op in clean.values():
            if op.k != self.k:
                raise ValueError("coefficient in the wrong number of variables")
        object.__setattr__(self, "terms", dict(sorted(clean.items())))

    def __eq__(self, other) -> bool:
        if not isinstance(other, OperatorLoop):
            return NotImplemented
        return self.k == other.k and self.terms == other.terms

    def __hash__(self):
        return hash((self.k, tuple(self.terms.items())))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({op})@{n}" for n, op in self.terms.items())

    def to_dict(self) -> dict:
        return {str(n): str(op) for n, op in self.terms.items()}


def operator_loop_bracket(A: OperatorLoop, B: OperatorLoop) -> OperatorLoop:
    if A.k != B.k:
        raise AlgebraMismatch("operator loops in different numbers of variables")
    acc: dict = {}
    for m, x in A.terms.items():
        for n, y in B.terms.items():
            acc[m + n] = acc.get(m + n, WeylOperator.zero(A.k)) + commutator(x, y)
    return OperatorLoop(A.k, acc)


def quantized_loop(loop: LoopElement, F=None, p=None, quantization: Quantization | None = None) -> OperatorLoop:
    """Replace each coefficient c_n by rho(c_n); rho comes from ``quantize_nilpotent``."""
    if quantization is None:
        if F is None:
            raise ValueError("need a functional or a precomputed quantization")
        quantization = quantize_nilpotent(loop.algebra, F, p)
    elif quantization.algebra != loop.algebra:
        raise AlgebraMismatch("quantization belongs to a different algebra")
    if loop.central:
        raise ValueError("central term has no image under a zero-form quantization")
    return OperatorLoop(quantization.k, {n: quantization.image(v) for n, v in loop.terms.items()})


# -- oscillator Fock space ------------------------------------------------------


class FockState:
    """Combination of a_{-k_1}...a_{-k_m}|mu> over partitions (k_1 >= ... >= k_m)."""

    __slots__ = ("momentum", "coeffs")

    def __init__(self, momentum, coeffs: Mapping | None = None):
        self.momentum = to_rational(momentum)
        clean: dict = {}
        for part, x in (coeffs or {}).items():
            part = tuple(sorted(part, reverse=True))
            if any(k <= 0 for k in part):
                raise ValueError(f"creation parts must be positive, got {part}")
            x = to_rational(x)
            clean[part] = clean.get(part, 0) + x
        self.coeffs = {p: x for p, x in sorted(clean.items(), reverse=True) if x}

    @classmethod
    def vacuum(cls, momentum=0) -> "FockState":
        return cls(momentum, {(): 1})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, part) -> Fraction:
        return self.coeffs.get(tuple(part), Fraction(0))

    def __add__(self, other: "FockState") -> "FockState":
        if self.momentum != other.momentum:
            raise ValueError("states in different momentum sectors")
        acc = dict(self.coeffs)
        for p, x in other.coeffs.items():
            acc[p] = acc.get(p, 0) + x
        return FockState(self.momentum, acc)

    def __sub__(self, other: "FockState") -> "FockState":
        return self + other.scale(-1)

    def scale(self, c) -> "FockState":
        c = to_rational(c)
        return FockState(self.momentum, {p: c * x for p, x in self.coeffs.items()})

    def levels(self) -> set:
        return {sum(p) for p in self.coeffs}

    def __eq__(self, other) -> bool:
        if not isinstance(other, FockState):
            return NotImplemented
        return self.momentum == other.momentum and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.momentum, tuple(self.coeffs.items())))

    def __repr__(self) -> str:
        return f"FockState({self})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        mu = rational_str(self.momentum)
        return " + ".join(
            f"{rational_str(x)}*{''.join(f'a(-{k})' for k in p)}|{mu}>" for p, x in self.coeffs.items()
        )


def _fock_act_basis(n: int, part: tuple, mu: Fraction) -> list:
    if n < 0:
        return [(tuple(sorted(part + (-n,), reverse=True)), Fraction(1))]
    if n == 0:
        return [(part, mu)] if mu else []
    mult = part.count(n)
    if not mult:
        return []
    i = part.index(n)
    return [(part[:i] + part[i + 1 :], Fraction(n * mult))]


def fock_act(n: int, s: FockState) -> FockState:
    """Oscillator mode a_n with [a_m, a_n] = m delta_{m+n,0} and a_0 = momentum."""
    acc: dict = {}
    for part, x in s.coeffs.items():
        for p, y in _fock_act_basis(n, part, s.momentum):
            acc[p] = acc.get(p, 0) + x * y
    return FockState(s.momentum, acc)


def sugawara_act(n: int, s: FockState) -> FockState:
    """L_n = 1/2 sum_k :a_{n-k} a_k: with positive modes acting first."""
    out = FockState(s.momentum)
    for part, x in s.coeffs.items():
        level = sum(part)
        basis = FockState(s.momentum, {part: 1})
        for k in range(n - level, level + 1):
            i, j = sorted((n - k, k))
            if j > level:
                continue
            out = out + fock_act(i, fock_act(j, basis)).scale(x / 2)
    return out


@dataclass(frozen=True)
class VirasoroCheck:
    passed: bool
    central_charge: Fraction
    failures: tuple

    def to_dict(self) -> dict:
        return {
            "status": "pass" if self.passed else "fail",
            "central_charge": rational_str(self.central_charge),
            "failures": [{"m": m, "n": n, "state": list(p)} for m, n, p in self.failures],
        }


def virasoro_check(max_mode: int, max_level: int, momentum=0, central_denominator: int = 12) -> VirasoroCheck:
    """Exhaustive check of the Virasoro relations with c = 1 on the Fock space.

    The expected cocycle is m (m^2 - 1) / ``central_denominator``; passing
    anything other than 12 gives a deliberately wrong target.
    """
    mu = to_rational(momentum)
    vac = FockState.vacuum(mu)
    # [L_2, L_-2]|mu> = (4 L_0 + c/2)|mu>, L_0|mu> = mu^2/2
    comm = sugawara_act(2, sugawara_act(-2, vac)) - sugawara_act(-2, sugawara_act(2, vac))
    c = 2 * (comm[()] - 4 * mu * mu / 2)
    bad = []
    modes = range(-max_mode, max_mode + 1)
    for level in range(max_level + 1):
        for part in partitions(level):
            s = FockState(mu, {part: 1})
            for m in modes:
                for n in modes:
                    lhs = sugawara_act(m, sugawara_act(n, s)) - sugawara_act(n, sugawara_act(m, s))
                    rhs = sugawara_act(m + n, s).scale(m - n)
                    if m + n == 0:
                        rhs = rhs + s.scale(Fraction(m**3 - m, central_denominator))
                    if lhs != rhs:
                        bad.append((m, n, part))
    return VirasoroCheck(not bad, c, tuple(sorted(bad)))


def exp_graded_dims(d: Sequence[int], max_level: int) -> list:
    """Coefficients of prod_i (1 - q^i)^(-d_i) up to q^max_level; d[0] is degree 1."""
    coeffs = [1] + [0] * max_level
    for i, di in enumerate(d, start=1):
        if di < 0:
            raise ValueError("graded dimensions must be nonnegative")
        if i > max_level:
            break
        for _ in range(di):
            for lv in range(i, max_level + 1):
                coeffs[lv] += coeffs[lv - i]
    return coeffs
