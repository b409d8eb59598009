"""Orbit-method quantization of nilpotent and solvable Lie algebras over Q.

The representation of a nilpotent algebra attached to a functional F and a
polarization p is the derivative of the representation induced from the
character exp(lambda F) of P = exp p. Coordinates on G/P are coordinates of
the second kind along a chain of subalgebras p = h_0 < h_1 < ... < h_k = g,

    s(t) = exp(t_k Y_k) ... exp(t_1 Y_1),

so every group-law computation reduces to exponentials of nilpotent ad
matrices, which are polynomial in t. Writing
``-Ad(s(t)^-1) x = sum_j tdot_j(t) omega_j(t) + P(t)`` with P(t) in p and
omega_j = s^-1 d_j s gives

    rho(x) = sum_j tdot_j(t) d/dt_j - lambda F(P(t)).

By default the result is rewritten in momentum coordinates t_j = -q_j/lambda,
which turns the Heisenberg case into X -> lambda d/dq, Y -> q, Z -> lambda.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exact import (
    RationalMatrix,
    coordinates,
    in_span,
    intersect,
    inverse,
    kernel_basis,
    rational_str,
    reduce_mod,
    span,
)
from .lie import (
    Functional,
    LieAlgebra,
    Subalgebra,
    center,
    is_nilpotent,
    is_solvable,
    lower_central_series,
)
from .weyl import Polynomial, WeylOperator, commutator


class NotNilpotent(ValueError):
    pass


class NotSolvable(ValueError):
    pass


class FlagNotIdealChain(ValueError):
    pass


class PolarizationInvalid(ValueError):
    pass


class QuotientNotHeisenberg(ValueError):
    pass


class DegenerateFunctional(ValueError):
    pass


def form_matrix(g: LieAlgebra, F: Functional, basis: Sequence[Sequence] | None = None) -> RationalMatrix:
    """Gram matrix of B_F(x, y) = F([x, y]) on ``basis`` (default: all of g)."""
    F.check_dim(g)
    if basis is None:
        basis = [g.basis_vector(i) for i in range(g.dim)]
    return RationalMatrix.from_rows(
        [[F(g.bracket(x, y)) for y in basis] for x in basis], len(basis)
    )


def _restricted_stabilizer(g: LieAlgebra, F: Functional, basis: Sequence[Sequence]) -> tuple:
    """{x in V : F([x, V]) = 0} for V = span(basis), as g-vectors."""
    if not basis:
        return ()
    B = form_matrix(g, F, basis)
    vecs = []
    for c in kernel_basis(B):
        vecs.append(tuple(sum((ci * b[j] for ci, b in zip(c, basis)), Fraction(0)) for j in range(g.dim)))
    return span(vecs, g.dim)


def stabilizer(g: LieAlgebra, F: Functional) -> Subalgebra:
    """g_F = {x : F([x, .]) = 0}."""
    return Subalgebra(g, _restricted_stabilizer(g, F, [g.basis_vector(i) for i in range(g.dim)]))


# -- flags and Vergne polarizations -----------------------------------------


def _complement(g: LieAlgebra, big: Sequence[Sequence], small: Sequence[Sequence]) -> tuple:
    """Echelon-canonical complement of span(small) inside span(big)."""
    small = span(small, g.dim)
    reduced = [reduce_mod(small, v) for v in span(big, g.dim)]
    return span([v for v in reduced if any(v)], g.dim)


def default_flag(g: LieAlgebra) -> list:
    """Ideal flag 0 = g_0 < g_1 < ... < g_n = g refining the lower central series.

    At each step the deepest series term not yet covered supplies the next
    vector: the last row of the echelon-canonical complement. Since
    [g, C^t] lies in C^{t+1}, which is already covered, each step is an ideal.
    """
    if not is_nilpotent(g):
        raise NotNilpotent("default flag needs a nilpotent algebra")
    series = [s.basis for s in lower_central_series(g)]
    current: tuple = ()
    flag = [current]
    while len(current) < g.dim:
        for term in reversed(series):
            comp = _complement(g, term, current)
            if comp:
                current = span(list(current) + [comp[-1]], g.dim)
                break
        flag.append(current)
    return flag


def validate_flag(g: LieAlgebra, flag: Sequence[Sequence[Sequence]]) -> list:
    canon = [span(step, g.dim) for step in flag]
    if len(canon) != g.dim + 1:
        raise FlagNotIdealChain(f"flag must have {g.dim + 1} terms, got {len(canon)}")
    for i, step in enumerate(canon):
        if len(step) != i:
            raise FlagNotIdealChain(f"flag term {i} has dimension {len(step)}")
        if i and not all(in_span(step, v, g.dim) for v in canon[i - 1]):
            raise FlagNotIdealChain(f"flag term {i - 1} is not contained in term {i}")
        for v in step:
            for j in range(g.dim):
                if not in_span(step, g.bracket(g.basis_vector(j), v), g.dim):
                    raise FlagNotIdealChain(f"flag term {i} is not an ideal")
    return canon


def vergne_polarization(g: LieAlgebra, F: Functional, flag=None) -> Subalgebra:
    """Sum over the flag of the stabilizers of F restricted to each term."""
    F.check_dim(g)
    if not is_nilpotent(g):
        raise NotNilpotent("Vergne polarizations are built for nilpotent algebras")
    flag = default_flag(g) if flag is None else validate_flag(g, flag)
    vecs = []
    for step in flag[1:]:
        vecs.extend(_restricted_stabilizer(g, F, step))
    return Subalgebra(g, span(vecs, g.dim))


@dataclass(frozen=True)
class PolarizationReport:
    passed: bool
    failed: str | None = None
    detail: str = ""

    def to_dict(self) -> dict:
        out = {"status": "pass" if self.passed else "fail"}
        if not self.passed:
            out["condition"] = self.failed
            out["detail"] = self.detail
        return out


def check_polarization(g: LieAlgebra, F: Functional, p) -> PolarizationReport:
    """Check (a) subalgebra, (b) F([p,p]) = 0, (c) dim p = (dim g + dim g_F)/2.

    ``p`` may be a Subalgebra or a plain list of spanning vectors.
    """
    F.check_dim(g)
    basis = p.basis if isinstance(p, Subalgebra) else span(p, g.dim)
    for x, y in itertools.combinations(basis, 2):
        if not in_span(basis, g.bracket(x, y), g.dim):
            return PolarizationReport(False, "a", f"[{g.format_vector(x)}, {g.format_vector(y)}] leaves the subspace")
    for x, y in itertools.combinations(basis, 2):
        val = F(g.bracket(x, y))
        if val != 0:
            return PolarizationReport(
                False, "b", f"F([{g.format_vector(x)}, {g.format_vector(y)}]) = {rational_str(val)} != 0"
            )
    stab = stabilizer(g, F).dim
    if 2 * len(basis) != g.dim + stab:
        return PolarizationReport(
            False, "c", f"dim p = {len(basis)}, expected (dim g + dim g_F)/2 = {Fraction(g.dim + stab, 2)}"
        )
    return PolarizationReport(True)


# -- quantization of nilpotent algebras ---------------------------------------


def normalizer(g: LieAlgebra, basis: Sequence[Sequence]) -> tuple:
    """{x : [x, h] in h} for h = span(basis)."""
    h = span(basis, g.dim)
    if not h:
        return span([g.basis_vector(i) for i in range(g.dim)], g.dim)
    pivots = {next(i for i, x in enumerate(b) if x) for b in h}
    free = [c for c in range(g.dim) if c not in pivots]
    rows = []
    for b in h:
        images = [reduce_mod(h, g.bracket(g.basis_vector(s), b)) for s in range(g.dim)]
        for c in free:
            rows.append([images[s][c] for s in range(g.dim)])
    if not rows:
        return span([g.basis_vector(i) for i in range(g.dim)], g.dim)
    return span(kernel_basis(RationalMatrix.from_rows(rows, g.dim)), g.dim)


def subalgebra_chain(g: LieAlgebra, p: Subalgebra) -> list:
    """Vectors Y_1..Y_k with p + <Y_1..Y_j> a subalgebra, each codimension one in the next."""
    current = p.basis
    ys = []
    while len(current) < g.dim:
        comp = _complement(g, normalizer(g, current), current)
        if not comp:
            raise NotNilpotent("subalgebra equals its normalizer; the algebra is not nilpotent")
        ys.append(comp[0])
        current = span(list(current) + [comp[0]], g.dim)
    return ys


def _poly_vec_zero(n: int, k: int) -> list:
    return [Polynomial(k) for _ in range(n)]


def _const_vec(v: Sequence, k: int) -> list:
    return [Polynomial.constant(k, x) for x in v]


def _exp_ad(adm: list, var: int, k: int, v: list, sign: int = -1) -> list:
    """exp(sign * t_var * ad) applied to a vector with polynomial entries."""
    n = len(v)
    t = Polynomial.variable(k, var) * sign
    out = list(v)
    term = list(v)
    m = 1
    while True:
        term = [sum((term[s] * adm[r][s] for s in range(n) if adm[r][s]), Polynomial(k)) for r in range(n)]
        if all(x.is_zero() for x in term):
            return out
        term = [x * t * Fraction(1, m) for x in term]
        out = [a + b for a, b in zip(out, term)]
        m += 1
        if m > n + 1:
            raise NotNilpotent("ad is not nilpotent")


@dataclass(frozen=True)
class Quantization:
    algebra: LieAlgebra
    functional: Functional
    polarization: Subalgebra
    chain: tuple
    momentum: bool
    rho: tuple  # WeylOperator per basis element

    @property
    def k(self) -> int:
        return len(self.chain)

    def __getitem__(self, label) -> WeylOperator:
        if isinstance(label, str):
            label = self.algebra.index(label)
        return self.rho[label]

    def image(self, x: Sequence) -> WeylOperator:
        out = WeylOperator.zero(self.k)
        for c, op in zip(x, self.rho):
            if c:
                out = out + op.scale(c)
        return out

    def as_dict(self) -> dict:
        return {lab: op for lab, op in zip(self.algebra.labels, self.rho)}

    def check(self) -> list:
        return homomorphism_failures(self.algebra, self.rho)


def homomorphism_failures(g: LieAlgebra, rho: Sequence[WeylOperator]) -> list:
    """Pairs (i, j) where [rho(e_i), rho(e_j)] != rho([e_i, e_j])."""
    k = rho[0].k if rho else 0
    bad = []
    for i, j in itertools.combinations(range(g.dim), 2):
        lhs = commutator(rho[i], rho[j])
        rhs = WeylOperator.zero(k)
        for idx, c in enumerate(g.bracket_basis(i, j)):
            if c:
                rhs = rhs + rho[idx].scale(c)
        if lhs != rhs:
            bad.append((i, j))
    return bad


def quantize_nilpotent(g: LieAlgebra, F: Functional, p: Subalgebra | None = None, momentum: bool = True) -> Quantization:
    """Weyl-algebra representation attached to (F, p); see the module docstring."""
    F.check_dim(g)
    if not is_nilpotent(g):
        raise NotNilpotent("quantize_nilpotent needs a nilpotent algebra")
    if p is None:
        p = vergne_polarization(g, F)
    report = check_polarization(g, F, p)
    if not report.passed:
        raise PolarizationInvalid(f"condition ({report.failed}) fails: {report.detail}")

    n = g.dim
    ys = subalgebra_chain(g, p)
    k = len(ys)
    adapted = list(p.basis) + ys
    inv = inverse(RationalMatrix.from_rows([list(v) for v in adapted], n)).to_rows()
    ads = [g.ad(y).to_rows() for y in ys]

    def coords(v: list) -> list:
        return [sum((v[s] * inv[s][c] for s in range(n) if inv[s][c]), Polynomial(k)) for c in range(n)]

    omegas = []
    for j in range(k):
        w = _const_vec(ys[j], k)
        for i in reversed(range(j)):
            w = _exp_ad(ads[i], i, k, w)
        omegas.append(w)

    m = len(p.basis)
    f_on_p = [F(b) for b in p.basis]
    rho = []
    for idx in range(n):
        v = _const_vec(g.basis_vector(idx), k)
        for i in reversed(range(k)):
            v = _exp_ad(ads[i], i, k, v)
        v = [-x for x in v]
        tdot = [Polynomial(k)] * k
        for j in reversed(range(k)):
            c = coords(v)[m + j]
            tdot[j] = c
            if not c.is_zero():
                v = [a - c * b for a, b in zip(v, omegas[j])]
        cp = coords(v)
        assert all(x.is_zero() for x in cp[m:]), "triangular solve left a component outside p"
        char = sum((cp[a] * f_on_p[a] for a in range(m) if f_on_p[a]), Polynomial(k))
        rho.append(_to_operator(k, tdot, char, momentum))
    return Quantization(g, F, p, tuple(ys), momentum, tuple(rho))


def _to_operator(k: int, tdot: list, char: Polynomial, momentum: bool) -> WeylOperator:
    """Assemble sum_j tdot_j d_j - lambda * char, optionally with t = -q/lambda."""
    zero = (0,) * k
    terms: dict = {}

    def put(key, c):
        terms[key] = terms.get(key, 0) + c

    for j, poly in enumerate(tdot):
        dj = tuple(int(i == j) for i in range(k))
        for a, c in poly.terms.items():
            if momentum:
                # t^a d_t = (-1)^|a| l^-|a| q^a * (-l) d_q
                put((a, dj, 1 - sum(a)), c * (-1) ** (sum(a) + 1))
            else:
                put((a, dj, 0), c)
    for a, c in char.terms.items():
        if momentum:
            put((a, zero, 1 - sum(a)), -c * (-1) ** sum(a))
        else:
            put((a, zero, 1), -c)
    return WeylOperator(k, terms)


# -- solvable case: reduction to a Heisenberg quotient ------------------------


@dataclass(frozen=True)
class HeisenbergReduction:
    """p / K with K = ker F|_p intersected with the radical of F([.,.]) on p.

    ``darboux`` lists lifts to g of the quotient basis X_1..X_m, Y_1..Y_m, Z;
    ``rep`` gives the Weyl operator of each basis vector of p.
    """

    algebra: LieAlgebra
    functional: Functional
    polarization: Subalgebra
    kernel: tuple
    quotient: LieAlgebra
    m: int
    darboux: tuple
    rep: tuple = field(default=())

    def image(self, x: Sequence) -> WeylOperator:
        c = coordinates(self.polarization.basis, x)
        if c is None:
            raise ValueError("vector is not in the polarization")
        out = WeylOperator.zero(self.m)
        for ci, op in zip(c, self.rep):
            if ci:
                out = out + op.scale(ci)
        return out

    def check(self) -> list:
        """Pairs of p-basis indices where the pulled-back map fails to be a homomorphism."""
        g = self.algebra
        bad = []
        for (i, x), (j, y) in itertools.combinations(enumerate(self.polarization.basis), 2):
            if commutator(self.rep[i], self.rep[j]) != self.image(g.bracket(x, y)):
                bad.append((i, j))
        return bad


def standard_heisenberg(m: int) -> LieAlgebra:
    """h_{2m+1}; for m = 0 the one-dimensional algebra spanned by Z."""
    if m == 0:
        return LieAlgebra(["Z"], {})
    labels = [f"X{i + 1}" for i in range(m)] + [f"Y{i + 1}" for i in range(m)] + ["Z"]
    return LieAlgebra(labels, {(i, m + i): {2 * m: 1} for i in range(m)})


def heisenberg_reduction(
    g: LieAlgebra, F: Functional, p: Subalgebra, require_polarization: bool = True
) -> HeisenbergReduction:
    F.check_dim(g)
    if not is_solvable(g):
        raise NotSolvable("heisenberg_reduction needs a solvable algebra")
    if require_polarization:
        report = check_polarization(g, F, p)
        if not report.passed:
            raise PolarizationInvalid(f"condition ({report.failed}) fails: {report.detail}")
    pb = list(p.basis)
    dp = len(pb)
    fvals = [F(b) for b in pb]
    if not any(fvals):
        raise DegenerateFunctional("F vanishes on p; the quotient is zero")

    def lift(c: Sequence) -> tuple:
        return tuple(sum((ci * b[j] for ci, b in zip(c, pb)), Fraction(0)) for j in range(g.dim))

    rad = kernel_basis(form_matrix(g, F, pb))
    kerF = kernel_basis(RationalMatrix.from_rows([fvals], dp))
    K = intersect(span(rad, dp), span(kerF, dp), dp)
    for kv in K:
        for b in pb:
            c = coordinates(pb, g.bracket(lift(kv), b))
            if not in_span(K, c, dp):
                raise QuotientNotHeisenberg("K is not an ideal of p")

    pivots = {next(i for i, x in enumerate(v) if x) for v in K}
    free = [i for i in range(dp) if i not in pivots]
    r = len(free)

    def to_quotient(c: Sequence) -> tuple:
        red = reduce_mod(K, c) if K else tuple(c)
        return tuple(red[i] for i in free)

    qbasis = [tuple(Fraction(int(i == f)) for i in range(dp)) for f in free]
    brackets = {}
    for a, b in itertools.combinations(range(r), 2):
        c = coordinates(pb, g.bracket(lift(qbasis[a]), lift(qbasis[b])))
        img = to_quotient(c)
        if any(img):
            brackets[(a, b)] = {t: x for t, x in enumerate(img) if x}
    labels = [f"u{i + 1}" for i in range(r)]
    quotient = LieAlgebra(labels, brackets)

    fq = Functional(tuple(fvals[f] for f in free))
    zq = center(quotient).basis
    if len(zq) != 1:
        raise QuotientNotHeisenberg(f"quotient center has dimension {len(zq)}, expected 1")
    z = zq[0]
    fz = fq(z)
    if fz == 0:
        raise QuotientNotHeisenberg("F vanishes on the quotient center")
    z = tuple(x / fz for x in z)
    for a, b in itertools.combinations(range(r), 2):
        if not in_span([z], quotient.bracket_basis(a, b), r):
            raise QuotientNotHeisenberg("quotient is not two-step with central derived algebra")

    def omega(u, v):
        return fq(quotient.bracket(u, v))

    rest = [v for v in _complement(quotient, [quotient.basis_vector(i) for i in range(r)], [z])]
    xs, ysymp = [], []
    while rest:
        x = rest.pop(0)
        partner = next((w for w in rest if omega(x, w) != 0), None)
        if partner is None:
            raise QuotientNotHeisenberg("induced symplectic form is degenerate")
        rest.remove(partner)
        y = tuple(c / omega(x, partner) for c in partner)
        xs.append(x)
        ysymp.append(y)
        rest = [
            tuple(wi - omega(w, y) * xi + omega(w, x) * yi for wi, xi, yi in zip(w, x, y)) for w in rest
        ]
    m = len(xs)
    dbasis = xs + ysymp + [z]

    std = standard_heisenberg(m)
    for a, b in itertools.combinations(range(2 * m + 1), 2):
        got = coordinates(dbasis, quotient.bracket(dbasis[a], dbasis[b]))
        if got != std.bracket_basis(a, b):
            raise QuotientNotHeisenberg("Darboux basis does not reproduce the Heisenberg relations")

    weyl = [WeylOperator.d(m, i).times_lambda(1) for i in range(m)]
    weyl += [WeylOperator.q(m, i) for i in range(m)]
    weyl += [WeylOperator.lam(m)]

    rep = []
    for b in range(dp):
        unit = tuple(Fraction(int(i == b)) for i in range(dp))
        c = coordinates(dbasis, to_quotient(unit))
        op = WeylOperator.zero(m)
        for ci, w in zip(c, weyl):
            if ci:
                op = op + w.scale(ci)
        rep.append(op)

    def lift_quot(u):
        return lift(tuple(sum((u[t] * qbasis[t][i] for t in range(r)), Fraction(0)) for i in range(dp)))

    return HeisenbergReduction(
        algebra=g,
        functional=F,
        polarization=p,
        kernel=tuple(lift(v) for v in K),
        quotient=quotient,
        m=m,
        darboux=tuple(lift_quot(u) for u in dbasis),
        rep=tuple(rep),
    )
