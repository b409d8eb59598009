import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orbitloop.exact import RationalMatrix
from orbitloop.fock import (
    AlgebraMismatch,
    FockState,
    FormNotInvariant,
    LoopElement,
    OperatorLoop,
    exp_graded_dims,
    fock_act,
    loop_bracket,
    operator_loop_bracket,
    parse_loop,
    quantized_loop,
    sugawara_act,
    virasoro_check,
)
from orbitloop.lie import Functional, catalog
from orbitloop.orbit import quantize_nilpotent
from orbitloop.virasoro import VermaModule, irreducible_graded_dims, partitions
from orbitloop.weyl import WeylOperator

from oracles import multiset_counts, partition_numbers

mu = Fraction(3, 7)


def state(*parts, momentum=mu):
    return FockState(momentum, {tuple(parts): 1})


def test_fock_act_examples():
    assert fock_act(1, state(1)) == FockState.vacuum(mu)
    assert fock_act(-2, FockState.vacuum(mu)) == state(2)
    assert fock_act(2, state(2, 2)) == state(2).scale(4)
    assert fock_act(0, state(3, 1)) == state(3, 1).scale(mu)
    assert fock_act(3, state(2, 1)).is_zero()


def test_oscillator_relations():
    for level in range(6):
        for part in partitions(level):
            s = state(*part)
            for m in range(-5, 6):
                for n in range(-5, 6):
                    lhs = fock_act(m, fock_act(n, s)) - fock_act(n, fock_act(m, s))
                    rhs = s.scale(m) if m + n == 0 else FockState(mu)
                    assert lhs == rhs


def test_sugawara_examples():
    assert sugawara_act(0, state(1, momentum=0)) == state(1, momentum=0)
    assert sugawara_act(1, FockState.vacuum(mu)).is_zero()
    vac = FockState.vacuum(0)
    comm = sugawara_act(2, sugawara_act(-2, vac)) - sugawara_act(-2, sugawara_act(2, vac))
    assert comm == vac.scale(Fraction(1, 2))


def test_sugawara_l0_eigenvalue():
    for level in range(5):
        for part in partitions(level):
            s = state(*part)
            assert sugawara_act(0, s) == s.scale(mu * mu / 2 + level)


def test_sugawara_lowering_example():
    # L_{-1}|mu> = a_{-1} a_0 |mu> = mu a_{-1}|mu>
    assert sugawara_act(-1, FockState.vacuum(mu)) == state(1).scale(mu)


@pytest.mark.parametrize("momentum", [0, Fraction(1, 2), 1])
def test_virasoro_check_small(momentum):
    rep = virasoro_check(2, 4, momentum)
    assert rep.passed and rep.central_charge == 1


def test_virasoro_check_tampered():
    rep = virasoro_check(2, 2, 0, central_denominator=24)
    assert not rep.passed
    assert (2, -2, ()) in rep.failures
    assert rep.central_charge == 1


def test_exp_graded_dims_examples():
    assert exp_graded_dims([1] * 5, 5) == [1, 1, 2, 3, 5, 7]
    assert exp_graded_dims([0, 0, 0], 3) == [1, 0, 0, 0]
    assert exp_graded_dims([2], 4) == [1, 2, 3, 4, 5]
    assert exp_graded_dims([1] * 8, 8) == partition_numbers(8)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(0, 3), max_size=5), st.integers(0, 5))
def test_exp_graded_dims_matches_multisets(dims, max_level):
    assert exp_graded_dims(dims, max_level) == multiset_counts(dims, max_level)


def test_exp_of_generic_verma_dims():
    dims = irreducible_graded_dims(VermaModule(Fraction(13, 7), Fraction(4, 11)), 5)[1:]
    assert exp_graded_dims(dims, 5) == multiset_counts(dims, 5)


# -- loop elements --------------------------------------------------------------


def test_loop_bracket_examples():
    h3 = catalog("h3")
    out = loop_bracket(LoopElement.monomial(h3, "X", 1), LoopElement.monomial(h3, "Y", -1))
    assert out == LoopElement.monomial(h3, "Z", 0)
    A = parse_loop(h3, "X@2 + -1/2*Y@-1 + Z@0")
    assert loop_bracket(A, A).is_zero()
    a1 = catalog("abelian1")
    out = loop_bracket(LoopElement.monomial(a1, "e1", 2), LoopElement.monomial(a1, "e1", -2), RationalMatrix.identity(1))
    assert out == LoopElement(a1, {}, 2)


def test_parse_loop():
    h3 = catalog("h3")
    A = parse_loop(h3, "2*X@1 + -1/2*Y@-1")
    assert A.terms == {-1: (0, Fraction(-1, 2), 0), 1: (2, 0, 0)}
    assert str(A) == "-1/2*Y@-1 + 2*X@1"
    with pytest.raises(ValueError):
        parse_loop(h3, "X^1")
    with pytest.raises(KeyError):
        parse_loop(h3, "W@1")


def test_form_checks():
    s = catalog("sl2")
    trace_form = RationalMatrix.from_rows([[2, 0, 0], [0, 0, 1], [0, 1, 0]])
    A = LoopElement.monomial(s, "E", 1)
    B = LoopElement.monomial(s, "F", -1)
    out = loop_bracket(A, B, trace_form)
    assert out == LoopElement(s, {0: s.basis_vector("H")}, 1)
    with pytest.raises(FormNotInvariant):
        loop_bracket(A, B, RationalMatrix.identity(3))
    with pytest.raises(AlgebraMismatch):
        loop_bracket(A, LoopElement.monomial(catalog("h3"), "X", 1))


def random_loop(rng, g, terms=2):
    out = LoopElement(g)
    for _ in range(terms):
        label = rng.choice(g.labels)
        out = out + LoopElement.monomial(g, label, rng.randint(-2, 2), Fraction(rng.randint(-3, 3), rng.randint(1, 3)))
    return out


@pytest.mark.parametrize("seed", range(10))
def test_loop_bracket_antisymmetry_and_jacobi(seed):
    rng = random.Random(seed)
    s = catalog("sl2")
    form = RationalMatrix.from_rows([[2, 0, 0], [0, 0, 1], [0, 1, 0]])
    A, B, C = (random_loop(rng, s) for _ in range(3))
    assert loop_bracket(A, B, form) == loop_bracket(B, A, form).scale(-1)

    def br(x, y):
        # the central element brackets to zero with everything
        return loop_bracket(LoopElement(s, x.terms), LoopElement(s, y.terms), form)

    total = br(br(A, B), C) + br(br(B, C), A) + br(br(C, A), B)
    assert total.is_zero()


def test_quantized_loop_h3():
    h3 = catalog("h3")
    F = Functional.dual(h3, "Z")
    qx = quantized_loop(LoopElement.monomial(h3, "X", 1), F)
    qy = quantized_loop(LoopElement.monomial(h3, "Y", -1), F)
    assert operator_loop_bracket(qx, qy) == OperatorLoop(1, {0: WeylOperator.lam(1)})


def test_quantized_loop_degree_zero_is_plain_commutator():
    h3 = catalog("h3")
    Q = quantize_nilpotent(h3, Functional.dual(h3, "Z"))
    qx = quantized_loop(LoopElement.monomial(h3, "X", 0), quantization=Q)
    qz = quantized_loop(LoopElement.monomial(h3, "Y", 0), quantization=Q)
    assert operator_loop_bracket(qx, qz).terms == {0: WeylOperator.lam(1)}


def test_quantized_loop_naturality(nilpotent_algebra):
    g = nilpotent_algebra
    rng = random.Random(g.dim)
    F = Functional.dual(g, g.labels[-1])
    Q = quantize_nilpotent(g, F)
    for _ in range(6):
        A, B = random_loop(rng, g), random_loop(rng, g)
        via_bracket = quantized_loop(loop_bracket(A, B), quantization=Q)
        via_operators = operator_loop_bracket(quantized_loop(A, quantization=Q), quantized_loop(B, quantization=Q))
        assert via_bracket == via_operators


def test_quantized_loop_h5_exhaustive_monomials():
    h5 = catalog("h5")
    Q = quantize_nilpotent(h5, Functional.dual(h5, "Z"))
    for a, b in itertools.product(h5.labels, repeat=2):
        for m, n in [(1, -1), (2, 0), (-1, -2)]:
            A = LoopElement.monomial(h5, a, m)
            B = LoopElement.monomial(h5, b, n)
            lhs = operator_loop_bracket(quantized_loop(A, quantization=Q), quantized_loop(B, quantization=Q))
            assert lhs == quantized_loop(loop_bracket(A, B), quantization=Q)
