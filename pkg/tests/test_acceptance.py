"""End-to-end acceptance suite.

Each test records a pass/fail line that conftest prints in the terminal summary.
All comparisons are exact rational equality.
"""

import contextlib
import random
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from conftest import ACCEPTANCE_RESULTS
from oracles import brute_gram, multiset_counts, partition_numbers, wall_chain_count
from orbitloop.fock import exp_graded_dims, virasoro_check
from orbitloop.lie import Functional, catalog, subalgebra
from orbitloop.orbit import homomorphism_failures, quantize_nilpotent, vergne_polarization
from orbitloop.parabolic import Composition, compositions, tower_count, towers
from orbitloop.virasoro import (
    VermaModule,
    act,
    gram_matrix,
    irreducible_graded_dims,
    kac_determinant,
    relation_failures,
    singular_vectors,
)
from orbitloop.weyl import WeylOperator


@contextlib.contextmanager
def criterion(key, text):
    ACCEPTANCE_RESULTS[key] = ("FAIL", text)
    start = time.perf_counter()
    yield
    ACCEPTANCE_RESULTS[key] = ("PASS", f"{text} ({time.perf_counter() - start:.2f}s)")


def random_rational(rng, lo=-9, hi=9, den=7):
    return Fraction(rng.randint(lo, hi), rng.randint(1, den))


def test_01_weyl_homomorphism():
    with criterion("01", "orbit-method operators respect brackets on h3, h5, h7, filiform4"):
        rng = random.Random(2024)
        start = time.perf_counter()
        for name in ("h3", "h5", "h7", "filiform4"):
            g = catalog(name)
            functionals = [Functional.dual(g, g.labels[-1])]
            functionals += [Functional(tuple(random_rational(rng) for _ in range(g.dim))) for _ in range(2)]
            for F in functionals:
                Q = quantize_nilpotent(g, F)
                assert homomorphism_failures(g, Q.rho) == []
        assert time.perf_counter() - start < 5


def test_02_heisenberg_golden():
    with criterion("02", "h3 at Z*: polarization <Y,Z>, X -> lambda d, Y -> q, Z -> lambda"):
        h3 = catalog("h3")
        F = Functional.dual(h3, "Z")
        p = vergne_polarization(h3, F)
        assert p.basis == subalgebra(h3, "Y", "Z").basis
        Q = quantize_nilpotent(h3, F)
        assert Q.polarization.basis == p.basis
        assert Q["X"] == WeylOperator.d(1, 0).times_lambda()
        assert Q["Y"] == WeylOperator.q(1, 0)
        assert Q["Z"] == WeylOperator.lam(1)


def test_03_virasoro_relations():
    with criterion("03", "Virasoro relations for |m|,|n| <= 3 on Verma bases to level 6"):
        rng = random.Random(11)
        points = [
            (Fraction(1, 2), Fraction(1, 16)),
            (Fraction(1, 2), Fraction(1, 2)),
            (Fraction(25, 2), Fraction(3)),
            (random_rational(rng), random_rational(rng)),
        ]
        start = time.perf_counter()
        for c, h in points:
            assert relation_failures(VermaModule(c, h), 3, 6) == []
        assert time.perf_counter() - start < 30


def test_04_kac_zeros_level_two():
    with criterion("04", "level-2 Gram matrix: closed form, brute-force oracle, Kac zeros"):
        for c, h in [(Fraction(1, 2), Fraction(1, 16)), (Fraction(1, 2), Fraction(1, 2))]:
            assert kac_determinant(VermaModule(c, h), 2) == 0
        assert kac_determinant(VermaModule(7, 5), 2) != 0
        rng = random.Random(5)
        for _ in range(5):
            c, h = random_rational(rng), random_rational(rng)
            G = gram_matrix(VermaModule(c, h), 2)
            expected = [[4 * h + c / 2, 6 * h], [6 * h, 4 * h * (2 * h + 1)]]
            assert G.matrix.to_rows() == expected
            assert G.matrix.to_rows() == brute_gram(c, h, list(G.basis))


def test_05_singular_vector():
    with criterion("05", "unique level-2 singular vector at (1/2, 1/16), killed by L1, L2, L3"):
        V = VermaModule(Fraction(1, 2), Fraction(1, 16))
        vecs = singular_vectors(V, 2)
        assert len(vecs) == 1
        v = vecs[0]
        assert v.coeffs == {(2,): 1, (1, 1): Fraction(-4, 3)}
        for m in (1, 2, 3):
            assert act(m, v).is_zero()
        G = gram_matrix(V, 2)
        assert all(x == 0 for x in G.matrix.apply(v.to_list(list(G.basis))))


def test_06_irreducible_dims():
    with criterion("06", "irreducible quotient dims from Gram ranks"):
        generic = VermaModule(Fraction(13, 7), Fraction(4, 11))
        assert irreducible_graded_dims(generic, 5) == partition_numbers(5) == [1, 1, 2, 3, 5, 7]
        assert irreducible_graded_dims(VermaModule(Fraction(1, 2), 0), 1)[1] == 0


def test_07_sugawara():
    with criterion("07", "Sugawara modes on Fock space give Virasoro with c = 1; tamper caught"):
        start = time.perf_counter()
        for mu in (0, Fraction(1, 2), 1):
            rep = virasoro_check(3, 6, mu)
            assert rep.passed and rep.central_charge == 1
        tampered = virasoro_check(3, 6, 0, central_denominator=24)
        assert not tampered.passed
        assert time.perf_counter() - start < 60


def test_08_exponential_dims():
    with criterion("08", "exp dims of (1,1,1,1,1) to level 5 equal 1,1,2,3,5,7"):
        assert exp_graded_dims((1, 1, 1, 1, 1), 5) == [1, 1, 2, 3, 5, 7]
        assert multiset_counts([1, 1, 1, 1, 1], 5) == [1, 1, 2, 3, 5, 7]


def test_09_tower_counts():
    with criterion("09", "tower counts equal (l-1)! for all compositions with n <= 6"):
        start = time.perf_counter()
        assert len(towers(Composition((1, 1, 1, 1)))) == 6
        for n in range(1, 7):
            for P in compositions(n):
                expected = 1
                for i in range(1, len(P.parts)):
                    expected *= i
                assert tower_count(P) == expected == wall_chain_count(P.walls(), n)
        assert time.perf_counter() - start < 5


CLI_RUNS = [
    ["verma", "--c", "1/2", "--h", "1/16", "--level", "4", "--gram", "--det", "--singular", "--irreducible-dims"],
    ["quantize", "filiform4", "--functional", "0,0,1,1", "--random-checks", "2", "--seed", "3"],
    ["--format", "table", "towers", "--composition", "1,1,2,1"],
    ["sugawara", "--max-mode", "2", "--level", "3", "--momentum", "1/2"],
    ["loopbracket", "h3", "--a", "X@1 + Y@2", "--b", "Y@-1", "--functional", "0,0,1", "--quantized"],
]


def test_10_cli_determinism():
    with criterion("10", "repeated CLI runs are byte-identical"):
        for argv in CLI_RUNS:
            cmd = [sys.executable, "-m", "orbitloop.cli", *argv]
            outputs = [subprocess.run(cmd, capture_output=True, check=True).stdout for _ in range(3)]
            assert outputs[0] and outputs[0] == outputs[1] == outputs[2]
