import math
from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from statlength.basis import BasisChange, Triviality, random_unitary, unitarity_defect
from statlength.uniqueness import (
    SearchConfig,
    Verdict,
    admissible_exponents,
    brute_force_cross_term,
    cross_term_coefficient,
    exponent_sweep,
    preservation_residual,
    preserver_search,
    random_vectors,
    unitarity_witness,
)

HADAMARD = [[1, 1], [1, -1]]
QUICK = SearchConfig(restarts=8, descent_steps=300)


def sympy_cross_term(p, m):
    """Third route: symbolic expansion with x, xbar, y, ybar as free symbols."""
    x, xb, y, yb = sympy.symbols("x xb y yb")
    (a, b), (c, d) = [[sympy.nsimplify(z) for z in row] for row in m]
    total = sum(
        sympy.expand((u * x + v * y) ** p * (sympy.conjugate(u) * xb + sympy.conjugate(v) * yb) ** p)
        for u, v in ((a, b), (c, d))
    )
    coeff = sympy.Poly(total, x, xb, y, yb).coeff_monomial(x ** (p - 1) * xb ** (p - 1) * y * yb)
    return sympy.nsimplify(coeff)


@pytest.mark.parametrize(
    "p, matrix, expected",
    [(2, HADAMARD, 8), (2, [[2, 0], [0, 7]], 0), (3, HADAMARD, 18)],
)
def test_cross_term_examples(p, matrix, expected):
    assert cross_term_coefficient(p, matrix) == expected
    assert brute_force_cross_term(p, matrix) == expected
    assert sympy_cross_term(p, matrix) == expected


def test_cross_term_rejects_small_p():
    with pytest.raises(ValueError, match="only for p >= 2"):
        cross_term_coefficient(1, HADAMARD)
    with pytest.raises(ValueError):
        brute_force_cross_term(1, HADAMARD)


gauss_ints = st.builds(complex, st.integers(-4, 4), st.integers(-4, 4))


@given(st.integers(2, 4), st.lists(gauss_ints, min_size=4, max_size=4))
def test_closed_form_equals_expansion(p, entries):
    m = [entries[:2], entries[2:]]
    closed = cross_term_coefficient(p, m)
    assert closed == brute_force_cross_term(p, m)
    a, b, c, d = entries
    assert (closed == 0) == (a * b == 0 and c * d == 0)


@pytest.mark.parametrize("p", [2, 3])
def test_sympy_agrees_on_gaussian_integers(p, rng):
    for _ in range(5):
        m = (rng.integers(-3, 4, (2, 2)) + 1j * rng.integers(-3, 4, (2, 2))).tolist()
        assert cross_term_coefficient(p, m) == sympy_cross_term(p, m)


def test_cross_term_is_exact_for_rationals():
    m = [[Fraction(1, 2), Fraction(1, 3)], [1, 1]]
    assert cross_term_coefficient(2, m) == 4 * (Fraction(1, 4) * Fraction(1, 9) + 1)
    assert brute_force_cross_term(2, m) == cross_term_coefficient(2, m)


def test_preservation_examples(rng):
    u = random_unitary(2, seed=9)
    z = random_vectors(2, 50, rng)
    assert preservation_residual(1, u, z) <= 1e-12
    h = np.array(HADAMARD) / math.sqrt(2)
    assert preservation_residual(2, h, [(1, 0)]) == pytest.approx(0.5)
    perm = np.array([[0, 1j, 0], [0, 0, -1], [np.exp(0.3j), 0, 0]])
    for p in (1, 2, 3, 5):
        assert preservation_residual(p, perm, random_vectors(3, 50, rng)) <= 1e-12


@pytest.mark.parametrize("dim", [2, 3, 4])
def test_small_residual_implies_unitary(dim, rng):
    u = random_unitary(dim, seed=dim).matrix
    for k in range(50):
        eps = 10.0 ** rng.uniform(-14, -3)
        e = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
        v = u @ (np.eye(dim) + eps * e)
        if preservation_residual(1, v, random_vectors(dim, 2 * dim * dim, rng)) <= 1e-10:
            assert unitarity_defect(v) <= 1e-6


@pytest.mark.parametrize(
    "matrix, expected",
    [(random_unitary(3, seed=0), True), (np.diag([2, 0.5]), False), (np.exp(0.8j) * np.eye(4), True)],
)
def test_unitarity_witness(matrix, expected):
    assert unitarity_witness(matrix, trials=32, seed=1) is expected


def test_search_p1_finds_unitary():
    r = preserver_search(1, 2, QUICK)
    assert r.verdict is Verdict.PRESERVER_FOUND
    assert r.best_residual <= 1e-9
    assert unitarity_defect(r.best_matrix) <= 1e-6
    assert r.best_matrix.triviality is Triviality.NONTRIVIAL
    assert r.certificate["cross_term"] is None


@pytest.mark.parametrize("p", [2, 3])
def test_search_higher_p_finds_nothing(p):
    r = preserver_search(p, 2, QUICK)
    assert r.verdict is Verdict.NO_PRESERVER
    assert r.best_residual >= 1e-3
    # the exact certificate is bounded below by the mixing floor
    assert r.certificate["cross_term"] > 0
    assert r.certificate["nontriviality_score"] >= QUICK.nontriviality_floor


def test_sweep_dim3():
    results = exponent_sweep([2], 3, SearchConfig(restarts=3, descent_steps=200))
    assert admissible_exponents(results) == set()


def test_search_is_deterministic():
    cfg = SearchConfig(restarts=2, descent_steps=50, rng_seed=17)
    assert preserver_search(2, 2, cfg).to_json() == preserver_search(2, 2, cfg).to_json()
    other = SearchConfig(restarts=2, descent_steps=50, rng_seed=18)
    assert preserver_search(2, 2, cfg).to_json() != preserver_search(2, 2, other).to_json()


def test_search_validation():
    with pytest.raises(ValueError, match="nontriviality floor too high"):
        preserver_search(1, 2, SearchConfig(nontriviality_floor=0.5))
    with pytest.raises(ValueError):
        SearchConfig(restarts=0)
    with pytest.raises(ValueError):
        SearchConfig(nontriviality_floor=0)
    with pytest.raises(ValueError):
        exponent_sweep([], 2)


def test_sweep_result_json():
    r = preserver_search(1, 2, SearchConfig(restarts=1, descent_steps=10))
    d = r.to_dict()
    assert set(d) == {"p", "dim", "best_residual", "verdict", "matrix", "certificate"}
    assert BasisChange.from_json_matrix(d["matrix"]) == r.best_matrix
    assert "cross_term" in d["certificate"]
