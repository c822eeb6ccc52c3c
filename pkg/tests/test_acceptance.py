"""Exit criteria for the whole package, one test per criterion."""
import json
import math
import time

import numpy as np
import pytest

from statlength.amplitude import Representation
from statlength.axioms import (
    AxiomConfig,
    additivity_contract_check,
    cauchy_linearity_check,
    device_independence_residual,
    involution_residual,
    phase_witness,
    scaling_residual,
)
from statlength.basis import random_unitary, unitarity_defect
from statlength.cli import SCALING_FACTORS, main
from statlength.clicks import convergence_curve, loglog_slope, two_instrument_run
from statlength.functionals import SymmetricFunctional, evaluate
from statlength.uniqueness import (
    SearchConfig,
    admissible_exponents,
    brute_force_cross_term,
    cross_term_coefficient,
    exponent_sweep,
    preservation_residual,
    preserver_search,
    random_vectors,
)

BORN = SymmetricFunctional.born()


@pytest.fixture(scope="module")
def sweep_dim2():
    start = time.perf_counter()
    results = exponent_sweep([1, 2, 3], 2, SearchConfig(restarts=200, nontriviality_floor=0.1))
    return results, time.perf_counter() - start


def test_c1_axiom_suite_born(criterion):
    start = time.perf_counter()
    cfg = AxiomConfig(tol_pass=1e-9)
    scaling = max(scaling_residual(BORN, c, cfg).max_residual for c in SCALING_FACTORS)
    involution = involution_residual(BORN, cfg).max_residual
    additivity = additivity_contract_check(BORN, cfg).max_residual
    device = max(
        device_independence_residual(BORN, random_unitary(2 + k % 7, seed=k), cfg).max_residual for k in range(100)
    )
    elapsed = time.perf_counter() - start
    worst = max(scaling, involution, additivity, device)
    criterion(worst <= 1e-9 and elapsed < 10,
              f"scaling={scaling:.1e} involution={involution:.1e} additivity={additivity:.1e} "
              f"device={device:.1e} time={elapsed:.1f}s")


def test_c2_uniqueness_sweep(criterion, sweep_dim2):
    results, elapsed = sweep_dim2
    by_p = {r.p: r for r in results}
    admissible = admissible_exponents(results)
    ok = (
        admissible == {1}
        and by_p[1].best_residual <= 1e-9
        and unitarity_defect(by_p[1].best_matrix) <= 1e-6
        and all(by_p[p].best_residual >= 1e-3 for p in (2, 3))
        and elapsed < 300
    )
    criterion(ok, f"admissible={sorted(admissible)} residuals="
                  f"{[f'{by_p[p].best_residual:.2e}' for p in (1, 2, 3)]} "
                  f"defect={unitarity_defect(by_p[1].best_matrix):.1e} time={elapsed:.0f}s")


def test_c3_symbolic_certificate(criterion):
    rng = np.random.default_rng(3)
    start = time.perf_counter()
    mismatches = iff_failures = zeros = 0
    for p in (2, 3, 4):
        for _ in range(50):
            m = rng.integers(-3, 4, (2, 2)).tolist()
            closed, brute = cross_term_coefficient(p, m), brute_force_cross_term(p, m)
            mismatches += closed != brute or not isinstance(closed, int)
            (a, b), (c, d) = m
            iff_failures += (closed == 0) != (a * b == 0 and c * d == 0)
            zeros += closed == 0
    elapsed = time.perf_counter() - start
    criterion(mismatches == 0 and iff_failures == 0 and zeros > 0 and elapsed < 30,
              f"mismatches={mismatches} iff_failures={iff_failures} vanishing_cases={zeros} time={elapsed:.1f}s")


def test_c4_odd_degree_elimination(criterion):
    rng = np.random.default_rng(4)
    nonzero = 0
    for K in (1, 3, 5, 7):
        for _ in range(10):
            F = SymmetricFunctional(K, {p: float(rng.normal()) for p in range(K // 2 + 1)})
            nonzero += sum(evaluate(F, complex(0.0, r)) != 0.0 for r in rng.normal(scale=5.0, size=1000))
    criterion(nonzero == 0, f"nonzero values on the imaginary axis: {nonzero}")


def test_c5_mixed_gamma_elimination(criterion):
    rng = np.random.default_rng(5)
    worst = math.inf
    for K in (2, 4, 6):
        for _ in range(10):
            gammas = {p: float(rng.uniform(-1, 1)) for p in range(K // 2 + 1)}
            gammas[int(rng.integers(0, K // 2))] = float(rng.choice([-1, 1]) * rng.uniform(0.1, 1))
            worst = min(worst, phase_witness(SymmetricFunctional(K, gammas)).max_residual)
    criterion(worst > 1e-2, f"smallest phase-witness residual={worst:.3f}")


def test_c6_cauchy_check(criterion):
    linear = max(cauchy_linearity_check(lambda x, s=s: s * x).residual for s in (0.0, 1.0, 2.5, -3.75, 1e3))
    quadratic = cauchy_linearity_check(lambda x: x * x).residual
    criterion(linear <= 1e-12 and quadratic >= 2.0, f"linear={linear:.1e} quadratic={quadratic}")


def test_c7_simulator(criterion):
    start = time.perf_counter()
    rep = Representation.from_amplitudes([1, 1])
    slope = loglog_slope(convergence_curve(rep, [10**k for k in range(2, 7)], trials=100, seed=7))
    rng = np.random.default_rng(7)
    gap = 0.0
    for k in range(100):
        dim = 2 + k % 4
        r = Representation.from_amplitudes(rng.standard_normal(dim) + 1j * rng.standard_normal(dim))
        gap = max(gap, two_instrument_run(r, random_unitary(dim, seed=1000 + k), 1000, seed=k).length_gap)
    elapsed = time.perf_counter() - start
    criterion(abs(slope + 0.5) <= 0.1 and gap <= 1e-12 and elapsed < 120,
              f"slope={slope:.3f} max_gap={gap:.1e} time={elapsed:.1f}s")


def test_c8_unitarity_emergence(criterion, sweep_dim2):
    rng = np.random.default_rng(8)
    candidates = [r.best_matrix.matrix for r in sweep_dim2[0] if r.p == 1]
    candidates += [preserver_search(1, dim, SearchConfig(restarts=5)).best_matrix.matrix for dim in (3, 4)]
    n_optimizer = len(candidates)
    for k in range(100):
        dim = 2 + k % 3
        u = random_unitary(dim, seed=k).matrix
        eps = 10.0 ** rng.uniform(-13, -4)
        e = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
        if k % 2:
            # anti-Hermitian generator: unitary to first order, defect only eps**2
            e = e - e.conj().T
        candidates.append(u @ (np.eye(dim) + eps * e))
    passing = violations = 0
    for v in candidates:
        dim = v.shape[0]
        if preservation_residual(1, v, random_vectors(dim, 2 * dim * dim, rng)) <= 1e-10:
            passing += 1
            violations += unitarity_defect(v) > 1e-6
    optimizer_ok = all(
        preservation_residual(1, v, random_vectors(v.shape[0], 2 * v.shape[0] ** 2, rng)) <= 1e-10
        for v in candidates[:n_optimizer]
    )
    criterion(violations == 0 and optimizer_ok,
              f"candidates={len(candidates)} passing={passing} violations={violations} optimizer_outputs_pass={optimizer_ok}")


def test_c9_reproducibility(criterion, tmp_path):
    (tmp_path / "f.json").write_text(json.dumps({"K": 2, "gamma": {"1": 1.0}}))
    (tmp_path / "m.json").write_text("[[1, 1], [1, -1]]")
    (tmp_path / "r.json").write_text(json.dumps(
        {"basis": "A", "entries": [{"label": "a", "re": 1, "im": 0}, {"label": "b", "re": 0, "im": 2}]}))
    (tmp_path / "s.json").write_text(json.dumps({"restarts": 10}))
    commands = {
        "verify_axioms.json": ["verify-axioms", str(tmp_path / "f.json"), "--seed", "9"],
        "sweep.json": ["sweep", "--p-min", "1", "--p-max", "2", "--config", str(tmp_path / "s.json")],
        "cross_terms.json": ["cross-terms", "--p", "3", str(tmp_path / "m.json")],
        "simulate.json": ["simulate", str(tmp_path / "r.json"), "--n", "100000", "--trials", "3"],
    }
    identical = []
    for name, argv in commands.items():
        blobs = []
        for run in ("first", "second"):
            out = tmp_path / run / name
            assert main([*argv, "--frozen-time", "--out", str(out)]) == 0
            blobs.append(b"".join(p.read_bytes() for p in sorted(out.iterdir())))
        identical.append(blobs[0] == blobs[1])
    criterion(all(identical), f"commands={len(commands)} identical={sum(identical)}")
