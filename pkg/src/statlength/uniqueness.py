"""Which exponents ``p`` admit nontrivial linear maps preserving ``sum |a_k|**(2p)``.

Two independent routes:

* an exact symbolic certificate for 2x2 maps, the coefficient of
  ``(x xbar)**(p-1) (y ybar)`` in the transformed power sum, computed both in
  closed form and by brute-force expansion;
* a derivative-free multi-restart search for nontrivial preservers.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

import numpy as np

from . import expansion
from .amplitude import Representation
from .basis import (
    BasisChange,
    Triviality,
    as_matrix,
    classify_triviality,
    is_invertible,
    nontriviality_score,
)

MAX_ROW_MIXING = 0.5


def _exact(value: Fraction):
    return int(value) if value.denominator == 1 else value


def _entries2(U):
    u = as_matrix(U) if not isinstance(U, (list, tuple)) else U
    if len(u) != 2 or any(len(row) != 2 for row in u):
        raise ValueError("cross-term certificate needs a 2x2 matrix")
    (a, b), (c, d) = u
    return [expansion.Gauss.of(z) for z in (a, b, c, d)]


def cross_term_coefficient(p: int, U):
    """Closed form ``p**2 (|a|**(2p-2) |b|**2 + |c|**(2p-2) |d|**2)``, exact.

    ``U`` may be a ``BasisChange``, an array or nested lists; integer and
    ``Fraction`` entries stay exact, floats are converted exactly.
    """
    if p < 2:
        raise ValueError("cross term arises only for p >= 2")
    a, b, c, d = _entries2(U)
    value = p * p * (a.abs2() ** (p - 1) * b.abs2() + c.abs2() ** (p - 1) * d.abs2())
    return _exact(value)


def brute_force_cross_term(p: int, U):
    """Same coefficient read off the full expansion of the transformed sum.

    The untransformed sum ``(x xbar)**p + (y ybar)**p`` has no such monomial,
    so nothing needs subtracting.
    """
    if p < 2:
        raise ValueError("cross term arises only for p >= 2")
    a, b, c, d = _entries2(U)
    poly = expansion.transformed_power_sum(p, [(a, b), (c, d)])
    coeff = expansion.coefficient(poly, (p - 1, p - 1, 1, 1))
    if coeff.im != 0:
        raise ArithmeticError("cross-term coefficient is not real")
    return _exact(coeff.re)


def _vectors_array(vectors, dim: int) -> np.ndarray:
    if isinstance(vectors, np.ndarray):
        arr = np.atleast_2d(vectors).astype(complex)
    else:
        arr = np.array(
            [v.to_array() if isinstance(v, Representation) else np.asarray(v, dtype=complex) for v in vectors]
        )
    if arr.ndim != 2 or arr.shape[1] != dim:
        raise ValueError(f"vectors must have dimension {dim}")
    return arr


def _power_sums(p: int, u: np.ndarray, z: np.ndarray):
    """Signed relative defects for one matrix or a stack of matrices."""
    ref = np.sum(np.abs(z) ** (2 * p), axis=-1)
    image = np.einsum("...ij,mj->...mi", u, z)
    moved = np.sum(np.abs(image) ** (2 * p), axis=-1)
    return (moved - ref) / np.maximum(1.0, ref)


def preservation_residual(p: int, U, vectors) -> float:
    """``max |sum |(U a)_k|^(2p) - sum |a_k|^(2p)| / max(1, sum |a_k|^(2p))``."""
    u = as_matrix(U)
    z = _vectors_array(vectors, u.shape[0])
    return float(np.max(np.abs(_power_sums(p, u, z))))


def random_vectors(dim: int, count: int, rng: np.random.Generator) -> np.ndarray:
    return (rng.standard_normal((count, dim)) + 1j * rng.standard_normal((count, dim))) / np.sqrt(2.0)


def unitarity_witness(U, trials: int = 64, seed: int = 0, tol: float = 1e-10) -> bool:
    """Empirical unitarity: the squared-modulus sum survives ``trials`` random vectors.

    Also checks that the induced change of base vectors ``(U^T)^-1`` undoes
    the coordinate change, so the abstract vector ``sum_k b_k beta_k`` is fixed.
    """
    u = as_matrix(U)
    if not is_invertible(u):
        raise ValueError("not a basis change")
    rng = np.random.default_rng(seed)
    z = random_vectors(u.shape[0], trials, rng)
    if preservation_residual(1, u, z) > tol:
        return False
    base_change = np.linalg.inv(u.T)
    return bool(np.max(np.abs(u.T @ base_change - np.eye(u.shape[0]))) <= tol)


class Verdict(str, Enum):
    PRESERVER_FOUND = "preserver_found"
    NO_PRESERVER = "no_preserver"


@dataclass
class SearchConfig:
    restarts: int = 200
    descent_steps: int = 500
    nontriviality_floor: float = 0.1
    sample_vectors: int = 64
    rng_seed: int = 0
    tol_pass: float = 1e-9
    initial_step: float = 0.25

    def __post_init__(self):
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if self.nontriviality_floor <= 0:
            raise ValueError("nontriviality floor must be positive")
        if self.sample_vectors < 1 or self.descent_steps < 0:
            raise ValueError("sample_vectors must be >= 1 and descent_steps >= 0")


@dataclass
class SweepResult:
    p: int
    dim: int
    best_residual: float
    best_matrix: BasisChange
    verdict: Verdict
    certificate: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "dim": self.dim,
            "best_residual": self.best_residual,
            "verdict": self.verdict.value,
            "matrix": self.best_matrix.to_json_matrix(),
            "certificate": self.certificate,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _directions(dim: int) -> np.ndarray:
    """All +-1 and +-i unit perturbations of single entries."""
    n = dim * dim
    basis = np.eye(n).reshape(n, dim, dim)
    return np.concatenate([basis, -basis, 1j * basis, -1j * basis])


def _random_start(dim: int, floor: float, rng: np.random.Generator) -> np.ndarray:
    while True:
        u = random_vectors(dim, dim, rng)
        if nontriviality_score(u) >= floor and is_invertible(u):
            return u


def _descend(p, u, z, floor, steps, step, directions):
    """Compass search on the mean squared defect; step halves after a failed sweep.

    Candidates below the nontriviality floor or numerically singular are
    rejected outright (an extreme barrier).
    """
    def objective(stack):
        return np.mean(_power_sums(p, stack, z) ** 2, axis=-1)

    current = float(objective(u))
    for _ in range(steps):
        if current == 0.0 or step < 1e-15:
            break
        cands = u + step * directions
        values = objective(cands)
        values[nontriviality_score(cands) < floor] = np.inf
        k = int(np.argmin(values))
        if values[k] < current and is_invertible(cands[k]):
            u, current = cands[k], float(values[k])
        else:
            step *= 0.5
    return u


def preserver_search(p: int, dim: int, cfg: SearchConfig | None = None) -> SweepResult:
    """Look for a nontrivial ``U`` with ``sum |(U a)_k|^(2p) = sum |a_k|^(2p)``.

    Nontriviality is enforced through the row-mixing score of
    ``nontriviality_score``; the floor must stay below 1/2, the largest
    product two entries of a unit row can reach.  Each restart gets its own
    seed spawned from ``(rng_seed, p, dim)``, so the search is deterministic.
    """
    cfg = cfg or SearchConfig()
    if p < 1 or dim < 2:
        raise ValueError("need p >= 1 and dim >= 2")
    if cfg.nontriviality_floor >= MAX_ROW_MIXING:
        raise ValueError("nontriviality floor too high")
    root = np.random.SeedSequence([cfg.rng_seed, p, dim])
    z = random_vectors(dim, cfg.sample_vectors, np.random.default_rng(root.spawn(1)[0]))
    directions = _directions(dim)

    best_u, best_res = None, np.inf
    for child in root.spawn(cfg.restarts + 1)[1:]:
        rng = np.random.default_rng(child)
        u0 = _random_start(dim, cfg.nontriviality_floor, rng)
        u = _descend(p, u0, z, cfg.nontriviality_floor, cfg.descent_steps, cfg.initial_step, directions)
        res = preservation_residual(p, u, z)
        if res < best_res:
            best_u, best_res = u, res

    best = BasisChange(best_u)
    nontrivial = classify_triviality(best) is Triviality.NONTRIVIAL
    found = best_res <= cfg.tol_pass and nontrivial
    certificate = {
        "cross_term": float(cross_term_coefficient(p, best)) if dim == 2 and p >= 2 else None,
        "nontriviality_score": float(nontriviality_score(best.matrix)),
        "floor_rule": "both rows mix" if dim == 2 else "one mixing row (generalised to N > 2)",
    }
    return SweepResult(
        p=p,
        dim=dim,
        best_residual=best_res,
        best_matrix=best,
        verdict=Verdict.PRESERVER_FOUND if found else Verdict.NO_PRESERVER,
        certificate=certificate,
    )


def exponent_sweep(p_list, dim: int, cfg: SearchConfig | None = None) -> list[SweepResult]:
    p_list = list(p_list)
    if not p_list:
        raise ValueError("empty exponent list")
    return [preserver_search(p, dim, cfg) for p in p_list]


def admissible_exponents(results) -> set[int]:
    return {r.p for r in results if r.verdict is Verdict.PRESERVER_FOUND}
