"""Numeric residuals for the statistical-length axioms.

Each check samples seeded amplitudes or representations, measures how far a
candidate is from satisfying one rule, and returns a ``ResidualReport`` whose
verdict is ``pass`` exactly when the worst residual is within tolerance.
Candidates are ``SymmetricFunctional``/``GeneralAnsatz`` instances or, for
engine self-tests, raw callables.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Sequence

import numpy as np

from .amplitude import Amplitude, Representation, star, tilde
from .basis import as_matrix, is_invertible
from .functionals import GeneralAnsatz, SymmetricFunctional, evaluate_many, evaluate_rep

AXIOMS = ("additivity", "scalability", "involution", "device_independence", "cauchy")


@dataclass
class AxiomConfig:
    tol_pass: float = 1e-9
    sample_count: int = 256
    rng_seed: int = 0
    amplitude_scale: float = 1.0

    def __post_init__(self):
        if not self.tol_pass > 0:
            raise ValueError("tol_pass must be positive")
        if self.sample_count < 1:
            raise ValueError("sample_count must be >= 1")
        if not self.amplitude_scale > 0:
            raise ValueError("amplitude_scale must be positive")

    def rng(self, *keys: int) -> np.random.Generator:
        return np.random.default_rng(np.random.SeedSequence([self.rng_seed, *keys]))


@dataclass
class ResidualReport:
    axiom: str
    max_residual: float
    tol_pass: float
    seed: int
    witness: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.axiom not in AXIOMS:
            raise ValueError(f"unknown axiom {self.axiom!r}")

    @property
    def passed(self) -> bool:
        return self.max_residual <= self.tol_pass

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def to_dict(self) -> dict:
        out = {
            "axiom": self.axiom,
            "max_residual": self.max_residual,
            "verdict": self.verdict,
            "seed": self.seed,
            "witness": self.witness,
        }
        if self.details:
            out["details"] = self.details
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _cplx(z) -> dict:
    z = complex(z)
    return {"re": z.real, "im": z.imag}


def sample_amplitudes(cfg: AxiomConfig, n: int, rng: np.random.Generator) -> np.ndarray:
    """Complex Gaussians pulled radially inside ``|a| <= amplitude_scale``."""
    z = (rng.standard_normal(n) + 1j * rng.standard_normal(n)) * cfg.amplitude_scale / 2.0
    r = np.abs(z)
    shrink = np.where(r > cfg.amplitude_scale, cfg.amplitude_scale / np.where(r == 0, 1, r), 1.0)
    return z * shrink


def _vectorised(F) -> Callable[[np.ndarray], np.ndarray]:
    if isinstance(F, (SymmetricFunctional, GeneralAnsatz)):
        return lambda z: evaluate_many(F, z)
    return lambda z: np.array([float(F(complex(a))) for a in np.ravel(z)]).reshape(np.shape(z))


def scaling_residual(F, c, cfg: AxiomConfig | None = None) -> ResidualReport:
    """Does one number ``const(c)`` turn ``F(a)`` into ``F(c a)`` for every ``a``?

    Pairs ``(a, a')`` are compared through the cross-ratio
    ``|F(ca)F(a') - F(a)F(ca')| / (|F(ca)F(a')| + |F(a)F(ca')|)``, which needs
    no knowledge of the constant.  The reported constant is the median of
    ``F(ca)/F(a)`` over the samples.
    """
    cfg = cfg or AxiomConfig()
    c = complex(Amplitude.of(c))
    if c == 0:
        raise ValueError("scaling by zero is uninformative")
    f = _vectorised(F)
    rng = cfg.rng(1)
    a = sample_amplitudes(cfg, cfg.sample_count, rng)
    a2 = sample_amplitudes(cfg, cfg.sample_count, rng)
    fa, fa2, fca, fca2 = f(a), f(a2), f(c * a), f(c * a2)
    left, right = fca * fa2, fa * fca2
    denom = np.abs(left) + np.abs(right)
    usable = (fa * fa2 != 0) & (denom > 0)
    residuals = np.where(usable, np.abs(left - right) / np.where(denom > 0, denom, 1.0), 0.0)
    k = int(np.argmax(residuals))
    nonzero = fa != 0
    const = float(np.median(fca[nonzero] / fa[nonzero])) if np.any(nonzero) else math.nan
    return ResidualReport(
        "scalability",
        float(residuals[k]),
        cfg.tol_pass,
        cfg.rng_seed,
        witness={"c": _cplx(c), "a": _cplx(a[k]), "a_prime": _cplx(a2[k])},
        details={"implied_const": const},
    )


def phase_witness(F, cfg: AxiomConfig | None = None, phases: int = 64) -> ResidualReport:
    """Worst ``scaling_residual`` over unit-modulus factors ``exp(i t)``."""
    reports = [scaling_residual(F, np.exp(2j * np.pi * k / phases), cfg) for k in range(1, phases)]
    return max(reports, key=lambda r: r.max_residual)


def involution_residual(F, cfg: AxiomConfig | None = None, points: Sequence | None = None) -> ResidualReport:
    """``max |F(a*) - F(a)| + |F(tilde a) - F(a)|`` over samples (or given points)."""
    cfg = cfg or AxiomConfig()
    if points is None:
        a = sample_amplitudes(cfg, cfg.sample_count, cfg.rng(2))
    else:
        a = np.array([complex(Amplitude.of(x)) for x in points])
    f = _vectorised(F)
    fa = f(a)
    fs = f(np.conj(a))
    ft = f(a.imag + 1j * a.real)
    residuals = np.abs(fs - fa) + np.abs(ft - fa)
    k = int(np.argmax(residuals))
    return ResidualReport(
        "involution",
        float(residuals[k]),
        cfg.tol_pass,
        cfg.rng_seed,
        witness={"a": _cplx(a[k]), "star": _cplx(complex(star(a[k]))), "tilde": _cplx(complex(tilde(a[k])))},
    )


def _rep_values(F, z: np.ndarray) -> np.ndarray:
    """Total length of each row of ``z`` as a representation."""
    if isinstance(F, (SymmetricFunctional, GeneralAnsatz)):
        return evaluate_many(F, z).sum(axis=-1)
    return np.array([evaluate_rep(F, Representation.from_amplitudes(row)) for row in z])


def device_independence_residual(
    F, U, cfg: AxiomConfig | None = None, vectors: Sequence | None = None
) -> ResidualReport:
    """Change of total length when coordinates move to another instrument, ``b = U a``.

    Sampled representations are unit-normalised; the residual is relative to
    ``max(1, |length(a)|)``.
    """
    cfg = cfg or AxiomConfig()
    u = as_matrix(U)
    if u.ndim != 2 or u.shape[0] != u.shape[1] or not is_invertible(u):
        raise ValueError("not a basis change")
    dim = u.shape[0]
    if vectors is None:
        rng = cfg.rng(3, dim)
        z = rng.standard_normal((cfg.sample_count, dim)) + 1j * rng.standard_normal((cfg.sample_count, dim))
        z /= np.linalg.norm(z, axis=1, keepdims=True)
    else:
        z = np.array([v.to_array() if isinstance(v, Representation) else np.asarray(v, dtype=complex) for v in vectors])
        if z.ndim != 2 or z.shape[1] != dim:
            raise ValueError(f"vectors must have dimension {dim}")
    before = _rep_values(F, z)
    after = _rep_values(F, z @ u.T)
    residuals = np.abs(after - before) / np.maximum(1.0, np.abs(before))
    k = int(np.argmax(residuals))
    return ResidualReport(
        "device_independence",
        float(residuals[k]),
        cfg.tol_pass,
        cfg.rng_seed,
        witness={"a": [_cplx(x) for x in z[k]], "dim": dim},
    )


def additivity_contract_check(
    F_rep, cfg: AxiomConfig | None = None, dim: int = 3, reps: Sequence[Representation] | None = None
) -> ResidualReport:
    """Whole-representation length versus the sum of single-outcome lengths.

    ``F_rep`` maps a ``Representation`` to a real number; a functional built
    with ``evaluate_rep`` passes by construction, cross-term probes do not.
    """
    cfg = cfg or AxiomConfig()
    if isinstance(F_rep, (SymmetricFunctional, GeneralAnsatz)):
        functional = F_rep
        F_rep = lambda rep: evaluate_rep(functional, rep)
    if reps is None:
        rng = cfg.rng(4, dim)
        reps = (Representation.from_amplitudes(sample_amplitudes(cfg, dim, rng)) for _ in range(cfg.sample_count))
    worst, witness = -1.0, None
    for rep in reps:
        whole = F_rep(rep)
        parts = math.fsum(F_rep(rep.single(j)) for j in range(rep.dim))
        r = abs(whole - parts)
        if r > worst:
            worst, witness = r, rep
    return ResidualReport("additivity", float(worst), cfg.tol_pass, cfg.rng_seed, witness=witness.to_dict())


class CauchyFit(NamedTuple):
    residual: float
    slope: float
    linear: bool


def cauchy_linearity_check(
    C: Callable[[float], float], grid_max: float = 1.0, grid_steps: int = 10, tol: float = 1e-12
) -> CauchyFit:
    """Grid test of ``C(x + y) = C(x) + C(y)`` plus a slope fit through the origin.

    The grid is ``linspace(0, grid_max, grid_steps + 1)``; pathological
    nowhere-continuous solutions are beyond any finite grid and not addressed.
    """
    grid = np.linspace(0.0, grid_max, grid_steps + 1)
    cx = np.array([float(C(x)) for x in grid])
    csum = np.array([[float(C(x + y)) for y in grid] for x in grid])
    residual = float(np.max(np.abs(csum - cx[:, None] - cx[None, :])))
    denom = float(np.dot(grid, grid))
    slope = float(np.dot(grid, cx) / denom) if denom else 0.0
    return CauchyFit(residual, slope, residual <= tol)


def cauchy_report(C, grid_max: float = 1.0, grid_steps: int = 10, tol: float = 1e-12) -> ResidualReport:
    fit = cauchy_linearity_check(C, grid_max, grid_steps, tol)
    return ResidualReport(
        "cauchy", fit.residual, tol, 0, witness={"grid_max": grid_max, "grid_steps": grid_steps},
        details={"slope": fit.slope},
    )


def scaling_map(F: SymmetricFunctional, c) -> Callable[[float], float]:
    """The induced map ``N[a] -> N[c a]`` on lengths for a pure-term functional.

    For ``gamma |a|**(2p)`` a length ``x`` comes from the real amplitude
    ``(x / gamma)**(1 / 2p)``; its image is ``F(c * that amplitude)``.
    """
    if not F.is_pure or F.is_zero or F.K == 0:
        raise ValueError("induced length map needs a nonzero pure term")
    gamma = F.gammas[F.K // 2]
    c = complex(c)
    return lambda x: float(evaluate_many(F, c * (x / gamma) ** (1.0 / F.K)))
