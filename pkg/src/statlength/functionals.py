"""Candidate statistical-length functionals built from symmetric polynomials.

Every candidate is a finite real combination of the monomials

    (a + conj(a))**l * (a * conj(a))**p

which are invariant under both involutions.  A ``GeneralAnsatz`` holds an
arbitrary finite set of such terms; a ``SymmetricFunctional`` holds only the
terms of one homogeneity degree ``K = 2p + l``.
"""
from __future__ import annotations

import json
import math
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Callable, Union

import numpy as np

from .amplitude import Amplitude, Representation

K_MAX = 8


def _ipow(x: float, n: int) -> float:
    """``x**n`` by repeated squaring (exact for small integer inputs)."""
    result = 1.0
    while n:
        if n & 1:
            result *= x
        x *= x
        n >>= 1
    return result


def _sq(a) -> tuple[float, float]:
    a = Amplitude.of(a)
    return 2.0 * a.re, a.re * a.re + a.im * a.im


@dataclass(frozen=True)
class SymmetricFunctional:
    """Homogeneous candidate of degree ``K``: ``sum_p gamma_p s**(K-2p) q**p``.

    ``gammas`` maps ``p`` (``0 <= p <= K//2``) to the real coefficient of the
    term with ``l = K - 2p``.  An empty mapping is the declared zero functional.
    """

    K: int
    gammas: dict = field(default_factory=dict)

    def __post_init__(self):
        K = int(self.K)
        if K < 0:
            raise ValueError("degree must be nonnegative")
        gammas = {}
        for p, g in dict(self.gammas).items():
            p = int(p)
            if not 0 <= p <= K // 2:
                raise ValueError(f"term p={p} is not homogeneous of degree {K}")
            g = float(g)
            if not math.isfinite(g):
                raise ValueError("coefficients must be finite")
            gammas[p] = g
        if gammas and all(g == 0.0 for g in gammas.values()):
            raise ValueError("all coefficients vanish; use SymmetricFunctional.zero(K)")
        object.__setattr__(self, "K", K)
        object.__setattr__(self, "gammas", dict(sorted(gammas.items())))

    @classmethod
    def zero(cls, K: int) -> "SymmetricFunctional":
        return cls(K, {})

    @classmethod
    def pure(cls, p: int, gamma: float = 1.0) -> "SymmetricFunctional":
        """``gamma * |a|**(2p)``."""
        return cls(2 * p, {p: gamma})

    @classmethod
    def born(cls) -> "SymmetricFunctional":
        return cls.pure(1)

    @property
    def is_zero(self) -> bool:
        return not self.gammas

    @property
    def is_pure(self) -> bool:
        """True when only the ``l = 0`` term is present, i.e. ``gamma |a|^K``."""
        return self.K % 2 == 0 and set(self.gammas) <= {self.K // 2}

    def terms(self) -> list[tuple[int, int, float]]:
        return [(self.K - 2 * p, p, g) for p, g in self.gammas.items()]

    def as_ansatz(self) -> "GeneralAnsatz":
        return GeneralAnsatz(self.terms())

    def to_dict(self) -> dict:
        return {"K": self.K, "gamma": {str(p): g for p, g in self.gammas.items()}}

    @classmethod
    def from_dict(cls, data: dict) -> "SymmetricFunctional":
        try:
            return cls(int(data["K"]), {int(p): float(g) for p, g in data.get("gamma", {}).items()})
        except (KeyError, TypeError, AttributeError) as exc:
            raise ValueError(f"malformed functional: {exc!r}") from exc

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "SymmetricFunctional":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class GeneralAnsatz:
    """Unreduced finite sum of terms ``(l, p, gamma)``."""

    terms: tuple = ()

    def __post_init__(self):
        terms = tuple((int(l), int(p), float(g)) for l, p, g in self.terms)
        keys = [(l, p) for l, p, _ in terms]
        if len(set(keys)) != len(keys):
            raise ValueError("duplicate (l, p) term")
        if any(l < 0 or p < 0 for l, p in keys):
            raise ValueError("exponents must be nonnegative")
        object.__setattr__(self, "terms", terms)


Functional = Union[SymmetricFunctional, GeneralAnsatz]


def _terms(F: Functional):
    return F.terms() if isinstance(F, SymmetricFunctional) else F.terms


def evaluate(F: Functional, a) -> float:
    s, q = _sq(a)
    try:
        value = math.fsum(g * _ipow(s, l) * _ipow(q, p) for l, p, g in _terms(F))
    except OverflowError:
        raise ValueError("magnitude overflow") from None
    if not math.isfinite(value):
        raise ValueError("magnitude overflow")
    return value


def evaluate_many(F: Functional, z) -> np.ndarray:
    """Vectorised ``evaluate`` over an array of complex amplitudes."""
    z = np.asarray(z, dtype=complex)
    s = 2.0 * z.real
    q = z.real * z.real + z.imag * z.imag
    out = np.zeros(z.shape)
    with np.errstate(over="ignore", invalid="ignore"):
        for l, p, g in _terms(F):
            out = out + g * s**l * q**p
    if not np.all(np.isfinite(out)):
        raise ValueError("magnitude overflow")
    return out


def evaluate_rep(F: Functional, rep: Representation) -> float:
    """Total length of a representation: the sum of the per-outcome values."""
    return math.fsum(evaluate(F, a) for _, a in rep.entries)


def reduce_to_homogeneous(G: GeneralAnsatz) -> list[SymmetricFunctional]:
    by_degree: dict[int, dict[int, float]] = defaultdict(dict)
    for l, p, g in G.terms:
        by_degree[2 * p + l][p] = g
    parts = []
    for K in sorted(by_degree):
        gammas = by_degree[K]
        if all(g == 0.0 for g in gammas.values()):
            parts.append(SymmetricFunctional.zero(K))
        else:
            parts.append(SymmetricFunctional(K, gammas))
    return parts


def polar_coefficients(F: SymmetricFunctional) -> dict[int, float]:
    """Renormalised coefficients ``gamma'_l = 2**l * gamma_l`` keyed by ``l``."""
    return {F.K - 2 * p: 2.0 ** (F.K - 2 * p) * g for p, g in F.gammas.items()}


def polar_evaluate(F: SymmetricFunctional, rho: float, kappa: float) -> float:
    """``rho**K * sum_l gamma'_l cos(kappa)**l`` for even ``K``."""
    if F.K % 2:
        raise ValueError("polar form defined for even degree only")
    c = math.cos(kappa)
    inner = math.fsum(g * _ipow(c, l) for l, g in polar_coefficients(F).items())
    return _ipow(rho, F.K) * inner


def odd_k_vanishes(F: SymmetricFunctional, samples: int = 1000, seed: int = 0) -> bool:
    """Check that an odd-degree candidate is identically zero on the imaginary axis."""
    if F.K % 2 == 0:
        raise ValueError("not an odd-degree functional")
    rng = np.random.default_rng(seed)
    radii = rng.normal(scale=10.0, size=samples)
    return all(evaluate(F, complex(0.0, r)) == 0.0 for r in radii)


def as_callable(F) -> Callable[[complex], float]:
    if isinstance(F, (SymmetricFunctional, GeneralAnsatz)):
        return lambda a: evaluate(F, a)
    return F
