"""Finite click ensembles drawn from a representation, and their frequency estimates.

The simulator *uses* the squared-modulus rule as its generative model, so it
cannot confirm that rule independently.  What it shows is how the estimated
frequencies approach the rule as the ensemble grows, and that the total
squared length is the same for two instruments related by a unitary change.

Randomness comes from Philox-4x64-10, a counter-based generator, keyed through
``numpy.random.SeedSequence`` with ``(seed, *stream keys)``.  Outcome ``k``
owns the interval ``(cdf[k-1], cdf[k]]`` and each event draws ``u = 1 - U[0, 1)``,
so ties go to the first interval and empty channels are never hit.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import NamedTuple, Sequence

import numpy as np

from .amplitude import Representation, born_frequencies, squared_moduli
from .uniqueness import unitarity_witness

DISCLAIMER = (
    "Clicks are generated from squared-modulus frequencies; the run demonstrates "
    "estimator convergence and device independence, not an independent test of the rule."
)
_CHUNK = 1 << 20


@dataclass
class ClickEnsemble:
    counts: dict
    n_total: int
    seed: int
    basis_id: str

    def __post_init__(self):
        if self.n_total < 1:
            raise ValueError("n_total must be positive")
        if any(c < 0 for c in self.counts.values()):
            raise ValueError("counts must be nonnegative")
        if sum(self.counts.values()) != self.n_total:
            raise ValueError("counts do not sum to n_total")

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["label", "count"])
        for label, count in self.counts.items():
            writer.writerow([label, count])
        return buf.getvalue()

    def metadata(self) -> dict:
        return {"n": self.n_total, "seed": self.seed, "basis": self.basis_id}

    @classmethod
    def from_csv(cls, text: str, metadata: dict) -> "ClickEnsemble":
        rows = list(csv.DictReader(io.StringIO(text)))
        counts = {row["label"]: int(row["count"]) for row in rows}
        return cls(counts, int(metadata["n"]), int(metadata["seed"]), str(metadata["basis"]))


@dataclass
class SimulationConfig:
    n_events: int = 1_000_000
    trials: int = 100
    rng_seed: int = 0

    def __post_init__(self):
        if self.n_events < 1 or self.trials < 1:
            raise ValueError("n_events and trials must be positive")
        if self.rng_seed < 0:
            raise ValueError("seed must be a nonnegative 64-bit integer")


def generator(seed: int, *keys: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, *keys])))


def frequencies_from_lengths(lengths: Sequence[float]) -> list[float]:
    """``length_k / sum_j length_j``; the common infinite event factor cancels."""
    lengths = [float(x) for x in lengths]
    if any(x < 0 for x in lengths):
        raise ValueError("lengths must be nonnegative")
    total = math.fsum(lengths)
    if total == 0.0:
        raise ValueError("no events")
    return [x / total for x in lengths]


def _cumulative(probs: Sequence[float]) -> np.ndarray:
    cdf = np.cumsum(np.asarray(probs, dtype=float))
    last = int(np.flatnonzero(np.asarray(probs) > 0)[-1])
    cdf[last:] = 1.0
    return cdf


def draw_counts(probs: Sequence[float], n: int, rng: np.random.Generator) -> np.ndarray:
    cdf = _cumulative(probs)
    counts = np.zeros(len(cdf), dtype=np.int64)
    remaining = n
    while remaining:
        m = min(remaining, _CHUNK)
        u = 1.0 - rng.random(m)
        counts += np.bincount(np.searchsorted(cdf, u, side="left"), minlength=len(cdf))
        remaining -= m
    return counts


def simulate_clicks(rep: Representation, n: int, seed: int = 0, stream: tuple = ()) -> ClickEnsemble:
    if n < 1:
        raise ValueError("need at least one event")
    probs = born_frequencies(rep)
    counts = draw_counts(probs, n, generator(seed, *stream))
    return ClickEnsemble(dict(zip(rep.labels, (int(c) for c in counts))), n, seed, rep.basis_id)


def estimate_frequencies(e: ClickEnsemble) -> list[float]:
    return [c / e.n_total for c in e.counts.values()]


def convergence_curve(rep: Representation, n_list: Sequence[int], trials: int = 100, seed: int = 0):
    """Mean over trials of ``max_k |estimate_k - rule_k|`` for each ensemble size."""
    n_list = [int(n) for n in n_list]
    if any(b <= a for a, b in zip(n_list, n_list[1:])):
        raise ValueError("n_list must be strictly increasing")
    if trials < 1:
        raise ValueError("trials must be positive")
    probs = np.array(born_frequencies(rep))
    curve = []
    for i, n in enumerate(n_list):
        errors = [
            np.max(np.abs(draw_counts(probs, n, generator(seed, i, t)) / n - probs))
            for t in range(trials)
        ]
        curve.append((n, float(np.mean(errors))))
    return curve


def loglog_slope(curve) -> float:
    n, err = np.array(curve, dtype=float).T
    if np.any(err <= 0):
        raise ValueError("log-log slope needs positive errors")
    return float(np.polyfit(np.log(n), np.log(err), 1)[0])


class TwoInstrumentRun(NamedTuple):
    ensemble_a: ClickEnsemble
    ensemble_b: ClickEnsemble
    length_gap: float


def two_instrument_run(rep: Representation, U, n: int, seed: int = 0) -> TwoInstrumentRun:
    """Simulate the same state read by instrument A and by B, where ``b = U a``."""
    if not unitarity_witness(U, seed=seed):
        raise ValueError("instruments related by non-unitary change")
    rep_b = rep.transformed(U, basis="B")
    gap = abs(math.fsum(squared_moduli(rep)) - math.fsum(squared_moduli(rep_b)))
    return TwoInstrumentRun(
        simulate_clicks(rep, n, seed, stream=(0,)),
        simulate_clicks(rep_b, n, seed, stream=(1,)),
        gap,
    )


def write_ensemble(e: ClickEnsemble, directory, stem: str = "counts") -> None:
    directory = Path(directory)
    (directory / f"{stem}.csv").write_text(e.to_csv())
    (directory / f"{stem}.json").write_text(json.dumps(e.metadata(), sort_keys=True) + "\n")
