"""Complex amplitudes, their two involutions, and instrument representations."""
from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np


@dataclass(frozen=True)
class Amplitude:
    """A finite complex coefficient ``re + i*im``."""

    re: float
    im: float = 0.0

    def __post_init__(self):
        re, im = float(self.re), float(self.im)
        if not (math.isfinite(re) and math.isfinite(im)):
            raise ValueError(f"amplitude components must be finite, got ({re}, {im})")
        object.__setattr__(self, "re", re)
        object.__setattr__(self, "im", im)

    @classmethod
    def of(cls, value) -> "Amplitude":
        if isinstance(value, Amplitude):
            return value
        z = complex(value)
        return cls(z.real, z.imag)

    def __complex__(self) -> complex:
        return complex(self.re, self.im)

    def __abs__(self) -> float:
        return math.hypot(self.re, self.im)

    def __mul__(self, other) -> "Amplitude":
        return Amplitude.of(complex(self) * complex(Amplitude.of(other)))

    __rmul__ = __mul__


def star(a) -> Amplitude:
    """Complex conjugation ``n + i m -> n - i m``."""
    a = Amplitude.of(a)
    return Amplitude(a.re, -a.im)


def tilde(a) -> Amplitude:
    """Component swap ``n + i m -> m + i n``; identical to ``i * star(a)``."""
    a = Amplitude.of(a)
    return Amplitude(a.im, a.re)


def to_polar(a) -> tuple[float, float]:
    """Return ``(rho, kappa)`` with ``kappa`` in ``(-pi, pi]``; the phase of 0 is 0."""
    a = Amplitude.of(a)
    rho = abs(a)
    if rho == 0.0:
        return 0.0, 0.0
    kappa = math.atan2(a.im, a.re)
    if kappa == -math.pi:
        kappa = math.pi
    return rho, kappa


def from_polar(rho: float, kappa: float) -> Amplitude:
    return Amplitude.of(cmath.rect(rho, kappa))


@dataclass(frozen=True)
class Representation:
    """Coefficients of a state expanded over the eigen-labels of one instrument.

    ``entries`` is an ordered tuple of ``(label, Amplitude)`` pairs; labels are
    opaque strings and distinguishable outcomes carry distinct labels.
    """

    basis_id: str
    entries: tuple[tuple[str, Amplitude], ...]

    def __post_init__(self):
        entries = tuple((str(lab), Amplitude.of(amp)) for lab, amp in self.entries)
        if not entries:
            raise ValueError("a representation needs at least one entry")
        labels = [lab for lab, _ in entries]
        if len(set(labels)) != len(labels):
            raise ValueError(f"outcome labels must be unique, got {labels}")
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "basis_id", str(self.basis_id))

    @classmethod
    def from_amplitudes(
        cls, values: Iterable, basis: str = "A", labels: Sequence[str] | None = None
    ) -> "Representation":
        values = [Amplitude.of(v) for v in values]
        if labels is None:
            labels = [f"{basis}{k}" for k in range(len(values))]
        return cls(basis, tuple(zip(labels, values)))

    @property
    def labels(self) -> list[str]:
        return [lab for lab, _ in self.entries]

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def to_array(self) -> np.ndarray:
        return np.array([complex(a) for _, a in self.entries], dtype=complex)

    def scaled(self, c) -> "Representation":
        c = complex(c)
        return Representation(
            self.basis_id, tuple((lab, Amplitude.of(c * complex(a))) for lab, a in self.entries)
        )

    def single(self, j: int) -> "Representation":
        """The one-entry representation holding only outcome ``j``."""
        return Representation(self.basis_id, (self.entries[j],))

    def transformed(self, matrix, basis: str = "B", labels: Sequence[str] | None = None) -> "Representation":
        """Coordinates of the same vector after the linear change ``b = U a``."""
        u = np.asarray(getattr(matrix, "matrix", matrix), dtype=complex)
        if u.shape != (self.dim, self.dim):
            raise ValueError(f"matrix shape {u.shape} does not match dimension {self.dim}")
        return Representation.from_amplitudes(u @ self.to_array(), basis=basis, labels=labels)

    def to_dict(self) -> dict:
        return {
            "basis": self.basis_id,
            "entries": [{"label": lab, "re": a.re, "im": a.im} for lab, a in self.entries],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Representation":
        try:
            entries = tuple(
                (e["label"], Amplitude(e["re"], e.get("im", 0.0))) for e in data["entries"]
            )
            return cls(data["basis"], entries)
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed representation: {exc!r}") from exc

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "Representation":
        return cls.from_dict(json.loads(text))


def squared_moduli(rep: Representation) -> list[float]:
    return [a.re * a.re + a.im * a.im for _, a in rep.entries]


def born_frequencies(rep: Representation) -> list[float]:
    """Relative frequencies ``|a_k|^2 / sum_j |a_j|^2``."""
    m = max(max(abs(a.re), abs(a.im)) for _, a in rep.entries)
    if m == 0.0:
        raise ValueError("degenerate representation")
    # rescale first so neither tiny nor huge amplitudes under/overflow when squared
    weights = [(a.re / m) ** 2 + (a.im / m) ** 2 for _, a in rep.entries]
    total = math.fsum(weights)
    if total == 0.0:
        raise ValueError("degenerate representation")
    return [w / total for w in weights]
