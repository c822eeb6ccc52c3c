"""Linear coordinate changes between instruments and their triviality classes."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

EPS_TRIVIAL = 1e-9
DET_FLOOR = 1e-12


class Triviality(str, Enum):
    IDENTITY_LIKE = "identity_like"
    GENERALIZED_PERMUTATION = "generalized_permutation"
    NONTRIVIAL = "nontrivial"


def _row_normalized(u: np.ndarray) -> np.ndarray:
    norms = np.linalg.norm(u, axis=-1, keepdims=True)
    return u / np.where(norms == 0.0, 1.0, norms)


def is_invertible(u: np.ndarray) -> bool:
    if np.any(np.linalg.norm(u, axis=1) == 0.0):
        return False
    return abs(np.linalg.det(_row_normalized(u))) > DET_FLOOR


@dataclass(frozen=True, eq=False)
class BasisChange:
    """Square complex matrix ``U`` mapping coordinates ``a`` to ``b = U a``."""

    matrix: np.ndarray

    def __post_init__(self):
        u = np.array(self.matrix, dtype=complex)
        if u.ndim != 2 or u.shape[0] != u.shape[1] or u.shape[0] == 0:
            raise ValueError(f"basis change must be a nonempty square matrix, got shape {u.shape}")
        if not np.all(np.isfinite(u)):
            raise ValueError("basis change entries must be finite")
        if not is_invertible(u):
            raise ValueError("not a basis change")
        u.setflags(write=False)
        object.__setattr__(self, "matrix", u)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def triviality(self) -> Triviality:
        return classify_triviality(self)

    def __eq__(self, other):
        return isinstance(other, BasisChange) and np.array_equal(self.matrix, other.matrix)

    def to_json_matrix(self) -> list[list[dict]]:
        return [[{"re": float(z.real), "im": float(z.imag)} for z in row] for row in self.matrix]

    @classmethod
    def from_json_matrix(cls, rows) -> "BasisChange":
        def entry(z):
            if isinstance(z, dict):
                return complex(z["re"], z.get("im", 0.0))
            if isinstance(z, (list, tuple)):
                return complex(z[0], z[1])
            return complex(z)

        try:
            return cls([[entry(z) for z in row] for row in rows])
        except (KeyError, TypeError, IndexError) as exc:
            raise ValueError(f"malformed matrix: {exc!r}") from exc


def as_matrix(U) -> np.ndarray:
    if isinstance(U, BasisChange):
        return U.matrix
    return np.asarray(U, dtype=complex)


def classify_triviality(U, eps_trivial: float = EPS_TRIVIAL) -> Triviality:
    """Classify by which entries are non-negligible after row normalisation.

    One significant entry per row and column: a generalized permutation.
    In two dimensions the change is nontrivial only when both rows mix
    (``a b != 0 != c d``); a single mixing row is reported as identity-like.
    Above two dimensions one mixing row suffices for nontrivial.
    """
    u = as_matrix(U)
    big = np.abs(_row_normalized(u)) > eps_trivial
    per_row = big.sum(axis=1)
    per_col = big.sum(axis=0)
    if np.all(per_row == 1) and np.all(per_col == 1):
        return Triviality.GENERALIZED_PERMUTATION
    if u.shape[0] == 2 and not np.all(per_row >= 2):
        return Triviality.IDENTITY_LIKE
    return Triviality.NONTRIVIAL


def nontriviality_score(u: np.ndarray) -> np.ndarray:
    """Mixing strength of one matrix or a stack of matrices.

    Per row: product of the two largest moduli of the unit-normalised row
    (at most 1/2).  Two dimensions take the weaker row, since both rows must
    mix; higher dimensions take the strongest row.
    """
    u = np.asarray(u)
    mags = np.sort(np.abs(_row_normalized(u)), axis=-1)
    per_row = mags[..., -1] * mags[..., -2]
    return per_row.min(axis=-1) if u.shape[-1] == 2 else per_row.max(axis=-1)


def random_unitary(dim: int, seed: int = 0) -> BasisChange:
    """Unitary from the QR factorisation of a complex Gaussian matrix.

    The diagonal of the triangular factor is rotated to the positive reals,
    which makes the factorisation unique and the output Haar distributed.
    """
    if dim < 1:
        raise ValueError("dimension must be at least 1")
    rng = np.random.default_rng(seed)
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return BasisChange(q * (d / np.abs(d)))


def unitarity_defect(U) -> float:
    """``max |U^H U - I|``."""
    u = as_matrix(U)
    return float(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))))
