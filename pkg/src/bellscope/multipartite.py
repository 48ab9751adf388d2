"""n-party correlation inequalities and the slice-norm bound."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import linalg
from .core import DEFAULT_MAX_ENUM, check_enumeration
from .errors import PreconditionError

_CHUNK = 1 << 12


@dataclass(frozen=True)
class BellTensor:
    """Coefficients ``g(x1, ..., xn)`` stored as an n-d array (x1 slowest)."""

    coeffs: np.ndarray
    label: Optional[str] = None

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=float)
        if c.ndim < 2 or 0 in c.shape:
            raise PreconditionError(f"need at least two parties with >= 1 setting each, got shape {c.shape}")
        if not np.all(np.isfinite(c)):
            raise PreconditionError("tensor contains NaN or Inf")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def from_flat(cls, shape, flat, label=None) -> "BellTensor":
        shape = tuple(int(s) for s in shape)
        flat = np.asarray(flat, dtype=float).ravel()
        if flat.size != math.prod(shape):
            raise PreconditionError(f"{flat.size} coefficients do not fit shape {list(shape)}")
        return cls(flat.reshape(shape), label)

    @property
    def n(self) -> int:
        return self.coeffs.ndim

    @property
    def shape(self) -> tuple[int, ...]:
        return self.coeffs.shape

    def flat(self) -> np.ndarray:
        return self.coeffs.ravel()

    def __eq__(self, other):
        if not isinstance(other, BellTensor):
            return NotImplemented
        return self.label == other.label and self.shape == other.shape and np.array_equal(self.coeffs, other.coeffs)

    __hash__ = None


def _coerce(t) -> BellTensor:
    return t if isinstance(t, BellTensor) else BellTensor(t)


def _check_pair(t: BellTensor, p: int, q: int) -> None:
    if not 1 <= p < q <= t.n:
        raise PreconditionError(f"party pair ({p}, {q}) must satisfy 1 <= p < q <= {t.n}")


def slice_norms(t, p: int = 1, q: int = 2) -> np.ndarray:
    """Spectral norms of the ``M_p x M_q`` slices, other indices in row-major order."""
    t = _coerce(t)
    _check_pair(t, p, q)
    moved = np.moveaxis(t.coeffs, (p - 1, q - 1), (0, 1))
    mp, mq = moved.shape[:2]
    slices = moved.reshape(mp, mq, -1)
    return np.array([linalg.spectral_norm(slices[:, :, k]) for k in range(slices.shape[2])])


def multipartite_bound(t, p: int = 1, q: int = 2) -> float:
    """``sqrt(M_p M_q)`` times the sum of slice spectral norms for parties ``p`` and ``q``."""
    t = _coerce(t)
    norms = slice_norms(t, p, q)
    return math.sqrt(t.shape[p - 1] * t.shape[q - 1]) * float(np.sum(norms))


def best_pair_bound(t) -> tuple[int, int, float]:
    """Smallest bound over all party pairs; ties go to the lexicographically first pair."""
    t = _coerce(t)
    best = None
    for p, q in itertools.combinations(range(1, t.n + 1), 2):
        val = multipartite_bound(t, p, q)
        if best is None or val < best[2]:
            best = (p, q, val)
    return best


def multipartite_local_bound(t, max_enum: int = DEFAULT_MAX_ENUM) -> float:
    """Exact local bound: enumerate parties 2..n, align party 1 with the sign of the partial sum."""
    t = _coerce(t)
    sizes = t.shape[1:]
    n_bits = sum(sizes)
    check_enumeration(n_bits, max_enum)
    offsets = np.cumsum((0,) + sizes)

    # global sign flip of party 2 leaves the value unchanged, so fix its last setting to +1
    free = n_bits - 1
    total = 1 << free
    best = -math.inf
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(total, start + _CHUNK), dtype=np.int64)
        bits = (idx[:, None] >> np.arange(free, dtype=np.int64)) & 1
        signs = np.ones((idx.size, n_bits))
        pos = [k for k in range(n_bits) if k != sizes[0] - 1]
        signs[:, pos] -= 2.0 * bits
        # contract from the last party inward; r has shape (N, M1, ..., Mk)
        r = np.broadcast_to(t.coeffs, (idx.size,) + t.shape)
        for party in range(t.n - 1, 0, -1):
            a = signs[:, offsets[party - 1] : offsets[party]]
            r = np.einsum("n...m,nm->n...", r, a)
        best = max(best, float(np.max(np.abs(r).sum(axis=1))))
    return best
