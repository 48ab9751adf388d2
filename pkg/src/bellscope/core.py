"""Bipartite correlation inequalities: quantum bound, local bound, see-saw oracle."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import linalg
from .errors import EnumerationTooLarge, PreconditionError

DEFAULT_MAX_ENUM = 2**26
_CHUNK = 1 << 15


@dataclass(frozen=True)
class BellMatrix:
    """Coefficients ``g[x1, x2]``; rows are settings of party 1, columns of party 2."""

    g: np.ndarray
    label: Optional[str] = None

    def __post_init__(self):
        g = linalg.as_real_matrix(self.g, "g")
        g.setflags(write=False)
        object.__setattr__(self, "g", g)

    @property
    def shape(self) -> tuple[int, int]:
        return self.g.shape

    @property
    def m1(self) -> int:
        return self.g.shape[0]

    @property
    def m2(self) -> int:
        return self.g.shape[1]

    def __eq__(self, other):
        if not isinstance(other, BellMatrix):
            return NotImplemented
        return self.label == other.label and self.g.shape == other.g.shape and np.array_equal(self.g, other.g)

    __hash__ = None


@dataclass(frozen=True)
class VectorStrategy:
    v: np.ndarray
    w: np.ndarray
    value: float


@dataclass(frozen=True)
class BoundsReport:
    T: float
    B: float
    seesaw_lb: Optional[float]
    ratio: Optional[float]
    bell_candidate: bool


def _coerce(bm) -> BellMatrix:
    return bm if isinstance(bm, BellMatrix) else BellMatrix(bm)


def strategy_value(g, v, w) -> float:
    """Bell value ``sum_ij g_ij <v_i, w_j>`` of a vector strategy."""
    g = np.asarray(g, dtype=float)
    return float(np.sum(g * (np.asarray(v) @ np.asarray(w).T)))


def quantum_bound(bm) -> float:
    """``T = sqrt(M1 * M2) * ||g||_2``."""
    bm = _coerce(bm)
    return math.sqrt(bm.m1 * bm.m2) * linalg.spectral_norm(bm.g)


def _signs(idx: np.ndarray, m: int) -> np.ndarray:
    """Sign vectors for integer codes ``idx``; bit ``k`` set means ``a[k] = -1``. Last entry is fixed to +1."""
    bits = (idx[:, None] >> np.arange(m - 1, dtype=np.int64)) & 1
    out = np.ones((idx.size, m))
    out[:, : m - 1] -= 2.0 * bits
    return out


def check_enumeration(n_bits: int, max_enum: int) -> None:
    if n_bits > 62 or 2**n_bits > max_enum:
        raise EnumerationTooLarge(
            f"local bound needs 2^{n_bits} evaluations, above the guard of {max_enum}"
        )


def local_strategy(bm, max_enum: int = DEFAULT_MAX_ENUM) -> tuple[float, np.ndarray, np.ndarray]:
    """Exact local bound together with one optimal deterministic assignment ``(a1, a2)``.

    For fixed ``a2`` the best ``a1`` is ``sign(g @ a2)``, so only the smaller
    party is enumerated. Ties resolve to the lowest enumeration code.
    """
    bm = _coerce(bm)
    transposed = bm.m1 < bm.m2
    h = bm.g.T if transposed else bm.g
    m = h.shape[1]
    check_enumeration(m, max_enum)

    total = 1 << (m - 1)
    best_val, best_code = -math.inf, 0
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(total, start + _CHUNK), dtype=np.int64)
        vals = np.abs(_signs(idx, m) @ h.T).sum(axis=1)
        k = int(np.argmax(vals))
        if vals[k] > best_val:
            best_val, best_code = float(vals[k]), int(idx[k])

    a_enum = _signs(np.array([best_code], dtype=np.int64), m)[0]
    a_other = np.where(h @ a_enum >= 0, 1.0, -1.0)
    a1, a2 = (a_enum, a_other) if transposed else (a_other, a_enum)
    return best_val, a1, a2


def local_bound(bm, max_enum: int = DEFAULT_MAX_ENUM) -> float:
    return local_strategy(bm, max_enum)[0]


def _unit_rows(x: np.ndarray, fallback: np.ndarray) -> np.ndarray:
    norms = np.linalg.norm(x, axis=-1, keepdims=True)
    ok = norms > 0
    return np.where(ok, x / np.where(ok, norms, 1.0), fallback)


def _seesaw(g: np.ndarray, dim: int, restarts: int, iters: int, seed: int, tol: float = 1e-12):
    """Run all restarts as one batch. Returns ``(v, w, values, history)``.

    ``history`` has one row per half-sweep and one column per restart.
    """
    rng = np.random.default_rng(seed)
    m1, m2 = g.shape
    v = rng.standard_normal((restarts, m1, dim))
    w = rng.standard_normal((restarts, m2, dim))
    v /= np.linalg.norm(v, axis=-1, keepdims=True)
    w /= np.linalg.norm(w, axis=-1, keepdims=True)

    def value(v, w):
        return np.einsum("ij,rim,rjm->r", g, v, w)

    history = [value(v, w)]
    for _ in range(iters):
        v = _unit_rows(np.einsum("ij,rjm->rim", g, w), v)
        history.append(value(v, w))
        w = _unit_rows(np.einsum("ij,rim->rjm", g, v), w)
        history.append(value(v, w))
        gain = history[-1] - history[-3]
        if np.all(gain < tol * np.maximum(1.0, np.abs(history[-1]))):
            break
    return v, w, history[-1], np.array(history)


def seesaw_lower_bound(
    bm, dim: Optional[int] = None, restarts: int = 16, iters: int = 500, seed: int = 0
) -> VectorStrategy:
    """Best vector strategy found by alternating maximization from seeded random starts."""
    bm = _coerce(bm)
    if dim is None:
        dim = min(bm.m1 + bm.m2, 16)
    if dim < 1 or restarts < 1:
        raise PreconditionError("dim and restarts must be >= 1")
    v, w, values, _ = _seesaw(bm.g, dim, restarts, iters, seed)
    best = int(np.argmax(values))
    return VectorStrategy(v=v[best], w=w[best], value=strategy_value(bm.g, v[best], w[best]))


def is_violation(T: float, B: float) -> bool:
    return T - B > 1e-9 * max(1.0, T)


def violation_report(
    bm, with_seesaw: bool = False, seed: int = 0, max_enum: int = DEFAULT_MAX_ENUM
) -> BoundsReport:
    bm = _coerce(bm)
    T = quantum_bound(bm)
    B = local_bound(bm, max_enum)
    lb = seesaw_lower_bound(bm, seed=seed).value if with_seesaw else None
    return BoundsReport(
        T=T,
        B=B,
        seesaw_lb=lb,
        ratio=T / B if B > 0 else None,
        bell_candidate=is_violation(T, B),
    )
