"""Quantum realization of optimal vector strategies via Clifford generators.

Vectors become observables ``A(v) = sum_k v_k gamma_k``. Party 2 uses the
transposed generators so that on the maximally entangled state
``<psi| A(v) x A(w)^T-built |psi> = v . w`` exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .core import _coerce, quantum_bound
from .errors import PreconditionError
from .tightness import TightnessResult

MAX_GAMMA_DIM = 12
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)
_I = np.eye(2, dtype=complex)


@dataclass(frozen=True)
class RealizationReport:
    D: int
    correlations: np.ndarray
    bell_value: float
    max_corr_error: float
    max_involution_error: float


def _kron(factors) -> np.ndarray:
    return reduce(np.kron, factors, np.eye(1, dtype=complex))


def gamma_matrices(d: int) -> list[np.ndarray]:
    """``d`` pairwise anticommuting Hermitian involutions of size ``2**(d // 2)`` (Jordan-Wigner)."""
    if not 1 <= d <= MAX_GAMMA_DIM:
        raise PreconditionError(f"gamma_matrices needs 1 <= d <= {MAX_GAMMA_DIM}")
    m = d // 2
    out = []
    for k in range(m):
        for p in (_X, _Y):
            out.append(_kron([_Z] * k + [p] + [_I] * (m - k - 1)))
    if d % 2:
        out.append(_kron([_Z] * m))
    return out


def observables_from_vectors(vectors, gammas=None, atol: float = 1e-9) -> list[np.ndarray]:
    vectors = np.atleast_2d(np.asarray(vectors, dtype=float))
    norms = np.linalg.norm(vectors, axis=1)
    if np.any(np.abs(norms - 1.0) > atol):
        raise PreconditionError("observables need unit vectors")
    if gammas is None:
        gammas = gamma_matrices(vectors.shape[1])
    g = np.asarray(gammas)
    return list(np.tensordot(vectors, g, axes=(1, 0)))


def dimension_bounds(d: int) -> tuple[int, int]:
    """Necessary and sufficient local Hilbert dimensions ``(ceil((d+1)/2), 2**floor(d/2))``."""
    if d < 1:
        raise PreconditionError("d must be >= 1")
    return math.ceil((d + 1) / 2), 2 ** (d // 2)


def _expectation(psi: np.ndarray, a: np.ndarray, b: np.ndarray) -> complex:
    # (A x B) vec(Psi) = vec(A Psi B^T) for row-major vec
    return np.vdot(psi, a @ psi @ b.T)


def verify_realization(bm, tr: TightnessResult) -> RealizationReport:
    bm = _coerce(bm)
    if not tr.tight or tr.vectors is None:
        raise PreconditionError("realization needs a tight result")
    v, w = tr.vectors.v, tr.vectors.w
    dim = v.shape[1]
    if dim > MAX_GAMMA_DIM:
        raise PreconditionError(f"vector dimension {dim} exceeds {MAX_GAMMA_DIM}")
    v = v / np.linalg.norm(v, axis=1, keepdims=True)
    w = w / np.linalg.norm(w, axis=1, keepdims=True)

    gammas = gamma_matrices(dim)
    alice = observables_from_vectors(v, gammas)
    bob = observables_from_vectors(w, [gm.T for gm in gammas])
    D = gammas[0].shape[0]
    psi = np.eye(D, dtype=complex) / math.sqrt(D)

    corr = np.empty((bm.m1, bm.m2))
    imag = 0.0
    for i, a in enumerate(alice):
        for j, b in enumerate(bob):
            e = _expectation(psi, a, b)
            corr[i, j] = e.real
            imag = max(imag, abs(e.imag))
    eye = np.eye(D)
    inv_err = max(float(np.max(np.abs(o @ o - eye))) for o in alice + bob)
    corr_err = max(float(np.max(np.abs(corr - v @ w.T))), imag)
    return RealizationReport(
        D=D,
        correlations=corr,
        bell_value=float(np.sum(bm.g * corr)),
        max_corr_error=corr_err,
        max_involution_error=inv_err,
    )


def realizes_bound(bm, report: RealizationReport, rel_tol: float = 1e-8) -> bool:
    T = quantum_bound(bm)
    return abs(report.bell_value - T) <= rel_tol * max(1.0, T)
