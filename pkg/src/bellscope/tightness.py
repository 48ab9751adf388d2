"""Decide whether the singular-value bound is attained and build the optimal vectors.

The normalization conditions on the optimal vectors are rewritten as
``A_i^T X A_i = 1`` for the stacked rows ``A = [V^d; sqrt(M2/M1) W^d]``. Restricting
``X`` to ``A^T diag(c) A`` turns this into the linear system ``Q c = 1`` with
``Q = (A A^T)**2`` (entrywise). A real solution ``alpha = sqrt(X)`` exists iff the
system is solvable and ``X`` is positive semidefinite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import linalg
from .core import BellMatrix, VectorStrategy, _coerce, quantum_bound, strategy_value
from .errors import NotPSD, PreconditionError

SOLVE_TOL = 1e-7
RANK_TOL = 1e-9
NORM_TOL = 1e-7

SYSTEM_UNSOLVABLE = "system-unsolvable"
X_NOT_PSD = "X-not-psd"


@dataclass(frozen=True)
class TightnessResult:
    tight: bool
    d: int
    d_prime: Optional[int] = None
    alpha: Optional[np.ndarray] = None
    X: Optional[np.ndarray] = None
    vectors: Optional[VectorStrategy] = None
    residuals: float = math.inf
    failure_reason: Optional[str] = None


@dataclass(frozen=True)
class EllipsoidData:
    points_v: np.ndarray
    points_w: np.ndarray
    quadric: Optional[np.ndarray] = None

    def points(self) -> np.ndarray:
        return np.vstack([self.points_v, self.points_w])


def _truncated(bm: BellMatrix, deg_tol: float):
    dec = linalg.svd(bm.g)
    d = linalg.degeneracy(dec.singular_values, deg_tol)
    vd, wd = linalg.truncate(dec, d)
    return d, vd, wd


def stacked_points(vd: np.ndarray, wd: np.ndarray) -> np.ndarray:
    m1, m2 = vd.shape[0], wd.shape[0]
    return np.vstack([vd, math.sqrt(m2 / m1) * wd])


def check_corollary1(bm, deg_tol: float = linalg.DEGENERACY_TOL, atol: float = 1e-8) -> bool:
    """Row norms of ``V^d`` all equal ``sqrt(d/M1)`` and of ``W^d`` all equal ``sqrt(d/M2)``."""
    bm = _coerce(bm)
    d, vd, wd = _truncated(bm, deg_tol)
    ok_v = np.all(np.abs(np.linalg.norm(vd, axis=1) - math.sqrt(d / bm.m1)) <= atol)
    ok_w = np.all(np.abs(np.linalg.norm(wd, axis=1) - math.sqrt(d / bm.m2)) <= atol)
    return bool(ok_v and ok_w)


def check_corollary2(bm, deg_tol: float = linalg.DEGENERACY_TOL) -> bool:
    """Square ``g`` with all singular values equal."""
    bm = _coerce(bm)
    d = linalg.degeneracy(linalg.svd(bm.g).singular_values, deg_tol)
    return d == bm.m1 == bm.m2


def extract_vectors(alpha, vd, wd, m1: int, m2: int):
    """Vectors ``v_i = alpha^T V^d_i`` and ``w_j = sqrt(M2/M1) alpha^T W^d_j`` as rows.

    Returns ``(v, w, residuals)`` where ``residuals`` lists ``| ||u|| - 1 |`` for all
    ``v`` followed by all ``w``.
    """
    alpha = np.asarray(alpha, dtype=float)
    v = np.asarray(vd) @ alpha
    w = math.sqrt(m2 / m1) * (np.asarray(wd) @ alpha)
    norms = np.concatenate([np.linalg.norm(v, axis=1), np.linalg.norm(w, axis=1)])
    return v, w, np.abs(norms - 1.0)


def reduce_dimension(vectors, rel_tol: float = RANK_TOL):
    """Rotate row vectors so their span occupies the leading coordinates, then drop the rest.

    Returns ``(reduced, d_prime)``. Inner products between rows are unchanged.
    """
    stack = np.atleast_2d(np.asarray(vectors, dtype=float))
    d_prime = linalg.numeric_rank(stack, rel_tol)
    if d_prime == 0:
        return np.zeros((stack.shape[0], 0)), 0
    _, _, vh = np.linalg.svd(stack, full_matrices=False)
    return stack @ vh[:d_prime].T, d_prime


def alpha_from_truncation(
    g, vd, wd, tol: float = SOLVE_TOL, rank_tol: float = RANK_TOL
) -> TightnessResult:
    """Core solve on explicit truncated singular vectors (any gauge of the degenerate block)."""
    g = np.asarray(g, dtype=float)
    m1, m2 = g.shape
    d = vd.shape[1]
    a = stacked_points(vd, wd)
    p = a @ a.T
    q = p * p
    c = linalg.pseudoinverse(q) @ np.ones(m1 + m2)
    system_res = float(np.max(np.abs(q @ c - 1.0)))
    if system_res > tol:
        return TightnessResult(tight=False, d=d, residuals=system_res, failure_reason=SYSTEM_UNSOLVABLE)

    x = (a.T * c) @ a
    x = 0.5 * (x + x.T)
    try:
        alpha = linalg.psd_sqrt(x, zero_tol=rank_tol)
    except NotPSD:
        return TightnessResult(
            tight=False, d=d, X=x, residuals=system_res, failure_reason=X_NOT_PSD
        )

    v, w, res = extract_vectors(alpha, vd, wd, m1, m2)
    reduced, d_prime = reduce_dimension(np.vstack([v, w]), rank_tol)
    v_r, w_r = reduced[:m1], reduced[m1:]
    residuals = float(np.max(res))
    return TightnessResult(
        tight=residuals <= NORM_TOL,
        d=d,
        d_prime=d_prime,
        alpha=alpha,
        X=x,
        vectors=VectorStrategy(v=v_r, w=w_r, value=strategy_value(g, v_r, w_r)),
        residuals=residuals,
    )


def solve_alpha(
    bm, tol: float = SOLVE_TOL, deg_tol: float = linalg.DEGENERACY_TOL, rank_tol: float = RANK_TOL
) -> TightnessResult:
    """Decide whether ``T`` is reachable; on success return ``alpha``, ``X`` and vectors in ``R^{d'}``."""
    bm = _coerce(bm)
    if not np.any(bm.g):
        raise PreconditionError("tightness is undefined for the zero matrix")
    d, vd, wd = _truncated(bm, deg_tol)
    return alpha_from_truncation(bm.g, vd, wd, tol, rank_tol)


def ellipsoid_data(bm, tol: float = SOLVE_TOL, deg_tol: float = linalg.DEGENERACY_TOL) -> EllipsoidData:
    """Stacked singular-vector rows, plus the common quadric ``p^T X p = 1`` when one exists."""
    bm = _coerce(bm)
    d, vd, wd = _truncated(bm, deg_tol)
    quadric = None
    if np.any(bm.g):
        res = alpha_from_truncation(bm.g, vd, wd, tol)
        if res.tight:
            quadric = res.X
    return EllipsoidData(
        points_v=vd, points_w=math.sqrt(bm.m2 / bm.m1) * wd, quadric=quadric
    )


def attains_bound(bm, result: TightnessResult, rel_tol: float = 1e-7) -> bool:
    """Whether the result's vectors reproduce ``T``."""
    if result.vectors is None:
        return False
    T = quantum_bound(bm)
    return abs(result.vectors.value - T) <= rel_tol * max(1.0, T)
