"""Dense real linear algebra helpers with the tolerances the tightness test relies on.

Everything here takes and returns plain ``numpy`` float arrays. Tolerances are
relative to the natural scale of the input (largest singular value or
eigenvalue) with ``max(1, scale)`` as the absolute fallback.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotPSD, NumericalError, PreconditionError

DEGENERACY_TOL = 1e-9
PINV_RCOND = 1e-10
PSD_TOL = 1e-8


def as_real_matrix(a, name: str = "matrix") -> np.ndarray:
    """Validate ``a`` as a finite, non-empty 2-D real array and return a float copy."""
    arr = np.array(a, dtype=float)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise PreconditionError(f"{name} must be a non-empty 2-D array, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise PreconditionError(f"{name} contains NaN or Inf")
    return arr


@dataclass(frozen=True)
class SingularDecomposition:
    """``g = V @ diag(singular_values) @ W.T`` with values in nonincreasing order."""

    V: np.ndarray
    singular_values: np.ndarray
    W: np.ndarray

    @property
    def sigma_max(self) -> float:
        return float(self.singular_values[0]) if self.singular_values.size else 0.0

    def reconstruct(self) -> np.ndarray:
        m1, m2 = self.V.shape[0], self.W.shape[0]
        s = np.zeros((m1, m2))
        k = self.singular_values.size
        s[:k, :k] = np.diag(self.singular_values)
        return self.V @ s @ self.W.T


def svd(g) -> SingularDecomposition:
    g = as_real_matrix(g, "g")
    try:
        u, s, vh = np.linalg.svd(g, full_matrices=True)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"SVD did not converge: {exc}") from exc
    return SingularDecomposition(V=u, singular_values=s, W=vh.T)


def spectral_norm(g) -> float:
    """Largest singular value."""
    g = as_real_matrix(g, "g")
    try:
        s = np.linalg.svd(g, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"SVD did not converge: {exc}") from exc
    return float(s[0])


def degeneracy(sv, rel_tol: float = DEGENERACY_TOL) -> int:
    """Multiplicity of the leading singular value within ``rel_tol`` (relative)."""
    sv = np.asarray(sv, dtype=float)
    if sv.size == 0:
        raise PreconditionError("empty singular value sequence")
    if rel_tol <= 0:
        raise PreconditionError("rel_tol must be positive")
    return max(1, int(np.count_nonzero(sv >= sv[0] * (1.0 - rel_tol))))


def truncate(dec: SingularDecomposition, d: int) -> tuple[np.ndarray, np.ndarray]:
    """First ``d`` columns of ``V`` and ``W``."""
    m1, m2 = dec.V.shape[0], dec.W.shape[0]
    if not 1 <= d <= min(m1, m2):
        raise PreconditionError(f"truncation order d={d} outside [1, {min(m1, m2)}]")
    return dec.V[:, :d].copy(), dec.W[:, :d].copy()


def pseudoinverse(q, rcond: float = PINV_RCOND) -> np.ndarray:
    """Moore-Penrose inverse; singular values below ``rcond * sigma_max`` count as zero."""
    q = as_real_matrix(q, "Q")
    dec = svd(q)
    s = dec.singular_values
    k = s.size
    if k == 0 or s[0] == 0.0:
        return np.zeros(q.T.shape)
    keep = s >= s[0] * rcond
    inv = np.where(keep, 1.0 / np.where(keep, s, 1.0), 0.0)
    return (dec.W[:, :k] * inv) @ dec.V[:, :k].T


def psd_sqrt(x, tol: float = PSD_TOL, zero_tol: float = 0.0) -> np.ndarray:
    """Principal square root of a symmetric positive semidefinite matrix.

    The input is symmetrized first. Eigenvalues in ``[-tol * max(1, lam_max), 0)``
    are clamped to zero; anything more negative raises :class:`NotPSD`.
    ``zero_tol`` additionally zeroes eigenvalues with ``|lam| <= zero_tol * lam_max``,
    which keeps the rank of the result free of round-off noise.
    """
    x = as_real_matrix(x, "X")
    if x.shape[0] != x.shape[1]:
        raise PreconditionError("X must be square")
    scale = max(1.0, float(np.max(np.abs(x))))
    if np.max(np.abs(x - x.T)) > 1e-9 * scale:
        raise PreconditionError("X is not symmetric")
    x = 0.5 * (x + x.T)
    try:
        lam, vec = np.linalg.eigh(x)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"eigendecomposition failed: {exc}") from exc
    lam_max = float(lam[-1])
    if lam[0] < -tol * max(1.0, lam_max):
        raise NotPSD(float(lam[0]))
    lam = np.clip(lam, 0.0, None)
    if zero_tol > 0:
        lam[lam <= zero_tol * max(lam_max, 0.0)] = 0.0
    root = (vec * np.sqrt(lam)) @ vec.T
    return 0.5 * (root + root.T)


def numeric_rank(a, rel_tol: float = DEGENERACY_TOL) -> int:
    a = np.asarray(a, dtype=float)
    if a.size == 0:
        return 0
    s = np.linalg.svd(np.atleast_2d(a), compute_uv=False)
    if s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s >= s[0] * rel_tol))


def random_orthogonal(n: int, seed) -> np.ndarray:
    """Haar-distributed ``n x n`` orthogonal matrix.

    QR of a standard Gaussian matrix with the signs of ``diag(R)`` folded into
    ``Q``. ``seed`` is an int or a ``numpy.random.Generator``.
    """
    if n < 1:
        raise PreconditionError("n must be >= 1")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    z = rng.standard_normal((n, n))
    q, r = np.linalg.qr(z)
    signs = np.sign(np.diag(r))
    signs[signs == 0] = 1.0
    return q * signs
