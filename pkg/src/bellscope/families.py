"""Generators for the benchmark inequality families with their closed-form reference values."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from . import linalg
from .core import BellMatrix
from .errors import PreconditionError
from .multipartite import BellTensor

_H = np.array([[1.0, 1.0], [1.0, -1.0]])


@dataclass(frozen=True)
class FamilyInstance:
    instance: Union[BellMatrix, BellTensor]
    provenance: str
    analytic_T: Optional[float] = None
    analytic_B: Optional[float] = None
    analytic_d: Optional[int] = None


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise PreconditionError(msg)


def chsh_power(k: int) -> FamilyInstance:
    _require(1 <= k <= 6, "chsh-power needs 1 <= k <= 6")
    g = np.ones((1, 1))
    for _ in range(k):
        g = np.kron(g, _H)
    return FamilyInstance(
        BellMatrix(g, f"chsh-power-{k}"),
        provenance="CHSH tensor power",
        analytic_T=2.0 ** (1.5 * k),
        analytic_B=8.0 if k == 2 else (2.0 if k == 1 else None),
        analytic_d=2**k,
    )


def chsh() -> FamilyInstance:
    inst = chsh_power(1)
    return FamilyInstance(BellMatrix(inst.instance.g, "chsh"), "CHSH", inst.analytic_T, 2.0, 2)


def braunstein_caves(M: int) -> FamilyInstance:
    _require(M >= 2, "braunstein-caves needs M >= 2")
    g = np.zeros((M, M))
    for x1 in range(1, M + 1):
        for x2 in range(1, M + 1):
            if 0 <= x1 - x2 <= 1:
                g[x1 - 1, x2 - 1] = 1.0
    g[0, M - 1] = -1.0
    return FamilyInstance(
        BellMatrix(g, f"bc-{M}"),
        provenance="Braunstein-Caves chained inequality",
        analytic_T=2 * M * math.cos(math.pi / (2 * M)),
        analytic_d=2,
    )


def greater_equal(M: int) -> FamilyInstance:
    _require(M >= 2, "greater-equal needs M >= 2")
    x = np.arange(M)
    g = np.where(x[:, None] >= x[None, :], 1.0, -1.0)
    return FamilyInstance(
        BellMatrix(g, f"geq-{M}"),
        provenance="greater-equal (Gisin) inequality",
        analytic_T=M / math.sin(math.pi / (2 * M)),
        analytic_B=float(math.ceil(M * M / 2)),
        analytic_d=2,
    )


def binary_digits(M2: int) -> FamilyInstance:
    """``g[x1, x2] = 1 - 2 * (floor(2**(1 - x2) * (x1 - 1)) mod 2)`` with ``M1 = 2**(M2 - 1)``."""
    _require(1 <= M2 <= 20, "binary-digits needs 1 <= M2 <= 20")
    M1 = 2 ** (M2 - 1)
    x1 = np.arange(M1)[:, None]
    x2 = np.arange(M2)[None, :]
    g = 1.0 - 2.0 * ((x1 >> x2) & 1)
    return FamilyInstance(
        BellMatrix(g, f"bits-{M2}"),
        provenance="binary-digits inequality",
        analytic_T=M1 * math.sqrt(M2),
        analytic_d=M2,
    )


def fishburn_reeds_rows(k: int) -> np.ndarray:
    """Integer ``k(k-1) x k`` matrix of all ``(-1 at i, +1 at j)`` and ``(+1 at i, +1 at j)`` rows, ``i < j``."""
    rows = []
    for i, j in itertools.combinations(range(k), 2):
        for sign_i in (-1, 1):
            r = np.zeros(k, dtype=np.int64)
            r[i], r[j] = sign_i, 1
            rows.append(r)
    return np.array(rows)


def fishburn_reeds(k: int) -> FamilyInstance:
    _require(2 <= k <= 8, "fishburn-reeds needs 2 <= k <= 8")
    f = fishburn_reeds_rows(k)
    g = (f @ f.T).astype(float) - (4.0 / 3.0) * np.eye(len(f))
    m = k * (k - 1)
    sigma = 2 * (k - 1) - 4 / 3
    return FamilyInstance(
        BellMatrix(g, f"fr-{k}"),
        provenance="Fishburn-Reeds family",
        analytic_T=sigma * m,
        analytic_B=280 / 3 if k == 5 else None,
        analytic_d=k,
    )


def mermin(n: int) -> FamilyInstance:
    """``g(x) = cos(pi/2 * sum(x))`` for ``x_i in {1, 2}``, snapped to exact -1/0/1."""
    _require(2 <= n <= 12, "mermin needs 2 <= n <= 12")
    total = np.indices((2,) * n).sum(axis=0) + n
    table = np.array([1.0, 0.0, -1.0, 0.0])  # cos(pi*s/2) for s mod 4
    coeffs = table[total % 4]
    return FamilyInstance(
        BellTensor(coeffs, f"mermin-{n}"),
        provenance="Mermin inequality",
        analytic_T=2.0 ** (n - 1),
    )


def qubit_inequality(s44: float = 1.0) -> FamilyInstance:
    """``g = V diag(2, 2, 2, s44) W^T`` with ``V = H x H`` and ``W = Z x H``."""
    _require(0.0 <= s44 < 2.0, "the fourth singular value must lie in [0, 2)")
    h = _H / math.sqrt(2)
    v = np.kron(h, h)
    w = np.kron(np.diag([1.0, -1.0]), h)
    g = v @ np.diag([2.0, 2.0, 2.0, s44]) @ w.T
    return FamilyInstance(
        BellMatrix(g, "qubit"),
        provenance="qubit-achievable construction",
        analytic_T=8.0,
        analytic_B=4 * math.sqrt(2) if s44 == 1.0 else None,
        analytic_d=3,
    )


def witness_blocks(d: int) -> int:
    return (d - 1) // 2 + 1


def random_dimension_witness(d: int, seed: int = 0) -> FamilyInstance:
    """Stack of ``k = floor((d-1)/2) + 1`` seeded Haar orthogonal ``d x d`` blocks."""
    _require(2 <= d <= 32, "witness needs 2 <= d <= 32")
    k = witness_blocks(d)
    rng = np.random.default_rng(seed)
    g = np.vstack([linalg.random_orthogonal(d, rng) for _ in range(k)])
    return FamilyInstance(
        BellMatrix(g, f"witness-{d}-seed{seed}"),
        provenance="random dimension witness",
        analytic_T=float(k * d),
        analytic_d=d,
    )


FAMILIES = {
    "chsh-power": chsh_power,
    "bc": braunstein_caves,
    "geq": greater_equal,
    "bits": binary_digits,
    "fr": fishburn_reeds,
    "mermin": mermin,
    "qubit": qubit_inequality,
    "witness": random_dimension_witness,
}
