"""Machine-readable analysis report with a fixed key order."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import __version__, linalg
from .core import BellMatrix, is_violation, local_bound, quantum_bound, seesaw_lower_bound
from .realization import dimension_bounds, verify_realization
from .tightness import SOLVE_TOL, solve_alpha

SIG_DIGITS = 12


def num(x):
    """Round to 12 significant digits; ``None`` passes through."""
    if x is None:
        return None
    return float(f"{float(x):.{SIG_DIGITS}g}")


def num_array(a):
    return [num_array(r) for r in a] if np.ndim(a) > 1 else [num(x) for x in a]


@dataclass
class AnalysisReport:
    shape: list
    label: Optional[str]
    T: float
    B: float
    ratio: Optional[float]
    bell_candidate: bool
    tight: bool
    d: int
    d_prime: Optional[int]
    residuals: Optional[float]
    failure_reason: Optional[str] = None
    seesaw: Optional[float] = None
    realization: Optional[dict] = None
    seed: int = 0
    version: str = __version__

    def to_dict(self) -> dict:
        real = None
        if self.realization is not None:
            r = self.realization
            real = {
                "D": r["D"],
                "dimension_bounds": list(r["dimension_bounds"]),
                "bell_value": num(r["bell_value"]),
                "max_corr_error": num(r["max_corr_error"]),
            }
        return {
            "tool": "bellscope",
            "version": self.version,
            "input": {"shape": list(self.shape), "label": self.label},
            "seed": self.seed,
            "T": num(self.T),
            "B": num(self.B),
            "ratio": num(self.ratio),
            "bell_candidate": self.bell_candidate,
            "tight": self.tight,
            "d": self.d,
            "d_prime": self.d_prime,
            "residuals": num(self.residuals),
            "failure_reason": self.failure_reason,
            "seesaw": num(self.seesaw),
            "realization": real,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_dict(cls, doc: dict) -> "AnalysisReport":
        return cls(
            shape=list(doc["input"]["shape"]),
            label=doc["input"]["label"],
            T=doc["T"],
            B=doc["B"],
            ratio=doc["ratio"],
            bell_candidate=doc["bell_candidate"],
            tight=doc["tight"],
            d=doc["d"],
            d_prime=doc["d_prime"],
            residuals=doc["residuals"],
            failure_reason=doc["failure_reason"],
            seesaw=doc["seesaw"],
            realization=doc["realization"],
            seed=doc["seed"],
            version=doc["version"],
        )


def analyze(
    bm: BellMatrix,
    with_seesaw: bool = False,
    seed: int = 0,
    deg_tol: float = linalg.DEGENERACY_TOL,
    solve_tol: float = SOLVE_TOL,
    max_enum: int = 2**26,
) -> AnalysisReport:
    T = quantum_bound(bm)
    B = local_bound(bm, max_enum)
    if np.any(bm.g):
        tr = solve_alpha(bm, tol=solve_tol, deg_tol=deg_tol)
        tight, d, d_prime, res, why = tr.tight, tr.d, tr.d_prime, tr.residuals, tr.failure_reason
    else:
        tr, tight, d, d_prime, res, why = None, False, min(bm.shape), None, None, None
    realization = None
    if tight and d_prime is not None and 1 <= d_prime <= 12:
        rep = verify_realization(bm, tr)
        realization = {
            "D": rep.D,
            "dimension_bounds": dimension_bounds(d_prime),
            "bell_value": rep.bell_value,
            "max_corr_error": rep.max_corr_error,
        }
    return AnalysisReport(
        shape=list(bm.shape),
        label=bm.label,
        T=T,
        B=B,
        ratio=T / B if B > 0 else None,
        bell_candidate=is_violation(T, B),
        tight=tight,
        d=d,
        d_prime=d_prime,
        residuals=res,
        failure_reason=why,
        seesaw=seesaw_lower_bound(bm, seed=seed).value if with_seesaw else None,
        realization=realization,
        seed=seed,
    )
