import itertools
import time
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

DATA = Path(__file__).parent / "data"
GOLDEN = Path(__file__).parent / "golden"


def brute_force_local(g):
    """Independent oracle: maximize over every +/-1 assignment of both parties."""
    g = np.asarray(g, dtype=float)
    m1, m2 = g.shape
    best = -np.inf
    for a1 in itertools.product((-1.0, 1.0), repeat=m1):
        for a2 in itertools.product((-1.0, 1.0), repeat=m2):
            best = max(best, float(np.array(a1) @ g @ np.array(a2)))
    return best


def brute_force_tensor_local(t):
    t = np.asarray(t, dtype=float)
    best = -np.inf
    for signs in itertools.product((-1.0, 1.0), repeat=sum(t.shape)):
        r, pos = t, 0
        for m in t.shape:
            r = np.tensordot(np.array(signs[pos : pos + m]), r, axes=(0, 0))
            pos += m
        best = max(best, float(r))
    return best


def load_fr5_reference():
    rows = (DATA / "fr5_reference.txt").read_text().split("\n")
    return np.array([[float(Fraction(c)) for c in r.split()] for r in rows if r.strip()])


def find_simultaneous_permutation(a, b, atol=1e-9):
    """Backtracking search for ``perm`` with ``a[i, j] == b[perm[i], perm[j]]``."""
    n = len(a)
    perm, used = [-1] * n, [False] * n

    def ok(i, j):
        if abs(a[i, i] - b[j, j]) > atol:
            return False
        return all(abs(a[i, k] - b[j, perm[k]]) <= atol for k in range(i))

    def rec(i):
        if i == n:
            return True
        for j in range(n):
            if not used[j] and ok(i, j):
                perm[i], used[j] = j, True
                if rec(i + 1):
                    return True
                used[j] = False
        return False

    return perm if rec(0) else None


def hyperbola_matrix():
    """Rank-2 g whose top singular rows lie on a hyperbola: solvable system, indefinite X."""
    t = np.array([0.3, -0.3, 0.8, -0.8])
    a = 1 / np.sqrt(np.sum(np.cosh(t) ** 2))
    b = 1 / np.sqrt(np.sum(np.sinh(t) ** 2))
    p = np.column_stack([a * np.cosh(t), b * np.sinh(t)])
    return p @ p.T


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


_AC_RESULTS = {}


def pytest_runtest_logreport(report):
    name = report.nodeid.split("::")[-1]
    if "test_acceptance.py" in report.nodeid and name.startswith("test_ac"):
        failed = report.failed or (report.when == "call" and report.skipped)
        _AC_RESULTS[name] = _AC_RESULTS.get(name, True) and not failed


def pytest_sessionstart(session):
    session.config._ac_t0 = time.perf_counter()


def pytest_terminal_summary(terminalreporter, config):
    if not _AC_RESULTS:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for name in sorted(_AC_RESULTS):
        tr.write_line(f"{'PASS' if _AC_RESULTS[name] else 'FAIL'}  {name}")
    elapsed = time.perf_counter() - config._ac_t0
    tr.write_line(f"{'PASS' if elapsed < 300 else 'FAIL'}  total suite runtime {elapsed:.1f} s (limit 300 s)")
