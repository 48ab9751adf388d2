"""Acceptance criteria, one test per criterion (``test_acNN_*``).

The conftest summary hook prints one PASS/FAIL line per criterion.
"""

import itertools
import math
import time

import numpy as np
import pytest

from bellscope import families, linalg
from bellscope.core import BellMatrix, local_bound, quantum_bound, seesaw_lower_bound, violation_report
from bellscope.multipartite import multipartite_bound, multipartite_local_bound, slice_norms
from bellscope.realization import dimension_bounds, gamma_matrices, verify_realization
from bellscope.tightness import _truncated, alpha_from_truncation, check_corollary1, ellipsoid_data, solve_alpha

from conftest import (
    brute_force_local,
    brute_force_tensor_local,
    find_simultaneous_permutation,
    hyperbola_matrix,
    load_fr5_reference,
)


def rel_close(a, b, rel):
    return abs(a - b) <= rel * abs(b)


def test_ac01_chsh():
    t0 = time.perf_counter()
    bm = families.chsh().instance
    T, B = quantum_bound(bm), local_bound(bm)
    tr = solve_alpha(bm)
    rep = verify_realization(bm, tr)
    elapsed = time.perf_counter() - t0
    assert rel_close(T, 2 * math.sqrt(2), 1e-9)
    assert B == 2.0
    assert tr.tight and np.allclose(tr.alpha, np.eye(2), atol=1e-9)
    assert abs(rep.bell_value - 2 * math.sqrt(2)) <= 1e-8
    assert elapsed < 0.1, elapsed


def test_ac02_not_tight():
    t0 = time.perf_counter()
    g = np.array([[1.0, 1.0], [1.0, 0.0]])
    T = quantum_bound(g)
    tr = solve_alpha(g)
    s = seesaw_lower_bound(g, dim=4, restarts=32)
    elapsed = time.perf_counter() - t0
    assert rel_close(T, 1 + math.sqrt(5), 1e-9)
    assert not tr.tight
    assert s.value <= 3 + 1e-5
    assert elapsed < 0.5, elapsed


def test_ac03_chsh_powers():
    t0 = time.perf_counter()
    for k in (1, 2, 3):
        assert rel_close(quantum_bound(families.chsh_power(k).instance), 2 ** (1.5 * k), 1e-9)
    rep = violation_report(families.chsh_power(2).instance)
    elapsed = time.perf_counter() - t0
    assert rep.B == 8.0 and not rep.bell_candidate
    assert elapsed < 1.0, elapsed


def test_ac04_braunstein_caves():
    for M in range(2, 7):
        bm = families.braunstein_caves(M).instance
        assert rel_close(quantum_bound(bm), 2 * M * math.cos(math.pi / (2 * M)), 1e-9)
        tr = solve_alpha(bm)
        assert tr.d == 2 and tr.tight


def test_ac05_greater_equal():
    for M in range(2, 7):
        bm = families.greater_equal(M).instance
        assert rel_close(quantum_bound(bm), M / math.sin(math.pi / (2 * M)), 1e-9)
        assert local_bound(bm) == math.ceil(M * M / 2)
        assert check_corollary1(bm) and solve_alpha(bm).tight
        e = ellipsoid_data(bm)
        pts = e.points()
        assert pts.shape[0] == 2 * M
        assert np.max(np.abs(np.einsum("ij,jk,ik->i", pts, e.quadric, pts) - 1)) <= 1e-7


def test_ac06_binary_digits():
    for m2 in (2, 3, 4):
        bm = families.binary_digits(m2).instance
        m1 = bm.m1
        assert np.max(np.abs(linalg.svd(bm.g).singular_values - math.sqrt(m1))) <= 1e-9
        assert rel_close(quantum_bound(bm), m1 * math.sqrt(m2), 1e-9)
        # diagonal solution by substitution into the row-norm equations
        vd, wd = bm.g / math.sqrt(m1), np.eye(m2)
        a = math.sqrt(m1 / m2) * np.eye(m2)
        assert np.allclose(np.sum((vd @ a) ** 2, axis=1), 1, atol=1e-12)
        assert np.allclose(np.sum((wd @ a) ** 2, axis=1), m1 / m2, atol=1e-12)
        tr = solve_alpha(bm)
        assert tr.tight and np.max(np.abs(tr.alpha - a)) <= 1e-7


def test_ac07_fishburn_reeds():
    bm = families.fishburn_reeds(5).instance
    T = quantum_bound(bm)
    t0 = time.perf_counter()
    B = local_bound(bm)
    elapsed = time.perf_counter() - t0
    assert rel_close(T, 400 / 3, 1e-9)
    assert rel_close(B, 280 / 3, 1e-9)
    assert rel_close(T / B, 10 / 7, 1e-9)
    assert solve_alpha(bm).tight
    ref = load_fr5_reference()
    perm = find_simultaneous_permutation(ref, bm.g)
    assert perm is not None and np.allclose(bm.g[np.ix_(perm, perm)], ref, atol=1e-12)
    assert elapsed < 30, elapsed


def test_ac08_mermin():
    for n in (3, 4, 5):
        t = families.mermin(n).instance
        assert np.all(slice_norms(t) == 1.0)
        assert multipartite_bound(t) == 2.0 ** (n - 1)
    t3 = families.mermin(3).instance
    assert multipartite_local_bound(t3) == 2.0 == brute_force_tensor_local(t3.coeffs)


def test_ac09_qubit():
    bm = families.qubit_inequality().instance
    assert rel_close(quantum_bound(bm), 8.0, 1e-9)
    assert rel_close(local_bound(bm), 4 * math.sqrt(2), 1e-9)
    tr = solve_alpha(bm)
    assert tr.tight and tr.d_prime == 3
    rep = verify_realization(bm, tr)
    assert rep.D == 2 and abs(rep.bell_value - 8.0) <= 1e-8


def test_ac10_dimension_witness():
    for d in (2, 3, 4, 5):
        k = families.witness_blocks(d)
        for seed in range(20):
            bm = families.random_dimension_witness(d, seed).instance
            assert rel_close(quantum_bound(bm), k * d, 1e-9)
            tr = solve_alpha(bm)
            assert tr.tight and tr.d_prime == d, (d, seed)
            lo, hi = dimension_bounds(tr.d_prime)
            assert lo == math.ceil((d + 1) / 2) and hi == 2 ** (d // 2)


def test_ac11_property_suites():
    rng = np.random.default_rng(11)
    # scaling and permutation invariances
    for _ in range(50):
        m1, m2 = (int(x) for x in rng.integers(1, 6, size=2))
        g = rng.standard_normal((m1, m2))
        T, B = quantum_bound(g), local_bound(g)
        c = float(rng.uniform(0.1, 10))
        assert rel_close(quantum_bound(c * g), c * T, 1e-12) and rel_close(local_bound(c * g), c * B, 1e-12)
        h = g[rng.permutation(m1)][:, rng.permutation(m2)]
        assert rel_close(quantum_bound(h), T, 1e-12) and rel_close(local_bound(h), B, 1e-12)
    # sign alignment against the full enumeration
    for _ in range(500):
        m1 = int(rng.integers(1, 9))
        m2 = int(rng.integers(1, 11 - m1))
        g = rng.standard_normal((m1, m2))
        assert abs(local_bound(g) - brute_force_local(g)) <= 1e-12 * max(1, abs(brute_force_local(g)))
    # X under re-mixing of the degenerate block
    for g in (families.greater_equal(4).instance.g, families.qubit_inequality().instance.g, hyperbola_matrix()):
        d, vd, wd = _truncated(BellMatrix(g), linalg.DEGENERACY_TOL)
        base = alpha_from_truncation(g, vd, wd)
        for _ in range(5):
            r = linalg.random_orthogonal(d, rng)
            mixed = alpha_from_truncation(g, vd @ r, wd @ r)
            assert mixed.tight == base.tight
            assert np.max(np.abs(mixed.X - r.T @ base.X @ r)) <= 1e-8
    # sandwich B <= see-saw <= T
    for trial in range(200):
        m1, m2 = (int(x) for x in rng.integers(1, 5, size=2))
        g = rng.standard_normal((m1, m2))
        s = seesaw_lower_bound(g, dim=m1 + m2, restarts=16, iters=5000, seed=trial).value
        assert local_bound(g) - 1e-8 <= s <= quantum_bound(g) + 1e-8
    # Clifford anticommutation
    for d in range(1, 9):
        gs = gamma_matrices(d)
        eye = np.eye(gs[0].shape[0])
        for a, b in itertools.product(range(d), repeat=2):
            assert np.max(np.abs(gs[a] @ gs[b] + gs[b] @ gs[a] - 2 * (a == b) * eye)) <= 1e-12
