import dataclasses
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from leigq import (
    I,
    J,
    K,
    QMatrix,
    Quaternion,
    QVector,
    SolveConfig,
    dedup,
    matrix_scale,
    res_pair,
    singular_prefill,
    solve_left,
    triangular_diagonal,
)
from leigq import gallery

from conftest import rand_qmatrix


def _closest(values, target):
    return min(values, key=lambda v: v.dist(target))


# ---------------------------------------------------------------- dedup


def test_dedup_merges_close_values():
    lam = Quaternion(1, 2, 3, 4)
    out = dedup([lam, lam + Quaternion(1e-7)], 1e-5)
    assert len(out) == 1


def test_dedup_two_clouds():
    rng = np.random.default_rng(0)
    c1 = Quaternion(1, 2, -1, 1)
    c2 = Quaternion(-2, 1, 4, 0)
    cloud = [c1, c2]
    for _ in range(10):
        cloud.append(c1 + Quaternion.from_array(1e-6 * rng.standard_normal(4)))
        cloud.append(c2 + Quaternion.from_array(1e-6 * rng.standard_normal(4)))
    out = dedup(cloud, 1e-5)
    assert len(out) == 2
    assert out[0].dist(c1) == 0.0
    assert out[1].dist(c2) == 0.0


def test_dedup_empty():
    assert dedup([], 1e-5) == []


def test_dedup_best_certificate_representative():
    vals = [Quaternion(1), Quaternion(1 + 5e-6), Quaternion(2)]
    out = dedup(vals, 1e-5, certificates=[1e-8, 1e-12, 1e-10])
    assert len(out) == 2
    assert out[0].dist(Quaternion(1 + 5e-6)) == 0.0


def test_dedup_scaled_variant():
    vals = [Quaternion(100), Quaternion(100.0005)]
    assert len(dedup(vals, 1e-5)) == 2
    assert len(dedup(vals, 1e-5, scaled=True)) == 1


@settings(max_examples=50)
@given(
    st.lists(
        st.tuples(
            st.floats(-5, 5, allow_nan=False),
            st.floats(-5, 5, allow_nan=False),
            st.floats(-5, 5, allow_nan=False),
            st.floats(-5, 5, allow_nan=False),
        ),
        max_size=25,
    )
)
def test_dedup_separation_and_cover(vals):
    values = [Quaternion(*v) for v in vals]
    reps = dedup(values, 0.5)
    for a in range(len(reps)):
        for b in range(a + 1, len(reps)):
            assert reps[a].dist(reps[b]) > 0.5
    for v in values:
        assert min((v.dist(r) for r in reps), default=0.0) <= 0.5


# ------------------------------------------------- triangular shortcut


def test_triangular_diagonal_diag():
    diag = triangular_diagonal(QMatrix.diag([I, J, K]))
    assert [d.dist(t) for d, t in zip(diag, (I, J, K))] == [0.0, 0.0, 0.0]


def test_triangular_diagonal_dense_none(rng):
    assert triangular_diagonal(rand_qmatrix(rng, 4)) is None


def test_triangular_diagonal_lower():
    diag = triangular_diagonal(gallery.mvps_19())
    assert [d.dist(t) for d, t in zip(diag, (I, J, K))] == [0.0, 0.0, 0.0]


# ---------------------------------------------------- singular prefill


def test_singular_prefill_diag():
    pairs = singular_prefill(QMatrix.diag([1, 0]))
    assert len(pairs) == 1
    assert pairs[0].lam == Quaternion()
    assert abs(pairs[0].vector[1]) > 0.99


def test_singular_prefill_invertible(rng):
    assert singular_prefill(rand_qmatrix(rng, 3)) == []


def test_singular_prefill_zero_matrix():
    pairs = singular_prefill(QMatrix.zeros(2))
    assert len(pairs) == 2
    assert all(p.lam == Quaternion() for p in pairs)


# ------------------------------------------------------------ solve_left


def test_solve_triangular_without_shortcut():
    rng = np.random.default_rng(77)
    diag = [Quaternion.from_array(rng.standard_normal(4)) for _ in range(4)]
    coeffs = np.zeros((4, 4, 4))
    for idx, q in enumerate(diag):
        coeffs[idx, idx] = q.to_array()
    iu = np.triu_indices(4, 1)
    coeffs[iu[0], iu[1]] = rng.standard_normal((len(iu[0]), 4))
    A = QMatrix(coeffs)
    cfg = SolveConfig(k=4, seed=3, triangular_shortcut=False, singular_prefill=False)
    pairs, stats = solve_left(A, cfg)
    assert len(pairs) == 4
    scale = matrix_scale(A)
    for q in diag:
        assert _closest([p.lam for p in pairs], q).dist(q) <= 1e-8 * scale


def test_solve_huang_so_real_pair():
    pairs, _ = solve_left(gallery.huang_so_real_pair(), SolveConfig(k=2, seed=0))
    found = sorted(p.lam.a for p in pairs)
    assert abs(found[0] + math.sqrt(2)) < 1e-9
    assert abs(found[1] - math.sqrt(2)) < 1e-9


def test_solve_mvps_19():
    pairs, stats = solve_left(gallery.mvps_19(), SolveConfig(k=3, seed=0))
    assert stats.shortcut
    assert len(pairs) == 3
    for target in gallery.MVPS_19_SPECTRUM:
        assert _closest([p.lam for p in pairs], target).dist(target) <= 1e-10


def test_solve_mvps_19_newton_only():
    cfg = SolveConfig(k=3, seed=0, triangular_shortcut=False)
    pairs, stats = solve_left(gallery.mvps_19(), cfg)
    assert not stats.shortcut
    assert len(pairs) == 3
    for target in gallery.MVPS_19_SPECTRUM:
        assert _closest([p.lam for p in pairs], target).dist(target) <= 1e-8


def test_solve_determinism():
    A = rand_qmatrix(np.random.default_rng(9), 4)
    cfg = SolveConfig(k=4, seed=42)
    pairs1, stats1 = solve_left(A, cfg)
    pairs2, stats2 = solve_left(A, cfg)
    assert len(pairs1) == len(pairs2)
    for p1, p2 in zip(pairs1, pairs2):
        assert p1.lam == p2.lam
        assert np.array_equal(p1.vector.coeffs, p2.vector.coeffs)
        assert p1.trial == p2.trial
    assert stats1.trials == stats2.trials
    assert stats1.iterations == stats2.iterations


def test_solve_accepted_pairs_certified():
    A = rand_qmatrix(np.random.default_rng(10), 5)
    cfg = SolveConfig(k=5, seed=1)
    pairs, _ = solve_left(A, cfg)
    scale = matrix_scale(A)
    for p in pairs:
        assert p.certificate.res_pair <= cfg.accept_tol_rel * scale
        assert p.certificate.res_min <= 10 * cfg.accept_tol_rel * scale
        assert abs(p.vector.norm() - 1.0) < 1e-10
        assert res_pair(A, p.lam, p.vector) <= cfg.accept_tol_rel * scale


def test_solve_stats_invariant():
    A = rand_qmatrix(np.random.default_rng(15), 4)
    pairs, stats = solve_left(A, SolveConfig(k=4, seed=2))
    assert stats.accepted + stats.duplicates + stats.nonconverged == stats.trials
    assert stats.restarts == stats.duplicates + stats.nonconverged
    assert len(stats.iterations) == stats.trials


def test_solve_shortfall_reported_not_raised():
    # only two isolated eigenvalues exist; requesting 3 must fall short
    pairs, stats = solve_left(gallery.mvps_56(), SolveConfig(k=3, seed=0))
    assert len(pairs) == 2
    assert stats.trials == 60


def test_continuum_hint_fires_on_sphere():
    pairs, stats = solve_left(gallery.huang_so_sphere(), SolveConfig(k=20, seed=0))
    assert len(pairs) == 20
    assert stats.continuum_hint


def test_continuum_hint_quiet_on_isolated():
    pairs, stats = solve_left(gallery.five_eigenvalue_3x3(), SolveConfig(k=20, seed=0))
    assert len(pairs) == 5
    assert not stats.continuum_hint


def test_triangular_containment():
    rng = np.random.default_rng(55)
    coeffs = rng.standard_normal((5, 5, 4))
    il = np.tril_indices(5, -1)
    coeffs[il[0], il[1]] = 0.0
    A = QMatrix(coeffs)
    diag = [A[r, r] for r in range(5)]
    pairs, _ = solve_left(A, SolveConfig(k=5, seed=8, triangular_shortcut=False))
    scale = matrix_scale(A)
    for p in pairs:
        assert min(p.lam.dist(d) for d in diag) <= 1e-8 * scale


def test_prefill_counts_toward_target():
    A = QMatrix.diag([1, 0])
    pairs, stats = solve_left(A, SolveConfig(k=2, seed=0, triangular_shortcut=False))
    assert stats.prefilled == 1
    assert len(pairs) == 2
    zeros = [p for p in pairs if abs(p.lam) < 1e-8]
    assert len(zeros) == 1
