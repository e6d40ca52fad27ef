import math

import numpy as np
import pytest

from leigq import (
    I,
    J,
    K,
    QMatrix,
    Quaternion,
    QVector,
    RankDetectionError,
    certify,
    det_logmag,
    kernel_basis,
    matrix_scale,
    nullity,
    res_min,
    res_pair,
)
from leigq import gallery

from conftest import rand_qmatrix, rand_quaternion, rand_qvector


def test_res_pair_exact_eigenpair():
    A = QMatrix.diag([I, J])
    assert res_pair(A, I, QVector.unit(2, 0)) == 0.0


def test_res_pair_diagonal_defect():
    A = QMatrix.diag([Quaternion(2), Quaternion(5)])
    assert abs(res_pair(A, Quaternion(2), QVector.unit(2, 1)) - 3.0) < 1e-14


def test_res_pair_zero_vector_rejected():
    with pytest.raises(ValueError):
        res_pair(QMatrix.identity(2), Quaternion(), QVector.zeros(2))


def test_res_pair_renormalizes_with_warning():
    A = QMatrix.diag([Quaternion(2), Quaternion(5)])
    with pytest.warns(UserWarning):
        val = res_pair(A, Quaternion(2), QVector.from_entries([0, 3]))
    assert abs(val - 3.0) < 1e-14


def test_res_min_on_spectrum_and_off():
    A = QMatrix.diag([I, J])
    assert res_min(A, I) < 1e-15
    assert res_min(A, J) < 1e-15
    assert abs(res_min(A, Quaternion()) - 1.0) < 1e-14


def test_res_min_huang_so_nonreal_value():
    A = gallery.huang_so_nonreal_pair()
    assert res_min(A, Quaternion(0.5, 0.5, 0.5, -0.5)) <= 1e-10


def test_res_min_vector_attains_minimum():
    A = gallery.huang_so_real_pair()
    lam = Quaternion(math.sqrt(2))
    val, v = res_min(A, lam, with_vector=True)
    assert abs(v.norm() - 1.0) < 1e-12
    assert abs(res_pair(A, lam, v) - val) < 1e-12


def test_res_min_lower_bounds_res_pair(rng):
    for _ in range(25):
        A = rand_qmatrix(rng, 4)
        lam = rand_quaternion(rng)
        v = rand_qvector(rng, 4).normalized()
        assert res_min(A, lam) <= res_pair(A, lam, v) + 1e-12


def test_res_min_shift_invariance(rng):
    for _ in range(10):
        A = rand_qmatrix(rng, 3)
        lam = rand_quaternion(rng)
        alpha = float(rng.standard_normal())
        shifted = A + QMatrix.identity(3) * alpha
        base = res_min(A, lam)
        assert abs(res_min(shifted, lam + Quaternion(alpha)) - base) <= 1e-12 * matrix_scale(A)


def test_res_min_scale_covariance(rng):
    for _ in range(10):
        A = rand_qmatrix(rng, 3)
        lam = rand_quaternion(rng)
        beta = float(rng.standard_normal()) or 1.0
        lhs = res_min(A * beta, lam * beta)
        assert abs(lhs - abs(beta) * res_min(A, lam)) <= 1e-12 * abs(beta) * matrix_scale(A)


def test_certificate_relations(rng):
    A = rand_qmatrix(rng, 3)
    lam = rand_quaternion(rng)
    _, v = res_min(A, lam, with_vector=True)
    cert = certify(A, lam, v)
    assert cert.scale >= 1.0
    assert cert.res_min <= cert.res_pair + 1e-12
    assert cert.res_min_rel == cert.res_min / cert.scale


def test_nullity_cases(rng):
    assert nullity(QMatrix.diag([1, 0])) == 1
    assert nullity(QMatrix.zeros(2)) == 2
    A = rand_qmatrix(rng, 4)  # invertible with probability 1
    assert nullity(A) == 0


def test_nullity_bad_tolerance_detected(monkeypatch):
    # the embedding replicates every singular value four times; a tolerance
    # landing inside a numerically split quadruple must be flagged
    import leigq.certificates as certs

    split = np.array([1.0, 1.0, 1.0, 1.0, 1e-3, 1e-3, 0.9e-15, 0.8e-15])
    monkeypatch.setattr(certs.scipy.linalg, "svdvals", lambda M: split)
    with pytest.raises(RankDetectionError):
        nullity(QMatrix.identity(2), tol=1e-14)


def test_kernel_basis_diag():
    basis = kernel_basis(QMatrix.diag([1, 0]))
    assert len(basis) == 1
    assert abs(basis[0][1]) > 0.99


def test_kernel_basis_zero_matrix():
    basis = kernel_basis(QMatrix.zeros(2))
    assert len(basis) == 2
    for r in range(2):
        for s in range(2):
            ip = basis[r].inner(basis[s])
            target = Quaternion(1.0) if r == s else Quaternion()
            assert ip.dist(target) < 1e-12


def test_kernel_basis_random_rank_deficient(rng):
    for n in (3, 5):
        A = rand_qmatrix(rng, n) @ QMatrix.diag([1] * (n - 2) + [1, 0])
        basis = kernel_basis(A)
        assert len(basis) == 1
        for v in basis:
            assert A.matvec(v).norm() <= 1e-10
        scale = matrix_scale(A)
        tol = 4 * n * np.finfo(float).eps
        for v in basis:
            assert A.matvec(v).norm() <= 10 * tol * scale


def test_kernel_basis_orthonormal(rng):
    A = rand_qmatrix(rng, 4) @ QMatrix.diag([1, 1, 0, 0])
    basis = kernel_basis(A)
    assert len(basis) == 2
    for r in range(2):
        for s in range(2):
            ip = basis[r].inner(basis[s])
            target = Quaternion(1.0) if r == s else Quaternion()
            assert ip.dist(target) < 1e-12


def test_det_logmag_unit():
    sign, logmag = det_logmag(QMatrix.from_entries([[I]]), Quaternion())
    assert sign == 1
    assert abs(logmag) < 1e-12


def test_det_logmag_singular():
    q = Quaternion(1, 2, -1, 0.5)
    sign, logmag = det_logmag(QMatrix.from_entries([[q]]), q)
    assert sign == 0
    assert logmag == -np.inf
    sign, _ = det_logmag(QMatrix.diag([I, J]), I)
    assert sign == 0


def test_det_logmag_vanishes_on_certified_eigenvalues():
    cases = [
        (gallery.huang_so_real_pair(), Quaternion(math.sqrt(2))),
        (gallery.huang_so_nonreal_pair(), Quaternion(0.5, 0.5, 0.5, -0.5)),
        (gallery.mvps_19(), I),
        (gallery.mvps_55(), -I - J),
    ]
    for A, lam in cases:
        assert res_min(A, lam) <= 1e-12 * matrix_scale(A)
        sign, logmag = det_logmag(A, lam)
        assert sign == 0 or logmag < -30.0


def test_matrix_scale_lower_bound():
    assert matrix_scale(QMatrix.diag([Quaternion(0.1), Quaternion(0.2)])) == 1.0
    assert abs(matrix_scale(QMatrix.diag([Quaternion(3), Quaternion(1)])) - 3.0) < 1e-13
