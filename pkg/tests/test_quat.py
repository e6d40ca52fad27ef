import math

import numpy as np
import pytest
from hypothesis import given

from leigq import I, J, K, ONE, QMatrix, Quaternion, QVector, qinv, qmul

from conftest import nonzero_quaternions, quaternions, rand_qmatrix, rand_quaternion, rand_qvector


def test_multiplication_table():
    assert qmul(I, J) == K
    assert qmul(J, K) == I
    assert qmul(K, I) == J
    assert qmul(I, I) == -ONE
    assert qmul(J, J) == -ONE
    assert qmul(K, K) == -ONE


def test_regauging_product_from_worked_example():
    # (1+j) * (sqrt(2)/2)(1-j) = sqrt(2)
    q1 = (ONE - J) * (math.sqrt(2) / 2)
    out = qmul(ONE + J, q1)
    assert out.dist(Quaternion(math.sqrt(2))) < 1e-15


@given(quaternions)
def test_identity_multiplication(q):
    assert qmul(q, ONE) == q
    assert qmul(ONE, q) == q


def test_qinv_of_one_plus_j():
    assert qinv(ONE + J).dist(Quaternion(0.5, 0, -0.5, 0)) < 1e-16


def test_qinv_units_and_reals():
    assert qinv(I) == -I
    assert qinv(Quaternion(2.0)) == Quaternion(0.5)


def test_qinv_zero_rejected():
    with pytest.raises(ZeroDivisionError):
        qinv(Quaternion())


@given(nonzero_quaternions)
def test_qinv_roundtrip(q):
    assert qmul(q, qinv(q)).dist(ONE) < 1e-12
    assert qmul(qinv(q), q).dist(ONE) < 1e-12


@given(quaternions, quaternions, quaternions)
def test_associativity_and_norms(p, q, r):
    lhs = qmul(qmul(p, q), r)
    rhs = qmul(p, qmul(q, r))
    scale = max(1.0, abs(p) * abs(q) * abs(r))
    assert lhs.dist(rhs) <= 1e-14 * scale
    assert abs(abs(qmul(p, q)) - abs(p) * abs(q)) <= 1e-14 * max(1.0, abs(p) * abs(q))
    assert qmul(p, q).conj().dist(qmul(q.conj(), p.conj())) <= 1e-14 * scale


@given(quaternions)
def test_conj_involution(q):
    assert q.conj().conj() == q


def test_matvec_diagonal():
    A = QMatrix.diag([I, J])
    y = A.matvec(QVector.unit(2, 0))
    assert y[0] == I and y[1] == Quaternion()


def test_matvec_spherical_example():
    # [[0,1],[-1,0]] maps (1, i)/sqrt(2) to i * (1, i)/sqrt(2)
    A = QMatrix.from_entries([[0, 1], [-1, 0]])
    x = QVector.from_entries([1, I]) / math.sqrt(2)
    y = A.matvec(x)
    expected = x.left_scale(I)
    assert (y - expected).norm() < 1e-15


def test_matvec_1x1():
    q = Quaternion(1, 2, 3, 4)
    x = Quaternion(-0.5, 0.25, 0, 2)
    A = QMatrix.from_entries([[q]])
    assert A.matvec(QVector.from_entries([x]))[0].dist(qmul(q, x)) < 1e-14


def test_matvec_dimension_mismatch():
    with pytest.raises(ValueError):
        QMatrix.identity(3).matvec(QVector.unit(2, 0))


def test_norm_examples():
    x = QVector.from_entries([ONE + J, 2 * I])
    assert abs(x.norm() ** 2 - 6.0) < 1e-14
    assert QVector.unit(5, 0).norm() == 1.0


def test_norm_right_scaling(rng):
    for _ in range(50):
        x = rand_qvector(rng, 4)
        q = rand_quaternion(rng)
        assert abs(x.right_scale(q).norm() - x.norm() * abs(q)) <= 1e-13 * max(1.0, x.norm() * abs(q))


def test_right_linearity(rng):
    for _ in range(50):
        A = rand_qmatrix(rng, 3)
        x = rand_qvector(rng, 3)
        a = rand_quaternion(rng)
        lhs = A.matvec(x.right_scale(a))
        rhs = A.matvec(x).right_scale(a)
        bound = 1e-13 * np.linalg.norm(A.coeffs) * x.norm() * abs(a)
        assert (lhs - rhs).norm() <= max(bound, 1e-15)


def test_inner_product_conjugate_symmetry(rng):
    for _ in range(50):
        x = rand_qvector(rng, 5)
        y = rand_qvector(rng, 5)
        assert x.inner(y).dist(y.inner(x).conj()) <= 1e-13 * max(1.0, x.norm() * y.norm())


def test_matrix_product_associativity(rng):
    A, B, C = (rand_qmatrix(rng, 3) for _ in range(3))
    lhs = (A @ B) @ C
    rhs = A @ (B @ C)
    assert np.allclose(lhs.coeffs, rhs.coeffs, atol=1e-11)


def test_conj_transpose_involution(rng):
    A = rand_qmatrix(rng, 4)
    assert np.array_equal(A.conj_transpose().conj_transpose().coeffs, A.coeffs)


def test_values_immutable():
    x = QVector.unit(2, 0)
    with pytest.raises(ValueError):
        x.coeffs[0, 0] = 2.0
    A = QMatrix.identity(2)
    with pytest.raises(ValueError):
        A.coeffs[0, 0, 0] = 2.0
