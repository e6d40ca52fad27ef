"""Real and complex matrix representations of quaternionic operators.

``rvec`` flattens H^n to R^{4n} by stacking coefficients entrywise in the
(1, i, j, k) order, and all embeddings below are written against that layout:

* ``mul_matrix(q, side)`` -- the 4x4 real matrix of left or right
  multiplication by q on rvec coordinates,
* ``real_embed(A)`` -- the 4n x 4n block matrix acting as x -> A x,
* ``coupling_matrix(x)`` -- the 4n x 4 map rvec(dl) -> rvec(dl * x),
* ``constraint_matrix(x, pivot)`` -- the four linearized gauge rows,
* ``complex_adjoint(A)`` / ``complex_adjoint_vec(x)`` -- the 2n x 2n complex
  representation built from the slice decomposition A = X + Y j.

Everything is dense; the solver targets desk-scale sizes where 4n x 4n dense
kernels are simpler and fast enough.
"""

from __future__ import annotations

import numpy as np

from .quat import Quaternion, QMatrix, QVector, as_quaternion

__all__ = [
    "rvec",
    "rvec_inv",
    "mul_matrix",
    "real_embed",
    "shifted_real_embed",
    "coupling_matrix",
    "constraint_matrix",
    "complex_adjoint",
    "complex_adjoint_vec",
]


def _left_matrix(a: float, b: float, c: float, d: float) -> np.ndarray:
    return np.array(
        [
            [a, -b, -c, -d],
            [b, a, -d, c],
            [c, d, a, -b],
            [d, -c, b, a],
        ]
    )


def _right_matrix(a: float, b: float, c: float, d: float) -> np.ndarray:
    return np.array(
        [
            [a, -b, -c, -d],
            [b, a, d, -c],
            [c, -d, a, b],
            [d, c, -b, a],
        ]
    )


# multiplication matrices of the basis units 1, i, j, k
_L_BASIS = np.stack([_left_matrix(*e) for e in np.eye(4)])
_R_BASIS = np.stack([_right_matrix(*e) for e in np.eye(4)])


def rvec(x: QVector | Quaternion) -> np.ndarray:
    """Stack real coefficients into R^4 (scalar) or R^{4n} (vector)."""
    q = as_quaternion(x) if not isinstance(x, QVector) else None
    if q is not None:
        return q.to_array()
    return x.coeffs.reshape(-1).copy()


def rvec_inv(u) -> QVector:
    """Inverse of rvec; the length must be a multiple of 4."""
    arr = np.asarray(u, dtype=float).reshape(-1)
    if arr.size % 4 != 0:
        raise ValueError(f"length {arr.size} is not divisible by 4")
    return QVector(arr.reshape(-1, 4))


def mul_matrix(q, side: str = "left") -> np.ndarray:
    """4x4 real matrix L(q) or R(q) with rvec(qp) = L(q) rvec(p), rvec(pq) = R(q) rvec(p)."""
    q = as_quaternion(q)
    if side == "left":
        return _left_matrix(q.a, q.b, q.c, q.d)
    if side == "right":
        return _right_matrix(q.a, q.b, q.c, q.d)
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


def real_embed(A: QMatrix) -> np.ndarray:
    """4n x 4n real matrix with rvec(A x) = real_embed(A) @ rvec(x)."""
    n = A.n
    blocks = np.einsum("rsc,cxy->rxsy", A.coeffs, _L_BASIS)
    return np.ascontiguousarray(blocks.reshape(4 * n, 4 * n))


def shifted_real_embed(A: QMatrix, lam, rho: np.ndarray | None = None) -> np.ndarray:
    """real_embed(A - lam*I), assembled as real_embed(A) - I_n kron L(lam)."""
    rho = real_embed(A) if rho is None else rho
    return rho - np.kron(np.eye(A.n), mul_matrix(lam, "left"))


def coupling_matrix(x: QVector) -> np.ndarray:
    """4n x 4 stack of right-multiplication blocks: rvec(dl * x) = coupling_matrix(x) @ rvec(dl)."""
    return np.einsum("nc,cxy->nxy", x.coeffs, _R_BASIS).reshape(-1, 4)


def constraint_matrix(x: QVector, pivot: int) -> np.ndarray:
    """4 x 4n linearized gauge rows: Re(x^* u) = 0 and Im(u_pivot) = 0.

    Row 0 is rvec(x)^T; rows 1-3 select the i, j, k coordinates of the pivot
    entry (0-based) in the rvec layout.
    """
    if not 0 <= pivot < x.n:
        raise ValueError(f"pivot {pivot} out of range for length {x.n}")
    C = np.zeros((4, 4 * x.n))
    C[0] = x.coeffs.reshape(-1)
    for t in range(3):
        C[1 + t, 4 * pivot + 1 + t] = 1.0
    return C


def complex_adjoint(A: QMatrix) -> np.ndarray:
    """2n x 2n complex representation [[X, Y], [-conj(Y), conj(X)]] for A = X + Y j."""
    X = A.coeffs[..., 0] + 1j * A.coeffs[..., 1]
    Y = A.coeffs[..., 2] + 1j * A.coeffs[..., 3]
    return np.block([[X, Y], [-Y.conj(), X.conj()]])


def complex_adjoint_vec(x: QVector) -> np.ndarray:
    """Length-2n complex vector (u, -conj(v)) for x = u + v j, compatible with complex_adjoint."""
    u = x.coeffs[:, 0] + 1j * x.coeffs[:, 1]
    v = x.coeffs[:, 2] + 1j * x.coeffs[:, 3]
    return np.concatenate([u, -v.conj()])
