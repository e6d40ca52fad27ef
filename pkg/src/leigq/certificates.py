"""Residual certificates, rank/nullity diagnostics and kernel bases.

Two scalar certificates are used throughout: the eigenpair residual
``res_pair(A, lam, v) = ||A v - lam v||`` for a specific unit vector, and the
vector-free ``res_min(A, lam) = sigma_min(real_embed(A - lam I))``, which
vanishes exactly on the left spectrum.  Relative values are normalized by the
robust matrix scale s(A) = max(1, ||A||_2).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .embed import real_embed, rvec_inv, shifted_real_embed
from .quat import QMatrix, Quaternion, QVector, as_quaternion

__all__ = [
    "Certificate",
    "RankDetectionError",
    "matrix_scale",
    "res_pair",
    "res_min",
    "certify",
    "nullity",
    "kernel_basis",
    "det_logmag",
]


class RankDetectionError(RuntimeError):
    """The kernel dimension of the real embedding is not a multiple of 4.

    This signals a rank tolerance that falls inside a singular-value gap
    rather than between the kernel and the rest of the spectrum.
    """


@dataclass(frozen=True)
class Certificate:
    """Residual certificates of an eigenpair candidate.

    ``res_min <= res_pair`` always holds; ``res_min_rel = res_min / scale``
    with ``scale = s(A) >= 1``.
    """

    res_pair: float
    res_min: float
    res_min_rel: float
    scale: float


def matrix_scale(A: QMatrix, rho: np.ndarray | None = None) -> float:
    """s(A) = max(1, ||A||_2), with the operator norm taken from the real embedding."""
    rho = real_embed(A) if rho is None else rho
    return max(1.0, float(np.linalg.norm(rho, 2)))


def res_pair(A: QMatrix, lam, v: QVector) -> float:
    """Eigenpair residual ||A v - lam v|| for a unit vector v.

    A v that deviates from unit norm by more than 1e-12 is normalized
    internally (with a warning); a zero vector is rejected.
    """
    lam = as_quaternion(lam)
    nrm = v.norm()
    if nrm == 0.0:
        raise ValueError("residual of a zero vector is undefined")
    if abs(nrm - 1.0) > 1e-12:
        warnings.warn(f"res_pair input renormalized (||v|| = {nrm:.3e})", stacklevel=2)
        v = v / nrm
    return (A.matvec(v) - v.left_scale(lam)).norm()


def res_min(A: QMatrix, lam, with_vector: bool = False):
    """sigma_min of real_embed(A - lam I); optionally also the minimizing unit vector."""
    S = shifted_real_embed(A, as_quaternion(lam))
    if not with_vector:
        return float(scipy.linalg.svdvals(S)[-1])
    _, s, vt = np.linalg.svd(S)
    v = rvec_inv(vt[-1])
    return float(s[-1]), v.normalized()


def certify(A: QMatrix, lam, v: QVector, scale: float | None = None) -> Certificate:
    """Bundle both residual certificates for a candidate pair."""
    scale = matrix_scale(A) if scale is None else scale
    rp = res_pair(A, lam, v)
    rm = res_min(A, lam)
    return Certificate(res_pair=rp, res_min=rm, res_min_rel=rm / scale, scale=scale)


def _default_rank_tol(n: int) -> float:
    return 4 * n * np.finfo(float).eps


def nullity(A: QMatrix, tol: float | None = None) -> int:
    """Kernel dimension of A over H, read off the real embedding.

    Counts singular values of real_embed(A) below tol * sigma_max; the count
    must be a multiple of 4 (the embedding replicates every kernel direction
    four times), otherwise RankDetectionError is raised.
    """
    if tol is not None and tol <= 0:
        raise ValueError("tol must be positive")
    tol = _default_rank_tol(A.n) if tol is None else tol
    s = scipy.linalg.svdvals(real_embed(A))
    if s[0] == 0.0:
        return A.n
    count = int((s < tol * s[0]).sum())
    if count % 4 != 0:
        raise RankDetectionError(
            f"{count} small singular values is not a multiple of 4; "
            "the rank tolerance probably sits inside a singular-value gap"
        )
    return count // 4


def kernel_basis(A: QMatrix, tol: float | None = None) -> list[QVector]:
    """Orthonormal quaternion basis of ker(A) (right inner product).

    Returns nullity(A) unit vectors; each satisfies ||A v|| at the scale of
    the rank tolerance.
    """
    m = nullity(A, tol)
    if m == 0:
        return []
    _, _, vt = np.linalg.svd(real_embed(A))
    candidates = [rvec_inv(row) for row in vt[vt.shape[0] - 4 * m :]]
    basis: list[QVector] = []
    while len(basis) < m:
        # orthogonalize candidates against the chosen quaternionic lines and
        # pick the one with the largest remainder
        best, best_norm = None, -1.0
        for cand in candidates:
            v = cand
            for b in basis:
                v = v - b.right_scale(b.inner(v))
            nrm = v.norm()
            if nrm > best_norm:
                best, best_norm = v, nrm
        basis.append(best.normalized())
    return basis


def det_logmag(A: QMatrix, lam) -> tuple[int, float]:
    """Determinant of real_embed(A - lam I) as (sign, log magnitude).

    The log form avoids overflow: the determinant is a polynomial of total
    degree up to 4n in the components of lam.  The sign is 0 (with -inf
    magnitude) when a pivot vanishes.
    """
    S = shifted_real_embed(A, as_quaternion(lam))
    sign, logmag = np.linalg.slogdet(S)
    return int(sign), float(logmag)
