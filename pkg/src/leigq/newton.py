"""Gauged Newton iteration for left eigenpairs A x = lambda x.

The right-scaling freedom of eigenvectors is removed by a four-constraint
gauge: ||x|| = 1, the pivot entry x_j is real, and the branch x_j > 0.  Each
correction solves one square real system of size 4n + 4,

    [ real_embed(A - lam I)   -coupling_matrix(x) ] [ rvec(dx) ]   [ rvec(lam x - A x) ]
    [ constraint_matrix(x,j)            0         ] [ rvec(dl) ] = [         0         ]

followed by a damped update and regauging.  Near isolated simple pairs the
iteration converges quadratically; on continua (spherical components) the
system matrix is singular at the solution and the iteration degrades to a
defect-reduction scheme.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .certificates import matrix_scale
from .config import SolveConfig
from .embed import (
    constraint_matrix,
    coupling_matrix,
    real_embed,
    rvec,
    rvec_inv,
    shifted_real_embed,
)
from .quat import QMatrix, Quaternion, QVector, as_quaternion

__all__ = [
    "GaugeError",
    "NewtonResult",
    "select_pivot",
    "regauge",
    "init_lambda",
    "newton_system",
    "newton_solve",
    "gauged_jacobian_rank",
    "pencil_newton_step",
]

# relative pivot threshold below which an LU factor is treated as singular
_PIVOT_RTOL = 1e-13


class GaugeError(ValueError):
    """The gauge cannot be fixed (pivot entry numerically zero, or degenerate pencil)."""


@dataclass
class NewtonResult:
    """Outcome of one Newton run.

    ``history`` holds the defect norms of the visited iterates;
    ``reason`` is one of converged/max_iters/singular/stalled.
    """

    lam: Quaternion
    x: QVector
    iterations: int
    converged: bool
    final_defect: float
    history: list[float] = field(default_factory=list)
    reason: str = ""
    pivot: int = 0


def select_pivot(x: QVector) -> int:
    """Index of a maximal-modulus entry; ties break to the smallest index."""
    mags = x.entry_moduli()
    if mags.max() == 0.0:
        raise ValueError("zero vector has no pivot")
    return int(np.argmax(mags))


def regauge(x: QVector, pivot: int) -> QVector:
    """Right-scale x so that ||x|| = 1 and the pivot entry is real positive.

    Eigenpairs survive: if A x = lam x then the regauged vector is still an
    eigenvector for the same lam.
    """
    xj = x[pivot]
    m = abs(xj)
    if m <= 1e-14 * x.norm():
        raise GaugeError(f"pivot entry {pivot} is numerically zero")
    q1 = xj.conj() / m  # unit quaternion with x_j * q1 = |x_j| > 0
    y = x.right_scale(q1)
    return y / y.norm()


def _defect(A: QMatrix, lam: Quaternion, x: QVector) -> QVector:
    return A.matvec(x) - x.left_scale(lam)


def init_lambda(A: QMatrix, x: QVector) -> Quaternion:
    """Least-squares eigenvalue seed: the minimizer of ||A x - lam x|| over lam in H.

    Uses the normal equations of the coupling matrix, whose Gram matrix is
    ||x||^2 I_4, so the solve is a single 4-vector expression.
    """
    n2 = x.norm() ** 2
    if n2 == 0.0:
        raise ValueError("cannot seed an eigenvalue from the zero vector")
    w = coupling_matrix(x).T @ rvec(A.matvec(x)) / n2
    return Quaternion.from_array(w)


def _assemble(S: np.ndarray, x: QVector, pivot: int, defect: QVector) -> tuple[np.ndarray, np.ndarray]:
    n4 = S.shape[0]
    J = np.zeros((n4 + 4, n4 + 4))
    J[:n4, :n4] = S
    J[:n4, n4:] = -coupling_matrix(x)
    J[n4:, :n4] = constraint_matrix(x, pivot)
    rhs = np.zeros(n4 + 4)
    rhs[:n4] = -rvec(defect)
    return J, rhs


def newton_system(A: QMatrix, lam, x: QVector, pivot: int) -> tuple[np.ndarray, np.ndarray]:
    """The (4n+4) x (4n+4) correction system and its right-hand side at (lam, x)."""
    lam = as_quaternion(lam)
    return _assemble(shifted_real_embed(A, lam), x, pivot, _defect(A, lam, x))


def _lu_solve_guarded(J: np.ndarray, rhs: np.ndarray) -> np.ndarray | None:
    """LU solve with partial pivoting; None when a pivot is negligibly small."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        lu, piv = scipy.linalg.lu_factor(J, check_finite=False)
    pivots = np.abs(np.diag(lu))
    if pivots.min() < _PIVOT_RTOL * np.linalg.norm(J, np.inf):
        return None
    return scipy.linalg.lu_solve((lu, piv), rhs, check_finite=False)


def newton_solve(
    A: QMatrix,
    lam0,
    x0: QVector,
    cfg: SolveConfig | None = None,
    *,
    _rho: np.ndarray | None = None,
    _scale: float | None = None,
) -> NewtonResult:
    """Damped, regauged Newton iteration from (lam0, x0).

    Stops when ||A x - lam x|| <= eps_abs + eps_rel * s(A).  The residual is
    checked before each correction, so with max_iters = 0 the result is
    always nonconverged.  Nonconvergence (budget, singular correction system,
    or stalled damping) is reported in the result, not raised.
    """
    cfg = cfg or SolveConfig()
    lam = as_quaternion(lam0)
    rho = real_embed(A) if _rho is None else _rho
    scale = matrix_scale(A, rho=rho) if _scale is None else _scale
    tol = cfg.eps_abs + cfg.eps_rel * scale

    pivot = select_pivot(x0)
    x = regauge(x0, pivot)
    d = _defect(A, lam, x)
    dn = d.norm()

    history: list[float] = []
    ratios: list[float] = []
    steps = 0
    converged = False
    reason = "max_iters"

    for _ in range(cfg.max_iters):
        history.append(dn)
        if dn <= tol:
            converged, reason = True, "converged"
            break
        if len(ratios) >= cfg.stall_window and all(
            r > cfg.stall_factor for r in ratios[-cfg.stall_window :]
        ):
            reason = "stalled"
            break

        S = shifted_real_embed(A, lam, rho=rho)
        J, rhs = _assemble(S, x, pivot, d)
        sol = _lu_solve_guarded(J, rhs)
        if sol is None:
            reason = "singular"
            break
        dx = rvec_inv(sol[: 4 * A.n])
        dl = Quaternion.from_array(sol[4 * A.n :])

        # damped update: halve the step until the defect norm decreases
        alpha = 1.0
        updated = False
        for _ in range(cfg.max_damping_halvings + 1):
            x_raw = x + dx * alpha
            try:
                p_new = pivot
                x_new = regauge(x_raw, p_new)
            except (GaugeError, ValueError):
                try:
                    p_new = select_pivot(x_raw)
                    x_new = regauge(x_raw, p_new)
                except (GaugeError, ValueError):
                    alpha *= 0.5
                    continue
            lam_new = lam + dl * alpha
            d_new = _defect(A, lam_new, x_new)
            dn_new = d_new.norm()
            if dn_new < dn:
                updated = True
                break
            alpha *= 0.5
        if not updated:
            reason = "stalled"
            break

        ratios.append(dn_new / dn)
        x, lam, d, dn, pivot = x_new, lam_new, d_new, dn_new, p_new
        steps += 1

        # keep the gauge well conditioned: re-pivot when the entry shrinks
        if abs(x[pivot]) < cfg.pivot_switch_threshold:
            pivot = select_pivot(x)
            x = regauge(x, pivot)
            d = _defect(A, lam, x)
            dn = d.norm()
    else:
        history.append(dn)
        if cfg.max_iters > 0 and dn <= tol:
            converged, reason = True, "converged"

    return NewtonResult(
        lam=lam,
        x=x,
        iterations=steps,
        converged=converged,
        final_defect=dn,
        history=history,
        reason=reason,
        pivot=pivot,
    )


def gauged_jacobian_rank(
    A: QMatrix, lam, x: QVector, pivot: int | None = None, tol: float | None = None
) -> tuple[int, float]:
    """Numerical rank and smallest singular value of the gauged Jacobian.

    Full rank (4n + 4) certifies a simple gauged pair; a deficiency signals
    degeneracy or a continuum of eigenvalues through (lam, x).
    """
    pivot = select_pivot(x) if pivot is None else pivot
    J, _ = newton_system(A, lam, x, pivot)
    s = scipy.linalg.svdvals(J)
    cutoff = (max(J.shape) * np.finfo(float).eps if tol is None else tol) * s[0]
    return int((s > cutoff).sum()), float(s[-1])


def pencil_newton_step(
    M: QMatrix, E: QMatrix, lam, z: QVector, pivot: int
) -> tuple[Quaternion, QVector]:
    """One correction for the generalized pencil (M - lam E) z = 0.

    Identical to the standard system except that the eigenvalue increment
    couples through E z instead of z; the gauge constraints stay on z.
    E = I reduces exactly to the ordinary Newton step.
    """
    lam = as_quaternion(lam)
    Ez = E.matvec(z)
    if Ez.norm() <= 1e-14 * np.linalg.norm(E.coeffs) * z.norm():
        raise GaugeError("degenerate pencil: E z is numerically zero")
    P = M - E.left_scale(lam)
    n4 = 4 * M.n
    J = np.zeros((n4 + 4, n4 + 4))
    J[:n4, :n4] = real_embed(P)
    J[:n4, n4:] = -coupling_matrix(Ez)
    J[n4:, :n4] = constraint_matrix(z, pivot)
    rhs = np.zeros(n4 + 4)
    rhs[:n4] = -rvec(P.matvec(z))
    sol = _lu_solve_guarded(J, rhs)
    if sol is None:
        raise GaugeError("singular pencil correction system")
    return Quaternion.from_array(sol[n4:]), rvec_inv(sol[:n4])
