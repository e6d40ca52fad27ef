"""Detection of spherical components of the left spectrum from candidate samples.

A spherical component is a 2-sphere inside an affine 3-space of R^4.  Given
certified eigenvalue samples, the pipeline refines them, fits the supporting
plane by total least squares and the sphere by a linear algebraic fit in the
projected coordinates, trims outliers by a median-absolute-deviation rule,
and validates inliers by re-certifying their projections onto the fitted
sphere.  Points not supporting any sphere are reported as isolated.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .certificates import matrix_scale, res_min
from .config import SphereConfig
from .multistart import Eigenpair
from .quat import QMatrix, Quaternion

__all__ = ["SphereModel", "fit_sphere", "detect_components"]


@dataclass
class SphereModel:
    """A fitted 2-sphere: center, radius and the supporting affine 3-space.

    The plane is {p in R^4 : normal . p = offset} with |normal| = 1 and the
    center on the plane.  ``inliers`` indexes the points passed to the fit
    (or the candidate list in detect_components); ``on_sphere_dev`` is the
    per-inlier geometric deviation (max of plane and radial residuals).
    """

    center: Quaternion
    radius: float
    normal: np.ndarray
    offset: float
    inliers: list[int]
    on_sphere_dev: list[float]
    points: list[Quaternion] = field(default_factory=list)
    inlier_res_min: list[float] = field(default_factory=list)
    inlier_fraction: float = float("nan")
    max_dev: float = float("nan")


def _plane_fit(P: np.ndarray):
    """Total-least-squares affine 3-space: centroid + smallest-variance normal."""
    centroid = P.mean(axis=0)
    _, s, vt = np.linalg.svd(P - centroid, full_matrices=True)
    if s[2] <= 1e-10 * max(s[0], 1e-300):
        return None  # points spread over at most 2 dimensions
    normal = vt[-1]
    # deterministic orientation: largest-magnitude component positive
    lead = np.argmax(np.abs(normal))
    if normal[lead] < 0:
        normal = -normal
    basis = vt[:3].T
    return normal, float(normal @ centroid), centroid, basis


def _fit_once(P: np.ndarray):
    """Plane + in-plane algebraic sphere fit; None when degenerate."""
    plane = _plane_fit(P)
    if plane is None:
        return None
    normal, offset, centroid, basis = plane
    Y = (P - centroid) @ basis
    M = np.hstack([2.0 * Y, np.ones((len(Y), 1))])
    rhs = (Y**2).sum(axis=1)
    sol, _, rank, _ = np.linalg.lstsq(M, rhs, rcond=None)
    if rank < 4:
        return None
    c3, t = sol[:3], sol[3]
    r_sq = t + c3 @ c3
    if r_sq <= 0.0:
        return None
    radius = float(np.sqrt(r_sq))
    center = centroid + basis @ c3
    return center, radius, normal, offset


def _deviations(P: np.ndarray, center: np.ndarray, radius: float, normal: np.ndarray, offset: float):
    plane_res = np.abs(P @ normal - offset)
    radial_res = np.abs(np.linalg.norm(P - center, axis=1) - radius)
    return np.maximum(plane_res, radial_res)


def fit_sphere(points, *, min_points: int = 5, max_rounds: int = 50, inlier_tol_factor: float = 1e-6):
    """Robust sphere fit of quaternion points in R^4.

    Alternates a plane + sphere fit with trimming of points whose deviation
    exceeds three times the median deviation, until the active set is stable.
    Returns None for degenerate data (spread of fewer than 3 dimensions,
    vanishing radius, or too few surviving points); requires at least 5
    points.
    """
    P_all = np.array([q.to_array() for q in points], dtype=float)
    if len(P_all) < min_points:
        raise ValueError(f"need at least {min_points} points, got {len(P_all)}")

    active = np.arange(len(P_all))
    model = None
    for _ in range(max_rounds):
        model = _fit_once(P_all[active])
        if model is None:
            return None
        center, radius, normal, offset = model
        dev = _deviations(P_all[active], center, radius, normal, offset)
        thr = max(3.0 * float(np.median(dev)), 1e-12 * (1.0 + radius))
        keep = dev <= thr
        if keep.all():
            break
        if keep.sum() < min_points:
            return None
        active = active[keep]

    center, radius, normal, offset = model
    if radius <= 1e-9:
        return None
    dev_all = _deviations(P_all, center, radius, normal, offset)
    tol = inlier_tol_factor * (1.0 + radius)
    inliers = [int(i) for i in np.nonzero(dev_all <= tol)[0]]
    devs = [float(dev_all[i]) for i in inliers]
    return SphereModel(
        center=Quaternion.from_array(center),
        radius=radius,
        normal=normal,
        offset=offset,
        inliers=inliers,
        on_sphere_dev=devs,
        inlier_fraction=len(inliers) / len(P_all),
        max_dev=max(devs) if devs else float("nan"),
    )


def _ransac_fit(points, min_inliers: int, inlier_tol_factor: float, rounds: int = 200):
    """Consensus fallback: fit minimal subsets, keep the largest coarse consensus."""
    P = np.array([q.to_array() for q in points], dtype=float)
    best_count, best_keep = 0, None
    for t in range(rounds):
        rng = np.random.default_rng([1905, t])
        idx = rng.choice(len(P), size=min(6, len(P)), replace=False)
        model = _fit_once(P[idx])
        if model is None:
            continue
        center, radius, normal, offset = model
        dev = _deviations(P, center, radius, normal, offset)
        keep = dev <= 1e-3 * (1.0 + radius)
        if keep.sum() > best_count:
            best_count, best_keep = int(keep.sum()), keep
    if best_keep is None or best_count < min_inliers:
        return None
    subset = [points[i] for i in np.nonzero(best_keep)[0]]
    refined = fit_sphere(subset, inlier_tol_factor=inlier_tol_factor)
    if refined is None:
        return None
    # re-express inliers against the full point list
    dev_all = _deviations(
        P, refined.center.to_array(), refined.radius, refined.normal, refined.offset
    )
    tol = inlier_tol_factor * (1.0 + refined.radius)
    refined.inliers = [int(i) for i in np.nonzero(dev_all <= tol)[0]]
    refined.on_sphere_dev = [float(dev_all[i]) for i in refined.inliers]
    refined.inlier_fraction = len(refined.inliers) / len(P)
    refined.max_dev = max(refined.on_sphere_dev) if refined.on_sphere_dev else float("nan")
    return refined


def _project_to_sphere(model: SphereModel, q: Quaternion) -> Quaternion | None:
    p = q.to_array()
    p_plane = p - (p @ model.normal - model.offset) * model.normal
    u = p_plane - model.center.to_array()
    nrm = np.linalg.norm(u)
    if nrm == 0.0:
        return None
    return Quaternion.from_array(model.center.to_array() + model.radius * u / nrm)


def _cluster_indices(points: list[Quaternion], tol: float) -> list[list[int]]:
    clusters: list[list[int]] = []
    for idx, q in enumerate(points):
        for members in clusters:
            if q.dist(points[members[0]]) <= tol:
                members.append(idx)
                break
        else:
            clusters.append([idx])
    return clusters


def detect_components(
    A: QMatrix, candidates: list[Eigenpair], cfg: SphereConfig | None = None
) -> tuple[list[SphereModel], list[Eigenpair]]:
    """Partition certified candidates into sphere inliers and isolated points.

    Candidates are refined first (two-stage), coarsely clustered to collapse
    duplicates, and then fitted; every reported inlier's projection onto the
    fitted sphere is re-certified by the vector-free residual.  Returns the
    fitted sphere models and the refined isolated eigenpairs.
    """
    from .refine import refine_eigenvalue  # local import; refine depends on multistart types

    cfg = cfg or SphereConfig()
    scale = matrix_scale(A)
    refined = [refine_eigenvalue(A, p.lam, cfg.refine) for p in candidates]
    pts = [p.lam for p in refined]

    clusters = _cluster_indices(pts, cfg.cluster_tol)
    rep_of_cluster = []
    for members in clusters:
        best = min(members, key=lambda i: refined[i].certificate.res_min)
        rep_of_cluster.append(best)

    models: list[SphereModel] = []
    remaining = list(rep_of_cluster)
    while len(remaining) >= cfg.min_inliers:
        sample_pts = [pts[i] for i in remaining]
        model = fit_sphere(sample_pts, inlier_tol_factor=cfg.inlier_tol_factor)
        if model is None or len(model.inliers) < cfg.min_inliers:
            model = _ransac_fit(sample_pts, cfg.min_inliers, cfg.inlier_tol_factor)
        if model is None or len(model.inliers) < cfg.min_inliers:
            break

        # validate: the projection of each inlier must certify as on-spectrum
        validated = []
        for pos in model.inliers:
            cand_idx = remaining[pos]
            proj = _project_to_sphere(model, pts[cand_idx])
            if proj is None:
                continue
            if res_min(A, proj) <= cfg.validation_tol * scale:
                validated.append(cand_idx)
        if len(validated) < cfg.min_inliers:
            break

        # report inliers over the full candidate list, not only cluster reps
        tol = cfg.inlier_tol_factor * (1.0 + model.radius)
        P = np.array([q.to_array() for q in pts])
        dev_all = _deviations(P, model.center.to_array(), model.radius, model.normal, model.offset)
        inlier_reps = set(validated)
        all_inliers: list[int] = []
        for c_i, rep in enumerate(rep_of_cluster):
            if rep in inlier_reps:
                all_inliers.extend(clusters[c_i])
        all_inliers.sort()
        model.inliers = all_inliers
        model.on_sphere_dev = [float(dev_all[i]) for i in all_inliers]
        model.points = [pts[i] for i in all_inliers]
        model.inlier_res_min = [refined[i].certificate.res_min for i in all_inliers]
        model.inlier_fraction = len(all_inliers) / len(pts)
        model.max_dev = max(model.on_sphere_dev) if model.on_sphere_dev else float("nan")
        models.append(model)
        remaining = [i for i in remaining if i not in inlier_reps]

    isolated = [refined[i] for i in remaining]
    return models, isolated
