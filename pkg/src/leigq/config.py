"""Dataclass configurations shared across the solver stages."""

from __future__ import annotations

from dataclasses import dataclass, field

__all__ = ["SolveConfig", "RefineConfig", "SphereConfig"]


@dataclass(frozen=True)
class SolveConfig:
    """Knobs for the Newton core and the multi-start driver.

    ``k`` is the requested number of distinct eigenpairs (None means n, the
    matrix size), ``max_trials`` defaults to 20*k.  Acceptance and duplicate
    thresholds are interpreted in R^4; ``accept_tol_rel`` is relative to the
    matrix scale s(A) = max(1, ||A||_2).
    """

    k: int | None = None
    seed: int = 0
    accept_tol_rel: float = 1e-10
    dedup_tol: float = 1e-5
    dedup_scaled: bool = False
    max_trials: int | None = None
    # Newton iteration
    eps_abs: float = 1e-14
    eps_rel: float = 1e-12
    max_iters: int = 50
    max_damping_halvings: int = 20
    stall_factor: float = 0.9
    stall_window: int = 5
    pivot_switch_threshold: float = 1e-2
    # shortcuts
    triangular_shortcut: bool = True
    singular_prefill: bool = True
    sphere_trigger: float = 3.0
    rank_tol: float | None = None

    def __post_init__(self):
        if self.k is not None and self.k < 1:
            raise ValueError("k must be at least 1")
        for name in ("accept_tol_rel", "dedup_tol", "eps_abs", "eps_rel"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")

    def resolved(self, n: int) -> tuple[int, int]:
        """Effective (k, max_trials) for an n x n matrix."""
        k = self.k if self.k is not None else n
        trials = self.max_trials if self.max_trials is not None else 20 * k
        if trials < k:
            raise ValueError("max_trials must be at least k")
        return k, trials


@dataclass(frozen=True)
class RefineConfig:
    """Two-stage polishing parameters.

    Stage 1 samples random perturbations at ``radii`` (times 1 + |lambda0|)
    and then runs a simplex descent in R^4; stage 2 runs a few tightened
    Newton correction steps.
    """

    radii: tuple[float, ...] = (1e-2, 1e-4, 1e-6)
    samples_per_radius: int = 8
    simplex_max_evals: int = 200
    simplex_diameter_tol: float = 1e-14
    polish_max_steps: int = 10
    seed: int = 0

    def __post_init__(self):
        if not self.radii or any(r <= 0 for r in self.radii):
            raise ValueError("radii must be positive")
        if list(self.radii) != sorted(self.radii, reverse=True):
            raise ValueError("radii must be decreasing")
        if self.samples_per_radius < 1 or self.simplex_max_evals < 1 or self.polish_max_steps < 1:
            raise ValueError("counts must be at least 1")


@dataclass(frozen=True)
class SphereConfig:
    """Sphere-detection parameters.

    A 2-sphere in an affine 3-space of R^4 is declared only with at least
    ``min_inliers`` supporting samples; inlier classification uses plane and
    radial tolerances of ``inlier_tol_factor * (1 + radius)``.
    """

    min_inliers: int = 8
    inlier_tol_factor: float = 1e-6
    cluster_tol: float = 1e-2
    validation_tol: float = 1e-8
    refine: RefineConfig = field(default_factory=RefineConfig)
