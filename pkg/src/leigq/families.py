"""Random matrix family generators for the benchmark harness.

Four families: dense i.i.d. Gaussian coefficients, Hermitian (A + A^*)/2,
upper triangular with random diagonal, and sparse with a fixed entry keep
probability.  Generation is bit-exact reproducible from the spec's seed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .quat import QMatrix

__all__ = ["FAMILIES", "FamilySpec", "gen_matrix"]

FAMILIES = ("dense", "hermitian", "triangular", "sparse")


@dataclass(frozen=True)
class FamilySpec:
    """One benchmark matrix: family name, size, seed and (for sparse) density."""

    family: str
    n: int
    seed: int
    density: float = 0.1

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}, expected one of {FAMILIES}")
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if not 0.0 < self.density <= 1.0:
            raise ValueError("density must be in (0, 1]")


def gen_matrix(spec: FamilySpec) -> QMatrix:
    """Deterministically generate the matrix described by spec."""
    rng = np.random.default_rng(spec.seed)
    n = spec.n
    coeffs = rng.standard_normal((n, n, 4))
    if spec.family == "dense":
        pass
    elif spec.family == "hermitian":
        star = coeffs.transpose(1, 0, 2) * np.array([1.0, -1.0, -1.0, -1.0])
        coeffs = (coeffs + star) / 2.0
    elif spec.family == "triangular":
        r, s = np.tril_indices(n, -1)
        coeffs[r, s, :] = 0.0
    elif spec.family == "sparse":
        keep = rng.random((n, n)) < spec.density
        coeffs = coeffs * keep[:, :, None]
    return QMatrix(coeffs)
