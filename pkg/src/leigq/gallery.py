"""A small zoo of quaternion matrices with known or interesting left spectra.

The 2x2 matrices are the classical examples of Huang & So (2001), where the
left spectrum is known in closed form; the 3x3 ones come from Macias-Virgos
& Pereira-Saez (2014), and the circulant from Pan & Ng (2024).  The remaining
matrices exhibit non-generic behavior: more isolated left eigenvalues than
the dimension, left-spectrum deficiency, and a spherical component mixed
with isolated points.  Expected values are recorded next to each builder for
use as regression targets.
"""

from __future__ import annotations

import math

from .quat import I, J, K, QMatrix, Quaternion

__all__ = [
    "huang_so_real_pair",
    "huang_so_nonreal_pair",
    "huang_so_sphere",
    "mvps_19",
    "mvps_38",
    "mvps_52",
    "mvps_55",
    "mvps_56",
    "circulant_4x4",
    "five_eigenvalue_3x3",
    "deficient_4x4",
    "sphere_mixed_4x4",
]


def huang_so_real_pair() -> QMatrix:
    """[[0, 1+i], [1-i, 0]]; left spectrum {+sqrt(2), -sqrt(2)}."""
    return QMatrix.from_entries([[0, 1 + I], [1 - I, 0]])


HUANG_SO_REAL_PAIR_SPECTRUM = (Quaternion(math.sqrt(2)), Quaternion(-math.sqrt(2)))


def huang_so_nonreal_pair() -> QMatrix:
    """[[0, i], [j, 1]]; left spectrum {(1+i+j-k)/2, (1-i-j-k)/2}."""
    return QMatrix.from_entries([[0, I], [J, 1]])


HUANG_SO_NONREAL_PAIR_SPECTRUM = (
    Quaternion(0.5, 0.5, 0.5, -0.5),
    Quaternion(0.5, -0.5, -0.5, -0.5),
)


def huang_so_sphere() -> QMatrix:
    """[[2, i], [-i, 2]]; the left spectrum is the 2-sphere
    {2 - b - d j + c k : b^2 + c^2 + d^2 = 1} (center 2, radius 1)."""
    return QMatrix.from_entries([[2, I], [-I, 2]])


def mvps_19() -> QMatrix:
    """Lower triangular with left spectrum {i, j, k}."""
    return QMatrix.from_entries(
        [
            [I, 0, 0],
            [K, J, 0],
            [-3 * I, 2 * K, K],
        ]
    )


MVPS_19_SPECTRUM = (I, J, K)


def mvps_38() -> QMatrix:
    """3x3 example whose pole -i is not a left eigenvalue."""
    return QMatrix.from_entries(
        [
            [0, I, 1],
            [3 * I - K, 0, 1],
            [K, -1 + J + K, 0],
        ]
    )


def mvps_52() -> QMatrix:
    """Singular 3x3 example: 0 is a left eigenvalue (plus two others)."""
    return QMatrix.from_entries(
        [
            [J, 1, 0],
            [2 * I, -K, 1],
            [2 - I - 2 * J, -1 - J + K, -I - K],
        ]
    )


def mvps_55() -> QMatrix:
    """Left spectrum {k, 0, -i-j}, all simple gauged pairs."""
    return QMatrix.from_entries(
        [
            [K, 0, 0],
            [3 * I - J, -I, I],
            [1 - 2 * K, J, -J],
        ]
    )


MVPS_55_SPECTRUM = (K, Quaternion(), -I - J)


def mvps_56() -> QMatrix:
    """Left-spectrum deficient 3x3: only {0, -i-j}, the latter extremely degenerate."""
    return QMatrix.from_entries(
        [
            [-I - J, 0, 0],
            [K, -I, I],
            [1 - I, J, -J],
        ]
    )


MVPS_56_SPECTRUM = (Quaternion(), -I - J)


def circulant_4x4() -> QMatrix:
    """Dense quaternion circulant matrix (Pan & Ng 2024, Example 1)."""
    row = [
        Quaternion(-2, 1, 1, 4),
        Quaternion(2, 4, 1, 1),
        Quaternion(1, 3, 2, 2),
        Quaternion(-1, 2, 2, 3),
    ]
    return QMatrix.from_entries([row[-r:] + row[:-r] for r in range(4)])


# left eigenvalues of circulant_4x4 rounded to two significant digits per component
CIRCULANT_4X4_SPECTRUM = (
    Quaternion(-1.5, -0.43, 1.5, 4.6),
    Quaternion(-2.0, -2.0, 0.0, 2.0),
    Quaternion(-2.9, 0.85, -1.2, 5.1),
    Quaternion(-5.2, 1.5, -0.25, 1.9),
)


def five_eigenvalue_3x3() -> QMatrix:
    """Integer 3x3 matrix with five distinct isolated left eigenvalues."""
    return QMatrix.from_entries(
        [
            [Quaternion(-7, 6, -6, -7), Quaternion(3, -7, 11, -2), Quaternion(11, -9, 0, 0)],
            [Quaternion(6, 1, -5, 3), Quaternion(9, 7, -6, -10), Quaternion(-5, 15, 14, -1)],
            [Quaternion(16, 6, 14, 11), Quaternion(20, -3, 4, 6), Quaternion(-5, 19, 1, -3)],
        ]
    )


FIVE_EIGENVALUE_3X3_SPECTRUM = (
    Quaternion(-22.877487, 15.850469, -17.069787, -11.791606),
    Quaternion(11.833188, 9.698189, -13.382634, -19.325731),
    Quaternion(13.399540, 15.934883, -12.000914, -0.414566),
    Quaternion(14.897483, 16.835221, -11.965564, -2.863713),
    Quaternion(21.109974, 21.579378, 5.435201, -2.138868),
)

FIVE_EIGENVALUE_3X3_MIN_SEPARATION = 3.00899


def deficient_4x4() -> QMatrix:
    """4x4 matrix with only two isolated left eigenvalues."""
    return QMatrix.from_entries(
        [
            [Quaternion(1, 3, 0, 1), Quaternion(8, 1, 1, -4), Quaternion(-8, 0, 0, 4), Quaternion(-7, -2, 4, 1)],
            [Quaternion(0, -1, -1, 0), Quaternion(1, 1, -2, 1), Quaternion(0, 0, 0, 0), Quaternion(0, 1, 1, 0)],
            [Quaternion(0, -1, -1, 0), Quaternion(-1, 0, -6, 3), Quaternion(2, 1, 4, -2), Quaternion(2, 1, 1, -1)],
            [Quaternion(0, 0, 0, 0), Quaternion(8, 0, 0, -4), Quaternion(-8, 0, 0, 4), Quaternion(-6, 1, 4, 2)],
        ]
    )


DEFICIENT_4X4_SPECTRUM = (Quaternion(1, 2, -1, 1), Quaternion(-2, 1, 4, 0))


def sphere_mixed_4x4() -> QMatrix:
    """4x4 matrix whose left spectrum contains a 2-sphere plus two isolated points.

    The sphere has center 10 + 4i - 6j + 4k and radius 8 inside the affine
    3-space {j-coefficient = -6}; the isolated eigenvalues sit near
    -6 + 6i - 4j + 8k and -10 + 8i - 8j + 2k.
    """
    return QMatrix.from_entries(
        [
            [Quaternion(2, 5, -5, 6), Quaternion(12, -3, -5, 4), Quaternion(8, -1, -1, -2), Quaternion(20, -4, 2, 2)],
            [Quaternion(0, 0, 4, 0), Quaternion(10, 4, -2, 4), Quaternion(0, 0, 4, 0), Quaternion(0, 0, 8, 0)],
            [Quaternion(8, -1, 3, -2), Quaternion(28, -5, -3, 0), Quaternion(2, 5, -1, 6), Quaternion(20, -4, 10, 2)],
            [Quaternion(0, 0, -4, 0), Quaternion(-20, 4, -6, -2), Quaternion(0, 0, -4, 0), Quaternion(-10, 8, -16, 2)],
        ]
    )


SPHERE_MIXED_4X4_CENTER = Quaternion(10, 4, -6, 4)
SPHERE_MIXED_4X4_RADIUS = 8.0
SPHERE_MIXED_4X4_PLANE_J = -6.0
SPHERE_MIXED_4X4_ISOLATED = (Quaternion(-6, 6, -4, 8), Quaternion(-10, 8, -8, 2))
