"""Quaternion scalars, vectors and matrices with the right-module convention.

Coefficients are stored everywhere in the fixed order (1, i, j, k).  Vectors
in H^n form a right H-module: scalars multiply vectors on the right, matrices
act on the left, so ``A @ (x * q) == (A @ x) * q``.  All values are immutable
and every operation returns a new object, so everything here is safe to share
between threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Quaternion",
    "QVector",
    "QMatrix",
    "ONE",
    "I",
    "J",
    "K",
    "ZERO",
    "qmul",
    "qinv",
    "as_quaternion",
]


def _mul4(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Hamilton product of coefficient arrays with trailing axis 4 (broadcasts)."""
    pa, pb, pc, pd = np.moveaxis(p, -1, 0)
    qa, qb, qc, qd = np.moveaxis(q, -1, 0)
    return np.stack(
        (
            pa * qa - pb * qb - pc * qc - pd * qd,
            pa * qb + pb * qa + pc * qd - pd * qc,
            pa * qc - pb * qd + pc * qa + pd * qb,
            pa * qd + pb * qc - pc * qb + pd * qa,
        ),
        axis=-1,
    )


@dataclass(frozen=True)
class Quaternion:
    """A real quaternion a + b*i + c*j + d*k."""

    a: float = 0.0
    b: float = 0.0
    c: float = 0.0
    d: float = 0.0

    @staticmethod
    def from_array(arr) -> "Quaternion":
        a, b, c, d = np.asarray(arr, dtype=float).reshape(4)
        return Quaternion(float(a), float(b), float(c), float(d))

    def to_array(self) -> np.ndarray:
        return np.array([self.a, self.b, self.c, self.d])

    @property
    def real(self) -> float:
        return self.a

    @property
    def imag(self) -> tuple[float, float, float]:
        return (self.b, self.c, self.d)

    def conj(self) -> "Quaternion":
        return Quaternion(self.a, -self.b, -self.c, -self.d)

    def norm_sq(self) -> float:
        return self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d

    def __abs__(self) -> float:
        return math.sqrt(self.norm_sq())

    def inv(self) -> "Quaternion":
        n2 = self.norm_sq()
        if n2 == 0.0:
            raise ZeroDivisionError("zero quaternion has no inverse")
        return Quaternion(self.a / n2, -self.b / n2, -self.c / n2, -self.d / n2)

    def dist(self, other: "Quaternion") -> float:
        """Euclidean distance in R^4."""
        return math.sqrt(
            (self.a - other.a) ** 2
            + (self.b - other.b) ** 2
            + (self.c - other.c) ** 2
            + (self.d - other.d) ** 2
        )

    def isclose(self, other: "Quaternion", tol: float = 1e-12) -> bool:
        return self.dist(other) <= tol

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = as_quaternion(other)
        if other is None:
            return NotImplemented
        return Quaternion(self.a + other.a, self.b + other.b, self.c + other.c, self.d + other.d)

    __radd__ = __add__

    def __sub__(self, other):
        other = as_quaternion(other)
        if other is None:
            return NotImplemented
        return Quaternion(self.a - other.a, self.b - other.b, self.c - other.c, self.d - other.d)

    def __rsub__(self, other):
        other = as_quaternion(other)
        if other is None:
            return NotImplemented
        return other - self

    def __neg__(self):
        return Quaternion(-self.a, -self.b, -self.c, -self.d)

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return Quaternion(self.a * other, self.b * other, self.c * other, self.d * other)
        if isinstance(other, Quaternion):
            return Quaternion.from_array(_mul4(self.to_array(), other.to_array()))
        return NotImplemented

    def __rmul__(self, other):
        # only reached for real scalars, which are central in H
        if isinstance(other, (int, float)):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, float)):
            return Quaternion(self.a / other, self.b / other, self.c / other, self.d / other)
        return NotImplemented

    def __str__(self) -> str:
        parts = []
        for coeff, unit in zip((self.a, self.b, self.c, self.d), ("", "i", "j", "k")):
            if coeff == 0.0:
                continue
            sign = "-" if coeff < 0 else ("+" if parts else "")
            mag = abs(coeff)
            if unit and mag == 1.0:
                parts.append(f"{sign}{unit}")
            else:
                parts.append(f"{sign}{mag:.6g}{unit}")
        return "".join(parts) if parts else "0"


ONE = Quaternion(1.0)
I = Quaternion(0.0, 1.0)
J = Quaternion(0.0, 0.0, 1.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)
ZERO = Quaternion()


def as_quaternion(value) -> Quaternion | None:
    """Coerce a real number, length-4 sequence or Quaternion; None if impossible."""
    if isinstance(value, Quaternion):
        return value
    if isinstance(value, (int, float, np.floating, np.integer)):
        return Quaternion(float(value))
    if isinstance(value, (tuple, list, np.ndarray)) and len(value) == 4:
        return Quaternion.from_array(value)
    return None


def qmul(p, q) -> Quaternion:
    """Hamilton product p*q (noncommutative)."""
    return as_quaternion(p) * as_quaternion(q)


def qinv(q) -> Quaternion:
    """Multiplicative inverse conj(q)/|q|^2; rejects q = 0."""
    return as_quaternion(q).inv()


class QVector:
    """Vector in H^n, stored as a read-only (n, 4) array of real coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        arr = np.array(coeffs, dtype=float)
        if arr.ndim != 2 or arr.shape[1] != 4:
            raise ValueError(f"expected an (n, 4) coefficient array, got shape {arr.shape}")
        arr.flags.writeable = False
        self.coeffs = arr

    @classmethod
    def from_entries(cls, entries) -> "QVector":
        rows = []
        for e in entries:
            q = as_quaternion(e)
            if q is None:
                raise TypeError(f"cannot interpret {e!r} as a quaternion")
            rows.append(q.to_array())
        return cls(np.array(rows).reshape(-1, 4))

    @classmethod
    def zeros(cls, n: int) -> "QVector":
        return cls(np.zeros((n, 4)))

    @classmethod
    def unit(cls, n: int, k: int) -> "QVector":
        arr = np.zeros((n, 4))
        arr[k, 0] = 1.0
        return cls(arr)

    @property
    def n(self) -> int:
        return self.coeffs.shape[0]

    def __len__(self) -> int:
        return self.n

    def __getitem__(self, k: int) -> Quaternion:
        return Quaternion.from_array(self.coeffs[k])

    def __iter__(self):
        for k in range(self.n):
            yield self[k]

    def norm(self) -> float:
        """Euclidean norm, sqrt(sum |x_k|^2)."""
        return float(np.linalg.norm(self.coeffs))

    def normalized(self) -> "QVector":
        nrm = self.norm()
        if nrm == 0.0:
            raise ValueError("cannot normalize the zero vector")
        return QVector(self.coeffs / nrm)

    def entry_moduli(self) -> np.ndarray:
        return np.linalg.norm(self.coeffs, axis=1)

    def right_scale(self, q: Quaternion) -> "QVector":
        """x * q with the scalar on the right of every entry."""
        return QVector(_mul4(self.coeffs, q.to_array()[None, :]))

    def left_scale(self, q: Quaternion) -> "QVector":
        """q * x with the scalar on the left of every entry (used for lambda*x)."""
        return QVector(_mul4(q.to_array()[None, :], self.coeffs))

    def inner(self, other: "QVector") -> Quaternion:
        """Right inner product <x, y> = x^* y = sum conj(x_k) y_k."""
        if other.n != self.n:
            raise ValueError("dimension mismatch in inner product")
        conj = self.coeffs * np.array([1.0, -1.0, -1.0, -1.0])
        return Quaternion.from_array(_mul4(conj, other.coeffs).sum(axis=0))

    def __add__(self, other: "QVector") -> "QVector":
        return QVector(self.coeffs + other.coeffs)

    def __sub__(self, other: "QVector") -> "QVector":
        return QVector(self.coeffs - other.coeffs)

    def __neg__(self) -> "QVector":
        return QVector(-self.coeffs)

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return QVector(self.coeffs * other)
        if isinstance(other, Quaternion):
            return self.right_scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float)):
            return QVector(self.coeffs * other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, float)):
            return QVector(self.coeffs / other)
        return NotImplemented

    def __repr__(self) -> str:
        return "QVector([" + ", ".join(str(q) for q in self) + "])"


class QMatrix:
    """Square matrix over H, stored as a read-only (n, n, 4) coefficient array."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        arr = np.array(coeffs, dtype=float)
        if arr.ndim != 3 or arr.shape[0] != arr.shape[1] or arr.shape[2] != 4:
            raise ValueError(f"expected an (n, n, 4) coefficient array, got shape {arr.shape}")
        arr.flags.writeable = False
        self.coeffs = arr

    @classmethod
    def from_entries(cls, rows) -> "QMatrix":
        n = len(rows)
        arr = np.zeros((n, n, 4))
        for r, row in enumerate(rows):
            if len(row) != n:
                raise ValueError(f"row {r} has {len(row)} entries, expected {n}")
            for s, e in enumerate(row):
                q = as_quaternion(e)
                if q is None:
                    raise TypeError(f"cannot interpret {e!r} as a quaternion")
                arr[r, s] = q.to_array()
        return cls(arr)

    @classmethod
    def zeros(cls, n: int) -> "QMatrix":
        return cls(np.zeros((n, n, 4)))

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        arr = np.zeros((n, n, 4))
        arr[np.arange(n), np.arange(n), 0] = 1.0
        return cls(arr)

    @classmethod
    def diag(cls, entries) -> "QMatrix":
        entries = [as_quaternion(e) for e in entries]
        arr = np.zeros((len(entries), len(entries), 4))
        for k, q in enumerate(entries):
            arr[k, k] = q.to_array()
        return cls(arr)

    @property
    def n(self) -> int:
        return self.coeffs.shape[0]

    def __getitem__(self, rs) -> Quaternion:
        r, s = rs
        return Quaternion.from_array(self.coeffs[r, s])

    def matvec(self, x: QVector) -> QVector:
        """y_r = sum_s a_rs x_s with left-to-right quaternion products."""
        if x.n != self.n:
            raise ValueError(f"dimension mismatch: matrix is {self.n}x{self.n}, vector has {x.n}")
        return QVector(_mul4(self.coeffs, x.coeffs[None, :, :]).sum(axis=1))

    def __matmul__(self, other):
        if isinstance(other, QVector):
            return self.matvec(other)
        if isinstance(other, QMatrix):
            if other.n != self.n:
                raise ValueError("dimension mismatch in matrix product")
            prod = _mul4(self.coeffs[:, :, None, :], other.coeffs[None, :, :, :])
            return QMatrix(prod.sum(axis=1))
        return NotImplemented

    def conj_transpose(self) -> "QMatrix":
        arr = self.coeffs.transpose(1, 0, 2) * np.array([1.0, -1.0, -1.0, -1.0])
        return QMatrix(arr)

    def left_scale(self, q: Quaternion) -> "QMatrix":
        """q * A with the scalar multiplying every entry on the left."""
        return QMatrix(_mul4(q.to_array()[None, None, :], self.coeffs))

    def __add__(self, other: "QMatrix") -> "QMatrix":
        return QMatrix(self.coeffs + other.coeffs)

    def __sub__(self, other: "QMatrix") -> "QMatrix":
        return QMatrix(self.coeffs - other.coeffs)

    def __neg__(self) -> "QMatrix":
        return QMatrix(-self.coeffs)

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return QMatrix(self.coeffs * other)
        return NotImplemented

    __rmul__ = __mul__

    def __repr__(self) -> str:
        rows = "; ".join(", ".join(str(self[r, s]) for s in range(self.n)) for r in range(self.n))
        return f"QMatrix({self.n}x{self.n}: {rows})"
