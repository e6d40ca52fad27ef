"""File formats: quaternion matrices, solver results, sphere models, reports.

Matrices use a canonical JSON text ("quatmat-v1") with every number printed
to 17 significant digits, which round-trips doubles exactly: parsing a
canonical file and re-serializing reproduces it byte for byte.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .quat import QMatrix

__all__ = [
    "MatrixFormatError",
    "matrix_to_text",
    "matrix_from_text",
    "save_matrix_file",
    "parse_matrix_file",
    "pairs_to_records",
    "sphere_to_record",
]

FORMAT_NAME = "quatmat-v1"


class MatrixFormatError(ValueError):
    """Malformed matrix file (bad JSON, schema violation, or non-square grid)."""


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def matrix_to_text(A: QMatrix) -> str:
    """Canonical JSON text for a quaternion matrix."""
    rows = []
    for r in range(A.n):
        entries = ",".join(
            "[" + ",".join(_fmt(c) for c in A.coeffs[r, s]) + "]" for s in range(A.n)
        )
        rows.append(f"[{entries}]")
    body = ",\n".join(rows)
    return f'{{"format":"{FORMAT_NAME}","n":{A.n},"rows":[\n{body}\n]}}\n'


def matrix_from_text(text: str, source: str = "<string>") -> QMatrix:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatrixFormatError(f"{source}: invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    if not isinstance(data, dict) or data.get("format") != FORMAT_NAME:
        raise MatrixFormatError(f"{source}: missing or unknown format marker, expected {FORMAT_NAME!r}")
    n = data.get("n")
    rows = data.get("rows")
    if not isinstance(n, int) or n < 1:
        raise MatrixFormatError(f"{source}: field 'n' must be a positive integer")
    if not isinstance(rows, list) or len(rows) != n:
        raise MatrixFormatError(f"{source}: expected {n} rows, got {len(rows) if isinstance(rows, list) else type(rows).__name__}")
    arr = np.zeros((n, n, 4))
    for r, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise MatrixFormatError(f"{source}: row {r} has {len(row) if isinstance(row, list) else 'no'} entries, expected {n} (non-square grid)")
        for s, entry in enumerate(row):
            if not isinstance(entry, list) or len(entry) != 4:
                raise MatrixFormatError(f"{source}: entry ({r},{s}) must be a list of 4 numbers")
            try:
                arr[r, s] = [float(c) for c in entry]
            except (TypeError, ValueError) as exc:
                raise MatrixFormatError(f"{source}: entry ({r},{s}) has a non-numeric coefficient") from exc
    return QMatrix(arr)


def save_matrix_file(A: QMatrix, path) -> None:
    Path(path).write_text(matrix_to_text(A))


def parse_matrix_file(path) -> QMatrix:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise MatrixFormatError(f"{p}: cannot read file: {exc}") from exc
    return matrix_from_text(text, source=str(p))


def pairs_to_records(pairs) -> list[dict]:
    """JSON-ready records for accepted eigenpairs."""
    records = []
    for p in pairs:
        cert = p.certificate
        records.append(
            {
                "lambda": [float(c) for c in p.lam.to_array()],
                "vector": [[float(c) for c in row] for row in p.vector.coeffs],
                "res_pair": float(cert.res_pair) if cert else None,
                "res_min": float(cert.res_min) if cert else None,
                "iters": p.iterations,
                "trial": p.trial,
            }
        )
    return records


def sphere_to_record(model) -> dict:
    """JSON-ready record mirroring the sphere model fields."""
    return {
        "center": [float(c) for c in model.center.to_array()],
        "radius": float(model.radius),
        "normal": [float(c) for c in model.normal],
        "offset": float(model.offset),
        "inliers": list(model.inliers),
        "on_sphere_dev": [float(d) for d in model.on_sphere_dev],
        "inlier_fraction": float(model.inlier_fraction),
        "max_dev": float(model.max_dev),
    }
