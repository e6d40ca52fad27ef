"""Benchmark runner: per-family/size ensembles with residual metrics.

For every generated matrix the driver requests K = n distinct eigenpairs
with shortcuts disabled; a run is successful only when all n are found.
Reported metrics per (family, n) cell: success rate, median and max of
maxRes(A) = max_k res_k (absolute and relative to s(A)), mean time per
accepted eigenpair, and trial/restart/iteration aggregates.  Every failure
is captured with the seeds needed to re-run it exactly.
"""

from __future__ import annotations

import dataclasses
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .config import SolveConfig
from .families import FAMILIES, FamilySpec, gen_matrix
from .multistart import solve_left

__all__ = ["FailureCapture", "BenchCell", "BenchReport", "run_bench", "rerun_capture", "bench_workers"]


@dataclass(frozen=True)
class FailureCapture:
    """Everything needed to reproduce one failed sample."""

    family: str
    n: int
    sample: int
    gen_seed: int
    solve_seed: int
    k_found: int


@dataclass
class BenchCell:
    family: str
    n: int
    n_mat: int
    success_rate: float
    med_max_res: float
    max_max_res: float
    med_max_res_rel: float
    max_max_res_rel: float
    mean_time_per_pair: float
    mean_trials: float
    mean_restarts: float
    mean_iterations: float
    failures: list[FailureCapture] = field(default_factory=list)

    def to_dict(self) -> dict:
        d = dataclasses.asdict(self)
        d["failures"] = [dataclasses.asdict(f) for f in self.failures]
        return d


@dataclass
class BenchReport:
    cells: list[BenchCell]
    base_seed: int
    total_seconds: float
    sizes: list[int]
    n_mat: list[int]
    families: list[str]

    def to_dict(self) -> dict:
        return {
            "base_seed": self.base_seed,
            "families": self.families,
            "sizes": self.sizes,
            "n_mat": self.n_mat,
            "total_seconds": self.total_seconds,
            "cells": [c.to_dict() for c in self.cells],
        }

    @property
    def failures(self) -> list[FailureCapture]:
        return [f for c in self.cells for f in c.failures]


def bench_workers() -> int:
    """Worker count from LEIGQ_THREADS (0 or unset means automatic)."""
    raw = os.environ.get("LEIGQ_THREADS", "0")
    try:
        value = int(raw)
    except ValueError:
        value = 0
    if value > 0:
        return value
    return min(os.cpu_count() or 1, 8)


def _sample_seed(base_seed: int, family: str, n: int, sample: int) -> int:
    ss = np.random.SeedSequence([base_seed, FAMILIES.index(family), n, sample])
    return int(ss.generate_state(1)[0])


def _solve_sample(family: str, n: int, sample: int, base_seed: int, cfg: SolveConfig) -> dict:
    seed = _sample_seed(base_seed, family, n, sample)
    A = gen_matrix(FamilySpec(family=family, n=n, seed=seed))
    run_cfg = dataclasses.replace(
        cfg, k=n, seed=seed, triangular_shortcut=False, singular_prefill=False
    )
    t0 = time.perf_counter()
    pairs, stats = solve_left(A, run_cfg)
    elapsed = time.perf_counter() - t0
    res = [p.certificate.res_pair for p in pairs]
    scale = pairs[0].certificate.scale if pairs else 1.0
    max_res = max(res) if res else float("inf")
    return {
        "family": family,
        "n": n,
        "sample": sample,
        "seed": seed,
        "k_found": len(pairs),
        "success": len(pairs) == n,
        "max_res": max_res,
        "max_res_rel": max_res / scale,
        "time_per_pair": elapsed / len(pairs) if pairs else float("inf"),
        "trials": stats.trials,
        "restarts": stats.restarts,
        "iterations": float(np.mean(stats.iterations)) if stats.iterations else 0.0,
    }


def run_bench(
    families=FAMILIES,
    sizes=(2, 3, 4, 8, 16, 32),
    n_mat=(200, 200, 100, 50, 25, 10),
    cfg: SolveConfig | None = None,
    base_seed: int = 0,
    workers: int | None = None,
) -> BenchReport:
    """Run the benchmark grid and aggregate per-cell metrics.

    ``sizes`` and ``n_mat`` must have equal length.  Samples may execute on a
    thread pool; results are merged by (family, n, sample), so the report is
    deterministic for a fixed base seed.
    """
    if len(sizes) != len(n_mat):
        raise ValueError("sizes and n_mat must have the same length")
    cfg = cfg or SolveConfig()
    workers = bench_workers() if workers is None else workers
    t0 = time.perf_counter()

    tasks = [
        (family, n, sample)
        for family in families
        for n, count in zip(sizes, n_mat)
        for sample in range(count)
    ]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            records = list(
                pool.map(lambda t: _solve_sample(t[0], t[1], t[2], base_seed, cfg), tasks)
            )
    else:
        records = [_solve_sample(f, n, s, base_seed, cfg) for f, n, s in tasks]

    cells = []
    for family in families:
        for n, count in zip(sizes, n_mat):
            rows = [r for r in records if r["family"] == family and r["n"] == n]
            rows.sort(key=lambda r: r["sample"])
            successes = [r for r in rows if r["success"]]
            failures = [
                FailureCapture(
                    family=family,
                    n=n,
                    sample=r["sample"],
                    gen_seed=r["seed"],
                    solve_seed=r["seed"],
                    k_found=r["k_found"],
                )
                for r in rows
                if not r["success"]
            ]
            max_res = np.array([r["max_res"] for r in rows])
            max_res_rel = np.array([r["max_res_rel"] for r in rows])
            finite_tpp = [r["time_per_pair"] for r in rows if np.isfinite(r["time_per_pair"])]
            cells.append(
                BenchCell(
                    family=family,
                    n=n,
                    n_mat=len(rows),
                    success_rate=100.0 * len(successes) / len(rows),
                    med_max_res=float(np.median(max_res)),
                    max_max_res=float(max_res.max()),
                    med_max_res_rel=float(np.median(max_res_rel)),
                    max_max_res_rel=float(max_res_rel.max()),
                    mean_time_per_pair=float(np.mean(finite_tpp)) if finite_tpp else float("inf"),
                    mean_trials=float(np.mean([r["trials"] for r in rows])),
                    mean_restarts=float(np.mean([r["restarts"] for r in rows])),
                    mean_iterations=float(np.mean([r["iterations"] for r in rows])),
                    failures=failures,
                )
            )
    return BenchReport(
        cells=cells,
        base_seed=base_seed,
        total_seconds=time.perf_counter() - t0,
        sizes=list(sizes),
        n_mat=list(n_mat),
        families=list(families),
    )


def rerun_capture(capture: FailureCapture, cfg: SolveConfig | None = None) -> int:
    """Re-run a failure capture; returns the number of eigenpairs found."""
    cfg = cfg or SolveConfig()
    A = gen_matrix(FamilySpec(family=capture.family, n=capture.n, seed=capture.gen_seed))
    run_cfg = dataclasses.replace(
        cfg,
        k=capture.n,
        seed=capture.solve_seed,
        triangular_shortcut=False,
        singular_prefill=False,
    )
    pairs, _ = solve_left(A, run_cfg)
    return len(pairs)
