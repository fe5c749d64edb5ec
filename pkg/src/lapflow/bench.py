"""Timing/scaling benchmark harness.

Times the dense pseudoinverse and the single-eigenpair computation over a
size sweep and fits the log-log slope.  Single-threaded on purpose so the
fitted exponent is not polluted by parallel speedup.
"""
from __future__ import annotations

import json
import platform
import time
from dataclasses import dataclass, asdict

import numpy as np
from threadpoolctl import threadpool_limits

from .errors import BadParamsError
from .graph import dense_laplacian
from .models import gen_ba, gen_er
from .spectral import smallest_eigenpairs


@dataclass(frozen=True)
class BenchRecord:
    n: int
    m: int
    mode: str
    wall_time: float
    peak_entries_stored: int
    iterations: int


def _generate(model: str, n: int, seed: int):
    if model == "er":
        return gen_er(n, 4.0, seed=seed)
    if model == "ba":
        return gen_ba(n, 2, seed=seed)
    raise BadParamsError(f"unknown model {model!r}")


def bench_scaling(sizes, mode: str, reps: int = 3, seed: int = 0, model: str = "ba",
                  tol: float = 1e-8):
    """Best-of-reps wall times per size plus the fitted log-log exponent.

    ``mode`` is "exact_pinv" (dense inverse, cubic-ish) or "one_eigenpair"
    (Fiedler pair through the iterative solver).
    """
    sizes = list(sizes)
    if len(sizes) < 3 or sorted(sizes) != sizes:
        raise BadParamsError("sizes must be ascending with at least 3 points")
    if mode not in ("exact_pinv", "one_eigenpair"):
        raise BadParamsError(f"unknown bench mode {mode!r}")
    records = []
    with threadpool_limits(limits=1):
        for n in sizes:
            g = _generate(model, n, seed)
            if mode == "exact_pinv":
                # the timed region is the dense inversion itself; building
                # the shifted Laplacian is quadratic setup, not the kernel
                shifted = dense_laplacian(g) + 1.0 / g.n
            best, iters, entries = np.inf, 0, 0
            for _ in range(max(1, reps)):
                t0 = time.perf_counter()
                if mode == "exact_pinv":
                    dense = np.linalg.inv(shifted)
                    entries = dense.size
                else:
                    basis = smallest_eigenpairs(g, 1, tol=tol, seed=seed)
                    iters = basis.iterations
                    entries = basis.vectors.size + basis.npairs
                best = min(best, time.perf_counter() - t0)
            records.append(BenchRecord(n=g.n, m=g.m, mode=mode, wall_time=best,
                                       peak_entries_stored=entries, iterations=iters))
    logs_n = np.log([r.n for r in records])
    logs_t = np.log([max(r.wall_time, 1e-9) for r in records])
    exponent = float(np.polyfit(logs_n, logs_t, 1)[0])
    return records, exponent


def records_to_csv(records) -> str:
    lines = ["n,m,mode,seconds,iterations"]
    for r in records:
        lines.append(f"{r.n},{r.m},{r.mode},{r.wall_time!r},{r.iterations}")
    return "\n".join(lines) + "\n"


def summary_json(records, exponent: float) -> str:
    return json.dumps({
        "fitted_exponent": exponent,
        "machine": {"platform": platform.platform(), "python": platform.python_version(),
                    "processor": platform.processor()},
        "records": [asdict(r) for r in records],
    }, indent=2)
