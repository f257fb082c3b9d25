"""Experiment runner: relative error of each backend against a
reference, paired with the condition number times unit roundoff.

Each suite member is a small dict spec (name, order, label, optional
seed/shift/parameters). Failures are captured per row so one bad matrix
cannot sink a benchmark run. CSV output is deterministic for a fixed
(suite, seed, platform); timings are reported only in the JSON form.
"""

from __future__ import annotations

import csv
import io
import json
import math
import time
from dataclasses import asdict, dataclass

import numpy as np

from ..errors import MatGammaError, OracleRefusedError
from ..gamma_core import GammaMethod
from ..linalg import UNIT_ROUNDOFF, frobenius_norm
from ..analysis import cond_gamma
from ..schur_parlett import gamma
from .gallery import gallery
from .oracle import oracle_gamma

DEFAULT_METHODS = (
    GammaMethod.LANCZOS,
    GammaMethod.SPOUGE,
    GammaMethod.RECIPROCAL,
)


@dataclass(frozen=True)
class ExperimentRecord:
    """One (matrix, method) benchmark row."""

    matrix_name: str
    n: int
    method: str
    rel_error: float
    cond_times_u: float
    wall_time_ms: float
    oracle_kind: str
    error: str = ""
    bound_values: dict | None = None


def default_suite(seed: int = 1) -> list:
    """Fifteen members with orders 5 through 14: structured classics,
    shifted versions where the raw spectrum would sit on a pole, seeded
    random spectra on one or both sides of the axis, and a Jordan block.
    """
    specs = [
        {"name": "lehmer", "n": 5, "label": "lehmer5"},
        {"name": "hilbert", "n": 6, "label": "hilbert6+I", "shift": 1.0},
        {"name": "cauchy", "n": 7, "label": "cauchy7+I", "shift": 1.0},
        {"name": "riemann-like", "n": 8, "label": "riemann8"},
        {"name": "condex-like", "n": 9, "label": "condex9"},
        {"name": "lehmer", "n": 10, "label": "lehmer10"},
        {"name": "hilbert", "n": 11, "label": "hilbert11+I", "shift": 1.0},
        {"name": "cauchy", "n": 12, "label": "cauchy12+I", "shift": 1.0},
        {"name": "riemann-like", "n": 13, "label": "riemann13"},
        {"name": "condex-like", "n": 14, "label": "condex14"},
        {"name": "rand-stable", "n": 5, "label": "randstable5"},
        {"name": "rand-stable", "n": 12, "label": "randstable12"},
        {"name": "rand-mixed", "n": 6, "label": "randmixed6"},
        {"name": "rand-mixed", "n": 13, "label": "randmixed13"},
        {"name": "jordan", "n": 7, "label": "jordan7", "lam": 1.25},
    ]
    for idx, spec in enumerate(specs):
        if spec["name"].startswith("rand-"):
            spec["seed"] = seed + idx
    return specs


def smoke_suite(seed: int = 1) -> list:
    """Three small members for fast CLI and service checks."""
    return [
        {"name": "lehmer", "n": 5, "label": "lehmer5"},
        {"name": "rand-stable", "n": 5, "label": "randstable5", "seed": seed + 1},
        {"name": "jordan", "n": 4, "label": "jordan4", "lam": 1.25},
    ]


def build_member(spec: dict) -> np.ndarray:
    a = gallery(
        spec["name"],
        spec["n"],
        seed=spec.get("seed", 0),
        lam=spec.get("lam", 1.25),
        theta=spec.get("theta", 0.05),
    )
    shift = spec.get("shift", 0.0)
    if shift:
        a = a + shift * np.eye(spec["n"])
    return a


def _consensus(results: dict) -> np.ndarray | None:
    mats = [g for g, _, _ in results.values() if g is not None]
    if len(mats) < 2:
        return None
    stack = np.stack(mats)
    return np.median(stack.real, axis=0) + 1j * np.median(stack.imag, axis=0)


def run_experiment(
    suite,
    methods=DEFAULT_METHODS,
    *,
    delta: float = 0.1,
    with_cond: bool = True,
) -> list:
    """Evaluate every (matrix, method) pair; one record per pair, sorted
    by (matrix label, order, method).

    The reference is the eigendecomposition oracle when it accepts the
    matrix, else the entrywise median of the successful backends
    (flagged as "consensus"); the condition number is estimated once per
    matrix with the Lanczos backend and shared across its rows.
    """
    suite = list(suite)
    if not suite:
        raise MatGammaError("benchmark suite is empty")
    methods = [GammaMethod(m) for m in methods]
    records = []
    for spec in suite:
        label = spec.get("label", f"{spec['name']}{spec['n']}")
        a = build_member(spec)
        n = int(spec["n"])

        results: dict = {}
        for method in methods:
            t0 = time.perf_counter()
            try:
                g = gamma(a, method, delta=delta)
                err = ""
            except MatGammaError as exc:
                g = None
                err = f"{type(exc).__name__}: {exc}"
            wall = (time.perf_counter() - t0) * 1e3
            results[method] = (g, wall, err)

        oracle_kind = "eig"
        try:
            reference = oracle_gamma(a)
        except OracleRefusedError:
            reference = _consensus(results)
            oracle_kind = "consensus" if reference is not None else "none"
        except MatGammaError:
            reference = None
            oracle_kind = "none"

        cond_u = math.nan
        cond_err = ""
        if with_cond:
            try:
                cond_u = cond_gamma(a, GammaMethod.LANCZOS) * UNIT_ROUNDOFF
            except MatGammaError as exc:
                cond_err = f"cond failed: {type(exc).__name__}: {exc}"

        ref_norm = frobenius_norm(reference) if reference is not None else 0.0
        for method in methods:
            g, wall, err = results[method]
            if g is None or reference is None or ref_norm == 0.0:
                rel = math.nan
                if g is not None and reference is None:
                    err = (err + "; " if err else "") + "no reference available"
            else:
                rel = float(frobenius_norm(g - reference) / ref_norm)
            notes = "; ".join(x for x in (err, cond_err) if x)
            records.append(
                ExperimentRecord(
                    matrix_name=label,
                    n=n,
                    method=method.value,
                    rel_error=rel,
                    cond_times_u=cond_u,
                    wall_time_ms=wall,
                    oracle_kind=oracle_kind,
                    error=notes,
                )
            )
    records.sort(key=lambda r: (r.matrix_name, r.n, r.method))
    return records


CSV_COLUMNS = (
    "matrix_name",
    "n",
    "method",
    "rel_error",
    "cond_times_u",
    "oracle",
    "error",
)


def records_to_csv(records) -> str:
    """Deterministic CSV: timings are deliberately excluded so repeated
    runs with one seed are byte-identical."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in records:
        writer.writerow(
            [
                r.matrix_name,
                r.n,
                r.method,
                repr(r.rel_error),
                repr(r.cond_times_u),
                r.oracle_kind,
                r.error,
            ]
        )
    return buf.getvalue()


def records_to_json(records) -> str:
    payload = [asdict(r) for r in records]
    return json.dumps(payload, indent=2, sort_keys=True, allow_nan=True) + "\n"
