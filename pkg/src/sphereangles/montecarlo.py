"""Reproducible Monte Carlo studies: power table, convergence checks, figure data.

Every replicate draws from its own stream ``SeedSpec(master_seed, index)``.
Cell ``c`` of a study owns the contiguous block of indices
``c * replicates + r`` for ``r < replicates``, and the block start is stored
in the report.  Replicates may run on a thread pool, but their results are
gathered in index order, so every number in a report is independent of the
worker count.
"""
from __future__ import annotations

import csv
import json
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, fields

import numpy as np
from scipy import stats

from .angles import empirical_measure, extreme_angles, extremes, normalized_empirical, pairwise_angles
from .inference import packing_test
from .laws import (
    PivotSpec,
    angle_cdf,
    angle_density,
    exp_regime_limit_angle,
    fixed_p_extreme_cdf,
    fixed_p_extreme_pdf,
    normalized_angle_density,
    pivot_transform,
    sum_law_cdf,
)
from .sphere import SeedSpec, sample_dgp, sample_uniform_sphere

__all__ = [
    "DEFAULT_SEED",
    "REFERENCE_POWER",
    "SCHEMA_VERSION",
    "TOLERANCES",
    "ConfigError",
    "ExperimentReport",
    "ExperimentSpec",
    "figure_data",
    "ks_distance",
    "load_spec",
    "run",
    "run_convergence_study",
    "run_power_study",
    "run_sum_law_study",
    "write_report",
]

SCHEMA_VERSION = 1
DEFAULT_SEED = 20240917

KINDS = ("power-study", "figure-data", "convergence-study", "sum-law-study")
TARGETS = (
    "fixed-p-extreme",
    "empirical-angle",
    "empirical-clt",
    "subexp-pivot",
    "exp-regime",
    "superexp-pivot",
    "corollary-pivot",
)

# Percent rejections at alpha = 0.05 from 2000 simulations, keyed by (dist_id, p).
REFERENCE_POWER = {
    (0, 2): 4.20, (1, 2): 5.20, (2, 2): 20.30, (3, 2): 5.55, (4, 2): 10.75, (5, 2): 5.95,
    (0, 3): 4.20, (1, 3): 6.80, (2, 3): 37.20, (3, 3): 8.00, (4, 3): 30.70, (5, 3): 8.05,
    (0, 4): 4.80, (1, 4): 7.05, (2, 4): 64.90, (3, 4): 11.05, (4, 4): 76.25, (5, 4): 11.20,
    (0, 5): 4.30, (1, 5): 7.45, (2, 5): 90.50, (3, 5): 18.25, (4, 5): 99.45, (5, 5): 11.65,
}

# Pre-registered acceptance tolerances, each with the pilot runs behind it
# (pilots used DEFAULT_SEED; "bias" is the KS distance between the Poisson
# approximation exp(-C(n,2) P(rho > t)) of the exact law and the limit law).
TOLERANCES = {
    "power-band-pp": (3.0, "fixed band around the published power entries"),
    "size-band-pct": ((2.5, 7.5), "size interval for Distribution 0 cells"),
    "fixed-p-extreme-ks": (0.05, "p=3, 1000 reps: KS 0.026 at n=1000 and 0.026 at n=2000, sampling noise dominated"),
    "empirical-clt-ks": (0.03, "p=400, one realization: KS 0.0057, 0.0045, 0.0022 at n=150, 300, 600"),
    "sum-law-sign": ((0.47, 0.53), "binomial 3-sigma band for 2000 symmetric signs"),
    "sum-law-ks": (0.06, "p=2, 2000 reps: KS 0.023 at n=1000, 0.028 at n=2000"),
    "subexp-ks": (0.08, "p=500, 500 reps: KS 0.118, 0.070, 0.069 at n=50, 100, 200; bias 0.060, 0.056, 0.052"),
    "exp-regime-median": (0.05, "beta=0.2, p=40, n=2981, 50 reps: median gap +0.063; Poisson median 0.792 vs limit 0.735"),
    "corollary-ks": (0.10, "p=500, 500 reps: KS 0.145, 0.103, 0.110 at n=50, 100, 200; bias 0.089, 0.092, 0.096"),
    "pivot-undefined-fraction": (0.001, "numerical clamping guard"),
}


class ConfigError(ValueError):
    """Raised with every schema violation found in an experiment configuration."""

    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__("invalid experiment config:\n" + "\n".join(f"  - {p}" for p in self.problems))


def _as_list(value):
    if value is None:
        return []
    if isinstance(value, (list, tuple)):
        return list(value)
    return [value]


@dataclass
class ExperimentSpec:
    """Declarative description of one study.

    ``n`` and ``p`` are grids; cells are their product (for the power study
    the product with ``dist_ids``).
    """

    kind: str
    n: list = field(default_factory=list)
    p: list = field(default_factory=list)
    replicates: int = 1
    alpha: float = 0.05
    dist_ids: list = field(default_factory=lambda: [0, 1, 2, 3, 4, 5])
    target: str | None = None
    beta: float | None = None
    fig_id: int | None = None
    master_seed: int = DEFAULT_SEED

    def __post_init__(self):
        self.n = [int(v) for v in _as_list(self.n)]
        self.p = [int(v) for v in _as_list(self.p)]
        self.dist_ids = [int(v) for v in _as_list(self.dist_ids)]
        problems = self.problems()
        if problems:
            raise ConfigError(problems)

    def problems(self):
        out = []
        if self.kind not in KINDS:
            out.append(f"kind must be one of {list(KINDS)}, got {self.kind!r}")
        if int(self.replicates) < 1:
            out.append("replicates must be >= 1")
        if not 0 < float(self.alpha) < 1:
            out.append("alpha must lie in (0, 1)")
        if not 0 <= int(self.master_seed) < 2**64:
            out.append("master_seed must be a 64-bit unsigned integer")
        if self.kind == "figure-data":
            if self.fig_id not in (1, 2, 3, 4):
                out.append("figure-data needs fig_id in 1..4")
            return out
        if not self.n:
            out.append("n grid must be nonempty")
        if not self.p:
            out.append("p grid must be nonempty")
        out += [f"n must be >= 2, got {v}" for v in self.n if v < 2]
        out += [f"p must be >= 2, got {v}" for v in self.p if v < 2]
        if self.kind == "power-study":
            if not self.dist_ids:
                out.append("dist_ids must be nonempty")
            out += [f"unknown distribution id {d}" for d in self.dist_ids if d not in range(6)]
        if self.kind == "convergence-study":
            if self.target not in TARGETS:
                out.append(f"target must be one of {list(TARGETS)}, got {self.target!r}")
            if self.target == "exp-regime" and not (self.beta is not None and self.beta > 0):
                out.append("exp-regime target needs beta > 0")
            if self.target == "empirical-clt":
                out += [f"empirical-clt needs p >= 3, got {v}" for v in self.p if v < 3]
            if self.target in ("subexp-pivot", "exp-regime", "corollary-pivot"):
                out += [f"pivot needs n > e, got {v}" for v in self.n if v <= math.e]
        return out

    def to_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, raw: dict):
        known = {f.name for f in fields(cls)}
        problems = [f"unknown key {k!r}" for k in raw if k not in known]
        if "kind" not in raw:
            problems.append("missing required key 'kind'")
        kwargs = {k: v for k, v in raw.items() if k in known}
        kwargs.setdefault("kind", None)
        spec = None
        try:
            spec = cls(**kwargs)
        except ConfigError as exc:
            problems += exc.problems
        except (TypeError, ValueError) as exc:
            problems.append(str(exc))
        if problems:
            raise ConfigError(problems)
        return spec


@dataclass
class ExperimentReport:
    spec: dict
    cells: list
    tables: dict = field(default_factory=dict)
    metadata: dict = field(default_factory=dict)
    provenance: dict = field(default_factory=dict)
    schema_version: int = SCHEMA_VERSION

    def to_dict(self, include_tables=False):
        out = {
            "schema_version": self.schema_version,
            "spec": self.spec,
            "cells": self.cells,
            "metadata": self.metadata,
            "provenance": self.provenance,
        }
        if include_tables:
            out["tables"] = self.tables
        return out

    def numbers(self):
        """Everything except timing, for reproducibility comparisons."""
        prov = {k: v for k, v in self.provenance.items() if k not in ("wall_time_s", "threads")}
        return {"spec": self.spec, "cells": self.cells, "tables": self.tables, "provenance": prov}


def ks_distance(samples, cdf) -> float:
    """Sup distance between the empirical CDF of ``samples`` and ``cdf``."""
    x = np.sort(np.asarray(samples, dtype=np.float64).ravel())
    m = x.size
    if m == 0:
        raise ValueError("ks_distance needs at least one sample")
    f = cdf.cdf if hasattr(cdf, "cdf") else cdf
    values = np.asarray(f(x), dtype=np.float64)
    i = np.arange(1, m + 1)
    return float(max(np.max(i / m - values), np.max(values - (i - 1) / m), 0.0))


def _run_replicates(func, indices, threads):
    if threads is None or threads <= 1:
        return [func(i) for i in indices]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(func, indices))


def _seed(spec, index):
    return SeedSpec(spec.master_seed, index)


def _binomial_se(fraction, reps):
    return math.sqrt(fraction * (1.0 - fraction) / reps)


def run_power_study(spec: ExperimentSpec, threads: int | None = None) -> ExperimentReport:
    """Percent of replicates in which the packing test rejects, per (dist, n, p) cell."""
    if spec.kind != "power-study":
        raise ValueError("run_power_study needs kind='power-study'")
    start = time.perf_counter()
    reps = spec.replicates
    cells, streams = [], []
    grid = [(d, n, p) for p in spec.p for n in spec.n for d in spec.dist_ids]
    for c, (dist_id, n, p) in enumerate(grid):
        base = c * reps

        def one(r, dist_id=dist_id, n=n, p=p, base=base):
            try:
                data = sample_dgp(dist_id, n, p, _seed(spec, base + r))
                return packing_test(data, spec.alpha).reject
            except ValueError as exc:
                raise RuntimeError(f"power cell dist={dist_id} n={n} p={p} replicate {r}: {exc}") from exc

        rejects = _run_replicates(one, range(reps), threads)
        frac = sum(rejects) / reps
        cell = {
            "dist_id": dist_id,
            "n": n,
            "p": p,
            "replicates": reps,
            "rejections": int(sum(rejects)),
            "power_pct": 100.0 * frac,
            "se_pct": 100.0 * _binomial_se(frac, reps),
            "se_bound_pct": 100.0 * math.sqrt(0.25 / reps),
        }
        published = REFERENCE_POWER.get((dist_id, p))
        if published is not None and n == 50 and abs(spec.alpha - 0.05) < 1e-12:
            cell["published_pct"] = published
            cell["diff_pp"] = cell["power_pct"] - published
        cells.append(cell)
        streams.append({"dist_id": dist_id, "n": n, "p": p, "first_stream": base})

    header = ["p"] + [f"dist{d}" for d in spec.dist_ids]
    rows = []
    for n in spec.n:
        for p in spec.p:
            row = [p] + [next(c["power_pct"] for c in cells if c["dist_id"] == d and c["n"] == n and c["p"] == p)
                         for d in spec.dist_ids]
            rows.append(row if len(spec.n) == 1 else [n] + row)
    if len(spec.n) > 1:
        header = ["n"] + header
    return ExperimentReport(
        spec=spec.to_dict(),
        cells=cells,
        tables={"power": {"columns": header, "rows": rows}},
        metadata={"tolerances": {k: TOLERANCES[k] for k in ("power-band-pp", "size-band-pct")}},
        provenance=_provenance(spec, streams, start, threads),
    )


def _provenance(spec, streams, start, threads):
    return {
        "master_seed": spec.master_seed,
        "stream_derivation": "SeedSequence(master_seed, spawn_key=(index,)) -> PCG64",
        "cell_streams": streams,
        "wall_time_s": time.perf_counter() - start,
        "threads": threads or 1,
    }


def _normal_cdf(x):
    return stats.norm.cdf(x)


def _pivot_spec(target, n, p, beta):
    if target == "subexp-pivot":
        return PivotSpec("sub-exponential", n, p)
    if target == "exp-regime":
        return PivotSpec("exponential", n, p, beta=beta)
    if target == "superexp-pivot":
        return PivotSpec("super-exponential", n, p)
    return PivotSpec("corollary", n, p, alpha=math.log(n) / math.sqrt(p))


def _summary(values):
    arr = np.asarray(values, dtype=np.float64)
    return {
        "mean": float(arr.mean()),
        "median": float(np.median(arr)),
        "std": float(arr.std(ddof=1)) if arr.size > 1 else 0.0,
    }


def _convergence_cell(spec, n, p, base, threads):
    reps = spec.replicates
    target = spec.target
    cell = {"target": target, "n": n, "p": p, "replicates": reps}

    if target in ("empirical-angle", "empirical-clt"):
        def one(r):
            angles = pairwise_angles(sample_uniform_sphere(n, p, _seed(spec, base + r)))
            if target == "empirical-angle":
                return ks_distance(empirical_measure(angles).samples, lambda t: angle_cdf(t, p))
            return ks_distance(normalized_empirical(angles).samples, _normal_cdf)

        ks = _run_replicates(one, range(reps), threads)
        cell.update(ks=float(ks[0]) if reps == 1 else float(np.median(ks)),
                    ks_per_replicate=[float(v) for v in ks], ks_max=float(max(ks)))
        return cell

    ext = _run_replicates(lambda r: extreme_angles(sample_uniform_sphere(n, p, _seed(spec, base + r))),
                          range(reps), threads)
    theta_min = np.array([e.theta_min for e in ext])
    theta_max = np.array([e.theta_max for e in ext])
    cell["theta_min"] = _summary(theta_min)
    cell["theta_max"] = _summary(theta_max)

    if target == "fixed-p-extreme":
        scale = n ** (2.0 / (p - 1.0))
        cell["ks"] = ks_distance(scale * theta_min, lambda x: fixed_p_extreme_cdf(x, p))
        cell["ks_max_side"] = ks_distance(scale * (np.pi - theta_max), lambda x: fixed_p_extreme_cdf(x, p))
        return cell

    pspec = _pivot_spec(target, n, p, spec.beta)
    law = pspec.limit()
    piv_min = np.array([pivot_transform(e, pspec, "min") for e in ext])
    piv_max = np.array([pivot_transform(e, pspec, "max") for e in ext])
    bad = int(np.count_nonzero(~np.isfinite(piv_min)) + np.count_nonzero(~np.isfinite(piv_max)))
    cell["pivot_undefined"] = bad
    limit_frac = TOLERANCES["pivot-undefined-fraction"][0]
    if bad > limit_frac * 2 * reps:
        raise RuntimeError(f"{bad} undefined pivots in cell n={n} p={p}; exceeds {limit_frac:.1%} of replicates")
    cell["pivot_regime"] = pspec.regime
    if pspec.alpha is not None:
        cell["alpha_hat"] = pspec.alpha
    cell["ks"] = ks_distance(piv_min[np.isfinite(piv_min)], law)
    cell["ks_max_side"] = ks_distance(piv_max[np.isfinite(piv_max)], law)
    cell["pivot_min"] = _summary(piv_min[np.isfinite(piv_min)])
    if target == "exp-regime":
        lim_min, lim_max = exp_regime_limit_angle(spec.beta)
        cell["limit_theta_min"] = lim_min
        cell["limit_theta_max"] = lim_max
        cell["median_gap_min"] = cell["theta_min"]["median"] - lim_min
        cell["median_gap_max"] = cell["theta_max"]["median"] - lim_max
    return cell


_TARGET_TOLERANCE = {
    "fixed-p-extreme": "fixed-p-extreme-ks",
    "empirical-clt": "empirical-clt-ks",
    "subexp-pivot": "subexp-ks",
    "exp-regime": "exp-regime-median",
    "corollary-pivot": "corollary-ks",
}


def run_convergence_study(spec: ExperimentSpec, threads: int | None = None) -> ExperimentReport:
    """KS distance between simulated statistics and their limit law, per (n, p) cell."""
    if spec.kind != "convergence-study":
        raise ValueError("run_convergence_study needs kind='convergence-study'")
    start = time.perf_counter()
    cells, streams = [], []
    grid = [(n, p) for p in spec.p for n in spec.n]
    for c, (n, p) in enumerate(grid):
        base = c * spec.replicates
        cells.append(_convergence_cell(spec, n, p, base, threads))
        streams.append({"n": n, "p": p, "first_stream": base})
    meta = {}
    key = _TARGET_TOLERANCE.get(spec.target)
    if key:
        meta["tolerances"] = {key: TOLERANCES[key]}
    rows = [[c["n"], c["p"], c.get("ks")] for c in cells]
    return ExperimentReport(
        spec=spec.to_dict(),
        cells=cells,
        tables={"convergence": {"columns": ["n", "p", "ks"], "rows": rows}},
        metadata=meta,
        provenance=_provenance(spec, streams, start, threads),
    )


def run_sum_law_study(spec: ExperimentSpec, threads: int | None = None) -> ExperimentReport:
    """Sign symmetry and KS fit of n^{2/(p-1)} (Theta_min + Theta_max - pi)."""
    if spec.kind != "sum-law-study":
        raise ValueError("run_sum_law_study needs kind='sum-law-study'")
    start = time.perf_counter()
    reps = spec.replicates
    cells, streams = [], []
    grid = [(n, p) for p in spec.p for n in spec.n]
    for c, (n, p) in enumerate(grid):
        base = c * reps
        ext = _run_replicates(lambda r: extreme_angles(sample_uniform_sphere(n, p, _seed(spec, base + r))),
                              range(reps), threads)
        total = np.array([e.theta_min + e.theta_max - np.pi for e in ext])
        scaled = n ** (2.0 / (p - 1.0)) * total
        positive = int(np.count_nonzero(total > 0))
        frac = positive / reps
        cells.append({
            "n": n,
            "p": p,
            "replicates": reps,
            "positive": positive,
            "zero": int(np.count_nonzero(total == 0)),
            "positive_fraction": frac,
            "positive_fraction_se": _binomial_se(frac, reps),
            "ks": ks_distance(scaled, lambda z: sum_law_cdf(z, p)),
            "scaled_sum": _summary(scaled),
        })
        streams.append({"n": n, "p": p, "first_stream": base})
    rows = [[c["n"], c["p"], c["positive_fraction"], c["ks"]] for c in cells]
    return ExperimentReport(
        spec=spec.to_dict(),
        cells=cells,
        tables={"sum_law": {"columns": ["n", "p", "positive_fraction", "ks"], "rows": rows}},
        metadata={"tolerances": {k: TOLERANCES[k] for k in ("sum-law-sign", "sum-law-ks")}},
        provenance=_provenance(spec, streams, start, threads),
    )


FIGURE_DESIGNS = {2: (2, 50), 3: (3, 50), 4: (30, 50)}
FIGURE1_DIMENSIONS = (4, 5, 10, 20)


def _hist_table(samples, edges, reference=None):
    heights, _ = np.histogram(samples, bins=edges, density=True)
    centers = 0.5 * (edges[:-1] + edges[1:])
    columns = ["left", "right", "center", "density"]
    rows = [[float(a), float(b), float(c), float(h)] for a, b, c, h in zip(edges[:-1], edges[1:], centers, heights)]
    if reference is not None:
        ref = np.asarray(reference(centers), dtype=np.float64)
        columns.append("limit_density")
        for row, v in zip(rows, ref):
            row.append(float(v))
    return {"columns": columns, "rows": rows}


def figure_data(fig_id: int, spec: ExperimentSpec | None = None, threads: int | None = None,
                bins: int = 40) -> ExperimentReport:
    """Numeric datasets behind the four standard figures.

    ``fig_id=1`` tabulates the normalized single-pair densities for
    p in {4, 5, 10, 20} against the standard normal density.  ``fig_id``
    2-4 use (p, n) = (2, 50), (3, 50), (30, 50) with 200 replicates by
    default and produce four tables: (a) one realization of the angle measure, (b) the
    average over replicates, (c) the scaled minimum angle with its limit
    density, (d) Theta_min + Theta_max with the reference location pi.
    Raw samples are included so the histograms can be re-binned.
    """
    if spec is None:
        spec = ExperimentSpec(kind="figure-data", fig_id=fig_id, replicates=1 if fig_id == 1 else 200)
    start = time.perf_counter()
    if fig_id == 1:
        grid = np.linspace(-4.0, 4.0, 401)
        columns = ["theta"] + [f"h_p{p}" for p in FIGURE1_DIMENSIONS] + ["normal"]
        cols = [grid] + [np.asarray(normalized_angle_density(grid, p)) for p in FIGURE1_DIMENSIONS]
        cols.append(stats.norm.pdf(grid))
        rows = [[float(v) for v in row] for row in zip(*cols)]
        return ExperimentReport(
            spec=spec.to_dict(), cells=[], tables={"fig1": {"columns": columns, "rows": rows}},
            provenance=_provenance(spec, [], start, threads))

    if fig_id not in FIGURE_DESIGNS:
        raise ValueError(f"unknown figure {fig_id}")
    p, n = FIGURE_DESIGNS[fig_id]
    if spec.p:
        p = spec.p[0]
    if spec.n:
        n = spec.n[0]
    reps = spec.replicates

    def one(r):
        angles = pairwise_angles(sample_uniform_sphere(n, p, _seed(spec, r)))
        measure = empirical_measure(angles) if p == 2 else normalized_empirical(angles)
        return measure.samples, extremes(angles)

    results = _run_replicates(one, range(reps), threads)
    pooled = np.concatenate([m for m, _ in results])
    if p == 2:
        edges = np.linspace(0.0, np.pi, bins + 1)

        def measure_density(x):
            return angle_density(x, 2)
    else:
        edges = np.linspace(pooled.min(), pooled.max(), bins + 1)

        def measure_density(x):
            return normalized_angle_density(x, p)

    first = results[0][0]
    table_a = _hist_table(first, edges, measure_density)
    avg = np.mean([np.histogram(m, bins=edges, density=True)[0] for m, _ in results], axis=0)
    table_b = _hist_table(first, edges, measure_density)
    for row, h in zip(table_b["rows"], avg):
        row[3] = float(h)

    scale = n ** (2.0 / (p - 1.0))
    scaled_min = np.array([scale * e.theta_min for _, e in results])
    edges_c = np.linspace(0.0, scaled_min.max(), bins + 1)
    table_c = _hist_table(scaled_min, edges_c, lambda x: fixed_p_extreme_pdf(x, p))
    sums = np.array([e.theta_min + e.theta_max for _, e in results])
    table_d = _hist_table(sums, np.linspace(sums.min(), sums.max(), bins + 1))
    table_d["reference"] = math.pi

    tables = {
        f"fig{fig_id}a": table_a,
        f"fig{fig_id}b": table_b,
        f"fig{fig_id}c": table_c,
        f"fig{fig_id}d": table_d,
        f"fig{fig_id}_raw": {
            "columns": ["replicate", "theta_min", "theta_max", "scaled_theta_min", "sum"],
            "rows": [[r, e.theta_min, e.theta_max, scale * e.theta_min, e.theta_min + e.theta_max]
                     for r, (_, e) in enumerate(results)],
        },
    }
    cells = [{
        "fig_id": fig_id, "n": n, "p": p, "replicates": reps,
        "sum_median": float(np.median(sums)),
        "ks_scaled_min": ks_distance(scaled_min, lambda x: fixed_p_extreme_cdf(x, p)),
    }]
    return ExperimentReport(spec=spec.to_dict(), cells=cells, tables=tables,
                            provenance=_provenance(spec, [{"n": n, "p": p, "first_stream": 0}], start, threads))


def run(spec: ExperimentSpec, threads: int | None = None) -> ExperimentReport:
    """Dispatch on ``spec.kind``."""
    if spec.kind == "power-study":
        return run_power_study(spec, threads)
    if spec.kind == "convergence-study":
        return run_convergence_study(spec, threads)
    if spec.kind == "sum-law-study":
        return run_sum_law_study(spec, threads)
    return figure_data(spec.fig_id, spec, threads)


def load_spec(path) -> ExperimentSpec:
    """Read an experiment configuration (a JSON object of ExperimentSpec fields)."""
    with open(path) as fh:
        try:
            raw = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError([f"{path}: not valid JSON ({exc})"]) from exc
    if not isinstance(raw, dict):
        raise ConfigError([f"{path}: top level must be an object"])
    return ExperimentSpec.from_dict(raw)


def _write_table(path, table):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(table["columns"])
        for row in table["rows"]:
            writer.writerow([repr(v) if isinstance(v, float) else v for v in row])


def write_report(report: ExperimentReport, out_dir) -> list:
    """Write ``report.json`` plus one CSV per table; returns the written paths."""
    os.makedirs(out_dir, exist_ok=True)
    paths = []
    json_path = os.path.join(out_dir, "report.json")
    with open(json_path, "w") as fh:
        json.dump(report.to_dict(), fh, indent=2, sort_keys=True)
        fh.write("\n")
    paths.append(json_path)
    for name, table in report.tables.items():
        path = os.path.join(out_dir, f"{name}.csv")
        _write_table(path, table)
        paths.append(path)
    return paths
