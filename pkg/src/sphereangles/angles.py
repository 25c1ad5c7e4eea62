"""Pairwise angles among points on the sphere and statistics derived from them.

The hot loop is the Gram product over all ``n(n-1)/2`` pairs.  It is computed
in row tiles, and inside a tile the dot products are accumulated one
coordinate at a time in column order.  Every pair therefore sees the same
sequence of floating point operations as a textbook double loop, so results
do not depend on the tile size or on how many workers process the tiles.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .sphere import PointSet

__all__ = [
    "DEFAULT_BLOCK_SIZE",
    "AngleExtremes",
    "AngleSet",
    "EmpiricalMeasure",
    "empirical_measure",
    "extreme_angles",
    "extremes",
    "naive_pairwise_cosines",
    "near_orthogonal_count",
    "normalized_empirical",
    "pairwise_angles",
    "pairwise_cosines",
]

DEFAULT_BLOCK_SIZE = 256


@dataclass(frozen=True, eq=False)
class AngleSet:
    """Cosines and angles of all pairs ``i < j`` in lexicographic order."""

    n: int
    p: int
    cosines: np.ndarray
    angles: np.ndarray

    def __len__(self):
        return self.cosines.size


@dataclass(frozen=True)
class AngleExtremes:
    theta_min: float
    theta_max: float
    m_n: float  # largest cosine, equals cos(theta_min)
    l_np: float  # coherence: largest absolute cosine
    n: int = 0
    p: int = 0


@dataclass(frozen=True, eq=False)
class EmpiricalMeasure:
    """Uniform mixture of point masses at ``samples``."""

    samples: np.ndarray
    kind: str

    def __post_init__(self):
        samples = np.sort(np.asarray(self.samples, dtype=np.float64).ravel())
        if samples.size == 0:
            raise ValueError("empirical measure needs at least one sample")
        samples.setflags(write=False)
        object.__setattr__(self, "samples", samples)

    def __len__(self):
        return self.samples.size

    def ecdf(self, x):
        """Right-continuous empirical CDF evaluated at ``x``."""
        idx = np.searchsorted(self.samples, np.asarray(x, dtype=np.float64), side="right")
        return idx / self.samples.size

    def histogram(self, bins=40, range=None):
        """Density-normalized histogram, returned as ``(edges, heights)``."""
        heights, edges = np.histogram(self.samples, bins=bins, range=range, density=True)
        return edges, heights


def _gram_tile(cols_a: np.ndarray, cols_b: np.ndarray) -> np.ndarray:
    # cols_* are (p, m) views; accumulate sum_k a_k b_k in fixed k order
    out = np.zeros((cols_a.shape[1], cols_b.shape[1]))
    tmp = np.empty_like(out)
    for k in range(cols_a.shape[0]):
        np.multiply(cols_a[k][:, None], cols_b[k][None, :], out=tmp)
        out += tmp
    return out


def _row_blocks(n, block_size):
    if block_size < 1:
        raise ValueError("block_size must be positive")
    return [(start, min(start + block_size, n)) for start in range(0, n, block_size)]


def _map_blocks(func, blocks, workers):
    if workers is None or workers <= 1 or len(blocks) == 1:
        return [func(b) for b in blocks]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, blocks))


def _points_array(points) -> np.ndarray:
    if isinstance(points, PointSet):
        return points.coords
    return PointSet(np.asarray(points)).coords


def pairwise_cosines(points, block_size: int = DEFAULT_BLOCK_SIZE, workers: int | None = None) -> np.ndarray:
    """Clamped dot products of all pairs ``i < j``, lexicographic order."""
    x = _points_array(points)
    n = x.shape[0]
    cols = np.ascontiguousarray(x.T)

    def tile(bounds):
        lo, hi = bounds
        gram = _gram_tile(cols[:, lo:hi], cols[:, lo:])
        upper = np.arange(lo, n)[None, :] > np.arange(lo, hi)[:, None]
        return gram[upper]

    parts = _map_blocks(tile, _row_blocks(n, block_size), workers)
    return np.clip(np.concatenate(parts), -1.0, 1.0)


def naive_pairwise_cosines(points) -> np.ndarray:
    """Reference double loop over pairs; slow, used as an oracle."""
    x = _points_array(points).tolist()
    n = len(x)
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            s = 0.0
            for a, b in zip(x[i], x[j]):
                s += a * b
            out.append(min(1.0, max(-1.0, s)))
    return np.array(out)


def pairwise_angles(points, block_size: int = DEFAULT_BLOCK_SIZE, workers: int | None = None) -> AngleSet:
    x = _points_array(points)
    cosines = pairwise_cosines(x, block_size=block_size, workers=workers)
    angles = np.arccos(cosines)
    cosines.setflags(write=False)
    angles.setflags(write=False)
    return AngleSet(n=x.shape[0], p=x.shape[1], cosines=cosines, angles=angles)


def extremes(angles: AngleSet) -> AngleExtremes:
    if len(angles) == 0:
        raise ValueError("empty AngleSet")
    m_n = float(np.max(angles.cosines))
    return AngleExtremes(
        theta_min=float(np.min(angles.angles)),
        theta_max=float(np.max(angles.angles)),
        m_n=m_n,
        l_np=float(np.max(np.abs(angles.cosines))),
        n=angles.n,
        p=angles.p,
    )


def extreme_angles(points, block_size: int = DEFAULT_BLOCK_SIZE, workers: int | None = None) -> AngleExtremes:
    """Same result as ``extremes(pairwise_angles(points))`` without storing every pair.

    arccos is decreasing, so the extreme angles are the arccos of the
    extreme cosines and agree bit for bit with the full computation.
    """
    x = _points_array(points)
    n = x.shape[0]
    cols = np.ascontiguousarray(x.T)

    def tile(bounds):
        lo, hi = bounds
        if hi - lo == 1 and lo == n - 1:
            return -np.inf, np.inf
        gram = _gram_tile(cols[:, lo:hi], cols[:, lo:])
        upper = np.arange(lo, n)[None, :] > np.arange(lo, hi)[:, None]
        vals = gram[upper]
        return vals.max(), vals.min()

    parts = _map_blocks(tile, _row_blocks(n, block_size), workers)
    hi_cos = min(1.0, max(-1.0, max(v[0] for v in parts)))
    lo_cos = min(1.0, max(-1.0, min(v[1] for v in parts)))
    return AngleExtremes(
        theta_min=float(np.arccos(hi_cos)),
        theta_max=float(np.arccos(lo_cos)),
        m_n=float(hi_cos),
        l_np=float(max(abs(hi_cos), abs(lo_cos))),
        n=n,
        p=x.shape[1],
    )


def empirical_measure(angles: AngleSet) -> EmpiricalMeasure:
    return EmpiricalMeasure(angles.angles, kind="raw-angle")


def normalized_empirical(angles: AngleSet) -> EmpiricalMeasure:
    """Empirical law of ``sqrt(p - 2) * (pi/2 - theta_ij)``."""
    if angles.p < 3:
        raise ValueError(f"dimension too small: normalized angles need p >= 3, got p={angles.p}")
    return EmpiricalMeasure(np.sqrt(angles.p - 2.0) * (np.pi / 2 - angles.angles), kind="normalized")


def near_orthogonal_count(angles: AngleSet, gamma: float) -> int:
    """Number of pairs whose angle is within ``gamma`` of pi/2."""
    if gamma < 0:
        raise ValueError(f"gamma must be nonnegative, got {gamma}")
    return int(np.count_nonzero(np.abs(np.pi / 2 - angles.angles) <= gamma))
