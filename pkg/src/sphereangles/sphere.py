"""Uniform sampling on the unit sphere and the six power-study data generators.

Every sampler is a pure function of its arguments and a :class:`SeedSpec`.
Streams are derived with :class:`numpy.random.SeedSequence` using the
replicate index as the spawn key, and normals come from the PCG64 generator's
ziggurat ``standard_normal``; both choices are fixed so seeds reproduce.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "DISTRIBUTIONS",
    "DataMatrix",
    "PointSet",
    "SeedSpec",
    "make_rng",
    "normalize_rows",
    "sample_dgp",
    "sample_uniform_sphere",
]

_UINT64_MAX = 2**64 - 1

DISTRIBUTIONS = {
    0: "independent standard normal",
    1: "independent uniform on [-1, 1]",
    2: "independent uniform on [0, 1]",
    3: "equicorrelated standard normal, rho = 0.5",
    4: "equicorrelated standard normal, rho = 0.9",
    5: "independent two-sided exponential mixture (2/3 Exp(1), 1/3 -Exp(1))",
}


@dataclass(frozen=True)
class SeedSpec:
    """A master seed plus a replicate identifier.

    The pair is hashed by ``SeedSequence(master_seed, spawn_key=(stream_index,))``,
    which is the same derivation ``SeedSequence.spawn`` uses for child streams,
    so distinct pairs give independent generators without shared state.
    """

    master_seed: int
    stream_index: int = 0

    def __post_init__(self):
        for name in ("master_seed", "stream_index"):
            value = getattr(self, name)
            if not 0 <= int(value) <= _UINT64_MAX:
                raise ValueError(f"{name} must be a 64-bit unsigned integer, got {value}")

    def generator(self) -> np.random.Generator:
        seq = np.random.SeedSequence(int(self.master_seed), spawn_key=(int(self.stream_index),))
        return np.random.Generator(np.random.PCG64(seq))


def make_rng(seed) -> np.random.Generator:
    """Coerce an int, a :class:`SeedSpec` or a Generator into a Generator."""
    if isinstance(seed, np.random.Generator):
        return seed
    if isinstance(seed, SeedSpec):
        return seed.generator()
    return SeedSpec(int(seed)).generator()


@dataclass(frozen=True, eq=False)
class PointSet:
    """``n`` unit vectors in R^p stored as the rows of ``coords``."""

    coords: np.ndarray

    def __post_init__(self):
        coords = np.ascontiguousarray(self.coords, dtype=np.float64)
        if coords.ndim != 2:
            raise ValueError("coords must be a 2-d array")
        n, p = coords.shape
        if n < 2 or p < 2:
            raise ValueError(f"invalid dimension: need n >= 2 and p >= 2, got n={n}, p={p}")
        norms = np.sqrt(np.einsum("ij,ij->i", coords, coords))
        if np.max(np.abs(norms - 1.0)) > 1e-12:
            raise ValueError("rows of a PointSet must have unit Euclidean norm")
        coords.setflags(write=False)
        object.__setattr__(self, "coords", coords)

    @property
    def n(self) -> int:
        return self.coords.shape[0]

    @property
    def p(self) -> int:
        return self.coords.shape[1]


@dataclass(frozen=True, eq=False)
class DataMatrix:
    """Raw observations, one per row, before projection onto the sphere."""

    values: np.ndarray

    def __post_init__(self):
        values = np.ascontiguousarray(self.values, dtype=np.float64)
        if values.ndim != 2:
            raise ValueError("values must be a 2-d array")
        if not np.all(np.isfinite(values)):
            bad = int(np.argwhere(~np.isfinite(values))[0, 0])
            raise ValueError(f"non-finite entry in row {bad}")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def p(self) -> int:
        return self.values.shape[1]


def _check_np(n, p, min_p=2):
    if int(n) < 2 or int(p) < min_p:
        raise ValueError(f"invalid dimension: need n >= 2 and p >= {min_p}, got n={n}, p={p}")


def _unit_rows(values: np.ndarray) -> np.ndarray:
    norms = np.sqrt(np.einsum("ij,ij->i", values, values))
    zero = np.flatnonzero(norms == 0.0)
    if zero.size:
        raise ValueError(f"zero row at index {int(zero[0])}; cannot normalize")
    return values / norms[:, None]


def sample_uniform_sphere(n: int, p: int, seed) -> PointSet:
    """Draw ``n`` independent uniform points on S^{p-1}.

    Rows are N_p(0, I) vectors divided by their norms.
    """
    _check_np(n, p)
    rng = make_rng(seed)
    gauss = rng.standard_normal((int(n), int(p)))
    return PointSet(_unit_rows(gauss))


def _equicorrelated(rng, n, p, rho):
    # one-factor form: X_j = sqrt(rho) Z_0 + sqrt(1 - rho) Z_j
    common = rng.standard_normal((n, 1))
    own = rng.standard_normal((n, p))
    return np.sqrt(rho) * common + np.sqrt(1.0 - rho) * own


def sample_dgp(dist_id: int, n: int, p: int, seed) -> DataMatrix:
    """Sample an ``n x p`` matrix from one of the six power-study distributions.

    See :data:`DISTRIBUTIONS` for the catalogue. ``p = 1`` is allowed so the
    marginal laws can be checked on their own.
    """
    if dist_id not in DISTRIBUTIONS:
        raise ValueError(f"unknown distribution id {dist_id!r}; expected one of 0..5")
    if int(n) < 1 or int(p) < 1:
        raise ValueError(f"invalid dimension: n={n}, p={p}")
    n, p = int(n), int(p)
    rng = make_rng(seed)
    if dist_id == 0:
        values = rng.standard_normal((n, p))
    elif dist_id == 1:
        values = rng.uniform(-1.0, 1.0, (n, p))
    elif dist_id == 2:
        values = rng.uniform(0.0, 1.0, (n, p))
    elif dist_id == 3:
        values = _equicorrelated(rng, n, p, 0.5)
    elif dist_id == 4:
        values = _equicorrelated(rng, n, p, 0.9)
    else:
        magnitude = rng.standard_exponential((n, p))
        sign = np.where(rng.uniform(size=(n, p)) < 2.0 / 3.0, 1.0, -1.0)
        values = sign * magnitude
    return DataMatrix(values)


def normalize_rows(data) -> PointSet:
    """Project each row of ``data`` onto the unit sphere.

    Raises ``ValueError`` naming the first all-zero row; such rows are never
    dropped because that would silently change ``n``.
    """
    values = data.values if isinstance(data, DataMatrix) else DataMatrix(np.asarray(data)).values
    return PointSet(_unit_rows(values))
