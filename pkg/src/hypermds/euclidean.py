"""Euclidean-plane baseline (a first-order Sammon map).

Uses the identical stopping rules, line search and parameters as the disk
solver so that stress comparisons between the two target spaces are not
confounded by optimiser tuning.  Plane points are stored as complex x + iy.
"""

from __future__ import annotations

import math

import numpy as np

from .linesearch import binary_line_search
from .objective import DissimilarityData, ErrorModel, Objective
from .solver import RunResult, SolverParams, descend, multi_start

__all__ = ["euclid_distance", "euclid_solve", "euclid_multi_start", "random_plane_configuration"]


def _as_complex(p) -> complex:
    if isinstance(p, (tuple, list, np.ndarray)):
        return complex(p[0], p[1])
    return complex(p)


def euclid_distance(p1, p2) -> float:
    """Planar distance; points given as x + iy or as (x, y) pairs."""
    return abs(_as_complex(p1) - _as_complex(p2))


class _Plane:
    metric = "euclidean"

    @staticmethod
    def window(ginf, s_max):
        # a point with gradient g travels r|g|; cap the largest travel at s_max
        return s_max / ginf

    @staticmethod
    def search(z, g, objective, e, params, r0, r_max):
        qprime0 = -float(np.sum(np.abs(g) ** 2))
        return binary_line_search(lambda r: objective.value(z - r * g), e, qprime0, r0, r_max,
                                  params.linesearch.p)

    @staticmethod
    def step(z, g, r):
        return z - r * g


def _as_plane(points) -> np.ndarray:
    z = np.asarray(points)
    if z.ndim == 2 and z.shape[1] == 2:
        z = z[:, 0] + 1j * z[:, 1]
    z = np.array(z, dtype=np.complex128).reshape(-1)
    if z.size < 1 or not np.all(np.isfinite(z)):
        raise ValueError("plane configuration must be nonempty and finite")
    return z


def euclid_solve(init, data: DissimilarityData, model: ErrorModel, params: SolverParams | None = None) -> RunResult:
    """Minimise the embedding error with Euclidean distances in the plane."""
    params = params or SolverParams()
    return descend(_as_plane(init), Objective(data, model, "euclidean"), params, _Plane)


def random_plane_configuration(n: int, seed, radius: float = 0.5) -> np.ndarray:
    """Same draw as the disk initialiser (uniform angle, radius uniform on [0, radius])."""
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    rho = rng.uniform(0.0, radius, n)
    theta = rng.uniform(0.0, 2.0 * math.pi, n)
    return rho * np.exp(1j * theta)


def _plane_replicate(data, model, params, seed_seq):
    # start at the data's own scale so the descent does not spend its budget growing the layout
    known = data.delta[data.indicator == 1]
    radius = 0.5 * model.scale_a * float(np.median(known)) if known.size else 0.5
    return euclid_solve(random_plane_configuration(data.n, seed_seq, radius), data, model, params)


def euclid_multi_start(data, model, params=None, replicates: int = 20, seed: int = 0, workers=None):
    return multi_start(data, model, params, replicates, seed, workers, runner=_plane_replicate)
