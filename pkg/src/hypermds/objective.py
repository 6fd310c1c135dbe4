"""Dissimilarity data, least-squares embedding errors and their gradients."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .geometry import as_configuration, clamp_to_disk, pairwise_distances

# placeholder written into delta / weights where a dissimilarity is missing
MISSING_PLACEHOLDER = 1.0


class DegenerateConfigurationError(ValueError):
    """Two points of an active pair coincide; the stress is not differentiable there."""


class Variant(str, enum.Enum):
    ADS = "ads"
    RDS = "rds"
    SAM = "sam"
    GENERAL = "general"


@dataclass(frozen=True, eq=False)
class DissimilarityData:
    """Target dissimilarities, pair weights and 0/1 indicators of known entries.

    Entries with ``indicator == 0`` are missing; their delta and weight are
    overwritten with a finite placeholder and never contribute to any sum.
    """

    delta: np.ndarray
    weights: np.ndarray = None
    indicator: np.ndarray = None

    def __post_init__(self):
        delta = np.array(self.delta, dtype=float)
        if delta.ndim != 2 or delta.shape[0] != delta.shape[1]:
            raise ValueError(f"dissimilarity matrix must be square, got shape {delta.shape}")
        n = delta.shape[0]
        if n < 1:
            raise ValueError("empty dissimilarity matrix")
        if self.indicator is None:
            ind = np.isfinite(delta).astype(float)
        else:
            ind = np.array(self.indicator, dtype=float)
        if ind.shape != delta.shape or not np.isin(ind, (0.0, 1.0)).all():
            raise ValueError("indicator must be a 0/1 matrix shaped like delta")
        if not np.array_equal(ind, ind.T):
            raise ValueError("indicator matrix is not symmetric")
        np.fill_diagonal(ind, 0.0)
        if self.weights is None:
            w = np.ones_like(delta)
        else:
            w = np.array(self.weights, dtype=float)
            if w.shape != delta.shape:
                raise ValueError("weights must have the same shape as delta")
        active = ind == 1.0
        delta = np.where(active, delta, MISSING_PLACEHOLDER)
        w = np.where(active, w, MISSING_PLACEHOLDER)
        np.fill_diagonal(delta, 0.0)
        _check_active(delta, active, "dissimilarity")
        _check_active(w, active, "weight")
        if np.any(delta[active] <= 0.0):
            j, k = np.argwhere(active & (delta <= 0.0))[0]
            raise ValueError(f"dissimilarity ({j},{k}) = {delta[j, k]} must be > 0")
        if np.any(w[active] < 0.0):
            j, k = np.argwhere(active & (w < 0.0))[0]
            raise ValueError(f"weight ({j},{k}) = {w[j, k]} must be >= 0")
        if n > 1:
            lonely = np.flatnonzero(~active.any(axis=1))
            if lonely.size:
                raise ValueError(f"point {lonely[0]} has no known dissimilarity")
        for arr in (delta, w, ind):
            arr.setflags(write=False)
        object.__setattr__(self, "delta", delta)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "indicator", ind)

    @property
    def n(self) -> int:
        return self.delta.shape[0]

    @property
    def n_known_pairs(self) -> int:
        return int(np.triu(self.indicator, 1).sum())

    def with_delta(self, delta) -> "DissimilarityData":
        return DissimilarityData(delta, self.weights, self.indicator)

    def masked(self, j: int, k: int) -> "DissimilarityData":
        """Copy with pair (j, k) marked as missing."""
        ind = self.indicator.copy()
        ind[j, k] = ind[k, j] = 0.0
        return DissimilarityData(self.delta, self.weights, ind)


def _check_active(m, active, what):
    if not np.all(np.isfinite(m[active])):
        j, k = np.argwhere(active & ~np.isfinite(m))[0]
        raise ValueError(f"{what} ({j},{k}) is not finite")
    asym = np.abs(m - m.T)
    if np.any(asym[active] > 1e-9 * np.maximum(1.0, np.abs(m[active]))):
        j, k = np.argwhere(active & (asym > 1e-9 * np.maximum(1.0, np.abs(m))))[0]
        raise ValueError(f"{what} matrix is not symmetric at ({j},{k})")


@dataclass(frozen=True, eq=False)
class ErrorModel:
    """Which least-squares error to minimise, at dissimilarity scale ``scale_a``.

    ``GENERAL`` evaluates c * sum_{j<k} c_jk (d_jk - a delta_jk)^2 with the
    caller's ``c`` and ``c_pair`` (pairs with a missing dissimilarity are
    masked out regardless of ``c_pair``).
    """

    variant: Variant = Variant.SAM
    scale_a: float = 1.0
    normalize_per_pair: bool = False
    c: float = 1.0
    c_pair: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "variant", Variant(self.variant))
        if not self.scale_a > 0:
            raise ValueError(f"scale factor must be positive, got {self.scale_a}")
        if self.variant is Variant.GENERAL and self.c_pair is None:
            raise ValueError("GENERAL error model needs a c_pair matrix")

    def with_scale(self, a: float) -> "ErrorModel":
        return ErrorModel(self.variant, a, self.normalize_per_pair, self.c, self.c_pair)


def _pair_divisor(n: int) -> float:
    return (n * n - n) / 2.0 if n > 1 else 1.0


def coefficients(data: DissimilarityData, model: ErrorModel) -> tuple[float, np.ndarray]:
    """(c, c_jk) that turn the chosen variant into the general form."""
    a = model.scale_a
    active = data.indicator
    w = data.weights
    if model.variant is Variant.ADS:
        c, cjk = 1.0, w * active
    elif model.variant is Variant.RDS:
        cjk = w * active / (a * data.delta + (1 - active)) ** 2
        c = 1.0
    elif model.variant is Variant.SAM:
        total = np.triu(active * data.delta, 1).sum()
        c = 1.0 / (a * total)
        cjk = w * active / (a * data.delta + (1 - active))
    else:
        cjk = np.asarray(model.c_pair, dtype=float) * active
        c = float(model.c)
    cjk = np.where(active == 1.0, cjk, 0.0)
    if model.normalize_per_pair:
        c /= _pair_divisor(data.n)
    return c, np.ascontiguousarray(cjk)


def distance_matrix(config) -> np.ndarray:
    return pairwise_distances(config)


def embedding_error(config, data: DissimilarityData, model: ErrorModel) -> float:
    """Embedding error of ``config``, summed over the known pairs j < k."""
    return Objective(data, model).value(as_configuration(config))


class Objective:
    """Data and error model bound together for repeated evaluation.

    ``metric`` selects hyperbolic (Poincare disk) or Euclidean distances.
    """

    def __init__(self, data: DissimilarityData, model: ErrorModel, metric: str = "hyperbolic"):
        if metric not in ("hyperbolic", "euclidean"):
            raise ValueError(f"unknown metric {metric!r}")
        self.data = data
        self.model = model
        self.metric = metric
        self.c, self.coef = coefficients(data, model)
        self._delta = np.ascontiguousarray(data.delta)
        self._kernel = _kernels.hyperbolic_stress if metric == "hyperbolic" else _kernels.euclidean_stress

    def _run(self, z, want_grad):
        z = np.ascontiguousarray(z, dtype=np.complex128)
        if z.shape != (self.data.n,):
            raise ValueError(f"configuration has {z.size} points, data has {self.data.n}")
        e, g, status = self._kernel(z, self._delta, self.coef, self.c, self.model.scale_a, want_grad)
        if status == _kernels.COINCIDENT:
            raise DegenerateConfigurationError("two points of a known pair coincide")
        return e, g

    def value(self, z) -> float:
        return self._run(z, False)[0]

    def value_and_grad(self, z) -> tuple[float, np.ndarray]:
        return self._run(z, True)


def gradient(config, data: DissimilarityData, model: ErrorModel) -> np.ndarray:
    """Packed gradient dE/dy_{j,1} + i dE/dy_{j,2} for every point."""
    return Objective(data, model).value_and_grad(as_configuration(config))[1]


def error_and_gradient(config, data: DissimilarityData, model: ErrorModel) -> tuple[float, np.ndarray]:
    return Objective(data, model).value_and_grad(as_configuration(config))


def inf_norm(g) -> float:
    return float(np.max(np.abs(g))) if len(g) else 0.0


def move(z, g, r: float) -> np.ndarray:
    """z_j -> (z_j - r g_j) / (1 - r g_j conj(z_j)); negative r walks up the gradient."""
    z = np.asarray(z, dtype=np.complex128)
    rg = r * np.asarray(g, dtype=np.complex128)
    return clamp_to_disk((z - rg) / (1.0 - rg * np.conj(z)))


def apply_step(config, g, r: float) -> np.ndarray:
    """Move every point along the hyperbolic line in direction -g_j."""
    if r < 0:
        raise ValueError("step parameter must be >= 0")
    if r * inf_norm(g) >= 1.0:
        raise ValueError(f"r*|g|_inf = {r * inf_norm(g)} >= 1 would leave the disk")
    out = move(config, g, r)
    out.setflags(write=False)
    return out
