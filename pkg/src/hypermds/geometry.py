"""Poincare disk primitives.

Points of the disk are plain Python/numpy complex numbers; a configuration
is a 1-d complex128 array of length n.  Everything here is a pure function.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

# Largest modulus any point may have after construction or a move.
MAX_RADIUS = 1.0 - 1e-12

_MIN_DIRECTION = 1e-15
_MIN_DETERMINANT = 1e-15


def clamp_to_disk(z):
    """Pull points with |z| > MAX_RADIUS back onto that circle (same argument)."""
    if np.isscalar(z):
        z = complex(z)
        m = abs(z)
        if m > MAX_RADIUS:
            return z * (MAX_RADIUS / m)
        return z
    z = np.asarray(z, dtype=np.complex128)
    m = np.abs(z)
    over = m > MAX_RADIUS
    if over.any():
        z = z.copy()
        z[over] *= MAX_RADIUS / m[over]
    return z


def disk_point(re: float, im: float = 0.0) -> complex:
    z = complex(re, im)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"non-finite disk point {z!r}")
    if abs(z) >= 1.0:
        raise ValueError(f"point {z!r} is not inside the unit disk")
    return clamp_to_disk(z)


def as_configuration(points) -> np.ndarray:
    """Validate and copy a sequence of disk points into a read-only array."""
    z = np.array(points, dtype=np.complex128).reshape(-1)
    if z.size < 1:
        raise ValueError("a configuration needs at least one point")
    if not np.all(np.isfinite(z)):
        raise ValueError("configuration contains non-finite coordinates")
    bad = np.flatnonzero(np.abs(z) >= 1.0)
    if bad.size:
        raise ValueError(f"point {bad[0]} lies outside the open unit disk")
    z = clamp_to_disk(z)
    z.setflags(write=False)
    return z


def direction(v: complex) -> complex:
    """Unit complex number pointing along ``v``."""
    v = complex(v)
    m = abs(v)
    if not m >= _MIN_DIRECTION:
        raise ValueError("cannot take the direction of a (near) zero vector")
    return v / m


def _one_minus_sq(m):
    # 1 - m**2 without cancellation near the boundary
    return (1.0 - m) * (1.0 + m)


def hyp_distance(z1: complex, z2: complex) -> float:
    """Hyperbolic distance between two disk points.

    Evaluated as 2*asinh(|z1 - z2| / sqrt((1-|z1|^2)(1-|z2|^2))), which is the
    same quantity as 2*atanh(|z1 - z2| / |1 - z1*conj(z2)|) but stays finite
    and accurate for points pressed against the boundary.
    """
    diff = abs(complex(z1) - complex(z2))
    if diff == 0.0:
        return 0.0
    b = _one_minus_sq(abs(z1)) * _one_minus_sq(abs(z2))
    return 2.0 * math.asinh(diff / math.sqrt(b))


def pairwise_distances(z) -> np.ndarray:
    """Matrix of hyperbolic distances for a configuration (vectorised)."""
    z = np.asarray(z, dtype=np.complex128)
    m = np.abs(z)
    nz = _one_minus_sq(m)
    diff = np.abs(z[:, None] - z[None, :])
    d = 2.0 * np.arcsinh(diff / np.sqrt(np.outer(nz, nz)))
    np.fill_diagonal(d, 0.0)
    return d


@dataclass(frozen=True)
class MobiusTransform:
    """Disk-preserving map z -> (a z + b) / (conj(b) z + conj(a))."""

    a: complex
    b: complex

    def __post_init__(self):
        object.__setattr__(self, "a", complex(self.a))
        object.__setattr__(self, "b", complex(self.b))
        det = abs(self.a) ** 2 - abs(self.b) ** 2
        if abs(det) <= _MIN_DETERMINANT:
            raise ValueError("degenerate Mobius transform: |a|^2 - |b|^2 ~ 0")
        if det < 0:
            # maps the disk onto its exterior; not an isometry of the disk
            raise ValueError("|a| must exceed |b| for a disk automorphism")

    def __call__(self, z):
        if np.isscalar(z):
            return mobius_apply(self, z)
        z = np.asarray(z, dtype=np.complex128)
        w = (self.a * z + self.b) / (self.b.conjugate() * z + self.a.conjugate())
        return clamp_to_disk(w)

    @classmethod
    def random(cls, rng: np.random.Generator) -> "MobiusTransform":
        """Rotation composed with a translation of the origin to |b/a| < 0.95."""
        theta = rng.uniform(0.0, 2.0 * math.pi)
        shift = rng.uniform(0.0, 0.95) * cmath.exp(1j * rng.uniform(0.0, 2.0 * math.pi))
        a = cmath.exp(1j * theta / 2)
        return cls(a, shift * a.conjugate())


def mobius_apply(t: MobiusTransform, z: complex) -> complex:
    z = complex(z)
    w = (t.a * z + t.b) / (t.b.conjugate() * z + t.a.conjugate())
    return clamp_to_disk(w)


def geodesic_move(z0: complex, gamma: complex, s: float) -> complex:
    """Travel hyperbolic distance ``s`` from ``z0`` along unit direction ``gamma``."""
    if not (s >= 0.0 and math.isfinite(s)):
        raise ValueError(f"travel distance must be finite and >= 0, got {s}")
    gamma = direction(gamma)
    z0 = complex(z0)
    u = gamma * math.tanh(s / 2.0)
    return clamp_to_disk((u + z0) / (z0.conjugate() * u + 1.0))


def step_to_distance(r: float, gmag: float) -> float:
    """Hyperbolic length travelled by a point whose gradient has modulus ``gmag``."""
    x = r * gmag
    if not x < 1.0:
        raise ValueError(f"r*|g| = {x} >= 1 would leave the disk")
    if x < 0.0:
        raise ValueError("step parameter and gradient modulus must be >= 0")
    # ln((1+x)/(1-x)) == 2*atanh(x)
    return 2.0 * math.atanh(x)


def max_step_param(ginf: float, s_max: float) -> float:
    """Largest step parameter keeping every point within ``s_max`` of its start."""
    if not ginf > 0.0:
        raise ValueError("gradient inf-norm must be positive")
    return math.tanh(s_max / 2.0) / ginf
