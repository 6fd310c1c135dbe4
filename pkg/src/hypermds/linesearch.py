"""Binary (doubling / halving) line search with an affine sufficient-decrease roof.

The same search drives both the disk solver (steps along hyperbolic lines)
and the Euclidean baseline (straight steps); only the function q changes.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field

import numpy as np

from .objective import Objective, inf_norm, move

# Below this the search gives up: the configuration is numerically stationary.
R_FLOOR = 1e-30

# When true every search re-checks its own acceptance contract.  Switched on
# by the test suite (and by HYPERMDS_CHECK_LINESEARCH=1).
CHECK_CONTRACT = os.environ.get("HYPERMDS_CHECK_LINESEARCH", "") not in ("", "0")
# number of searches whose contract was verified in this process
contract_checks = 0


class LineSearchFailure(RuntimeError):
    """No acceptable step above R_FLOOR."""


@dataclass(frozen=True)
class LineSearchParams:
    p: float = 0.1
    r0: float = 1.0

    def __post_init__(self):
        if not 0.0 < self.p < 1.0:
            raise ValueError(f"roof slope fraction p must lie in (0, 1), got {self.p}")
        if not self.r0 > 0.0:
            raise ValueError(f"initial step r0 must be positive, got {self.r0}")


@dataclass
class SearchResult:
    r: float
    q: float
    probes: list = field(default_factory=list)  # (r, q or None, accepted)


def roof_value(q0: float, qprime0: float, p: float, r: float) -> float:
    return q0 + p * qprime0 * r


def binary_line_search(q, q0: float, qprime0: float, r0: float, r_max: float, p: float) -> SearchResult:
    """Return a step r with r < r_max and q(r) < roof(r) whose double is not acceptable.

    Doubles r0 while it stays acceptable, then halves until acceptable.  Steps
    at or beyond r_max are rejected without evaluating q.
    """
    if not qprime0 < 0.0:
        raise ValueError(f"search direction is not a descent direction (q'(0) = {qprime0})")
    probes = []
    seen = {}

    def acceptable(r):
        if r in seen:
            return seen[r]
        if r >= r_max:
            seen[r] = (False, None)
            probes.append((r, None, False))
            return seen[r]
        qr = q(r)
        ok = qr < roof_value(q0, qprime0, p, r)
        seen[r] = (ok, qr)
        probes.append((r, qr, ok))
        return seen[r]

    r = r0
    while acceptable(r)[0]:
        r *= 2.0
    while not acceptable(r)[0]:
        r /= 2.0
        if r < R_FLOOR:
            raise LineSearchFailure(f"no acceptable step above {R_FLOOR:g}")
    result = SearchResult(r, seen[r][1], probes)
    if CHECK_CONTRACT:
        _check_contract(result, seen, q0, qprime0, p, r_max)
    return result


def _check_contract(result, seen, q0, qprime0, p, r_max):
    global contract_checks
    r = result.r
    assert r < r_max, f"returned step {r} not below window {r_max}"
    assert result.q < roof_value(q0, qprime0, p, r), "returned step violates sufficient decrease"
    assert 2 * r in seen and not seen[2 * r][0], "doubled step was not shown to be unacceptable"
    contract_checks += 1


class LineProbe:
    """Error along the bundle of hyperbolic lines z_j(r) = M_j(-r g, z)."""

    def __init__(self, base, g, objective: Objective):
        self.base = np.asarray(base, dtype=np.complex128)
        self.g = np.asarray(g, dtype=np.complex128)
        self.objective = objective
        self.ginf = inf_norm(self.g)
        if not self.ginf > 0.0:
            raise ValueError("line probe needs a nonzero gradient")

    def _check(self, r):
        if not abs(r) * self.ginf < 1.0:
            raise ValueError(f"r*|g|_inf = {abs(r) * self.ginf} >= 1 would leave the disk")

    def moved(self, r: float) -> np.ndarray:
        self._check(r)
        return move(self.base, self.g, r)

    def q(self, r: float) -> float:
        return self.objective.value(self.moved(r))

    def slope(self, r: float) -> float:
        """dq/dr = sum_j Re(M'_j) Re(grad_j) + Im(M'_j) Im(grad_j) at the moved configuration."""
        self._check(r)
        z, g = self.base, self.g
        dm = g * (np.abs(z) ** 2 - 1.0) / (1.0 - r * g * np.conj(z)) ** 2
        _, grad = self.objective.value_and_grad(self.moved(r))
        return float(np.sum(dm.real * grad.real + dm.imag * grad.imag))


def q_eval(probe: LineProbe, r: float) -> float:
    if r < 0:
        raise ValueError("step parameter must be >= 0")
    return probe.q(r)


def q_slope(probe: LineProbe, r: float) -> float:
    if r < 0:
        raise ValueError("step parameter must be >= 0")
    return probe.slope(r)


def hyp_line_search(probe: LineProbe, params: LineSearchParams, r_max: float,
                    q0: float | None = None, r0: float | None = None) -> SearchResult:
    """Binary search for the step parameter along the steepest-descent lines.

    At r = 0 the slope reduces to sum_j (|z_j|^2 - 1)|g_j|^2, which only needs
    the gradient already held by the probe.
    """
    if q0 is None:
        q0 = probe.q(0.0)
    qprime0 = float(np.sum((np.abs(probe.base) ** 2 - 1.0) * np.abs(probe.g) ** 2))
    r_start = params.r0 if r0 is None else r0
    # q is undefined once r|g|_inf reaches 1; r_max from a finite window is always below that
    r_max = min(r_max, math.nextafter(1.0 / probe.ginf, 0.0))
    return binary_line_search(probe.q, q0, qprime0, r_start, r_max, params.p)
