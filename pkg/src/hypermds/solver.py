"""Steepest descent along hyperbolic lines, replicated runs and the scale sweep."""

from __future__ import annotations

import enum
import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .geometry import as_configuration, max_step_param, pairwise_distances
from .linesearch import LineProbe, LineSearchFailure, LineSearchParams, hyp_line_search
from .objective import DissimilarityData, ErrorModel, Objective, inf_norm, move

log = logging.getLogger(__name__)


class StopReason(str, enum.Enum):
    ERROR_BELOW_EPS = "error_below_eps"
    SLOW_PROGRESS = "slow_progress"
    SMALL_GRADIENT = "small_gradient"
    SMALL_STEP_WINDOW = "small_step_window"
    ITERATION_CAP = "iteration_cap"
    STATIONARY_LINESEARCH = "stationary_linesearch"


@dataclass(frozen=True)
class SolverParams:
    eps_E: float = 1e-6
    eps_dE: float = 1e-9
    eps_g: float = 1e-9
    eps_r: float = 1e-12
    T_M: int = 1000
    s_M: float = 10.0
    linesearch: LineSearchParams = field(default_factory=LineSearchParams)
    # keep the probed step values of every line search in the trace
    record_probes: bool = False
    # keep the configuration after every iteration (for trajectory plots)
    record_path: bool = False

    def __post_init__(self):
        for name in ("eps_E", "eps_dE", "eps_g", "eps_r", "s_M"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if int(self.T_M) != self.T_M or self.T_M < 1:
            raise ValueError("T_M must be a positive integer")


@dataclass(frozen=True)
class IterationRecord:
    t: int
    E: float
    r: float
    g_inf: float
    r_over_rM: float
    probes: tuple = ()


@dataclass
class RunResult:
    final_config: np.ndarray
    final_error: float
    stop_reason: StopReason
    trace: list
    initial_config: np.ndarray | None = None
    path: list | None = None
    replicate: int | None = None

    @property
    def iterations(self) -> int:
        return len(self.trace)


def random_configuration(n: int, seed, radius: float = 0.5, min_separation: float = 1e-6) -> np.ndarray:
    """n points with uniform angle and Euclidean radius uniform on [0, radius].

    ``seed`` may be an int, a SeedSequence or a Generator.  Any point closer
    than ``min_separation`` (hyperbolic) to an earlier one is redrawn.
    """
    if n < 1:
        raise ValueError("need at least one point")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)

    def draw(m):
        rho = rng.uniform(0.0, radius, m)
        theta = rng.uniform(0.0, 2.0 * math.pi, m)
        return rho * np.exp(1j * theta)

    z = draw(n)
    for _ in range(1000):
        d = pairwise_distances(z)
        np.fill_diagonal(d, np.inf)
        bad = np.flatnonzero(np.any(np.tril(d < min_separation), axis=1))
        if not bad.size:
            return as_configuration(z)
        z[bad] = draw(bad.size)
    raise RuntimeError("could not separate the initial points")


class _Geometry:
    """Hooks that differ between the disk and the plane."""

    metric = "hyperbolic"

    @staticmethod
    def window(ginf, s_max):
        return max_step_param(ginf, s_max)

    @staticmethod
    def search(z, g, objective, e, params, r0, r_max):
        return hyp_line_search(LineProbe(z, g, objective), params.linesearch, r_max, q0=e, r0=r0)

    @staticmethod
    def step(z, g, r):
        return move(z, g, r)


def descend(init, objective: Objective, params: SolverParams, geometry=_Geometry) -> RunResult:
    """Run the descent loop from ``init`` until one of the stopping rules fires."""
    z = np.array(init, dtype=np.complex128)
    if z.shape != (objective.data.n,):
        raise ValueError(f"initial configuration has {z.size} points, data has {objective.data.n}")
    trace = []
    path = [z.copy()] if params.record_path else None
    e_prev = math.inf
    r0 = params.linesearch.r0
    t = 1
    reason = None
    while True:
        e, g = objective.value_and_grad(z)
        ginf = inf_norm(g)
        r_max = geometry.window(ginf, params.s_M) if ginf > 0 else 0.0
        if e < params.eps_E:
            reason = StopReason.ERROR_BELOW_EPS
        elif e_prev - e < params.eps_dE:
            reason = StopReason.SLOW_PROGRESS
        elif ginf < params.eps_g:
            reason = StopReason.SMALL_GRADIENT
        elif r_max < params.eps_r:
            reason = StopReason.SMALL_STEP_WINDOW
        elif t > params.T_M:
            reason = StopReason.ITERATION_CAP
        if reason is not None:
            break
        e_prev = e
        try:
            found = geometry.search(z, g, objective, e, params, r0, r_max)
        except LineSearchFailure:
            reason = StopReason.STATIONARY_LINESEARCH
            break
        r = found.r
        probes = tuple(p[0] for p in found.probes) if params.record_probes else ()
        trace.append(IterationRecord(t, e, r, ginf, r / r_max, probes))
        z = geometry.step(z, g, r)
        if path is not None:
            path.append(z.copy())
        r0 = r
        t += 1
    final = objective.value(z)
    z.setflags(write=False)
    return RunResult(z, final, reason, trace, np.asarray(init), path)


def solve(init, data: DissimilarityData, model: ErrorModel, params: SolverParams | None = None) -> RunResult:
    """Minimise the embedding error in the Poincare disk starting from ``init``."""
    params = params or SolverParams()
    init = as_configuration(init)
    return descend(init, Objective(data, model, "hyperbolic"), params, _Geometry)


def replicate_seed(seed: int, i: int) -> np.random.SeedSequence:
    """Independent stream for replicate ``i`` of a run seeded with ``seed``."""
    return np.random.SeedSequence(entropy=seed, spawn_key=(i,))


def worker_count() -> int:
    env = os.environ.get("HYPERMDS_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _run_replicate(job):
    runner, data, model, params, seed, i = job
    res = runner(data, model, params, replicate_seed(seed, i))
    res.replicate = i
    return res


def _disk_replicate(data, model, params, seed_seq):
    return solve(random_configuration(data.n, seed_seq), data, model, params)


@dataclass
class MultiStartResult:
    results: list
    best: RunResult

    @property
    def best_error(self) -> float:
        return self.best.final_error


def _fan_out(jobs, workers):
    if workers <= 1 or len(jobs) == 1:
        return [_run_replicate(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_replicate, jobs))


def _best(results):
    return min(results, key=lambda r: (r.final_error, r.replicate))


def multi_start(data, model, params=None, replicates: int = 20, seed: int = 0,
                workers: int | None = None, runner=_disk_replicate) -> MultiStartResult:
    """Solve from ``replicates`` seeded random starts and keep the lowest error."""
    if replicates < 1:
        raise ValueError("need at least one replicate")
    params = params or SolverParams()
    workers = worker_count() if workers is None else workers
    jobs = [(runner, data, model, params, seed, i) for i in range(replicates)]
    results = sorted(_fan_out(jobs, workers), key=lambda r: r.replicate)
    return MultiStartResult(results, _best(results))


def default_scale_grid(lo: float = 1e-2, hi: float = 1e1, steps: int = 40) -> np.ndarray:
    return np.logspace(math.log10(lo), math.log10(hi), steps)


def scale_sweep(data, model_template: ErrorModel, params=None, a_grid=None, replicates: int = 70,
                seed: int = 0, workers: int | None = None, runner=_disk_replicate) -> list:
    """Best error at every scale factor in ``a_grid`` (same replicate seeds for each a)."""
    a_grid = default_scale_grid() if a_grid is None else sorted(float(a) for a in a_grid)
    if not len(a_grid) or min(a_grid) <= 0:
        raise ValueError("scale grid must be nonempty and positive")
    out = []
    for a in a_grid:
        ms = multi_start(data, model_template.with_scale(a), params, replicates, seed, workers, runner)
        log.info("a=%.6g best=%.6g", a, ms.best_error)
        out.append((a, ms.best_error))
    return out
