"""Synthetic dissimilarities, graph ingestion and the on-disk formats.

Formats
-------
* dissimilarity matrix: n lines of n comma-separated numbers, no header;
  an empty field or ``NaN`` marks a missing dissimilarity.
* edge list: ``u v [weight]`` per line, whitespace separated, ``#`` comments.
* configuration: header ``index,re,im``, 17 significant digits.
* trace: header ``t,E,r,g_inf,r_over_rM``.
"""

from __future__ import annotations

import csv
import enum
import io
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components, shortest_path

from .geometry import as_configuration, pairwise_distances
from .objective import DissimilarityData

_FMT = "{:.17g}"


class SurfaceKind(str, enum.Enum):
    EUCLIDEAN_PLANE = "euclidean"
    SPHERE = "spherical"
    HYPERBOLIC_PD = "hyperbolic"


@dataclass(frozen=True)
class SyntheticSpec:
    kind: SurfaceKind
    n: int
    noise_e_m: float = 0.0
    seed: int = 0
    sphere_radius: float = 1.0
    # Euclidean radius bound for points sampled in the disk
    disk_radius: float = 0.9

    def __post_init__(self):
        object.__setattr__(self, "kind", SurfaceKind(self.kind))
        if self.n < 2:
            raise ValueError("need at least two points")
        if not 0.0 <= self.noise_e_m < 1.0:
            raise ValueError(f"noise level must lie in [0, 1), got {self.noise_e_m}")
        if not self.sphere_radius > 0:
            raise ValueError("sphere radius must be positive")


def sample_surface(spec: SyntheticSpec) -> np.ndarray:
    """Points on the chosen surface: complex (plane, disk) or (n, 3) array (sphere)."""
    rng = np.random.default_rng(np.random.SeedSequence(spec.seed, spawn_key=(0,)))
    if spec.kind is SurfaceKind.EUCLIDEAN_PLANE:
        xy = rng.uniform(0.0, 1.0, (spec.n, 2))
        return xy[:, 0] + 1j * xy[:, 1]
    if spec.kind is SurfaceKind.SPHERE:
        return spec.sphere_radius * _marsaglia(rng, spec.n)
    rho = rng.uniform(0.0, spec.disk_radius, spec.n)
    theta = rng.uniform(0.0, 2.0 * math.pi, spec.n)
    return as_configuration(rho * np.exp(1j * theta))


def _marsaglia(rng, n):
    out = np.empty((n, 3))
    filled = 0
    while filled < n:
        u, v = rng.uniform(-1.0, 1.0, 2)
        s = u * u + v * v
        if s >= 1.0 or s == 0.0:
            continue
        f = 2.0 * math.sqrt(1.0 - s)
        out[filled] = (u * f, v * f, 1.0 - 2.0 * s)
        filled += 1
    return out


def surface_distances(kind: SurfaceKind, points, sphere_radius: float = 1.0) -> np.ndarray:
    kind = SurfaceKind(kind)
    if kind is SurfaceKind.EUCLIDEAN_PLANE:
        return np.abs(points[:, None] - points[None, :])
    if kind is SurfaceKind.SPHERE:
        unit = points / np.linalg.norm(points, axis=1, keepdims=True)
        # atan2 form keeps small and near-antipodal angles accurate
        cross = np.linalg.norm(np.cross(unit[:, None, :], unit[None, :, :]), axis=2)
        dot = unit @ unit.T
        ang = np.arctan2(cross, dot)
        np.fill_diagonal(ang, 0.0)
        return sphere_radius * ang
    return pairwise_distances(points)


def generate_synthetic(spec: SyntheticSpec) -> DissimilarityData:
    """Full matrix of surface geodesic distances between random points, optionally noisy."""
    pts = sample_surface(spec)
    data = DissimilarityData(surface_distances(spec.kind, pts, spec.sphere_radius))
    if spec.noise_e_m > 0:
        data = add_noise(data, spec.noise_e_m, np.random.SeedSequence(spec.seed, spawn_key=(1,)))
    return data


def add_noise(data: DissimilarityData, e_m: float, seed) -> DissimilarityData:
    """Redraw each known delta uniformly from [(1-e_m) delta, (1+e_m) delta].

    The draw is delta * (1 + e_m * u) with u ~ U[-1, 1]; for a fixed seed the
    same u is used at every noise level.
    """
    if not 0.0 <= e_m < 1.0:
        raise ValueError(f"noise level must lie in [0, 1), got {e_m}")
    if e_m == 0.0:
        return data
    rng = np.random.default_rng(seed)
    n = data.n
    iu = np.triu_indices(n, 1)
    u = rng.uniform(-1.0, 1.0, iu[0].size)
    delta = data.delta.copy()
    upper = delta[iu] * (1.0 + e_m * u)
    active = data.indicator[iu] == 1
    delta[iu] = np.where(active, upper, delta[iu])
    delta[(iu[1], iu[0])] = delta[iu]
    return DissimilarityData(delta, data.weights, data.indicator)


class GraphMode(str, enum.Enum):
    BINARY = "binary"
    CONST_MINUS_WEIGHT = "const-minus-weight"
    SHORTEST_PATH = "shortest-path"


@dataclass(frozen=True)
class GraphInput:
    """Undirected graph as an edge list; ``nodes`` fixes ordering and keeps isolated nodes."""

    edges: list
    mode: GraphMode = GraphMode.BINARY
    nodes: tuple | None = None
    mapping: dict = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "mode", GraphMode(self.mode))
        edges = []
        for e in self.edges:
            u, v = e[0], e[1]
            w = e[2] if len(e) > 2 else None
            if u == v:
                raise ValueError(f"self-loop on node {u!r}")
            if w is not None and not (w > 0 and math.isfinite(w)):
                raise ValueError(f"edge ({u!r}, {v!r}) has non-positive weight {w}")
            edges.append((u, v, w))
        object.__setattr__(self, "edges", edges)
        nodes = set(self.nodes or ())
        for u, v, _ in edges:
            nodes.update((u, v))
        ordered = tuple(self.nodes) if self.nodes is not None else tuple(sorted(nodes))
        if set(ordered) != nodes:
            missing = sorted(nodes - set(ordered), key=str)
            raise ValueError(f"edge endpoints missing from node list: {missing[:5]}")
        object.__setattr__(self, "nodes", ordered)

    @property
    def n(self) -> int:
        return len(self.nodes)

    def index(self) -> dict:
        return {u: i for i, u in enumerate(self.nodes)}

    def adjacency(self, weighted: bool = True):
        idx = self.index()
        rows, cols, vals = [], [], []
        for u, v, w in self.edges:
            x = (1.0 if w is None else w) if weighted else 1.0
            rows += [idx[u], idx[v]]
            cols += [idx[v], idx[u]]
            vals += [x, x]
        return coo_matrix((vals, (rows, cols)), shape=(self.n, self.n)).tocsr()


def largest_connected_component(g: GraphInput) -> GraphInput:
    """Subgraph on the biggest component; ties go to the component holding the smallest node id.

    Nodes are renumbered 0..m-1 in their original order; ``mapping`` maps new
    index -> original id.
    """
    if g.n == 0:
        raise ValueError("empty graph")
    _, labels = connected_components(g.adjacency(), directed=False)
    sizes = np.bincount(labels)
    candidates = np.flatnonzero(sizes == sizes.max())

    def smallest_id(lab):
        return min(u for u, l in zip(g.nodes, labels) if l == lab)

    keep = min(candidates, key=smallest_id) if candidates.size > 1 else candidates[0]
    kept = [u for u, l in zip(g.nodes, labels) if l == keep]
    new_id = {u: i for i, u in enumerate(kept)}
    edges = [(new_id[u], new_id[v], w) for u, v, w in g.edges if u in new_id]
    return GraphInput(edges, g.mode, tuple(range(len(kept))), mapping={i: u for u, i in new_id.items()})


def graph_to_dissimilarity(g: GraphInput) -> DissimilarityData:
    n = g.n
    if g.mode is GraphMode.SHORTEST_PATH:
        dist = shortest_path(g.adjacency(), method="D", directed=False)
        unreachable = int(np.isinf(np.triu(dist, 1)).sum())
        if unreachable:
            raise ValueError(f"graph is disconnected: {unreachable} node pairs are unreachable")
        return DissimilarityData(dist)
    delta = np.full((n, n), np.nan)
    ind = np.zeros((n, n))
    idx = g.index()
    if g.mode is GraphMode.CONST_MINUS_WEIGHT:
        weights = [w for _, _, w in g.edges if w is not None]
        if len(weights) != len(g.edges):
            raise ValueError("const-minus-weight mode needs a weight on every edge")
        const = max(weights) + 1.0
    for u, v, w in g.edges:
        j, k = idx[u], idx[v]
        val = 1.0 if g.mode is GraphMode.BINARY else const - w
        delta[j, k] = delta[k, j] = val
        ind[j, k] = ind[k, j] = 1.0
    np.fill_diagonal(delta, 0.0)
    return DissimilarityData(delta, indicator=ind)


def _node_id(tok: str):
    try:
        return int(tok)
    except ValueError:
        return tok


def read_edge_list(path, mode=GraphMode.BINARY) -> GraphInput:
    edges = []
    seen = set()
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) not in (2, 3):
                raise ValueError(f"{path}:{lineno}: expected 'u v [weight]'")
            u, v = _node_id(parts[0]), _node_id(parts[1])
            key = frozenset((u, v))
            if key in seen:
                continue
            seen.add(key)
            edges.append((u, v, float(parts[2]) if len(parts) == 3 else None))
    kinds = {type(u) for e in edges for u in e[:2]}
    if len(kinds) > 1:
        # mixed numeric / text ids: compare everything as text
        edges = [(str(u), str(v), w) for u, v, w in edges]
    return GraphInput(edges, mode)


def read_dissimilarity_csv(path, weights_path=None) -> DissimilarityData:
    """Read a square matrix; blank or NaN cells become missing dissimilarities."""
    delta = _read_matrix(path)
    n = delta.shape[0]
    known = np.isfinite(delta)
    if not np.all(np.diag(known)) or np.any(np.diag(delta) != 0.0):
        j = int(np.flatnonzero(~known.diagonal() | (np.nan_to_num(delta.diagonal(), nan=1.0) != 0))[0])
        raise ValueError(f"{path}: diagonal entry ({j},{j}) must be 0")
    if not np.array_equal(known, known.T):
        j, k = np.argwhere(known != known.T)[0]
        raise ValueError(f"{path}: entry ({j},{k}) is missing but ({k},{j}) is not")
    filled = np.where(known, delta, 0.0)
    asym = np.abs(filled - filled.T)
    if np.any(asym > 1e-9):
        j, k = np.argwhere(asym > 1e-9)[0]
        raise ValueError(f"{path}: matrix is not symmetric at ({j},{k})")
    if np.any(filled < 0):
        j, k = np.argwhere(filled < 0)[0]
        raise ValueError(f"{path}: entry ({j},{k}) = {delta[j, k]} is negative")
    offdiag = known & ~np.eye(n, dtype=bool)
    if np.any(offdiag & (filled == 0)):
        j, k = np.argwhere(offdiag & (filled == 0))[0]
        raise ValueError(f"{path}: off-diagonal entry ({j},{k}) is 0; leave it blank if unknown")
    weights = None
    if weights_path is not None:
        weights = _read_matrix(weights_path)
        if weights.shape != delta.shape:
            raise ValueError(f"{weights_path}: shape {weights.shape} does not match {delta.shape}")
        weights = np.where(offdiag, weights, 1.0)
        if not np.all(np.isfinite(weights)):
            j, k = np.argwhere(~np.isfinite(weights))[0]
            raise ValueError(f"{weights_path}: weight ({j},{k}) missing for a known pair")
    return DissimilarityData(np.where(known, delta, np.nan), weights, offdiag.astype(float))


def _read_matrix(path) -> np.ndarray:
    rows = []
    with open(path, newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), 1):
            if not row or all(not c.strip() for c in row) and len(row) <= 1:
                continue
            try:
                rows.append([float(c) if c.strip() else math.nan for c in row])
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: {exc}") from None
    if not rows:
        raise ValueError(f"{path}: empty matrix")
    n = len(rows)
    for i, r in enumerate(rows):
        if len(r) != n:
            raise ValueError(f"{path}: row {i} has {len(r)} fields, expected {n}")
    return np.array(rows)


def _atomic_write(path, text):
    Path(path).write_text(text)


def format_dissimilarity_csv(data: DissimilarityData, which: str = "delta") -> str:
    mat = data.delta if which == "delta" else data.weights
    buf = io.StringIO()
    for j in range(data.n):
        cells = []
        for k in range(data.n):
            if j != k and data.indicator[j, k] == 0:
                cells.append("")
            else:
                cells.append(_FMT.format(mat[j, k]))
        buf.write(",".join(cells) + "\n")
    return buf.getvalue()


def write_dissimilarity_csv(path, data: DissimilarityData, weights_path=None):
    _atomic_write(path, format_dissimilarity_csv(data))
    if weights_path is not None:
        _atomic_write(weights_path, format_dissimilarity_csv(data, "weights"))


def write_configuration(path, z):
    buf = io.StringIO()
    buf.write("index,re,im\n")
    for i, p in enumerate(np.asarray(z, dtype=np.complex128)):
        buf.write(f"{i},{_FMT.format(p.real)},{_FMT.format(p.imag)}\n")
    _atomic_write(path, buf.getvalue())


def read_configuration(path) -> np.ndarray:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header[:3]] != ["index", "re", "im"]:
            raise ValueError(f"{path}: expected header 'index,re,im'")
        pts = {}
        for lineno, row in enumerate(reader, 2):
            if not row:
                continue
            if len(row) < 3:
                raise ValueError(f"{path}:{lineno}: expected 3 fields")
            try:
                pts[int(row[0])] = complex(float(row[1]), float(row[2]))
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: {exc}") from None
    if sorted(pts) != list(range(len(pts))) or not pts:
        raise ValueError(f"{path}: indices must run 0..n-1")
    return np.array([pts[i] for i in range(len(pts))])


def write_path(path, configs):
    """Per-iteration configurations as ``t,index,re,im`` rows (t starts at 1)."""
    buf = io.StringIO()
    buf.write("t,index,re,im\n")
    for t, z in enumerate(configs, 1):
        for i, p in enumerate(z):
            buf.write(f"{t},{i},{_FMT.format(p.real)},{_FMT.format(p.imag)}\n")
    _atomic_write(path, buf.getvalue())


def read_path(path) -> np.ndarray:
    """Inverse of write_path: array of shape (T, n)."""
    rows = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    ts = rows[:, 0].astype(int)
    idx = rows[:, 1].astype(int)
    T, n = ts.max(), idx.max() + 1
    out = np.empty((T, n), dtype=np.complex128)
    out[ts - 1, idx] = rows[:, 2] + 1j * rows[:, 3]
    return out


TRACE_HEADER = ("t", "E", "r", "g_inf", "r_over_rM")


def write_trace(path, trace):
    buf = io.StringIO()
    buf.write(",".join(TRACE_HEADER) + "\n")
    for rec in trace:
        buf.write(f"{rec.t},{_FMT.format(rec.E)},{_FMT.format(rec.r)},"
                  f"{_FMT.format(rec.g_inf)},{_FMT.format(rec.r_over_rM)}\n")
    _atomic_write(path, buf.getvalue())


def read_trace(path) -> list:
    from .solver import IterationRecord

    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if tuple(header or ()) != TRACE_HEADER:
            raise ValueError(f"{path}: expected header {','.join(TRACE_HEADER)}")
        return [IterationRecord(int(r[0]), float(r[1]), float(r[2]), float(r[3]), float(r[4]))
                for r in reader if r]


def read_table(path) -> tuple[list, np.ndarray]:
    """Generic numeric CSV with a header row (sweep results, traces)."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if not header:
            raise ValueError(f"{path}: missing header")
        rows = [[float(c) for c in r] for r in reader if r]
    return header, np.array(rows, dtype=float).reshape(-1, len(header))


def iris_dissimilarity() -> DissimilarityData:
    """Euclidean distances between the 150 four-feature Iris records.

    The records contain exact duplicates; their zero distances are entered
    as missing since dissimilarities between distinct objects must be > 0.
    """
    from sklearn.datasets import load_iris

    x = load_iris().data
    d = np.sqrt(((x[:, None, :] - x[None, :, :]) ** 2).sum(axis=2))
    known = d > 0
    return DissimilarityData(np.where(known, d, np.nan), indicator=known.astype(float))
