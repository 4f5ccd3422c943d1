"""Seeded constructors for the ring lattice and the four small-world models.

All generators are pure functions of ``(params, seed)``. Randomness comes from
:mod:`swcapacity.rng`, keyed per pair / per (lap, node) / per (node, trial),
so the draws of one node never depend on the order nodes are processed in.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np
from numba import njit

from . import rng
from .graph import ParameterError, WeightedGraph
from .models import (
    KleinbergParams,
    NavigableRingParams,
    RewiringParams,
    RingLatticeParams,
    ShortcutParams,
)

# cache per-node cumulative tables only while they stay below ~50 MB
_GRID_TABLE_CACHE_LIMIT = 2500 * 2500


def lattice_edges(n: int, k: int) -> np.ndarray:
    """Edges (i, i+x mod n) for x = 1..k/2, as an (n*k/2, 2) array."""
    nodes = np.arange(n)
    parts = [np.column_stack((nodes, (nodes + x) % n)) for x in range(1, k // 2 + 1)]
    return np.concatenate(parts)


def gen_ring_lattice(p: RingLatticeParams) -> WeightedGraph:
    return WeightedGraph(p.n, lattice_edges(p.n, p.k))


def gen_shortcut_smallworld(p: ShortcutParams, seed: int) -> WeightedGraph:
    """Ring lattice plus each non-lattice pair independently with probability p."""
    n = p.n
    i, j = np.triu_indices(n, k=1)
    diff = j - i
    far = np.minimum(diff, n - diff) > p.k // 2
    i, j = i[far], j[far]
    keep = rng.uniform(seed, rng.TAG_SHORTCUT, i, j) < p.p
    extra = np.column_stack((i[keep], j[keep]))
    return WeightedGraph(n, np.concatenate((lattice_edges(n, p.k), extra)))


def gen_rewired_smallworld(
    p: RewiringParams,
    seed: int,
    *,
    admissible: str = "current",
    diagnostics: dict | None = None,
) -> WeightedGraph:
    """Watts-Strogatz style lap-by-lap rewiring of the ring lattice.

    Lap x = 1..k/2 visits nodes in ascending order; the original edge
    (u, u+x) is rewired with probability p, keeping endpoint u and moving the
    far endpoint to a uniformly chosen admissible node.

    ``admissible="current"`` draws from nodes other than u that are not
    adjacent to u in the graph as it stands, so no multi-edge can form.
    ``admissible="lattice"`` draws from nodes outside u's original lattice
    neighbourhood; if the drawn node is already adjacent the two parallel
    edges collapse into one and the edge count drops.

    ``diagnostics`` (if given) receives counters ``rewired``, ``no_target``
    and ``collapsed``.
    """
    if admissible not in ("current", "lattice"):
        raise ParameterError(f"unknown admissible-target rule {admissible!r}")
    n, half = p.n, p.k // 2
    adj = np.zeros((n, n), dtype=bool)
    e = lattice_edges(n, p.k)
    adj[e[:, 0], e[:, 1]] = True
    adj[e[:, 1], e[:, 0]] = True
    laps = np.arange(1, half + 1)[:, None]
    nodes = np.arange(n)[None, :]
    coin = rng.uniform(seed, rng.TAG_REWIRE, laps, nodes, 0)
    pick = rng.uniform(seed, rng.TAG_REWIRE, laps, nodes, 1)

    if admissible == "lattice":
        offs = np.arange(n)
        dist = np.minimum(offs, n - offs)
        outside = np.flatnonzero(dist > half)  # offsets outside the lattice ball

    stats = {"rewired": 0, "no_target": 0, "collapsed": 0}
    for li in range(half):
        x = li + 1
        for u in np.flatnonzero(coin[li] < p.p):
            v = (u + x) % n
            if admissible == "current":
                row = adj[u].copy()
                row[u] = True
                candidates = np.flatnonzero(~row)
            else:
                candidates = np.sort((u + outside) % n)
            if len(candidates) == 0:
                stats["no_target"] += 1
                continue
            t = candidates[min(int(pick[li, u] * len(candidates)), len(candidates) - 1)]
            adj[u, v] = adj[v, u] = False
            if adj[u, t]:
                stats["collapsed"] += 1
            adj[u, t] = adj[t, u] = True
            stats["rewired"] += 1
    if diagnostics is not None:
        diagnostics.update(stats)
    iu, ju = np.nonzero(np.triu(adj, k=1))
    return WeightedGraph(n, np.column_stack((iu, ju)))


# -- harmonic shortcut sampling ---------------------------------------------------


def _last_positive(cum: np.ndarray) -> int:
    return int(np.searchsorted(cum, cum[-1], side="left"))


def _sample_cumulative(cum: np.ndarray, u: np.ndarray, last: int | None = None) -> np.ndarray:
    """Inverse-CDF lookup; ``cum`` is non-decreasing with positive last entry."""
    idx = np.searchsorted(cum, u * cum[-1], side="right")
    # u * total can round up to total; fall back to the last positive-weight entry
    if last is None:
        last = _last_positive(cum)
    return np.minimum(idx, last)


@njit(cache=True)
def _sample_rows(table, u, out):
    for node in range(table.shape[0]):
        cum = table[node]
        total = cum[-1]
        if total <= 0.0:
            continue
        last = np.searchsorted(cum, total)
        for t in range(u.shape[1]):
            idx = np.searchsorted(cum, u[node, t] * total, side="right")
            out[node, t] = min(idx, last)


@lru_cache(maxsize=32)
def _ring_table(n: int, k: int, r: float) -> tuple[np.ndarray, np.ndarray, int]:
    offsets = np.arange(k // 2 + 1, n - k // 2)
    dist = np.minimum(offsets, n - offsets).astype(np.float64)
    cum = np.cumsum(dist ** (-float(r)))
    cum.flags.writeable = False
    return offsets, cum, _last_positive(cum)


def sample_navigable_endpoints(p: NavigableRingParams, seed: int) -> np.ndarray:
    """Endpoint chosen by each trial: array of shape (n, q)."""
    offsets, cum, last = _ring_table(p.n, p.k, float(p.r))
    nodes = np.arange(p.n)[:, None]
    trials = np.arange(p.q)[None, :]
    u = rng.uniform(seed, rng.TAG_NAVIGABLE, nodes, trials)
    return (nodes + offsets[_sample_cumulative(cum, u, last)]) % p.n


def _grid_cumulative_row(node: int, n: int, h: int, r: float) -> np.ndarray:
    xs, ys = np.divmod(np.arange(n * n), n)
    x, y = divmod(node, n)
    d = np.abs(xs - x) + np.abs(ys - y)
    w = np.zeros(n * n)
    far = d > h
    w[far] = d[far].astype(np.float64) ** (-float(r))
    return np.cumsum(w)


@lru_cache(maxsize=4)
def _grid_table(n: int, h: int, r: float) -> np.ndarray:
    table = np.stack([_grid_cumulative_row(u, n, h, r) for u in range(n * n)])
    table.flags.writeable = False
    return table


def sample_kleinberg_endpoints(p: KleinbergParams, seed: int) -> np.ndarray:
    """Endpoint chosen by each trial, shape (n*n, q); -1 where a node has no candidates.

    Row u of the cumulative table ends at s(u), the node's normalizer, so a
    trial selects v with probability d(u, v)^-r / s(u).
    """
    big = p.node_count * p.node_count > _GRID_TABLE_CACHE_LIMIT
    table = None if big else _grid_table(p.n, p.h, float(p.r))
    u = rng.uniform(
        seed, rng.TAG_KLEINBERG, np.arange(p.node_count)[:, None], np.arange(p.q)[None, :]
    )
    out = np.full((p.node_count, p.q), -1, dtype=np.int64)
    if p.q == 0:
        return out
    if not big:
        _sample_rows(table, u, out)
        return out
    for node in range(p.node_count):
        cum = _grid_cumulative_row(node, p.n, p.h, float(p.r))
        if cum[-1] > 0:
            out[node] = _sample_cumulative(cum, u[node])
    return out


def _grid_lattice_edges(n: int, h: int) -> np.ndarray:
    xs, ys = np.divmod(np.arange(n * n), n)
    parts = []
    for dx in range(0, h + 1):
        for dy in range(-h, h + 1):
            if abs(dx) + abs(dy) > h or (dx == 0 and dy <= 0):
                continue
            ok = (xs + dx < n) & (ys + dy >= 0) & (ys + dy < n)
            src = np.flatnonzero(ok)
            parts.append(np.column_stack((src, src + dx * n + dy)))
    return np.concatenate(parts)


def _with_shortcuts(n_nodes: int, base: np.ndarray, endpoints: np.ndarray) -> WeightedGraph:
    src = np.repeat(np.arange(n_nodes), endpoints.shape[1])
    dst = endpoints.reshape(-1)
    ok = dst >= 0
    a, b = src[ok], dst[ok]
    keys = np.unique(np.minimum(a, b) * n_nodes + np.maximum(a, b))
    pairs = np.column_stack(np.divmod(keys, n_nodes))
    return WeightedGraph(n_nodes, np.concatenate((base, pairs)))


def gen_kleinberg(p: KleinbergParams, seed: int) -> WeightedGraph:
    """Grid with all pairs within lattice distance h, plus q harmonic shortcuts per node.

    Node (x, y) has flat id (x-1)*n + (y-1). Repeated picks collapse into one
    undirected edge.
    """
    return _with_shortcuts(
        p.node_count, _grid_lattice_edges(p.n, p.h), sample_kleinberg_endpoints(p, seed)
    )


def gen_navigable_ring(p: NavigableRingParams, seed: int) -> WeightedGraph:
    return _with_shortcuts(p.n, lattice_edges(p.n, p.k), sample_navigable_endpoints(p, seed))


def generate(params, seed: int = 0) -> WeightedGraph:
    """Dispatch on the parameter record type."""
    if isinstance(params, RingLatticeParams):
        return gen_ring_lattice(params)
    if isinstance(params, ShortcutParams):
        return gen_shortcut_smallworld(params, seed)
    if isinstance(params, RewiringParams):
        return gen_rewired_smallworld(params, seed)
    if isinstance(params, KleinbergParams):
        return gen_kleinberg(params, seed)
    if isinstance(params, NavigableRingParams):
        return gen_navigable_ring(params, seed)
    raise ParameterError(f"unknown model parameters {params!r}")
