"""Weighted undirected graphs, distances and exact global minimum cuts."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

import numpy as np
from numba import njit

CUT_TOL = 1e-9
BRUTE_FORCE_MAX_NODES = 20


class ParameterError(ValueError):
    """Raised when a model parameter or operation precondition is violated."""


def ring_distance(i: int, j: int, n: int) -> int:
    """Hop distance between nodes ``i`` and ``j`` on an ``n``-cycle."""
    if n < 2:
        raise ParameterError(f"ring needs n >= 2, got {n}")
    if not (0 <= i < n and 0 <= j < n):
        raise ParameterError(f"nodes ({i}, {j}) out of range for n={n}")
    diff = abs(i - j)
    return min(diff, n - diff)


def lattice_distance(u: tuple[int, int], v: tuple[int, int], n: int | None = None) -> int:
    """Manhattan distance between grid points (1-indexed coordinates)."""
    if n is not None:
        for c in (*u, *v):
            if not 1 <= c <= n:
                raise ParameterError(f"grid coordinate {c} outside [1, {n}]")
    return abs(u[0] - v[0]) + abs(u[1] - v[1])


def grid_node(x: int, y: int, n: int) -> int:
    """Flat node id of grid point (x, y), both in [1, n]."""
    return (x - 1) * n + (y - 1)


def grid_point(node: int, n: int) -> tuple[int, int]:
    return node // n + 1, node % n + 1


class WeightedGraph:
    """Undirected simple graph with non-negative edge weights.

    Edges are stored canonically (``i < j``, lexicographically sorted) so two
    graphs with the same edge set compare equal and serialize identically.
    Instances are treated as immutable; the arrays are flagged read-only.
    """

    def __init__(self, n: int, edges, weights=None):
        n = int(n)
        if n < 2:
            raise ParameterError(f"graph needs at least 2 nodes, got {n}")
        e = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        if weights is None:
            w = np.ones(len(e), dtype=np.float64)
        else:
            w = np.asarray(weights, dtype=np.float64).reshape(-1)
            if len(w) != len(e):
                raise ParameterError("edges and weights differ in length")
        if len(e):
            if e.min() < 0 or e.max() >= n:
                raise ParameterError("edge endpoint out of range")
            if np.any(e[:, 0] == e[:, 1]):
                raise ParameterError("self-loops are not allowed")
            if np.any(w < 0) or not np.all(np.isfinite(w)):
                raise ParameterError("weights must be finite and non-negative")
        lo = np.minimum(e[:, 0], e[:, 1])
        hi = np.maximum(e[:, 0], e[:, 1])
        key = lo * n + hi
        order = np.argsort(key, kind="stable")
        key = key[order]
        if len(key) > 1 and np.any(key[1:] == key[:-1]):
            raise ParameterError("multiple edges between the same node pair")
        lo, hi, w = lo[order], hi[order], w[order]
        self._n = n
        self._edges = np.column_stack((lo, hi))
        self._weights = w
        self._edges.flags.writeable = False
        self._weights.flags.writeable = False

    @classmethod
    def from_matrix(cls, matrix) -> "WeightedGraph":
        """Build a graph from a symmetric weight matrix; zero entries are non-edges."""
        m = np.asarray(matrix, dtype=np.float64)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ParameterError("weight matrix must be square")
        if not np.allclose(m, m.T, rtol=0, atol=0):
            raise ParameterError("weight matrix must be symmetric")
        iu, ju = np.triu_indices(m.shape[0], k=1)
        vals = m[iu, ju]
        keep = vals != 0
        return cls(m.shape[0], np.column_stack((iu[keep], ju[keep])), vals[keep])

    @property
    def n(self) -> int:
        return self._n

    @property
    def edges(self) -> np.ndarray:
        return self._edges

    @property
    def weights(self) -> np.ndarray:
        return self._weights

    @property
    def num_edges(self) -> int:
        return len(self._weights)

    @property
    def total_weight(self) -> float:
        return float(self._weights.sum())

    def edge_set(self) -> set[tuple[int, int]]:
        return {(int(a), int(b)) for a, b in self._edges}

    def weight_map(self) -> dict[tuple[int, int], float]:
        return {(int(a), int(b)): float(w) for (a, b), w in zip(self._edges, self._weights)}

    @cached_property
    def matrix(self) -> np.ndarray:
        m = np.zeros((self._n, self._n), dtype=np.float64)
        m[self._edges[:, 0], self._edges[:, 1]] = self._weights
        m[self._edges[:, 1], self._edges[:, 0]] = self._weights
        m.flags.writeable = False
        return m

    @cached_property
    def _csr(self) -> tuple[np.ndarray, np.ndarray]:
        src = np.concatenate((self._edges[:, 0], self._edges[:, 1]))
        dst = np.concatenate((self._edges[:, 1], self._edges[:, 0]))
        order = np.argsort(src * self._n + dst)
        indptr = np.zeros(self._n + 1, dtype=np.int64)
        indptr[1:] = np.cumsum(np.bincount(src, minlength=self._n))
        return indptr, dst[order]

    def neighbors(self, u: int) -> np.ndarray:
        """Neighbors of ``u`` in ascending id order."""
        indptr, indices = self._csr
        return indices[indptr[u]:indptr[u + 1]]

    def adjacency(self) -> tuple[np.ndarray, np.ndarray]:
        """CSR arrays ``(indptr, indices)``; neighbor lists are sorted."""
        return self._csr

    def degrees(self) -> np.ndarray:
        return np.diff(self._csr[0])

    def weighted_degrees(self) -> np.ndarray:
        deg = np.zeros(self._n, dtype=np.float64)
        np.add.at(deg, self._edges[:, 0], self._weights)
        np.add.at(deg, self._edges[:, 1], self._weights)
        return deg

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        return (
            self._n == other._n
            and np.array_equal(self._edges, other._edges)
            and np.array_equal(self._weights, other._weights)
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"WeightedGraph(n={self._n}, edges={self.num_edges})"

    # -- serialization ------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "n": self._n,
            "edges": [[int(a), int(b), float(w)] for (a, b), w in zip(self._edges, self._weights)],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "WeightedGraph":
        try:
            n = data["n"]
            rows = data["edges"]
        except (KeyError, TypeError) as exc:
            raise ParameterError(f"malformed graph object: {exc}") from None
        for row in rows:
            if len(row) != 3:
                raise ParameterError(f"edge entry must be [i, j, w], got {row!r}")
            if not row[0] < row[1]:
                raise ParameterError(f"edge entry must have i < j, got {row!r}")
        edges = [(r[0], r[1]) for r in rows]
        weights = [r[2] for r in rows]
        return cls(n, edges, weights)

    @classmethod
    def from_json(cls, text: str) -> "WeightedGraph":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class CutResult:
    value: float
    partition: frozenset[int]


def _check_subset(g: WeightedGraph, s: Iterable[int]) -> np.ndarray:
    mask = np.zeros(g.n, dtype=bool)
    for v in s:
        if not 0 <= v < g.n:
            raise ParameterError(f"node {v} out of range")
        mask[v] = True
    if not mask.any() or mask.all():
        raise ParameterError("cut side must be a non-empty proper subset")
    return mask


def cut_value(g: WeightedGraph, s: Iterable[int]) -> float:
    """Total weight of edges with exactly one endpoint in ``s``."""
    mask = _check_subset(g, s)
    crossing = mask[g.edges[:, 0]] != mask[g.edges[:, 1]]
    return float(g.weights[crossing].sum())


@njit(cache=True, nogil=True)
def _stoer_wagner(w):
    n = w.shape[0]
    rep = np.arange(n)
    active = np.ones(n, dtype=np.bool_)
    best_value = np.inf
    best_side = np.zeros(n, dtype=np.bool_)
    keys = np.zeros(n)
    added = np.zeros(n, dtype=np.bool_)
    for remaining in range(n, 1, -1):
        start = 0
        while not active[start]:
            start += 1
        for j in range(n):
            added[j] = False
            keys[j] = w[start, j]
        added[start] = True
        prev = start
        last = start
        for _ in range(remaining - 1):
            sel = -1
            sel_key = -1.0
            for j in range(n):
                if active[j] and not added[j] and keys[j] > sel_key:
                    sel = j
                    sel_key = keys[j]
            added[sel] = True
            prev = last
            last = sel
            for j in range(n):
                if active[j] and not added[j]:
                    keys[j] += w[sel, j]
        phase_cut = keys[last]
        if phase_cut < best_value:
            best_value = phase_cut
            for j in range(n):
                best_side[j] = rep[j] == last
        for j in range(n):
            w[prev, j] += w[last, j]
            w[j, prev] += w[j, last]
        w[prev, prev] = 0.0
        active[last] = False
        for j in range(n):
            if rep[j] == last:
                rep[j] = prev
    return best_value, best_side


def global_min_cut(g: WeightedGraph) -> CutResult:
    """Exact global minimum cut (Stoer-Wagner, O(N^3) on a dense matrix).

    Disconnected graphs yield value 0 with one component as the witness.
    """
    if g.n < 2:
        raise ParameterError("min cut needs at least 2 nodes")
    value, side = _stoer_wagner(np.array(g.matrix, dtype=np.float64))
    part = frozenset(int(v) for v in np.flatnonzero(side))
    # recompute from the original weights so value and partition agree exactly
    return CutResult(cut_value(g, part), part)


def brute_force_min_cut(g: WeightedGraph) -> CutResult:
    """Exhaustive minimum over all nontrivial bipartitions. Test oracle only."""
    n = g.n
    if n > BRUTE_FORCE_MAX_NODES:
        raise ParameterError(f"brute force refuses N={n} > {BRUTE_FORCE_MAX_NODES}")
    w = np.array(g.matrix)
    # node n-1 is pinned outside the set; enumerate every non-empty subset of the rest
    bits = 1 << np.arange(n - 1, dtype=np.int64)
    total = (1 << (n - 1)) - 1
    best_value = np.inf
    best_mask = 0
    chunk = 1 << 14
    for lo in range(1, total + 1, chunk):
        masks = np.arange(lo, min(lo + chunk, total + 1), dtype=np.int64)
        inside = np.zeros((len(masks), n), dtype=np.float64)
        inside[:, : n - 1] = (masks[:, None] & bits) != 0
        values = ((inside @ w) * (1.0 - inside)).sum(axis=1)
        i = int(np.argmin(values))
        if values[i] < best_value:
            best_value = float(values[i])
            best_mask = int(masks[i])
    part = frozenset(v for v in range(n - 1) if best_mask >> v & 1)
    return CutResult(cut_value(g, part), part)
