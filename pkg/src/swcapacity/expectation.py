"""Normalizing constants and expected (edge-probability weighted) graphs."""

from __future__ import annotations

import io
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .graph import ParameterError, WeightedGraph
from .models import (
    KleinbergParams,
    NavigableRingParams,
    RewiringParams,
    ShortcutParams,
)

# -- Kleinberg grid normalizers ------------------------------------------------


def _check_grid_point(x: int, y: int, n: int) -> None:
    if n < 2:
        raise ParameterError(f"grid side must be >= 2, got {n}")
    if not (1 <= x <= n and 1 <= y <= n):
        raise ParameterError(f"({x}, {y}) is outside the {n}x{n} grid")


def _axis_offsets(c: int, n: int) -> np.ndarray:
    """counts[a] = number of grid coordinates at offset a from c along one axis."""
    a = np.arange(n)
    counts = (c - a >= 1).astype(np.int64) + (c + a <= n).astype(np.int64)
    counts[0] = 1
    return counts


def grid_distance_counts(x: int, y: int, n: int) -> np.ndarray:
    """counts[t] = number of grid nodes at lattice distance t from (x, y)."""
    return np.convolve(_axis_offsets(x, n), _axis_offsets(y, n))


def _power_terms(t, r: float):
    return np.asarray(t, dtype=np.float64) ** (-float(r))


def kleinberg_normalizer(x: int, y: int, n: int, h: int, r: float) -> float:
    """s(x, y): sum of d^-r over grid nodes farther than h from (x, y).

    Computed as (sum over all other nodes) minus (sum over the initial
    neighbourhood), the neighbourhood being scanned row by row with ranges
    clipped at the grid border. Returns 0.0 when no node lies beyond h.
    """
    _check_grid_point(x, y, n)
    if h < 0:
        raise ParameterError(f"h must be >= 0, got {h}")
    near = {}
    for i in range(min(h, n - y) + 1):
        for j in range(min(h - i, n - x) + 1):
            near[x + j, y + i] = i + j
        for j in range(1, min(h - i, x - 1) + 1):
            near[x - j, y + i] = i + j
    for i in range(1, min(h, y - 1) + 1):
        for j in range(min(h - i, n - x) + 1):
            near[x + j, y - i] = i + j
        for j in range(1, min(h - i, x - 1) + 1):
            near[x - j, y - i] = i + j
    del near[x, y]
    z = math.fsum(float(t) ** (-r) for t in near.values())

    counts = grid_distance_counts(x, y, n)
    t = np.flatnonzero(counts)
    t = t[t > 0]
    full = math.fsum((counts[t] * _power_terms(t, r)).tolist())
    s = full - z
    if len(near) == n * n - 1:
        return 0.0
    return s


def kleinberg_normalizer_bruteforce(x: int, y: int, n: int, h: int, r: float) -> float:
    """Direct sum over the whole grid. Oracle for small n."""
    _check_grid_point(x, y, n)
    if n > 60:
        raise ParameterError("brute-force normalizer limited to n <= 60")
    coords = np.arange(1, n + 1)
    d = np.abs(coords[:, None] - x) + np.abs(coords[None, :] - y)
    far = d[d > h]
    if far.size == 0:
        return 0.0
    return math.fsum(_power_terms(far, r).tolist())


def s_corner_closed_form(n: int, h: int, r: float) -> float:
    """Corner normalizer s(1,1) summed along anti-diagonals."""
    if not 0 <= h < n - 1:
        raise ParameterError(f"corner closed form needs h < n-1, got h={h}, n={n}")
    upper = [(i + 1) * float(i) ** (-r) for i in range(h + 1, n)]
    lower = [(n - 1 - i) * float(n + i) ** (-r) for i in range(0, n - 1)]
    return math.fsum(upper + lower)


@lru_cache(maxsize=16)
def kleinberg_normalizer_grid(n: int, h: int, r: float) -> np.ndarray:
    """s[x-1, y-1] for every grid point, using the 8-fold symmetry of the square.

    The returned array is shared between calls and read-only.
    """
    s = np.empty((n, n), dtype=np.float64)
    half = (n + 1) // 2
    for x in range(1, half + 1):
        for y in range(x, half + 1):
            v = kleinberg_normalizer(x, y, n, h, r)
            for a, b in ((x, y), (y, x)):
                for aa in (a, n + 1 - a):
                    for bb in (b, n + 1 - b):
                        s[aa - 1, bb - 1] = v
    s.flags.writeable = False
    return s


# -- navigable ring --------------------------------------------------------------


def ring_normalizer(p: NavigableRingParams) -> float:
    """Common normalizer s of every ring node (all nodes share one distance profile)."""
    n, k, r = p.n, p.k, p.r
    a_n = n % 2
    far = (n - a_n) // 2
    terms = [(1 + a_n) * float(far) ** (-r)]
    terms += [2 * float(i) ** (-r) for i in range(k // 2 + 1, far)]
    return math.fsum(terms)


def ring_normalizer_bruteforce(n: int, k: int, r: float) -> float:
    d = np.minimum(np.arange(1, n), n - np.arange(1, n))
    return math.fsum(_power_terms(d[d > k // 2], r).tolist())


@dataclass(frozen=True)
class NormalizerTable:
    model: str
    values: np.ndarray  # (n, n) for the grid, shape (1,) for the ring

    def to_csv(self) -> str:
        buf = io.StringIO()
        if self.model == "kleinberg":
            buf.write("x,y,s\n")
            n = self.values.shape[0]
            for x in range(1, n + 1):
                for y in range(1, n + 1):
                    buf.write(f"{x},{y},{self.values[x - 1, y - 1]:.6g}\n")
        else:
            buf.write("s\n")
            buf.write(f"{float(self.values[0]):.6g}\n")
        return buf.getvalue()


def normalizer_table(p) -> NormalizerTable:
    if isinstance(p, KleinbergParams):
        return NormalizerTable("kleinberg", kleinberg_normalizer_grid(p.n, p.h, p.r))
    if isinstance(p, NavigableRingParams):
        return NormalizerTable("navigable", np.array([ring_normalizer(p)]))
    raise ParameterError(f"no normalizer for {type(p).__name__}")


# -- expected graphs -------------------------------------------------------------


def _ring_distance_matrix(n: int) -> np.ndarray:
    i = np.arange(n)
    diff = np.abs(i[:, None] - i[None, :])
    return np.minimum(diff, n - diff)


def _one_success(a: np.ndarray, q: int) -> np.ndarray:
    """P(exactly one of q Bernoulli(a) trials succeeds)."""
    if q == 0:
        return np.zeros_like(a)
    return q * a * (1.0 - a) ** (q - 1)


def expected_graph_shortcuts(p: ShortcutParams) -> WeightedGraph:
    d = _ring_distance_matrix(p.n)
    w = np.where(d <= p.k // 2, 1.0, p.p)
    np.fill_diagonal(w, 0.0)
    return WeightedGraph.from_matrix(w)


def expected_graph_rewired_lower(p: RewiringParams) -> WeightedGraph:
    """Lower-bound graph F: lattice edges 1-p, every other pair pk/(n-k-1).

    Not the exact edge-probability graph of the rewiring model; every weight
    here is a lower bound on the corresponding edge probability.
    """
    d = _ring_distance_matrix(p.n)
    w = np.where(d <= p.k // 2, 1.0 - p.p, p.p * p.k / (p.n - p.k - 1))
    np.fill_diagonal(w, 0.0)
    return WeightedGraph.from_matrix(w)


def _combine_two_sided(a_uv: np.ndarray, a_vu: np.ndarray, q: int, mode: str) -> np.ndarray:
    if mode == "one_success":
        return _one_success(a_uv, q) + _one_success(a_vu, q)
    if mode == "at_least_one":
        return 1.0 - (1.0 - a_uv) ** q * (1.0 - a_vu) ** q
    raise ParameterError(f"unknown weight mode {mode!r}")


def expected_graph_kleinberg(p: KleinbergParams, mode: str = "one_success") -> WeightedGraph:
    """Expected grid graph.

    ``mode="one_success"`` sums the exactly-one-success probabilities of the two
    endpoints' trials; ``mode="at_least_one"`` gives the probability that
    some trial from either side selects the pair.
    """
    n = p.n
    s = kleinberg_normalizer_grid(n, p.h, p.r).reshape(-1)
    xs, ys = np.divmod(np.arange(n * n), n)
    d = np.abs(xs[:, None] - xs[None, :]) + np.abs(ys[:, None] - ys[None, :])
    far = d > p.h
    terms = np.zeros(d.shape)
    terms[far] = _power_terms(d[far], p.r)
    with np.errstate(divide="ignore", invalid="ignore"):
        a = np.where(s[:, None] > 0, terms / s[:, None], 0.0)
    w = np.where(far, _combine_two_sided(a, a.T, p.q, mode), 1.0)
    np.fill_diagonal(w, 0.0)
    return WeightedGraph.from_matrix(w)


def navigable_pair_weight(t, p: NavigableRingParams, mode: str = "one_success"):
    """Expected weight of a shortcut-only pair at ring distance t > k/2."""
    a = _power_terms(t, p.r) / ring_normalizer(p)
    return _combine_two_sided(a, a, p.q, mode)


def expected_graph_navigable_ring(p: NavigableRingParams, mode: str = "one_success") -> WeightedGraph:
    d = _ring_distance_matrix(p.n)
    far = d > p.k // 2
    w = np.ones(d.shape)
    w[far] = navigable_pair_weight(d[far], p, mode)
    np.fill_diagonal(w, 0.0)
    return WeightedGraph.from_matrix(w)


def lattice_weights_graph(n: int, k: int, w1: float, w2: float) -> WeightedGraph:
    """Complete graph with ring-lattice edges at w1 and all other pairs at w2."""
    d = _ring_distance_matrix(n)
    w = np.where(d <= k // 2, float(w1), float(w2))
    np.fill_diagonal(w, 0.0)
    return WeightedGraph.from_matrix(w)

