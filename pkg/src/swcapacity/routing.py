"""Greedy decentralized routing on navigable rings and Kleinberg grids."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import rng
from .bounds import fmt
from .generators import generate
from .graph import ParameterError, WeightedGraph
from .models import KleinbergParams, NavigableRingParams


@dataclass(frozen=True)
class RoutingTrace:
    source: int
    target: int
    hops: int
    delivered: bool
    path: tuple[int, ...]
    distances: tuple[int, ...]  # metric distance to target at every path node

    def to_json(self) -> str:
        return json.dumps(
            {
                "source": self.source,
                "target": self.target,
                "hops": self.hops,
                "delivered": self.delivered,
                "path": list(self.path),
            }
        )


@dataclass(frozen=True)
class DeliveryStats:
    model: str
    params: dict
    trials: int
    mean_hops: float
    max_hops: int
    bound: float
    bound_satisfied: bool | None
    undelivered: int = 0
    phase_means: tuple[float, ...] = field(default=())

    def csv_header(self) -> str:
        return ",".join(
            ["model", *self.params, "trials", "mean_hops", "max_hops", "bound", "bound_satisfied"]
        )

    def csv_row(self) -> str:
        sat = "" if self.bound_satisfied is None else fmt(self.bound_satisfied)
        vals = [self.model, *(fmt(v) for v in self.params.values())]
        vals += [fmt(self.trials), fmt(self.mean_hops), fmt(self.max_hops), fmt(self.bound), sat]
        return ",".join(vals)


def navigability_bound(n: int) -> float:
    """Expected greedy delivery-time ceiling ln^2(2n)/ln 2 for the r=1 navigable ring."""
    if n < 2:
        raise ParameterError(f"n must be >= 2, got {n}")
    return math.log(2 * n) ** 2 / math.log(2)


def phase_of(distance: int) -> int:
    """Phase j with 2^j < d <= 2^(j+1); distances up to 2 are phase 0."""
    if distance <= 2:
        return 0
    return (distance - 1).bit_length() - 1


def phase_counts(trace: RoutingTrace) -> list[int]:
    """Steps taken from each phase (the holder's distance before the step)."""
    counts: list[int] = []
    for d in trace.distances[:-1]:
        j = phase_of(d)
        counts.extend([0] * (j + 1 - len(counts)))
        counts[j] += 1
    return counts


def _metric(kind: str, g: WeightedGraph):
    if kind == "ring":
        n = g.n

        def dist(a, b):
            diff = np.abs(a - b)
            return np.minimum(diff, n - diff)

        return dist
    if kind == "lattice":
        side = math.isqrt(g.n)
        if side * side != g.n:
            raise ParameterError("lattice metric needs a square node count")

        def dist(a, b):
            ax, ay = np.divmod(a, side)
            bx, by = np.divmod(b, side)
            return np.abs(ax - bx) + np.abs(ay - by)

        return dist
    raise ParameterError(f"unknown metric {kind!r}")


def greedy_route(
    g: WeightedGraph, metric: str, source: int, target: int, max_steps: int | None = None
) -> RoutingTrace:
    """Forward to the current holder's neighbour closest to the target.

    Ties go to the lowest node id. Routing stops undelivered if no neighbour
    is strictly closer than the holder or ``max_steps`` is exhausted.
    """
    if source == target:
        raise ParameterError("source and target must differ")
    if not (0 <= source < g.n and 0 <= target < g.n):
        raise ParameterError("source/target out of range")
    dist = _metric(metric, g)
    if max_steps is None:
        max_steps = g.n
    indptr, indices = g.adjacency()
    cur = source
    cur_d = int(dist(cur, target))
    path = [cur]
    dists = [cur_d]
    while cur != target and len(path) <= max_steps:
        nbrs = indices[indptr[cur]:indptr[cur + 1]]
        if len(nbrs) == 0:
            break
        nd = dist(nbrs, target)
        best = int(np.argmin(nd))  # neighbour lists are sorted: first minimum is lowest id
        if nd[best] >= cur_d:
            break
        cur, cur_d = int(nbrs[best]), int(nd[best])
        path.append(cur)
        dists.append(cur_d)
    return RoutingTrace(
        source=source,
        target=target,
        hops=len(path) - 1,
        delivered=cur == target,
        path=tuple(path),
        distances=tuple(dists),
    )


def _random_pair(n_nodes: int, seed: int) -> tuple[int, int]:
    s = int(rng.randbelow(n_nodes, seed, rng.TAG_PAIR, 0))
    t = int(rng.randbelow(n_nodes - 1, seed, rng.TAG_PAIR, 1))
    return s, t + (t >= s)


def delivery_experiment(
    params,
    trials: int,
    seed: int,
    *,
    max_steps: int | None = None,
    on_trace: Callable[[RoutingTrace], None] | None = None,
) -> DeliveryStats:
    """Route one uniformly drawn ordered pair on a fresh graph per trial."""
    if trials < 1:
        raise ParameterError("trials must be >= 1")
    if isinstance(params, NavigableRingParams):
        metric, n_nodes = "ring", params.n
    elif isinstance(params, KleinbergParams):
        metric, n_nodes = "lattice", params.node_count
    else:
        raise ParameterError(f"routing experiments need a navigable model, got {params!r}")
    hops = np.zeros(trials, dtype=np.int64)
    phase_totals: list[int] = []
    undelivered = 0
    for t in range(trials):
        child = rng.mix_int(seed, rng.TAG_TRIAL, t)
        g = generate(params, child)
        src, dst = _random_pair(n_nodes, child)
        trace = greedy_route(g, metric, src, dst, max_steps)
        if on_trace is not None:
            on_trace(trace)
        undelivered += not trace.delivered
        hops[t] = trace.hops
        for j, c in enumerate(phase_counts(trace)):
            if j == len(phase_totals):
                phase_totals.append(0)
            phase_totals[j] += c
    mean = float(hops.mean())
    if metric == "ring" and params.r == 1:
        bound = navigability_bound(params.n)
        satisfied = mean <= bound
    else:
        bound, satisfied = math.nan, None
    return DeliveryStats(
        model=params.model,
        params=params.as_dict(),
        trials=trials,
        mean_hops=mean,
        max_hops=int(hops.max()),
        bound=bound,
        bound_satisfied=satisfied,
        undelivered=undelivered,
        phase_means=tuple(c / trials for c in phase_totals),
    )
