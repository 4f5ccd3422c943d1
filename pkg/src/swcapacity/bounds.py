"""Closed-form expected capacities and concentration intervals per model."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .expectation import kleinberg_normalizer_grid, ring_normalizer, s_corner_closed_form
from .graph import ParameterError
from .models import KleinbergParams, NavigableRingParams, RewiringParams, ShortcutParams

DEFAULT_D = 1.0


def fmt(x) -> str:
    """CSV number formatting: 6 significant digits, '.' separator."""
    if isinstance(x, (bool, np.bool_)):
        return "1" if x else "0"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return f"{float(x):.6g}"


@dataclass(frozen=True)
class BoundsReport:
    """Capacity interval for one parameter point.

    ``lower`` is (1-eps)*c_w clamped at 0 (``lower_raw`` keeps the unclamped
    value). ``tight_lower`` is the model's best lower bound: M for Kleinberg,
    max(k, lower) for the navigable ring, and ``lower`` otherwise. For the
    rewiring model ``upper`` is k.
    """

    model: str
    params: dict
    c_w: float
    epsilon: float
    lower: float
    upper: float
    tight_lower: float
    clamped: bool
    lower_raw: float

    @property
    def d(self) -> float:
        return self.params["d"]

    def contains(self, value: float, tol: float = 1e-9) -> bool:
        return self.tight_lower - tol <= value <= self.upper + tol

    def csv_header(self) -> str:
        cols = ["model", *self.params, "c_w", "epsilon", "lower", "upper", "tight_lower", "clamped"]
        return ",".join(cols)

    def csv_row(self) -> str:
        vals = [self.model, *(fmt(v) for v in self.params.values())]
        vals += [fmt(v) for v in (self.c_w, self.epsilon, self.lower, self.upper, self.tight_lower)]
        vals.append(fmt(self.clamped))
        return ",".join(vals)


def _check_d(d: float) -> None:
    if not d > 0:
        raise ParameterError(f"confidence exponent d must be > 0, got {d}")


def lemma1_mincut(n: int, k: int, w1: float, w2: float) -> float:
    """Min cut of the complete graph with lattice edges at w1 and the rest at w2."""
    if k % 2 or not 2 <= k <= n - 2:
        raise ParameterError(f"k must be even with 2 <= k <= n-2, got k={k}, n={n}")
    if w1 < 0 or w2 < 0:
        raise ParameterError("weights must be non-negative")
    return k * w1 + (n - 1 - k) * w2


def epsilon(d: float, node_count: int, c_w: float) -> float:
    """Concentration half-width sqrt(2 (d+2) ln N / c_w)."""
    _check_d(d)
    if node_count < 2:
        raise ParameterError(f"node_count must be >= 2, got {node_count}")
    if not c_w > 0:
        raise ParameterError(f"c_w must be positive, got {c_w}")
    return math.sqrt(2.0 * (d + 2.0) * math.log(node_count) / c_w)


def _report(model, params, c_w, eps, centre, upper, floor, d) -> BoundsReport:
    lower_raw = (1.0 - eps) * centre
    lower = max(lower_raw, 0.0)
    return BoundsReport(
        model=model,
        params={**params, "d": d},
        c_w=c_w,
        epsilon=eps,
        lower=lower,
        upper=upper,
        tight_lower=max(lower, floor),
        clamped=eps > 1.0,
        lower_raw=lower_raw,
    )


# -- shortcuts ---------------------------------------------------------------------


def cw_shortcuts(p: ShortcutParams) -> float:
    return p.k + (p.n - 1 - p.k) * p.p


def bounds_shortcuts(p: ShortcutParams, d: float = DEFAULT_D) -> BoundsReport:
    c_w = cw_shortcuts(p)
    eps = epsilon(d, p.n, c_w)
    return _report("shortcuts", p.as_dict(), c_w, eps, c_w, (1 + eps) * c_w, 0.0, d)


# -- rewiring ----------------------------------------------------------------------


def bounds_rewiring(p: RewiringParams, d: float = DEFAULT_D) -> BoundsReport:
    """Interval [(1-eps) k, k] with eps computed from k, independent of p.

    ``c_w`` is reported as k, the min cut of the lower-bound graph, which is
    the only expected-graph quantity the interval uses.
    """
    eps = epsilon(d, p.n, p.k)
    return _report("rewiring", p.as_dict(), float(p.k), eps, p.k, float(p.k), 0.0, d)


# -- Kleinberg grid ----------------------------------------------------------------


def cw_kleinberg(p: KleinbergParams, sum_range: str = "distance") -> float:
    """Expected-graph min cut at the corner node (1, 1).

    ``sum_range="distance"`` sums the shortcut weights over nodes strictly
    beyond lattice distance h. ``sum_range="printed"`` starts the first double
    sum one anti-diagonal earlier (y >= h+2-x), which also adds shortcut
    weight for the corner's distance-h neighbours that are already counted as
    lattice edges.
    """
    if sum_range not in ("distance", "printed"):
        raise ParameterError(f"unknown sum range {sum_range!r}")
    n, h, q, r = p.n, p.h, p.q, float(p.r)
    base = h * (h + 3) / 2
    if q == 0:
        return base
    s = kleinberg_normalizer_grid(n, h, r)
    s11 = s_corner_closed_form(n, h, r)
    first = h + 2 if sum_range == "printed" else h + 3
    terms = []
    for x in range(1, n + 1):
        y0 = max(first - x, 1) if x <= h + 1 else 1
        for y in range(y0, n + 1):
            dr = float(x + y - 2) ** (-r)
            terms.append(_g(dr, s11, q) + _g(dr, s[x - 1, y - 1], q))
    return base + q * math.fsum(terms)


def _g(dr: float, s: float, q: int) -> float:
    if s <= 0:
        return 0.0
    a = dr / s
    return (1.0 - a) ** (q - 1) * a


def bounds_kleinberg(p: KleinbergParams, d: float = DEFAULT_D, sum_range: str = "distance") -> BoundsReport:
    c_w = cw_kleinberg(p, sum_range)
    eps = epsilon(d, p.n * p.n, c_w)
    floor = p.h * (p.h + 3) / 2 + p.q
    return _report("kleinberg", p.as_dict(), c_w, eps, c_w, (1 + eps) * c_w, floor, d)


# -- navigable ring ----------------------------------------------------------------


def cw_navigable_ring(p: NavigableRingParams) -> float:
    n, k, q, r = p.n, p.k, p.q, float(p.r)
    if q == 0:
        return float(k)
    s = ring_normalizer(p)
    a_n = n % 2
    m = float(n - a_n)
    far_term = (
        2.0 ** (r * q + 1) * s ** (-q) * q * (1 + a_n) * m ** (-r)
        * (2.0 ** (-r) * s - m ** (-r)) ** (q - 1)
    )
    mid = [float(i) ** (-r) * (s - float(i) ** (-r)) ** (q - 1) for i in range(k // 2 + 1, (n - a_n) // 2)]
    return k + far_term + 4 * q * s ** (-q) * math.fsum(mid)


def bounds_navigable_ring(p: NavigableRingParams, d: float = DEFAULT_D) -> BoundsReport:
    c_w = cw_navigable_ring(p)
    eps = epsilon(d, p.n, c_w)
    return _report("navigable", p.as_dict(), c_w, eps, c_w, (1 + eps) * c_w, float(p.k), d)


def bounds_for(params, d: float = DEFAULT_D) -> BoundsReport:
    if isinstance(params, ShortcutParams):
        return bounds_shortcuts(params, d)
    if isinstance(params, RewiringParams):
        return bounds_rewiring(params, d)
    if isinstance(params, KleinbergParams):
        return bounds_kleinberg(params, d)
    if isinstance(params, NavigableRingParams):
        return bounds_navigable_ring(params, d)
    raise ParameterError(f"no capacity bounds for {type(params).__name__}")
