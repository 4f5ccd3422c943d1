"""Monte Carlo concentration experiments and figure-data emitters."""

from __future__ import annotations

import io
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from . import rng
from .bounds import BoundsReport, bounds_for, fmt
from .generators import generate
from .graph import CUT_TOL, ParameterError, global_min_cut
from .models import KleinbergParams, NavigableRingParams, RewiringParams, ShortcutParams

THREADS_ENV = "SWCAP_THREADS"

# natural sweep axis per model
SWEEP_AXIS = {"shortcuts": "p", "rewiring": "p", "kleinberg": "q", "navigable": "q"}


@dataclass(frozen=True)
class ExperimentConfig:
    params: ShortcutParams | RewiringParams | KleinbergParams | NavigableRingParams
    trials: int
    seed: int
    d: float = 1.0
    sweep_values: tuple = ()
    time_budget: float | None = None

    def __post_init__(self):
        if self.trials < 1:
            raise ParameterError(f"trials must be >= 1, got {self.trials}")
        if self.params.model not in SWEEP_AXIS:
            raise ParameterError(f"no concentration experiment for model {self.params.model!r}")
        for v in self.sweep_values:
            replace(self.params, **{self.axis: v})  # validates each sweep point

    @property
    def axis(self) -> str:
        return SWEEP_AXIS[self.params.model]

    def points(self) -> list:
        if not self.sweep_values:
            return [self.params]
        return [replace(self.params, **{self.axis: v}) for v in self.sweep_values]


@dataclass(frozen=True)
class TrialRecord:
    sweep_value: float
    trial: int
    seed: int
    c_s: float
    in_interval: bool
    below_tight_upper: bool | None  # rewiring only: c_s <= k


def deterministic_floor(params) -> float:
    """Capacity every sampled instance must reach (lattice retained), or 0."""
    if isinstance(params, (ShortcutParams, NavigableRingParams)):
        return float(params.k)
    if isinstance(params, KleinbergParams):
        return params.h * (params.h + 3) / 2 + params.q
    return 0.0


@dataclass
class SweepRow:
    params: object
    report: BoundsReport
    records: list[TrialRecord] = field(default_factory=list)
    partial: bool = False

    @property
    def values(self) -> np.ndarray:
        return np.array([r.c_s for r in self.records], dtype=np.float64)

    @property
    def coverage(self) -> float:
        return float(np.mean([r.in_interval for r in self.records])) if self.records else float("nan")

    @property
    def lower_coverage(self) -> float:
        if not self.records:
            return float("nan")
        return float(np.mean(self.values >= self.report.tight_lower - CUT_TOL))

    @property
    def upper_coverage(self) -> float:
        if not self.records:
            return float("nan")
        return float(np.mean(self.values <= self.report.upper + CUT_TOL))

    @property
    def floor_violations(self) -> int:
        floor = deterministic_floor(self.params)
        return int(np.sum(self.values < floor - CUT_TOL))

    @property
    def mean_c_s(self) -> float:
        return float(self.values.mean()) if self.records else float("nan")


@dataclass
class CoverageSummary:
    model: str
    d: float
    rows: list[SweepRow]

    HEADER = (
        "trials,coverage,lower_coverage,upper_coverage,mean_c_s,min_c_s,max_c_s,"
        "c_w,epsilon,lower,upper,tight_lower,clamped,floor_violations,partial"
    )

    def to_csv(self) -> str:
        buf = io.StringIO()
        param_cols = list(self.rows[0].params.as_dict())
        buf.write(",".join(["model", *param_cols, "d"]) + "," + self.HEADER + "\n")
        for row in self.rows:
            rep, v = row.report, row.values
            cells = [self.model, *(fmt(x) for x in row.params.as_dict().values()), fmt(self.d)]
            cells += [
                fmt(len(row.records)),
                fmt(row.coverage),
                fmt(row.lower_coverage),
                fmt(row.upper_coverage),
                fmt(row.mean_c_s),
                fmt(v.min() if len(v) else float("nan")),
                fmt(v.max() if len(v) else float("nan")),
                fmt(rep.c_w),
                fmt(rep.epsilon),
                fmt(rep.lower),
                fmt(rep.upper),
                fmt(rep.tight_lower),
                fmt(rep.clamped),
                fmt(row.floor_violations),
                fmt(row.partial),
            ]
            buf.write(",".join(cells) + "\n")
        return buf.getvalue()

    def deterministic_failures(self) -> list[str]:
        """Violations of claims that hold for every instance, not just w.h.p."""
        out = []
        for row in self.rows:
            label = f"{self.model} {row.params.as_dict()}"
            if self.model == "rewiring" and row.upper_coverage < 1.0:
                out.append(f"{label}: sampled min cut exceeded k")
            if self.model in ("shortcuts", "navigable") and row.floor_violations:
                out.append(f"{label}: sampled min cut below k")
        return out


def _thread_count() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def _one_trial(params, report: BoundsReport, sweep_value, trial: int, seed: int) -> TrialRecord:
    g = generate(params, seed)
    c_s = global_min_cut(g).value
    below = c_s <= params.k + CUT_TOL if isinstance(params, RewiringParams) else None
    return TrialRecord(sweep_value, trial, seed, c_s, report.contains(c_s), below)


def run_concentration(cfg: ExperimentConfig) -> CoverageSummary:
    """Sample ``cfg.trials`` instances per sweep point and score them against the bounds."""
    started = time.monotonic()
    rows = []
    threads = _thread_count()
    for idx, params in enumerate(cfg.points()):
        report = bounds_for(params, cfg.d)
        value = getattr(params, cfg.axis)
        row = SweepRow(params, report)
        seeds = [rng.mix_int(cfg.seed, idx, t) for t in range(cfg.trials)]
        if threads > 1 and cfg.time_budget is None:
            with ThreadPoolExecutor(threads) as pool:
                row.records = list(
                    pool.map(lambda t: _one_trial(params, report, value, t, seeds[t]), range(cfg.trials))
                )
        else:
            for t, s in enumerate(seeds):
                if cfg.time_budget is not None and time.monotonic() - started > cfg.time_budget:
                    row.partial = True
                    break
                row.records.append(_one_trial(params, report, value, t, s))
        rows.append(row)
    return CoverageSummary(cfg.params.model, cfg.d, rows)


# -- figure data -------------------------------------------------------------------

FIGURES = {
    "fig4": dict(
        params=ShortcutParams(n=1000, k=20, p=0.0),
        axis="p",
        values=tuple(round(0.05 * i, 2) for i in range(21)),
        desk_n=200,
        caption="n=1000 k=20 d=1",
    ),
    "fig6": dict(
        params=KleinbergParams(n=80, h=2, q=0, r=2),
        axis="q",
        values=tuple(range(11)),
        desk_n=24,
        caption="n=80 (1600 nodes) h=2 r=2 d=1",
    ),
    "fig7": dict(
        params=NavigableRingParams(n=1600, k=14, q=0, r=1),
        axis="q",
        values=tuple(range(11)),
        desk_n=200,
        caption="n=1600 k=14 r=1 d=1",
    ),
}


def figure_data(
    which: str,
    seed: int = 0,
    *,
    scale: int | None = None,
    empirical: bool = False,
    trials: int = 20,
    d: float = 1.0,
    overrides: dict | None = None,
) -> str:
    """CSV rows ``x,c_w,lower,upper[,mean_c_s]`` for one figure's parameter sweep.

    Without ``scale``/``empirical`` the caption's parameters are used. With
    ``empirical`` the sampled overlay needs an exact min cut per trial, so the
    size falls back to a desk-scale default unless ``scale`` is given. The
    first line is a ``#`` comment recording the caption and the size used.
    """
    if which not in FIGURES:
        raise ParameterError(f"unknown figure {which!r}; choose from {sorted(FIGURES)}")
    fig = FIGURES[which]
    base = fig["params"]
    if overrides:
        base = replace(base, **overrides)
    if scale is None and empirical:
        scale = fig["desk_n"]
    if scale is not None:
        base = replace(base, n=scale)
    buf = io.StringIO()
    buf.write(f"# {which}: caption {fig['caption']}; evaluated at n={base.n} d={fmt(d)}\n")
    cols = ["x", "c_w", "lower", "upper"] + (["mean_c_s"] if empirical else [])
    buf.write(",".join(cols) + "\n")
    for idx, value in enumerate(fig["values"]):
        params = replace(base, **{fig["axis"]: value})
        rep = bounds_for(params, d)
        cells = [fmt(value), fmt(rep.c_w), fmt(rep.tight_lower), fmt(rep.upper)]
        if empirical:
            cs = [
                global_min_cut(generate(params, rng.mix_int(seed, idx, t))).value
                for t in range(trials)
            ]
            cells.append(fmt(float(np.mean(cs))))
        buf.write(",".join(cells) + "\n")
    return buf.getvalue()
