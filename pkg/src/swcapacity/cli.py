"""Command-line entry point: ``swcap <subcommand> ...``.

Exit status: 0 on success, 2 on parameter/usage errors, 3 when an experiment
observes a violation of a deterministic claim (or an undelivered route).
"""

from __future__ import annotations

import argparse
import json
import sys

from .bounds import bounds_for
from .expectation import normalizer_table
from .experiments import ExperimentConfig, FIGURES, run_concentration, figure_data
from .generators import generate
from .graph import ParameterError, WeightedGraph, global_min_cut
from .models import MODEL_PARAMS
from .routing import delivery_experiment

EXIT_OK, EXIT_PARAM, EXIT_ASSERT = 0, 2, 3

# desk-scale defaults, filled in for any flag left unset
DEFAULTS = {
    "ring": dict(n=200, k=10),
    "shortcuts": dict(n=200, k=10, p=0.1),
    "rewiring": dict(n=200, k=10, p=0.1),
    "kleinberg": dict(n=24, h=1, q=1, r=2.0),
    "navigable": dict(n=200, k=14, q=1, r=1.0),
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARAM, f"{self.prog}: error: {message}\n")


def _add_model_args(p: argparse.ArgumentParser, models) -> None:
    p.add_argument("model", choices=models)
    p.add_argument("-n", type=int, help="ring node count, or grid side for kleinberg")
    p.add_argument("-k", type=int, help="lattice degree (even)")
    p.add_argument("-p", type=float, help="shortcut / rewiring probability")
    p.add_argument("-q", type=int, help="shortcut trials per node")
    p.add_argument("-r", type=float, help="distance decay exponent")
    p.add_argument("--h", dest="h", type=int, help="kleinberg neighbourhood radius")


def _params(args):
    cls = MODEL_PARAMS[args.model]
    values = dict(DEFAULTS[args.model])
    for name in values:
        v = getattr(args, name, None)
        if v is not None:
            values[name] = v
    return cls(**values)


def _parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="swcap", description="Small-world network capacity toolkit.")
    sub = ap.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="generate a graph instance as JSON")
    _add_model_args(g, list(MODEL_PARAMS))
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", help="output file (default: stdout)")

    m = sub.add_parser("mincut", help="exact global min cut of a JSON graph")
    m.add_argument("--in", dest="infile", required=True)

    b = sub.add_parser("bounds", help="capacity bounds as CSV")
    _add_model_args(b, ["shortcuts", "rewiring", "kleinberg", "navigable"])
    b.add_argument("-d", type=float, default=1.0)

    nz = sub.add_parser("normalizers", help="normalizing constants as CSV")
    _add_model_args(nz, ["kleinberg", "navigable"])

    e = sub.add_parser("experiment", help="Monte Carlo experiments")
    e.add_argument("kind", choices=["concentration", "routing"])
    _add_model_args(e, ["shortcuts", "rewiring", "kleinberg", "navigable"])
    e.add_argument("--trials", type=int, default=100)
    e.add_argument("--seed", type=int, default=0)
    e.add_argument("-d", type=float, default=1.0)
    e.add_argument("--sweep", help="comma-separated values for p (shortcuts/rewiring) or q")
    e.add_argument("--time-budget", type=float, help="seconds; later trials are skipped and flagged")
    e.add_argument("--trace", help="routing: write one JSON line per routed pair to this file")

    f = sub.add_parser("figure", help="plot-ready data for the capacity figures")
    f.add_argument("which", choices=sorted(FIGURES))
    f.add_argument("--scale", type=int, help="substitute node count (grid side for fig6)")
    f.add_argument("--empirical", action="store_true", help="add sampled mean min cut column")
    f.add_argument("--trials", type=int, default=20)
    f.add_argument("--seed", type=int, default=0)
    f.add_argument("-d", type=float, default=1.0)
    return ap


def _parse_sweep(text: str, model: str) -> tuple:
    conv = float if model in ("shortcuts", "rewiring") else int
    try:
        return tuple(conv(v) for v in text.split(","))
    except ValueError:
        raise ParameterError(f"bad --sweep list {text!r}") from None


def _cmd_gen(args) -> int:
    g = generate(_params(args), args.seed)
    text = g.to_json()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return EXIT_OK


def _cmd_mincut(args) -> int:
    try:
        with open(args.infile) as fh:
            g = WeightedGraph.from_json(fh.read())
    except (OSError, json.JSONDecodeError) as exc:
        raise ParameterError(f"cannot read graph: {exc}") from None
    cut = global_min_cut(g)
    print(f"value {cut.value:.6g}")
    print("partition " + " ".join(str(v) for v in sorted(cut.partition)))
    return EXIT_OK


def _cmd_bounds(args) -> int:
    rep = bounds_for(_params(args), args.d)
    print(rep.csv_header())
    print(rep.csv_row())
    return EXIT_OK


def _cmd_normalizers(args) -> int:
    sys.stdout.write(normalizer_table(_params(args)).to_csv())
    return EXIT_OK


def _cmd_experiment(args) -> int:
    params = _params(args)
    if args.kind == "concentration":
        sweep = _parse_sweep(args.sweep, args.model) if args.sweep else ()
        cfg = ExperimentConfig(params, args.trials, args.seed, args.d, sweep, args.time_budget)
        summary = run_concentration(cfg)
        sys.stdout.write(summary.to_csv())
        failures = summary.deterministic_failures()
        for msg in failures:
            print(f"assertion failed: {msg}", file=sys.stderr)
        return EXIT_ASSERT if failures else EXIT_OK

    trace_fh = open(args.trace, "w") if args.trace else None
    try:
        on_trace = (lambda t: trace_fh.write(t.to_json() + "\n")) if trace_fh else None
        stats = delivery_experiment(params, args.trials, args.seed, on_trace=on_trace)
    finally:
        if trace_fh:
            trace_fh.close()
    print(stats.csv_header())
    print(stats.csv_row())
    if stats.undelivered:
        print(f"assertion failed: {stats.undelivered} undelivered routes", file=sys.stderr)
        return EXIT_ASSERT
    return EXIT_OK


def _cmd_figure(args) -> int:
    sys.stdout.write(
        figure_data(
            args.which, args.seed, scale=args.scale, empirical=args.empirical, trials=args.trials, d=args.d
        )
    )
    return EXIT_OK


COMMANDS = {
    "gen": _cmd_gen,
    "mincut": _cmd_mincut,
    "bounds": _cmd_bounds,
    "normalizers": _cmd_normalizers,
    "experiment": _cmd_experiment,
    "figure": _cmd_figure,
}


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        return COMMANDS[args.cmd](args)
    except ParameterError as exc:
        print(f"swcap: parameter error: {exc}", file=sys.stderr)
        return EXIT_PARAM


if __name__ == "__main__":
    sys.exit(main())
