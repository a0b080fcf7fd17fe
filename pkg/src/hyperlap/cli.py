"""Command-line front end.

Exit codes: 0 success, 1 failed verification, 2 usage error, 3 data error,
4 numerical or simulation failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import secrets
import sys
from pathlib import Path

from . import io, toy
from .centrality import MEASURES, CentralityResult, compute_centralities
from .errors import ArgumentError, InputError, NumericalError, SimulationError, DegenerateNetworkError
from .experiments import (
    DEFAULT_MU_RATIOS,
    DEFAULT_RATIOS,
    dataset_report,
    infection_sweep,
    part_removal_experiment,
    ratio_sweep,
)
from .laplacian import assemble_lh, build_lk, format_dense, format_triplets
from .sir import ContactNetwork, SirParams, mean_affected_scale
from .spectral import DffConfig

EXIT_VERIFY, EXIT_USAGE, EXIT_DATA, EXIT_NUMERIC = 1, 2, 3, 4

log = logging.getLogger("hyperlap")


class UsageError(Exception):
    pass


def _floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _add_graph(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--graph", type=Path, help="native hypergraph file (see `ingest`)")
    g.add_argument("--toy", action="store_true", help="use the built-in six-vertex example")


def _add_sir(p: argparse.ArgumentParser) -> None:
    p.add_argument("--mu-ratio", type=float, default=1.5, help="infection rate as a multiple of mu_c")
    p.add_argument("--mu", type=float, default=None, help="absolute infection rate (overrides --mu-ratio)")
    p.add_argument("--beta", type=float, default=1.0, help="recovery probability per round")
    p.add_argument("--trials", type=int, default=100, help="trials per seed vertex")
    p.add_argument("--max-steps", type=int, default=None)
    p.add_argument("--seed", type=int, default=None, help="master seed; generated and printed if omitted")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--recompute-mu", action="store_true", help="recompute mu_c after each removal")


def _add_dff(p: argparse.ArgumentParser) -> None:
    p.add_argument("--t", type=float, default=0.01, help="DFF diffusion time")
    p.add_argument("--distribution", choices=["all", "hyperedges"], default="all")
    p.add_argument("--operator", choices=["simplex-graph", "lh"], default="simplex-graph")
    p.add_argument("--eigenpairs", type=int, default=None, help="spectral truncation for DFF")
    p.add_argument("--weighted", action="store_true", help="use 1/weight path lengths")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hyperlap", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="convert a dataset to the native format and print statistics")
    p.add_argument("--format", choices=["benson", "native"], default="benson")
    p.add_argument("--prefix", help="dataset prefix (benson format) or file path (native)")
    p.add_argument("--out", type=Path, help="native file to write")
    p.add_argument("--dedup", choices=["unit", "multiplicity"], default="unit")

    p = sub.add_parser("laplacian", help="export L_0, L_k or L_H")
    _add_graph(p)
    p.add_argument("--which", choices=["L0", "Lk", "LH"], default="LH")
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--format", choices=["dense", "triplets"], default="dense")
    p.add_argument("--weighted", action="store_true", help="weighted L_k (floating point)")
    p.add_argument("--out", type=Path)

    p = sub.add_parser("centrality", help="score hyperedges")
    _add_graph(p)
    p.add_argument("--measure", choices=list(MEASURES) + ["all"], default="all")
    _add_dff(p)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", type=Path)

    p = sub.add_parser("sir", help="SIR affected scale per seed vertex")
    _add_graph(p)
    _add_sir(p)
    p.add_argument("--out", type=Path)

    p = sub.add_parser("evaluate", help="removal experiments scored by the diffusion index")
    p.add_argument("experiment", choices=["rank-removal", "ratio-sweep", "infection-sweep"])
    _add_graph(p)
    _add_sir(p)
    _add_dff(p)
    p.add_argument("--measures", default="all", help="comma-separated subset of " + ",".join(MEASURES))
    p.add_argument("--parts", type=int, default=50)
    p.add_argument("--ratios", type=_floats, default=list(DEFAULT_RATIOS))
    p.add_argument("--mu-ratios", type=_floats, default=list(DEFAULT_MU_RATIOS))
    p.add_argument("--fraction", type=float, default=0.05)
    p.add_argument("--out-dir", type=Path, default=Path("results"))

    sub.add_parser("verify-toy", help="check the build against the worked example")
    return parser


def _load(args):
    return toy.toy_registry() if args.toy else io.read_native(args.graph)


def _seed(args) -> int:
    if args.seed is None:
        args.seed = secrets.randbits(32)
        print(f"seed: {args.seed}", file=sys.stderr)
    return args.seed


def _params(args) -> SirParams:
    return SirParams(
        mu_ratio=args.mu_ratio, mu=args.mu, beta=args.beta, trials=args.trials, seed=_seed(args), max_steps=args.max_steps
    )


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text, encoding="utf-8")


OUTPUT_ARGS = ("out", "out_dir")


def _config(args) -> dict:
    """Run settings minus output destinations, so reruns elsewhere match byte for byte."""
    return {k: (str(v) if isinstance(v, Path) else v) for k, v in vars(args).items() if k not in OUTPUT_ARGS}


def _echo(args) -> str:
    return "# config " + json.dumps(_config(args), sort_keys=True) + "\n"


def centrality_table(registry, results: dict[str, CentralityResult]) -> str:
    lines = ["hyperedge\tvertices\tmeasure\tscore\trank"]
    for name, res in results.items():
        ranks = res.rank_of()
        for sid in registry.hyperedge_ids():
            lines.append(f"{sid}\t{registry.label(sid)}\t{name}\t{res.scores[sid]!r}\t{ranks[sid]}")
    return "\n".join(lines) + "\n"


def _measures(text: str) -> list[str]:
    if text == "all":
        return list(MEASURES)
    names = [m.strip() for m in text.split(",") if m.strip()]
    unknown = [m for m in names if m not in MEASURES]
    if unknown or not names:
        raise UsageError(f"unknown measures {unknown}; choose from {', '.join(MEASURES)}")
    return names


def _dff_config(args) -> DffConfig:
    return DffConfig(t=args.t, distribution=args.distribution, m=args.eigenpairs, operator=args.operator)


def cmd_ingest(args) -> int:
    if not args.prefix:
        raise UsageError("--prefix is required")
    if args.format == "benson":
        registry = io.load_benson(args.prefix, args.dedup)
    else:
        registry = io.read_native(args.prefix)
    stats = dataset_report(registry)
    if args.out:
        io.write_native(registry, args.out)
    print(
        f"{stats.vertices} vertices, {stats.hyperedges} hyperedges, <k>={stats.avg_degree:.4g}, "
        f"k_max={stats.k_max}, dedup={args.dedup}"
    )
    return 0


def cmd_laplacian(args) -> int:
    registry = _load(args)
    if args.which == "LH":
        matrix = assemble_lh(registry)
        labels = [registry.label(i) for i in range(len(registry))]
    else:
        k = 0 if args.which == "L0" else args.k
        if not 0 <= k <= registry.n:
            raise UsageError(f"--k must lie in 0..{registry.n}")
        matrix = build_lk(registry, k, weighted=args.weighted)
        labels = [registry.label(i) for i in registry.ids_of_dim(k)]
    text = format_dense(matrix, labels) if args.format == "dense" else format_triplets(matrix)
    _emit(_echo(args) + text, args.out)
    return 0


def cmd_centrality(args) -> int:
    registry = _load(args)
    measures = list(MEASURES) if args.measure == "all" else [args.measure]
    results = compute_centralities(
        registry, measures, weighted=args.weighted, dff_config=_dff_config(args), workers=args.workers
    )
    _emit(_echo(args) + centrality_table(registry, results), args.out)
    return 0


def cmd_sir(args) -> int:
    registry = _load(args)
    params = _params(args)
    net = ContactNetwork.from_registry(registry)
    outcome = mean_affected_scale(net, params, workers=args.workers)
    lines = [_echo(args).rstrip("\n"), f"# mu {outcome.mu!r}", "seed_vertex\ttrials\tmean_n_u\tF_u"]
    for i, v in enumerate(net.vertices):
        lines.append(f"{v}\t{params.trials}\t{outcome.mean_counts[i]!r}\t{outcome.scale[i]!r}")
    lines.append(f"# F {outcome.F!r}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_evaluate(args) -> int:
    registry = _load(args)
    params = _params(args)
    measures = _measures(args.measures)
    if args.experiment == "rank-removal" and not 1 <= args.parts <= registry.num_hyperedges:
        raise UsageError(f"--parts must lie in 1..{registry.num_hyperedges}")
    if any(not 0 < p <= 1 for p in args.ratios):
        raise UsageError("--ratios must lie in (0, 1]")
    if any(r <= 0 for r in args.mu_ratios):
        raise UsageError("--mu-ratios must be positive")
    if not 0 < args.fraction <= 1:
        raise UsageError("--fraction must lie in (0, 1]")
    results = compute_centralities(
        registry, measures, weighted=args.weighted, dff_config=_dff_config(args), workers=args.workers
    )
    config = _config(args)
    kw = dict(params=params, workers=args.workers, recompute_mu=args.recompute_mu)
    if args.experiment == "rank-removal":
        for name, res in results.items():
            report = part_removal_experiment(registry, res, parts=args.parts, **kw)
            report.config["cli"] = config
            report.write(args.out_dir, f"rank-removal-{name}")
            print(f"{name}\trho={report.summary['rho']:.4f}\trho_score={report.summary['rho_score']:.4f}")
    elif args.experiment == "ratio-sweep":
        report = ratio_sweep(registry, results, args.ratios, **kw)
        report.config["cli"] = config
        print("\n".join(str(p) for p in report.write(args.out_dir)))
    else:
        report = infection_sweep(registry, results, args.mu_ratios, args.fraction, **kw)
        report.config["cli"] = config
        print("\n".join(str(p) for p in report.write(args.out_dir)))
    return 0


def cmd_verify_toy(args) -> int:
    from .verify import verify_toy

    checks = verify_toy()
    for check in checks:
        print(check.line())
    return 0 if all(c.passed for c in checks) else EXIT_VERIFY


COMMANDS = {
    "ingest": cmd_ingest,
    "laplacian": cmd_laplacian,
    "centrality": cmd_centrality,
    "sir": cmd_sir,
    "evaluate": cmd_evaluate,
    "verify-toy": cmd_verify_toy,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return COMMANDS[args.command](args)
    except (UsageError, ArgumentError) as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FileNotFoundError, InputError, DegenerateNetworkError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (NumericalError, SimulationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
