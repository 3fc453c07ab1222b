"""Command-line entry point: ``hetero-cheb {approximate, sweep, alloc, bounds, bench, serve}``."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from app.domain.approximation import Algorithm, default_n_hat, run_pipeline
from app.domain.experiments import (
    BOUND_KINDS,
    PRESETS,
    RECORD_COLUMNS,
    ExperimentConfig,
    allocation_dump,
    bound_table,
    error_profile,
    fit_linear_time,
    get_preset,
    load_config,
    node_noise_dump,
    run_sweep,
    runtime_study,
    summarize,
    summary_columns,
    write_csv,
    write_gnuplot,
)
from app.domain.experiments.config import parse_n_grid
from app.domain.experiments.export import to_csv_text
from app.domain.experiments.sweep import TIMING_COLUMNS, trial_seed
from app.infra.config import settings
from app.modules.chebyshev import sup_error
from app.modules.noise import SamplingOracle, parse_noise, parse_target

logger = logging.getLogger(__name__)


def _emit(rows: list[dict], output: str | None, columns: list[str] | None = None) -> None:
    if output:
        path = write_csv(rows, output, columns)
        print(f"wrote {len(rows)} rows to {path}")
    else:
        sys.stdout.write(to_csv_text(rows, columns))


def _experiment(args: argparse.Namespace) -> ExperimentConfig:
    """Single-N config from the shared --target/--noise/... flags."""
    fields = {
        "target": args.target,
        "noise": args.noise,
        "distribution": args.distribution,
        "dependence": args.dependence,
        "algorithms": [Algorithm.NOISY],
        "n_grid": [args.N],
        "trials": 1,
        "master_seed": args.seed,
        "sup_resolution": args.resolution,
    }
    if args.r is not None:
        fields["r"] = args.r
    return ExperimentConfig(**fields)


# --- subcommands ---


def cmd_approximate(args: argparse.Namespace) -> int:
    algorithm = Algorithm(args.algorithm)
    if algorithm is Algorithm.NOISY:
        N_hat = args.N
    else:
        N_hat = default_n_hat(args.N) if args.n_hat is None else args.n_hat
    r = settings.presample_fraction if args.r is None else args.r
    target = parse_target(args.target)
    noise = parse_noise(args.noise, args.distribution, args.dependence)
    seed = trial_seed(args.seed, algorithm, args.N, N_hat, 0)
    result = run_pipeline(algorithm, SamplingOracle(target, noise, seed), args.N, N_hat, r)
    err = sup_error(target, result.series, args.resolution)
    print(f"algorithm: {algorithm.value}")
    print(f"target: {target.label}  noise: {noise.label}")
    print(f"N: {args.N}  N_hat: {result.interpolant_degree}  seed: {seed}")
    print(f"chosen_degree: {result.chosen_degree}")
    print(f"sup_error: {err!r}")
    print(f"samples_used: {result.samples_used}")
    print("coefficients:")
    for c in result.series.coeffs:
        print(f"  {float(c)!r}")
    return 0


def cmd_sweep(args: argparse.Namespace) -> int:
    if args.preset:
        config = get_preset(args.preset, args.full_scale or settings.full_scale)
    elif args.config:
        config = load_config(args.config)
    else:
        raise ValueError("Give a config file or --preset NAME")
    updates = {}
    if args.seed is not None:
        updates["master_seed"] = args.seed
    if args.trials is not None:
        updates["trials"] = args.trials
    if updates:
        config = ExperimentConfig.model_validate({**config.model_dump(), **updates})

    records = run_sweep(config, workers=args.workers)
    out = Path(args.output_dir)
    record_cols = RECORD_COLUMNS + (TIMING_COLUMNS if args.timing else [])
    write_csv([r.as_row(args.timing) for r in records], out / "records.csv", record_cols)
    summary = summarize(records)
    write_csv(
        [s.as_row(args.timing) for s in summary],
        out / "summary.csv",
        summary_columns(timing=args.timing),
    )
    (out / "config.txt").write_text(config.render(), encoding="utf-8", newline="\n")
    if args.gnuplot:
        write_gnuplot(
            out / "summary.csv",
            out / "plot.gp",
            [a.value for a in config.algorithms],
            title=args.preset or Path(args.config).stem,
            output="plot.png",
        )
    failed = sum(1 for r in records if r.failed)
    print(f"{len(records)} trials ({failed} failed), {len(summary)} groups -> {out}")
    return 0


def cmd_alloc(args: argparse.Namespace) -> int:
    config = _experiment(args)
    N_hat = default_n_hat(args.N) if args.n_hat is None else args.n_hat
    if args.mode == "allocation":
        trials = 1 if args.trials is None else args.trials
        rows = allocation_dump(config, args.N, N_hat, config.r, trials)
    elif args.mode == "node-noise":
        trials = 100 if args.trials is None else args.trials
        rows = node_noise_dump(config, args.N, N_hat, trials)
    else:
        config = ExperimentConfig.model_validate(
            {
                **config.model_dump(),
                "algorithms": [Algorithm.NOISY, Algorithm.WEIGHTED_KNOWN, Algorithm.HETERO],
                "n_hat_grid": [N_hat],
            }
        )
        rows = error_profile(config, args.N)
    _emit(rows, args.output)
    return 0


def _param_value(text: str) -> object:
    if "," in text:
        try:
            return [float(v) for v in text.split(",") if v.strip()]
        except ValueError:
            return text
    try:
        number = float(text)
    except ValueError:
        return text
    return int(number) if number.is_integer() and "." not in text and "e" not in text else number


def cmd_bounds(args: argparse.Namespace) -> int:
    params: dict[str, object] = {"kind": args.kind}
    for item in args.param:
        key, sep, value = item.partition("=")
        if not sep:
            raise ValueError(f"Expected key=value, got {item!r}")
        params[key.strip()] = _param_value(value.strip())
    _emit(bound_table(params), args.output)
    return 0


def cmd_bench(args: argparse.Namespace) -> int:
    rows = runtime_study(
        parse_n_grid(args.n_grid),
        args.trials,
        target=args.target,
        noise=args.noise,
        master_seed=args.seed,
    )
    _emit([r.as_row() for r in rows], args.output)
    for algorithm in (Algorithm.NOISY, Algorithm.HETERO):
        sel = [r for r in rows if r.algorithm is algorithm]
        if len(sel) >= 2:
            fit = fit_linear_time([r.N for r in sel], [r.median_time for r in sel])
            print(
                f"{algorithm.value}: t = {fit.slope:.3e} N + {fit.intercept:.3e} "
                f"(relative residual {fit.relative_residual:.3f})",
                file=sys.stderr,
            )
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    uvicorn.run("app.main:app", host=args.host, port=args.port, log_level=args.log_level.lower())
    return 0


# --- parser ---


def _add_problem_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("-N", type=int, required=True, help="budget degree; N + 1 samples in total")
    p.add_argument("--n-hat", type=int, default=None, help="interpolation degree (default sqrt N)")
    p.add_argument("--target", default="runge")
    p.add_argument("--noise", default="right_half")
    p.add_argument("--distribution", default="normal", choices=["normal", "uniform"])
    p.add_argument("--dependence", default="independent")
    p.add_argument("-r", type=float, default=None, help="pre-sample fraction")
    p.add_argument("--resolution", type=int, default=settings.sup_resolution)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hetero-cheb", description=__doc__)
    parser.add_argument("--log-level", default=settings.log_level)
    parser.add_argument("--seed", type=int, default=None, help="master seed override")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("approximate", help="run one pipeline and print the result")
    _add_problem_flags(p)
    p.add_argument("--algorithm", default="hetero", choices=[a.value for a in Algorithm])
    p.set_defaults(func=cmd_approximate)

    p = sub.add_parser("sweep", help="Monte-Carlo sweep to records.csv and summary.csv")
    p.add_argument("config", nargs="?", help="experiment config file")
    p.add_argument("--preset", choices=sorted(PRESETS))
    p.add_argument("--full-scale", action="store_true")
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--workers", type=int, default=settings.workers)
    p.add_argument("--output-dir", default=settings.output_dir)
    p.add_argument("--timing", action="store_true", help="add wall-time columns")
    p.add_argument("--gnuplot", action="store_true", help="also write plot.gp")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("alloc", help="per-node allocation, node noise, or error profile")
    _add_problem_flags(p)
    p.add_argument("--mode", default="allocation", choices=["allocation", "node-noise", "profile"])
    p.add_argument(
        "--trials", type=int, default=None,
        help="trials to aggregate (default 1 for allocation, 100 for node-noise)",
    )
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_alloc)

    p = sub.add_parser("bounds", help="tabulate a concentration bound")
    p.add_argument("kind", choices=BOUND_KINDS)
    p.add_argument("--param", action="append", default=[], metavar="KEY=VALUE")
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("bench", help="runtime scaling study, noisy vs hetero")
    p.add_argument("--n-grid", default="logspace(1e3, 1e6, 10)")
    p.add_argument("--trials", type=int, default=5)
    p.add_argument("--target", default="runge")
    p.add_argument("--noise", default="right_half")
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("serve", help="serve the HTTP API")
    p.add_argument("--host", default=settings.app_host)
    p.add_argument("--port", type=int, default=settings.app_port)
    p.set_defaults(func=cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=args.log_level.upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    if getattr(args, "seed", None) is None and args.command in ("approximate", "alloc"):
        args.seed = settings.master_seed
    try:
        return args.func(args)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
