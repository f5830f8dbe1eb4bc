"""CLI entry points for mdsc-ldpc."""

from __future__ import annotations

import argparse
import contextlib
import importlib.resources
import logging
import os
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Iterator, Optional, Sequence

import yaml

from . import __version__
from .config.loader import CONFIG_ENV_VAR, ConfigError, MdscConfig, load_config
from .density import DECaps, bp_threshold_bracket
from .ensemble import (
    EnsembleParams,
    as_fraction,
    design_rate,
    expected_purged_total,
    fully_coupled_sweep,
    pstop_sweep,
    rate_from_purging,
)
from .exceptions import MdscError, ParameterError, UsageError, WindowDecodeFailure
from .finite import MODELS, failure_rate, mc_pstop, purged_cn_mc, sample_graph
from .io import (
    RunManifest,
    artifact_paths,
    dump_json,
    float_range,
    format_float,
    int_range,
    load_params,
    result_document,
    threshold_digits,
    write_csv,
    write_json,
)
from .logging_cfg import configure_logging
from .search import SearchSpace, optimize
from .windowed import (
    ORDER_NAMES,
    DecodeSchedule,
    WindowSpec,
    compare_orders,
    decode_chain,
    profile_sweep,
    wc_bracket,
    worst_case_bracket,
    worst_case_decodes,
)

logger = logging.getLogger(__name__)

TABLE1_RESOURCE = "table1.yaml"


@dataclass
class Outcome:
    """What a subcommand hands back for emission."""

    result: dict[str, Any]
    header: Sequence[str] = ()
    rows: list[Sequence[Any]] = field(default_factory=list)
    seeds: dict[str, int] = field(default_factory=dict)
    params: Optional[EnsembleParams] = None
    status: int = 0


def _params(args: argparse.Namespace) -> EnsembleParams:
    if not getattr(args, "params", None):
        raise UsageError("--params is required for this subcommand")
    return load_params(args.params)


def _size(args: argparse.Namespace, p: EnsembleParams) -> int:
    M = getattr(args, "M", None) or p.M
    if M is None:
        raise UsageError("a section size is required: pass --M or set M in the parameter file")
    return M


def _window(args: argparse.Namespace, p: EnsembleParams) -> WindowSpec:
    return WindowSpec.parse(args.window).check(p)


def _pick(value: Any, fallback: Any) -> Any:
    return fallback if value is None else value


def _delta(args: argparse.Namespace, config: MdscConfig) -> float:
    return _pick(getattr(args, "delta", None), config.de.delta)


def _resolution(args: argparse.Namespace, config: MdscConfig) -> float:
    return _pick(getattr(args, "resolution", None), config.de.resolution)


def _max_window_iters(args: argparse.Namespace, config: MdscConfig) -> int:
    return _pick(getattr(args, "max_window_iters", None), config.window.max_window_iters)


def _seed(args: argparse.Namespace, config: MdscConfig) -> int:
    return _pick(getattr(args, "seed", None), config.monte_carlo.seed)


def _order_seed(args: argparse.Namespace, config: MdscConfig) -> Optional[int]:
    if args.order.strip().lower() in ("random", "2"):
        return _seed(args, config)
    return None


def _coupling(text: str) -> tuple[int, Fraction]:
    gamma2, sep, density = text.partition(":")
    if not sep:
        raise argparse.ArgumentTypeError(f"coupling {text!r} must look like GAMMA2:T")
    try:
        return int(gamma2), as_fraction(density)
    except (ValueError, ParameterError) as exc:
        raise argparse.ArgumentTypeError(f"bad coupling {text!r}: {exc}") from None


def _seed_value(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed {text!r} is not an integer") from None
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError(f"seed {value} must lie in 0 .. 2**64 - 1")
    return value


def _threshold_result(bracket: Any, config: MdscConfig) -> dict[str, Any]:
    result = bracket.to_dict()
    result["threshold_4dp"] = threshold_digits(
        bracket.midpoint, config.output.significant_digits, config.output.threshold_decimals
    )
    return result


def _clean_arguments(args: argparse.Namespace) -> dict[str, Any]:
    return {
        key: value
        for key, value in vars(args).items()
        if key != "func" and isinstance(value, (str, int, float, bool, list, type(None)))
    }


def _emit(
    args: argparse.Namespace,
    config: MdscConfig,
    outcome: Outcome,
    started: float,
) -> None:
    manifest = RunManifest(
        subcommand=args.command,
        params=None if outcome.params is None else outcome.params.to_dict(),
        arguments=_clean_arguments(args),
        seeds=outcome.seeds,
        duration_s=round(time.perf_counter() - started, 6),
        config_source=None if config.source_path is None else str(config.source_path),
    )
    out = Path(args.out) if getattr(args, "out", None) else None
    json_path, csv_path = artifact_paths(out, args.command)
    if json_path is None:
        dump_json(result_document(manifest, outcome.result), sys.stdout)
        return
    write_json(json_path, manifest, outcome.result)
    if outcome.header and csv_path is not None:
        write_csv(csv_path, outcome.header, outcome.rows, config.output.significant_digits)
    print(f"wrote {json_path}" + (f" and {csv_path}" if outcome.header else ""))


def rate_cmd(args: argparse.Namespace, config: MdscConfig) -> Outcome:
    p = _params(args)
    rate = design_rate(p)
    result: dict[str, Any] = {"rate": str(rate), "rate_float": float(rate)}
    M = getattr(args, "M", None) or p.M
    if M is not None:
        result["M"] = M
        result["expected_purged"] = str(expected_purged_total(p, M))
        result["rate_from_purging"] = str(rate_from_purging(p, M))
    return Outcome(result, params=p)


def bp_threshold_cmd(args: argparse.Namespace, config: MdscConfig) -> Outcome:
    p = _params(args)
    caps = DECaps.from_config(config.de)
    bracket = bp_threshold_bracket(p, _delta(args, config), _resolution(args, config), caps)
    return Outcome(_threshold_result(bracket, config), params=p)


def pstop_cmd(args: argparse.Namespace, config: MdscConfig) -> Outcome:
    p = _params(args)
    sizes = int_range(args.m_range) if args.m_range else [_size(args, p)]
    couplings = list(args.coupling or [])
    sweep = fully_coupled_sweep if args.fully_coupled else pstop_sweep
    rows = [(row.label, row.M, row.gamma2, row.T, float(row.value), str(row.value)) for row in sweep(p, sizes, couplings)]
    result = {
        "rows": [
            {"label": label, "M": M, "gamma2": gamma2, "T": str(T), "p_stop": value, "exact": exact}
            for label, M, gamma2, T, value, exact in rows
        ]
    }
    return Outcome(result, ("label", "M", "gamma2", "T", "p_stop", "exact"), rows, params=p)


def worst_threshold_cmd(args: argparse.Namespace, config: MdscConfig) -> Outcome:
    p = _params(args)
    spec = _window(args, p)
    delta = _delta(args, config)
    iters = _max_window_iters(args, config)
    bracket = worst_case_bracket(
        spec, p, delta, _resolution(args, config), iters, tol_fp=config.de.tol_fp
    )
    result = {"W": list(spec.sizes), "C": spec.complexity, **_threshold_result(bracket, config)}
    if args.dump_epsilon is not None:
        if not args.out:
            raise UsageError("--dump-epsilon needs --out")
        outcome = worst_case_decodes(spec, p, args.dump_epsilon, delta, iters, tol_fp=config.de.tol_fp)
        target = Path(args.out) / "worst_window.csv"
        target.parent.mkdir(parents=True, exist_ok=True)
        outcome.final.write_csv(target)
        result["dump"] = {"epsilon": args.dump_epsilon, "path": str(target), **outcome.to_record()}
    return Outcome(result, params=p)


def wc_threshold_cmd(args: argparse.Namespace, config: MdscConfig) -> Outcome:
    p = _params(args)
    spec = _window(args, p)
    schedule = DecodeSchedule.for_params(p, args.order, _order_seed(args, config))
    bracket = wc_bracket(
        spec,
        p,
        schedule,
        _delta(args, config),
        _resolution(args, config),
        _max_window_iters(args, config),
        tol_fp=config.de.tol_fp,
    )
    result = {"W": list(spec.sizes), "order": schedule.name, **_threshold_result(bracket, config)}
    seeds = {} if schedule.seed is None else {"order": schedule.seed}
    return Outcome(result, params=p, seeds=seeds)


def optimize_cmd(args: argparse.Namespace, config: MdscConfig) -> Outcome:
    p = _params(args)
    space = SearchSpace(p.L2, args.complexity, args.min, args.max)
    report = optimize(
        space,
        p,
        _delta(args, config),
        _resolution(args, config),
        coarse_resolution=_pick(args.coarse_resolution, config.search.coarse_resolution),
        refine_fraction=config.search.refine_fraction,
        tie_factor=config.search.tie_factor,
        workers=_pick(args.workers, config.search.workers),
        max_window_iters=_max_window_iters(args, config),
    )
    result = report.to_dict()
    result["best_threshold_4dp"] = threshold_digits(
        report.best_threshold, config.output.significant_digits, config.output.threshold_decimals
    )
    candidates = [cand.to_row() for cand in report.all]
    header = ("W", "C", "threshold", "lower", "upper", "resolution")
    rows = [[row[key] for key in header] for row in candidates]
    return Outcome(result, header, rows, params=p)


def profile_cmd(args: argparse.Namespace, config: MdscConfig) -> Outcome:
    p = _params(args)
    spec = _window(args, p)
    epsilons = float_range(args.epsilon)
    seed = _order_seed(args, config)
    schedule = DecodeSchedule.for_params(p, args.order, seed)
    delta = _delta(args, config)
    iters = _max_window_iters(args, config)
    seeds = {} if seed is None else {"order": seed}

    if len(epsilons) > 1:
        points = profile_sweep(p, spec, epsilons, schedule, delta, iters)
        table = [point.to_row() for point in points]
        header = ("epsilon", "order", "seed", "average", "windows", "failed_at")
        return Outcome({"points": table}, header, [[row[k] for k in header] for row in table], seeds, p)

    header = ("t", "i", "j", "iterations")
    try:
        profile = decode_chain(p, spec, schedule, epsilons[0], delta, iters, tol_fp=config.de.tol_fp)
    except WindowDecodeFailure as exc:
        partial = exc.profile
        if partial is not None and args.out:
            rows = [(r.t, r.i, r.j, r.iterations) for r in partial.records]
            write_csv(Path(args.out) / "profile_partial.csv", header, rows)
        raise
    rows = [(r.t, r.i, r.j, r.iterations) for r in profile.records]
    return Outcome({"profile": profile.header()}, header, rows, seeds, p)


def orders_cmd(args: argparse.Namespace, config: MdscConfig) -> Outcome:
    p = _params(args)
    spec = _window(args, p)
    seed = _seed(args, config)
    orders = [name.strip() for name in args.orders.split(",") if name.strip()]
    for name in orders:
        if name not in ORDER_NAMES:
            raise UsageError(f"unknown order {name!r}; expected one of {', '.join(ORDER_NAMES)}")
    points = compare_orders(
        p, spec, float_range(args.epsilon), orders, seed, _delta(args, config), _max_window_iters(args, config)
    )
    table = [point.to_row() for point in points]
    header = ("epsilon", "order", "seed", "average", "windows", "failed_at")
    return Outcome({"points": table}, header, [[row[k] for k in header] for row in table], {"order": seed}, p)


def mc_cmd(args: argparse.Namespace, config: MdscConfig) -> Outcome:
    p = _params(args)
    M = _size(args, p)
    seed = _seed(args, config)
    trials = _pick(args.trials, config.monte_carlo.trials)
    estimate = mc_pstop(p, M, trials, seed)
    result: dict[str, Any] = {"M": M, "pstop": estimate.to_dict()}
    for key, value in (("cn_uniform", estimate.reference), ("socket_model", estimate.socket_model)):
        if value is not None:
            result["pstop"][f"sigma_to_{key}"] = estimate.sigma_distance(value)
    seeds = {"mc_pstop": seed}
    if args.purged_graphs:
        purged = purged_cn_mc(p, M, args.position, args.purged_graphs, seed)
        result["purged"] = {**purged.to_dict(), "sigma_distance": purged.sigma_distance}
        seeds["purged"] = seed
    return Outcome(result, params=p, seeds=seeds)


def sample_graph_cmd(args: argparse.Namespace, config: MdscConfig) -> Outcome:
    p = _params(args)
    M = _size(args, p)
    seed = _seed(args, config)
    graph = sample_graph(p, M, seed, args.model)
    result: dict[str, Any] = {
        "M": M,
        "model": graph.model,
        "vns": graph.n_vn,
        "cns": graph.n_cn,
        "edges": graph.edge_count(),
        "purged": len(graph.purged),
        "consistent": graph.is_consistent(),
    }
    seeds = {"graph": seed}
    if args.out:
        target = Path(args.out) / "graph.edges"
        target.parent.mkdir(parents=True, exist_ok=True)
        graph.write_edge_list(target)
        result["edge_list"] = str(target)
    if args.peel_epsilon is not None:
        trials = _pick(args.trials, 100)
        result["peeling"] = {
            "epsilon": args.peel_epsilon,
            "trials": trials,
            "failure_rate": failure_rate(graph, args.peel_epsilon, trials, seed),
        }
        seeds["erasures"] = seed
    return Outcome(result, params=p, seeds=seeds)


def load_table1() -> dict[str, Any]:
    resource = importlib.resources.files("mdsc_ldpc.resources") / TABLE1_RESOURCE
    data = yaml.safe_load(resource.read_text(encoding="utf-8"))
    if not isinstance(data, dict) or "rows" not in data or "common" not in data:
        raise ParameterError(f"{TABLE1_RESOURCE} is malformed")
    return data


def table1_params(common: dict[str, Any], row: dict[str, Any]) -> EnsembleParams:
    return EnsembleParams(
        dl=common["dl"],
        dr=common["dr"],
        L1=common["L1"],
        gamma1=common["gamma1"],
        L2=row["L2"],
        gamma2=row["gamma2"],
        T=row["T"],
    )


def table1_cmd(args: argparse.Namespace, config: MdscConfig) -> Outcome:
    data = load_table1()
    common = data["common"]
    delta = _pick(args.delta, common.get("delta", config.de.delta))
    resolution = _resolution(args, config)
    iters = _max_window_iters(args, config)
    tolerance = config.output.table1_tolerance
    gap_tolerance = config.output.table1_gap_tolerance
    selected = args.rows or list(range(len(data["rows"])))

    header = ("row", "L2", "gamma2", "T", "C", "W", "reference", "worst", "wc", "worst_ok", "gap_ok", "optimizer")
    rows: list[Sequence[Any]] = []
    failures = 0
    for index in selected:
        if not 0 <= index < len(data["rows"]):
            raise UsageError(f"row {index} is outside 0..{len(data['rows']) - 1}")
        row = data["rows"][index]
        p = table1_params(common, row)
        spec = WindowSpec(tuple(row["W"])).check(p)
        worst = worst_case_bracket(spec, p, delta, resolution, iters, tol_fp=config.de.tol_fp).midpoint
        worst_ok = abs(worst - row["worst"]) <= tolerance
        wc: Optional[float] = None
        gap_ok: Optional[bool] = None
        if not args.skip_wc:
            wc = wc_bracket(spec, p, None, delta, resolution, iters, tol_fp=config.de.tol_fp).midpoint
            gap_ok = abs(wc - worst) <= gap_tolerance
        verdict = ""
        if args.optimize:
            low, high = row["bounds"]
            report = optimize(
                SearchSpace(p.L2, row["C"], low, high),
                p,
                delta,
                resolution,
                coarse_resolution=config.search.coarse_resolution,
                refine_fraction=config.search.refine_fraction,
                tie_factor=config.search.tie_factor,
                workers=_pick(args.workers, config.search.workers),
                max_window_iters=iters,
            )
            tied = report.best == spec or spec in report.ties
            verdict = "best" if report.best == spec else ("tie" if tied else str(report.best))
        passed = worst_ok and gap_ok is not False
        failures += 0 if passed else 1
        logger.info(
            "table row %d: worst=%s wc=%s", index, format_float(worst), format_float(wc) if wc is not None else "-",
            extra={"event": "table1", "spec": str(spec)},
        )
        rows.append(
            (index, p.L2, p.gamma2, str(p.T), spec.complexity, str(spec), row["worst"], worst, wc, worst_ok, gap_ok, verdict)
        )

    result = {
        "tolerance": tolerance,
        "gap_tolerance": gap_tolerance,
        "rows": [dict(zip(header, values)) for values in rows],
        "failures": failures,
    }
    if failures:
        print(f"{failures} table row(s) outside tolerance", file=sys.stderr)
    return Outcome(result, header, rows, status=1 if failures else 0)


def _common_parent() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--out", help="Directory for the JSON result and CSV sweep (stdout when omitted)")
    parent.add_argument("--config", help="YAML configuration file for this run")
    return parent


def _params_parent() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--params", help="JSON ensemble parameter file")
    return parent


def _de_parent() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--delta", type=float, help="Target erasure probability")
    parent.add_argument("--resolution", type=float, help="Bisection resolution")
    parent.add_argument("--max-window-iters", type=int, help="Iteration cap per window")
    return parent


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mdsc-ldpc", description="MD-SC-LDPC density evolution toolkit")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common_parent()
    params = _params_parent()
    de = _de_parent()

    def add(name: str, handler: Callable[..., Outcome], help_text: str, *parents: argparse.ArgumentParser) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help_text, parents=[common, *parents])
        sp.set_defaults(func=handler)
        return sp

    rate_p = add("rate", rate_cmd, "Design rate of the ensemble", params)
    rate_p.add_argument("--M", type=int)

    add("bp-threshold", bp_threshold_cmd, "Full-code BP threshold", params, de)

    pstop_p = add("pstop", pstop_cmd, "Size-2 stopping-set probability", params)
    pstop_p.add_argument("--M", type=int)
    pstop_p.add_argument("--m-range", help="Section sizes, e.g. 64:4096:x2")
    pstop_p.add_argument("--coupling", action="append", type=_coupling, help="GAMMA2:T pair, repeatable")
    pstop_p.add_argument("--fully-coupled", action="store_true", help="Add 1D and fully coupled comparison rows")

    worst_p = add("worst-threshold", worst_threshold_cmd, "Worst-case window threshold", params, de)
    worst_p.add_argument("--window", required=True, help="Window sizes, e.g. 5,5,4,2,3,4,5")
    worst_p.add_argument("--dump-epsilon", type=float, help="Write the worst-case window after decoding at this value")

    wc_p = add("wc-threshold", wc_threshold_cmd, "Chain threshold of the windowed decoder", params, de)
    wc_p.add_argument("--window", required=True)
    wc_p.add_argument("--order", default="natural")
    wc_p.add_argument("--seed", type=_seed_value)

    opt_p = add("optimize", optimize_cmd, "Search window vectors under a complexity budget", params, de)
    opt_p.add_argument("--complexity", type=int, required=True)
    opt_p.add_argument("--min", type=int, default=0)
    opt_p.add_argument("--max", type=int)
    opt_p.add_argument("--coarse-resolution", type=float)
    opt_p.add_argument("--workers", type=int)

    prof_p = add("profile", profile_cmd, "Iterations per window configuration", params, de)
    prof_p.add_argument("--window", required=True)
    prof_p.add_argument("--epsilon", required=True, help="Value or range, e.g. 0.3:0.48:0.01")
    prof_p.add_argument("--order", default="natural")
    prof_p.add_argument("--seed", type=_seed_value)

    ord_p = add("orders", orders_cmd, "Compare processing orders", params, de)
    ord_p.add_argument("--window", required=True)
    ord_p.add_argument("--epsilon", required=True)
    ord_p.add_argument("--orders", default=",".join(ORDER_NAMES))
    ord_p.add_argument("--seed", type=_seed_value)

    mc_p = add("mc", mc_cmd, "Monte Carlo cross-checks", params)
    mc_p.add_argument("--M", type=int)
    mc_p.add_argument("--trials", type=int)
    mc_p.add_argument("--seed", type=_seed_value)
    mc_p.add_argument("--purged-graphs", type=int, default=0)
    mc_p.add_argument("--position", type=int, default=0)

    graph_p = add("sample-graph", sample_graph_cmd, "Sample a Tanner graph", params)
    graph_p.add_argument("--M", type=int)
    graph_p.add_argument("--seed", type=_seed_value)
    graph_p.add_argument("--model", choices=MODELS, default="vn")
    graph_p.add_argument("--peel-epsilon", type=float)
    graph_p.add_argument("--trials", type=int)

    table_p = add("table1", table1_cmd, "Reproduce the reference threshold table", de)
    table_p.add_argument("--rows", type=int, nargs="+")
    table_p.add_argument("--skip-wc", action="store_true")
    table_p.add_argument("--optimize", action="store_true")
    table_p.add_argument("--workers", type=int)
    return parser


@contextlib.contextmanager
def _config_override(path: Optional[str]) -> Iterator[None]:
    if not path:
        yield
        return
    previous = os.environ.get(CONFIG_ENV_VAR)
    os.environ[CONFIG_ENV_VAR] = str(Path(path).expanduser())
    try:
        yield
    finally:
        if previous is None:
            os.environ.pop(CONFIG_ENV_VAR, None)
        else:
            os.environ[CONFIG_ENV_VAR] = previous


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    configure_logging()
    started = time.perf_counter()
    try:
        with _config_override(args.config):
            if args.config and not Path(args.config).expanduser().exists():
                raise UsageError(f"configuration file {args.config} does not exist")
            config = load_config()
            outcome = args.func(args, config)
            _emit(args, config, outcome, started)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (MdscError, ConfigError) as exc:
        logger.debug("command failed", exc_info=True, extra={"event": "cli_error"})
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return outcome.status


if __name__ == "__main__":
    sys.exit(main())
