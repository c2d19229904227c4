# Copyright (c) 2021 the dtqwpy developers
# Licensed under the MIT License. See LICENSE for details.

"""
Command-line front end: ``spread``, ``search``, ``sweep``, ``scaling`` and ``verify``.

Results are written as CSV to ``--out`` (stdout when omitted). One summary line goes to stdout
when the CSV goes to a file, to stderr otherwise.
"""

import argparse
import sys

import numpy as np

from dtqwpy import initializers, manager, search, storage
from dtqwpy.core import coin, step
from dtqwpy.diagnostics import low_level_helpers as llh
from dtqwpy.diagnostics import verification
from dtqwpy.errors import ConfigurationError, DTQWError
from dtqwpy.infrastructure import print_to_screen

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFICATION_FAILED = 2
EXIT_TRUNCATED = 3

ALL_COMMANDS = ["spread", "search", "sweep", "scaling", "verify"]

DEFAULT_DIMS = {"complete": [400], "lattice2d": [20, 20], "lattice3d": [9, 9, 9]}
SPREAD_DEFAULT_DIMS = {"lattice2d": [101, 101], "lattice3d": [21, 21, 21]}
SPREAD_DEFAULT_STEPS = 50
DEFAULT_SIZES = {
    "lattice2d": list(range(10, 31, 2)),
    "lattice3d": [5, 7, 9],
    "complete": [100, 200, 400, 800],
}

BOOLEAN_FLAGS = ["open-boundary", "loop-slots", "baseline", "progress"]


class ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, self.prog + ": error: " + message + "\n")


def parse_int_list(text):
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError("expected comma-separated integers, got " + text)


def parse_sizes(text):
    """
    ``10,12,14`` or the inclusive range ``10:30:2``
    """
    if ":" not in text:
        return parse_int_list(text)
    try:
        parts = [int(tok) for tok in text.split(":")]
    except ValueError:
        raise argparse.ArgumentTypeError("expected start:stop[:step], got " + text)
    if len(parts) not in (2, 3) or (len(parts) == 3 and parts[2] <= 0):
        raise argparse.ArgumentTypeError("expected start:stop[:step], got " + text)
    start, stop = parts[0], parts[1]
    increment = parts[2] if len(parts) == 3 else 1
    return list(range(start, stop + 1, increment))


def parse_loop_weight(text):
    if text == initializers.DEGREE_CENTRALITY:
        return text
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(
            "expected a number or " + initializers.DEGREE_CENTRALITY + ", got " + text
        )


def get_common_flags():
    parser = ArgumentParser(add_help=False)
    parser.add_argument("--config", help="key=value file, flags on the command line win")
    parser.add_argument(
        "--graph", choices=initializers.ALL_GRAPH_FAMILIES, default="lattice2d"
    )
    parser.add_argument("--dims", type=parse_int_list, help="e.g. 20,20 or 400 for K_400")
    parser.add_argument("--open-boundary", action="store_true")
    parser.add_argument("--edge-list", help="edge-list file for --graph edgelist")
    parser.add_argument("--coin", choices=coin.ALL_COIN_FAMILIES, default=coin.GROVER_LOOP)
    parser.add_argument(
        "--loop-weight",
        type=parse_loop_weight,
        help="uniform weight n >= 0, or " + initializers.DEGREE_CENTRALITY,
    )
    parser.add_argument("--loop-weights", help="per-vertex `vertex weight` file")
    parser.add_argument("--loop-slots", action="store_true", help="loop slots even at n = 0")
    parser.add_argument("--target", type=parse_int_list, default=[0])
    parser.add_argument("--steps", type=int)
    parser.add_argument("--window-multiplier", type=int, default=10)
    parser.add_argument("--n-from", type=float, default=0.0)
    parser.add_argument("--n-to", type=float, default=2.0)
    parser.add_argument("--n-step", type=float, default=0.01)
    parser.add_argument("--sizes", type=parse_sizes, help="10,12,14 or 10:30:2")
    parser.add_argument("--baseline", action="store_true", help="also scale the zero weight")
    parser.add_argument("--seed", type=int)
    parser.add_argument("--out", help="CSV destination, stdout if omitted")
    parser.add_argument("--netcdf", help="also save the result with h5netcdf")
    parser.add_argument(
        "--scheduler", choices=initializers.ALL_SCHEDULERS, default="threads"
    )
    parser.add_argument("--workers", type=int)
    parser.add_argument("--progress", action="store_true")
    parser.add_argument("--experiment", help="track the run under this mlflow experiment")
    parser.add_argument("--tracking-uri", default="local")
    return parser


def get_parser():
    parser = ArgumentParser(
        prog="dtqwpy",
        description="Discrete-time quantum walks with an adjustable self-loop weight",
    )
    subparsers = parser.add_subparsers(dest="command", metavar="command")
    subparsers.required = True
    common = get_common_flags()
    helps = {
        "spread": "center-vertex probability of a walker released at the lattice center",
        "search": "target probability trace and its first peak",
        "sweep": "first peak over a grid of uniform loop weights",
        "scaling": "first peak over graph sizes and the fitted step exponent",
        "verify": "kernel self-checks and agreement with the dense oracle",
    }
    for command in ALL_COMMANDS:
        subparsers.add_parser(command, parents=[common], help=helps[command])
    return parser


def read_config_file(path):
    """
    Turns a ``key=value`` file into command-line tokens. Keys are flag names without dashes.

    :param path: (string) config file
    :return: (list of string) tokens to be placed before the command-line flags
    """
    tokens = []
    with open(path, "r") as fi:
        for line_number, line in enumerate(fi, start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigurationError(
                    path + ", line " + str(line_number) + ": expected key=value"
                )
            key, val = (part.strip() for part in line.split("=", 1))
            if key in ("config", ""):
                raise ConfigurationError(
                    path + ", line " + str(line_number) + ": invalid key <" + key + ">"
                )
            if key in BOOLEAN_FLAGS:
                if val.casefold() in ("1", "true", "yes", "on"):
                    tokens.append("--" + key)
                elif val.casefold() not in ("0", "false", "no", "off"):
                    raise ConfigurationError(
                        path + ", line " + str(line_number) + ": " + key + " takes true/false"
                    )
            else:
                tokens.extend(["--" + key, val])
    return tokens


def expand_config(argv):
    """
    Splices the tokens of a ``--config`` file in right after the command so that explicit flags,
    coming later, override them
    """
    pre_parser = ArgumentParser(add_help=False)
    pre_parser.add_argument("--config")
    known, _ = pre_parser.parse_known_args(argv)
    if known.config is None or not argv:
        return argv
    return argv[:1] + read_config_file(known.config) + argv[1:]


def get_params_from_args(args):
    """
    Fills the default parameter dictionary from parsed flags

    :param args: (argparse.Namespace)
    :return: (dictionary) validated run parameters
    """
    all_params = initializers.make_default_params_dictionary()

    family = args.graph
    dims = args.dims
    if dims is None and family != "edgelist":
        if args.command == "spread":
            dims = SPREAD_DEFAULT_DIMS.get(family, DEFAULT_DIMS[family])
        else:
            dims = DEFAULT_DIMS[family]
    all_params["graph"].update(
        {
            "family": family,
            "dims": dims,
            "periodic": not args.open_boundary,
            "edge_list": args.edge_list,
            "loop_slots": args.loop_slots,
        }
    )

    loop_weight = args.loop_weight
    if loop_weight is None:
        if args.command == "scaling" and args.loop_weights is None:
            loop_weight = initializers.DEGREE_CENTRALITY
        else:
            loop_weight = 0.0
    all_params["coin"].update(
        {
            "family": args.coin,
            "loop_weight": loop_weight,
            "loop_weights_file": args.loop_weights,
        }
    )

    sizes = args.sizes
    if sizes is None and args.command == "scaling":
        sizes = DEFAULT_SIZES.get(family)
    steps = args.steps
    if steps is None and args.command == "spread":
        steps = SPREAD_DEFAULT_STEPS
    all_params["search"].update(
        {
            "targets": args.target,
            "steps": steps,
            "n_from": args.n_from,
            "n_to": args.n_to,
            "n_step": args.n_step,
            "sizes": sizes,
            "window_multiplier": args.window_multiplier,
            "baseline": args.baseline,
        }
    )
    all_params["backend"].update(
        {"scheduler": args.scheduler, "num_workers": args.workers, "progress": args.progress}
    )
    all_params["seed"] = args.seed
    all_params["output"].update({"out": args.out, "netcdf": args.netcdf})

    return initializers.validate_params(all_params)


def get_weight_grid(n_from, n_to, n_step):
    """
    :return: (float array) n_from, n_from + n_step, ... up to n_to inclusive
    """
    count = int(np.floor((n_to - n_from) / n_step + 1e-9)) + 1
    return n_from + n_step * np.arange(count)


def _finish(all_params, command, result, header, rows, summary, metrics, exit_code):
    out = all_params["output"]["out"]
    storage.write_csv(out, header, rows)
    artifacts = [] if out in (None, "-") else [out]
    if all_params["output"]["netcdf"] is not None and result is not None:
        storage.write_netcdf(result, all_params["output"]["netcdf"])
        artifacts.append(all_params["output"]["netcdf"])

    return {
        "command": command,
        "summary": summary,
        "metrics": metrics,
        "artifacts": artifacts,
        "exit_code": exit_code,
    }


def cmd_spread(all_params):
    graph_params = all_params["graph"]
    if graph_params["family"] not in ("lattice2d", "lattice3d"):
        raise ConfigurationError("spread runs on lattices only")
    n = all_params["coin"]["loop_weight"]
    if n == initializers.DEGREE_CENTRALITY or all_params["coin"]["loop_weights_file"]:
        raise ConfigurationError("spread takes a single uniform loop weight")
    n = float(n)
    family = all_params["coin"]["family"]
    with_loop = graph_params["loop_slots"] or n > 0.0
    g = initializers.get_graph(graph_params, with_loop=with_loop)

    trace = step.spreading_probe(
        g,
        n,
        all_params["search"]["steps"],
        family=family,
        progress=all_params["backend"]["progress"],
    )
    header, rows = storage.trace_to_columns(trace)

    return _finish(
        all_params,
        "spread",
        trace,
        header,
        rows,
        {"center": g.center, "steps": trace.size - 1},
        {"final_center_probability": float(trace.values[-1])},
        EXIT_OK,
    )


def cmd_search(all_params):
    targets = all_params["search"]["targets"]
    g = initializers.get_graph_from_params(all_params)
    initializers.check_targets(targets, g.vertex_count)
    cfg = initializers.get_coin_config(all_params["coin"], g, marked=targets)
    t_max = all_params["search"]["steps"]
    if t_max is None:
        t_max = search.default_window(g.vertex_count, all_params["search"]["window_multiplier"])

    trace = search.run_search(g, cfg, t_max, progress=all_params["backend"]["progress"])
    peak = llh.find_first_peak(trace)
    header, rows = storage.trace_to_columns(trace)

    return _finish(
        all_params,
        "search",
        trace,
        header,
        rows,
        {
            "peak_probability": storage.format_value(peak.p_peak),
            "peak_step": peak.t_peak,
            "truncated": peak.truncated,
        },
        {"peak_probability": peak.p_peak, "peak_step": float(peak.t_peak)},
        EXIT_TRUNCATED if peak.truncated else EXIT_OK,
    )


def cmd_sweep(all_params):
    if all_params["coin"]["family"] != coin.GROVER_LOOP:
        raise ConfigurationError("sweep varies the weight of the grover-loop coin")
    targets = all_params["search"]["targets"]
    g = initializers.get_graph(all_params["graph"], with_loop=True)
    initializers.check_targets(targets, g.vertex_count)
    search_params = all_params["search"]
    t_max = search_params["steps"]
    if t_max is None:
        t_max = search.default_window(g.vertex_count, search_params["window_multiplier"])

    ds = search.weight_sweep(
        g,
        targets,
        get_weight_grid(search_params["n_from"], search_params["n_to"], search_params["n_step"]),
        t_max=t_max,
        scheduler=all_params["backend"]["scheduler"],
        num_workers=all_params["backend"]["num_workers"],
        progress=all_params["backend"]["progress"],
    )
    header, rows = storage.peaks_to_columns(ds, "n")

    best = int(np.argmax(ds["peak_probability"].values))
    best_truncated = bool(ds["truncated"].values[best])
    return _finish(
        all_params,
        "sweep",
        ds,
        header,
        rows,
        {
            "best_n": storage.format_value(ds["n"].values[best]),
            "peak_probability": storage.format_value(ds["peak_probability"].values[best]),
            "peak_step": int(ds["peak_step"].values[best]),
            "truncated": best_truncated,
        },
        {
            "best_n": float(ds["n"].values[best]),
            "best_peak_probability": float(ds["peak_probability"].values[best]),
        },
        EXIT_TRUNCATED if best_truncated else EXIT_OK,
    )


class FixedWindow:
    def __init__(self, steps):
        self.steps = steps

    def __call__(self, vertex_count):
        return self.steps


def cmd_scaling(all_params):
    family = all_params["graph"]["family"]
    if family not in search.ALL_SCALING_FAMILIES:
        raise ConfigurationError("scaling needs one of " + ", ".join(search.ALL_SCALING_FAMILIES))
    coin_params = all_params["coin"]
    if coin_params["loop_weights_file"] is not None:
        raise ConfigurationError(
            "scaling takes a uniform weight or " + initializers.DEGREE_CENTRALITY
        )
    if coin_params["family"] == coin.STANDARD_GROVER:
        weight_rule = search.ZERO_WEIGHT
    else:
        weight_rule = coin_params["loop_weight"]
    search_params = all_params["search"]
    if len(search_params["targets"]) != 1:
        raise ConfigurationError("scaling searches for a single target")
    if not search_params["sizes"]:
        raise ConfigurationError("scaling needs --sizes")
    t_max_rule = None
    if search_params["steps"] is not None:
        t_max_rule = FixedWindow(search_params["steps"])

    ds = search.scaling_study(
        family,
        search_params["sizes"],
        weight_rule=weight_rule,
        t_max_rule=t_max_rule,
        target=search_params["targets"][0],
        window_multiplier=search_params["window_multiplier"],
        baseline=search_params["baseline"],
        scheduler=all_params["backend"]["scheduler"],
        num_workers=all_params["backend"]["num_workers"],
        progress=all_params["backend"]["progress"],
    )
    header, rows = storage.peaks_to_columns(ds, "N")

    summary = {
        "exponent": storage.format_value(ds.attrs["exponent"]),
        "min_peak_probability": storage.format_value(ds["peak_probability"].min().item()),
        "truncated": int(ds["truncated"].sum()),
    }
    metrics = {"exponent": ds.attrs["exponent"]}
    if search_params["baseline"]:
        summary["baseline_exponent"] = storage.format_value(ds.attrs["baseline_exponent"])
        metrics["baseline_exponent"] = ds.attrs["baseline_exponent"]

    return _finish(
        all_params,
        "scaling",
        ds,
        header,
        rows,
        summary,
        metrics,
        EXIT_TRUNCATED if bool(ds["truncated"].any()) else EXIT_OK,
    )


def cmd_verify(all_params):
    rows = verification.run_verification_suite()
    header, csv_rows = storage.checks_to_columns(rows)
    failed = [row.name for row in rows if not row.passed]

    return _finish(
        all_params,
        "verify",
        None,
        header,
        csv_rows,
        {"checks": len(rows), "failed": len(failed)},
        {"failed_checks": float(len(failed))},
        EXIT_VERIFICATION_FAILED if failed else EXIT_OK,
    )


COMMANDS = {
    "spread": cmd_spread,
    "search": cmd_search,
    "sweep": cmd_sweep,
    "scaling": cmd_scaling,
    "verify": cmd_verify,
}


def main(argv=None):
    """
    :param argv: (list of string) arguments without the program name, sys.argv by default
    :return: (int) exit code
    """
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = get_parser().parse_args(expand_config(argv))
        all_params = get_params_from_args(args)
        command = COMMANDS[args.command]

        if args.experiment is None:
            outcome = command(all_params)
        else:
            _, outcome = manager.start_run(
                all_params,
                command,
                uris={"tracking": args.tracking_uri},
                name=args.experiment,
            )
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    except (DTQWError, OSError) as exc:
        print("dtqwpy: error: " + str(exc), file=sys.stderr)
        return EXIT_USAGE

    out = all_params["output"]["out"]
    summary_stream = sys.stderr if out in (None, "-") else sys.stdout
    print_to_screen.print_summary(
        {"command": outcome["command"], **outcome["summary"]}, stream=summary_stream
    )
    return outcome["exit_code"]


def run():
    sys.exit(main())
