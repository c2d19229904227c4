# Copyright (c) 2021 the dtqwpy developers
# Licensed under the MIT License. See LICENSE for details.

from dtqwpy import initializers, manager, search
from dtqwpy.core import coin
from dtqwpy.diagnostics import low_level_helpers as llh
from dtqwpy.infrastructure import mlflow_helpers


def run_lattice_search(all_params):
    g = initializers.get_graph_from_params(all_params)
    targets = all_params["search"]["targets"]
    initializers.check_targets(targets, g.vertex_count)
    cfg = initializers.get_coin_config(all_params["coin"], g, marked=targets)
    t_max = search.default_window(g.vertex_count, all_params["search"]["window_multiplier"])
    peak = llh.find_first_peak(search.run_search(g, cfg, t_max, progress=True))

    return {
        "command": "search",
        "summary": {"peak_probability": peak.p_peak, "peak_step": peak.t_peak},
        "metrics": {"peak_probability": peak.p_peak, "peak_step": float(peak.t_peak)},
        "artifacts": [],
        "exit_code": 0,
    }


if __name__ == "__main__":
    all_params_dict = initializers.make_default_params_dictionary()

    all_params_dict["graph"]["family"] = "lattice2d"
    all_params_dict["graph"]["dims"] = [20, 20]
    all_params_dict["coin"]["family"] = coin.GROVER_LOOP
    all_params_dict["coin"]["loop_weight"] = 0.01
    all_params_dict["search"]["targets"] = [0]

    initializers.validate_params(all_params_dict)

    mlflow_exp_name = "lattice-search"

    uris = {
        "tracking": "local",
    }

    that_run, _ = manager.start_run(
        all_params=all_params_dict,
        command=run_lattice_search,
        uris=uris,
        name=mlflow_exp_name,
    )

    print(mlflow_helpers.get_this_metric_of_this_run("peak_probability", that_run))
