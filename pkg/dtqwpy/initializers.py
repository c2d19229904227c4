# Copyright (c) 2021 the dtqwpy developers
# Licensed under the MIT License. See LICENSE for details.

import mlflow
import numpy as np

from dtqwpy.core import coin, graph
from dtqwpy.errors import ConfigurationError, InvalidSizeError

ALL_GRAPH_FAMILIES = ["complete", "lattice2d", "lattice3d", "edgelist"]
ALL_SCHEDULERS = ["threads", "processes", "synchronous"]
DEGREE_CENTRALITY = "degree-centrality"


def search_initial_state(g, cfg):
    """
    Uniform superposition over vertices, each vertex in its own coin diagonal state:
    (1/sqrt(N)) sum_j |j> |D_j>.

    With all loop weights at zero this is 1/sqrt(N Deg(j)) on every neighbour arc and 0 on loop
    arcs. On a regular graph with a uniform weight it is also the stationary state of the unmarked
    walk.

    :param g: (Graph)
    :param cfg: (CoinConfig) only the family and loop weights are used
    :return: (complex array (arc_count,))
    """
    diag = coin.get_coin_diagonal(g, cfg)
    return diag.astype(np.complex128) / np.sqrt(g.vertex_count)


def degree_centrality_weights(g):
    """
    Loop weight n_j = Deg(j) / (N - 1), where Deg counts neighbours only

    :param g: (Graph)
    :return: (float array (N,))
    """
    if g.vertex_count < 2:
        raise InvalidSizeError("Degree centrality needs N >= 2")
    return g.degree / (g.vertex_count - 1.0)


def read_loop_weights(path, vertex_count):
    """
    Reads per-vertex loop weights, one ``vertex weight`` pair per line. Vertices that are not
    listed get weight 0.

    :param path: (string) weights file
    :param vertex_count: (int) N
    :return: (float array (N,))
    """
    weights = np.zeros(vertex_count)
    with open(path, "r") as fi:
        for line_number, line in enumerate(fi, start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            tokens = line.split()
            try:
                j, n = int(tokens[0]), float(tokens[1])
            except (ValueError, IndexError):
                raise ConfigurationError(
                    path + ", line " + str(line_number) + ": expected `vertex weight`"
                )
            if not 0 <= j < vertex_count:
                raise ConfigurationError(
                    path + ", line " + str(line_number) + ": vertex " + str(j) + " out of range"
                )
            weights[j] = n

    return weights


def make_default_params_dictionary():
    """
    Return a dictionary of default parameters

    :return: (dictionary) Contains the default parameters for dtqwpy
    """

    all_params_dict = {
        "graph": {
            "family": "lattice2d",
            "dims": [20, 20],
            "periodic": True,
            "edge_list": None,
            "loop_slots": False,
        },
        "coin": {
            "family": coin.GROVER_LOOP,
            "loop_weight": 0.0,
            "loop_weights_file": None,
        },
        "search": {
            "targets": [0],
            "steps": None,
            "n_from": 0.0,
            "n_to": 2.0,
            "n_step": 0.01,
            "sizes": None,
            "window_multiplier": 10,
            "baseline": False,
        },
        "backend": {
            "scheduler": "threads",
            "num_workers": None,
            "progress": False,
        },
        "seed": None,
        "output": {
            "out": None,
            "netcdf": None,
        },
    }

    return all_params_dict


def needs_loop_slots(coin_params):
    """
    :param coin_params: (dictionary) the ``coin`` section of the parameters
    :return: (bool) whether the weight source puts weight on loop slots
    """
    if coin_params["loop_weights_file"] is not None:
        return True
    if coin_params["loop_weight"] == DEGREE_CENTRALITY:
        return True
    return float(coin_params["loop_weight"]) > 0.0


def validate_params(all_params):
    """
    Checks that a parameter dictionary is internally consistent

    :param all_params: (dictionary) contains the input parameters
    :return: (dictionary) the same parameters
    """
    graph_params = all_params["graph"]
    coin_params = all_params["coin"]
    search_params = all_params["search"]

    if graph_params["family"] not in ALL_GRAPH_FAMILIES:
        raise ConfigurationError("Unknown graph family <" + str(graph_params["family"]) + ">")
    if graph_params["family"] == "edgelist" and graph_params["edge_list"] is None:
        raise ConfigurationError("The edgelist family needs an edge-list file")
    if graph_params["family"] == "complete" and graph_params["dims"] is not None:
        if len(graph_params["dims"]) != 1:
            raise ConfigurationError("A complete graph takes a single size, e.g. --dims 400")

    if coin_params["family"] not in coin.ALL_COIN_FAMILIES:
        raise ConfigurationError("Unknown coin family <" + str(coin_params["family"]) + ">")
    loop_weight = coin_params["loop_weight"]
    if loop_weight != DEGREE_CENTRALITY:
        loop_weight = float(loop_weight)
        if not np.isfinite(loop_weight) or loop_weight < 0.0:
            raise ConfigurationError("Loop weight must be finite and >= 0")
        if coin_params["loop_weights_file"] is not None and loop_weight > 0.0:
            raise ConfigurationError("Give either a scalar loop weight or a weights file")
    elif coin_params["loop_weights_file"] is not None:
        raise ConfigurationError("Give either degree-centrality or a weights file")
    if coin_params["family"] == coin.STANDARD_GROVER and needs_loop_slots(coin_params):
        raise ConfigurationError("Loop weights only apply to the grover-loop coin")

    if not search_params["targets"]:
        raise ConfigurationError("At least one target vertex is needed")
    vertex_count = get_vertex_count(graph_params)
    if vertex_count is not None:
        check_targets(search_params["targets"], vertex_count)
    elif min(search_params["targets"]) < 0:
        raise ConfigurationError("Target vertices must be >= 0")
    if search_params["steps"] is not None and search_params["steps"] < 0:
        raise ConfigurationError("Step count must be >= 0")
    if search_params["n_step"] <= 0.0:
        raise ConfigurationError("Weight increment must be > 0")
    if not 0.0 <= search_params["n_from"] <= search_params["n_to"]:
        raise ConfigurationError("Need 0 <= n_from <= n_to")
    if search_params["window_multiplier"] <= 0:
        raise ConfigurationError("Window multiplier must be > 0")
    sizes = search_params["sizes"]
    if sizes is not None and list(sizes) != sorted(sizes):
        raise ConfigurationError("Sizes must be ascending")

    if all_params["backend"]["scheduler"] not in ALL_SCHEDULERS:
        raise ConfigurationError(
            "Unknown scheduler <" + str(all_params["backend"]["scheduler"]) + ">"
        )

    return all_params


def get_vertex_count(graph_params):
    """
    :param graph_params: (dictionary) the ``graph`` section of the parameters
    :return: (int) N, or None when only the graph file knows it
    """
    if graph_params["family"] == "edgelist" or graph_params["dims"] is None:
        return None
    return int(np.prod(graph_params["dims"]))


def check_targets(targets, vertex_count):
    bad = [t for t in targets if not 0 <= t < vertex_count]
    if bad:
        raise ConfigurationError(
            "Target " + str(bad[0]) + " outside a graph of " + str(vertex_count) + " vertices"
        )


def get_graph_from_params(all_params):
    """
    Builds the graph of a run, with loop slots whenever the coin puts weight on them

    :param all_params: (dictionary) contains the input parameters
    :return: (Graph)
    """
    with_loop = all_params["graph"]["loop_slots"] or needs_loop_slots(all_params["coin"])
    return get_graph(all_params["graph"], with_loop=with_loop)


def get_graph(graph_params, with_loop):
    """
    Builds the graph a parameter dictionary describes

    :param graph_params: (dictionary) the ``graph`` section of the parameters
    :param with_loop: (bool) attach a loop slot to every vertex
    :return: (Graph)
    """
    family = graph_params["family"]
    dims = graph_params["dims"]

    if family == "complete":
        return graph.build_complete(dims[0], with_loop=with_loop)
    elif family in ("lattice2d", "lattice3d"):
        expected = 2 if family == "lattice2d" else 3
        if len(dims) != expected:
            raise ConfigurationError(
                family + " needs " + str(expected) + " dimensions, got " + str(list(dims))
            )
        return graph.build_lattice(
            dims, periodic=graph_params["periodic"], with_loop=with_loop
        )
    elif family == "edgelist":
        g = graph.read_edge_list(graph_params["edge_list"])
        return g.with_loops() if with_loop else g
    else:
        raise NotImplementedError("The graph family <" + family + "> has not yet been implemented")


def get_coin_config(coin_params, g, marked=()):
    """
    Builds the coin a parameter dictionary describes on graph ``g``

    :param coin_params: (dictionary) the ``coin`` section of the parameters
    :param g: (Graph)
    :param marked: (iterable of int) marked vertices
    :return: (CoinConfig)
    """
    if coin_params["family"] == coin.STANDARD_GROVER:
        return coin.CoinConfig.standard(g, marked=marked)

    if coin_params["loop_weights_file"] is not None:
        weights = read_loop_weights(coin_params["loop_weights_file"], g.vertex_count)
        return coin.CoinConfig.from_weights(g, weights, marked=marked)

    if coin_params["loop_weight"] == DEGREE_CENTRALITY:
        return coin.CoinConfig.from_weights(
            g, degree_centrality_weights(g), marked=marked
        )

    return coin.CoinConfig.uniform(g, float(coin_params["loop_weight"]), marked=marked)


def log_initial_conditions(all_params):
    """
    This function logs the run parameters to the mlflow server.

    :param all_params: (dictionary) contains the provided input parameters
    """
    params_to_log_dict = {}

    for key, val in all_params.items():
        if isinstance(val, dict):
            for sub_key, sub_val in val.items():
                params_to_log_dict[key + "-" + sub_key] = sub_val
        else:
            params_to_log_dict[key] = val

    mlflow.log_params(params_to_log_dict)
