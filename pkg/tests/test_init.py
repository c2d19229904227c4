# Copyright (c) 2021 the dtqwpy developers
# Licensed under the MIT License. See LICENSE for details.

import copy

import numpy as np
import pytest

from dtqwpy import initializers
from dtqwpy.core import coin, graph
from dtqwpy.errors import ConfigurationError


def __params_with__(section, key, val):
    all_params = initializers.make_default_params_dictionary()
    all_params[section][key] = val
    return all_params


def test_default_params_are_valid():
    all_params = initializers.make_default_params_dictionary()

    assert initializers.validate_params(copy.deepcopy(all_params)) == all_params


@pytest.mark.parametrize(
    "section, key, val",
    [
        ("graph", "family", "hexagonal"),
        ("graph", "family", "edgelist"),
        ("coin", "family", "hadamard"),
        ("coin", "loop_weight", -0.5),
        ("coin", "loop_weight", float("nan")),
        ("search", "targets", []),
        ("search", "steps", -1),
        ("search", "n_step", 0.0),
        ("search", "n_from", 3.0),
        ("search", "sizes", [10, 8]),
        ("backend", "scheduler", "gpu"),
    ],
)
def test_invalid_params(section, key, val):
    with pytest.raises(ConfigurationError):
        initializers.validate_params(__params_with__(section, key, val))


@pytest.mark.parametrize(
    "family, dims, targets",
    [("lattice2d", [20, 20], [400]), ("complete", [10], [3, 10]), ("edgelist", None, [-1])],
)
def test_targets_outside_the_graph(family, dims, targets):
    all_params = __params_with__("search", "targets", targets)
    all_params["graph"].update({"family": family, "dims": dims, "edge_list": "ring.txt"})

    with pytest.raises(ConfigurationError):
        initializers.validate_params(all_params)


def test_check_targets():
    initializers.check_targets([0, 24], 25)

    with pytest.raises(ConfigurationError):
        initializers.check_targets([25], 25)


def test_standard_coin_rejects_loop_weights():
    all_params = __params_with__("coin", "family", coin.STANDARD_GROVER)
    all_params["coin"]["loop_weight"] = 0.5

    with pytest.raises(ConfigurationError):
        initializers.validate_params(all_params)


def test_weight_sources_are_exclusive():
    all_params = __params_with__("coin", "loop_weight", 0.5)
    all_params["coin"]["loop_weights_file"] = "weights.txt"

    with pytest.raises(ConfigurationError):
        initializers.validate_params(all_params)


def test_degree_centrality_weights():
    np.testing.assert_allclose(
        initializers.degree_centrality_weights(graph.build_lattice([5, 5])),
        np.full(25, 4.0 / 24.0),
    )
    np.testing.assert_allclose(
        initializers.degree_centrality_weights(graph.build_complete(7)), np.ones(7)
    )


def test_read_loop_weights(tmp_path):
    path = tmp_path / "weights.txt"
    path.write_text("# vertex weight\n0 0.5\n\n3 1.25\n")

    np.testing.assert_array_equal(
        initializers.read_loop_weights(str(path), 4), [0.5, 0.0, 0.0, 1.25]
    )


@pytest.mark.parametrize("text", ["0\n", "0 x\n", "9 1.0\n"])
def test_read_loop_weights_errors(tmp_path, text):
    path = tmp_path / "weights.txt"
    path.write_text(text)

    with pytest.raises(ConfigurationError):
        initializers.read_loop_weights(str(path), 4)


def test_graph_gets_loop_slots_when_weighted():
    all_params = initializers.make_default_params_dictionary()
    assert not np.any(initializers.get_graph_from_params(all_params).has_loop)

    all_params["coin"]["loop_weight"] = 0.01
    g = initializers.get_graph_from_params(all_params)
    assert np.all(g.has_loop)
    assert g.shape == (20, 20)


def test_graph_dimension_mismatch():
    all_params = __params_with__("graph", "family", "lattice3d")

    with pytest.raises(ConfigurationError):
        initializers.get_graph_from_params(all_params)


def test_get_coin_config_variants(tmp_path):
    g = graph.build_lattice([3, 3], with_loop=True)
    all_params = initializers.make_default_params_dictionary()
    coin_params = all_params["coin"]

    coin_params["loop_weight"] = 0.25
    np.testing.assert_array_equal(
        initializers.get_coin_config(coin_params, g).loop_weights, np.full(9, 0.25)
    )

    coin_params["loop_weight"] = initializers.DEGREE_CENTRALITY
    np.testing.assert_allclose(
        initializers.get_coin_config(coin_params, g, marked=[2]).loop_weights, np.full(9, 0.5)
    )

    path = tmp_path / "weights.txt"
    path.write_text("4 2.0\n")
    coin_params["loop_weight"] = 0.0
    coin_params["loop_weights_file"] = str(path)
    cfg = initializers.get_coin_config(coin_params, g)
    assert cfg.loop_weights[4] == 2.0
    assert cfg.loop_weights.sum() == 2.0

    coin_params["family"] = coin.STANDARD_GROVER
    assert initializers.get_coin_config(coin_params, g, marked=[1]).marked == frozenset([1])
