# Copyright (c) 2021 the dtqwpy developers
# Licensed under the MIT License. See LICENSE for details.

"""
Quantum-walk spatial search: target-probability traces, first peaks, weight sweeps and size
scaling studies.
"""

import math

import numpy as np
import xarray as xr

from dtqwpy import initializers, outer_loop
from dtqwpy.core import coin, graph, step
from dtqwpy.diagnostics import low_level_helpers as llh
from dtqwpy.errors import ConfigurationError, ContractViolation

ALL_SCALING_FAMILIES = ["lattice2d", "lattice3d", "complete"]
ZERO_WEIGHT = "zero"


def default_window(vertex_count, multiplier=10):
    """
    :param vertex_count: (int) N
    :param multiplier: (int) window length in units of ceil(sqrt(N))
    :return: (int) number of steps to simulate
    """
    return int(multiplier * math.ceil(math.sqrt(vertex_count)))


def run_search(g, cfg, t_max, progress=False):
    """
    Searches for the marked vertices of ``cfg`` starting from the uniform initial state.

    :param g: (Graph)
    :param cfg: (CoinConfig) with a non-empty marked set
    :param t_max: (int) steps to simulate, >= 1
    :return: (xarray DataArray) probability on the marked set, steps 0 .. t_max
    """
    if not cfg.marked:
        raise ConfigurationError("A search needs at least one marked vertex")
    if t_max < 1:
        raise ContractViolation("A search needs t_max >= 1, got " + str(t_max))

    return step.trace_probability(
        initializers.search_initial_state(g, cfg),
        g,
        cfg,
        sorted(cfg.marked),
        t_max,
        progress=progress,
    )


def search_peak(g, cfg, t_max):
    """
    Single search reduced to its first peak

    :return: (PeakResult)
    """
    return llh.find_first_peak(run_search(g, cfg, t_max))


def _peak_for_weight(g, n, targets, t_max):
    cfg = coin.CoinConfig.uniform(g, n, marked=targets)
    return search_peak(g, cfg, t_max)


def weight_sweep(
    g,
    targets,
    n_grid,
    t_max=None,
    scheduler="threads",
    num_workers=None,
    progress=False,
):
    """
    First peak of the search for each uniform loop weight of a grid.

    :param g: (Graph) with loop slots if any weight is > 0
    :param targets: (int or list of int) marked vertices
    :param n_grid: (list of float) loop weights, all >= 0
    :param t_max: (int) steps per search, defaults to ``default_window(N)``
    :return: (xarray Dataset) ``peak_probability``, ``peak_step`` and ``truncated`` over dim ``n``
    """
    targets = [targets] if np.isscalar(targets) else list(targets)
    n_grid = np.asarray(n_grid, dtype=np.float64)
    if np.any(n_grid < 0.0):
        raise ConfigurationError("Loop weights must be >= 0")
    if t_max is None:
        t_max = default_window(g.vertex_count)

    peaks = outer_loop.run_batch(
        _peak_for_weight,
        [{"g": g, "n": n, "targets": targets, "t_max": t_max} for n in n_grid],
        scheduler=scheduler,
        num_workers=num_workers,
        progress=progress,
    )

    return _peaks_to_dataset(peaks, ("n", n_grid))


def compare_weights(g, targets, weights, t_max=None):
    """
    Full search traces for a handful of uniform loop weights, side by side

    :return: (xarray DataArray) probability over dims (``n``, ``step``)
    """
    targets = [targets] if np.isscalar(targets) else list(targets)
    if t_max is None:
        t_max = default_window(g.vertex_count)

    traces = [
        run_search(g, coin.CoinConfig.uniform(g, n, marked=targets), t_max)
        for n in weights
    ]
    weights = xr.DataArray(np.asarray(weights, dtype=float), dims="n", name="n")
    return xr.concat(traces, dim=weights)


def build_family_graph(family, size, with_loop):
    """
    :param family: (string) ``lattice2d`` (size x size torus), ``lattice3d`` (size^3 torus) or
        ``complete`` (K_size)
    :param size: (int) linear size
    :param with_loop: (bool)
    :return: (Graph)
    """
    if family == "lattice2d":
        return graph.build_lattice([size, size], periodic=True, with_loop=with_loop)
    elif family == "lattice3d":
        return graph.build_lattice([size, size, size], periodic=True, with_loop=with_loop)
    elif family == "complete":
        return graph.build_complete(size, with_loop=with_loop)
    else:
        raise NotImplementedError(
            "The scaling family <" + str(family) + "> has not yet been implemented"
        )


def get_weight_rule(weight_rule):
    """
    :param weight_rule: ``"zero"``, ``"degree-centrality"`` or a fixed float weight
    :return: (bool, function) whether loop slots are needed, and graph -> weight vector
    """
    if weight_rule == ZERO_WEIGHT:
        return False, lambda g: np.zeros(g.vertex_count)
    elif weight_rule == initializers.DEGREE_CENTRALITY:
        return True, initializers.degree_centrality_weights

    fixed_n = float(weight_rule)
    if fixed_n < 0.0:
        raise ConfigurationError("A fixed loop weight must be >= 0")
    return fixed_n > 0.0, lambda g: np.full(g.vertex_count, fixed_n)


def _peak_for_size(family, size, weight_rule, target, window_multiplier, t_max_rule):
    with_loop, weights_of = get_weight_rule(weight_rule)
    g = build_family_graph(family, size, with_loop)
    cfg = coin.CoinConfig.from_weights(g, weights_of(g), marked=[target])
    if t_max_rule is None:
        t_max = default_window(g.vertex_count, window_multiplier)
    else:
        t_max = int(t_max_rule(g.vertex_count))

    return g.vertex_count, search_peak(g, cfg, t_max)


def scaling_study(
    family,
    sizes,
    weight_rule=initializers.DEGREE_CENTRALITY,
    t_max_rule=None,
    target=0,
    window_multiplier=10,
    baseline=False,
    scheduler="threads",
    num_workers=None,
    progress=False,
):
    """
    First peak of the search over a range of graph sizes, and the exponent of t_peak ~ N^a.

    Peaks on the last step of their window are flagged ``truncated`` and left out of the fit.

    :param family: (string) one of ``ALL_SCALING_FAMILIES``
    :param sizes: (list of int) ascending linear sizes
    :param weight_rule: ``"zero"``, ``"degree-centrality"`` or a fixed float weight
    :param t_max_rule: (function) N -> window length, defaults to ``default_window``
    :param target: (int) marked vertex
    :param window_multiplier: (int) passed to ``default_window`` when no rule is given
    :param baseline: (bool) also run the zero-weight search at every size
    :return: (xarray Dataset) over dim ``N`` with the fitted exponent in ``attrs["exponent"]``
    """
    if family not in ALL_SCALING_FAMILIES:
        raise ConfigurationError("Unknown scaling family <" + str(family) + ">")
    if list(sizes) != sorted(sizes):
        raise ConfigurationError("Sizes must be ascending")

    rules = [("", weight_rule)]
    if baseline:
        rules.append(("baseline_", ZERO_WEIGHT))

    list_of_kwargs = [
        {
            "family": family,
            "size": size,
            "weight_rule": rule,
            "target": target,
            "window_multiplier": window_multiplier,
            "t_max_rule": t_max_rule,
        }
        for _, rule in rules
        for size in sizes
    ]
    results = outer_loop.run_batch(
        _peak_for_size,
        list_of_kwargs,
        scheduler=scheduler,
        num_workers=num_workers,
        progress=progress,
    )

    vertex_counts = np.array([n for n, _ in results[: len(sizes)]])
    ds = xr.Dataset(coords={"N": vertex_counts})
    ds["size"] = ("N", np.asarray(sizes, dtype=np.int64))
    for i, (prefix, _) in enumerate(rules):
        peaks = [peak for _, peak in results[i * len(sizes) : (i + 1) * len(sizes)]]
        part = _peaks_to_dataset(peaks, ("N", vertex_counts))
        for name, values in part.data_vars.items():
            ds[prefix + name] = values
        fit_mask = ~part["truncated"].values
        ds.attrs[prefix + "exponent"] = llh.fit_power_law(
            vertex_counts[fit_mask], part["peak_step"].values[fit_mask]
        )

    ds.attrs["weight_rule"] = str(weight_rule)
    ds.attrs["family"] = family
    return ds


def _peaks_to_dataset(peaks, coord):
    name, values = coord
    return xr.Dataset(
        data_vars={
            "peak_probability": (name, np.array([p.p_peak for p in peaks], dtype=np.float64)),
            "peak_step": (name, np.array([p.t_peak for p in peaks], dtype=np.int64)),
            "truncated": (name, np.array([p.truncated for p in peaks], dtype=bool)),
        },
        coords={name: values},
    )
