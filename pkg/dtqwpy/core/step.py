# Copyright (c) 2021 the dtqwpy developers
# Licensed under the MIT License. See LICENSE for details.

import numpy as np
import xarray as xr
from tqdm import tqdm

from dtqwpy.core import coin, shift
from dtqwpy.errors import ConfigurationError, ContractViolation


def get_timestep(g, cfg, shift_step=None):
    """
    Gets the full walk step U = S C

    :param g: (Graph)
    :param cfg: (CoinConfig) coin to flip before each shift
    :param shift_step: (function) replacement for the flip-flop shift, if any
    :return: a function with the above values initialized as static variables
    """
    coin_step = coin.get_coin_step(g, cfg)
    if shift_step is None:
        shift_step = shift.get_shift_step(g)

    def timestep(state):
        """
        This function performs one single step

        1 - the coin, on every vertex block
        2 - the shift, once the coin is complete everywhere

        :param state: (complex array (arc_count,))
        :return: (complex array (arc_count,))
        """
        return shift_step(coin_step(state))

    return timestep


def step(state, g, cfg):
    return get_timestep(g, cfg)(state)


def run(state, g, cfg, t, hook=None, shift_step=None, progress=False):
    """
    Applies ``t`` steps. Nothing is renormalized along the way.

    :param state: (complex array (arc_count,)) initial amplitudes
    :param g: (Graph)
    :param cfg: (CoinConfig)
    :param t: (int) number of steps, t >= 0
    :param hook: (function) called as ``hook(it, state)`` after every step, it = 1 .. t
    :param shift_step: (function) replacement for the flip-flop shift, if any
    :param progress: (bool) show a progress bar
    :return: (complex array (arc_count,)) the state after ``t`` steps
    """
    if t < 0:
        raise ContractViolation("Step count must be >= 0, got " + str(t))

    one_step = get_timestep(g, cfg, shift_step=shift_step)
    state = np.asarray(state, dtype=np.complex128)
    for it in tqdm(range(1, t + 1), disable=not progress):
        state = one_step(state)
        if hook is not None:
            hook(it, state)

    return state


def position_distribution(state, g):
    """
    Probability of finding the walker on each vertex: |amplitude|^2 summed over the vertex's
    arcs, loop arc included.

    :param state: (complex array (arc_count,))
    :param g: (Graph)
    :return: (float array (N,))
    """
    return np.add.reduceat(np.abs(state) ** 2.0, g.arc_table.offsets[:-1])


def probability_at(state, g, vertices):
    """
    Total position probability on a set of vertices

    :param state: (complex array (arc_count,))
    :param g: (Graph)
    :param vertices: (iterable of int)
    :return: (float)
    """
    table = g.arc_table
    return float(
        sum(np.sum(np.abs(state[table.vertex_slice(j)]) ** 2.0) for j in vertices)
    )


def make_probability_trace(values):
    """
    Wraps per-step probabilities, step 0 being the state before any evolution

    :param values: (float array (t_max + 1,))
    :return: (xarray DataArray) named ``probability`` over dim ``step``
    """
    values = np.asarray(values, dtype=np.float64)
    return xr.DataArray(
        data=values,
        coords=[("step", np.arange(values.size))],
        name="probability",
    )


def trace_probability(state, g, cfg, vertices, t_max, shift_step=None, progress=False):
    """
    Runs ``t_max`` steps and records the probability on ``vertices`` before and after every step

    :return: (xarray DataArray) the probability trace
    """
    values = np.zeros(t_max + 1)
    values[0] = probability_at(state, g, vertices)

    def record(it, current):
        values[it] = probability_at(current, g, vertices)

    run(state, g, cfg, t_max, hook=record, shift_step=shift_step, progress=progress)

    return make_probability_trace(values)


def spreading_initial_state(g):
    """
    Walker sitting on the lattice center, in equal superposition of the neighbour directions.
    The loop direction is left empty.

    :param g: (Graph) a lattice with odd sides
    :return: (complex array (arc_count,))
    """
    center = g.center
    table = g.arc_table
    block = table.vertex_slice(center)

    state = np.zeros(table.arc_count, dtype=np.complex128)
    neighbour_arcs = np.arange(block.start, block.stop)[~table.is_loop[block]]
    state[neighbour_arcs] = 1.0 / np.sqrt(neighbour_arcs.size)
    return state


def get_spreading_coin(g, n, family=coin.GROVER_LOOP):
    if family == coin.STANDARD_GROVER:
        return coin.CoinConfig.standard(g)
    if np.any(g.has_loop):
        return coin.CoinConfig.uniform(g, n)
    if n > 0.0:
        raise ConfigurationError("Loop weight " + str(n) + " needs loop slots on the lattice")
    return coin.CoinConfig.standard(g)


def spreading_probe(g, n, t_max, family=coin.GROVER_LOOP, progress=False):
    """
    Probability of finding the walker back on the lattice center after each step, starting from
    the center with the loop direction empty.

    :param g: (Graph) odd x odd lattice, with loop slots when n > 0
    :param n: (float) loop weight of the Grover-loop coin
    :param t_max: (int) number of steps
    :param family: (string) ``standard-grover`` treats a loop slot as one actual loop and ignores
        ``n``
    :return: (xarray DataArray) trace of length t_max + 1
    """
    cfg = get_spreading_coin(g, n, family=family)
    return trace_probability(
        spreading_initial_state(g), g, cfg, [g.center], t_max, progress=progress
    )
