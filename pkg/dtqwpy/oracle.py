# Copyright (c) 2021 the dtqwpy developers
# Licensed under the MIT License. See LICENSE for details.

"""
Brute-force walk with explicit dense matrices on graphs that carry any number of actual
self-loops per vertex.

Nothing here reuses the blocked kernels of :mod:`dtqwpy.core`. The basis, the coin blocks and
the shift are rebuilt from scratch. Only small instances are supported.
"""

from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy import linalg

from dtqwpy import initializers
from dtqwpy.core import coin, step
from dtqwpy.errors import ContractViolation, OracleTooLargeError

MAX_ORACLE_ARCS = 5000


@dataclass(frozen=True, eq=False)
class MultiLoopGraph:
    """
    A loop-free base graph plus ``loop_count[j]`` actual self-loops at vertex ``j``.

    Basis order per vertex: neighbour arcs ascending, then the loop arcs 1 .. loop_count[j].
    """

    base: object
    loop_count: np.ndarray

    def __post_init__(self):
        if np.any(self.base.has_loop):
            raise ContractViolation("The base of a multi-loop graph must be loop-free")
        counts = np.asarray(self.loop_count)
        if counts.shape != (self.base.vertex_count,) or np.any(counts < 0):
            raise ContractViolation("Need one non-negative loop count per vertex")

    @classmethod
    def uniform(cls, base, n):
        return cls(base=base, loop_count=np.full(base.vertex_count, int(n), dtype=np.int64))

    @cached_property
    def basis(self):
        """
        :return: (list of (int, int, int)) arcs as (source, direction, loop index); the loop
            index is 0 on neighbour arcs and 1 .. n on loop arcs
        """
        arcs = []
        for j in range(self.base.vertex_count):
            arcs.extend((j, int(k), 0) for k in self.base.neighbors(j))
            arcs.extend((j, j, i) for i in range(1, int(self.loop_count[j]) + 1))
        return arcs

    @cached_property
    def offsets(self):
        sizes = self.base.degree + np.asarray(self.loop_count)
        return np.concatenate([[0], np.cumsum(sizes)])

    @property
    def arc_count(self):
        return len(self.basis)


def build_dense_shift(mg):
    """
    Permutation matrix swapping (j, k) with (k, j); every loop arc is mapped onto itself

    :param mg: (MultiLoopGraph)
    :return: (float array (arc_count, arc_count))
    """
    position = {arc: a for a, arc in enumerate(mg.basis)}
    shift = np.zeros((mg.arc_count, mg.arc_count))
    for a, (j, k, i) in enumerate(mg.basis):
        target = (k, j, 0) if i == 0 else (j, j, i)
        shift[position[target], a] = 1.0
    return shift


def build_dense_coin(mg, marked=()):
    """
    Block-diagonal Grover coin, 2/s J - I on a vertex with s = Deg(j) + loop_count(j) arcs,
    negated on marked vertices

    :param mg: (MultiLoopGraph)
    :param marked: (iterable of int)
    :return: (float array (arc_count, arc_count))
    """
    marked = set(int(m) for m in marked)
    blocks = []
    for j in range(mg.base.vertex_count):
        s = int(mg.offsets[j + 1] - mg.offsets[j])
        block = 2.0 / s * np.ones((s, s)) - np.eye(s)
        blocks.append(-block if j in marked else block)
    return linalg.block_diag(*blocks)


def build_dense_step(mg, marked=()):
    """
    Explicit evolution matrix U = S C

    :param mg: (MultiLoopGraph)
    :param marked: (iterable of int)
    :return: (complex array (arc_count, arc_count))
    """
    if mg.arc_count > MAX_ORACLE_ARCS:
        raise OracleTooLargeError(
            "Dense oracle limited to "
            + str(MAX_ORACLE_ARCS)
            + " arcs, this graph has "
            + str(mg.arc_count)
        )
    return (build_dense_shift(mg) @ build_dense_coin(mg, marked)).astype(np.complex128)


def unitarity_deviation(u):
    """
    :param u: (complex array) square matrix
    :return: (float) max |U^dagger U - I|
    """
    return float(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))))


def position_distribution(beta, mg):
    return np.add.reduceat(np.abs(beta) ** 2.0, mg.offsets[:-1])


def get_lift_map(g, mg):
    """
    For every arc of the single-loop graph ``g``, the oracle arcs it corresponds to

    :param g: (Graph) base adjacency with one loop slot per vertex (or none when n = 0)
    :param mg: (MultiLoopGraph) same adjacency with uniform loop count n
    :return: (int array (arc_count of g,), int array (arc_count of g, n)) neighbour map with -1 on
        loop arcs, and loop map with -1 on neighbour arcs
    """
    table = g.arc_table
    n = int(mg.loop_count[0]) if mg.loop_count.size else 0
    position = {arc: a for a, arc in enumerate(mg.basis)}

    neighbour_map = np.full(table.arc_count, -1, dtype=np.int64)
    loop_map = np.full((table.arc_count, max(n, 1)), -1, dtype=np.int64)
    for a, (j, k) in enumerate(table.arcs):
        if j == k:
            loop_map[a] = [position[(j, j, i)] for i in range(1, n + 1)]
        else:
            neighbour_map[a] = position[(j, k, 0)]

    return neighbour_map, loop_map


def _check_lift_arguments(g, mg):
    counts = np.unique(mg.loop_count)
    if counts.size > 1:
        raise ContractViolation("Lifting needs the same loop count on every vertex")
    n = int(counts[0]) if counts.size else 0
    if n < 1:
        raise ContractViolation("Lifting needs an integer loop count n >= 1")
    if not np.all(g.has_loop):
        raise ContractViolation("The single-loop graph needs a loop slot on every vertex")
    if not (
        np.array_equal(g.neighbor_offsets, mg.base.neighbor_offsets)
        and np.array_equal(g.neighbor_indices, mg.base.neighbor_indices)
    ):
        raise ContractViolation("The two graphs must share their adjacency")
    return n


def lift_state(psi, g, mg):
    """
    Maps a single-loop state onto n actual loops: neighbour amplitudes are copied and every
    loop copy receives alpha_jj / sqrt(n).

    :param psi: (complex array) state on ``g``
    :param g: (Graph) one loop slot per vertex
    :param mg: (MultiLoopGraph) same adjacency, uniform integer loop count n >= 1
    :return: (complex array (mg.arc_count,))
    """
    n = _check_lift_arguments(g, mg)
    if psi.shape != (g.arc_table.arc_count,):
        raise ContractViolation("State does not match the single-loop graph")

    neighbour_map, loop_map = get_lift_map(g, mg)
    return _apply_lift(psi, neighbour_map, loop_map, n, mg.arc_count)


def _apply_lift(psi, neighbour_map, loop_map, n, arc_count):
    beta = np.zeros(arc_count, dtype=np.complex128)
    is_neighbour = neighbour_map >= 0
    beta[neighbour_map[is_neighbour]] = psi[is_neighbour]
    if n > 0:
        on_loop = ~is_neighbour
        beta[loop_map[on_loop]] = psi[on_loop, None] / np.sqrt(n)
    return beta


def loop_symmetry_deviation(beta, mg):
    """
    :return: (float) largest spread between the loop copies of any vertex
    """
    worst = 0.0
    for j in range(mg.base.vertex_count):
        count = int(mg.loop_count[j])
        if count > 1:
            stop = int(mg.offsets[j + 1])
            copies = beta[stop - count : stop]
            worst = max(worst, float(np.max(np.abs(copies - copies[0]))))
    return worst


def equivalence_check(
    g_base, n, marked=(), steps=100, initial_state=None, shift_step=None
):
    """
    Runs the blocked Grover-loop walk with weight ``n`` next to the dense walk with ``n`` actual
    loops and measures how far apart they drift.

    For n = 0 the blocked standard coin on ``g_base`` is compared with the dense walk on the very
    same basis.

    :param g_base: (Graph) loop-free graph
    :param n: (int) loop weight / loop count, >= 0
    :param marked: (iterable of int) vertices with a negated coin
    :param steps: (int) steps to compare
    :param initial_state: (complex array) state on the single-loop graph, defaults to the search
        initial state
    :param shift_step: (function) replacement shift for the blocked walk
    :return: (dictionary) max deviation of position marginals, of mapped arc amplitudes and of
        loop-copy symmetry over all steps
    """
    if int(n) != n or n < 0:
        raise ContractViolation("The oracle needs an integer loop count, got " + str(n))
    n = int(n)
    marked = sorted(int(m) for m in marked)

    mg = MultiLoopGraph.uniform(g_base, n)
    u = build_dense_step(mg, marked)

    if n == 0:
        g = g_base
        cfg = coin.CoinConfig.standard(g, marked=marked)
        neighbour_map = np.arange(g.arc_table.arc_count)
        loop_map = np.full((neighbour_map.size, 1), -1, dtype=np.int64)
    else:
        g = g_base.with_loops()
        cfg = coin.CoinConfig.uniform(g, n, marked=marked)
        _check_lift_arguments(g, mg)
        neighbour_map, loop_map = get_lift_map(g, mg)

    psi = initializers.search_initial_state(g, cfg) if initial_state is None else initial_state
    psi = np.asarray(psi, dtype=np.complex128)
    beta = _apply_lift(psi, neighbour_map, loop_map, n, mg.arc_count)

    one_step = step.get_timestep(g, cfg, shift_step=shift_step)

    deviations = {
        "marginal_deviation": 0.0,
        "amplitude_deviation": 0.0,
        "loop_symmetry_deviation": 0.0,
    }
    for it in range(steps + 1):
        if it > 0:
            psi = one_step(psi)
            beta = u @ beta

        lifted = _apply_lift(psi, neighbour_map, loop_map, n, mg.arc_count)
        current = {
            "marginal_deviation": np.max(
                np.abs(step.position_distribution(psi, g) - position_distribution(beta, mg))
            ),
            "amplitude_deviation": np.max(np.abs(lifted - beta)),
            "loop_symmetry_deviation": loop_symmetry_deviation(beta, mg),
        }
        for key, val in current.items():
            deviations[key] = max(deviations[key], float(val))

    deviations["max_deviation"] = max(deviations.values())
    deviations["arc_count"] = mg.arc_count
    deviations["steps"] = steps
    return deviations


def spreading_trace(g_base, n, t_max):
    """
    Center-vertex probability of the dense walk with ``n`` actual loops per vertex, starting
    from the center in equal superposition of its neighbour directions

    :param g_base: (Graph) loop-free lattice with odd sides
    :param n: (int) loops per vertex
    :param t_max: (int) steps
    :return: (xarray DataArray) trace of length t_max + 1
    """
    mg = MultiLoopGraph.uniform(g_base, n)
    u = build_dense_step(mg)
    center = g_base.center
    block = slice(int(mg.offsets[center]), int(mg.offsets[center + 1]))
    degree = int(g_base.degree[center])

    beta = np.zeros(mg.arc_count, dtype=np.complex128)
    beta[block.start : block.start + degree] = 1.0 / np.sqrt(degree)

    values = np.zeros(t_max + 1)
    values[0] = np.sum(np.abs(beta[block]) ** 2.0)
    for it in range(1, t_max + 1):
        beta = u @ beta
        values[it] = np.sum(np.abs(beta[block]) ** 2.0)

    return step.make_probability_trace(values)
