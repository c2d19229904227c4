# Copyright (c) 2021 the dtqwpy developers
# Licensed under the MIT License. See LICENSE for details.

from dataclasses import dataclass

import numpy as np

from dtqwpy.errors import ConfigurationError, ContractViolation

STANDARD_GROVER = "standard-grover"
GROVER_LOOP = "grover-loop"
ALL_COIN_FAMILIES = [STANDARD_GROVER, GROVER_LOOP]


@dataclass(frozen=True, eq=False)
class CoinConfig:
    """
    Which coin to flip at every vertex.

    ``family`` is either the standard Grover coin, where a loop slot counts as one more ordinary
    direction, or the Grover-loop coin, where the loop arc of vertex ``j`` enters the diagonal
    state with weight ``loop_weights[j]``. Vertices in ``marked`` have their coin block negated.
    """

    family: str
    loop_weights: np.ndarray
    marked: frozenset = frozenset()

    @classmethod
    def standard(cls, g, marked=()):
        return cls(
            family=STANDARD_GROVER,
            loop_weights=np.zeros(g.vertex_count),
            marked=frozenset(int(m) for m in marked),
        )

    @classmethod
    def uniform(cls, g, n, marked=()):
        """
        Grover-loop coin with the same weight on every loop slot

        :param g: (Graph)
        :param n: (float) loop weight, n >= 0
        :param marked: (iterable of int) marked vertices
        :return: (CoinConfig)
        """
        n = float(n)
        if n > 0.0 and not np.all(g.has_loop):
            raise ConfigurationError(
                "Loop weight " + str(n) + " needs a loop slot on every vertex"
            )
        weights = np.where(g.has_loop, n, 0.0)
        return cls.from_weights(g, weights, marked=marked)

    @classmethod
    def from_weights(cls, g, weights, marked=()):
        cfg = cls(
            family=GROVER_LOOP,
            loop_weights=np.array(weights, dtype=np.float64),
            marked=frozenset(int(m) for m in marked),
        )
        cfg.validate(g)
        return cfg

    def with_marked(self, marked):
        return CoinConfig(
            family=self.family,
            loop_weights=self.loop_weights,
            marked=frozenset(int(m) for m in marked),
        )

    def validate(self, g):
        if self.family not in ALL_COIN_FAMILIES:
            raise ConfigurationError("Unknown coin family <" + str(self.family) + ">")

        weights = self.loop_weights
        if weights.shape != (g.vertex_count,):
            raise ConfigurationError(
                "Expected "
                + str(g.vertex_count)
                + " loop weights, got "
                + str(weights.shape)
            )
        if not np.all(np.isfinite(weights)) or np.any(weights < 0.0):
            raise ConfigurationError("Loop weights must be finite and non-negative")
        bad = np.flatnonzero((weights > 0.0) & ~g.has_loop)
        if bad.size:
            raise ConfigurationError(
                "Vertex " + str(int(bad[0])) + " has a loop weight but no loop slot"
            )
        if any(m < 0 or m >= g.vertex_count for m in self.marked):
            raise ConfigurationError("Marked vertex outside the graph")


def diagonal_state(g, j, n):
    """
    Weighted diagonal state of vertex ``j``: every neighbour direction gets 1/sqrt(m + n) and the
    loop direction sqrt(n)/sqrt(m + n), with m = Deg(j). Ordered like the arc block of ``j``.

    :param g: (Graph)
    :param j: (int) vertex
    :param n: (float) loop weight
    :return: (float array) unit vector over the arcs of ``j``
    """
    m = int(g.degree[j])
    has_loop = bool(g.has_loop[j])
    if n > 0.0 and not has_loop:
        raise ConfigurationError(
            "Vertex " + str(j) + " has no loop slot to carry weight " + str(n)
        )
    if m + n <= 0.0:
        raise ConfigurationError(
            "Vertex " + str(j) + " has an empty diagonal state (no neighbours, zero loop weight)"
        )

    d = np.full(m + int(has_loop), 1.0 / np.sqrt(m + n))
    if has_loop:
        d[-1] = np.sqrt(n) / np.sqrt(m + n)
    return d


def get_coin_diagonal(g, cfg):
    """
    All diagonal states of the graph laid out as one flat real vector over the arc basis.

    :param g: (Graph)
    :param cfg: (CoinConfig)
    :return: (float array (arc_count,))
    """
    table = g.arc_table
    src = table.source

    if cfg.family == STANDARD_GROVER:
        block_size = np.diff(table.offsets).astype(np.float64)
        return 1.0 / np.sqrt(block_size[src])

    cfg.validate(g)
    norm = g.degree + cfg.loop_weights
    empty = np.flatnonzero(norm <= 0.0)
    if empty.size:
        raise ConfigurationError(
            "Vertex "
            + str(int(empty[0]))
            + " has an empty diagonal state (no neighbours, zero loop weight)"
        )
    arc_weight = np.where(table.is_loop, cfg.loop_weights[src], 1.0)
    return np.sqrt(arc_weight) / np.sqrt(norm[src])


def get_coin_step(g, cfg):
    """
    This function creates the coin stepper for a graph and coin configuration

    Each vertex block a_j is replaced by 2 d_j <d_j|a_j> - a_j, i.e. a rank-1 update per block,
    and negated afterwards if the vertex is marked.

    :param g: (Graph)
    :param cfg: (CoinConfig)
    :return: a function with the diagonal states and block layout initialized as static variables
    """
    table = g.arc_table
    diag = get_coin_diagonal(g, cfg)
    starts = table.offsets[:-1]
    arc_vertex = table.source
    arc_count = table.arc_count

    sign = None
    if cfg.marked:
        sign = np.where(np.isin(arc_vertex, list(cfg.marked)), -1.0, 1.0)

    def apply_coin_to_state(state):
        """
        :param state: (complex array (arc_count,)) amplitudes before the coin
        :return: (complex array (arc_count,)) amplitudes after the coin
        """
        if state.shape != (arc_count,):
            raise ContractViolation(
                "State has shape "
                + str(state.shape)
                + ", the arc basis has "
                + str(arc_count)
                + " arcs"
            )
        overlap = np.add.reduceat(diag * state, starts)
        out = 2.0 * diag * overlap[arc_vertex] - state
        if sign is not None:
            out *= sign
        return out

    return apply_coin_to_state


def apply_coin(state, g, cfg):
    return get_coin_step(g, cfg)(state)
