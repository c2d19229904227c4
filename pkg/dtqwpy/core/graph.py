# Copyright (c) 2021 the dtqwpy developers
# Licensed under the MIT License. See LICENSE for details.

from dataclasses import dataclass, replace
from functools import cached_property

import numpy as np

from dtqwpy.errors import (
    EdgeListParseError,
    GraphValidationError,
    InvalidSizeError,
    NoCenterError,
    UnsupportedDimensionError,
)


def _read_only(arr, dtype):
    arr = np.array(arr, dtype=dtype)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class Graph:
    """
    Undirected graph on which a walk runs.

    The adjacency is stored in compressed rows: the neighbours of vertex ``j`` are
    ``neighbor_indices[neighbor_offsets[j]:neighbor_offsets[j + 1]]``, sorted ascending.
    Self-loops never appear in the adjacency. Each vertex has at most one loop slot,
    recorded in ``has_loop``.

    Lattices also remember their ``shape`` (row-major vertex ordering) and boundary.
    """

    vertex_count: int
    neighbor_offsets: np.ndarray
    neighbor_indices: np.ndarray
    has_loop: np.ndarray
    shape: tuple = None
    periodic: bool = None

    @classmethod
    def from_edges(
        cls, vertex_count, sources, targets, has_loop, shape=None, periodic=None
    ):
        """
        Builds a graph from directed pairs. The symmetric closure is taken and duplicates are
        collapsed, so each undirected edge may be given once or twice.

        :param vertex_count: (int) number of vertices N
        :param sources: (int array) first endpoint of each pair
        :param targets: (int array) second endpoint of each pair
        :param has_loop: (bool or bool array (N,)) loop slot per vertex
        :param shape: (tuple) lattice dimensions, if the graph is a lattice
        :param periodic: (bool) lattice boundary, if the graph is a lattice
        :return: (Graph)
        """
        n = int(vertex_count)
        if n < 1:
            raise InvalidSizeError("A graph needs at least one vertex")

        sources = np.asarray(sources, dtype=np.int64).ravel()
        targets = np.asarray(targets, dtype=np.int64).ravel()
        if sources.shape != targets.shape:
            raise GraphValidationError("Edge endpoint arrays differ in length")
        if sources.size and (
            min(sources.min(), targets.min()) < 0
            or max(sources.max(), targets.max()) >= n
        ):
            raise GraphValidationError("Edge endpoint outside [0, " + str(n) + ")")
        if np.any(sources == targets):
            raise GraphValidationError(
                "Self-loops belong in has_loop, not in the adjacency"
            )

        keys = np.unique(
            np.concatenate([sources * n + targets, targets * n + sources])
        )
        src = keys // n
        dst = keys % n

        has_loop = np.broadcast_to(np.asarray(has_loop, dtype=bool), (n,))
        degree = np.bincount(src, minlength=n)
        isolated = np.flatnonzero((degree == 0) & ~has_loop)
        if isolated.size:
            raise GraphValidationError(
                "Vertex " + str(int(isolated[0])) + " has no neighbours and no loop slot"
            )

        return cls(
            vertex_count=n,
            neighbor_offsets=_read_only(
                np.concatenate([[0], np.cumsum(degree)]), np.int64
            ),
            neighbor_indices=_read_only(dst, np.int64),
            has_loop=_read_only(has_loop, bool),
            shape=None if shape is None else tuple(int(d) for d in shape),
            periodic=periodic,
        )

    @property
    def degree(self):
        """
        Deg(j), counting neighbours only (the loop slot is not a neighbour)
        """
        return np.diff(self.neighbor_offsets)

    def neighbors(self, j):
        return self.neighbor_indices[
            self.neighbor_offsets[j] : self.neighbor_offsets[j + 1]
        ]

    def with_loops(self, enabled=True):
        """
        Same adjacency with the loop slot switched on (or off) on every vertex

        :param enabled: (bool)
        :return: (Graph)
        """
        has_loop = np.full(self.vertex_count, bool(enabled))
        if not enabled and np.any(self.degree == 0):
            raise GraphValidationError("Removing loop slots would isolate a vertex")
        return replace(self, has_loop=_read_only(has_loop, bool))

    @property
    def center(self):
        """
        Row-major index of the central vertex of an odd-sized lattice
        """
        if self.shape is None:
            raise NoCenterError("Only lattices have a center vertex")
        if any(d % 2 == 0 for d in self.shape):
            raise NoCenterError(
                "Lattice " + "x".join(str(d) for d in self.shape) + " has no unique center"
            )
        return int(np.ravel_multi_index(tuple(d // 2 for d in self.shape), self.shape))

    @cached_property
    def arc_table(self):
        return build_arc_table(self)

    @property
    def arc_count(self):
        return int(self.neighbor_indices.size + np.count_nonzero(self.has_loop))


@dataclass(frozen=True, eq=False)
class ArcTable:
    """
    Canonical arc basis of a graph.

    Arcs are ordered by source vertex, then by direction, with the loop arc last in its
    vertex's block. ``offsets[j]:offsets[j + 1]`` is the contiguous block of vertex ``j`` and
    ``reverse[a]`` is the id of the reversed arc (a loop arc is its own reverse).
    """

    vertex_count: int
    source: np.ndarray
    direction: np.ndarray
    offsets: np.ndarray
    reverse: np.ndarray
    is_loop: np.ndarray

    @property
    def arc_count(self):
        return int(self.source.size)

    @property
    def arcs(self):
        return list(zip(self.source.tolist(), self.direction.tolist()))

    def vertex_slice(self, j):
        return slice(int(self.offsets[j]), int(self.offsets[j + 1]))

    def index_of(self, j, k):
        """
        :param j: (int) source vertex
        :param k: (int) direction (k == j for the loop arc)
        :return: (int) arc id
        """
        start, stop = int(self.offsets[j]), int(self.offsets[j + 1])
        has_loop = stop > start and bool(self.is_loop[stop - 1])
        if j == k:
            if not has_loop:
                raise KeyError((j, k))
            return stop - 1

        block = self.direction[start : stop - 1 if has_loop else stop]
        i = int(np.searchsorted(block, k))
        if i == block.size or block[i] != k:
            raise KeyError((j, k))
        return start + i


def build_arc_table(g):
    """
    Enumerates the arc basis of ``g``: one arc (j, k) per neighbour k of j, plus (j, j) for every
    vertex with a loop slot.

    :param g: (Graph)
    :return: (ArcTable)
    """
    n = g.vertex_count
    degree = g.degree
    counts = degree + g.has_loop.astype(np.int64)
    offsets = np.concatenate([[0], np.cumsum(counts)])
    arc_count = int(offsets[-1])

    source = np.repeat(np.arange(n, dtype=np.int64), counts)
    direction = np.empty(arc_count, dtype=np.int64)

    # neighbour arcs keep the (already sorted) CSR order inside each block
    neighbor_source = np.repeat(np.arange(n, dtype=np.int64), degree)
    within_block = (
        np.arange(g.neighbor_indices.size) - g.neighbor_offsets[neighbor_source]
    )
    neighbor_arcs = offsets[neighbor_source] + within_block
    direction[neighbor_arcs] = g.neighbor_indices

    loop_vertices = np.flatnonzero(g.has_loop)
    loop_arcs = offsets[loop_vertices] + degree[loop_vertices]
    direction[loop_arcs] = loop_vertices

    is_loop = np.zeros(arc_count, dtype=bool)
    is_loop[loop_arcs] = True

    reverse = np.arange(arc_count, dtype=np.int64)
    keys = neighbor_source * n + g.neighbor_indices
    reversed_keys = g.neighbor_indices * n + neighbor_source
    reverse[neighbor_arcs] = neighbor_arcs[np.searchsorted(keys, reversed_keys)]

    return ArcTable(
        vertex_count=n,
        source=_read_only(source, np.int64),
        direction=_read_only(direction, np.int64),
        offsets=_read_only(offsets, np.int64),
        reverse=_read_only(reverse, np.int64),
        is_loop=_read_only(is_loop, bool),
    )


def build_complete(vertex_count, with_loop=False):
    """
    Complete graph K_N

    :param vertex_count: (int) N >= 2
    :param with_loop: (bool) attach a loop slot to every vertex
    :return: (Graph)
    """
    if int(vertex_count) != vertex_count or vertex_count < 2:
        raise InvalidSizeError(
            "A complete graph needs N >= 2, got " + str(vertex_count)
        )
    n = int(vertex_count)
    sources, targets = np.nonzero(~np.eye(n, dtype=bool))
    return Graph.from_edges(n, sources, targets, has_loop=with_loop)


def build_lattice(dims, periodic=True, with_loop=False):
    """
    Hypercubic lattice in two or three dimensions with row-major vertex numbering.

    Periodic lattices need every side >= 3 so that wrap-around never duplicates an edge.

    :param dims: (list of int) side lengths
    :param periodic: (bool) wrap around (torus) or open boundary
    :param with_loop: (bool) attach a loop slot to every vertex
    :return: (Graph)
    """
    dims = tuple(int(d) for d in dims)
    if len(dims) not in (2, 3):
        raise UnsupportedDimensionError(
            "Lattices must be 2D or 3D, got " + str(len(dims)) + " dimensions"
        )
    smallest = 3 if periodic else 2
    if min(dims) < smallest:
        raise InvalidSizeError(
            "Every lattice side must be >= "
            + str(smallest)
            + (" with periodic boundaries" if periodic else "")
            + ", got "
            + str(list(dims))
        )

    n = int(np.prod(dims))
    vertices = np.arange(n, dtype=np.int64)
    coords = np.unravel_index(vertices, dims)

    sources, targets = [], []
    for axis, side in enumerate(dims):
        for hop in (-1, 1):
            moved = coords[axis] + hop
            if periodic:
                moved = moved % side
                valid = np.ones(n, dtype=bool)
            else:
                valid = (moved >= 0) & (moved < side)
            neighbour_coords = list(coords)
            neighbour_coords[axis] = np.clip(moved, 0, side - 1)
            neighbours = np.ravel_multi_index(tuple(neighbour_coords), dims)
            sources.append(vertices[valid])
            targets.append(neighbours[valid])

    return Graph.from_edges(
        n,
        np.concatenate(sources),
        np.concatenate(targets),
        has_loop=with_loop,
        shape=dims,
        periodic=bool(periodic),
    )


def load_edge_list(text):
    """
    Parses an edge-list document: one ``u v`` pair of 0-based vertex ids per line, ``u u``
    opens the loop slot of ``u``. Blank lines and ``#`` comments are skipped.

    :param text: (string) the document
    :return: (Graph)
    """
    sources, targets, loops = [], [], set()
    for line_number, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue

        tokens = line.split()
        if len(tokens) != 2:
            raise EdgeListParseError(
                line_number, "expected two vertex ids, got " + str(len(tokens))
            )
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise EdgeListParseError(line_number, "non-integer vertex id in " + repr(line))
        if u < 0 or v < 0:
            raise EdgeListParseError(line_number, "negative vertex id in " + repr(line))

        if u == v:
            loops.add(u)
        else:
            sources.append(u)
            targets.append(v)

    ids = sources + targets + list(loops)
    if not ids:
        raise GraphValidationError("Edge list is empty")

    present = set(ids)
    n = max(ids) + 1
    if len(present) < n:
        missing = next(k for k in range(len(present) + 1) if k not in present)
        raise GraphValidationError(
            "Vertex " + str(missing) + " has no neighbours and no loop slot"
        )

    has_loop = np.zeros(n, dtype=bool)
    has_loop[list(loops)] = True

    return Graph.from_edges(n, sources, targets, has_loop=has_loop)


def read_edge_list(path):
    with open(path, "r") as fi:
        return load_edge_list(fi.read())


def build_random(vertex_count, edge_probability, with_loop=False, rng=None):
    """
    Random graph with independent edges. Vertices left isolated are joined to one random
    other vertex so that the result is a valid walk graph.

    :param vertex_count: (int) N >= 2
    :param edge_probability: (float) probability of each undirected edge
    :param with_loop: (bool) attach a loop slot to every vertex
    :param rng: (numpy Generator or seed)
    :return: (Graph)
    """
    if vertex_count < 2:
        raise InvalidSizeError("A random graph needs N >= 2")
    rng = np.random.default_rng(rng)

    upper_s, upper_t = np.triu_indices(vertex_count, k=1)
    keep = rng.random(upper_s.size) < edge_probability
    sources, targets = list(upper_s[keep]), list(upper_t[keep])

    degree = np.bincount(
        np.concatenate([upper_s[keep], upper_t[keep]]), minlength=vertex_count
    )
    for j in np.flatnonzero(degree == 0):
        sources.append(int(j))
        targets.append(int((j + rng.integers(1, vertex_count)) % vertex_count))

    return Graph.from_edges(vertex_count, sources, targets, has_loop=with_loop)
