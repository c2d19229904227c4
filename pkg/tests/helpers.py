# Copyright (c) 2021 the dtqwpy developers
# Licensed under the MIT License. See LICENSE for details.

import numpy as np

from dtqwpy.core import graph


def __random_state__(arc_count, seed=0):
    rng = np.random.default_rng(seed)
    state = rng.normal(size=arc_count) + 1j * rng.normal(size=arc_count)
    return state / np.linalg.norm(state)


def __dense_operator__(apply_operator, arc_count):
    """
    Builds the matrix of a linear operator column by column from its action on basis vectors
    """
    columns = []
    for a in range(arc_count):
        basis_vector = np.zeros(arc_count, dtype=np.complex128)
        basis_vector[a] = 1.0
        columns.append(apply_operator(basis_vector))
    return np.stack(columns, axis=1)


def __small_graphs__():
    return {
        "torus3x3": graph.build_lattice([3, 3], periodic=True),
        "open4x3": graph.build_lattice([4, 3], periodic=False),
        "torus3x3x3": graph.build_lattice([3, 3, 3], periodic=True),
        "K5": graph.build_complete(5),
        "random12": graph.build_random(12, 0.3, rng=7),
    }
