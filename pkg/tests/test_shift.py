# Copyright (c) 2021 the dtqwpy developers
# Licensed under the MIT License. See LICENSE for details.

import numpy as np
import pytest

from dtqwpy.core import graph, shift
from dtqwpy.errors import ContractViolation
from tests import helpers

ALL_SMALL_GRAPHS = list(helpers.__small_graphs__().items())


def test_amplitude_moves_to_the_reversed_arc():
    g = graph.build_lattice([3, 3], with_loop=True)
    table = g.arc_table
    psi = np.zeros(g.arc_count, dtype=np.complex128)
    psi[table.index_of(0, 1)] = 1.0
    psi[table.index_of(4, 4)] = 0.5j

    out = shift.apply_shift(psi, g)

    assert out[table.index_of(1, 0)] == 1.0
    assert out[table.index_of(4, 4)] == 0.5j
    assert np.count_nonzero(out) == 2


@pytest.mark.parametrize("name, g", ALL_SMALL_GRAPHS)
@pytest.mark.parametrize("with_loop", [False, True])
def test_shift_is_an_involution(name, g, with_loop):
    g = g.with_loops() if with_loop else g
    psi = helpers.__random_state__(g.arc_count)
    shift_step = shift.get_shift_step(g)

    np.testing.assert_array_equal(shift_step(shift_step(psi)), psi)


def test_shift_rejects_wrong_shape():
    g = graph.build_complete(3)

    with pytest.raises(ContractViolation):
        shift.apply_shift(np.zeros(2, dtype=np.complex128), g)
