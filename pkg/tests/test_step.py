# Copyright (c) 2021 the dtqwpy developers
# Licensed under the MIT License. See LICENSE for details.

import numpy as np
import pytest

from dtqwpy import initializers
from dtqwpy.core import coin, graph, step
from dtqwpy.errors import ConfigurationError, ContractViolation, NoCenterError
from tests import helpers


def test_search_initial_state_is_uniform_over_vertices():
    g = graph.build_lattice([4, 5], with_loop=True)
    cfg = coin.CoinConfig.uniform(g, 0.3)
    psi = initializers.search_initial_state(g, cfg)

    np.testing.assert_allclose(np.linalg.norm(psi), 1.0)
    np.testing.assert_allclose(step.position_distribution(psi, g), np.full(20, 1.0 / 20.0))


def test_search_initial_state_without_weight_leaves_loops_empty():
    g = graph.build_lattice([3, 3], with_loop=True)
    psi = initializers.search_initial_state(g, coin.CoinConfig.uniform(g, 0.0))

    np.testing.assert_array_equal(psi[g.arc_table.is_loop], 0.0)
    np.testing.assert_allclose(psi[~g.arc_table.is_loop], 1.0 / np.sqrt(36.0))


@pytest.mark.parametrize("n", [0.0, 0.3, 2.0])
def test_uniform_state_is_stationary_on_regular_graphs(n):
    g = graph.build_lattice([5, 5], with_loop=True)
    cfg = coin.CoinConfig.uniform(g, n)
    psi = initializers.search_initial_state(g, cfg)

    np.testing.assert_allclose(step.run(psi, g, cfg, 7), psi, atol=1e-14)


def test_run_zero_steps_returns_the_input():
    g = graph.build_complete(5)
    psi = helpers.__random_state__(g.arc_count)

    np.testing.assert_array_equal(step.run(psi, g, coin.CoinConfig.standard(g), 0), psi)
    with pytest.raises(ContractViolation):
        step.run(psi, g, coin.CoinConfig.standard(g), -1)


def test_run_calls_hook_after_every_step():
    g = graph.build_complete(5)
    cfg = coin.CoinConfig.standard(g, marked=[0])
    psi = helpers.__random_state__(g.arc_count)
    seen = []

    final = step.run(psi, g, cfg, 4, hook=lambda it, state: seen.append((it, state.copy())))

    assert [it for it, _ in seen] == [1, 2, 3, 4]
    np.testing.assert_array_equal(seen[-1][1], final)
    np.testing.assert_allclose(seen[0][1], step.step(psi, g, cfg))


@pytest.mark.parametrize("n", [0.0, 0.5, 1.0])
def test_marginals_sum_to_one(n):
    g = graph.build_lattice([4, 4, 3], with_loop=True)
    cfg = coin.CoinConfig.uniform(g, n, marked=[3])
    totals = []

    step.run(
        helpers.__random_state__(g.arc_count),
        g,
        cfg,
        200,
        hook=lambda it, state: totals.append(step.position_distribution(state, g).sum()),
    )

    np.testing.assert_allclose(totals, 1.0, atol=1e-10)


def test_probability_at():
    g = graph.build_complete(4)
    psi = np.zeros(g.arc_count, dtype=np.complex128)
    psi[g.arc_table.vertex_slice(2)] = 0.5
    psi[g.arc_table.index_of(0, 1)] = 0.5

    assert step.probability_at(psi, g, [2]) == pytest.approx(0.75)
    assert step.probability_at(psi, g, [0, 2]) == pytest.approx(1.0)


def test_trace_probability_layout():
    g = graph.build_complete(6)
    cfg = coin.CoinConfig.standard(g, marked=[1])
    trace = step.trace_probability(initializers.search_initial_state(g, cfg), g, cfg, [1], 9)

    assert trace.name == "probability"
    assert trace.dims == ("step",)
    np.testing.assert_array_equal(trace.coords["step"].values, np.arange(10))
    assert trace.values[0] == pytest.approx(1.0 / 6.0)


def test_spreading_initial_state():
    g = graph.build_lattice([5, 5], with_loop=True)
    psi = step.spreading_initial_state(g)
    block = g.arc_table.vertex_slice(12)

    np.testing.assert_allclose(psi[block], [0.5, 0.5, 0.5, 0.5, 0.0])
    assert np.count_nonzero(psi) == 4


def test_spreading_first_step():
    loop_free = graph.build_lattice([11, 11])
    looped = loop_free.with_loops()

    plain = step.spreading_probe(loop_free, 0.0, 6)
    weighted = step.spreading_probe(looped, 1.0, 6)

    assert plain.values[0] == 1.0
    assert weighted.values[0] == pytest.approx(1.0)
    assert plain.values[1] == pytest.approx(0.0, abs=1e-15)
    assert weighted.values[1] == pytest.approx(0.64)
    assert np.max(np.abs(plain.values[2:] - weighted.values[2:])) > 1e-6


@pytest.mark.parametrize("n", [0.0, 0.5, 1.0, 2.0])
def test_spreading_first_step_return_probability(n):
    trace = step.spreading_probe(graph.build_lattice([11, 11], with_loop=True), n, 1)

    assert trace.values[1] == pytest.approx(16.0 * n / (4.0 + n) ** 2.0, abs=1e-14)


def test_spreading_intermediate_weight_lies_between_zero_and_one():
    g = graph.build_lattice([11, 11], with_loop=True)
    first = {n: step.spreading_probe(g, n, 1).values[1] for n in (0.0, 0.5, 1.0)}

    assert first[0.0] < first[0.5] < first[1.0]


def test_spreading_standard_coin_on_loop_slots_matches_unit_weight():
    g = graph.build_lattice([9, 9], with_loop=True)

    np.testing.assert_allclose(
        step.spreading_probe(g, 0.0, 12, family=coin.STANDARD_GROVER).values,
        step.spreading_probe(g, 1.0, 12).values,
        atol=1e-14,
    )


def test_spreading_zero_weight_on_looped_lattice_matches_loop_free():
    loop_free = graph.build_lattice([9, 9])

    np.testing.assert_allclose(
        step.spreading_probe(loop_free.with_loops(), 0.0, 20).values,
        step.spreading_probe(loop_free, 0.0, 20).values,
        atol=1e-15,
    )


def test_spreading_needs_center_and_slots():
    with pytest.raises(NoCenterError):
        step.spreading_probe(graph.build_lattice([4, 5], with_loop=True), 1.0, 5)
    with pytest.raises(ConfigurationError):
        step.spreading_probe(graph.build_lattice([5, 5]), 1.0, 5)
