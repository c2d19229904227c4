# Copyright (c) 2021 the dtqwpy developers
# Licensed under the MIT License. See LICENSE for details.

"""
Self-checks of the walk kernels: norm conservation, involutions, the zero-weight limit, and
agreement with the dense multi-loop oracle.
"""

from dataclasses import dataclass

import numpy as np

from dtqwpy import oracle
from dtqwpy.core import coin, graph, shift, step

UNITARITY_STEPS = 10000
KERNEL_STEPS = 50
EQUIVALENCE_STEPS = 100


@dataclass(frozen=True)
class CheckResult:
    name: str
    max_deviation: float
    tolerance: float

    @property
    def passed(self):
        return bool(np.isfinite(self.max_deviation) and self.max_deviation <= self.tolerance)


def random_state(arc_count, rng):
    state = rng.normal(size=arc_count) + 1j * rng.normal(size=arc_count)
    return state / np.linalg.norm(state)


def get_sign_flipped_shift(g):
    """
    Deliberately broken shift that negates the amplitudes moving out of arcs (j, k) with j < k.
    Still unitary, but no longer the flip-flop shift.

    :param g: (Graph)
    :return: a function with the same call signature as ``shift.get_shift_step(g)``
    """
    table = g.arc_table
    sign = np.where(table.source < table.direction, -1.0, 1.0)
    reverse = table.reverse

    def apply_broken_shift_to_state(state):
        return (state * sign)[reverse]

    return apply_broken_shift_to_state


def check_unitarity(get_shift=shift.get_shift_step, steps=UNITARITY_STEPS, seed=0):
    """
    Norm drift over a long run on a 10 x 10 torus with random loop weights in [0, 2]

    :return: (CheckResult, CheckResult) norm drift, and the drift of the summed position marginals
    """
    rng = np.random.default_rng(seed)
    g = graph.build_lattice([10, 10], periodic=True, with_loop=True)
    cfg = coin.CoinConfig.from_weights(g, rng.uniform(0.0, 2.0, size=g.vertex_count))

    norm_drift = [0.0]
    marginal_drift = [0.0]

    def record(it, state):
        norm_drift[0] = max(norm_drift[0], abs(np.vdot(state, state).real - 1.0))
        marginal_drift[0] = max(
            marginal_drift[0], abs(np.sum(step.position_distribution(state, g)) - 1.0)
        )

    step.run(
        random_state(g.arc_count, rng),
        g,
        cfg,
        steps,
        hook=record,
        shift_step=get_shift(g),
    )

    return (
        CheckResult("unitarity", norm_drift[0], 1e-10),
        CheckResult("marginal-sum", marginal_drift[0], 1e-10),
    )


def check_zero_weight_limit(seeds=(0, 1, 2, 3), steps=20):
    """
    The Grover-loop walk with all weights at zero on G' against the standard Grover walk on G, on
    random graphs of at most 50 vertices
    """
    worst = 0.0
    for seed in seeds:
        rng = np.random.default_rng(seed)
        g = graph.build_random(int(rng.integers(5, 51)), 0.2, rng=rng)
        g_prime = g.with_loops()
        loop_free = ~g_prime.arc_table.is_loop

        psi = random_state(g.arc_count, rng)
        psi_prime = np.zeros(g_prime.arc_count, dtype=np.complex128)
        psi_prime[loop_free] = psi

        psi = step.run(psi, g, coin.CoinConfig.standard(g), steps)
        psi_prime = step.run(psi_prime, g_prime, coin.CoinConfig.uniform(g_prime, 0.0), steps)

        worst = max(
            worst,
            float(np.max(np.abs(psi_prime[loop_free] - psi))),
            float(np.max(np.abs(psi_prime[~loop_free]))),
        )

    return CheckResult("zero-weight-limit", worst, 1e-15)


def check_involutions(get_shift=shift.get_shift_step, seed=0):
    """
    S S = I and C C = I for the unmarked coin with random weights

    :return: (CheckResult, CheckResult)
    """
    rng = np.random.default_rng(seed)
    g = graph.build_random(30, 0.2, with_loop=True, rng=rng)
    cfg = coin.CoinConfig.from_weights(g, rng.uniform(0.0, 3.0, size=g.vertex_count))
    psi = random_state(g.arc_count, rng)

    shift_step = get_shift(g)
    coin_step = coin.get_coin_step(g, cfg)

    return (
        CheckResult(
            "shift-involution", float(np.max(np.abs(shift_step(shift_step(psi)) - psi))), 1e-12
        ),
        CheckResult(
            "coin-involution", float(np.max(np.abs(coin_step(coin_step(psi)) - psi))), 1e-12
        ),
    )


def get_oracle_graphs():
    return {
        "torus5x5": graph.build_lattice([5, 5], periodic=True),
        "K10": graph.build_complete(10),
    }


def check_dense_unitarity():
    rows = []
    for name, g in get_oracle_graphs().items():
        for n in (0, 1, 2, 3):
            u = oracle.build_dense_step(oracle.MultiLoopGraph.uniform(g, n), marked=[0])
            rows.append(
                CheckResult(
                    "dense-unitarity " + name + " n=" + str(n),
                    oracle.unitarity_deviation(u),
                    1e-12,
                )
            )
    return rows


def check_against_oracle(get_shift=shift.get_shift_step, seed=0):
    """
    The blocked kernels against the dense oracle: the loop-free walk on the identical basis, and
    the Grover-loop walk with weight n against n actual loops. Every case starts from a random
    state.

    :return: (list of CheckResult)
    """
    rng = np.random.default_rng(seed)
    rows = []
    for name, g in get_oracle_graphs().items():
        looped_arc_count = g.with_loops().arc_count
        for marked in ((), (0,)):
            suffix = " marked" if marked else " unmarked"
            dev = oracle.equivalence_check(
                g,
                0,
                marked=marked,
                steps=KERNEL_STEPS,
                initial_state=random_state(g.arc_count, rng),
                shift_step=_shift_for(get_shift, g, 0),
            )
            rows.append(CheckResult("kernel " + name + suffix, dev["max_deviation"], 1e-12))

            for n in (1, 2, 3):
                dev = oracle.equivalence_check(
                    g,
                    n,
                    marked=marked,
                    steps=EQUIVALENCE_STEPS,
                    initial_state=random_state(looped_arc_count, rng),
                    shift_step=_shift_for(get_shift, g, n),
                )
                rows.append(
                    CheckResult(
                        "equivalence " + name + " n=" + str(n) + suffix,
                        dev["max_deviation"],
                        1e-10,
                    )
                )

    return rows


def _shift_for(get_shift, g_base, n):
    return get_shift(g_base if n == 0 else g_base.with_loops())


def run_verification_suite(shift=None):
    """
    Runs every check

    :param shift: (function) Graph -> shift step, replaces the flip-flop shift in the checks that
        exercise the shift
    :return: (list of CheckResult) one row per check
    """
    get_shift = _default_shift if shift is None else shift

    rows = []
    rows.extend(check_unitarity(get_shift=get_shift))
    rows.append(check_zero_weight_limit())
    rows.extend(check_involutions(get_shift=get_shift))
    rows.extend(check_dense_unitarity())
    rows.extend(check_against_oracle(get_shift=get_shift))
    return rows


def _default_shift(g):
    return shift.get_shift_step(g)


def all_passed(rows):
    return all(row.passed for row in rows)
