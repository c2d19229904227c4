# Copyright (c) 2021 the dtqwpy developers
# Licensed under the MIT License. See LICENSE for details.

from dtqwpy.errors import ContractViolation


def get_shift_step(g):
    """
    This function creates the flip-flop shift for a graph

    The amplitude on arc (j, k) moves to arc (k, j). Loop arcs are their own reverse and
    therefore stay where they are.

    :param g: (Graph)
    :return: a function with the reversal permutation initialized as a static variable
    """
    reverse = g.arc_table.reverse
    arc_count = reverse.size

    def apply_shift_to_state(state):
        if state.shape != (arc_count,):
            raise ContractViolation(
                "State has shape " + str(state.shape) + ", expected (" + str(arc_count) + ",)"
            )
        return state[reverse]

    return apply_shift_to_state


def apply_shift(state, g):
    return get_shift_step(g)(state)
