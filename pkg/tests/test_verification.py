# Copyright (c) 2021 the dtqwpy developers
# Licensed under the MIT License. See LICENSE for details.

import numpy as np

from dtqwpy.diagnostics import verification


def test_suite_passes():
    rows = verification.run_verification_suite()
    names = [row.name for row in rows]

    assert verification.all_passed(rows), [row for row in rows if not row.passed]
    for expected in [
        "unitarity",
        "marginal-sum",
        "zero-weight-limit",
        "shift-involution",
        "coin-involution",
        "kernel K10 marked",
        "equivalence torus5x5 n=3 unmarked",
    ]:
        assert expected in names


def test_broken_shift_is_caught_by_the_oracle():
    rows = verification.run_verification_suite(shift=verification.get_sign_flipped_shift)
    rows = {row.name: row for row in rows}

    assert rows["unitarity"].passed
    assert rows["marginal-sum"].passed
    compared = [row for name, row in rows.items() if name.startswith(("kernel", "equivalence"))]
    assert len(compared) == 16
    assert not any(row.passed for row in compared)
    assert not verification.all_passed(rows.values())


def test_check_result_with_nan_fails():
    assert not verification.CheckResult("x", np.nan, 1.0).passed
    assert verification.CheckResult("x", 0.5, 1.0).passed
