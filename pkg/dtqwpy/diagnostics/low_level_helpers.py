# Copyright (c) 2021 the dtqwpy developers
# Licensed under the MIT License. See LICENSE for details.

from dataclasses import dataclass

import numpy as np

from dtqwpy.errors import ContractViolation

PEAK_TIE_TOLERANCE = 1e-12
PEAK_FLOOR_FRACTION = 0.5


@dataclass(frozen=True)
class PeakResult:
    t_peak: int
    p_peak: float
    truncated: bool = False


def get_pair_envelope(values):
    """
    Larger of each two neighbouring steps, flattens the period-2 oscillation of the walk

    :param values: (float array) trace of length T + 1
    :return: (float array) length T
    """
    return np.maximum(values[:-1], values[1:])


def find_first_peak(trace):
    """
    First local maximum of a probability trace.

    1. The trace is smoothed by the pair envelope
    2. The first local maximum of the envelope that reaches half of the window maximum is taken
    3. The peak is the larger of the two steps behind that envelope entry, earlier step on ties
       (within 1e-12)

    Without such a maximum the global maximum is used. A peak on the last step is flagged as
    truncated.

    :param trace: (float array or xarray DataArray) probability per step
    :return: (PeakResult)
    """
    values = np.asarray(trace, dtype=np.float64)
    if values.ndim != 1 or values.size < 2:
        raise ContractViolation("A peak search needs a trace of at least two steps")

    envelope = get_pair_envelope(values)
    floor = PEAK_FLOOR_FRACTION * values.max()

    t_peak = None
    for i in range(envelope.size - 1):
        rising = i == 0 or envelope[i] >= envelope[i - 1] - PEAK_TIE_TOLERANCE
        falling = envelope[i] > envelope[i + 1] + PEAK_TIE_TOLERANCE
        if envelope[i] >= floor and rising and falling:
            t_peak = i if values[i] >= values[i + 1] - PEAK_TIE_TOLERANCE else i + 1
            break

    if t_peak is None:
        t_peak = int(np.flatnonzero(values >= values.max() - PEAK_TIE_TOLERANCE)[0])

    return PeakResult(
        t_peak=t_peak,
        p_peak=float(values[t_peak]),
        truncated=t_peak == values.size - 1,
    )


def fit_power_law(sizes, steps):
    """
    Least-squares slope of log(steps) against log(sizes)

    :param sizes: (array) graph sizes N
    :param steps: (array) peak steps, entries <= 0 are skipped
    :return: (float) the exponent, nan with fewer than two usable points
    """
    sizes = np.asarray(sizes, dtype=np.float64)
    steps = np.asarray(steps, dtype=np.float64)
    usable = (sizes > 0) & (steps > 0)
    if np.count_nonzero(usable) < 2:
        return float("nan")

    slope, _ = np.polyfit(np.log(sizes[usable]), np.log(steps[usable]), 1)
    return float(slope)
