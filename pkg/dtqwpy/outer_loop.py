# Copyright (c) 2021 the dtqwpy developers
# Licensed under the MIT License. See LICENSE for details.

import contextlib

import dask
from dask.diagnostics import ProgressBar


def run_batch(function, list_of_kwargs, scheduler="threads", num_workers=None, progress=False):
    """
    Runs independent calls of ``function`` across the available workers.

    The results come back in the order of ``list_of_kwargs`` no matter which run finishes first.

    :param function: (function) a single run, must be picklable for the process scheduler
    :param list_of_kwargs: (list of dictionaries) keyword arguments of each run
    :param scheduler: (string) ``threads``, ``processes`` or ``synchronous``
    :param num_workers: (int) worker count, None lets dask decide
    :param progress: (bool) show a progress bar
    :return: (list) one result per run
    """
    tasks = [dask.delayed(function)(**kwargs) for kwargs in list_of_kwargs]
    compute_kwargs = {"scheduler": scheduler}
    if num_workers is not None and scheduler != "synchronous":
        compute_kwargs["num_workers"] = num_workers

    with ProgressBar() if progress else contextlib.nullcontext():
        results = dask.compute(*tasks, **compute_kwargs)

    return list(results)
