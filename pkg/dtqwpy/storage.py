# Copyright (c) 2021 the dtqwpy developers
# Licensed under the MIT License. See LICENSE for details.

import csv
import sys

import numpy as np
import xarray as xr


def format_value(val):
    """
    Unquoted decimal text; floats keep 17 significant digits so that they read back exactly

    :param val: a scalar
    :return: (string)
    """
    if isinstance(val, (bool, np.bool_)):
        return str(int(val))
    if isinstance(val, (int, np.integer)):
        return str(int(val))
    return format(float(val), ".17g")


def trace_to_columns(trace):
    """
    :param trace: (xarray DataArray) probability over dim ``step``
    :return: (list of string, list of tuple) header and rows ``step,probability``
    """
    return ["step", "probability"], list(
        zip(trace.coords["step"].values.tolist(), trace.values.tolist())
    )


def peaks_to_columns(ds, dim):
    """
    :param ds: (xarray Dataset) with ``peak_probability`` and ``peak_step`` over ``dim``
    :param dim: (string) ``n`` for weight sweeps, ``N`` for scaling studies
    :return: (list of string, list of tuple) header and rows ``<dim>,peak_probability,peak_step``
    """
    return [dim, "peak_probability", "peak_step"], list(
        zip(
            ds.coords[dim].values.tolist(),
            ds["peak_probability"].values.tolist(),
            ds["peak_step"].values.tolist(),
        )
    )


def checks_to_columns(rows):
    return ["check", "max_deviation", "tolerance", "passed"], [
        (row.name, row.max_deviation, row.tolerance, row.passed) for row in rows
    ]


def write_csv(path, header, rows):
    """
    Writes one header line followed by the data rows

    :param path: (string) output file, ``None`` or ``-`` for stdout
    :param header: (list of string) column names
    :param rows: (iterable of tuple) one tuple per row
    """
    if path is None or path == "-":
        _write_rows(sys.stdout, header, rows)
        return

    with open(path, "w", newline="") as fo:
        _write_rows(fo, header, rows)


def _write_rows(stream, header, rows):
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([val if isinstance(val, str) else format_value(val) for val in row])


def write_netcdf(obj, path):
    """
    Saves a trace or a result dataset with the h5netcdf engine

    :param obj: (xarray DataArray or Dataset)
    :param path: (string) output file
    """
    if isinstance(obj, xr.DataArray):
        obj = obj.to_dataset()
    obj.to_netcdf(path, engine="h5netcdf", invalid_netcdf=True)


def load_dataset(path):
    return xr.open_dataset(path, engine="h5netcdf")
