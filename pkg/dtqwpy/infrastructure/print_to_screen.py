# Copyright (c) 2021 the dtqwpy developers
# Licensed under the MIT License. See LICENSE for details.

import pprint
import sys
from datetime import datetime


def print_startup_message(command, all_params_dict, uri, stream=None):
    """
    Banner with the run parameters. Goes to stderr so that CSV on stdout stays clean.
    """
    stream = sys.stderr if stream is None else stream
    print(
        "Starting dtqwpy " + command + " at " + datetime.now().strftime("%m/%d/%Y %H:%M:%S"),
        file=stream,
    )
    print("Run parameters: ", file=stream)
    pprint.pprint(all_params_dict, stream=stream)
    print("MLFlow server: ", file=stream)
    pprint.pprint(uri, stream=stream)


def print_timing(label, seconds, stream=None):
    stream = sys.stderr if stream is None else stream
    print(label + " took " + format(seconds, ".2f") + " s", file=stream)


def print_summary(summary_dict, stream=None):
    """
    One ``key=value`` line per run summary

    :param summary_dict: (dictionary) ordered summary entries
    :param stream: (file) destination, stderr by default
    """
    stream = sys.stderr if stream is None else stream
    print(" ".join(key + "=" + str(val) for key, val in summary_dict.items()), file=stream)
