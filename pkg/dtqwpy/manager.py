# Copyright (c) 2021 the dtqwpy developers
# Licensed under the MIT License. See LICENSE for details.

import os
from time import time

import mlflow

from dtqwpy import initializers
from dtqwpy.infrastructure import print_to_screen


def start_run(all_params, command, uris, name="dtqwpy"):
    """
    Runs one experiment command under mlflow tracking

    The run parameters are logged before the command starts. The command's metrics and output
    files are logged once it returns.

    :param all_params: (dictionary) contains the input parameters of the run
    :param command: (function) all_params -> outcome dictionary with ``command``, ``metrics``
        (dictionary of floats) and ``artifacts`` (list of file paths)
    :param uris: (dictionary) ``tracking`` location of the mlflow server, ``local`` for ./mlruns
    :param name: (string) the name of the MLFlow experiment
    :return: (Mlflow.Run, dictionary) the completed Run object and the command's outcome
    """
    t0 = time()
    print_to_screen.print_startup_message(name, all_params, uris)
    if "local" not in uris["tracking"].casefold():
        mlflow.set_tracking_uri(uris["tracking"])

    experiment = mlflow.set_experiment(name)

    with mlflow.start_run(experiment_id=experiment.experiment_id) as run:
        initializers.log_initial_conditions(all_params)
        mlflow.log_metrics(metrics={"startup_time": time() - t0}, step=0)
        t0 = time()

        outcome = command(all_params)

        mlflow.set_tag("command", outcome["command"])
        mlflow.log_metrics(metrics={"run_time": time() - t0}, step=0)
        mlflow.log_metrics(metrics=outcome["metrics"], step=0)
        for path in outcome["artifacts"]:
            if os.path.isfile(path):
                mlflow.log_artifact(path)

    print_to_screen.print_timing(outcome["command"], time() - t0)

    return run, outcome
