# Copyright (c) 2021 the dtqwpy developers
# Licensed under the MIT License. See LICENSE for details.

from mlflow.tracking import MlflowClient


def get_this_metric_of_this_run(metric_name, run_object):
    client = MlflowClient()
    run = client.get_run(run_object.info.run_id)
    return run.data.metrics[metric_name]


def get_this_param_of_this_run(param_name, run_object):
    client = MlflowClient()
    run = client.get_run(run_object.info.run_id)
    return run.data.params[param_name]


def get_artifact_names_of_this_run(run_object):
    client = MlflowClient()
    return sorted(info.path for info in client.list_artifacts(run_object.info.run_id))
