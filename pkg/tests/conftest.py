# Copyright (c) 2021 the dtqwpy developers
# Licensed under the MIT License. See LICENSE for details.

import os

# Recent MLflow releases refuse file:// tracking stores unless explicitly allowed;
# the tests track runs under a tmp_path file store.
os.environ.setdefault("MLFLOW_ALLOW_FILE_STORE", "true")
