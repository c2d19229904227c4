# Copyright (c) 2021 the dtqwpy developers
# Licensed under the MIT License. See LICENSE for details.
