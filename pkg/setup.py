# Copyright (c) 2021 the dtqwpy developers
# Licensed under the MIT License. See LICENSE for details.

from setuptools import setup, find_packages

INSTALL_REQUIREMENTS = [
    "wheel",
    "numpy",
    "mlflow",
    "h5netcdf",
    "xarray",
    "scipy",
    "tqdm",
    "dask[complete]",
]

TEST_REQUIREMENTS = [
    "pytest",
    "hypothesis",
]

setup(
    name="dtqwpy",
    version="0.1",
    packages=find_packages(exclude=["tests", "tests.*"]),
    url="",
    license="MIT",
    author="the dtqwpy developers",
    author_email="",
    description="Discrete-time quantum walk search with an adjustable self-loop weight",
    install_requires=INSTALL_REQUIREMENTS,
    extras_require={"test": TEST_REQUIREMENTS},
    entry_points={"console_scripts": ["dtqwpy=dtqwpy.cli:run"]},
    include_package_data=True,
    python_requires=">=3.8",
)
