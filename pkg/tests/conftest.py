## { MODULE

## This file is part of the "mbfbound" project.
## Copyright (c) 2025 Neco Kriel.
## Licensed under the MIT License. See LICENSE for details.

##
## === DEPENDENCIES
##

## stdlib
from pathlib import Path

## third-party
import numpy
import pytest

## local
from mbfbound import bftest, dists
from mbfbound.utils.files import read_matrix_csv

DATA_DIR = Path(__file__).resolve().parents[1] / "data"

##
## === FIXTURES
##


@pytest.fixture
def generator() -> numpy.random.Generator:
    return numpy.random.default_rng(20250101)


@pytest.fixture
def stream() -> dists.RngStream:
    return dists.RngStream(0x5EED, (7,))


@pytest.fixture(autouse=True)
def _no_thread_override(monkeypatch):
    monkeypatch.delenv("MBF_THREADS", raising=False)


@pytest.fixture
def example_paths() -> tuple[Path, Path]:
    return DATA_DIR / "example_x.csv", DATA_DIR / "example_y.csv"


@pytest.fixture
def example_data(example_paths) -> bftest.TwoSampleData:
    x_path, y_path = example_paths
    return bftest.TwoSampleData(x=read_matrix_csv(x_path), y=read_matrix_csv(y_path))


def random_spd(
    generator: numpy.random.Generator,
    p: int,
) -> numpy.ndarray:
    columns = generator.standard_normal((p, p + 4))
    return columns @ columns.T / (p + 4) + 0.1 * numpy.eye(p)


## } MODULE
