## { MODULE

## This file is part of the "mbfbound" project.
## Copyright (c) 2025 Neco Kriel.
## Licensed under the MIT License. See LICENSE for details.

##
## === DEPENDENCIES
##

## stdlib
from multiprocessing import cpu_count

## third-party
import numpy
import pytest

## local
from mbfbound.errors import ConfigError, ParseError
from mbfbound.utils.files import parse_matrix_csv, read_matrix_csv, write_atomic
from mbfbound.utils.workers import THREADS_ENV_VAR, resolve_num_workers

##
## === WORKER COUNT
##


def test_worker_hint_and_default():
    assert resolve_num_workers(3) == 3
    assert resolve_num_workers() == cpu_count()


def test_environment_overrides_the_hint(monkeypatch):
    monkeypatch.setenv(THREADS_ENV_VAR, "2")
    assert resolve_num_workers(8) == 2
    monkeypatch.setenv(THREADS_ENV_VAR, "many")
    with pytest.raises(ConfigError):
        resolve_num_workers()
    monkeypatch.setenv(THREADS_ENV_VAR, "0")
    with pytest.raises(ConfigError):
        resolve_num_workers()


##
## === FILES
##


def test_parse_matrix_csv():
    matrix = parse_matrix_csv("a,b\n1, 2\n\n3,4.5\n", header=True)
    numpy.testing.assert_array_equal(matrix, [[1.0, 2.0], [3.0, 4.5]])


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("1,2\n3\n", "line 2: expected 2 values, but got 1"),
        ("1,2\n3,x\n", "line 2, column 2"),
        ("1,nan\n", "not finite"),
        ("\n\n", "no data rows"),
    ],
)
def test_parse_matrix_csv_errors(text, fragment):
    with pytest.raises(ParseError, match=fragment):
        parse_matrix_csv(text, source="sample.csv")


def test_read_matrix_csv_names_the_file(tmp_path):
    path = tmp_path / "ragged.csv"
    path.write_text("1,2,3\n4,5\n")
    with pytest.raises(ParseError, match="ragged.csv: line 2"):
        read_matrix_csv(path)


def test_write_atomic_replaces_without_leftovers(tmp_path):
    path = tmp_path / "nested" / "out.txt"
    write_atomic(path, "first\n")
    write_atomic(path, b"second\n")
    assert path.read_text() == "second\n"
    assert sorted(child.name for child in path.parent.iterdir()) == ["out.txt"]


## } MODULE
