## { MODULE

## This file is part of the "mbfbound" project.
## Copyright (c) 2025 Neco Kriel.
## Licensed under the MIT License. See LICENSE for details.

##
## === DEPENDENCIES
##

## stdlib
from collections.abc import Callable, Sequence
from multiprocessing import Pool
from typing import Any

##
## === LOOP THROUGH THE BLOCKS IN PARALLEL
##


def run_blocks(
    func: Callable[..., Any],
    tasks: Sequence[tuple[Any, ...]],
    num_workers: int,
) -> list[Any]:
    """
    Evaluates `func(*task)` for every task across a process pool. `func` must be importable at module level;
    results come back in task order.
    """
    if not tasks: return []
    with Pool(processes=num_workers) as pool:
        chunk_size = max(1, len(tasks) // (num_workers * 8))
        return pool.starmap(func, tasks, chunksize=chunk_size)


## } MODULE
