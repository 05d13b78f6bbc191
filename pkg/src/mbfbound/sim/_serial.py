## { MODULE

## This file is part of the "mbfbound" project.
## Copyright (c) 2025 Neco Kriel.
## Licensed under the MIT License. See LICENSE for details.

##
## === DEPENDENCIES
##

## stdlib
from collections.abc import Callable, Sequence
from typing import Any

##
## === LOOP THROUGH THE BLOCKS SERIALLY
##


def run_blocks(
    func: Callable[..., Any],
    tasks: Sequence[tuple[Any, ...]],
) -> list[Any]:
    """
    Evaluates `func(*task)` for every task in order.
    """
    return [func(*task) for task in tasks]


## } MODULE
