## { MODULE

## This file is part of the "mbfbound" project.
## Copyright (c) 2025 Neco Kriel.
## Licensed under the MIT License. See LICENSE for details.

##
## === DEPENDENCIES
##

## stdlib
import os
from multiprocessing import cpu_count

## local
from mbfbound.errors import ConfigError

THREADS_ENV_VAR = "MBF_THREADS"

##
## === WORKER COUNT
##


def resolve_num_workers(
    hint: int | None = None,
) -> int:
    """
    Number of worker processes: `MBF_THREADS` if set, otherwise `hint`, otherwise every core.
    """
    env_value = os.environ.get(THREADS_ENV_VAR, "").strip()
    if env_value:
        try:
            num_workers = int(env_value)
        except ValueError:
            raise ConfigError(f"`{THREADS_ENV_VAR}` must be a positive integer, but got `{env_value}`.") from None
    elif hint is not None:
        num_workers = int(hint)
    else:
        num_workers = cpu_count()
    if num_workers < 1:
        raise ConfigError(f"The worker count must be at least 1, but got {num_workers}.")
    return num_workers


## } MODULE
