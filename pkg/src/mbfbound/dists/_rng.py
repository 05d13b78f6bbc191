## { MODULE

## This file is part of the "mbfbound" project.
## Copyright (c) 2025 Neco Kriel.
## Licensed under the MIT License. See LICENSE for details.

##
## === DEPENDENCIES
##

## stdlib
from collections.abc import Sequence

## third-party
import numpy

## local
from mbfbound.errors import DomainError

##
## === COUNTER-BASED RANDOM STREAMS
##

MAX_LABEL = 2**64 - 1


def _check_label(
    label: int,
    name: str,
) -> int:
    label = int(label)
    if not (0 <= label <= MAX_LABEL):
        raise DomainError(f"`{name}` must be an unsigned 64-bit integer, but got {label}.")
    return label


class RngStream:
    """
    A reproducible random stream addressed by `(base_seed, stream_path)`.

    The variates come from numpy's counter-based Philox bit generator, keyed by a `SeedSequence` whose entropy is
    `base_seed` and whose spawn key is `stream_path`. The same address always replays the same sequence, and
    distinct paths give independent streams, so work can be split across processes in any order.

    A stream is owned by one task: share the address, never the object.
    """

    def __init__(
        self,
        base_seed: int,
        stream_path: Sequence[int] = (),
    ):
        self.base_seed = _check_label(base_seed, "base_seed")
        self.stream_path = tuple(_check_label(label, "stream_path") for label in stream_path)
        self._generator: numpy.random.Generator | None = None

    def __repr__(self) -> str:
        return f"RngStream(base_seed={self.base_seed:#x}, stream_path={self.stream_path})"

    @property
    def generator(self) -> numpy.random.Generator:
        if self._generator is None:
            seed_seq = numpy.random.SeedSequence(
                entropy=self.base_seed,
                spawn_key=self.stream_path,
            )
            self._generator = numpy.random.Generator(numpy.random.Philox(seed_seq))
        return self._generator

    def spawn(
        self,
        *labels: int,
    ) -> "RngStream":
        """
        Fresh stream whose path extends this one; the parent's state is untouched.
        """
        return RngStream(
            base_seed=self.base_seed,
            stream_path=self.stream_path + tuple(labels),
        )

    def reset(self) -> "RngStream":
        self._generator = None
        return self


## } MODULE
