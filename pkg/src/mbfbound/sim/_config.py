## { MODULE

## This file is part of the "mbfbound" project.
## Copyright (c) 2025 Neco Kriel.
## Licensed under the MIT License. See LICENSE for details.

##
## === DEPENDENCIES
##

## stdlib
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, NamedTuple

## local
from mbfbound.errors import ConfigError

DEFAULT_SEED = 0x5EED
MIN_REPS = 1000
MODES = ("direct", "canonical")

PAPER_GRID_SIZES: tuple[tuple[int, tuple[int, ...]], ...] = (
    (10, (10, 20, 50)),
    (100, (100, 200, 500)),
)
PAPER_GRID_KS: tuple[float, ...] = (0.01, 0.1, 1.0, 10.0, 100.0)

##
## === TYPES
##


class Setting(NamedTuple):
    m: int
    n: int
    k: float

    def label(self) -> str:
        return f"m={self.m}, n={self.n}, k={self.k:g}"


@dataclass(frozen=True)
class SimConfig:
    """
    A Type I error study: `reps` null datasets per (m, n, k) setting, each tested at every level in `alphas`.
    """
    grid: tuple[Setting, ...]
    p: int = 5
    alphas: tuple[float, ...] = (0.05, 0.01)
    reps: int = 20_000
    base_seed: int = DEFAULT_SEED
    mode: str = "direct"
    sigma_seed: int = DEFAULT_SEED
    parallelism: int | None = field(default=None, compare=False)

    def __post_init__(self):
        grid = tuple(Setting(int(m), int(n), float(k)) for m, n, k in self.grid)
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "alphas", tuple(float(alpha) for alpha in self.alphas))
        if not grid: raise ConfigError("`grid` must contain at least one (m, n, k) setting.")
        if len(set(grid)) != len(grid): raise ConfigError("`grid` must not repeat a setting.")
        if self.p < 1: raise ConfigError(f"`p` must be at least 1, but got {self.p}.")
        if self.reps < MIN_REPS:
            raise ConfigError(f"`reps` must be at least {MIN_REPS}, but got {self.reps}.")
        if self.mode not in MODES:
            raise ConfigError(f"`mode` must be one of {MODES}, but got `{self.mode}`.")
        if not self.alphas: raise ConfigError("`alphas` must not be empty.")
        for alpha in self.alphas:
            if not (0.0 < alpha < 1.0): raise ConfigError(f"Every alpha must lie in (0, 1), but got {alpha}.")
        for setting in grid:
            if not setting.k > 0: raise ConfigError(f"`k` must be positive, but got {setting.label()}.")
            if not self.p < min(setting.m, setting.n):
                raise ConfigError(f"Need p < min(m, n), but got p = {self.p} at {setting.label()}.")
        for name in ("base_seed", "sigma_seed"):
            value = getattr(self, name)
            if not (0 <= value < 2**64): raise ConfigError(f"`{name}` must be an unsigned 64-bit integer, but got {value}.")
        if self.parallelism is not None and self.parallelism < 1:
            raise ConfigError(f"`parallelism` must be at least 1, but got {self.parallelism}.")

    @classmethod
    def paper_grid(
        cls,
        **kwargs: Any,
    ) -> "SimConfig":
        """
        The published design: p = 5, m = 10 with n in {10, 20, 50} and m = 100 with n in {100, 200, 500},
        crossed with k in {0.01, 0.1, 1, 10, 100}.
        """
        grid = tuple(
            Setting(m, n, k)
            for m, ns in PAPER_GRID_SIZES
            for n in ns
            for k in PAPER_GRID_KS
        )
        return cls(grid=grid, **kwargs)

    @classmethod
    def from_dict(
        cls,
        raw: dict[str, Any],
    ) -> "SimConfig":
        known = {"p", "grid", "alphas", "reps", "base_seed", "mode", "sigma_seed", "parallelism"}
        unknown = sorted(set(raw) - known)
        if unknown: raise ConfigError(f"Unknown configuration keys: {', '.join(unknown)}.")
        if "grid" not in raw: raise ConfigError("The configuration must define `grid`.")
        try:
            grid = tuple(Setting(int(m), int(n), float(k)) for m, n, k in raw["grid"])
        except (TypeError, ValueError) as err:
            raise ConfigError("`grid` must be a list of [m, n, k] triples.") from err
        kwargs = {key: value for key, value in raw.items() if key != "grid"}
        if "alphas" in kwargs: kwargs["alphas"] = tuple(kwargs["alphas"])
        try:
            return cls(grid=grid, **kwargs)
        except TypeError as err:
            raise ConfigError(f"Invalid configuration value: {err}") from err

    @classmethod
    def from_json(
        cls,
        path: str | Path,
    ) -> "SimConfig":
        try:
            raw = json.loads(Path(path).read_text(encoding="utf-8"))
        except json.JSONDecodeError as err:
            raise ConfigError(f"{path}: invalid JSON ({err}).") from err
        if not isinstance(raw, dict): raise ConfigError(f"{path}: the configuration must be a JSON object.")
        return cls.from_dict(raw)

    def to_dict(self) -> dict[str, Any]:
        return {
            "p": self.p,
            "grid": [[setting.m, setting.n, setting.k] for setting in self.grid],
            "alphas": list(self.alphas),
            "reps": self.reps,
            "base_seed": self.base_seed,
            "mode": self.mode,
            "sigma_seed": self.sigma_seed,
            "parallelism": self.parallelism,
        }


## } MODULE
