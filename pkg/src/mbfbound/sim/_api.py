## { MODULE

## This file is part of the "mbfbound" project.
## Copyright (c) 2025 Neco Kriel.
## Licensed under the MIT License. See LICENSE for details.

##
## === DEPENDENCIES
##

## stdlib
import json
import logging
import time
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Any

## third-party
import numpy

## local
from mbfbound import bftest, dists, linalg
from mbfbound.errors import DfTooSmall, DomainError, MbfboundError
from mbfbound.sim import _core
from mbfbound.sim._config import Setting, SimConfig
from mbfbound.utils.files import write_atomic
from mbfbound.utils.workers import resolve_num_workers

log = logging.getLogger(__name__)

SIGMA_WISHART_DF = 10
SIGMA_FILE_VERSION = 1

##
## === RUN ARBITRARY BLOCKS
##


def run_blocks(
    func: Callable[..., Any],
    tasks: Sequence[tuple[Any, ...]],
    num_workers: int | None = None,
) -> list[Any]:
    """
    Evaluates `func(*task)` for every task, serially or across a process pool, and returns the results in task
    order. `MBF_THREADS` overrides `num_workers`.
    """
    from mbfbound.sim import _serial, _parallel
    num_workers = resolve_num_workers(num_workers)
    run_in_parallel = num_workers > 1 and len(tasks) > 1
    if run_in_parallel:
        return _parallel.run_blocks(func, tasks, num_workers=min(num_workers, len(tasks)))
    else:
        return _serial.run_blocks(func, tasks)


##
## === THE FIXED COVARIANCE REALISATION
##


def generate_sigma(
    sigma_seed: int,
    p: int,
) -> numpy.ndarray:
    """
    One realisation of W(I_p, 10), drawn from the stream (sigma_seed, 0).
    """
    if p > SIGMA_WISHART_DF:
        raise DfTooSmall(f"Sigma is drawn from W(I_p, {SIGMA_WISHART_DF}), which needs p <= {SIGMA_WISHART_DF}, but got p = {p}.")
    stream = dists.RngStream(sigma_seed, (0,))
    return dists.sample_wishart(stream, numpy.eye(p), SIGMA_WISHART_DF)


def load_or_generate_sigma(
    sigma_seed: int,
    p: int,
    path: str | Path | None = None,
) -> numpy.ndarray:
    """
    Returns the stored realisation at `path` when it was generated from the same (sigma_seed, p); otherwise
    generates it and, when `path` is given, stores it.
    """
    if path is not None and Path(path).is_file():
        stored = json.loads(Path(path).read_text(encoding="utf-8"))
        if stored.get("sigma_seed") == sigma_seed and stored.get("p") == p:
            log.debug(f"Loaded sigma from {path}")
            return linalg.as_spd(numpy.array(stored["sigma"], dtype=numpy.float64), "sigma")
        log.info(f"{path} holds a different sigma realisation; regenerating")
    sigma = generate_sigma(sigma_seed, p)
    if path is not None:
        payload = {
            "version": SIGMA_FILE_VERSION,
            "sigma_seed": sigma_seed,
            "p": p,
            "wishart_df": SIGMA_WISHART_DF,
            "sigma": sigma.tolist(),
        }
        write_atomic(path, json.dumps(payload, indent=2, allow_nan=False) + "\n")
    return sigma


##
## === RESULTS
##


@dataclass(frozen=True)
class SettingResult:
    m: int
    n: int
    k: float
    alpha: float
    method: bftest.Method
    reps: int
    rejections: int

    def __post_init__(self):
        if not (0 <= self.rejections <= self.reps):
            raise DomainError(f"`rejections` must lie in [0, reps], but got {self.rejections} of {self.reps}.")

    @property
    def setting(self) -> Setting:
        return Setting(self.m, self.n, self.k)

    @property
    def empirical_size(self) -> float:
        return self.rejections / self.reps

    @property
    def mc_se(self) -> float:
        return float(numpy.sqrt(self.alpha * (1.0 - self.alpha) / self.reps))

    def to_dict(self) -> dict[str, Any]:
        return {
            "m": self.m,
            "n": self.n,
            "k": self.k,
            "alpha": self.alpha,
            "method": self.method.value,
            "reps": self.reps,
            "rejections": self.rejections,
            "empirical_size": self.empirical_size,
            "mc_se": self.mc_se,
        }


@dataclass
class SettingStatus:
    setting: Setting
    resamples: int = 0
    elapsed_ms: float = 0.0
    error: str | None = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "m": self.setting.m,
            "n": self.setting.n,
            "k": self.setting.k,
            "resamples": self.resamples,
            "elapsed_ms": round(self.elapsed_ms, 3),
            "status": "failed" if self.error else "ok",
            "error": self.error,
        }


@dataclass
class RunManifest:
    config: SimConfig
    sigma_file: str | None
    started_at: str
    per_setting: list[SettingStatus] = field(default_factory=list)

    @property
    def partial(self) -> bool:
        return any(status.error for status in self.per_setting)

    def to_dict(self) -> dict[str, Any]:
        return {
            "config": self.config.to_dict(),
            "sigma_file": self.sigma_file,
            "started_at": self.started_at,
            "partial": self.partial,
            "per_setting": {status.setting.label(): status.to_dict() for status in self.per_setting},
        }

    def write(
        self,
        path: str | Path,
    ) -> Path:
        return write_atomic(path, json.dumps(self.to_dict(), indent=2, allow_nan=False) + "\n")


##
## === RUN THE STUDY
##


def _methods_for(
    mode: str,
) -> tuple[bftest.Method, ...]:
    return (bftest.Method.FBOUND,) if mode == "canonical" else bftest.ALL_METHODS


def _build_tasks(
    config: SimConfig,
    settings: Sequence[tuple[int, Setting]],
    sigma: numpy.ndarray,
) -> list[tuple[_core.BlockTask]]:
    sigma_factor = linalg.cholesky(sigma)
    methods = _methods_for(config.mode)
    return [
        (
            _core.BlockTask(
                setting_index=setting_index,
                start=start,
                size=size,
                p=config.p,
                m=setting.m,
                n=setting.n,
                k=setting.k,
                alphas=config.alphas,
                methods=methods,
                mode=config.mode,
                base_seed=config.base_seed,
                sigma_factor=sigma_factor,
            ),
        )
        for setting_index, setting in settings
        for start, size in _core.split_into_blocks(config.reps)
    ]


def _collect(
    config: SimConfig,
    settings: Sequence[tuple[int, Setting]],
    outcomes: Sequence[_core.BlockOutcome],
) -> tuple[list[SettingResult], list[SettingStatus]]:
    methods = _methods_for(config.mode)
    totals = {index: numpy.zeros((len(methods), len(config.alphas)), dtype=numpy.int64) for index, _ in settings}
    statuses = {index: SettingStatus(setting) for index, setting in settings}
    for outcome in outcomes:
        status = statuses[outcome.setting_index]
        totals[outcome.setting_index] += outcome.rejections
        status.resamples += outcome.resamples
        status.elapsed_ms += outcome.elapsed_ms
        if outcome.error and status.error is None: status.error = outcome.error
    results: list[SettingResult] = []
    for index, setting in settings:
        status = statuses[index]
        if status.error:
            log.warning(f"Setting {setting.label()} failed: {status.error}")
            continue
        if status.resamples:
            log.warning(f"Setting {setting.label()}: redrew {status.resamples} rank-deficient replications")
        for method_index, method in enumerate(methods):
            for alpha_index, alpha in enumerate(config.alphas):
                results.append(SettingResult(
                    m=setting.m,
                    n=setting.n,
                    k=setting.k,
                    alpha=alpha,
                    method=method,
                    reps=config.reps,
                    rejections=int(totals[index][method_index, alpha_index]),
                ))
    return results, [statuses[index] for index, _ in settings]


def run_setting(
    config: SimConfig,
    setting: Setting,
    setting_index: int = 0,
    sigma: numpy.ndarray | None = None,
) -> list[SettingResult]:
    """
    Empirical Type I error of every method (direct mode) or of the F bound (canonical mode) at one setting.
    `setting_index` is the first label of every replication stream, so the same index reproduces the same
    counts inside or outside a grid run.
    """
    if sigma is None: sigma = generate_sigma(config.sigma_seed, config.p)
    settings = [(setting_index, Setting(*setting))]
    outcomes = run_blocks(_core.run_block, _build_tasks(config, settings, sigma), config.parallelism)
    results, statuses = _collect(config, settings, outcomes)
    if statuses[0].error: raise MbfboundError(f"Setting {settings[0][1].label()} failed: {statuses[0].error}")
    return results


def run_grid(
    config: SimConfig,
    sigma_file: str | Path | None = None,
    verbose: bool = True,
) -> tuple[list[SettingResult], RunManifest]:
    """
    Runs every setting of the grid. Counts depend only on (base_seed, config), never on the worker count.
    Settings whose blocks fail are left out of the results and flagged in the manifest.
    """
    started_at = datetime.now(timezone.utc).isoformat(timespec="seconds")
    sigma = load_or_generate_sigma(config.sigma_seed, config.p, sigma_file)
    settings = list(enumerate(config.grid))
    tasks = _build_tasks(config, settings, sigma)
    num_workers = resolve_num_workers(config.parallelism)
    if verbose:
        log.info(
            f"Running {len(settings)} settings x {config.reps} replications ({config.mode} mode) "
            f"as {len(tasks)} blocks on {num_workers} worker(s)",
        )
    start_time = time.perf_counter()
    outcomes = run_blocks(_core.run_block, tasks, num_workers)
    results, statuses = _collect(config, settings, outcomes)
    if verbose:
        for status in statuses:
            log.info(f"{status.setting.label()}: {status.elapsed_ms / 1e3:.2f} s of block time")
        log.info(f"Grid finished in {time.perf_counter() - start_time:.1f} s")
    manifest = RunManifest(
        config=config,
        sigma_file=None if sigma_file is None else str(sigma_file),
        started_at=started_at,
        per_setting=statuses,
    )
    return results, manifest


## } MODULE
