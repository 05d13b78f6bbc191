## { MODULE

## This file is part of the "mbfbound" project.
## Copyright (c) 2025 Neco Kriel.
## Licensed under the MIT License. See LICENSE for details.

##
## === DEPENDENCIES
##

## stdlib
import dataclasses
import logging
import time
from collections.abc import Iterable
from dataclasses import dataclass
from typing import Any

## third-party
import numpy

## local
from mbfbound import dists
from mbfbound.errors import ConfigError
from mbfbound.verify import _lemmas, _montecarlo
from mbfbound.verify._majorization import (
    MajorizationPair,
    build_theorem2_weights,
    is_majorized,
    random_majorized_pair,
)
from mbfbound.verify._reports import CheckReport, OrderCheckReport

log = logging.getLogger(__name__)

CHECKS = ("majorization", "lemma1", "lemma2", "appendix", "theorem1", "theorem2", "hotelling")
DEFAULT_SEED = 0x5EED

##
## === CONFIGURATION
##


@dataclass(frozen=True)
class VerifyConfig:
    """
    Sizes of every verification check. The defaults are the acceptance-scale runs; `quick()` shrinks them for
    smoke tests.
    """
    lemma1_dims: tuple[int, ...] = (2, 3, 5)
    lemma1_instances: int = 200
    lemma2_dims: tuple[int, ...] = (2, 4)
    lemma2_instances: int = 100
    lambda_points: int = _lemmas.LAMBDA_POINTS
    concavity_slack: float = _lemmas.CONCAVITY_SLACK
    theorem1_pairs: int = 20
    theorem1_reps: int = 50_000
    theorem1_max_length: int = 6
    theorem1_max_dim: int = 4
    chain_settings: tuple[tuple[int, int, float], ...] = ((4, 6, 0.5), (6, 4, 3.0), (5, 5, 1.0))
    chain_dim: int = 2
    theorem2_settings: tuple[tuple[int, int, int, float], ...] = tuple(
        (p, m, n, k)
        for p, m, n in ((2, 12, 12), (5, 10, 50), (3, 8, 30))
        for k in (0.01, 1.0, 100.0)
    )
    theorem2_reps: int = 100_000
    hotelling_settings: tuple[tuple[int, int], ...] = ((1, 7), (5, 9), (3, 20))
    hotelling_reps: int = 100_000
    majorization_sizes: tuple[int, ...] = (2, 3, 5, 10, 20, 100)
    majorization_ks: tuple[float, ...] = (0.01, 0.1, 1.0, 10.0, 100.0)
    band: float = 3.0
    debug_pair: bool = False

    def __post_init__(self):
        for name in ("lemma1_instances", "lemma2_instances", "theorem1_pairs", "theorem1_reps", "theorem2_reps", "hotelling_reps"):
            if getattr(self, name) < 1: raise ConfigError(f"`{name}` must be at least 1, but got {getattr(self, name)}.")
        if self.theorem1_max_length < 2: raise ConfigError("`theorem1_max_length` must be at least 2.")
        if self.theorem1_max_dim < 1: raise ConfigError("`theorem1_max_dim` must be at least 1.")

    @classmethod
    def quick(
        cls,
        **overrides: Any,
    ) -> "VerifyConfig":
        sizes: dict[str, Any] = {
            "lemma1_dims": (2, 3),
            "lemma1_instances": 6,
            "lemma2_dims": (2,),
            "lemma2_instances": 4,
            "theorem1_pairs": 3,
            "theorem1_reps": 4_000,
            "chain_settings": ((4, 6, 0.5),),
            "theorem2_settings": ((2, 12, 12, 1.0), (3, 8, 30, 100.0)),
            "theorem2_reps": 5_000,
            "hotelling_settings": ((5, 9),),
            "hotelling_reps": 5_000,
            "majorization_sizes": (2, 5, 10),
        }
        sizes.update(overrides)
        return cls(**sizes)

    def replace(
        self,
        **changes: Any,
    ) -> "VerifyConfig":
        return dataclasses.replace(self, **changes)


##
## === INDIVIDUAL CHECKS
##


def _seeds(
    stream: dists.RngStream,
) -> dict[str, Any]:
    return {"base_seed": stream.base_seed, "stream_path": list(stream.stream_path)}


def run_majorization_check(
    config: VerifyConfig,
    stream: dists.RngStream,
) -> CheckReport:
    """
    psi < eta < xi for every (m, n, k) of the grid, each vector summing to 1, plus reflexivity.
    """
    violations = 0
    instances = 0
    worst_margin = numpy.inf
    for m in config.majorization_sizes:
        for n in config.majorization_sizes:
            for k in config.majorization_ks:
                weights = build_theorem2_weights(m, n, k)
                instances += 1
                links = (
                    MajorizationPair(weights.psi, weights.eta),
                    MajorizationPair(weights.eta, weights.xi),
                    MajorizationPair(weights.eta, weights.eta),
                )
                violations += sum(not is_majorized(pair) for pair in links)
                sums = numpy.array([weights.psi.sum(), weights.eta.sum(), weights.xi.sum()])
                sum_error = float(numpy.max(numpy.abs(sums - 1.0)))
                violations += int(sum_error > 1e-12)
                worst_margin = min(worst_margin, 1e-12 - sum_error)
    return CheckReport(
        name="majorization",
        instances=instances,
        violations=violations,
        worst_margin=float(worst_margin),
        seeds=_seeds(stream),
    )


def _order_summary(
    label: str,
    report: OrderCheckReport,
    **extra: Any,
) -> dict[str, Any]:
    return {
        "pair": label,
        "violations": report.violations,
        "reverse_violations": report.reverse_violations,
        "worst_margin": report.worst_margin,
        **extra,
    }


def run_theorem1_checks(
    config: VerifyConfig,
    stream: dists.RngStream,
    num_workers: int | None = None,
) -> CheckReport:
    """
    Random majorized pairs with Wishart df = p + 3, then the psi < eta and eta < xi links of the weight chain
    with rank-one Wishart terms (df = 1), which is the canonical T^2 itself.
    """
    summaries: list[dict[str, Any]] = []
    if config.debug_pair:
        ## (1, 0) is not majorized by (1/2, 1/2); the check refuses to run
        _montecarlo.check_theorem1(
            psi=numpy.array([1.0, 0.0]),
            eta=numpy.array([0.5, 0.5]),
            p=1,
            wishart_df=2,
            reps=config.theorem1_reps,
            stream=stream.spawn(2**32),
            num_workers=num_workers,
        )
    for pair_index in range(config.theorem1_pairs):
        generator = stream.spawn(0, pair_index, 0).generator
        r = int(generator.integers(2, config.theorem1_max_length + 1))
        p = int(generator.integers(1, config.theorem1_max_dim + 1))
        pair = random_majorized_pair(stream.spawn(0, pair_index, 1), r)
        report = _montecarlo.check_theorem1(
            psi=pair.x,
            eta=pair.y,
            p=p,
            wishart_df=p + 3,
            reps=config.theorem1_reps,
            stream=stream.spawn(0, pair_index, 2),
            num_workers=num_workers,
            band=config.band,
        )
        summaries.append(_order_summary(f"random-{pair_index}", report, r=r, p=p, wishart_df=p + 3))
    for chain_index, (m, n, k) in enumerate(config.chain_settings):
        weights = build_theorem2_weights(m, n, k)
        for link_index, (label, lower, upper) in enumerate((("psi-eta", weights.psi, weights.eta), ("eta-xi", weights.eta, weights.xi))):
            report = _montecarlo.check_theorem1(
                psi=lower,
                eta=upper,
                p=config.chain_dim,
                wishart_df=1,
                reps=config.theorem1_reps,
                stream=stream.spawn(1, chain_index, link_index),
                num_workers=num_workers,
                band=config.band,
            )
            summaries.append(_order_summary(f"{label} m={m} n={n} k={k:g}", report, r=m + n - 2, p=config.chain_dim, wishart_df=1))
    return CheckReport(
        name="theorem1",
        instances=len(summaries),
        violations=int(sum(summary["violations"] for summary in summaries)),
        worst_margin=float(min(summary["worst_margin"] for summary in summaries)),
        seeds=_seeds(stream),
        details={"reps": config.theorem1_reps, "band": config.band, "pairs": summaries},
    )


def _merge(
    name: str,
    reports: list[CheckReport],
    stream: dists.RngStream,
) -> CheckReport:
    return CheckReport(
        name=name,
        instances=int(sum(report.instances for report in reports)),
        violations=int(sum(report.violations for report in reports)),
        worst_margin=float(min(report.worst_margin for report in reports)),
        seeds=_seeds(stream),
        skipped=int(sum(report.skipped for report in reports)),
        details={"runs": [report.to_dict() for report in reports]},
    )


##
## === RUN THE SUITE
##


def resolve_checks(
    which: str | Iterable[str],
) -> list[str]:
    names = [which] if isinstance(which, str) else list(which)
    if "all" in names: return list(CHECKS)
    unknown = [name for name in names if name not in CHECKS]
    if unknown: raise ConfigError(f"Unknown check(s): {', '.join(unknown)}. Valid: all, {', '.join(CHECKS)}.")
    return names


def run_verify(
    which: str | Iterable[str] = "all",
    config: VerifyConfig | None = None,
    base_seed: int = DEFAULT_SEED,
    num_workers: int | None = None,
    verbose: bool = True,
) -> list[CheckReport]:
    """
    Runs the requested checks. Check c draws from the stream (base_seed, index of c in `CHECKS`), so each
    report is reproducible on its own and independent of the worker count.
    """
    if config is None: config = VerifyConfig()
    root = dists.RngStream(base_seed)
    reports: list[CheckReport] = []
    for name in resolve_checks(which):
        stream = root.spawn(CHECKS.index(name))
        start_time = time.perf_counter()
        if name == "majorization":
            report = run_majorization_check(config, stream)
        elif name == "lemma1":
            report = _merge(name, [
                _lemmas.check_lemma1(p, config.lemma1_instances, stream.spawn(p), num_workers=num_workers)
                for p in config.lemma1_dims
            ], stream)
        elif name == "lemma2":
            report = _merge(name, [
                _lemmas.check_lemma2(
                    p,
                    config.lemma2_instances,
                    stream.spawn(p),
                    lam_points=config.lambda_points,
                    slack=config.concavity_slack,
                    num_workers=num_workers,
                )
                for p in config.lemma2_dims
            ], stream)
        elif name == "appendix":
            report = _merge(name, [
                _lemmas.check_appendix_concavity(
                    p,
                    config.lemma2_instances,
                    stream.spawn(p),
                    lam_points=config.lambda_points,
                    slack=config.concavity_slack,
                    num_workers=num_workers,
                )
                for p in config.lemma2_dims
            ], stream)
        elif name == "theorem1":
            report = run_theorem1_checks(config, stream, num_workers=num_workers)
        elif name == "theorem2":
            report = _merge(name, [
                _montecarlo.check_theorem2(
                    p,
                    m,
                    n,
                    k,
                    config.theorem2_reps,
                    stream.spawn(index),
                    num_workers=num_workers,
                    band=config.band,
                )
                for index, (p, m, n, k) in enumerate(config.theorem2_settings)
            ], stream)
        else:
            report = _merge(name, [
                _montecarlo.check_hotelling_transform(p, n, config.hotelling_reps, stream.spawn(index), num_workers=num_workers)
                for index, (p, n) in enumerate(config.hotelling_settings)
            ], stream)
        if verbose:
            status = "ok" if report.passed else f"{report.violations} violation(s)"
            log.info(f"{name}: {report.instances} instance(s), {status} in {time.perf_counter() - start_time:.1f} s")
        if report.skipped:
            log.warning(f"{name}: resampled {report.skipped} degenerate instance(s)")
        reports.append(report)
    return reports


## } MODULE
