## { MODULE

## This file is part of the "mbfbound" project.
## Copyright (c) 2025 Neco Kriel.
## Licensed under the MIT License. See LICENSE for details.

##
## === DEPENDENCIES
##

## stdlib
import json
from collections.abc import Sequence
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

## third-party
import numpy

## local
from mbfbound.utils.files import write_atomic

##
## === REPORTS
##


def _jsonable(
    value: Any,
) -> Any:
    if isinstance(value, numpy.ndarray): return [_jsonable(item) for item in value.tolist()]
    if isinstance(value, (numpy.integer,)): return int(value)
    if isinstance(value, (numpy.floating, float)):
        value = float(value)
        return value if numpy.isfinite(value) else None
    if isinstance(value, dict): return {str(key): _jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)): return [_jsonable(item) for item in value]
    return value


@dataclass
class CheckReport:
    """
    Outcome of one verification check. `worst_margin` is the smallest slack observed over every comparison
    (negative when a comparison failed); `seeds` records the stream addresses the check drew from.
    """
    name: str
    instances: int
    violations: int
    worst_margin: float
    seeds: dict[str, Any]
    skipped: int = 0
    details: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def to_dict(self) -> dict[str, Any]:
        return _jsonable({
            "name": self.name,
            "instances": self.instances,
            "violations": self.violations,
            "worst_margin": self.worst_margin,
            "skipped": self.skipped,
            "passed": self.passed,
            "seeds": self.seeds,
            "details": self.details,
        })


@dataclass
class OrderCheckReport:
    """
    Empirical CDFs of two laws on a common grid with pointwise Monte Carlo standard errors. `violations` counts
    grid points where the first CDF falls below the second by more than `band` standard errors;
    `reverse_violations` counts the opposite direction.
    """
    grid: numpy.ndarray
    ecdf_a: numpy.ndarray
    ecdf_b: numpy.ndarray
    mc_se: numpy.ndarray
    violations: int
    reverse_violations: int
    reps: int
    band: float = 3.0

    @property
    def worst_margin(self) -> float:
        return float(numpy.min(self.ecdf_a - self.ecdf_b + self.band * self.mc_se))

    def to_dict(self) -> dict[str, Any]:
        return _jsonable({
            "grid": self.grid,
            "ecdf_a": self.ecdf_a,
            "ecdf_b": self.ecdf_b,
            "mc_se": self.mc_se,
            "violations": self.violations,
            "reverse_violations": self.reverse_violations,
            "reps": self.reps,
            "band": self.band,
        })


def reports_to_dict(
    reports: Sequence[CheckReport],
) -> dict[str, Any]:
    return {
        "checks": [report.to_dict() for report in reports],
        "total_violations": int(sum(report.violations for report in reports)),
    }


def write_reports(
    reports: Sequence[CheckReport],
    path: str | Path,
) -> Path:
    return write_atomic(path, json.dumps(reports_to_dict(reports), indent=2, allow_nan=False) + "\n")


## } MODULE
