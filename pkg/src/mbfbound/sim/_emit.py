## { MODULE

## This file is part of the "mbfbound" project.
## Copyright (c) 2025 Neco Kriel.
## Licensed under the MIT License. See LICENSE for details.

##
## === DEPENDENCIES
##

## stdlib
import csv
import io
import json
from collections.abc import Sequence
from pathlib import Path

## third-party
import matplotlib
from matplotlib.figure import Figure

## local
from mbfbound import bftest
from mbfbound.errors import DomainError, ParseError
from mbfbound.sim._api import SettingResult
from mbfbound.utils import plots
from mbfbound.utils.files import write_atomic

CSV_HEADER = ("m", "n", "k", "alpha", "method", "reps", "rejections", "empirical_size", "mc_se")
SVG_RC_PARAMS = {
    "svg.hashsalt": "mbfbound",
    "svg.fonttype": "none",
    "text.usetex": False,
}

##
## === TABLES
##


def _check_not_empty(
    results: Sequence[SettingResult],
) -> None:
    if not results: raise DomainError("There are no results to write.")


def results_to_csv_text(
    results: Sequence[SettingResult],
) -> str:
    """
    Results in the `m,n,k,alpha,method,reps,rejections,empirical_size,mc_se` schema; floats are written with
    `repr` so they read back exactly.
    """
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for result in results:
        writer.writerow([
            result.m,
            result.n,
            repr(float(result.k)),
            repr(float(result.alpha)),
            result.method.value,
            result.reps,
            result.rejections,
            repr(result.empirical_size),
            repr(result.mc_se),
        ])
    return buffer.getvalue()


def emit_csv(
    results: Sequence[SettingResult],
    path: str | Path,
) -> Path:
    _check_not_empty(results)
    return write_atomic(path, results_to_csv_text(results))


def emit_json(
    results: Sequence[SettingResult],
    path: str | Path,
) -> Path:
    _check_not_empty(results)
    payload = {"results": [result.to_dict() for result in results]}
    return write_atomic(path, json.dumps(payload, indent=2, allow_nan=False) + "\n")


def read_results_csv(
    path: str | Path,
) -> list[SettingResult]:
    path = Path(path)
    with path.open(newline="", encoding="utf-8") as handle:
        rows = list(csv.reader(handle))
    if not rows or tuple(rows[0]) != CSV_HEADER:
        raise ParseError(f"{path}: line 1: expected the header `{','.join(CSV_HEADER)}`.")
    results: list[SettingResult] = []
    for line_number, row in enumerate(rows[1:], start=2):
        if not row: continue
        if len(row) != len(CSV_HEADER):
            raise ParseError(f"{path}: line {line_number}: expected {len(CSV_HEADER)} fields, but got {len(row)}.")
        fields = dict(zip(CSV_HEADER, row))
        try:
            results.append(SettingResult(
                m=int(fields["m"]),
                n=int(fields["n"]),
                k=float(fields["k"]),
                alpha=float(fields["alpha"]),
                method=bftest.Method(fields["method"]),
                reps=int(fields["reps"]),
                rejections=int(fields["rejections"]),
            ))
        except ValueError as err:
            raise ParseError(f"{path}: line {line_number}: {err}") from err
    return results


##
## === FIGURES
##


def _bar_gid(
    result: SettingResult,
) -> str:
    return f"bar-m{result.m}-n{result.n}-k{result.k:g}-{result.method.value}"


def emit_svg(
    results: Sequence[SettingResult],
    alpha: float,
    path: str | Path,
    panel_size: tuple[float, float] = (2.2, 1.9),
) -> Path:
    """
    Bar-chart matrix of empirical sizes at one level: rows are k values, columns are (m, n) pairs, one bar per
    method and a dashed line at alpha in every panel.
    """
    selected = [result for result in results if result.alpha == alpha]
    if not selected: raise DomainError(f"There are no results at alpha = {alpha}.")
    ks = sorted({result.k for result in selected})
    size_pairs = list(dict.fromkeys((result.m, result.n) for result in selected))
    methods = [method for method in bftest.ALL_METHODS if any(result.method is method for result in selected)]
    num_rows, num_cols = len(ks), len(size_pairs)
    fig = Figure(figsize=(panel_size[0] * num_cols, panel_size[1] * num_rows))
    axs_grid = fig.subplots(nrows=num_rows, ncols=num_cols, squeeze=False, sharey=True)
    fig.subplots_adjust(wspace=0.08, hspace=0.9, bottom=0.12)
    y_max = 1.15 * max(max(result.empirical_size for result in selected), alpha)
    for row_index, k in enumerate(ks):
        for col_index, (m, n) in enumerate(size_pairs):
            ax = axs_grid[row_index, col_index]
            by_method = {
                result.method: result
                for result in selected
                if (result.m, result.n, result.k) == (m, n, k)
            }
            if not by_method:
                ax.set_axis_off()
                continue
            cell = [by_method[method] for method in methods if method in by_method]
            plots.plot_size_bars(
                ax=ax,
                sizes=[result.empirical_size for result in cell],
                labels=[result.method.value for result in cell],
                gids=[_bar_gid(result) for result in cell],
            )
            plots.add_reference_line(ax=ax, level=alpha, gid=f"alpha-line-m{m}-n{n}-k{k:g}")
            plots.label_panel(ax=ax, label=f"m={m}, n={n}, k={k:g}")
            ax.set_ylim(0.0, y_max)
    fig.suptitle(f"Empirical Type I error, alpha = {alpha:g}", fontsize=9)
    buffer = io.StringIO()
    with matplotlib.rc_context(SVG_RC_PARAMS):
        fig.savefig(buffer, format="svg", metadata={"Date": None})
    return write_atomic(path, buffer.getvalue())


## } MODULE
