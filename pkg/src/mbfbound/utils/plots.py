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
import matplotlib.colors as mpl_colors
from matplotlib.axes import Axes as mpl_axes

## one colour per bar position, cycled
BAR_COLOURS = ("#4c72b0", "#dd8452", "#55a868", "#c44e52", "#8172b3")

##
## === HELPER FUNCTIONS
##


def plot_size_bars(
    ax: mpl_axes,
    sizes: Sequence[float],
    labels: Sequence[str],
    gids: Sequence[str] | None = None,
    bar_alpha: float = 0.9,
):
    """
    One bar per label with height equal to the empirical size.
    """
    positions = numpy.arange(len(sizes))
    colours = [mpl_colors.to_rgba(BAR_COLOURS[index % len(BAR_COLOURS)], alpha=bar_alpha) for index in positions]
    bars = ax.bar(positions, sizes, width=0.7, color=colours)
    if gids is not None:
        for bar, gid in zip(bars, gids):
            bar.set_gid(gid)
    ax.set_xticks(positions)
    ax.set_xticklabels(labels, rotation=60, fontsize=6)
    ax.tick_params(axis="y", labelsize=6)
    return bars


def add_reference_line(
    ax: mpl_axes,
    level: float,
    gid: str | None = None,
    line_colour: str = "black",
    line_style: str = "--",
):
    line = ax.axhline(level, color=line_colour, linestyle=line_style, linewidth=1.0)
    if gid is not None: line.set_gid(gid)
    return line


def label_panel(
    ax: mpl_axes,
    label: str,
    label_size: float = 7,
):
    ax.set_title(label, fontsize=label_size)


## } MODULE
