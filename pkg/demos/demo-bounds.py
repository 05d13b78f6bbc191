## { MODULE

## This file is part of the "mbfbound" project.
## Copyright (c) 2025 Neco Kriel.
## Licensed under the MIT License. See LICENSE for details.

##
## === DEPENDENCIES
##

## stdlib
import time
from pathlib import Path

## third-party
import numpy
import matplotlib.pyplot as mpl_plot

## local
from mbfbound import bftest, dists, verify

##
## === PROGRAM MAIN
##


def main():
    print("Running demo script...")
    p = 3
    size_pairs = [(10, 10), (10, 50)]
    ks = [0.01, 1.0, 100.0]
    num_draws = 20_000
    axis_length = 2.5
    fig, axs_grid = mpl_plot.subplots(
        nrows=len(size_pairs),
        ncols=len(ks),
        figsize=(len(ks) * axis_length, len(size_pairs) * axis_length),
        sharey=True,
    )
    fig.subplots_adjust(
        wspace=0.08,
        hspace=0.35,
    )
    root = dists.RngStream(0x5EED)
    start_time = time.perf_counter()
    for row_index, (m, n) in enumerate(size_pairs):
        for col_index, k in enumerate(ks):
            print(f"Sampling T^2 for m = {m}, n = {n}, k = {k:g}")
            params = bftest.CanonicalParams.from_k(k, p, m, n)
            draws = bftest.sample_canonical_t2_batch(params, root.spawn(row_index, col_index), num_draws)
            t_grid = numpy.linspace(0.0, numpy.percentile(draws, 99.0), 200)
            bounds = bftest.bound_cdfs(t_grid, p, m, n)
            ax = axs_grid[row_index, col_index]
            ax.plot(t_grid, bounds.lower, color="#c44e52", lw=1.5, label="lower bound")
            ax.plot(t_grid, bounds.upper, color="#4c72b0", lw=1.5, label="upper bound")
            ax.plot(t_grid, verify.ecdf_on_grid(draws, t_grid), color="black", ls="--", lw=1.0, label="simulated")
            ax.set_title(rf"$m={m},\ n={n},\ k={k:g}$", fontsize=9)
            ax.tick_params(labelsize=7)
    elapsed_time = time.perf_counter() - start_time
    print(f"Sampling took {elapsed_time:.3f} seconds.")
    axs_grid[0, 0].legend(loc="lower right", fontsize=7)
    for ax in axs_grid[-1, :]:
        ax.set_xlabel(r"$t$", fontsize=9)
    for ax in axs_grid[:, 0]:
        ax.set_ylabel(r"$P(T^2 \leq t)$", fontsize=9)
    print("Saving figure...")
    script_dir = Path(__file__).parent
    fig_path = script_dir / "fbound_envelope.png"
    fig.savefig(
        fig_path,
        dpi=300,
        bbox_inches="tight",
    )
    mpl_plot.close(fig)
    print("Saved:", fig_path)


##
## === ENTRY POINT
##

if __name__ == "__main__":
    main()

## } SCRIPT
