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

## local
from mbfbound import bftest
from mbfbound.utils.files import read_matrix_csv

##
## === PROGRAM MAIN
##


def main():
    print("Running demo script...")
    data_dir = Path(__file__).resolve().parents[1] / "data"
    data = bftest.TwoSampleData(
        x=read_matrix_csv(data_dir / "example_x.csv"),
        y=read_matrix_csv(data_dir / "example_y.csv"),
    )
    print(f"Loaded samples with m = {data.m}, n = {data.n}, p = {data.p}")
    print("Testing H0: mu1 = mu2...")
    start_time = time.perf_counter()
    results = bftest.run_tests(data)
    elapsed_time = time.perf_counter() - start_time
    print(f"Five tests took {1e3 * elapsed_time:.2f} milliseconds.")
    print(f"T^2 = {results[0].statistic:.4f}")
    for result in results:
        ## the F bound has no approximate df; nu is reported by the other four
        nu = "" if result.df_info.nu is None else f"nu = {result.df_info.nu:8.3f}"
        print(f"  {result.method.value:<18} p-value = {result.p_value:.5f}  {nu}")
    same = bftest.TwoSampleData(x=data.x, y=data.x)
    print("Identical samples give p-values:", [result.p_value for result in bftest.run_tests(same)])


##
## === ENTRY POINT
##

if __name__ == "__main__":
    main()

## } SCRIPT
