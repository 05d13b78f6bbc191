from ._api import (
    SIGMA_WISHART_DF,
    RunManifest,
    SettingResult,
    SettingStatus,
    generate_sigma,
    load_or_generate_sigma,
    run_blocks,
    run_grid,
    run_setting,
)
from ._config import MIN_REPS, Setting, SimConfig
from ._core import BLOCK_SIZE, split_into_blocks
from ._emit import CSV_HEADER, emit_csv, emit_json, emit_svg, read_results_csv, results_to_csv_text
