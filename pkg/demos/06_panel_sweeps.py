"""Monte Carlo panels: distance and success probability vs copies and noise.

Writes the four panel CSVs plus the success-floor grid into ./panel_output,
in the same schema the `uaboson simulate` and `uaboson grid` subcommands use.
The plotting package (plots/) renders these files.
"""

from pathlib import Path

import numpy as np

from uaboson.experiments import (
    ExperimentConfig,
    sweep_copies,
    sweep_noise,
    write_grid_csv,
    write_panel_csv,
    write_summary_csv,
)

OUT = Path(__file__).resolve().parent / "panel_output"
OUT.mkdir(exist_ok=True)

copies_cfg = ExperimentConfig(
    m=2, n=2, nu_values=(0.01,), N_values=tuple(range(1, 9)),
    runs=100, master_seed=38, target="identity",
)
records = sweep_copies(copies_cfg)
write_panel_csv(records, OUT / "panel_a.csv")
write_summary_csv(records, OUT / "panel_a_summary.csv", by="N")

for N in sorted({r.N for r in records}):
    group = [r for r in records if r.N == N]
    print(
        f"N={N}: coherent tvd {np.mean([r.tvd_ua for r in group]):.4f}"
        f"  naive tvd {np.mean([r.tvd_da for r in group]):.4f}"
        f"  p_post {np.mean([r.p_post for r in group]):.4f}"
    )

noise_cfg = ExperimentConfig(
    m=2, n=2, nu_values=(0.0, 0.005, 0.01, 0.02, 0.05), N_values=(4,),
    runs=100, master_seed=38, target="identity",
)
noise_records = sweep_noise(noise_cfg)
write_panel_csv(noise_records, OUT / "panel_b.csv")
write_summary_csv(noise_records, OUT / "panel_b_summary.csv", by="nu")

write_grid_csv(0.01, range(1, 21), range(1, 21), OUT / "success_grid.csv")
print(f"\nwrote CSVs to {OUT}")
