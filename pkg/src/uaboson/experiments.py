"""Reproducible Monte Carlo sweeps comparing the two averaging protocols.

Every run draws N fresh noisy realizations of a target interferometer and
records, per run:

* exact total variation distance of the coherently averaged (heralded)
  distribution from the target distribution, and its rescaled-norm bound;
* exact distance of the naive distribution average from the target, and the
  matching bound (photon count times the mean operator-norm gap);
* the realized heralding probability ``p_post`` and its uniform-depth floor.

Determinism: the stream for run ``r`` at sweep point ``(N, nu_index)`` is
derived as ``SeedSequence(master_seed, spawn_key=(1, N, nu_index, r))``, and
rows are emitted in sweep order, so results are byte-identical for any
worker count.  CSV schema (17-significant-digit floats, LF endings):

    run,N,nu,tvd_ua,tvd_da,bound_ua,bound_da,p_post,p_uni,invertible_flag
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .averaging import distribution_average, repeatability_witness, unitary_average
from .cmatrix import haar_random, load_matrix
from .mesh import (
    BeamSplitter,
    Mesh,
    NoiseModel,
    clements_decompose,
    mesh_to_unitary,
    perturb,
    uniform_depth_pad,
)
from .sampling import (
    arkhipov_bound,
    default_input,
    heralded_distribution,
    heralded_tvd_bound,
    ideal_distribution,
    tvd,
    uniform_depth_success,
)

__all__ = [
    "ConfigError",
    "ExperimentConfig",
    "RunRecord",
    "sweep_copies",
    "sweep_noise",
    "success_probability_grid",
    "run_repeatability",
    "repeatability_noise_study",
    "theta_offset_copy",
    "write_panel_csv",
    "write_summary_csv",
    "write_grid_csv",
    "PANEL_CSV_HEADER",
]

PANEL_CSV_HEADER = "run,N,nu,tvd_ua,tvd_da,bound_ua,bound_da,p_post,p_uni,invertible_flag"

# spawn-key tags for stream derivation
_TARGET_STREAM = 0
_RUN_STREAM = 1
_FRESH_TARGET_STREAM = 2


class ConfigError(ValueError):
    """Invalid experiment configuration."""


@dataclass(frozen=True)
class ExperimentConfig:
    m: int = 2
    n: int = 2
    nu_values: tuple[float, ...] = (0.01,)
    N_values: tuple[int, ...] = (1, 2, 3, 4, 5, 6, 7, 8)
    runs: int = 300
    master_seed: int = 38
    target: str = "haar"  # "haar" | "identity" | "file"
    target_path: str | None = None
    input_state: tuple[int, ...] | None = None
    fresh_target_per_run: bool = False
    workers: int = 1

    def validate(self) -> None:
        if self.m < 1:
            raise ConfigError("m must be >= 1")
        if self.n < 1:
            raise ConfigError("n must be >= 1")
        if self.runs < 1:
            raise ConfigError("runs must be >= 1")
        if not self.N_values or any(N < 1 for N in self.N_values):
            raise ConfigError("all N values must be >= 1")
        if not self.nu_values or any(nu < 0 for nu in self.nu_values):
            raise ConfigError("all nu values must be >= 0")
        if self.target not in ("haar", "identity", "file"):
            raise ConfigError(f"unknown target kind {self.target!r}")
        if self.target == "file" and not self.target_path:
            raise ConfigError("target 'file' requires target_path")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")
        state = self.resolved_input()
        if len(state) != self.m or any(v < 0 for v in state):
            raise ConfigError("input_state must be m non-negative occupations")
        if sum(state) != self.n:
            raise ConfigError("input_state must contain n photons")
        if self.fresh_target_per_run and self.target != "haar":
            raise ConfigError("fresh_target_per_run requires a haar target")

    def resolved_input(self) -> tuple[int, ...]:
        if self.input_state is not None:
            return tuple(int(v) for v in self.input_state)
        if self.n > self.m:
            raise ConfigError("default input needs n <= m; set input_state")
        return default_input(self.m, self.n)

    def fixed_target(self) -> np.ndarray | None:
        """The shared target matrix, or None when one is drawn per run."""
        if self.target == "identity":
            return np.eye(self.m, dtype=np.complex128)
        if self.target == "file":
            u = load_matrix(self.target_path)
            if u.shape != (self.m, self.m):
                raise ConfigError("target file shape does not match m")
            return u
        if self.fresh_target_per_run:
            return None
        rng = np.random.default_rng(
            np.random.SeedSequence(self.master_seed, spawn_key=(_TARGET_STREAM,))
        )
        return haar_random(self.m, rng)


@dataclass(frozen=True)
class RunRecord:
    run: int
    N: int
    nu: float
    tvd_ua: float
    tvd_da: float
    bound_ua: float
    bound_da: float
    p_post: float
    p_uni: float
    invertible: bool

    def csv_row(self) -> str:
        floats = (
            self.nu,
            self.tvd_ua,
            self.tvd_da,
            self.bound_ua,
            self.bound_da,
            self.p_post,
            self.p_uni,
        )
        body = ",".join(f"{x:.17g}" for x in floats)
        return f"{self.run},{self.N},{body},{int(self.invertible)}"


def _run_stream(master_seed: int, N: int, nu_index: int, run: int) -> np.random.Generator:
    return np.random.default_rng(
        np.random.SeedSequence(master_seed, spawn_key=(_RUN_STREAM, N, nu_index, run))
    )


def _single_run(task) -> RunRecord:
    (m, n, nu, nu_index, N, run, master_seed, input_state, target, fresh) = task
    rng = _run_stream(master_seed, N, nu_index, run)
    if fresh:
        target_rng = np.random.default_rng(
            np.random.SeedSequence(
                master_seed, spawn_key=(_FRESH_TARGET_STREAM, N, nu_index, run)
            )
        )
        target = haar_random(m, target_rng)
    padded = uniform_depth_pad(clements_decompose(target))
    depth = padded.depth
    noise = NoiseModel(nu)
    copies = [mesh_to_unitary(perturb(padded, noise, rng)) for _ in range(N)]

    target_dist = ideal_distribution(target, input_state)
    avg = unitary_average(copies)
    ua_dist = heralded_distribution(avg, input_state)
    p_post = ua_dist.herald_probability
    da_dist = distribution_average(
        [ideal_distribution(c, input_state) for c in copies]
    )
    bound = heralded_tvd_bound(target, 1.0, avg, p_post, n)
    return RunRecord(
        run=run,
        N=N,
        nu=nu,
        tvd_ua=tvd(target_dist, ua_dist),
        tvd_da=tvd(target_dist, da_dist),
        bound_ua=bound.value,
        bound_da=float(np.mean([arkhipov_bound(target, c, n) for c in copies])),
        p_post=p_post,
        p_uni=uniform_depth_success(nu, depth, n),
        invertible=bound.invertible,
    )


def _execute(tasks: list, workers: int) -> list[RunRecord]:
    if workers <= 1:
        return [_single_run(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_single_run, tasks, chunksize=16))


def _sweep(config: ExperimentConfig, points: list[tuple[int, float, int]]) -> list[RunRecord]:
    """Run every (point, run) work item; rows come back ordered (point, run).

    Tasks are generated in emission order and both execution paths preserve
    input order, so the output is identical for any worker count.
    """
    config.validate()
    input_state = config.resolved_input()
    target = config.fixed_target()
    tasks = [
        (
            config.m,
            config.n,
            nu,
            nu_index,
            N,
            run,
            config.master_seed,
            input_state,
            target,
            target is None,
        )
        for (N, nu, nu_index) in points
        for run in range(config.runs)
    ]
    return _execute(tasks, config.workers)


def sweep_copies(config: ExperimentConfig) -> list[RunRecord]:
    """Sweep the copy count N at a single noise level (TVD / p_post vs N)."""
    config.validate()
    if len(config.nu_values) != 1:
        raise ConfigError("copy-count sweep expects exactly one nu value")
    nu = config.nu_values[0]
    points = [(N, nu, 0) for N in config.N_values]
    return _sweep(config, points)


def sweep_noise(config: ExperimentConfig) -> list[RunRecord]:
    """Sweep the noise variance at a single copy count (TVD / p_post vs nu)."""
    config.validate()
    if len(config.N_values) != 1:
        raise ConfigError("noise sweep expects exactly one N value")
    N = config.N_values[0]
    points = [(N, nu, i) for i, nu in enumerate(config.nu_values)]
    return _sweep(config, points)


def success_probability_grid(
    nu: float, d_range: Sequence[int], n_range: Sequence[int]
) -> np.ndarray:
    """Closed-form success floor over a (depth, photon-count) grid."""
    out = np.empty((len(d_range), len(n_range)), dtype=float)
    for i, d in enumerate(d_range):
        for j, n in enumerate(n_range):
            out[i, j] = uniform_depth_success(nu, d, n)
    return out


# ---------------------------------------------------------------------------
# Repeatability benchmarking


def theta_offset_copy(u, delta: float) -> np.ndarray:
    """Rebuild ``u`` with the first beamsplitter's theta offset by ``delta``."""
    mesh = clements_decompose(u)
    layers = [list(layer) for layer in mesh.layers]
    for layer in layers:
        for i, el in enumerate(layer):
            if isinstance(el, BeamSplitter):
                layer[i] = BeamSplitter(el.top, el.theta + delta, el.phi)
                new_layers = tuple(tuple(l) for l in layers)
                return mesh_to_unitary(
                    Mesh(m=mesh.m, layers=new_layers, output_phases=mesh.output_phases)
                )
    raise ValueError("mesh has no beamsplitter element to offset")


def run_repeatability(copies: Sequence[np.ndarray], input_state: Sequence[int]) -> dict:
    """Exact ancilla-photon witness for a fixed set of interferometer copies."""
    if len(copies) < 2:
        raise ConfigError("repeatability needs at least two copies")
    witness = repeatability_witness(copies, input_state)
    return {
        "copies": len(copies),
        "input_state": list(int(v) for v in input_state),
        "witness": witness,
    }


def repeatability_noise_study(
    target,
    nu: float,
    num_copies: int,
    input_state: Sequence[int],
    runs: int,
    master_seed: int,
) -> dict:
    """Witness statistics over seeded noisy fabrications of one target.

    Reports the per-seed witnesses, their mean and standard error, and a
    seeded bootstrap 95% confidence interval for the mean.
    """
    if runs < 1:
        raise ConfigError("runs must be >= 1")
    if num_copies < 2:
        raise ConfigError("repeatability needs at least two copies")
    padded = uniform_depth_pad(clements_decompose(target))
    noise = NoiseModel(nu)
    values = []
    for run in range(runs):
        rng = _run_stream(master_seed, num_copies, 0, run)
        copies = [mesh_to_unitary(perturb(padded, noise, rng)) for _ in range(num_copies)]
        values.append(repeatability_witness(copies, input_state))
    values = np.asarray(values, dtype=float)
    boot_rng = np.random.default_rng(
        np.random.SeedSequence(master_seed, spawn_key=(_RUN_STREAM, 0, 0, runs))
    )
    boot = np.array([
        values[boot_rng.integers(0, runs, size=runs)].mean() for _ in range(2000)
    ])
    lo, hi = np.percentile(boot, [2.5, 97.5])
    return {
        "nu": nu,
        "copies": num_copies,
        "runs": runs,
        "witnesses": values.tolist(),
        "witness_mean": float(values.mean()),
        "witness_stderr": float(values.std(ddof=1) / math.sqrt(runs)) if runs > 1 else 0.0,
        "witness_ci95": [float(lo), float(hi)],
    }


# ---------------------------------------------------------------------------
# File emission


def write_panel_csv(records: Sequence[RunRecord], path: str | Path) -> None:
    lines = [PANEL_CSV_HEADER] + [r.csv_row() for r in records]
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def _mean_stderr(vals: np.ndarray) -> tuple[float, float]:
    mean = float(vals.mean())
    if vals.size > 1:
        return mean, float(vals.std(ddof=1) / math.sqrt(vals.size))
    return mean, 0.0


def write_summary_csv(records: Sequence[RunRecord], path: str | Path, by: str) -> None:
    """Aggregate per sweep point; ``by`` is 'N' or 'nu'."""
    if by not in ("N", "nu"):
        raise ValueError("by must be 'N' or 'nu'")
    keys: list = []
    for r in records:
        key = getattr(r, by)
        if key not in keys:
            keys.append(key)
    cols = ["tvd_ua", "tvd_da", "bound_ua", "bound_da", "p_post", "p_uni"]
    header = [by]
    for c in cols:
        header += [f"{c}_mean", f"{c}_stderr"]
    lines = [",".join(header)]
    for key in keys:
        group = [r for r in records if getattr(r, by) == key]
        out = [f"{key:.17g}" if by == "nu" else str(key)]
        for c in cols:
            mean, se = _mean_stderr(np.array([getattr(r, c) for r in group]))
            out += [f"{mean:.17g}", f"{se:.17g}"]
        lines.append(",".join(out))
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def write_grid_csv(
    nu: float, d_range: Sequence[int], n_range: Sequence[int], path: str | Path
) -> None:
    grid = success_probability_grid(nu, d_range, n_range)
    lines = ["d,n,p_uni"]
    for i, d in enumerate(d_range):
        for j, n in enumerate(n_range):
            lines.append(f"{d},{n},{grid[i, j]:.17g}")
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def experiment_metadata(config: ExperimentConfig, panel: str) -> dict:
    doc = asdict(config)
    doc["panel"] = panel
    doc["input_state"] = list(config.resolved_input())
    doc["target_mode"] = (
        "fresh-haar-per-run" if config.fresh_target_per_run else config.target
    )
    return doc
