"""Command-line interface.

Subcommands:

* ``decompose`` - matrix JSON to rectangular-mesh JSON
* ``bound``     - exact TVD plus distance bounds for two transforms
* ``lcu``       - four-unitary split and averaging network for a contraction
* ``repeat``    - ancilla-photon repeatability witness
* ``simulate``  - Monte Carlo panels (TVD and success probability sweeps)
* ``grid``      - closed-form success-probability grid over depth and photons

Exit codes: 0 success, 2 configuration/input error, 3 numerical failure
(zero heralding probability).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import experiments
from .averaging import lcu_network, decompose_into_unitaries
from .cmatrix import is_unitary, load_matrix, matrix_to_json
from .experiments import ConfigError, ExperimentConfig
from .mesh import clements_decompose, mesh_to_json
from .sampling import (
    ZeroHeraldError,
    arkhipov_bound,
    default_input,
    heralded_distribution,
    heralded_tvd_bound,
    ideal_distribution,
    tvd,
)

_PANELS = ("a", "b", "c", "d", "all")


def _parse_int_list(text: str) -> tuple[int, ...]:
    """Accept '1..8' ranges and '1,2,4' lists."""
    text = text.strip()
    if ".." in text:
        lo, hi = text.split("..", 1)
        return tuple(range(int(lo), int(hi) + 1))
    return tuple(int(v) for v in text.split(","))


def _parse_float_list(text: str) -> tuple[float, ...]:
    return tuple(float(v) for v in text.strip().split(","))


def _parse_state(text: str) -> tuple[int, ...]:
    return tuple(int(v) for v in text.replace("(", "").replace(")", "").split(","))


def _emit(doc: dict, out: str | None) -> None:
    text = json.dumps(doc, indent=2)
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def _cmd_decompose(args) -> int:
    u = load_matrix(args.matrix)
    mesh = clements_decompose(u)
    _emit(mesh_to_json(mesh), args.out)
    return 0


def _cmd_bound(args) -> int:
    a = load_matrix(args.matrix_a)
    b = load_matrix(args.matrix_b)
    n = args.photons
    input_state = (
        _parse_state(args.input) if args.input else default_input(a.shape[0], n)
    )
    if sum(input_state) != n:
        raise ConfigError("input state does not carry the requested photon count")
    both_unitary = is_unitary(a) and is_unitary(b)
    dist_a = (
        ideal_distribution(a, input_state)
        if is_unitary(a)
        else heralded_distribution(a, input_state)
    )
    dist_b = (
        ideal_distribution(b, input_state)
        if is_unitary(b)
        else heralded_distribution(b, input_state)
    )
    bound = heralded_tvd_bound(
        a, dist_a.herald_probability, b, dist_b.herald_probability, n
    )
    doc = {
        "photons": n,
        "input_state": list(input_state),
        "tvd": tvd(dist_a, dist_b),
        "arkhipov_bound": arkhipov_bound(a, b, n) if both_unitary else None,
        "heralded_bound": bound.value,
        "k": bound.k,
        "invertible": bound.invertible,
        "p_a": dist_a.herald_probability,
        "p_b": dist_b.herald_probability,
    }
    _emit(doc, args.out)
    return 0


def _cmd_lcu(args) -> int:
    target = load_matrix(args.target)
    spec = decompose_into_unitaries(target)
    net = lcu_network(target)
    input_state = (
        _parse_state(args.input) if args.input else default_input(target.shape[0], 1)
    )
    dist = heralded_distribution(net.effective_transform(), input_state)
    doc = {
        "scale": spec.scale,
        "coefficients": [[c.real, c.imag] for c in spec.coefficients],
        "unitaries": [matrix_to_json(u) for u in spec.unitaries],
        "network": {
            "copies": net.n_copies,
            "modes": net.m,
            "encoder": matrix_to_json(net.encoder),
            "decoder": matrix_to_json(net.decoder),
            "alpha": [[c.real, c.imag] for c in np.asarray(net.alpha)],
        },
        "input_state": list(input_state),
        "herald_probability": dist.herald_probability,
    }
    _emit(doc, args.out)
    return 0


def _cmd_repeat(args) -> int:
    if args.copies:
        copies = [load_matrix(p) for p in args.copies]
        input_state = (
            _parse_state(args.input)
            if args.input
            else default_input(copies[0].shape[0], 1)
        )
        doc = experiments.run_repeatability(copies, input_state)
    else:
        if not args.target or args.nu is None:
            raise ConfigError("repeat needs either --copies or --target with --nu")
        target = load_matrix(args.target)
        input_state = (
            _parse_state(args.input)
            if args.input
            else default_input(target.shape[0], 1)
        )
        doc = experiments.repeatability_noise_study(
            target,
            args.nu,
            args.num_copies,
            input_state,
            args.runs,
            args.seed,
        )
    _emit(doc, args.out)
    return 0


def _config_from_args(args) -> ExperimentConfig:
    values: dict = {}
    if args.config:
        values.update(json.loads(Path(args.config).read_text()))
    overrides = {
        "m": args.m,
        "n": args.n,
        "runs": args.runs,
        "master_seed": args.seed,
        "target": args.target,
        "target_path": args.target_file,
        "workers": args.workers,
    }
    if args.nu is not None:
        overrides["nu_values"] = _parse_float_list(args.nu)
    if args.N is not None:
        overrides["N_values"] = _parse_int_list(args.N)
    if args.input is not None:
        overrides["input_state"] = _parse_state(args.input)
    if args.fresh_target_per_run:
        overrides["fresh_target_per_run"] = True
    for key, val in overrides.items():
        if val is not None:
            values[key] = val
    for key in ("nu_values", "N_values", "input_state"):
        if key in values and values[key] is not None:
            values[key] = tuple(values[key])
    try:
        return ExperimentConfig(**values)
    except TypeError as exc:
        raise ConfigError(f"bad configuration: {exc}") from exc


def _panel_config(config: ExperimentConfig, panel: str) -> ExperimentConfig:
    if panel in ("a", "c"):
        if len(config.nu_values) != 1:
            raise ConfigError(f"panel {panel} sweeps N and needs a single nu")
        return config
    if len(config.N_values) != 1:
        config = replace(config, N_values=(4,))
    if len(config.nu_values) == 1:
        config = replace(config, nu_values=(0.0, 0.005, 0.01, 0.02, 0.05))
    return config


def _cmd_simulate(args) -> int:
    config = _config_from_args(args)
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    # panels a/c share the copy sweep, b/d the noise sweep; "all" reuses records
    groups = {"a": ("a", "c"), "c": ("c",), "b": ("b", "d"), "d": ("d",)}
    wanted = ("a", "b") if args.panel == "all" else (args.panel,)
    for lead in wanted:
        pconf = _panel_config(config, lead)
        if lead in ("a", "c"):
            records, by = experiments.sweep_copies(pconf), "N"
        else:
            records, by = experiments.sweep_noise(pconf), "nu"
        panels = groups[lead] if args.panel == "all" else (lead,)
        for panel in panels:
            stem = f"panel_{panel}"
            experiments.write_panel_csv(records, outdir / f"{stem}.csv")
            experiments.write_summary_csv(records, outdir / f"{stem}_summary.csv", by=by)
            meta = experiments.experiment_metadata(pconf, panel)
            (outdir / f"{stem}_meta.json").write_text(json.dumps(meta, indent=2) + "\n")
            print(f"wrote {outdir / (stem + '.csv')}")
    return 0


def _cmd_grid(args) -> int:
    d_range = _parse_int_list(args.d)
    n_range = _parse_int_list(args.n)
    experiments.write_grid_csv(args.nu, d_range, n_range, args.out)
    print(f"wrote {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="uaboson",
        description="Noisy linear-optical interference and averaging-based error mitigation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="decompose a unitary into a beamsplitter mesh")
    p.add_argument("matrix", help="matrix JSON file")
    p.add_argument("-o", "--out", help="output mesh JSON path (default stdout)")
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("bound", help="exact TVD and distance bounds for two transforms")
    p.add_argument("matrix_a")
    p.add_argument("matrix_b")
    p.add_argument("--photons", "-p", type=int, required=True)
    p.add_argument("--input", help="occupations, e.g. '1,1,0'")
    p.add_argument("-o", "--out")
    p.set_defaults(func=_cmd_bound)

    p = sub.add_parser("lcu", help="four-unitary split plus averaging network")
    p.add_argument("--target", required=True, help="target matrix JSON (norm <= 1)")
    p.add_argument("--input", help="occupations for the herald probability")
    p.add_argument("-o", "--out")
    p.set_defaults(func=_cmd_lcu)

    p = sub.add_parser("repeat", help="fabrication repeatability witness")
    p.add_argument("--copies", nargs="+", help="matrix JSON files")
    p.add_argument("--input", help="occupations, e.g. '1,0'")
    p.add_argument("--target", help="target matrix JSON for a seeded noise study")
    p.add_argument("--nu", type=float, help="parameter variance for the noise study")
    p.add_argument("--num-copies", type=int, default=2)
    p.add_argument("--runs", type=int, default=100)
    p.add_argument("--seed", type=int, default=ExperimentConfig.master_seed)
    p.add_argument("-o", "--out")
    p.set_defaults(func=_cmd_repeat)

    p = sub.add_parser("simulate", help="Monte Carlo comparison panels")
    p.add_argument("--panel", choices=_PANELS, default="all")
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--nu", help="single value for panels a/c, comma list for b/d")
    p.add_argument("--N", help="range '1..8' or comma list; single value for b/d")
    p.add_argument("--runs", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--target", choices=("haar", "identity", "file"))
    p.add_argument("--target-file")
    p.add_argument("--input", help="occupations, e.g. '1,1'")
    p.add_argument("--fresh-target-per-run", action="store_true")
    p.add_argument("--workers", type=int)
    p.add_argument("--config", help="JSON config file; flags override its values")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("grid", help="success-probability grid over depth and photons")
    p.add_argument("--nu", type=float, required=True)
    p.add_argument("--d", required=True, help="depth range, e.g. '1..20'")
    p.add_argument("--n", required=True, help="photon range, e.g. '1..20'")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_grid)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ZeroHeraldError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    except (ConfigError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
