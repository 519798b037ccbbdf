"""Rectangular beamsplitter meshes and the stochastic fabrication-noise model.

Element convention.  A beamsplitter on adjacent modes ``(t, t+1)`` acts as

    B(theta, phi) = [[exp(i·phi)·cos(theta), -sin(theta)],
                     [exp(i·phi)·sin(theta),  cos(theta)]]

i.e. a phase shifter on the top input arm followed by a real coupler; the
phase multiplies the first *column*.  ``B(0, 0)`` is the identity and
``B(pi/2, 0) = [[0, -1], [1, 0]]``.

A mesh is an ordered list of layers traversed first-to-last, followed by one
diagonal layer of output phases:

    U = diag(exp(i·psi)) @ L_K @ ... @ L_2 @ L_1

Layers never place two elements on the same mode.

Uniform-depth padding rewrites each beamsplitter layer into a phase column
(one ``PhaseShifter`` on every mode, carrying the beamsplitter phases) and a
coupler column (pure-rotation ``Coupler`` elements plus identity phases on
idle modes).  After padding, every optical path picks up exactly one noisy
parameter per column, so with per-parameter variance ``nu`` the mean of a
noisy mesh is the target scaled by ``(1 - nu/2)**d`` where ``d`` counts the
padded columns plus the output-phase layer.  Fusing the beamsplitter phase
with its coupler would break this: the two columns of ``B`` would damp at
different rates under noise.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .cmatrix import as_matrix, require_unitary

__all__ = [
    "BeamSplitter",
    "PhaseShifter",
    "Coupler",
    "Mesh",
    "NoiseModel",
    "beamsplitter_matrix",
    "clements_decompose",
    "mesh_to_unitary",
    "uniform_depth_pad",
    "perturb",
    "sample_noisy_unitary",
    "mean_unitary_prediction",
    "mesh_to_json",
    "mesh_from_json",
    "save_mesh",
    "load_mesh",
]


@dataclass(frozen=True)
class BeamSplitter:
    """Variable beamsplitter with phase on the top input arm."""

    top: int
    theta: float
    phi: float

    @property
    def modes(self) -> tuple[int, int]:
        return (self.top, self.top + 1)


@dataclass(frozen=True)
class PhaseShifter:
    """Single-mode phase, also used as the identity-acting padding element."""

    mode: int
    phi: float

    @property
    def modes(self) -> tuple[int]:
        return (self.mode,)


@dataclass(frozen=True)
class Coupler:
    """Phase-free two-mode rotation; appears only in uniform-depth meshes."""

    top: int
    theta: float

    @property
    def modes(self) -> tuple[int, int]:
        return (self.top, self.top + 1)


Element = BeamSplitter | PhaseShifter | Coupler


@dataclass(frozen=True)
class Mesh:
    """Layered interferometer: element layers plus final output phases."""

    m: int
    layers: tuple[tuple[Element, ...], ...]
    output_phases: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "layers", tuple(tuple(layer) for layer in self.layers))
        object.__setattr__(self, "output_phases", tuple(float(p) for p in self.output_phases))
        if len(self.output_phases) != self.m:
            raise ValueError("output_phases length must equal mode count")
        for layer in self.layers:
            seen: set[int] = set()
            for el in layer:
                for mode in el.modes:
                    if mode < 0 or mode >= self.m:
                        raise ValueError(f"element touches mode {mode} outside 0..{self.m - 1}")
                    if mode in seen:
                        raise ValueError(f"layer has overlapping elements on mode {mode}")
                    seen.add(mode)

    @property
    def depth(self) -> int:
        """Element layers plus the output-phase layer."""
        return len(self.layers) + 1

    def element_count(self) -> int:
        return sum(len(layer) for layer in self.layers)


@dataclass(frozen=True)
class NoiseModel:
    """Zero-mean Gaussian jitter with variance ``nu`` on every mesh parameter."""

    nu: float
    distribution: str = "gaussian"

    def __post_init__(self):
        if self.nu < 0:
            raise ValueError("noise variance must be >= 0")
        if self.distribution != "gaussian":
            raise ValueError(f"unsupported noise distribution {self.distribution!r}")


def beamsplitter_matrix(theta: float, phi: float) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    e = complex(math.cos(phi), math.sin(phi))
    return np.array([[e * c, -s], [e * s, c]], dtype=np.complex128)


def _coupler_matrix(theta: float) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s], [s, c]], dtype=np.complex128)


def _layer_matrix(m: int, layer: tuple[Element, ...]) -> np.ndarray:
    out = np.eye(m, dtype=np.complex128)
    for el in layer:
        if isinstance(el, BeamSplitter):
            out[el.top : el.top + 2, el.top : el.top + 2] = beamsplitter_matrix(
                el.theta, el.phi
            )
        elif isinstance(el, Coupler):
            out[el.top : el.top + 2, el.top : el.top + 2] = _coupler_matrix(el.theta)
        else:
            out[el.mode, el.mode] = complex(math.cos(el.phi), math.sin(el.phi))
    return out


def mesh_to_unitary(spec: Mesh) -> np.ndarray:
    """Total transform: layers in traversal order, then output phases."""
    u = np.eye(spec.m, dtype=np.complex128)
    for layer in spec.layers:
        u = _layer_matrix(spec.m, layer) @ u
    phases = np.exp(1j * np.asarray(spec.output_phases, dtype=float))
    return phases[:, None] * u


# ---------------------------------------------------------------------------
# Clements decomposition


def _solve_right(a: complex, b: complex) -> tuple[float, float]:
    # eliminate a against b under right-multiplication by B(theta, phi)†
    theta = math.atan2(abs(a), abs(b))
    if abs(a) < 1e-300 or abs(b) < 1e-300:
        return theta, 0.0
    return theta, float(np.angle(a) - np.angle(b))


def _solve_left(a: complex, b: complex) -> tuple[float, float]:
    # eliminate b against a under left-multiplication by B(theta, phi)
    theta = math.atan2(abs(b), abs(a))
    if abs(a) < 1e-300 or abs(b) < 1e-300:
        return theta, 0.0
    return theta, float(np.angle(-b) - np.angle(a))


def _pack_layers(ops: list[tuple[int, float, float]], m: int) -> tuple:
    """Greedy earliest-layer packing preserving order on overlapping pairs."""
    layers: list[list[BeamSplitter]] = []
    last = [-1] * m
    for top, theta, phi in ops:
        at = max(last[top], last[top + 1]) + 1
        while len(layers) <= at:
            layers.append([])
        layers[at].append(BeamSplitter(top, theta, phi))
        last[top] = last[top + 1] = at
    return tuple(tuple(sorted(layer, key=lambda el: el.top)) for layer in layers)


def clements_decompose(u) -> Mesh:
    """Rectangular mesh realizing a unitary with m(m-1)/2 beamsplitters.

    Lower-triangle entries are eliminated along anti-diagonals, alternating
    right-multiplications by B† (even diagonals) and left-multiplications by
    B (odd diagonals); the left factors are then commuted through the final
    diagonal so the result reads ``diag @ B_k @ ... @ B_1``.
    """
    u = require_unitary(u, what="decomposition input")
    m = u.shape[0]
    if m == 1:
        return Mesh(m=1, layers=(), output_phases=(float(np.angle(u[0, 0])),))
    work = u.astype(np.complex128).copy()
    right_ops: list[tuple[int, float, float]] = []
    left_ops: list[tuple[int, float, float]] = []
    for i in range(m - 1):
        for j in range(i + 1):
            if i % 2 == 0:
                r, c = m - 1 - j, i - j
                theta, phi = _solve_right(work[r, c], work[r, c + 1])
                bdag = beamsplitter_matrix(theta, phi).conj().T
                work[:, c : c + 2] = work[:, c : c + 2] @ bdag
                right_ops.append((c, theta, phi))
            else:
                r, c = m - 1 - i + j, j
                theta, phi = _solve_left(work[r - 1, c], work[r, c])
                b = beamsplitter_matrix(theta, phi)
                work[r - 1 : r + 1, :] = b @ work[r - 1 : r + 1, :]
                left_ops.append((r - 1, theta, phi))
    psi = np.angle(np.diag(work)).astype(float)
    # B(theta, phi)† @ diag(psi_t, psi_u) = diag(psi_u - phi + pi, psi_u) @ B(theta, psi_t - psi_u + pi)
    transformed: list[tuple[int, float, float]] = []
    for top, theta, phi in reversed(left_ops):
        phi_new = psi[top] - psi[top + 1] + math.pi
        psi[top] = psi[top + 1] - phi + math.pi
        transformed.append((top, theta, _wrap_angle(phi_new)))
    circuit = right_ops + transformed
    phases = tuple(float(_wrap_angle(p)) for p in psi)
    return Mesh(m=m, layers=_pack_layers(circuit, m), output_phases=phases)


def _wrap_angle(x: float) -> float:
    return float((x + math.pi) % (2 * math.pi) - math.pi)


# ---------------------------------------------------------------------------
# Uniform depth and noise


def _is_uniform_layer(layer: tuple[Element, ...], m: int) -> bool:
    covered = [mode for el in layer for mode in el.modes]
    return (
        len(covered) == m
        and not any(isinstance(el, BeamSplitter) for el in layer)
    )


def uniform_depth_pad(spec: Mesh) -> Mesh:
    """Rewrite so every mode crosses exactly one single-parameter element per layer.

    Beamsplitter layers split into a phase column and a coupler column; idle
    modes receive identity-acting phase shifters.  The action is preserved
    exactly, and every optical path now traverses ``depth`` noisy elements.
    """
    new_layers: list[tuple[Element, ...]] = []
    for layer in spec.layers:
        if _is_uniform_layer(layer, spec.m):
            new_layers.append(layer)
            continue
        splitters = [el for el in layer if isinstance(el, BeamSplitter)]
        others = [el for el in layer if not isinstance(el, BeamSplitter)]
        phase_col: list[Element] = [PhaseShifter(el.top, el.phi) for el in splitters]
        second_col: list[Element] = [Coupler(el.top, el.theta) for el in splitters]
        second_col.extend(others)
        phased = {el.top for el in splitters}
        busy = {mode for el in second_col for mode in el.modes}
        for mode in range(spec.m):
            if mode not in phased:
                phase_col.append(PhaseShifter(mode, 0.0))
            if mode not in busy:
                second_col.append(PhaseShifter(mode, 0.0))
        key = lambda el: el.modes[0]
        new_layers.append(tuple(sorted(phase_col, key=key)))
        new_layers.append(tuple(sorted(second_col, key=key)))
    return Mesh(m=spec.m, layers=tuple(new_layers), output_phases=spec.output_phases)


def perturb(spec: Mesh, noise: NoiseModel, rng: np.random.Generator) -> Mesh:
    """Shift every parameter by an independent N(0, nu) draw.

    Draw order is fixed (layers in order, elements in order, theta before
    phi, output phases last) so a seeded generator reproduces the result.
    """
    sigma = math.sqrt(noise.nu)
    new_layers = []
    for layer in spec.layers:
        new_layer = []
        for el in layer:
            if isinstance(el, BeamSplitter):
                new_layer.append(
                    replace(
                        el,
                        theta=el.theta + sigma * rng.standard_normal(),
                        phi=el.phi + sigma * rng.standard_normal(),
                    )
                )
            elif isinstance(el, Coupler):
                new_layer.append(replace(el, theta=el.theta + sigma * rng.standard_normal()))
            else:
                new_layer.append(replace(el, phi=el.phi + sigma * rng.standard_normal()))
        new_layers.append(tuple(new_layer))
    phases = tuple(
        p + sigma * rng.standard_normal() for p in spec.output_phases
    )
    return Mesh(m=spec.m, layers=tuple(new_layers), output_phases=phases)


def sample_noisy_unitary(
    u, noise: NoiseModel, rng: np.random.Generator
) -> tuple[np.ndarray, int]:
    """One stochastic realization of a target unitary.

    Decomposes, pads to uniform depth, jitters every parameter, and rebuilds.
    Returns the (still unitary) sample together with the uniform depth d.
    """
    padded = uniform_depth_pad(clements_decompose(u))
    noisy = perturb(padded, noise, rng)
    return mesh_to_unitary(noisy), padded.depth


def mean_unitary_prediction(u, nu: float, d: int) -> np.ndarray:
    """Predicted mean of noisy samples: ``(1 - nu/2)**d`` times the target."""
    if nu < 0:
        raise ValueError("nu must be >= 0")
    if d < 0:
        raise ValueError("depth must be >= 0")
    return (1.0 - nu / 2.0) ** d * as_matrix(u)


# ---------------------------------------------------------------------------
# JSON interchange


def _element_to_json(el: Element) -> dict:
    if isinstance(el, BeamSplitter):
        return {"top": el.top, "theta": el.theta, "phi": el.phi}
    if isinstance(el, Coupler):
        return {"top": el.top, "theta": el.theta}
    return {"mode": el.mode, "phi": el.phi}


def _element_from_json(doc: dict) -> Element:
    if "mode" in doc:
        return PhaseShifter(mode=int(doc["mode"]), phi=float(doc["phi"]))
    if "phi" in doc:
        return BeamSplitter(top=int(doc["top"]), theta=float(doc["theta"]), phi=float(doc["phi"]))
    return Coupler(top=int(doc["top"]), theta=float(doc["theta"]))


def mesh_to_json(spec: Mesh) -> dict:
    return {
        "m": spec.m,
        "layers": [[_element_to_json(el) for el in layer] for layer in spec.layers],
        "output_phases": list(spec.output_phases),
    }


def mesh_from_json(doc: dict) -> Mesh:
    try:
        m = int(doc["m"])
        layers = tuple(
            tuple(_element_from_json(el) for el in layer) for layer in doc["layers"]
        )
        phases = tuple(float(p) for p in doc["output_phases"])
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed mesh document: {exc}") from exc
    return Mesh(m=m, layers=layers, output_phases=phases)


def save_mesh(spec: Mesh, path: str | Path) -> None:
    Path(path).write_text(json.dumps(mesh_to_json(spec), indent=2) + "\n")


def load_mesh(path: str | Path) -> Mesh:
    return mesh_from_json(json.loads(Path(path).read_text()))
