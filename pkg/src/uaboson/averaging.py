"""Coherent averaging of redundant interferometers and its generalizations.

The averaging network interferes N copies of an m-mode transform: each input
mode is spread over N rails by an encoder acting on the copy index, every
copy applies its own U_i, a decoder recombines the rails, and vacuum is
heralded on the (N-1)*m ancilla rails.  Conditioned on that herald the
surviving modes see the effective transform

    sum_k alpha_k U_k,       alpha_k = E[0, k] * D[0, k],

the top-left block of the global unitary.  Discrete-Fourier encoders give
uniform alpha_k = 1/N, i.e. the plain arithmetic mean of the copies; choosing
other first rows realizes arbitrary coefficient vectors, which together with
the four-unitary split of a contraction implements any linear transform of
norm at most one.

Distribution-space averaging (mean of the output distributions, no coherence)
is included as the baseline to compare against.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .cmatrix import (
    as_matrix,
    dagger,
    dft,
    direct_sum,
    eig_hermitian,
    is_unitary,
    operator_norm,
    require_unitary,
)
from .sampling import Distribution, heralded_distribution, herald_probability

__all__ = [
    "AveragingNetwork",
    "LCUSpec",
    "unitary_average",
    "ua_network",
    "build_global_unitary",
    "ua_distribution",
    "distribution_average",
    "lcu_encoders",
    "decompose_into_unitaries",
    "lcu_network",
    "repeatability_witness",
]


@dataclass(frozen=True)
class AveragingNetwork:
    """N redundant m-mode transforms plus copy-index encoder/decoder unitaries.

    ``alpha[k] = encoder[0, k] * decoder[0, k]`` is the coefficient the
    heralded network applies to ``copies[k]``.
    """

    n_copies: int
    m: int
    copies: tuple[np.ndarray, ...]
    encoder: np.ndarray
    decoder: np.ndarray
    alpha: tuple[complex, ...]

    def __post_init__(self):
        if self.n_copies != len(self.copies) or self.n_copies < 1:
            raise ValueError("copies must match n_copies and be nonempty")
        for c in self.copies:
            if c.shape != (self.m, self.m):
                raise ValueError("every copy must be m×m")
        require_unitary(self.encoder, 1e-10, "encoder")
        require_unitary(self.decoder, 1e-10, "decoder")
        if self.encoder.shape != (self.n_copies, self.n_copies):
            raise ValueError("encoder must be N×N")
        if self.decoder.shape != (self.n_copies, self.n_copies):
            raise ValueError("decoder must be N×N")
        derived = self.encoder[0, :] * self.decoder[0, :]
        if np.max(np.abs(np.asarray(self.alpha) - derived)) > 1e-12:
            raise ValueError("alpha must equal encoder[0,:] * decoder[0,:]")

    def effective_transform(self) -> np.ndarray:
        out = np.zeros((self.m, self.m), dtype=np.complex128)
        for coeff, u in zip(self.alpha, self.copies):
            out += coeff * u
        return out


@dataclass(frozen=True)
class LCUSpec:
    """A target transform written as ``sum_k coefficients[k] * unitaries[k]``.

    ``scale`` is the l1 norm of the coefficients, the factor the heralded
    network divides the target by.
    """

    unitaries: tuple[np.ndarray, ...]
    coefficients: tuple[complex, ...]
    scale: float

    def __post_init__(self):
        if len(self.unitaries) != len(self.coefficients) or not self.unitaries:
            raise ValueError("need matching, nonempty unitaries and coefficients")
        if len(self.unitaries) > 4:
            raise ValueError("at most four unitaries are ever needed")
        for u in self.unitaries:
            require_unitary(u, 1e-10, "LCU term")

    def reconstruct(self) -> np.ndarray:
        out = np.zeros_like(self.unitaries[0])
        for c, u in zip(self.coefficients, self.unitaries):
            out += c * u
        return out


def unitary_average(copies: Sequence[np.ndarray]) -> np.ndarray:
    """Arithmetic mean of same-shape matrices."""
    mats = [as_matrix(c) for c in copies]
    if not mats:
        raise ValueError("cannot average an empty sequence")
    shape = mats[0].shape
    for c in mats:
        if c.shape != shape:
            raise ValueError("copies must share a common shape")
    return sum(mats) / len(mats)


def ua_network(copies: Sequence[np.ndarray]) -> AveragingNetwork:
    """Plain averaging network: DFT encoder/decoder, alpha_k = 1/N."""
    mats = tuple(require_unitary(c, what="copy") for c in copies)
    n = len(mats)
    if n == 0:
        raise ValueError("need at least one copy")
    f = dft(n)
    return AveragingNetwork(
        n_copies=n,
        m=mats[0].shape[0],
        copies=mats,
        encoder=f,
        decoder=dagger(f),
        alpha=tuple(f[0, :] * dagger(f)[0, :]),
    )


def build_global_unitary(net: AveragingNetwork) -> np.ndarray:
    """The (N·m)-mode unitary the network physically implements.

    Modes are ordered copy-major (copy r owns modes r*m .. r*m+m-1; copy 0
    carries the original input).  The top-left m×m block equals
    ``sum_k alpha_k copies[k]``.
    """
    eye = np.eye(net.m)
    encode = np.kron(net.encoder.T, eye)
    decode = np.kron(net.decoder, eye)
    middle = direct_sum(net.copies)
    return decode @ middle @ encode


def ua_distribution(
    copies: Sequence[np.ndarray], input_state: Sequence[int]
) -> tuple[Distribution, float]:
    """Heralded output distribution of averaged copies, plus success probability.

    Evaluated on the effective m-mode transform; the full (N·m)-mode
    simulation with explicit vacuum heralding gives the same distribution.
    """
    mats = [require_unitary(c, what="copy") for c in copies]
    avg = unitary_average(mats)
    dist = heralded_distribution(avg, input_state)
    return dist, dist.herald_probability


def distribution_average(dists: Sequence[Distribution]) -> Distribution:
    """Entrywise mean of unheralded distributions on a common basis."""
    if not dists:
        raise ValueError("cannot average an empty sequence")
    first = dists[0]
    for d in dists:
        if d.basis.states != first.basis.states:
            raise ValueError("distributions live on different bases")
        if abs(d.herald_probability - 1.0) > 1e-9:
            raise ValueError("distribution averaging expects unheralded inputs")
    probs = np.mean([d.probs for d in dists], axis=0)
    return Distribution(basis=first.basis, probs=probs, herald_probability=1.0)


# ---------------------------------------------------------------------------
# Linear combinations of unitaries


def _complete_rows_to_unitary(first_row: np.ndarray) -> np.ndarray:
    """Extend a unit row to a unitary by Gram-Schmidt against standard basis vectors."""
    k = first_row.shape[0]
    rows = [first_row]
    for cand_index in range(k):
        if len(rows) == k:
            break
        v = np.zeros(k, dtype=np.complex128)
        v[cand_index] = 1.0
        for r in rows:
            v = v - np.vdot(r, v) * r
        norm = np.linalg.norm(v)
        if norm > 1e-8:
            rows.append(v / norm)
    if len(rows) != k:
        raise ValueError("Gram-Schmidt completion failed")
    return np.array(rows, dtype=np.complex128)


def lcu_encoders(alpha: Sequence[complex]) -> tuple[np.ndarray, np.ndarray, float]:
    """Encoder/decoder pair realizing coefficients proportional to ``alpha``.

    Returns ``(E, D, scale)`` with ``E[0,k] * D[0,k] = alpha[k] / scale`` and
    ``scale = sum |alpha_k|``.  First rows carry the square-root magnitudes
    (phases on the encoder side); remaining rows are a deterministic
    Gram-Schmidt completion.
    """
    a = np.asarray(alpha, dtype=np.complex128)
    if a.size == 0:
        raise ValueError("alpha must be nonempty")
    scale = float(np.abs(a).sum())
    if scale == 0.0:
        raise ValueError("alpha must not be all zero")
    mags = np.sqrt(np.abs(a) / scale)
    phases = np.exp(1j * np.angle(a))
    encoder = _complete_rows_to_unitary(mags * phases)
    decoder = _complete_rows_to_unitary(mags.astype(np.complex128))
    return encoder, decoder, scale


def _unitary_sqrt_complement(h: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """For Hermitian h with spectrum in [-1, 1]: the pair h ± i·sqrt(I - h²)."""
    lam, w = eig_hermitian(h)
    lam = np.clip(lam, -1.0, 1.0)
    root = np.sqrt(1.0 - lam**2)
    plus = (w * (lam + 1j * root)) @ dagger(w)
    minus = (w * (lam - 1j * root)) @ dagger(w)
    return plus, minus


def decompose_into_unitaries(m_target) -> LCUSpec:
    """Write a norm-at-most-one matrix as a combination of at most 4 unitaries.

    A unitary input is returned as itself with coefficient 1.  Otherwise the
    Hermitian and anti-Hermitian parts are each split as ``(V+ + V-)/2`` with
    ``V± = H ± i·sqrt(I - H²)``; parts with negligible norm are dropped.
    """
    m_target = as_matrix(m_target)
    if operator_norm(m_target) > 1.0 + 1e-9:
        raise ValueError("LCU target must have operator norm <= 1")
    if is_unitary(m_target, 1e-10):
        return LCUSpec(
            unitaries=(m_target,), coefficients=(1.0 + 0.0j,), scale=1.0
        )
    h_re = (m_target + dagger(m_target)) / 2.0
    h_im = (m_target - dagger(m_target)) / 2.0j
    terms: list[np.ndarray] = []
    coeffs: list[complex] = []
    for h, weight in ((h_re, 0.5 + 0.0j), (h_im, 0.5j)):
        if operator_norm(h) < 1e-12:
            continue
        plus, minus = _unitary_sqrt_complement(h)
        terms.extend((plus, minus))
        coeffs.extend((weight, weight))
    scale = float(sum(abs(c) for c in coeffs))
    return LCUSpec(unitaries=tuple(terms), coefficients=tuple(coeffs), scale=scale)


def lcu_network(m_target) -> AveragingNetwork:
    """Averaging network whose heralded action is ``m_target / scale``."""
    spec = decompose_into_unitaries(m_target)
    encoder, decoder, scale = lcu_encoders(spec.coefficients)
    alpha = tuple(np.asarray(spec.coefficients, dtype=np.complex128) / scale)
    return AveragingNetwork(
        n_copies=len(spec.unitaries),
        m=spec.unitaries[0].shape[0],
        copies=spec.unitaries,
        encoder=encoder,
        decoder=decoder,
        alpha=alpha,
    )


def repeatability_witness(
    copies: Sequence[np.ndarray], input_state: Sequence[int]
) -> float:
    """Probability of finding any photon in the ancilla rails.

    Zero exactly when all copies implement the same transform; computed as
    one minus the heralding probability of the averaged transform, without
    requiring that probability to be positive.
    """
    mats = [require_unitary(c, what="copy") for c in copies]
    p = herald_probability(unitary_average(mats), input_state)
    return float(min(max(1.0 - p, 0.0), 1.0))
