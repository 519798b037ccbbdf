"""Output photon-count distributions and distance bounds.

Two kinds of transforms produce distributions here:

* unitary interferometers, via :func:`ideal_distribution`;
* sub-unitary transforms realized by heralding vacuum on ancilla modes,
  via :func:`heralded_distribution`, whose weights only sum to the heralding
  success probability before normalization.

Both carry their heralding probability so the distance bound for heralded
transforms can rescale consistently: for invertible ``a, b`` with operator
norm at most one and positive heralding probabilities,

    tvd(D_a, D_b) <= n * k**(n-1) * || a/p_a^(1/2n) - b/p_b^(1/2n) ||_op

with ``k`` the larger rescaled norm, floored at one.  For unitary pairs the
simpler ``n * ||u - v||_op`` bound applies.

Exact distributions are computed by full enumeration of the photon basis, so
everything in this module is meant for desk-scale ``(m, n)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .cmatrix import as_matrix, is_unitary, operator_norm
from .fock import FockBasis, enumerate_basis, transition_amplitude

__all__ = [
    "Distribution",
    "ZeroHeraldError",
    "default_input",
    "ideal_distribution",
    "heralded_distribution",
    "herald_probability",
    "tvd",
    "arkhipov_bound",
    "HeraldedBound",
    "heralded_tvd_bound",
    "uniform_depth_success",
]

#: determinant-modulus threshold below which a transform is treated as singular
SINGULAR_DET_TOL = 1e-12


class ZeroHeraldError(ArithmeticError):
    """Raised when a heralded transform has vanishing success probability."""


@dataclass(frozen=True)
class Distribution:
    """Normalized probabilities over a Fock basis, plus the heralding
    probability that normalized them (1 for plain unitary evolution)."""

    basis: FockBasis
    probs: np.ndarray
    herald_probability: float = 1.0

    def __post_init__(self):
        p = np.asarray(self.probs, dtype=float)
        if p.shape != (len(self.basis),):
            raise ValueError("probability vector does not match basis size")
        if np.any(p < -1e-12):
            raise ValueError("negative probability")
        p = np.clip(p, 0.0, None)
        object.__setattr__(self, "probs", p)
        if abs(p.sum() - 1.0) > 1e-9:
            raise ValueError(f"probabilities sum to {p.sum()}, expected 1")
        if not (0.0 < self.herald_probability <= 1.0 + 1e-9):
            raise ValueError("herald probability must lie in (0, 1]")

    def prob_of(self, state: tuple[int, ...]) -> float:
        return float(self.probs[self.basis.index_of(state)])


def default_input(m: int, n: int) -> tuple[int, ...]:
    """n single photons in the first n modes (requires n <= m)."""
    if n > m:
        raise ValueError("default input needs n <= m; pass an explicit state")
    return tuple(1 if i < n else 0 for i in range(m))


def _normalize_input(a: np.ndarray, input_state: Sequence[int]) -> tuple[int, ...]:
    state = tuple(int(v) for v in input_state)
    if len(state) != a.shape[0]:
        raise ValueError("input state length must equal the mode count")
    if any(v < 0 for v in state):
        raise ValueError("occupations must be non-negative")
    return state


def _amplitude_weights(a: np.ndarray, input_state: tuple[int, ...]) -> tuple[FockBasis, np.ndarray]:
    n = sum(input_state)
    basis = enumerate_basis(a.shape[0], n)
    w = np.empty(len(basis), dtype=float)
    for i, out in enumerate(basis.states):
        w[i] = abs(transition_amplitude(a, input_state, out)) ** 2
    return basis, w


def ideal_distribution(u, input_state: Sequence[int]) -> Distribution:
    """Exact output distribution of a unitary interferometer."""
    u = as_matrix(u)
    if not is_unitary(u):
        raise ValueError(
            "ideal_distribution requires a unitary; use heralded_distribution"
        )
    state = _normalize_input(u, input_state)
    basis, w = _amplitude_weights(u, state)
    return Distribution(basis=basis, probs=w / w.sum(), herald_probability=1.0)


def herald_probability(a, input_state: Sequence[int]) -> float:
    """Success probability of vacuum heralding: the total unnormalized weight."""
    a = as_matrix(a)
    state = _normalize_input(a, input_state)
    _, w = _amplitude_weights(a, state)
    return float(w.sum())


def heralded_distribution(a, input_state: Sequence[int]) -> Distribution:
    """Normalized distribution of a vacuum-heralded sub-unitary transform."""
    a = as_matrix(a)
    if operator_norm(a) > 1.0 + 1e-9:
        raise ValueError("heralded transform must have operator norm <= 1")
    state = _normalize_input(a, input_state)
    basis, w = _amplitude_weights(a, state)
    p = float(w.sum())
    if p < 1e-300:
        raise ZeroHeraldError("zero heralding probability")
    return Distribution(basis=basis, probs=w / p, herald_probability=p)


def tvd(d1: Distribution, d2: Distribution) -> float:
    """Total variation distance, half the l1 difference."""
    if d1.basis.states != d2.basis.states:
        raise ValueError("distributions live on different bases")
    return float(0.5 * np.abs(d1.probs - d2.probs).sum())


def arkhipov_bound(u, v, n: int) -> float:
    """Distance bound for unitary pairs: n times the operator-norm gap."""
    return float(n) * operator_norm(as_matrix(u) - as_matrix(v))


class HeraldedBound(NamedTuple):
    """Distance bound for heralded transforms.

    ``invertible`` is False when either transform is numerically singular, in
    which case the bound's hypothesis is unmet and the value is only
    indicative.
    """

    value: float
    k: float
    invertible: bool


def heralded_tvd_bound(a, p_a: float, b, p_b: float, n: int) -> HeraldedBound:
    """Bound on tvd between heralded distributions of invertible transforms.

    ``p_a`` and ``p_b`` are the heralding probabilities for the same input
    state the distributions were built from.
    """
    a = as_matrix(a)
    b = as_matrix(b)
    if p_a <= 0 or p_b <= 0:
        raise ValueError("heralding probabilities must be positive")
    if n < 1:
        raise ValueError("photon count must be >= 1")
    if operator_norm(a) > 1.0 + 1e-9 or operator_norm(b) > 1.0 + 1e-9:
        raise ValueError("transforms must have operator norm <= 1")
    a_scaled = a * p_a ** (-1.0 / (2 * n))
    b_scaled = b * p_b ** (-1.0 / (2 * n))
    k = max(operator_norm(a_scaled), operator_norm(b_scaled), 1.0)
    value = n * k ** (n - 1) * operator_norm(a_scaled - b_scaled)
    invertible = bool(
        abs(np.linalg.det(a)) > SINGULAR_DET_TOL
        and abs(np.linalg.det(b)) > SINGULAR_DET_TOL
    )
    return HeraldedBound(value=float(value), k=float(k), invertible=invertible)


def uniform_depth_success(nu: float, d: int, n: int) -> float:
    """Closed-form heralding probability floor ``(1 - nu/2)**(2*d*n)``.

    This is the infinite-averaging success probability of the uniform-depth
    noise model with parameter variance ``nu``; the realized success
    probability of a finite averaging network sits at or above it.
    """
    if not (0.0 <= nu < 2.0):
        raise ValueError("nu must lie in [0, 2)")
    if d < 0 or n < 0:
        raise ValueError("d and n must be >= 0")
    return float((1.0 - nu / 2.0) ** (2 * d * n))
