"""Multi-photon Fock space: occupation bases, permanents, transition amplitudes.

A Fock state is a tuple of per-mode photon counts ``(x_1, ..., x_m)``.  Bases
are ordered lexicographically *descending* on occupations; every module in
this package relies on that single ordering, so distributions over the same
``(m, n)`` pair are always index-aligned.

The single-photon transform ``a`` lifts to the n-photon transform
``phi_matrix(a, n)`` acting on the C(m+n-1, n)-dimensional basis.  Entries
are permanents of row/column-repeated submatrices divided by
``sqrt(prod(x!) * prod(y!))``, which makes the lift multiplicative:
``phi(a @ b) = phi(a) @ phi(b)`` and ``phi(c*a) = c**n * phi(a)``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .cmatrix import as_matrix

__all__ = [
    "FockBasis",
    "enumerate_basis",
    "permanent_naive",
    "permanent_ryser",
    "build_submatrix",
    "transition_amplitude",
    "phi_matrix",
    "format_state",
]

_FACTORIAL = [float(math.factorial(k)) for k in range(21)]


def _compositions_desc(m: int, n: int):
    """All ways to put n photons in m modes, lexicographically descending."""
    if m == 1:
        yield (n,)
        return
    for first in range(n, -1, -1):
        for rest in _compositions_desc(m - 1, n - first):
            yield (first,) + rest


@dataclass(frozen=True)
class FockBasis:
    """All occupation vectors of n photons over m modes, canonically ordered."""

    m: int
    n: int
    states: tuple[tuple[int, ...], ...]
    _index: dict = field(repr=False, hash=False, compare=False, default_factory=dict)

    def __post_init__(self):
        object.__setattr__(
            self, "_index", {s: i for i, s in enumerate(self.states)}
        )

    def __len__(self) -> int:
        return len(self.states)

    def index_of(self, state: tuple[int, ...]) -> int:
        try:
            return self._index[tuple(state)]
        except KeyError:
            raise KeyError(f"state {state} not in basis (m={self.m}, n={self.n})")


def enumerate_basis(m: int, n: int) -> FockBasis:
    """Basis of all C(m+n-1, n) occupation vectors with sum n."""
    if m < 1:
        raise ValueError("enumerate_basis requires m >= 1")
    if n < 0:
        raise ValueError("enumerate_basis requires n >= 0")
    states = tuple(_compositions_desc(m, n))
    assert len(states) == math.comb(m + n - 1, n)
    return FockBasis(m=m, n=n, states=states)


def permanent_naive(a) -> complex:
    """Permanent by explicit sum over permutations.  Oracle-grade, O(n!·n)."""
    a = as_matrix(a)
    n = a.shape[0]
    if a.shape[0] != a.shape[1]:
        raise ValueError("permanent requires a square matrix")
    if n == 0:
        return 1.0 + 0.0j
    if n > 9:
        raise ValueError("permanent_naive limited to n <= 9")
    total = 0.0 + 0.0j
    rows = range(n)
    for perm in itertools.permutations(range(n)):
        p = 1.0 + 0.0j
        for i in rows:
            p *= a[i, perm[i]]
        total += p
    return complex(total)


def permanent_ryser(a) -> complex:
    """Permanent via Ryser's inclusion-exclusion formula.

    Subsets are visited in Gray-code order so each step updates the running
    row sums with a single column, giving O(n·2^n) overall.
    """
    a = as_matrix(a)
    n = a.shape[0]
    if a.shape[0] != a.shape[1]:
        raise ValueError("permanent requires a square matrix")
    if n == 0:
        return 1.0 + 0.0j
    if n == 1:
        return complex(a[0, 0])
    if n == 2:
        return complex(a[0, 0] * a[1, 1] + a[0, 1] * a[1, 0])
    cols = a.T.copy()
    row_sums = np.zeros(n, dtype=np.complex128)
    total = 0.0 + 0.0j
    prev_gray = 0
    sign_n = 1 if n % 2 == 0 else -1
    popcount = 0
    for k in range(1, 1 << n):
        gray = k ^ (k >> 1)
        diff = gray ^ prev_gray
        j = diff.bit_length() - 1
        if gray & diff:
            row_sums += cols[j]
            popcount += 1
        else:
            row_sums -= cols[j]
            popcount -= 1
        prev_gray = gray
        term = row_sums.prod()
        total += term if popcount % 2 == 0 else -term
    return complex(sign_n * total)


def build_submatrix(a, input_state, output_state) -> np.ndarray:
    """n×n matrix repeating column j of ``a`` input_j times and row i output_i times."""
    a = as_matrix(a)
    inp = tuple(int(v) for v in input_state)
    out = tuple(int(v) for v in output_state)
    m = a.shape[0]
    if a.shape[1] != m or len(inp) != m or len(out) != m:
        raise ValueError("matrix must be m×m matching the length of both states")
    if sum(inp) != sum(out):
        raise ValueError(f"photon count mismatch: input {sum(inp)} vs output {sum(out)}")
    rows = np.repeat(np.arange(m), out)
    cols = np.repeat(np.arange(m), inp)
    return a[np.ix_(rows, cols)]


def transition_amplitude(a, input_state, output_state) -> complex:
    """Amplitude ``Perm(a restricted) / sqrt(prod(in!) * prod(out!))``."""
    sub = build_submatrix(a, input_state, output_state)
    norm = 1.0
    for v in input_state:
        norm *= _FACTORIAL[v]
    for v in output_state:
        norm *= _FACTORIAL[v]
    return permanent_ryser(sub) / math.sqrt(norm)


def phi_matrix(a, n: int) -> np.ndarray:
    """Lift of the m×m transform ``a`` to the n-photon basis.

    Entry ``[y, x]`` is the transition amplitude from basis state x to y; for
    unitary ``a`` the lift is unitary.
    """
    a = as_matrix(a)
    basis = enumerate_basis(a.shape[0], n)
    dim = len(basis)
    out = np.empty((dim, dim), dtype=np.complex128)
    for x, state_in in enumerate(basis.states):
        for y, state_out in enumerate(basis.states):
            out[y, x] = transition_amplitude(a, state_in, state_out)
    return out


def format_state(state) -> str:
    """Render an occupation vector as ``(x1,x2,...,xm)``."""
    return "(" + ",".join(str(int(v)) for v in state) + ")"
