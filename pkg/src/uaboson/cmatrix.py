"""Dense complex linear algebra kernel.

All matrices are immutable-by-convention ``numpy.ndarray`` values of dtype
``complex128``.  Stochastic operations take an explicit ``numpy.random.Generator``;
nothing in this package touches global random state.

Matrix file format (used repo-wide): a JSON document

    {"rows": R, "cols": C, "data": [[re, im], ...]}

with ``data`` row-major of length ``R*C``.  Readers reject length mismatches.
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Sequence

import numpy as np

__all__ = [
    "as_matrix",
    "matmul",
    "dagger",
    "operator_norm",
    "eig_hermitian",
    "dft",
    "haar_random",
    "sub_matrix",
    "direct_sum",
    "is_unitary",
    "require_unitary",
    "load_matrix",
    "save_matrix",
    "matrix_to_json",
    "matrix_from_json",
]

#: unitarity tolerance used by validators unless the caller overrides it
UNITARY_ATOL = 1e-8


def as_matrix(a) -> np.ndarray:
    """Coerce to a finite complex128 2-D array."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got ndim={m.ndim}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite")
    return m


def matmul(a, b) -> np.ndarray:
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"dimension mismatch: {a.shape} @ {b.shape}")
    return a @ b


def dagger(a) -> np.ndarray:
    """Conjugate transpose."""
    return as_matrix(a).conj().T


def eig_hermitian(h) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix.

    Returns ``(eigenvalues, eigenvectors)`` with real eigenvalues in ascending
    order and eigenvectors as columns of a unitary matrix, so that
    ``h = W @ diag(lam) @ W.conj().T``.

    Raises ValueError unless ``max|h - h†| < 1e-10``.
    """
    h = as_matrix(h)
    if h.shape[0] != h.shape[1]:
        raise ValueError("eig_hermitian requires a square matrix")
    if np.max(np.abs(h - h.conj().T)) >= 1e-10:
        raise ValueError("matrix is not Hermitian to 1e-10")
    lam, w = np.linalg.eigh(h)
    return lam, w


def operator_norm(a) -> float:
    """Largest singular value, via the Hermitian spectrum of a†a."""
    a = as_matrix(a)
    if a.size == 0:
        return 0.0
    lam, _ = np.linalg.eigh(a.conj().T @ a)
    return float(math.sqrt(max(lam[-1], 0.0)))


def dft(n: int) -> np.ndarray:
    """Discrete Fourier transform unitary, entries exp(2πi·jk/n)/√n."""
    if n < 1:
        raise ValueError("dft requires n >= 1")
    j, k = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    return np.exp(2j * np.pi * j * k / n) / np.sqrt(n)


def haar_random(m: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed m×m unitary.

    QR of an i.i.d. standard-complex-Gaussian matrix, with the R diagonal
    rephased to positive real so the distribution is exactly Haar.
    """
    if m < 1:
        raise ValueError("haar_random requires m >= 1")
    z = (rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def sub_matrix(a, row_idx: Sequence[int], col_idx: Sequence[int]) -> np.ndarray:
    """Select rows/columns with repetition: result[p, q] = a[row_idx[p], col_idx[q]]."""
    a = as_matrix(a)
    rows = np.asarray(row_idx, dtype=int)
    cols = np.asarray(col_idx, dtype=int)
    if rows.size and (rows.min() < 0 or rows.max() >= a.shape[0]):
        raise IndexError("row index out of range")
    if cols.size and (cols.min() < 0 or cols.max() >= a.shape[1]):
        raise IndexError("column index out of range")
    return a[np.ix_(rows, cols)]


def direct_sum(blocks: Sequence[np.ndarray]) -> np.ndarray:
    """Block-diagonal matrix from square blocks."""
    mats = [as_matrix(b) for b in blocks]
    for b in mats:
        if b.shape[0] != b.shape[1]:
            raise ValueError("direct_sum blocks must be square")
    n = sum(b.shape[0] for b in mats)
    out = np.zeros((n, n), dtype=np.complex128)
    at = 0
    for b in mats:
        k = b.shape[0]
        out[at : at + k, at : at + k] = b
        at += k
    return out


def is_unitary(a, atol: float = UNITARY_ATOL) -> bool:
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        return False
    return operator_norm(a.conj().T @ a - np.eye(a.shape[0])) < atol


def require_unitary(a, atol: float = UNITARY_ATOL, what: str = "matrix") -> np.ndarray:
    a = as_matrix(a)
    if not is_unitary(a, atol):
        raise ValueError(f"{what} is not unitary to {atol:g}")
    return a


# ---------------------------------------------------------------------------
# JSON interchange


def matrix_to_json(a) -> dict:
    a = as_matrix(a)
    data = [[float(v.real), float(v.imag)] for v in a.ravel(order="C")]
    return {"rows": int(a.shape[0]), "cols": int(a.shape[1]), "data": data}


def matrix_from_json(doc: dict) -> np.ndarray:
    try:
        rows, cols, data = int(doc["rows"]), int(doc["cols"]), doc["data"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed matrix document: {exc}") from exc
    if len(data) != rows * cols:
        raise ValueError(
            f"matrix data length {len(data)} does not match rows*cols = {rows * cols}"
        )
    flat = np.array(
        [complex(re, im) for re, im in data], dtype=np.complex128
    )
    return as_matrix(flat.reshape(rows, cols))


def save_matrix(a, path: str | Path) -> None:
    Path(path).write_text(json.dumps(matrix_to_json(a)) + "\n")


def load_matrix(path: str | Path) -> np.ndarray:
    return matrix_from_json(json.loads(Path(path).read_text()))
