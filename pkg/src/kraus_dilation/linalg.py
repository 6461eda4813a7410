"""Dense complex linear algebra used throughout the package.

Matrices and vectors are plain ``numpy.ndarray`` objects of dtype
``complex128``.  The helpers here add the validation and the positive
*semi*definite handling that the dilation and observable pipelines need on
top of what numpy ships.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionMismatch, NotHermitian, NotPSD

DEFAULT_TOL = 1e-10
CHOLESKY_PIVOT_TOL = 1e-12


def as_matrix(m, *, square: bool = False) -> np.ndarray:
    """Coerce ``m`` to a finite 2-D complex128 array."""
    arr = np.array(m, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] == 0 or arr.shape[1] == 0:
        raise DimensionMismatch(f"expected a non-empty 2-D matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix contains NaN or Inf entries")
    if square and arr.shape[0] != arr.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {arr.shape}")
    return arr


def as_vector(v) -> np.ndarray:
    arr = np.array(v, dtype=np.complex128)
    if arr.ndim != 1 or arr.size == 0:
        raise DimensionMismatch(f"expected a non-empty 1-D vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("vector contains NaN or Inf entries")
    return arr


def dagger(m: np.ndarray) -> np.ndarray:
    return m.conj().T


def max_abs(m: np.ndarray) -> float:
    """Element-wise max norm; 0 for empty input."""
    return float(np.max(np.abs(m))) if np.size(m) else 0.0


def hs_norm(m) -> float:
    """Hilbert-Schmidt (Frobenius) norm ``sqrt(sum |m_ij|^2)``."""
    return float(np.linalg.norm(np.asarray(m, dtype=np.complex128), "fro"))


def operator_norm(m) -> float:
    """Largest singular value of ``m``."""
    return float(np.linalg.norm(np.asarray(m, dtype=np.complex128), 2))


def is_hermitian(h, tol: float = DEFAULT_TOL) -> bool:
    h = np.asarray(h, dtype=np.complex128)
    return h.ndim == 2 and h.shape[0] == h.shape[1] and max_abs(h - dagger(h)) <= tol


def is_unitary(u, tol: float = DEFAULT_TOL) -> bool:
    """True iff ``max|U^dag U - I| <= tol``."""
    u = np.asarray(u, dtype=np.complex128)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        return False
    return max_abs(dagger(u) @ u - np.eye(u.shape[0])) <= tol


def is_psd(h, tol: float = DEFAULT_TOL) -> bool:
    h = np.asarray(h, dtype=np.complex128)
    if not is_hermitian(h, tol):
        return False
    return float(np.linalg.eigvalsh(0.5 * (h + dagger(h)))[0]) >= -tol


def principal_sqrt_psd(h, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Hermitian PSD square root of a Hermitian PSD matrix.

    Eigenvalues in ``[-tol, 0)`` are clamped to zero, which absorbs the
    rounding noise that shows up in ``I - A^dag A`` for contractions with
    norm close to one.

    Raises:
        NotHermitian: if ``max|H - H^dag| > tol``.
        NotPSD: if an eigenvalue is below ``-tol``.
    """
    h = as_matrix(h, square=True)
    if max_abs(h - dagger(h)) > tol:
        raise NotHermitian("matrix is not Hermitian within tolerance")
    evals, evecs = np.linalg.eigh(0.5 * (h + dagger(h)))
    if evals[0] < -tol:
        raise NotPSD(f"smallest eigenvalue {evals[0]:.3e} is below -{tol:.1e}")
    root = np.sqrt(np.clip(evals, 0.0, None))
    s = (evecs * root) @ dagger(evecs)
    return 0.5 * (s + dagger(s))


def cholesky_psd(h, tol: float = CHOLESKY_PIVOT_TOL) -> np.ndarray:
    """Lower-triangular ``L`` with ``L L^dag = H`` for Hermitian PSD ``H``.

    Unlike ``numpy.linalg.cholesky`` this accepts singular input: a pivot
    inside ``[-tol, tol]`` yields a zero column.  The diagonal of ``L`` is
    real and non-negative.
    """
    h = as_matrix(h, square=True)
    n = h.shape[0]
    low = np.zeros((n, n), dtype=np.complex128)
    for j in range(n):
        pivot = h[j, j].real - float(np.sum(np.abs(low[j, :j]) ** 2))
        if pivot < -tol:
            raise NotPSD(f"Cholesky pivot {pivot:.3e} at column {j} is negative")
        if pivot <= tol:
            continue
        d = np.sqrt(pivot)
        low[j, j] = d
        for i in range(j + 1, n):
            low[i, j] = (h[i, j] - np.dot(low[i, :j], low[j, :j].conj())) / d
    return low


def kron(a, b) -> np.ndarray:
    return np.kron(np.asarray(a, dtype=np.complex128), np.asarray(b, dtype=np.complex128))
