"""Minimal Sz.-Nagy unitary dilations of contractions.

An ``N``-dilation of an ``n x n`` contraction ``A`` is a unitary ``U`` of size
``(N+1)n`` whose top-left block reproduces ``A^k`` for every power ``k <= N``
when the input is zero-padded and the output is truncated to the first ``n``
entries.  The block layout used here is::

    [ A    0 ... 0   D_{A^dag} ]
    [ D_A  0 ... 0   -A^dag    ]
    [ 0    I         0         ]
    [        ...               ]
    [ 0    ...   I   0         ]

with ``D_A = sqrt(I - A^dag A)`` the defect operator.  ``N = 1`` is the plain
2x2 block form; for ``N >= 2`` the identity blocks shift the defect
component one slot per application so that it only returns to the first
block after ``N + 1`` steps.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, InvalidParameter, NotContraction
from .linalg import as_matrix, as_vector, dagger, is_unitary, max_abs

CONTRACTION_TOL = 1e-8


def _defect_pair(a: np.ndarray, tol: float) -> tuple[np.ndarray, np.ndarray]:
    """``(D_A, D_{A^dag})`` from a single SVD ``A = W S V^dag``.

    ``D_A = V sqrt(1 - S^2) V^dag`` and ``D_{A^dag} = W sqrt(1 - S^2) W^dag`` are the
    principal square roots of ``I - A^dag A`` and ``I - A A^dag``.  Sharing the
    singular vectors keeps ``A^dag D_{A^dag} = D_A A^dag`` exact even when a
    singular value sits at 1, where separate eigendecompositions leave
    ``sqrt(eps)``-sized noise in the dilation.
    """
    w, s, vh = np.linalg.svd(a)
    if s[0] > 1.0 + tol:
        raise NotContraction(f"operator norm {s[0]:.12g} exceeds 1 + {tol:.1e}")
    c = np.sqrt(np.clip((1.0 - s) * (1.0 + s), 0.0, None))
    v = dagger(vh)
    d_a = (v * c) @ vh
    d_a_dag = (w * c) @ dagger(w)
    return 0.5 * (d_a + dagger(d_a)), 0.5 * (d_a_dag + dagger(d_a_dag))


def defect(a, tol: float = CONTRACTION_TOL) -> np.ndarray:
    """Defect operator ``sqrt(I - A^dag A)`` of a square contraction.

    Raises:
        NotContraction: if the operator norm exceeds ``1 + tol``.
    """
    a = as_matrix(a, square=True)
    return _defect_pair(a, tol)[0]


@dataclass(frozen=True)
class Dilation:
    base_dim: int
    order: int
    unitary: np.ndarray

    @property
    def dim(self) -> int:
        return self.unitary.shape[0]

    @property
    def contraction(self) -> np.ndarray:
        n = self.base_dim
        return self.unitary[:n, :n]

    def compress_power(self, k: int) -> np.ndarray:
        """``P_H U^k P_H`` as an ``n x n`` matrix."""
        n = self.base_dim
        return np.linalg.matrix_power(self.unitary, k)[:n, :n]

    def unitarity_residual(self) -> float:
        return max_abs(dagger(self.unitary) @ self.unitary - np.eye(self.dim))

    def power_residual(self) -> float:
        """Max over ``k <= order`` of ``max|A^k - P_H U^k P_H|``."""
        a = self.contraction
        worst = 0.0
        a_pow = np.eye(self.base_dim, dtype=np.complex128)
        u_pow = np.eye(self.dim, dtype=np.complex128)
        n = self.base_dim
        for _ in range(self.order):
            a_pow = a @ a_pow
            u_pow = self.unitary @ u_pow
            worst = max(worst, max_abs(a_pow - u_pow[:n, :n]))
        return worst

    def is_valid(self, tol: float = 1e-10, power_tol: float = 1e-9) -> bool:
        return is_unitary(self.unitary, tol) and self.power_residual() <= power_tol


def dilate(a, order: int = 1, tol: float = CONTRACTION_TOL) -> Dilation:
    """Build the ``order``-dilation of the contraction ``a``.

    ``D_{A^dag}`` is the root of ``I - A A^dag``, not a transpose of ``D_A``;
    the two differ whenever ``A`` is not normal.
    """
    if int(order) != order or order < 1:
        raise InvalidParameter(f"dilation order must be a positive integer, got {order}")
    order = int(order)
    a = as_matrix(a, square=True)
    n = a.shape[0]
    d_a, d_a_dag = _defect_pair(a, tol)

    size = (order + 1) * n
    u = np.zeros((size, size), dtype=np.complex128)
    last = order * n
    u[:n, :n] = a
    u[:n, last:] = d_a_dag
    u[n : 2 * n, :n] = d_a
    u[n : 2 * n, last:] = -dagger(a)
    for j in range(2, order + 1):
        u[j * n : (j + 1) * n, (j - 1) * n : j * n] = np.eye(n)
    u.setflags(write=False)
    return Dilation(base_dim=n, order=order, unitary=u)


def pad_input(v, order: int) -> np.ndarray:
    """Append ``order * len(v)`` zeros to ``v``."""
    v = as_vector(v)
    return np.concatenate([v, np.zeros(order * v.size, dtype=np.complex128)])


def project_h(v, n: int) -> np.ndarray:
    """First ``n`` entries of a dilated vector."""
    v = as_vector(v)
    if n < 1 or v.size % n:
        raise DimensionMismatch(f"vector length {v.size} is not a multiple of {n}")
    return v[:n].copy()


def block_embed(t, size: int) -> np.ndarray:
    """``block_diag(T, I)`` of total dimension ``size``."""
    t = as_matrix(t, square=True)
    m = t.shape[0]
    if size < m:
        raise DimensionMismatch(f"cannot embed a {m}x{m} block into dimension {size}")
    out = np.eye(size, dtype=np.complex128)
    out[:m, :m] = t
    return out
