"""End-to-end evolution through dilated Kraus operators.

Two pipelines are provided.

*Ensemble method*: the initial state is a known mixture ``sum_i p_i |phi_i><phi_i|``.
Every pair (state ``i``, Kraus operator ``k``) is a branch: ``phi_i`` is zero
padded, pushed through the unitary dilation of ``M_k`` and the first ``n``
output amplitudes are ``M_k phi_i``.  Populations are the weighted squared
magnitudes of those amplitudes.

*Vectorized method*: the density matrix itself is flattened row-major and
normalized, and ``M_k rho M_k^dag`` becomes ``(I (x) conj M_k)(M_k (x) I) vec(rho)``.
Both Kronecker lifts are dilated; the diagonal of ``rho_k(t)`` sits at flat
positions ``j*n + j`` of the output.

Expectation values go through ``O~ = (O + ||O||_HS I) / (2 ||O||_HS)``, which is a
PSD contraction, and its Cholesky factor ``O~ = L L^dag``; ``L^dag`` is dilated
alongside ``M_k``.  Branches are always reduced in ascending ``(i, k)`` order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .channel import DensityMatrix, KrausSet, PureStateEnsemble
from .dilation import block_embed, dilate, pad_input
from .errors import DimensionMismatch, InternalConsistency, NotHermitian, NotUnitary, ZeroObservable
from .linalg import (
    as_matrix,
    as_vector,
    cholesky_psd,
    dagger,
    hs_norm,
    is_unitary,
    kron,
    max_abs,
)

IMAG_TOL = 1e-8


@dataclass(frozen=True)
class BranchOutput:
    """Full dilated output vector of one branch.

    ``i`` is the ensemble index (``None`` for the vectorized method), ``k`` the
    Kraus index.  ``scale`` is the norm divided out of the input, 1 for the
    ensemble method and ``||rho||_HS`` for the vectorized one.
    """

    i: Optional[int]
    k: int
    weight: float
    vector: np.ndarray
    base_dim: int
    scale: float = 1.0

    @property
    def key(self) -> tuple[Optional[int], int]:
        return (self.i, self.k)

    @property
    def first_block(self) -> np.ndarray:
        return self.vector[: self.base_dim]

    def probabilities(self) -> np.ndarray:
        return np.abs(self.vector) ** 2


@dataclass(frozen=True)
class Observable:
    O: np.ndarray
    hs: float
    tilde: np.ndarray
    L: np.ndarray

    @property
    def dim(self) -> int:
        return self.O.shape[0]

    def from_tilde_expectation(self, tilde_value: float) -> float:
        """Map ``<O~>`` back to ``<O> = 2 ||O||_HS <O~> - ||O||_HS``."""
        return 2.0 * self.hs * tilde_value - self.hs


def build_observable(o, tol: float = 1e-10) -> Observable:
    o = as_matrix(o, square=True)
    if max_abs(o - dagger(o)) > tol:
        raise NotHermitian("observable must be Hermitian")
    o = 0.5 * (o + dagger(o))
    hs = hs_norm(o)
    if hs == 0.0:
        raise ZeroObservable("the zero observable cannot be rescaled")
    n = o.shape[0]
    tilde = (o + hs * np.eye(n)) / (2.0 * hs)
    low = cholesky_psd(tilde)
    for arr in (o, tilde, low):
        arr.setflags(write=False)
    return Observable(O=o, hs=hs, tilde=tilde, L=low)


def _check_dims(n_state: int, ks: KrausSet) -> None:
    if n_state != ks.dim:
        raise DimensionMismatch(f"state dimension {n_state} != channel dimension {ks.dim}")


def evolve_branch(m, v, order: int = 1, *, i: Optional[int] = None, k: int = 0, weight: float = 1.0) -> BranchOutput:
    """Apply the ``order``-dilation of ``m`` to the zero-padded unit vector ``v``."""
    m = as_matrix(m, square=True)
    v = as_vector(v)
    if v.size != m.shape[0]:
        raise DimensionMismatch(f"vector of length {v.size} for a {m.shape[0]}x{m.shape[0]} operator")
    out = dilate(m, order).unitary @ pad_input(v, order)
    return BranchOutput(i=i, k=k, weight=weight, vector=out, base_dim=m.shape[0])


def ensemble_branches(e: PureStateEnsemble, ks: KrausSet, basis=None) -> list[BranchOutput]:
    """1-dilation outputs for every ``(i, k)``, optionally rotated by ``block_diag(T, I)``."""
    _check_dims(e.dim, ks)
    rotation = None
    if basis is not None:
        basis = as_matrix(basis, square=True)
        if basis.shape[0] != e.dim:
            raise DimensionMismatch("basis transformation has the wrong dimension")
        if not is_unitary(basis, 1e-10):
            raise NotUnitary("basis transformation must be unitary")
        rotation = block_embed(basis, 2 * e.dim)
    unitaries = [dilate(m, 1).unitary for m in ks]
    branches = []
    for i, (p, phi) in enumerate(e):
        padded = pad_input(phi, 1)
        for k, u in enumerate(unitaries):
            out = u @ padded
            if rotation is not None:
                out = rotation @ out
            branches.append(BranchOutput(i=i, k=k, weight=p, vector=out, base_dim=e.dim))
    return branches


def populations(e: PureStateEnsemble, ks: KrausSet) -> np.ndarray:
    """``diag(rho(t))`` from squared first-block amplitudes, summed over branches."""
    return _sum_populations(ensemble_branches(e, ks), e.dim)


def populations_in_basis(e: PureStateEnsemble, ks: KrausSet, basis) -> np.ndarray:
    """``diag(T rho(t) T^dag)`` for a unitary basis change ``T``."""
    return _sum_populations(ensemble_branches(e, ks, basis=basis), e.dim)


def _sum_populations(branches: list[BranchOutput], n: int) -> np.ndarray:
    pops = np.zeros(n)
    for b in branches:
        pops += b.weight * np.abs(b.first_block) ** 2
    return pops


def expectation_branches(e: PureStateEnsemble, ks: KrausSet, obs: Observable) -> list[BranchOutput]:
    """Outputs of ``U_{L^dag} U_{M_k}`` (both 2-dilations) on every padded ``phi_i``."""
    _check_dims(e.dim, ks)
    if obs.dim != e.dim:
        raise DimensionMismatch("observable dimension does not match the state")
    u_l = dilate(dagger(obs.L), 2).unitary
    unitaries = [u_l @ dilate(m, 2).unitary for m in ks]
    branches = []
    for i, (p, phi) in enumerate(e):
        padded = pad_input(phi, 2)
        for k, u in enumerate(unitaries):
            branches.append(BranchOutput(i=i, k=k, weight=p, vector=u @ padded, base_dim=e.dim))
    return branches


def expectation(e: PureStateEnsemble, ks: KrausSet, obs: Observable) -> float:
    """``Tr(O rho(t))`` from first-block projection probabilities."""
    tilde_value = 0.0
    for b in expectation_branches(e, ks, obs):
        tilde_value += b.weight * float(np.sum(np.abs(b.first_block) ** 2))
    return obs.from_tilde_expectation(tilde_value)


# -- vectorized density-matrix method ---------------------------------------


def vectorize(rho: DensityMatrix) -> tuple[np.ndarray, float]:
    """Row-major flattening of ``rho`` normalized to unit length, plus that norm."""
    flat = np.asarray(rho.mat, dtype=np.complex128).reshape(-1)
    scale = float(np.linalg.norm(flat))
    return flat / scale, scale


def lift_kraus(m) -> tuple[np.ndarray, np.ndarray]:
    """Left and right Kronecker lifts ``(M (x) I, I (x) conj(M))``."""
    m = as_matrix(m, square=True)
    eye = np.eye(m.shape[0])
    return kron(m, eye), kron(eye, m.conj())


def diagonal_positions(n: int) -> np.ndarray:
    """Flat indices of the diagonal of an ``n x n`` matrix in row-major order."""
    return np.arange(n) * (n + 1)


def vectorized_branches(rho: DensityMatrix, ks: KrausSet, basis=None) -> list[BranchOutput]:
    """``U_N U_M`` (2-dilations) on the padded unit ``vec(rho)`` for every ``k``.

    With ``basis`` set, ``block_diag(I (x) conj T, I) block_diag(T (x) I, I)`` is applied
    to each output so the readout gives ``diag(T rho_k T^dag)``.
    """
    _check_dims(rho.n, ks)
    n = rho.n
    v, scale = vectorize(rho)
    padded = pad_input(v, 2)
    rotation = None
    if basis is not None:
        basis = as_matrix(basis, square=True)
        if basis.shape[0] != n:
            raise DimensionMismatch("basis transformation has the wrong dimension")
        if not is_unitary(basis, 1e-10):
            raise NotUnitary("basis transformation must be unitary")
        left, right = lift_kraus(basis)
        size = 3 * n * n
        rotation = block_embed(right, size) @ block_embed(left, size)
    branches = []
    for k, m in enumerate(ks):
        left, right = lift_kraus(m)
        out = dilate(right, 2).unitary @ (dilate(left, 2).unitary @ padded)
        if rotation is not None:
            out = rotation @ out
        branches.append(BranchOutput(i=None, k=k, weight=1.0, vector=out, base_dim=n * n, scale=scale))
    return branches


def _diagonal_readout(b: BranchOutput, n: int) -> np.ndarray:
    entries = b.scale * b.vector[diagonal_positions(n)]
    if max_abs(entries.imag) > IMAG_TOL:
        raise InternalConsistency(f"recovered diagonal of branch k={b.k} is not real")
    return entries.real


def populations_vectorized(rho: DensityMatrix, ks: KrausSet, basis=None) -> np.ndarray:
    """Populations read from the amplitudes at the flattened diagonal positions."""
    n = rho.n
    pops = np.zeros(n)
    for b in vectorized_branches(rho, ks, basis=basis):
        pops += _diagonal_readout(b, n)
    return pops


def vectorized_expectation_branches(rho: DensityMatrix, ks: KrausSet, obs: Observable) -> list[BranchOutput]:
    """Four 4-dilations per ``k``: ``M_k (x) I``, ``I (x) conj M_k``, ``L^dag (x) I``, ``I (x) conj L^dag``."""
    _check_dims(rho.n, ks)
    if obs.dim != rho.n:
        raise DimensionMismatch("observable dimension does not match the state")
    n = rho.n
    v, scale = vectorize(rho)
    padded = pad_input(v, 4)
    l_left, l_right = lift_kraus(dagger(obs.L))
    u_obs = dilate(l_right, 4).unitary @ dilate(l_left, 4).unitary
    branches = []
    for k, m in enumerate(ks):
        left, right = lift_kraus(m)
        out = dilate(left, 4).unitary @ padded
        out = dilate(right, 4).unitary @ out
        out = u_obs @ out
        branches.append(BranchOutput(i=None, k=k, weight=1.0, vector=out, base_dim=n * n, scale=scale))
    return branches


def expectation_vectorized(rho: DensityMatrix, ks: KrausSet, obs: Observable) -> float:
    """``Tr(O rho(t))`` from the traces of ``L^dag rho_k(t) L`` read off the diagonal."""
    n = rho.n
    tilde_value = 0.0
    for b in vectorized_expectation_branches(rho, ks, obs):
        tilde_value += float(np.sum(_diagonal_readout(b, n)))
    return obs.from_tilde_expectation(tilde_value)


# -- benchmark fixtures ----------------------------------------------------

BENCHMARK_GAMMA = 1.52e9
BENCHMARK_OBSERVABLE = np.array([[-2.0, 0.5], [0.5, 1.0]], dtype=np.complex128)
HADAMARD = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=np.complex128) / np.sqrt(2.0)
