"""Quantum channels in operator-sum (Kraus) form and the states they act on.

``apply_channel_oracle`` is the plain classical evaluation of
``sum_k M_k rho M_k^dag``; every dilation-based pipeline is checked against it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, InvalidParameter, NotHermitian, NotNormalized, NotPSD
from .linalg import as_matrix, as_vector, dagger, max_abs, operator_norm

STATE_TOL = 1e-9

SIGMA_PLUS = np.array([[0, 1], [0, 0]], dtype=np.complex128)


@dataclass(frozen=True)
class KrausSet:
    """Ordered list of same-size square Kraus operators.

    Construction only checks shapes, so an invalid set such as ``{I, I}`` can
    still be built and handed to :func:`validate_kraus` for a report.
    """

    operators: tuple[np.ndarray, ...]

    def __post_init__(self):
        if len(self.operators) == 0:
            raise DimensionMismatch("a Kraus set needs at least one operator")
        ops = tuple(as_matrix(m, square=True) for m in self.operators)
        n = ops[0].shape[0]
        for k, m in enumerate(ops):
            if m.shape != (n, n):
                raise DimensionMismatch(f"operator {k} has shape {m.shape}, expected {(n, n)}")
            m.setflags(write=False)
        object.__setattr__(self, "operators", ops)

    @property
    def dim(self) -> int:
        return self.operators[0].shape[0]

    def __len__(self) -> int:
        return len(self.operators)

    def __iter__(self):
        return iter(self.operators)

    def __getitem__(self, k):
        return self.operators[k]


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, unit-trace, positive semidefinite ``n x n`` matrix."""

    mat: np.ndarray
    tol: float = field(default=STATE_TOL, compare=False)

    def __post_init__(self):
        m = as_matrix(self.mat, square=True)
        if max_abs(m - dagger(m)) > self.tol:
            raise NotHermitian("density matrix is not Hermitian")
        if abs(np.trace(m) - 1.0) > self.tol:
            raise InvalidParameter(f"density matrix trace is {np.trace(m).real:.12g}, expected 1")
        if np.linalg.eigvalsh(0.5 * (m + dagger(m)))[0] < -self.tol:
            raise NotPSD("density matrix has a negative eigenvalue")
        m.setflags(write=False)
        object.__setattr__(self, "mat", m)

    @property
    def n(self) -> int:
        return self.mat.shape[0]

    def purity(self) -> float:
        return float(np.real(np.trace(self.mat @ self.mat)))


@dataclass(frozen=True)
class PureStateEnsemble:
    """Probability-weighted mixture of (not necessarily orthogonal) pure states."""

    members: tuple[tuple[float, np.ndarray], ...]
    tol: float = field(default=STATE_TOL, compare=False)

    def __post_init__(self):
        if len(self.members) == 0:
            raise InvalidParameter("ensemble has no members")
        cleaned = []
        for p, phi in self.members:
            p = float(p)
            phi = as_vector(phi)
            if p < -self.tol or p > 1 + self.tol:
                raise InvalidParameter(f"probability {p} outside [0, 1]")
            if abs(np.linalg.norm(phi) - 1.0) > self.tol:
                raise NotNormalized(f"state has norm {np.linalg.norm(phi):.12g}")
            phi.setflags(write=False)
            cleaned.append((p, phi))
        dims = {phi.size for _, phi in cleaned}
        if len(dims) != 1:
            raise DimensionMismatch(f"ensemble states have mixed dimensions {sorted(dims)}")
        total = sum(p for p, _ in cleaned)
        if abs(total - 1.0) > self.tol:
            raise InvalidParameter(f"ensemble probabilities sum to {total:.12g}, expected 1")
        object.__setattr__(self, "members", tuple(cleaned))

    @property
    def dim(self) -> int:
        return self.members[0][1].size

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)


@dataclass(frozen=True)
class KrausReport:
    passed: bool
    residual: float
    operator_norms: tuple[float, ...]


def validate_kraus(ks: KrausSet, tol: float = 1e-10) -> KrausReport:
    """Check the completeness relation ``sum_k M_k^dag M_k = I``.

    The report also carries the operator norm of every ``M_k``; for a set that
    passes, each of them is at most one.
    """
    total = sum(dagger(m) @ m for m in ks)
    residual = max_abs(total - np.eye(ks.dim))
    norms = tuple(operator_norm(m) for m in ks)
    return KrausReport(passed=residual <= tol, residual=residual, operator_norms=norms)


def amplitude_damping_kraus(gamma: float, t: float) -> KrausSet:
    """Kraus pair of the amplitude damping channel after time ``t``.

    Args:
        gamma: spontaneous emission rate in 1/s.
        t: elapsed time in seconds; ``math.inf`` gives the fully decayed channel.

    Returns:
        ``{diag(1, sqrt(e^-gt)), sqrt(1 - e^-gt) sigma_plus}``
    """
    if gamma < 0 or t < 0 or math.isnan(gamma) or math.isnan(t):
        raise InvalidParameter(f"gamma and t must be non-negative, got gamma={gamma}, t={t}")
    decay = 1.0 if gamma == 0 or t == 0 else math.exp(-gamma * t)
    m0 = np.diag([1.0, math.sqrt(decay)]).astype(np.complex128)
    m1 = math.sqrt(1.0 - decay) * SIGMA_PLUS
    return KrausSet((m0, m1))


def apply_channel_oracle(rho: DensityMatrix, ks: KrausSet) -> DensityMatrix:
    """``sum_k M_k rho M_k^dag`` evaluated directly."""
    if rho.n != ks.dim:
        raise DimensionMismatch(f"state dimension {rho.n} != channel dimension {ks.dim}")
    out = np.zeros_like(rho.mat)
    for m in ks:
        out += m @ rho.mat @ dagger(m)
    return DensityMatrix(0.5 * (out + dagger(out)))


def ensemble_to_density(e: PureStateEnsemble) -> DensityMatrix:
    n = e.dim
    rho = np.zeros((n, n), dtype=np.complex128)
    for p, phi in e:
        rho += p * np.outer(phi, phi.conj())
    return DensityMatrix(rho)


def basis_state(n: int, j: int) -> np.ndarray:
    v = np.zeros(n, dtype=np.complex128)
    v[j] = 1.0
    return v


def benchmark_ensemble() -> PureStateEnsemble:
    """The mixture ``1/2 (|1><1| + |+><+|)`` used by the amplitude damping benchmark."""
    plus = np.array([1.0, 1.0], dtype=np.complex128) / math.sqrt(2.0)
    return PureStateEnsemble(((0.5, basis_state(2, 1)), (0.5, plus)))
