"""Simulated projection measurements on dilated output vectors.

Each branch output is measured ``shots`` times in the computational basis of
the dilated space.  Counts are drawn in one multinomial call from numpy's
``PCG64`` bit generator, which is platform independent, so a given
``(vector, shots, seed)`` always yields the same counts.

Per-branch seeds are ``seed XOR h(i, k, step)`` where ``h`` chains the
splitmix64 finalizer over ``i + 1`` (0 when there is no ensemble index),
``k`` and the time-step index.  Seeds therefore do not depend on the order in
which branches are sampled.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional, Protocol

import numpy as np

from .errors import InvalidParameter, MissingBranch, NotNormalized
from .evolve import BranchOutput, Observable, diagonal_positions
from .linalg import as_vector

DEFAULT_SHOTS = 8192
PRNG_NAME = "numpy.random.PCG64"
_MASK64 = (1 << 64) - 1


def splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def branch_seed(seed: int, i: Optional[int], k: int, step: int = 0) -> int:
    h = splitmix64(0 if i is None else i + 1)
    h = splitmix64(h ^ k)
    h = splitmix64(h ^ step)
    return (seed & _MASK64) ^ h


class Frequencies(Protocol):
    def frequencies(self) -> np.ndarray: ...


@dataclass(frozen=True)
class ShotRecord:
    shots: int
    counts: np.ndarray
    seed: int

    def frequencies(self) -> np.ndarray:
        return self.counts / self.shots


@dataclass(frozen=True)
class ExactRecord:
    """Infinite-shot stand-in: frequencies are the exact outcome probabilities."""

    probs: np.ndarray

    def frequencies(self) -> np.ndarray:
        return self.probs


def sample_output(v, shots: int = DEFAULT_SHOTS, seed: int = 0) -> ShotRecord:
    """Measure ``v`` ``shots`` times; outcome ``j`` has probability ``|v_j|^2``."""
    v = as_vector(v)
    if shots < 1:
        raise InvalidParameter(f"shots must be positive, got {shots}")
    probs = np.abs(v) ** 2
    total = float(probs.sum())
    if abs(total - 1.0) > 1e-9:
        raise NotNormalized(f"output vector has squared norm {total:.12g}")
    rng = np.random.Generator(np.random.PCG64(seed & _MASK64))
    counts = rng.multinomial(int(shots), probs / total)
    counts.setflags(write=False)
    return ShotRecord(shots=int(shots), counts=counts, seed=int(seed) & _MASK64)


def sample_branches(
    branches: list[BranchOutput], shots: int = DEFAULT_SHOTS, seed: int = 0, step: int = 0
) -> dict[tuple[Optional[int], int], ShotRecord]:
    return {b.key: sample_output(b.vector, shots, branch_seed(seed, b.i, b.k, step)) for b in branches}


def exact_records(branches: list[BranchOutput]) -> dict[tuple[Optional[int], int], ExactRecord]:
    return {b.key: ExactRecord(b.probabilities()) for b in branches}


def _ordered(records: Mapping, weights: Mapping) -> list:
    missing = [key for key in weights if key not in records]
    if missing:
        raise MissingBranch(f"no measurement record for branches {missing}")
    return sorted(weights, key=lambda key: (-1 if key[0] is None else key[0], key[1]))


def estimate_populations(records: Mapping, weights: Mapping, base_dim: int) -> np.ndarray:
    """``sum_ik p_i counts_j / shots`` over the first ``base_dim`` outcomes."""
    pops = np.zeros(base_dim)
    for key in _ordered(records, weights):
        pops += weights[key] * records[key].frequencies()[:base_dim]
    return pops


def estimate_first_block_probability(record: Frequencies, base_dim: int) -> float:
    return float(np.sum(record.frequencies()[:base_dim]))


def estimate_expectation(records: Mapping, weights: Mapping, obs: Observable) -> float:
    """``<O>`` from the weighted first-block probabilities of the ``U_{L^dag} U_{M_k}`` outputs."""
    tilde_value = 0.0
    for key in _ordered(records, weights):
        tilde_value += weights[key] * estimate_first_block_probability(records[key], obs.dim)
    return obs.from_tilde_expectation(tilde_value)


def estimate_diagonal_vectorized(record: Frequencies, n: int, scale: float) -> np.ndarray:
    """Diagonal of ``rho_k`` as ``scale * sqrt(probability)``.

    The entries are amplitudes of a PSD matrix's diagonal, hence real and
    non-negative, so the square root of the measured probability fixes them.
    """
    return scale * np.sqrt(record.frequencies()[diagonal_positions(n)])


def estimate_populations_vectorized(records: Mapping, n: int, scale: float) -> np.ndarray:
    weights = {key: 1.0 for key in records}
    pops = np.zeros(n)
    for key in _ordered(records, weights):
        pops += estimate_diagonal_vectorized(records[key], n, scale)
    return pops


def estimate_expectation_vectorized(records: Mapping, obs: Observable, scale: float) -> float:
    weights = {key: 1.0 for key in records}
    tilde_value = 0.0
    for key in _ordered(records, weights):
        tilde_value += float(np.sum(estimate_diagonal_vectorized(records[key], obs.dim, scale)))
    return obs.from_tilde_expectation(tilde_value)


def branch_weights(branches: list[BranchOutput]) -> dict[tuple[Optional[int], int], float]:
    return {b.key: b.weight for b in branches}
