"""Two-level unitary decomposition and closed-form resource counts.

A two-level gate acts nontrivially on exactly two coordinates.  Any ``n x n``
unitary factors into at most ``n(n-1)/2`` of them by Givens-style elimination
of the sub-diagonal entries, column by column from the left and bottom-up
inside each column.  The number of such gates is the complexity measure used
for comparing the dilation pipelines with each other and with a Stinespring
dilation of the whole channel.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DimensionMismatch, InvalidParameter, NotUnitary
from .linalg import as_matrix, dagger, is_unitary, max_abs


@dataclass(frozen=True)
class TwoLevelGate:
    i: int
    j: int
    block: np.ndarray

    def __post_init__(self):
        if not 0 <= self.i < self.j:
            raise InvalidParameter(f"gate coordinates must satisfy 0 <= i < j, got ({self.i}, {self.j})")
        block = as_matrix(self.block)
        if block.shape != (2, 2) or not is_unitary(block, 1e-10):
            raise NotUnitary("two-level gate block must be a 2x2 unitary")
        block.setflags(write=False)
        object.__setattr__(self, "block", block)

    def embed(self, n: int) -> np.ndarray:
        if self.j >= n:
            raise DimensionMismatch(f"gate on ({self.i}, {self.j}) does not fit dimension {n}")
        g = np.eye(n, dtype=np.complex128)
        idx = np.ix_([self.i, self.j], [self.i, self.j])
        g[idx] = self.block
        return g

    def to_dict(self) -> dict:
        return {
            "i": self.i,
            "j": self.j,
            "block": [[[float(z.real), float(z.imag)] for z in row] for row in self.block],
        }


def _apply_rows(w: np.ndarray, i: int, j: int, block: np.ndarray) -> None:
    rows = w[[i, j], :]
    w[[i, j], :] = block @ rows


def two_level_decompose(u, tol: float = 1e-10) -> list[TwoLevelGate]:
    """Factor a unitary into two-level gates.

    The returned gates satisfy ``U = G[0] @ G[1] @ ... @ G[-1]`` once each is
    embedded at its coordinates.  Identity gates are never emitted, so the
    identity decomposes to an empty list and a 2x2 unitary to one gate.
    """
    u = as_matrix(u, square=True)
    if not is_unitary(u, tol):
        raise NotUnitary("two_level_decompose needs a unitary input")
    n = u.shape[0]
    if n == 1:
        if abs(u[0, 0] - 1) > tol:
            raise DimensionMismatch("a 1x1 phase cannot be written with two-level gates")
        return []

    w = u.copy()
    # reducers: (i, j, block) with reducer_K ... reducer_1 U = I
    reducers: list[tuple[int, int, np.ndarray]] = []
    for col in range(n - 2):
        used = False
        for row in range(n - 1, col, -1):
            b = w[row, col]
            if abs(b) <= tol:
                continue
            a = w[col, col]
            r = np.hypot(abs(a), abs(b))
            g = np.array([[a.conjugate(), b.conjugate()], [-b, a]]) / r
            _apply_rows(w, col, row, g)
            w[row, col] = 0.0
            reducers.append((col, row, g))
            used = True
        if not used and abs(w[col, col] - 1) > tol:
            # lone diagonal phase: cancel it against the last coordinate
            phase = w[col, col]
            g = np.diag([phase.conjugate(), phase])
            _apply_rows(w, col, n - 1, g)
            reducers.append((col, n - 1, g))

    tail = w[n - 2 :, n - 2 :]
    if max_abs(tail - np.eye(2)) > tol:
        reducers.append((n - 2, n - 1, dagger(tail)))

    return [TwoLevelGate(i, j, dagger(g)) for i, j, g in reducers]


def reconstruct(gates: list[TwoLevelGate], n: int) -> np.ndarray:
    out = np.eye(n, dtype=np.complex128)
    for g in gates:
        out = out @ g.embed(n)
    return out


def count_lower_nonzeros(m, tol: float = 1e-10) -> int:
    """Structural two-level gate count of a square matrix.

    Counts strictly-lower-triangular entries with ``|m_ij| > tol``.  A column
    with nothing below the diagonal but a unit-modulus diagonal entry other
    than 1 still needs one phase gate, so it adds one; the last two diagonal
    phases share a single gate.  For dense matrices this is ``n(n-1)/2``.
    """
    m = as_matrix(m, square=True)
    n = m.shape[0]
    mask = np.abs(np.tril(m, -1)) > tol
    count = int(mask.sum())
    empty_cols = ~mask.any(axis=0)

    def stray_phase(j: int) -> bool:
        d = m[j, j]
        return abs(abs(d) - 1) <= tol and abs(d - 1) > tol

    for j in range(n - 2):
        if empty_cols[j] and stray_phase(j):
            count += 1
    if n >= 2 and empty_cols[n - 2] and (stray_phase(n - 2) or stray_phase(n - 1)):
        count += 1
    return count


@dataclass(frozen=True)
class StageCost:
    """Cost of one pipeline stage.

    ``quantum_gates`` and ``classical_per_branch`` are per branch (per
    ``(i, k)`` for the ensemble method, per ``k`` for the vectorized one);
    the overheads are paid once regardless of the branch count.
    """

    method: str
    stage: str
    quantum_gates: Fraction
    classical_per_branch: Fraction
    quantum_overhead: Fraction = Fraction(0)
    classical_overhead: Fraction = Fraction(0)


@dataclass(frozen=True)
class ComplexityReport:
    n: int
    stages: tuple[StageCost, ...]
    stinespring_gates: Fraction

    def stage(self, method: str, stage: str) -> StageCost:
        for s in self.stages:
            if s.method == method and s.stage == stage:
                return s
        raise KeyError((method, stage))

    def quantum_counts(self, method: str) -> dict[str, Fraction]:
        return {s.stage: s.quantum_gates for s in self.stages if s.method == method}


def complexity_report(n: int) -> ComplexityReport:
    """Evaluate the closed-form gate and arithmetic counts at dimension ``n``."""
    if int(n) != n or n < 2:
        raise InvalidParameter(f"complexity formulas need n >= 2, got {n}")
    n = Fraction(int(n))
    cholesky_and_norm = n**3 / 3 + 2 * n**2 - 1
    per_k_classical = 4 * n**3 - 2 * n**2
    stages = (
        StageCost("ensemble", "basic", 2 * n**2 - n, 2 * n**2 - n),
        StageCost("ensemble", "basis-transform", (5 * n**2 - 3 * n) / 2, 4 * n**2 - 2 * n),
        StageCost(
            "ensemble",
            "observable",
            (5 * n**2 + 3 * n) / 2,
            3 * n**2 - n,
            quantum_overhead=cholesky_and_norm,
            classical_overhead=cholesky_and_norm,
        ),
        StageCost("vectorized", "basic", 3 * n**3 + n**2, per_k_classical),
        StageCost(
            "vectorized",
            "basis-transform",
            4 * n**3,
            per_k_classical,
            classical_overhead=4 * n**3 - 2 * n**2,
        ),
        StageCost(
            "vectorized",
            "observable",
            5 * n**3 + 11 * n**2,
            per_k_classical,
            quantum_overhead=cholesky_and_norm,
            classical_overhead=2 * n**3 - n**2,
        ),
    )
    return ComplexityReport(n=int(n), stages=stages, stinespring_gates=(n**6 - n**3) / 2)
