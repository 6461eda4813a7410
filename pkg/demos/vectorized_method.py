"""
Working with the flattened density matrix
=========================================

When the ensemble behind rho is unknown, vec(rho) / |rho|_HS is the input
state.  M rho M^dag becomes (I kron conj M)(M kron I) vec(rho), and both
factors are contractions, so each gets its own dilation.  The diagonal of
rho_k sits at positions j*n + j of the output.
"""

import numpy as np

from kraus_dilation import (
    DensityMatrix,
    amplitude_damping_kraus,
    lift_kraus,
    populations_vectorized,
    vectorize,
)

rho = DensityMatrix(np.array([[1, 1], [1, 3]]) / 4)
v, scale = vectorize(rho)
print("vec(rho)/|rho|_HS =", np.round(v.real, 4), " scale =", round(scale, 4))

m0, m1 = amplitude_damping_kraus(1.52e9, np.log(2) / 1.52e9)
left, right = lift_kraus(m1)
print("M1 kron I =\n", np.round(left.real, 4))
print("I kron conj(M1) =\n", np.round(right.real, 4))

ks = amplitude_damping_kraus(1.52e9, np.log(2) / 1.52e9)
print("populations at gamma*t = ln 2:", np.round(populations_vectorized(rho, ks), 6))
