"""
Amplitude damping through dilated Kraus operators
=================================================

A qubit starts in the mixture {(1/2, |1>), (1/2, |+>)} and decays at
gamma = 1.52e9 per second.  Each ensemble member is pushed through the
1-dilation of each Kraus operator and the first-block probabilities are
summed with the ensemble weights.
"""

import math

import numpy as np

from kraus_dilation import amplitude_damping_kraus, benchmark_ensemble, populations, populations_in_basis
from kraus_dilation.evolve import HADAMARD

gamma = 1.52e9
ensemble = benchmark_ensemble()

# populations in the computational basis next to the closed form
print(" t (ps)   ground   excited   closed-form excited")
for t_ps in range(0, 1001, 100):
    t = t_ps * 1e-12
    ground, excited = populations(ensemble, amplitude_damping_kraus(gamma, t))
    print(f"{t_ps:7d}  {ground:.6f}  {excited:.6f}  {0.75 * math.exp(-gamma * t):.6f}")

# the same run read out in the +/- basis: one extra unitary before measuring
t = math.log(2) / gamma
plus, minus = populations_in_basis(ensemble, amplitude_damping_kraus(gamma, t), HADAMARD)
print(f"\n+/- populations at gamma*t = ln 2: {plus:.6f}, {minus:.6f}")
print(f"closed form: {0.5 + 0.25 * math.sqrt(0.5):.6f}, {0.5 - 0.25 * math.sqrt(0.5):.6f}")
np.testing.assert_allclose([plus, minus], [0.5 + 0.25 * math.sqrt(0.5), 0.5 - 0.25 * math.sqrt(0.5)])
