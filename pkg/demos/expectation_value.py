"""
Expectation values from first-block probabilities
=================================================

O is not positive, so it is shifted and scaled into
O~ = (O + |O|_HS I) / (2 |O|_HS), a PSD contraction.  With O~ = L L^dag the
circuit applies U_{L^dag} after U_{M_k}, and the probability of landing in the
first block gives Tr(O~ rho), which maps back to <O>.
"""

import numpy as np

from kraus_dilation import (
    amplitude_damping_kraus,
    apply_channel_oracle,
    benchmark_ensemble,
    build_observable,
    ensemble_to_density,
    expectation,
)
from kraus_dilation.evolve import BENCHMARK_OBSERVABLE

obs = build_observable(BENCHMARK_OBSERVABLE)
print("|O|_HS =", round(obs.hs, 4))
print("O~ =\n", np.round(obs.tilde.real, 4))
print("L =\n", np.round(obs.L.real, 4))

ensemble = benchmark_ensemble()
rho = ensemble_to_density(ensemble)
for t_ps in (0, 250, 500, 750, 1000):
    ks = amplitude_damping_kraus(1.52e9, t_ps * 1e-12)
    exact = np.trace(obs.O @ apply_channel_oracle(rho, ks).mat).real
    print(f"t = {t_ps:4d} ps   dilation {expectation(ensemble, ks, obs):+.6f}   operator sum {exact:+.6f}")
