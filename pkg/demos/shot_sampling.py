"""
Finite-shot estimates
=====================

Each branch output is measured a finite number of times.  Estimates scatter
around the exact values with the binomial spread and settle as shots grow.
"""

import math

import numpy as np

from kraus_dilation import amplitude_damping_kraus, benchmark_ensemble, populations
from kraus_dilation.evolve import ensemble_branches
from kraus_dilation.sampler import branch_weights, estimate_populations, sample_branches

ensemble = benchmark_ensemble()
ks = amplitude_damping_kraus(1.52e9, math.log(2) / 1.52e9)
branches = ensemble_branches(ensemble, ks)
weights = branch_weights(branches)
exact = populations(ensemble, ks)

for shots in (128, 1024, 8192, 65536, 10**6):
    est = estimate_populations(sample_branches(branches, shots, seed=3), weights, 2)
    print(f"{shots:8d} shots  {np.round(est, 5)}  error {np.max(np.abs(est - exact)):.2e}")

# same seed, same counts
a = sample_branches(branches, 8192, seed=3)
b = sample_branches(branches, 8192, seed=3)
print("\nreproducible:", all(np.array_equal(a[key].counts, b[key].counts) for key in a))
