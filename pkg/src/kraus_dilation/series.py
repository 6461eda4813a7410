"""Time series of populations and expectation values over a uniform grid."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Union

import numpy as np

from . import evolve, sampler
from .channel import DensityMatrix, KrausSet, PureStateEnsemble, amplitude_damping_kraus, ensemble_to_density
from .errors import InvalidParameter

ChannelAt = Callable[[float], KrausSet]
State = Union[PureStateEnsemble, DensityMatrix]


def time_grid(t_start: float, t_end: float, dt: float) -> np.ndarray:
    """``t_start, t_start + dt, ...`` up to and including ``t_end`` (seconds)."""
    if not dt > 0:
        raise InvalidParameter(f"dt must be positive, got {dt}")
    if t_end < t_start:
        raise InvalidParameter("t_end must not precede t_start")
    steps = int(np.floor((t_end - t_start) / dt + 1e-9)) + 1
    return t_start + dt * np.arange(steps)


def amplitude_damping_at(gamma: float) -> ChannelAt:
    return lambda t: amplitude_damping_kraus(gamma, t)


def constant_channel(ks: KrausSet) -> ChannelAt:
    return lambda t: ks


@dataclass
class Series:
    times: np.ndarray
    exact: np.ndarray
    sampled: Optional[np.ndarray] = None


def _density(state: State) -> DensityMatrix:
    return state if isinstance(state, DensityMatrix) else ensemble_to_density(state)


def population_series(
    state: State,
    channel_at: ChannelAt,
    times,
    *,
    method: str = "ensemble",
    basis=None,
    shots: Optional[int] = None,
    seed: int = 0,
) -> Series:
    """Populations at every grid time; sampled estimates too when ``shots`` is set."""
    times = np.asarray(times, dtype=float)
    n = state.dim if isinstance(state, PureStateEnsemble) else state.n
    exact = np.zeros((times.size, n))
    sampled = np.zeros((times.size, n)) if shots else None
    for step, t in enumerate(times):
        ks = channel_at(float(t))
        if method == "ensemble":
            if not isinstance(state, PureStateEnsemble):
                raise InvalidParameter("the ensemble method needs an ensemble input")
            branches = evolve.ensemble_branches(state, ks, basis=basis)
            weights = sampler.branch_weights(branches)
            exact[step] = sampler.estimate_populations(sampler.exact_records(branches), weights, n)
            if shots:
                records = sampler.sample_branches(branches, shots, seed, step)
                sampled[step] = sampler.estimate_populations(records, weights, n)
        elif method == "vectorized":
            rho = _density(state)
            exact[step] = evolve.populations_vectorized(rho, ks, basis=basis)
            if shots:
                branches = evolve.vectorized_branches(rho, ks, basis=basis)
                records = sampler.sample_branches(branches, shots, seed, step)
                sampled[step] = sampler.estimate_populations_vectorized(records, n, branches[0].scale)
        else:
            raise InvalidParameter(f"unknown method {method!r}")
    return Series(times=times, exact=exact, sampled=sampled)


def expectation_series(
    state: State,
    channel_at: ChannelAt,
    times,
    obs: evolve.Observable,
    *,
    method: str = "ensemble",
    shots: Optional[int] = None,
    seed: int = 0,
) -> Series:
    times = np.asarray(times, dtype=float)
    exact = np.zeros(times.size)
    sampled = np.zeros(times.size) if shots else None
    for step, t in enumerate(times):
        ks = channel_at(float(t))
        if method == "ensemble":
            if not isinstance(state, PureStateEnsemble):
                raise InvalidParameter("the ensemble method needs an ensemble input")
            exact[step] = evolve.expectation(state, ks, obs)
            if shots:
                branches = evolve.expectation_branches(state, ks, obs)
                records = sampler.sample_branches(branches, shots, seed, step)
                sampled[step] = sampler.estimate_expectation(records, sampler.branch_weights(branches), obs)
        elif method == "vectorized":
            rho = _density(state)
            exact[step] = evolve.expectation_vectorized(rho, ks, obs)
            if shots:
                branches = evolve.vectorized_expectation_branches(rho, ks, obs)
                records = sampler.sample_branches(branches, shots, seed, step)
                sampled[step] = sampler.estimate_expectation_vectorized(records, obs, branches[0].scale)
        else:
            raise InvalidParameter(f"unknown method {method!r}")
    return Series(times=times, exact=exact, sampled=sampled)
