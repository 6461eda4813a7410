"""Acceptance criteria for the benchmark reproduction and the property suites.

Each test prints one ``PASS``/``FAIL`` line; the lines are also collected in
``RESULTS`` and echoed in the pytest terminal summary (see ``conftest.py``).
Run just this file with ``pytest tests/test_acceptance.py -v``.
"""

import math
import time

import numpy as np

from kraus_dilation.channel import (
    KrausSet,
    PureStateEnsemble,
    apply_channel_oracle,
    benchmark_ensemble,
    ensemble_to_density,
    validate_kraus,
)
from kraus_dilation.dilation import dilate
from kraus_dilation.evolve import (
    BENCHMARK_GAMMA,
    BENCHMARK_OBSERVABLE,
    HADAMARD,
    build_observable,
    ensemble_branches,
    expectation,
    expectation_vectorized,
    populations,
    populations_in_basis,
    populations_vectorized,
)
from kraus_dilation.gatecount import complexity_report, count_lower_nonzeros, reconstruct, two_level_decompose
from kraus_dilation.linalg import operator_norm
from kraus_dilation.sampler import branch_weights, estimate_populations, sample_branches
from kraus_dilation.series import amplitude_damping_at, expectation_series, population_series, time_grid

from _randoms import (
    random_contraction,
    random_ensemble_members,
    random_hermitian,
    random_kraus_ops,
    random_unitary,
)

RESULTS: list[str] = []

GAMMA = BENCHMARK_GAMMA
TIMES = time_grid(0.0, 1000e-12, 10e-12)
T_HALF = math.log(2) / GAMMA
E = benchmark_ensemble()
CHANNEL = amplitude_damping_at(GAMMA)


def report(number: int, title: str, ok: bool, detail: str, elapsed: float, limit: float = None) -> None:
    within = limit is None or elapsed < limit
    timing = f"{elapsed:.2f}s" + ("" if limit is None else f" (limit {limit:g}s)")
    line = f"{'PASS' if ok and within else 'FAIL'} criterion {number} [{title}]: {detail}; {timing}"
    RESULTS.append(line)
    print(line)
    assert ok, line
    assert within, line


def test_criterion_1_populations_z_basis():
    start = time.perf_counter()
    series = population_series(E, CHANNEL, TIMES)
    decay = 0.75 * np.exp(-GAMMA * TIMES)
    closed = np.column_stack([1 - decay, decay])
    err = float(np.max(np.abs(series.exact - closed)))
    spot0 = series.exact[0]
    spot_half = populations(E, CHANNEL(T_HALF))
    elapsed = time.perf_counter() - start
    ok = (
        err < 1e-9
        and len(TIMES) == 101
        and np.max(np.abs(spot0 - [0.25, 0.75])) < 1e-9
        and np.max(np.abs(spot_half - [0.625, 0.375])) < 1e-9
    )
    report(1, "z-basis populations", ok, f"max error {err:.2e} over {len(TIMES)} steps", elapsed, 1.0)


def test_criterion_2_populations_pm_basis():
    start = time.perf_counter()
    series = population_series(E, CHANNEL, TIMES, basis=HADAMARD)
    coh = 0.25 * np.sqrt(np.exp(-GAMMA * TIMES))
    closed = np.column_stack([0.5 + coh, 0.5 - coh])
    err = float(np.max(np.abs(series.exact - closed)))
    elapsed = time.perf_counter() - start
    ok = err < 1e-9 and np.max(np.abs(series.exact[0] - [0.75, 0.25])) < 1e-9
    report(2, "+/- basis populations", ok, f"max error {err:.2e}", elapsed, 1.0)


def test_criterion_3_expectation():
    start = time.perf_counter()
    obs = build_observable(BENCHMARK_OBSERVABLE)
    series = expectation_series(E, CHANNEL, TIMES, obs)
    rho0 = ensemble_to_density(E)
    oracle = np.array([np.trace(obs.O @ apply_channel_oracle(rho0, CHANNEL(t)).mat).real for t in TIMES])
    err = float(np.max(np.abs(series.exact - oracle)))
    const_err = max(
        abs(obs.hs - 2.35),
        float(np.max(np.abs(obs.tilde - [[0.0740, 0.107], [0.107, 0.713]]))),
        float(np.max(np.abs(obs.L - [[0.271, 0], [0.393, 0.748]]))),
    )
    elapsed = time.perf_counter() - start
    ok = (
        err < 1e-8
        and abs(series.exact[0] - 0.5) < 1e-8
        and abs(obs.hs - math.sqrt(22) / 2) < 1e-12
        and const_err < 5e-3
    )
    report(3, "expectation value", ok, f"max error {err:.2e}, printed-constant error {const_err:.1e}", elapsed, 2.0)


def test_criterion_4_shot_statistics():
    start = time.perf_counter()
    shots = 8192
    series = population_series(E, CHANNEL, TIMES, shots=shots, seed=2024)
    grid_err = float(np.max(np.abs(series.sampled - series.exact)))

    branches = ensemble_branches(E, CHANNEL(T_HALF))
    weights = branch_weights(branches)
    runs = np.array([estimate_populations(sample_branches(branches, shots, seed), weights, 2) for seed in range(100)])
    empirical = runs.std(axis=0, ddof=1)
    predicted = np.sqrt(
        sum(b.weight**2 * q * (1 - q) for b in branches for q in [b.probabilities()[:2]]) / shots
    )
    ratio = empirical / predicted
    elapsed = time.perf_counter() - start
    ok = grid_err < 0.03 and bool(np.all(np.abs(ratio - 1) < 0.3))
    detail = f"max grid deviation {grid_err:.4f}, std ratio empirical/predicted {np.round(ratio, 3).tolist()}"
    report(4, "shot-mode statistics", ok, detail, elapsed, 30.0)


def test_criterion_5_dilation_properties():
    start = time.perf_counter()
    rng = np.random.default_rng(5)
    worst_u = worst_p = 0.0
    for _ in range(200):
        n, order = int(rng.integers(2, 6)), int(rng.integers(1, 5))
        d = dilate(random_contraction(rng, n), order)
        worst_u = max(worst_u, d.unitarity_residual())
        worst_p = max(worst_p, d.power_residual())
    elapsed = time.perf_counter() - start
    ok = worst_u < 1e-10 and worst_p < 1e-9
    report(5, "dilation properties", ok, f"unitarity {worst_u:.1e}, power identity {worst_p:.1e}", elapsed, 10.0)


def test_criterion_6_method_equivalence():
    start = time.perf_counter()
    rng = np.random.default_rng(6)
    worst_methods = worst_oracle = 0.0
    for _ in range(50):
        m = int(rng.integers(1, 5))
        ks = KrausSet(tuple(random_kraus_ops(rng, 2, m)))
        e = PureStateEnsemble(random_ensemble_members(rng, 2, int(rng.integers(1, 4))))
        rho = ensemble_to_density(e)
        rho_t = apply_channel_oracle(rho, ks).mat
        t = random_unitary(rng, 2)
        obs = build_observable(random_hermitian(rng, 2))
        pairs = [
            (populations(e, ks), populations_vectorized(rho, ks), np.diag(rho_t).real),
            (
                populations_in_basis(e, ks, t),
                populations_vectorized(rho, ks, basis=t),
                np.diag(t @ rho_t @ t.conj().T).real,
            ),
            (expectation(e, ks, obs), expectation_vectorized(rho, ks, obs), np.trace(obs.O @ rho_t).real),
        ]
        for ens, vec, exact in pairs:
            worst_methods = max(worst_methods, float(np.max(np.abs(np.subtract(ens, vec)))))
            worst_oracle = max(worst_oracle, float(np.max(np.abs(np.subtract(ens, exact)))),
                               float(np.max(np.abs(np.subtract(vec, exact)))))
    elapsed = time.perf_counter() - start
    ok = worst_methods < 1e-8 and worst_oracle < 1e-8
    report(6, "method equivalence", ok, f"methods {worst_methods:.1e}, oracle {worst_oracle:.1e}", elapsed, 20.0)


def test_criterion_7_gate_counts():
    start = time.perf_counter()
    rep = complexity_report(2)
    ens = rep.quantum_counts("ensemble")
    vec = rep.quantum_counts("vectorized")
    ensemble_values = [ens["basic"], ens["basis-transform"], ens["observable"], rep.stinespring_gates]
    vectorized_values = [vec["basic"], vec["basis-transform"], vec["observable"]]
    rng = np.random.default_rng(7)
    measured = {count_lower_nonzeros(dilate(random_contraction(rng, 2), 1).unitary) for _ in range(20)}
    elapsed = time.perf_counter() - start
    ok = ensemble_values == [6, 7, 13, 28] and vectorized_values == [28, 32, 84] and measured == {6}
    shown = [", ".join(map(str, values)) for values in (ensemble_values, vectorized_values)]
    detail = f"ensemble+stinespring [{shown[0]}], vectorized [{shown[1]}], dense 1-dilation {sorted(measured)}"
    report(7, "gate-count formulas", ok, detail, elapsed)


def test_criterion_8_two_level_decomposition():
    start = time.perf_counter()
    rng = np.random.default_rng(8)
    worst = 0.0
    for _ in range(100):
        n = int(rng.integers(2, 9))
        u = random_unitary(rng, n)
        worst = max(worst, float(np.max(np.abs(reconstruct(two_level_decompose(u), n) - u))))
    identity_gates = len(two_level_decompose(np.eye(6)))
    elapsed = time.perf_counter() - start
    ok = worst < 1e-9 and identity_gates == 0
    report(8, "two-level decomposition", ok, f"reconstruction {worst:.1e}, identity gates {identity_gates}", elapsed)


def test_criterion_9_invariants():
    start = time.perf_counter()
    rng = np.random.default_rng(9)
    max_norm = 0.0
    lo, hi = math.inf, -math.inf
    for _ in range(200):
        n, m = int(rng.integers(1, 6)), int(rng.integers(1, 6))
        ks = KrausSet(tuple(random_kraus_ops(rng, n, m)))
        assert validate_kraus(ks).passed
        max_norm = max(max_norm, max(operator_norm(op) for op in ks))
        evals = np.linalg.eigvalsh(build_observable(random_hermitian(rng, n)).tilde)
        lo, hi = min(lo, float(evals[0])), max(hi, float(evals[-1]))
    elapsed = time.perf_counter() - start
    ok = max_norm <= 1 + 1e-10 and lo >= -1e-10 and hi <= 1 + 1e-10
    report(9, "Kraus and observable invariants", ok,
           f"max Kraus norm {max_norm:.12f}, shifted observable spectrum [{lo:.3e}, {hi:.6f}]", elapsed)
