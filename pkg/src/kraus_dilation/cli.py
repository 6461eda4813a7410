"""Command-line front end.

Subcommands: ``evolve``, ``expect``, ``validate``, ``dilate``, ``complexity``.
Exit codes: 0 success, 1 domain validation failure, 2 input/parse failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import io
from .channel import benchmark_ensemble, validate_kraus
from .dilation import dilate
from .errors import KrausDilationError
from .evolve import BENCHMARK_GAMMA, build_observable
from .gatecount import complexity_report, count_lower_nonzeros, two_level_decompose
from .linalg import is_unitary
from .sampler import DEFAULT_SHOTS, PRNG_NAME
from .series import amplitude_damping_at, constant_channel, expectation_series, population_series, time_grid

EXIT_OK, EXIT_DOMAIN, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _load(loader, path: str, what: str):
    try:
        return loader(io.load_json(path))
    except (OSError, json.JSONDecodeError, io.FormatError) as exc:
        raise InputError(f"cannot read {what} from {path}: {exc}") from exc


def _channel(args):
    if args.kraus:
        return constant_channel(_load(io.kraus_from_json, args.kraus, "Kraus set"))
    if args.channel != "amplitude-damping":
        raise InputError(f"unknown channel {args.channel!r}")
    return amplitude_damping_at(args.gamma)


def _state(args):
    if args.state and args.density:
        raise InputError("give at most one of --state and --density")
    if args.density:
        if args.method == "ensemble":
            raise InputError("--method ensemble needs an ensemble input (--state)")
        return _load(io.density_from_json, args.density, "density matrix")
    if args.state:
        return _load(io.ensemble_from_json, args.state, "ensemble")
    return benchmark_ensemble()


def _basis(args):
    if args.basis in (None, "identity"):
        return None
    return _load(io.matrix_from_json, args.basis, "basis transformation")


def _shots(args) -> Optional[int]:
    if args.mode == "exact":
        return None
    if args.shots < 1:
        raise InputError("--shots must be at least 1")
    return args.shots


def _write_csv(header: list[str], rows: list[list[str]], out: Optional[str]) -> None:
    lines = [",".join(header)] + [",".join(r) for r in rows]
    text = "\n".join(lines) + "\n"
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_evolve(args) -> int:
    state = _state(args)
    times = time_grid(args.t_start, args.t_end, args.dt)
    result = population_series(
        state, _channel(args), times, method=args.method, basis=_basis(args), shots=_shots(args), seed=args.seed
    )
    n = result.exact.shape[1]
    header = ["time_ps"] + [f"pop_{j}" for j in range(n)]
    if result.sampled is not None:
        header += [f"shots_pop_{j}" for j in range(n)]
    rows = []
    for step, t in enumerate(result.times):
        row = [f"{t * 1e12:.4f}"] + [_fmt(x) for x in result.exact[step]]
        if result.sampled is not None:
            row += [_fmt(x) for x in result.sampled[step]]
        rows.append(row)
    _write_csv(header, rows, args.out)
    return EXIT_OK


def cmd_expect(args) -> int:
    if not args.observable:
        raise InputError("expect needs --observable")
    obs = build_observable(_load(io.matrix_from_json, args.observable, "observable"))
    state = _state(args)
    times = time_grid(args.t_start, args.t_end, args.dt)
    result = expectation_series(
        state, _channel(args), times, obs, method=args.method, shots=_shots(args), seed=args.seed
    )
    header = ["time_ps", "expectation"] + (["shots_expectation"] if result.sampled is not None else [])
    rows = []
    for step, t in enumerate(result.times):
        row = [f"{t * 1e12:.4f}", _fmt(result.exact[step])]
        if result.sampled is not None:
            row.append(_fmt(result.sampled[step]))
        rows.append(row)
    _write_csv(header, rows, args.out)
    return EXIT_OK


def cmd_validate(args) -> int:
    ks = _load(io.kraus_from_json, args.kraus, "Kraus set")
    report = validate_kraus(ks, args.tol)
    print(f"completeness residual: {report.residual:.6e}")
    for k, norm in enumerate(report.operator_norms):
        print(f"operator {k} norm: {norm:.12g}")
    print("PASS" if report.passed else "FAIL")
    return EXIT_OK if report.passed else EXIT_DOMAIN


def cmd_dilate(args) -> int:
    a = _load(io.matrix_from_json, args.matrix, "matrix")
    d = dilate(a, args.order)
    payload = {
        "base_dim": d.base_dim,
        "order": d.order,
        "unitary": io.matrix_to_json(d.unitary),
        "is_unitary": bool(is_unitary(d.unitary, args.tol)),
        "unitarity_residual": d.unitarity_residual(),
        "power_residual": d.power_residual(),
    }
    text = json.dumps(payload, indent=2) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_complexity(args) -> int:
    report = complexity_report(args.n)
    print(f"n = {report.n}")
    print(f"{'method':<11} {'stage':<16} {'quantum/branch':>15} {'classical/branch':>17} "
          f"{'quantum overhead':>17} {'classical overhead':>19}")
    for s in report.stages:
        print(f"{s.method:<11} {s.stage:<16} {str(s.quantum_gates):>15} {str(s.classical_per_branch):>17} "
              f"{str(s.quantum_overhead):>17} {str(s.classical_overhead):>19}")
    print(f"stinespring {'full channel':<16} {str(report.stinespring_gates):>15}")
    if args.unitary:
        u = _load(io.matrix_from_json, args.unitary, "unitary")
        gates = two_level_decompose(u, args.tol)
        print(f"measured two-level gates: {len(gates)}")
        print(f"lower-triangular nonzeros: {count_lower_nonzeros(u, args.tol)}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kraus-dilation",
        description="Open quantum system evolution through Sz.-Nagy dilations of Kraus operators.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def run_options(p):
        p.add_argument("--channel", default="amplitude-damping", help="built-in channel name")
        p.add_argument("--gamma", type=float, default=BENCHMARK_GAMMA, help="decay rate in 1/s")
        p.add_argument("--kraus", help="Kraus set JSON (time independent)")
        p.add_argument("--state", help="pure-state ensemble JSON")
        p.add_argument("--density", help="density matrix JSON (vectorized method only)")
        p.add_argument("--t-start", type=float, default=0.0, help="seconds")
        p.add_argument("--t-end", type=float, default=1000e-12, help="seconds")
        p.add_argument("--dt", type=float, default=10e-12, help="seconds")
        p.add_argument("--method", choices=["ensemble", "vectorized"], default="ensemble")
        p.add_argument("--mode", choices=["exact", "shots"], default="exact")
        p.add_argument("--shots", type=int, default=DEFAULT_SHOTS)
        p.add_argument("--seed", type=int, default=0, help=f"seed for {PRNG_NAME}")
        p.add_argument("--out", help="output CSV path (default stdout)")
        p.add_argument("--tol", type=float, default=1e-10)

    p = sub.add_parser("evolve", help="population time series as CSV")
    run_options(p)
    p.add_argument("--basis", default="identity", help="'identity' or a unitary matrix JSON")
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("expect", help="expectation value time series as CSV")
    run_options(p)
    p.add_argument("--observable", help="Hermitian matrix JSON")
    p.set_defaults(func=cmd_expect)

    p = sub.add_parser("validate", help="check Kraus completeness")
    p.add_argument("--kraus", required=True)
    p.add_argument("--tol", type=float, default=1e-10)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("dilate", help="build and verify an N-dilation")
    p.add_argument("matrix", help="contraction matrix JSON")
    p.add_argument("--order", type=int, default=1)
    p.add_argument("--out")
    p.add_argument("--tol", type=float, default=1e-10)
    p.set_defaults(func=cmd_dilate)

    p = sub.add_parser("complexity", help="gate-count formulas and optional measured decomposition")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--unitary", help="unitary matrix JSON to decompose")
    p.add_argument("--tol", type=float, default=1e-10)
    p.set_defaults(func=cmd_complexity)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except KrausDilationError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
