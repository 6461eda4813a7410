import csv
import io as _io
import json
import math

import numpy as np
import pytest

from kraus_dilation import io
from kraus_dilation.channel import KrausSet, amplitude_damping_kraus
from kraus_dilation.cli import main
from kraus_dilation.evolve import BENCHMARK_OBSERVABLE, HADAMARD

GAMMA = 1.52e9


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    table = list(csv.reader(_io.StringIO(text)))
    return table[0], [[float(x) for x in r] for r in table[1:]]


@pytest.fixture
def files(tmp_path):
    def write(name, obj):
        path = tmp_path / name
        path.write_text(json.dumps(obj))
        return str(path)

    return write


class TestEvolve:
    def test_defaults(self, capsys):
        code, out, _ = run(capsys, "evolve")
        assert code == 0
        header, body = rows(out)
        assert header == ["time_ps", "pop_0", "pop_1"]
        assert len(body) == 101
        assert body[0][1:] == [0.25, 0.75]
        assert body[-1][0] == 1000.0
        excited = [r[2] for r in body]
        assert all(b < a for a, b in zip(excited, excited[1:]))
        for t_ps, ground, exc in body:
            closed = 0.75 * math.exp(-GAMMA * t_ps * 1e-12)
            assert abs(exc - closed) < 1e-9 and abs(ground - (1 - closed)) < 1e-9

    def test_time_format(self, capsys):
        _, out, _ = run(capsys, "evolve", "--t-end", "20e-12")
        assert [line.split(",")[0] for line in out.splitlines()[1:]] == ["0.0000", "10.0000", "20.0000"]

    def test_hadamard_basis(self, capsys, files):
        path = files("h.json", io.matrix_to_json(HADAMARD))
        code, out, _ = run(capsys, "evolve", "--basis", path)
        assert code == 0
        _, body = rows(out)
        np.testing.assert_allclose(body[0][1:], [0.75, 0.25], atol=1e-11)

    def test_single_row(self, capsys):
        _, out, _ = run(capsys, "evolve", "--t-end", "0")
        _, body = rows(out)
        assert len(body) == 1
        assert body[0] == [0.0, 0.25, 0.75]

    def test_vectorized_matches(self, capsys):
        _, a, _ = run(capsys, "evolve", "--t-end", "100e-12")
        _, b, _ = run(capsys, "evolve", "--t-end", "100e-12", "--method", "vectorized")
        np.testing.assert_allclose(np.array(rows(a)[1]), np.array(rows(b)[1]), atol=1e-10)

    def test_density_input(self, capsys, files):
        path = files("rho.json", io.matrix_to_json(np.array([[1, 1], [1, 3]]) / 4))
        code, out, _ = run(capsys, "evolve", "--method", "vectorized", "--density", path, "--t-end", "0")
        assert code == 0
        assert rows(out)[1][0][1:] == pytest.approx([0.25, 0.75])

    def test_density_with_ensemble_method_is_input_error(self, capsys, files):
        path = files("rho.json", io.matrix_to_json(np.eye(2) / 2))
        code, _, err = run(capsys, "evolve", "--density", path)
        assert code == 2 and err.startswith("error:")

    def test_shots_columns_and_stability(self, capsys, tmp_path):
        out_a, out_b = tmp_path / "a.csv", tmp_path / "b.csv"
        args = ["evolve", "--mode", "shots", "--seed", "5", "--t-end", "200e-12"]
        assert main(args + ["--out", str(out_a)]) == 0
        assert main(args + ["--out", str(out_b)]) == 0
        assert out_a.read_bytes() == out_b.read_bytes()
        header, body = rows(out_a.read_text())
        assert header == ["time_ps", "pop_0", "pop_1", "shots_pop_0", "shots_pop_1"]
        for r in body:
            assert abs(r[3] - r[1]) < 0.03 and abs(r[4] - r[2]) < 0.03

    def test_exact_output_byte_stable(self, capsys):
        assert run(capsys, "evolve")[1] == run(capsys, "evolve")[1]

    def test_kraus_file(self, capsys, files):
        path = files("k.json", io.kraus_to_json(amplitude_damping_kraus(GAMMA, math.log(2) / GAMMA)))
        _, out, _ = run(capsys, "evolve", "--kraus", path, "--t-end", "10e-12")
        _, body = rows(out)
        assert body[0][1:] == pytest.approx([0.625, 0.375], abs=1e-11)
        assert body[1][1:] == body[0][1:]

    @pytest.mark.parametrize(
        "argv",
        [
            ["evolve", "--dt", "0"],
            ["evolve", "--t-end", "-1e-12"],
            ["evolve", "--mode", "shots", "--shots", "0"],
            ["evolve", "--state", "/nonexistent.json"],
            ["evolve", "--method", "bogus"],
            ["evolve", "--channel", "depolarizing"],
        ],
    )
    def test_bad_config(self, capsys, argv):
        code, _, _ = run(capsys, *argv)
        assert code != 0


class TestExpect:
    def test_benchmark_observable(self, capsys, files):
        path = files("o.json", io.matrix_to_json(BENCHMARK_OBSERVABLE))
        code, out, _ = run(capsys, "expect", "--observable", path)
        assert code == 0
        header, body = rows(out)
        assert header == ["time_ps", "expectation"]
        assert body[0][1] == pytest.approx(0.5, abs=1e-12)
        decay = math.exp(-1.52)
        closed = -2 * (1 - 0.75 * decay) + 2 * 0.5 * 0.25 * math.sqrt(decay) + 0.75 * decay
        assert body[-1][1] == pytest.approx(closed, abs=1e-10)
        assert body[-1][1] == pytest.approx(-1.3910, abs=1e-4)

    def test_identity_observable(self, capsys, files):
        path = files("i.json", io.matrix_to_json(np.eye(2)))
        _, out, _ = run(capsys, "expect", "--observable", path, "--method", "vectorized")
        _, body = rows(out)
        assert all(abs(r[1] - 1.0) < 1e-11 for r in body)

    def test_shot_column(self, capsys, files):
        path = files("o.json", io.matrix_to_json(BENCHMARK_OBSERVABLE))
        _, out, _ = run(capsys, "expect", "--observable", path, "--mode", "shots", "--t-end", "0")
        header, body = rows(out)
        assert header[-1] == "shots_expectation"
        assert abs(body[0][2] - 0.5) < 0.1

    def test_non_hermitian(self, capsys, files):
        path = files("o.json", io.matrix_to_json(np.array([[0, 1], [0, 0]])))
        code, _, err = run(capsys, "expect", "--observable", path)
        assert code == 1 and "NotHermitian" in err

    def test_missing_observable(self, capsys):
        assert run(capsys, "expect")[0] == 2


class TestValidate:
    def test_amplitude_damping(self, capsys, files):
        path = files("k.json", io.kraus_to_json(amplitude_damping_kraus(GAMMA, 2e-10)))
        code, out, _ = run(capsys, "validate", "--kraus", path)
        assert code == 0 and out.strip().endswith("PASS")

    def test_double_identity(self, capsys, files):
        path = files("k.json", io.kraus_to_json(KrausSet((np.eye(2), np.eye(2)))))
        code, out, _ = run(capsys, "validate", "--kraus", path)
        assert code == 1
        assert "completeness residual: 1.000000e+00" in out

    def test_malformed(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        assert run(capsys, "validate", "--kraus", str(path))[0] == 2

    def test_missing_argument(self, capsys):
        assert run(capsys, "validate")[0] == 2


class TestDilate:
    def test_m0_half_decay(self, capsys, files):
        m0, _ = amplitude_damping_kraus(GAMMA, math.log(2) / GAMMA)
        code, out, _ = run(capsys, "dilate", files("m.json", io.matrix_to_json(m0)), "--order", "1")
        assert code == 0
        payload = json.loads(out)
        assert payload["is_unitary"] is True
        assert io.matrix_from_json(payload["unitary"]).shape == (4, 4)
        assert payload["unitarity_residual"] < 1e-12 and payload["power_residual"] < 1e-12

    def test_identity_order_three(self, capsys, files, tmp_path):
        out_path = tmp_path / "u.json"
        code, _, _ = run(capsys, "dilate", files("i.json", io.matrix_to_json(np.eye(2))), "--order", "3",
                         "--out", str(out_path))
        assert code == 0
        payload = json.loads(out_path.read_text())
        assert payload["unitarity_residual"] == 0 and payload["power_residual"] == 0

    def test_norm_two(self, capsys, files):
        code, _, err = run(capsys, "dilate", files("a.json", io.matrix_to_json(2 * np.eye(2))))
        assert code == 1 and "NotContraction" in err


class TestComplexity:
    def test_n2(self, capsys):
        code, out, _ = run(capsys, "complexity", "--n", "2")
        assert code == 0
        tokens = out.split()
        for value in ("6", "7", "13", "28", "32", "84"):
            assert value in tokens
        assert "stinespring" in out

    def test_n3(self, capsys):
        _, out, _ = run(capsys, "complexity", "--n", "3")
        basic = [line for line in out.splitlines() if line.startswith("ensemble") and "basic" in line][0]
        assert basic.split()[2] == "15"

    def test_identity_unitary(self, capsys, files):
        path = files("u.json", io.matrix_to_json(np.eye(4)))
        _, out, _ = run(capsys, "complexity", "--unitary", path)
        assert "measured two-level gates: 0" in out

    def test_small_n(self, capsys):
        assert run(capsys, "complexity", "--n", "1")[0] == 1


def test_module_entry_point():
    import subprocess
    import sys

    proc = subprocess.run([sys.executable, "-m", "kraus_dilation", "evolve", "--t-end", "0"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[1] == "0.0000,0.25,0.75"
