"""End-to-end command line checks: exit codes and JSON payloads."""

import json
import subprocess
import sys

import numpy as np
import pytest

import matchain.families as fam
import matchain.io as mio
from matchain.companion import companion_matrix


def run_cli(*args, **kw):
    return subprocess.run(
        [sys.executable, "-m", "matchain", *args],
        capture_output=True, text=True, **kw,
    )


def test_no_subcommand_is_a_usage_error():
    res = run_cli()
    assert res.returncode == 1
    assert "usage" in res.stderr.lower()


def test_unknown_family_is_a_usage_error():
    res = run_cli("bounds", "--family", "wat", "--n", "4")
    assert res.returncode == 1
    assert "unknown family" in res.stderr


def test_missing_input_file_is_an_io_error(tmp_path):
    res = run_cli("decompose", "--in", str(tmp_path / "nope.json"), "--chain", "diagonal")
    assert res.returncode == 2


def test_verify_dominant_chain():
    res = run_cli("verify", "--family", "skew", "--n", "8", "--r", "3", "--trials", "2")
    assert res.returncode == 0
    doc = json.loads(res.stdout)
    assert doc["dominant"] is True
    assert doc["d_estimate"] == 64
    assert doc["target_dim"] == 64
    assert doc["ranks"] == [64, 64]
    assert doc["problem"]["families"] == ["skew-symmetric"] * 3


def test_verify_non_dominant_chain_exits_3():
    res = run_cli("verify", "--family", "skew", "--n", "4", "--r", "3", "--trials", "2")
    assert res.returncode == 3
    doc = json.loads(res.stdout)
    assert doc["dominant"] is False
    assert doc["d_estimate"] == 13


def test_verify_is_reproducible():
    a = run_cli("verify", "--family", "toeplitz-sym", "--n", "5", "--r", "3",
                "--target", "centro", "--seed", "9")
    b = run_cli("verify", "--family", "toeplitz-sym", "--n", "5", "--r", "3",
                "--target", "centro", "--seed", "9")
    assert a.stdout == b.stdout
    assert a.returncode == 0


def test_table_reproduces_all_rows():
    res = run_cli("table")
    assert res.returncode == 0
    assert "14/14 rows match" in res.stdout


def test_decompose_round_trip(tmp_path):
    rng = np.random.default_rng(3)
    T = fam.complex_gaussian(rng, 16).reshape(4, 4)
    path = tmp_path / "t.json"
    mio.write_matrix(T, str(path))
    chain = ",".join(["bidiagonal-lower", "bidiagonal-upper"] * 4)
    res = run_cli("decompose", "--in", str(path), "--chain", chain, "--seed", "1")
    assert res.returncode == 0
    doc = json.loads(res.stdout)
    assert doc["converged"] is True
    assert doc["residual"] <= 1e-8
    assert len(doc["factors"]) == 8
    # factors in the payload multiply back to the target
    P = np.eye(4, dtype=complex)
    for F in doc["factors"]:
        P = P @ np.array([[complex(a, b) for a, b in row] for row in F])
    assert np.linalg.norm(P - T) <= 1e-6 * np.linalg.norm(T)


def test_decompose_unconverged_exits_4(tmp_path):
    rng = np.random.default_rng(5)
    T = fam.complex_gaussian(rng, 16).reshape(4, 4)
    path = tmp_path / "t.json"
    mio.write_matrix(T, str(path))
    opts = tmp_path / "opts.json"
    opts.write_text('{"max_iterations": 1, "restarts": 1}')
    chain = ",".join(["bidiagonal-lower", "bidiagonal-upper"] * 4)
    res = run_cli("decompose", "--in", str(path), "--chain", chain,
                  "--opts", str(opts))
    assert res.returncode == 4
    doc = json.loads(res.stdout)
    assert doc["converged"] is False


def test_decompose_infeasible_chain_is_an_error(tmp_path):
    rng = np.random.default_rng(6)
    T = fam.complex_gaussian(rng, 16).reshape(4, 4)
    path = tmp_path / "t.json"
    mio.write_matrix(T, str(path))
    res = run_cli("decompose", "--in", str(path), "--chain", "toeplitz-sym,toeplitz-sym")
    assert res.returncode == 1


def test_decompose_rejects_unknown_option(tmp_path):
    path = tmp_path / "t.json"
    mio.write_matrix(np.eye(3, dtype=complex), str(path))
    opts = tmp_path / "opts.json"
    opts.write_text('{"velocity": 9}')
    res = run_cli("decompose", "--in", str(path), "--chain", "diagonal",
                  "--opts", str(opts))
    assert res.returncode == 2  # malformed options file is a parse error
    assert "velocity" in res.stderr


def test_companion_generic(tmp_path):
    rng = np.random.default_rng(31)
    A = fam.complex_gaussian(rng, 16).reshape(4, 4)
    path = tmp_path / "a.json"
    mio.write_matrix(A, str(path))
    res = run_cli("companion", "--in", str(path))
    assert res.returncode == 0
    doc = json.loads(res.stdout)
    assert doc["status"] == "unique"
    assert doc["failed_column"] is None
    P = np.eye(4, dtype=complex)
    for col in doc["coefficients"]:
        P = P @ companion_matrix(np.array([complex(a, b) for a, b in col]))
    assert np.linalg.norm(P - A) <= 1e-10 * np.linalg.norm(A)


def test_companion_counterexample_exits_5(tmp_path):
    rng = np.random.default_rng(32)
    A = fam.complex_gaussian(rng, 16).reshape(4, 4)
    A[0, 0] = 0.0
    A[0, 1] = 1.0
    path = tmp_path / "a.json"
    mio.write_matrix(A, str(path))
    res = run_cli("companion", "--in", str(path))
    assert res.returncode == 5
    doc = json.loads(res.stdout)
    assert doc["status"] == "no-solution"
    assert doc["failed_column"] == 2
    assert doc["coefficients"] is None


def test_bounds_symmetric_toeplitz():
    res = run_cli("bounds", "--family", "toeplitz-sym", "--n", "7")
    assert res.returncode == 0
    doc = json.loads(res.stdout)
    assert doc["family_dim"] == 7
    assert doc["target"] == {"tag": "centro", "dim": 25}
    assert doc["cone"] is True
    assert doc["lower_bound"] == 4
    assert doc["generic_r"] == 4
    assert doc["surjective_r"] == 17


def test_bounds_skew():
    doc = json.loads(run_cli("bounds", "--family", "skew", "--n", "5").stdout)
    assert doc["target"] == {"tag": "det", "dim": 24}
    assert doc["lower_bound"] == 3
    doc = json.loads(run_cli("bounds", "--family", "skew", "--n", "8").stdout)
    assert doc["target"] == {"tag": "full", "dim": 64}
    assert doc["lower_bound"] == 3
    assert doc["generic_r"] == 3
    assert doc["surjective_r"] == 13


def test_bounds_companion_is_not_a_cone():
    doc = json.loads(run_cli("bounds", "--family", "companion", "--n", "5").stdout)
    assert doc["cone"] is False
    assert doc["lower_bound"] == 5
    assert doc["generic_r"] == 5
    assert doc["surjective_r"] == 21


def test_sample_is_seeded_and_member():
    a = run_cli("sample", "--family", "toeplitz-sym", "--n", "5", "--seed", "7")
    b = run_cli("sample", "--family", "toeplitz-sym", "--n", "5", "--seed", "7")
    assert a.returncode == 0
    assert a.stdout == b.stdout
    M = np.array([[complex(x, y) for x, y in row]
                  for row in json.loads(a.stdout)["entries"]])
    spec = fam.family_spec(fam.kind_from_tag("toeplitz-sym"), 5)
    assert fam.is_member(spec, M, 1e-12)


@pytest.mark.parametrize("alias,canonical", [
    ("skew", "skew-symmetric"),
    ("upper", "triangular-upper"),
    ("lower", "triangular-lower"),
])
def test_family_aliases(alias, canonical):
    res = run_cli("sample", "--family", alias, "--n", "3", "--seed", "0")
    assert res.returncode == 0
    direct = run_cli("sample", "--family", canonical, "--n", "3", "--seed", "0")
    assert res.stdout == direct.stdout


def test_family_argument_syntax():
    res = run_cli("bounds", "--family", "k-diagonal:3", "--n", "5")
    assert res.returncode == 0
    assert json.loads(res.stdout)["family_dim"] == 25 - 2 * 3  # (2k-1)n - k(k-1)
    res = run_cli("bounds", "--family", "subspace:7", "--n", "4")
    assert res.returncode == 0
    assert json.loads(res.stdout)["family_dim"] == 7
