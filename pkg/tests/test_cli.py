import hashlib
import json
import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from cyclemaps import matrix_from_json, matrix_to_json, maximally_entangled_state
from cyclemaps.cli import main

FLAGSHIP = {"n": 3, "sigma": "tau:3:2", "a": 2.0, "c": [1.0, 1.0, 1.0]}
INVOLUTION = {"n": 4, "sigma": "images:3,4,1,2", "a": 3.0, "c": [1.0, 1.0, 1.0, 1.0]}


def write_json(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


def run_cli(capsys, *args):
    rc = main(list(args))
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


def test_classify_flagship(tmp_path, capsys):
    path = write_json(tmp_path, "map.json", FLAGSHIP)
    rc, out, err = run_cli(capsys, "classify", "--map", path)
    assert rc == 0
    report = json.loads(out)
    assert report["tool"] == "cyclemaps"
    assert report["subcommand"] == "classify"
    assert report["map"] == FLAGSHIP
    assert report["config"] == {"samples": 2000, "tol": 1e-9, "seed": 0}
    result = report["result"]
    assert result["positive"]["status"] == "yes"
    assert result["two_positive"]["status"] == "no"
    assert result["completely_positive"]["status"] == "no"
    assert result["atomic"]["status"] == "yes"
    assert result["decomposable"]["status"] == "no"
    assert set(report["certificates"]) == {
        "positive",
        "two_positive",
        "completely_positive",
        "atomic",
        "decomposable",
    }


def test_classify_config_plumbing(tmp_path, capsys):
    path = write_json(tmp_path, "map.json", FLAGSHIP)
    rc, out, _ = run_cli(
        capsys, "classify", "--map", path, "--samples", "100", "--seed", "7", "--tol", "1e-8"
    )
    assert rc == 0
    report = json.loads(out)
    assert report["config"] == {"samples": 100, "tol": 1e-8, "seed": 7}


def test_spectrum(tmp_path, capsys):
    path = write_json(tmp_path, "map.json", FLAGSHIP)
    rc, out, _ = run_cli(capsys, "spectrum", "--map", path)
    assert rc == 0
    result = json.loads(out)["result"]
    assert result["transposed_composition"] is False
    assert_allclose(result["eigenvalues"], [-1, 0, 0, 0, 1, 1, 1, 2, 2], atol=1e-8)
    assert result["residual"] <= 1e-10
    assert result["trace"] == pytest.approx(6.0)


def test_spectrum_transposed(tmp_path, capsys):
    path = write_json(tmp_path, "map.json", FLAGSHIP)
    rc, out, _ = run_cli(capsys, "spectrum", "--map", path, "--compose-transpose")
    assert rc == 0
    result = json.loads(out)["result"]
    assert result["transposed_composition"] is True
    golden = (1.0 + math.sqrt(5.0)) / 2.0
    expect = sorted([1.0 - golden] * 3 + [1.0] * 3 + [golden] * 3)
    assert_allclose(result["eigenvalues"], expect, atol=1e-8)


def test_decompose_involution(tmp_path, capsys):
    path = write_json(tmp_path, "map.json", INVOLUTION)
    rc, out, _ = run_cli(capsys, "decompose", "--map", path)
    assert rc == 0
    result = json.loads(out)["result"]
    assert result["pairs"] == [[1, 3], [2, 4]]
    assert result["reconstruction_residual"] <= 1e-10
    assert result["p_min_eigenvalue"] >= -1e-9
    p_matrix = matrix_from_json(result["P"])
    assert p_matrix.shape == (16, 16)
    for entry in result["q_blocks"]:
        assert entry["pt_min_eigenvalue"] >= -1e-9
        assert matrix_from_json(entry["matrix"]).shape == (16, 16)


def test_decompose_rejects_non_involution(tmp_path, capsys):
    path = write_json(tmp_path, "map.json", FLAGSHIP)
    rc, _, err = run_cli(capsys, "decompose", "--map", path)
    assert rc == 2
    assert "involution" in err


def test_spa(tmp_path, capsys):
    path = write_json(tmp_path, "map.json", FLAGSHIP)
    rc, out, _ = run_cli(capsys, "spa", "--map", path)
    assert rc == 0
    result = json.loads(out)["result"]
    assert result["lambda_star"] == pytest.approx(0.4, abs=1e-12)
    assert result["w_minus_norm"] == pytest.approx(1.0 / 6.0, abs=1e-12)
    assert result["trace_choi"] == pytest.approx(6.0)
    assert result["positivity_warning"] is False
    spa = matrix_from_json(result["matrix"])
    assert np.trace(spa).real == pytest.approx(1.0, abs=1e-12)


def test_spa_decompose(tmp_path, capsys):
    path = write_json(tmp_path, "map.json", FLAGSHIP)
    rc, out, _ = run_cli(capsys, "spa", "--map", path, "--decompose")
    assert rc == 0
    dec = json.loads(out)["result"]["decomposition"]
    assert dec["normalization"] == pytest.approx(1.0 / 15.0, abs=1e-12)
    assert dec["residual"] <= 1e-10
    kinds = [t["kind"] for t in dec["terms"]]
    assert kinds.count("pair") == 3 and kinds.count("diagonal") == 3
    for term in dec["terms"]:
        assert term["weight"] > 0.0
        assert matrix_from_json(term["matrix"]).shape == (9, 9)


def test_spa_decompose_requires_a_boundary(tmp_path, capsys):
    bad = dict(FLAGSHIP, a=1.9)
    path = write_json(tmp_path, "map.json", bad)
    rc, _, err = run_cli(capsys, "spa", "--map", path, "--decompose")
    assert rc == 2
    assert "a = n - 1" in err


def test_witness_certify_and_state(tmp_path, capsys):
    path = write_json(tmp_path, "map.json", FLAGSHIP)
    state = write_json(tmp_path, "state.json", matrix_to_json(maximally_entangled_state(3)))
    rc, out, _ = run_cli(capsys, "witness", "--map", path, "--certify", "--state", state)
    assert rc == 0
    result = json.loads(out)["result"]
    assert result["trace"] == pytest.approx(2.0)
    assert result["min_eigenvalue"] == pytest.approx((1.0 - math.sqrt(5.0)) / 6.0, abs=1e-10)
    assert result["state_expectation"] == pytest.approx(1.0 / 3.0, abs=1e-12)
    cert = result["certificate"]
    assert cert["optimal"] is True
    assert cert["span_rank"] == 9
    assert cert["theorem_applies"] is True
    assert cert["warnings"] == []
    assert len(cert["generators"]) == len(cert["expectations"])


def test_witness_state_must_be_hermitian(tmp_path, capsys):
    path = write_json(tmp_path, "map.json", FLAGSHIP)
    bad = matrix_to_json(maximally_entangled_state(3))
    bad["entries"][1] = [5.0, 0.0]
    state = write_json(tmp_path, "state.json", bad)
    rc, _, err = run_cli(capsys, "witness", "--map", path, "--state", state)
    assert rc == 2
    assert "Hermitian" in err


@pytest.mark.parametrize(
    "mutate",
    [
        lambda m: m.update(sigma="cycle:3"),
        lambda m: m.update(a=0.0),
        lambda m: m.update(a="two"),
        lambda m: m.update(c=[1.0, 1.0]),
        lambda m: m.update(c=[1.0, 1.0, "x"]),
        lambda m: m.update(n=3.5),
        lambda m: m.pop("sigma"),
    ],
)
def test_malformed_map_exits_one(tmp_path, capsys, mutate):
    m = dict(FLAGSHIP)
    mutate(m)
    path = write_json(tmp_path, "map.json", m)
    rc, _, err = run_cli(capsys, "classify", "--map", path)
    assert rc == 1
    assert "error" in err


def test_unreadable_and_unparsable_files(tmp_path, capsys):
    rc, _, err = run_cli(capsys, "classify", "--map", str(tmp_path / "missing.json"))
    assert rc == 1
    assert "error" in err

    path = tmp_path / "broken.json"
    path.write_text("{not json")
    rc, _, err = run_cli(capsys, "classify", "--map", str(path))
    assert rc == 1


def test_zero_weights_route(tmp_path, capsys):
    ok = {"n": 3, "sigma": "id:3", "a": 3.0, "c": [0.0, 0.0, 0.0]}
    path = write_json(tmp_path, "map.json", ok)
    rc, out, _ = run_cli(capsys, "classify", "--map", path)
    assert rc == 0
    result = json.loads(out)["result"]
    assert result["completely_positive"]["status"] == "yes"
    assert result["atomic"]["status"] == "no"

    for bad in (
        {"n": 3, "sigma": "id:3", "a": 2.5, "c": [0.0, 0.0, 0.0]},
        {"n": 3, "sigma": "tau:3:1", "a": 3.0, "c": [0.0, 0.0, 0.0]},
        {"n": 3, "sigma": "id:3", "a": 3.0, "c": [0.0, 1.0, 0.0]},
    ):
        path = write_json(tmp_path, "bad.json", bad)
        rc, _, err = run_cli(capsys, "classify", "--map", path)
        assert rc == 1
        assert "error" in err


def test_output_is_deterministic_modulo_timestamp(tmp_path, capsys):
    path = write_json(tmp_path, "map.json", FLAGSHIP)

    def digest():
        rc, out, _ = run_cli(capsys, "classify", "--map", path, "--seed", "3")
        assert rc == 0
        lines = [l for l in out.splitlines() if '"timestamp"' not in l]
        return hashlib.sha256("\n".join(lines).encode()).hexdigest()

    assert digest() == digest()


def test_out_flag_writes_file(tmp_path, capsys):
    path = write_json(tmp_path, "map.json", FLAGSHIP)
    dest = tmp_path / "report.json"
    rc, out, _ = run_cli(capsys, "spectrum", "--map", path, "--out", str(dest))
    assert rc == 0
    assert out == ""
    report = json.loads(dest.read_text())
    assert report["subcommand"] == "spectrum"
