import json

import pytest

from twistkit import (
    GF,
    QQ,
    certify,
    duplicate_algebra,
    kn_algebra,
    make_ncd,
    validate_algebra,
)
from twistkit import serialize
from twistkit.cli import main

F2 = GF(2)


def write(tmp_path, name, payload):
    path = tmp_path / name
    path.write_text(serialize.dumps(payload), encoding="utf-8")
    return str(path)


def read(path):
    with open(path, encoding="utf-8") as handle:
        return json.load(handle)


@pytest.fixture
def dup_file(tmp_path):
    return write(tmp_path, "dup.json", serialize.algebra_to_json(duplicate_algebra(QQ)))


@pytest.fixture
def ncd_file(tmp_path):
    cand = make_ncd(kn_algebra(QQ, 2), [[1, 0], [1, 0]], [[0, 0], [0, 0]])
    return write(tmp_path, "ncd.json", serialize.candidate_to_json(cand))


@pytest.fixture
def bad_ncd_file(tmp_path):
    cand = make_ncd(kn_algebra(QQ, 2), QQ.identity(2), QQ.identity(2))  # delta(1) != 0
    return write(tmp_path, "bad.json", serialize.candidate_to_json(cand))


def test_validate_algebra_ok(dup_file, tmp_path):
    out = str(tmp_path / "report.json")
    assert main(["validate-algebra", dup_file, "--out", out]) == 0
    assert read(out)["ok"] is True


def test_validate_algebra_failure_writes_report(tmp_path, capsys):
    alg = serialize.algebra_to_json(kn_algebra(QQ, 2))
    alg["lambda"][0][1][0] = "1"
    path = write(tmp_path, "broken.json", alg)
    out = str(tmp_path / "report.json")
    assert main(["validate-algebra", path, "--out", out]) == 1
    report = read(out)
    assert report["ok"] is False
    assert report["failures"][0]["condition"] == "assoc"


def test_check_twisting_ok(ncd_file, tmp_path):
    out = str(tmp_path / "verdict.json")
    assert main(["check-twisting", ncd_file, "--out", out]) == 0
    payload = read(out)
    assert payload["ok"] is True
    assert set(payload["reports"]) == {"direct", "rho", "phi", "rep", "oracle"}


def test_check_twisting_negative_tags_condition(bad_ncd_file, tmp_path):
    out = str(tmp_path / "verdict.json")
    assert main(["check-twisting", bad_ncd_file, "--checker", "direct", "--out", out]) == 1
    payload = read(out)
    assert payload["ok"] is False
    assert payload["failures"][0]["condition"].startswith("direct.")


def test_build_product_roundtrips(ncd_file, tmp_path):
    out = str(tmp_path / "product.json")
    assert main(["build-product", ncd_file, "--out", out]) == 0
    payload = read(out)
    assert payload["ok"] is True
    product = serialize.algebra_from_json(payload["product"])
    assert product.dim == 4
    assert validate_algebra(product).ok


def test_build_product_refuses_nontwisting(bad_ncd_file, tmp_path):
    out = str(tmp_path / "product.json")
    assert main(["build-product", bad_ncd_file, "--out", out]) == 1
    assert read(out)["ok"] is False


def test_represent_shows_duplicate_matrices(ncd_file, tmp_path):
    out = str(tmp_path / "rep.json")
    assert main(["represent", ncd_file, "--out", out]) == 0
    payload = read(out)
    # the X image is the scalar structure matrix with unit-coordinate entries
    phi_x = payload["phi_chi"]["B"][1]
    assert phi_x == [
        [["0", "0"], ["0", "0"]],
        [["1", "1"], ["1", "1"]],
    ]
    assert len(payload["rho_hat"]) == 2


def test_rebase_cli(ncd_file, tmp_path):
    pfile = write(tmp_path, "p.json", [["1", "0"], ["-1", "1"]])
    out = str(tmp_path / "rebased.json")
    assert main(["rebase", ncd_file, "--matrix", pfile, "--out", out]) == 0
    payload = read(out)
    assert payload["ok"] is True
    rebased = serialize.candidate_from_json(payload["candidate"])
    assert rebased.B == kn_algebra(QQ, 2)


def test_extend_cli(tmp_path):
    from twistkit import direct_sum, GammaFamily

    a = kn_algebra(F2, 2)
    theta = certify(GammaFamily.flip(a, kn_algebra(F2, 2)))
    ups = certify(GammaFamily.flip(a, kn_algebra(F2, 1)))
    psi = direct_sum(theta, ups)
    payload = serialize.candidate_to_json(psi)
    path = write(tmp_path, "psi.json", {"psi": payload, "n": 2, "m": 1})
    out = str(tmp_path / "ext.json")
    assert main(["extend", path, "--blocks", "--out", out]) == 0
    result = read(out)
    assert result["ok"] is True
    assert set(result["blocks"]) == {"B1", "B2", "C1", "C2"}


def test_quiver_cli(tmp_path):
    from twistkit import GammaFamily

    a = kn_algebra(F2, 2)
    cand = certify(GammaFamily.flip(a, kn_algebra(F2, 2)))
    path = write(tmp_path, "kn.json", serialize.candidate_to_json(cand))
    out = str(tmp_path / "quiver.json")
    assert main(["quiver", path, "--out", out]) == 0
    payload = read(out)
    assert payload["vertices"] == ["v1", "v2"]
    assert [(arrow["source"], arrow["target"]) for arrow in payload["arrows"]] == [(0, 0), (1, 1)]


def test_catalog_cli(tmp_path):
    params = {
        "A": serialize.algebra_to_json(kn_algebra(QQ, 2)),
        "f": [["1", "0"], ["1", "0"]],
        "delta": [["0", "0"], ["0", "0"]],
    }
    path = write(tmp_path, "params.json", params)
    out = str(tmp_path / "cand.json")
    assert main(["catalog", "ncd", path, "--out", out]) == 0
    payload = read(out)
    assert payload["verdict"]["ok"] is True
    assert payload["family_conditions"]["ok"] is True
    cand = serialize.candidate_from_json(payload["candidate"])
    assert cand.B == duplicate_algebra(QQ)


def test_enumerate_cli(tmp_path):
    k1 = serialize.algebra_to_json(kn_algebra(F2, 1))
    a_path = write(tmp_path, "a.json", k1)
    b_path = write(tmp_path, "b.json", k1)
    out = str(tmp_path / "hits.jsonl")
    assert main(["enumerate", "--A", a_path, "--B", b_path, "--checker", "all", "--out", out]) == 0
    lines = [json.loads(line) for line in open(out, encoding="utf-8")]
    assert [line["index"] for line in lines] == [1]
    assert lines[0]["gamma"] == [[[["1"]]]]


def test_cross_validate_cli(tmp_path):
    k1 = serialize.algebra_to_json(kn_algebra(F2, 1))
    a_path = write(tmp_path, "a.json", k1)
    b_path = write(tmp_path, "b.json", k1)
    out = str(tmp_path / "cv.json")
    assert main(["cross-validate", "--A", a_path, "--B", b_path, "--out", out]) == 0
    assert read(out)["ok"] is True


def test_missing_file_is_usage_error(tmp_path, capsys):
    assert main(["validate-algebra", str(tmp_path / "nope.json")]) == 2
    assert "error:" in capsys.readouterr().err


def test_oversized_search_is_usage_error(tmp_path):
    k3 = serialize.algebra_to_json(kn_algebra(GF(3), 2))
    a_path = write(tmp_path, "a.json", k3)
    assert main(["enumerate", "--A", a_path, "--B", a_path]) == 2


def test_malformed_json_is_usage_error(tmp_path, capsys):
    path = tmp_path / "garbage.json"
    path.write_text("{oops", encoding="utf-8")
    assert main(["validate-algebra", str(path)]) == 2


def test_output_roundtrip_stdout(ncd_file, capsys):
    assert main(["check-twisting", ncd_file, "--checker", "oracle"]) == 0
    out = capsys.readouterr().out
    assert json.loads(out)["ok"] is True


def test_module_entry_point(ncd_file):
    import subprocess
    import sys

    proc = subprocess.run(
        [sys.executable, "-m", "twistkit", "check-twisting", ncd_file, "--checker", "direct"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["ok"] is True
    help_proc = subprocess.run(
        [sys.executable, "-m", "twistkit", "enumerate", "--help"],
        capture_output=True,
        text=True,
    )
    assert help_proc.returncode == 0
    assert "--checker" in help_proc.stdout
