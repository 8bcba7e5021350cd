import json

import pytest

from hopfqt.cli import main
from hopfqt.families import make_kac_paljutkin, make_K
from hopfqt.serialize import data_to_json, dumps, rmatrix_to_json
from hopfqt.solver import enumerate_all_nontrivial


@pytest.fixture()
def kp_file(tmp_path):
    path = tmp_path / "kp.json"
    path.write_text(dumps(data_to_json(make_kac_paljutkin())))
    return str(path)


@pytest.fixture()
def flat_file(tmp_path):
    path = tmp_path / "k8_untwisted.json"
    path.write_text(dumps(data_to_json(make_K(1))))
    return str(path)


def test_validate_ok(kp_file, capsys):
    assert main(["validate", kp_file]) == 0
    out = capsys.readouterr().out
    assert "ok" in out


def test_validate_axioms(kp_file):
    assert main(["validate", kp_file, "--axioms"]) == 0


def test_validate_broken_is_status_1(tmp_path, capsys):
    obj = data_to_json(make_kac_paljutkin())
    obj["tau"][0][1] = [1, 2]  # tau(1, g) = -1 breaks unitality
    bad = tmp_path / "broken.json"
    bad.write_text(dumps(obj))
    assert main(["validate", str(bad)]) == 1
    out = capsys.readouterr().out
    assert "tau-unital" in out


def test_info(kp_file, capsys):
    assert main(["info", kp_file]) == 0
    out = capsys.readouterr().out
    assert "|G| = 4" in out and "presentation" in out


def test_enumerate_and_roundtrip_verify(kp_file, tmp_path, capsys):
    out_path = tmp_path / "sols.json"
    assert main(["enumerate", kp_file, "--kind", "all", "--verify",
                 "-o", str(out_path)]) == 0
    obj = json.loads(out_path.read_text())
    assert obj["counts"]["special"] == 4
    assert obj["counts"]["trivial"] == 4
    assert obj["verified"] is True
    # every exported solution re-verifies through the CLI
    for kind, sols in obj["solutions"].items():
        for i, sol in enumerate(sols):
            r_path = tmp_path / f"{kind}_{i}.json"
            r_path.write_text(dumps(sol))
            assert main(["verify", kp_file, str(r_path), "--qybe"]) == 0


def test_enumerate_kind_phi_symmetric(kp_file, tmp_path):
    out_path = tmp_path / "phi.json"
    assert main(["enumerate", kp_file, "--kind", "phi-symmetric",
                 "-o", str(out_path)]) == 0
    obj = json.loads(out_path.read_text())
    assert obj["counts"]["phi-symmetric"] == 4


def test_enumerate_kind_general(kp_file, tmp_path):
    out_path = tmp_path / "gen.json"
    assert main(["enumerate", kp_file, "--kind", "general",
                 "-o", str(out_path)]) == 0
    obj = json.loads(out_path.read_text())
    assert obj["counts"]["general"] == 4
    assert "untwisted companion" in obj["note"]


def test_enumerate_deterministic(kp_file, tmp_path):
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["enumerate", kp_file, "--kind", "special", "-o", str(p1)]) == 0
    assert main(["enumerate", kp_file, "--kind", "special", "-o", str(p2)]) == 0
    assert p1.read_text() == p2.read_text()


def test_verify_identity_on_untwisted(flat_file, tmp_path):
    data = make_K(1)
    from hopfqt.rmatrix import RMatrix, TRIVIAL
    from hopfqt.scalar import Cyclotomic

    one = Cyclotomic.one()
    els = data.group.elements
    R = RMatrix(data, TRIVIAL, {(g, h): one for g in els for h in els})
    r_path = tmp_path / "identity.json"
    r_path.write_text(dumps(rmatrix_to_json(R)))
    assert main(["verify", flat_file, str(r_path)]) == 0
    assert main(["verify", flat_file, str(r_path), "--qybe"]) == 0


def test_verify_mutated_is_status_1(kp_file, tmp_path, capsys):
    data = make_kac_paljutkin()
    R = enumerate_all_nontrivial(data)[0]
    obj = rmatrix_to_json(R)
    num, den = obj["w4"][0][0]
    obj["w4"][0][0] = [num + den // 2, den]  # multiply the entry by -1
    r_path = tmp_path / "bad.json"
    r_path.write_text(dumps(obj))
    assert main(["verify", kp_file, str(r_path)]) == 1
    assert "witness" in capsys.readouterr().out


def test_classify_preset(tmp_path, capsys):
    out_path = tmp_path / "cls.json"
    assert main(["classify", "--preset", "kac-paljutkin", "-o", str(out_path)]) == 0
    obj = json.loads(out_path.read_text())
    assert obj["count"] == 4
    assert all(e["verified"] for e in obj["solutions"])
    out = capsys.readouterr().out
    assert "4 non-trivial structures" in out


def test_classify_a_preset():
    assert main(["classify", "--preset", "A8n:n=1:paper"]) == 0


def test_export_formats(kp_file, tmp_path):
    data = make_kac_paljutkin()
    R = enumerate_all_nontrivial(data)[0]
    r_path = tmp_path / "r.json"
    r_path.write_text(dumps(rmatrix_to_json(R)))
    for fmt in ("json", "matrix", "complex"):
        out = tmp_path / f"out_{fmt}.json"
        assert main(["export", kp_file, str(r_path), "--format", fmt,
                     "-o", str(out)]) == 0
        obj = json.loads(out.read_text())
        if fmt == "complex":
            assert "NOT authoritative" in obj["warning"]


def test_usage_errors(kp_file, capsys):
    assert main(["validate", "/nonexistent.json"]) == 2
    assert main(["classify", "--preset", "bogus"]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["enumerate", kp_file, "--kind", "bogus"])
    assert exc.value.code == 2


def test_budget_refusal(kp_file, capsys):
    assert main(["--budget", "2", "enumerate", kp_file, "--kind", "trivial"]) == 2
    err = capsys.readouterr().err
    assert "budget" in err


def test_shipped_sample_data_files():
    import pathlib

    root = pathlib.Path(__file__).resolve().parent.parent / "data"
    for name in ("kac_paljutkin", "k16_untwisted", "a8_paper",
                 "z4z4_no_nontrivial"):
        path = root / f"{name}.json"
        assert main(["validate", str(path)]) == 0
    # the shipped Kac-Paljutkin file matches the library builder bit-exactly
    from hopfqt.families import make_kac_paljutkin
    from hopfqt.serialize import data_to_json, dumps

    shipped = (root / "kac_paljutkin.json").read_text()
    assert shipped == dumps(data_to_json(make_kac_paljutkin()))
    # the negative sample enumerates to nothing but stays a valid datum
    neg = str(root / "z4z4_no_nontrivial.json")
    assert main(["enumerate", neg, "--kind", "special"]) == 0
