"""Command line behavior: exit codes, text output, JSON envelopes."""

import json

import pytest

from fourfold.cli import main
from fourfold.manifolds import LensSpace, lens_times_circle, rp4_complex, torus4_complex
from fourfold.serialize import emit_complex, validate_report


@pytest.fixture
def rp4_file(tmp_path):
    p = tmp_path / "rp4.json"
    p.write_text(emit_complex(rp4_complex()))
    return str(p)


@pytest.fixture
def t4_file(tmp_path):
    p = tmp_path / "t4.json"
    p.write_text(emit_complex(torus4_complex()))
    return str(p)


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_snf_text_and_json(tmp_path, capsys):
    f = tmp_path / "m.json"
    f.write_text("[[2,4],[6,8]]")
    code, out, _ = run(capsys, ["snf", str(f)])
    assert code == 0
    assert "invariant factors: 2 4" in out
    code, out, _ = run(capsys, ["--json", "snf", str(f)])
    assert code == 0
    doc = json.loads(out)
    assert validate_report(doc)
    assert doc["command"] == "snf"
    assert doc["result"]["diag"] == [2, 4]
    # byte-for-byte deterministic
    code, out2, _ = run(capsys, ["--json", "snf", str(f)])
    assert out2 == out


def test_homology_command(rp4_file, capsys):
    code, out, _ = run(capsys, ["homology", rp4_file])
    assert code == 0
    assert "H_0 = Z/2" in out
    assert "H_4 = Z" in out
    code, out, _ = run(capsys, ["homology", rp4_file, "--coeff", "lambda"])
    assert code == 0
    assert "H_0 = Z" in out


def test_group_homology_command(capsys):
    code, out, _ = run(capsys, ["group-homology", "--group", "cyclic:5", "--degree", "3"])
    assert code == 0
    assert "Z/5" in out
    code, out, _ = run(
        capsys,
        ["group-homology", "--group", "cyclic:4", "--w", "-1", "--degree", "2", "--oracle", "bar"],
    )
    assert code == 0
    assert "agrees" in out
    code, out, _ = run(capsys, ["group-homology", "--group", "cyclic:5*Z", "--degree", "1"])
    assert code == 0
    assert "Z + Z/5" in out


def test_lens_classify_exit_codes(capsys):
    code, out, _ = run(capsys, ["lens-classify", "5", "1", "2"])
    assert code == 1
    assert "NOT_EQUIVALENT" in out
    code, out, _ = run(capsys, ["lens-classify", "7", "1", "2"])
    assert code == 0
    assert "EQUIVALENT" in out
    # the alternate spelling drives the same handler
    code2, out2, _ = run(capsys, ["classify-lens", "7", "1", "2"])
    assert code2 == 0
    code, out, _ = run(capsys, ["--json", "lens-classify", "5", "1", "2"])
    assert code == 1
    doc = json.loads(out)
    assert validate_report(doc)
    assert doc["status"] == "negative"
    assert doc["result"]["verdict"] == "NOT_EQUIVALENT"


def test_lens_linking_command(capsys):
    code, out, _ = run(capsys, ["lens-linking", "7", "1", "2"])
    assert code == 0
    assert "unit=3" in out
    code, out, _ = run(capsys, ["lens-linking", "5", "1", "2"])
    assert code == 1


def test_em_torsion_command(t4_file, capsys):
    code, out, _ = run(capsys, ["--json", "em-torsion", t4_file, "3"])
    assert code == 0
    doc = json.loads(out)
    assert doc["result"]["invariants"] == {"free": 6, "torsion": [3, 3, 3, 3]}


def test_recover_m_command(t4_file, capsys):
    code, out, _ = run(capsys, ["recover-m", t4_file, "6:3,3,3,3"])
    assert code == 0
    assert "candidates: [3]" in out
    code, out, _ = run(capsys, ["recover-m", t4_file, "0:7"])
    assert code == 1


def test_ext_class_command(rp4_file, capsys):
    code, out, _ = run(capsys, ["--json", "ext-class", rp4_file])
    assert code == 0
    doc = json.loads(out)
    assert doc["result"]["ext_invariants"] == {"free": 0, "torsion": [2]}
    assert doc["result"]["class_trivial"] is False
    assert doc["result"]["sequence_exact"] is True


def test_classify_kreck_command(tmp_path, capsys):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    d = tmp_path / "d.json"
    a.write_text(json.dumps({"group": "cyclic:5*Z", "class_h4": [1]}))
    b.write_text(json.dumps({"group": "cyclic:5*Z", "class_h4": [2]}))
    d.write_text(json.dumps({"group": "cyclic:5*Z", "class_h4": [4]}))
    code, out, _ = run(capsys, ["classify-kreck", str(a), str(b)])
    assert code == 1
    assert "NOT_EQUIVALENT" in out
    code, out, _ = run(capsys, ["classify-kreck", str(a), str(d)])
    assert code == 0
    assert "EQUIVALENT" in out


def test_classify_aspherical_command(t4_file, capsys):
    code, out, _ = run(capsys, ["classify-aspherical", t4_file, "6:3,3,3,3"])
    assert code == 0
    assert "candidates: [3]" in out
    code, out, _ = run(
        capsys, ["classify-aspherical", t4_file, "6:3,3,3,3", "--inv2", "6:2,2,2,2"]
    )
    assert code == 1
    code, out, _ = run(
        capsys,
        [
            "classify-aspherical",
            t4_file,
            "10:",
            "--inv2",
            "10:",
            "--proj",
            "1",
            "--proj2",
            "1",
        ],
    )
    assert code == 0


def test_bordism_command(capsys):
    code, out, _ = run(capsys, ["bordism", "--group", "cyclic:2", "--w", "-1"])
    assert code == 0
    assert "Z/2 x Z/2" in out
    code, out, _ = run(capsys, ["--json", "bordism", "--group", "cyclic:5*Z"])
    assert code == 0
    doc = json.loads(out)
    assert doc["result"]["stable"] == {"free": 1, "torsion": []}
    assert doc["result"]["h4"] == {"free": 0, "torsion": [5]}


def test_hopf_check_command(rp4_file, capsys):
    code, out, _ = run(capsys, ["hopf-check", rp4_file])
    assert code == 0
    assert "passed: True" in out


def test_input_errors_exit_2(tmp_path, capsys):
    code, _, err = run(capsys, ["snf", str(tmp_path / "missing.json")])
    assert code == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{broken")
    code, _, err = run(capsys, ["snf", str(bad)])
    assert code == 2
    code, _, err = run(capsys, ["group-homology", "--group", "ring:3", "--degree", "1"])
    assert code == 2
    # a 2-complex has no degree-3 boundary to feed the twisting family
    from fourfold.complexes import presentation_complex
    from fourfold.groupring import cyclic_group

    pres = tmp_path / "pres.json"
    pres.write_text(emit_complex(presentation_complex(cyclic_group(3))))
    code, _, err = run(capsys, ["em-torsion", str(pres), "2"])
    assert code == 2


def test_json_error_envelope(tmp_path, capsys):
    code, out, _ = run(capsys, ["--json", "snf", str(tmp_path / "missing.json")])
    assert code == 2
    doc = json.loads(out)
    assert validate_report(doc)
    assert doc["status"] == "error"
    assert "message" in doc["result"]


def test_bad_usage_exit_2(capsys):
    assert main([]) == 2
    assert main(["lens-classify", "5", "1"]) == 2
    assert main(["no-such-command"]) == 2


def test_lens_times_circle_document_survives_cli_homology(tmp_path, capsys):
    f = tmp_path / "l72s1.json"
    f.write_text(emit_complex(lens_times_circle(LensSpace(7, 2))))
    code, out, _ = run(capsys, ["homology", str(f)])
    assert code == 0
    assert "H_1 = Z + Z/7" in out
    assert "H_4 = Z" in out
