import json
import os
import subprocess
import sys

from kleinlens import cli, verify


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_classify_examples(capsys):
    code, out, _ = run(capsys, "classify", 8, 3)
    assert code == 0 and "klein_bottle: yes, n=2, sign=-" in out
    code, out, _ = run(capsys, "classify", 2, 1)
    assert code == 0 and "projective_plane: yes" in out and "klein_bottle: no" in out


def test_classify_non_coprime_is_a_usage_error(capsys):
    code, out, err = run(capsys, "classify", 6, 4)
    assert code == 2 and out == "" and "gcd(6, 4)" in err


def test_bad_arguments_exit_2(capsys):
    assert run(capsys, "classify", "x", 1)[0] == 2
    assert run(capsys, "nonsense")[0] == 2
    assert run(capsys)[0] == 2
    assert run(capsys, "embed", 1, "?", "handles")[0] == 2
    assert run(capsys, "verify", 0, 4)[0] == 2
    assert run(capsys, "filling", 0, 0)[0] == 2


def test_help_exits_0(capsys):
    assert run(capsys, "--help")[0] == 0


def test_filling_examples(capsys):
    code, out, _ = run(capsys, "filling", 1, 1)
    assert code == 0 and "H1: Z_4\n" in out and "cyclic: yes" in out
    code, out, _ = run(capsys, "filling", 2, 2)
    assert code == 0 and "H1: Z_2 + Z_4" in out and "not a lens-space filling" in out
    code, out, _ = run(capsys, "filling", 1, 3)
    assert code == 0 and "group_order: 12" in out and "abelian: no" in out


def test_filling_cap_gives_partial_report(capsys):
    code, out, _ = run(capsys, "filling", 10, 11, "--cap", 100)
    assert code == 0 and "partial report" in out and "H1: Z_40" in out
    assert "abelian:" not in out


def test_filling_torsion_for_zero_classes(capsys):
    code, out, _ = run(capsys, "filling", 3, 0)
    assert code == 0 and "torsion.exact_order: 6" in out
    code, out, _ = run(capsys, "filling", 0, 2)
    assert code == 0 and "torsion.exact_order: unverified" in out


def test_reports_are_byte_identical(capsys):
    for argv in (("classify", 12, 7), ("filling", 2, 3), ("verify", 1, 4)):
        first = run(capsys, *argv)[1]
        assert run(capsys, *argv)[1] == first


def test_json_format(capsys):
    code, out, _ = run(capsys, "classify", 8, 3, "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["status"] == "ok"
    assert dict(doc["results"])["klein_bottle"] == "yes, n=2, sign=-"


def test_embed_lens_model(capsys, tmp_path):
    code, out, _ = run(capsys, "embed", 1, "-", "lens_model", 64, tmp_path)
    assert code == 0
    assert "euler_characteristic: 0" in out and "check.seams: pass" in out
    assert "check.injective: pass" in out
    assert sorted(os.listdir(tmp_path)) == ["klein_L4_1.meta", "klein_L4_1.off", "klein_L4_1_r3.off"]


def test_embed_files_are_byte_identical(capsys, tmp_path):
    run(capsys, "embed", 2, "+", "lens_model", 16, tmp_path / "a")
    run(capsys, "embed", 2, "+", "lens_model", 16, tmp_path / "b")
    for name in os.listdir(tmp_path / "a"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_embed_handles(capsys, tmp_path):
    code, out, _ = run(capsys, "embed", 5, "+", "handles", tmp_path)
    assert code == 0
    assert "boundary_class: -11*mu+20*lambda@HeegaardSide2" in out
    assert "mu1_image: -11*mu+20*lambda@HeegaardSide2" in out
    assert (tmp_path / "handles_report.txt").read_text() == out


def test_embed_two_moebius(capsys, tmp_path):
    code, out, _ = run(capsys, "embed", 2, "+", "two_moebius", tmp_path)
    assert code == 0 and "band1_boundary_on_side2: -1*mu+2*lambda@HeegaardSide2" in out


def test_embed_seifert_writes_report(capsys, tmp_path):
    code, _, _ = run(capsys, "embed", 3, "-", "seifert", 8, tmp_path)
    assert code == 0 and (tmp_path / "seifert_report.txt").exists()


def test_embed_seam_failure_exits_1(capsys, tmp_path):
    # a negative tolerance cannot be met, so the seam check must fail
    code, out, _ = run(capsys, "embed", 1, "+", "lens_model", 8, tmp_path, "--tolerance", "-1")
    assert code == 1 and "check.seams: FAIL" in out


def test_verify_minimal(capsys):
    code, out, err = run(capsys, "verify", 1, 4)
    assert code == 0 and "status: ok" in out and err == ""


def test_verify_timing_goes_to_stderr(capsys):
    code, out, err = run(capsys, "verify", 1, 4, "--timing")
    assert code == 0 and "time.total" in err and "time" not in out.replace("timing", "")


def test_verify_fault_injection(capsys, monkeypatch):
    def broken(max_n, max_p):
        verify._require(False, "injected fault")

    monkeypatch.setattr(verify, "SUITES", verify.SUITES[:2] + [broken])
    code, out, _ = run(capsys, "verify", 1, 4)
    assert code == 1
    assert "first_counterexample: broken: injected fault" in out


def test_console_entry_point_runs():
    proc = subprocess.run([sys.executable, "-m", "kleinlens.cli", "classify", "4", "7"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and "space: L(4,3)" in proc.stdout


def test_verify_full_sweep(capsys):
    code, out, _ = run(capsys, "verify", 20, 200)
    assert code == 0 and "suites_passed: 13/13" in out
