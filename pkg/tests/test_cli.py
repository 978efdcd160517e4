import os

import pytest

from tatedescent.catalog import module_M
from tatedescent.cli import main
from tatedescent.fileformat import dump_module


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_validate_ok_and_bad(tmp_path, capsys):
    good = tmp_path / "m.txt"
    good.write_text(dump_module(module_M()))
    code, out, _ = run(capsys, "validate", str(good))
    assert code == 0 and out.startswith("ok: module M over E(1)")
    bad = tmp_path / "bad.txt"
    bad.write_text("[module]\nalgebra: E1\nbasis: a 0\n[action]\nQ0: a -> zz\n")
    code, _, err = run(capsys, "validate", str(bad))
    assert code == 1 and f"{bad}:5:" in err
    broken = tmp_path / "broken.txt"
    broken.write_text("[module]\nalgebra: E1\nbasis: a 0\nbasis: b 1\nbasis: c 2\n"
                      "[action]\nQ0: a -> b\nQ0: b -> c\n")
    code, _, err = run(capsys, "validate", str(broken))
    assert code == 1 and "Q0" in err


def test_missing_file_is_input_error(capsys):
    code, _, err = run(capsys, "ext", "A1", "unit", "no_such_module.txt")
    assert code == 1 and "no such module" in err


def test_unknown_algebra(capsys):
    code, _, _ = run(capsys, "pic", "A7")
    assert code == 1


def test_usage_error_exit_code(capsys):
    assert main(["ext"]) == 1
    capsys.readouterr()


def test_ext_e1_unit_M_three_towers(capsys):
    code, out, _ = run(capsys, "ext", "E1", "unit", "Mpaper", "--window", "0:4",
                       "--format", "records")
    assert code == 0
    rows = [tuple(map(int, ln.split())) for ln in out.splitlines()[1:]]
    for s in range(5):
        assert sorted(t - s for ss, t, _ in rows if ss == s) == [-7, -5, -3]


def test_ext_a1_smax_tmax(capsys):
    code, out, _ = run(capsys, "ext", "A1", "unit", "unit", "--smax", "4", "--tmax", "12",
                       "--format", "records")
    assert code == 0
    assert "3 7 1" in out.splitlines()


def test_ext_svg_labels(tmp_path, capsys):
    out = tmp_path / "ext.svg"
    code, _, _ = run(capsys, "ext", "E1", "unit", "unit", "--window", "0:3", "--format",
                     "svg", "--labels", "--out", str(out))
    assert code == 0
    text = out.read_text()
    assert text.startswith("<svg") and "0,0" in text


def test_resolve_with_cache(tmp_path, capsys):
    cache = tmp_path / "cache"
    code, out, _ = run(capsys, "resolve", "A1", "joker", "--cache-dir", str(cache))
    assert code == 0 and "check: ok" in out
    assert len(os.listdir(cache)) == 1
    code, out2, _ = run(capsys, "resolve", "A1", "joker", "--cache-dir", str(cache))
    assert out2 == out


def test_reduce_tensor_restrict(capsys):
    code, out, _ = run(capsys, "tensor", "A1", "joker", "joker")
    assert code == 0 and out.count("basis:") == 25
    code, out, _ = run(capsys, "restrict", "A1", "joker")
    assert code == 0 and "algebra: E1" in out
    code, out, _ = run(capsys, "reduce", "A1", "joker")
    assert code == 0 and out.startswith("# stripped 0 free summand(s)")


def test_descent_unit_pages(capsys):
    code, out, _ = run(capsys, "descent", "A1", "unit", "--r", "2",
                       "--window=-3:1,-10:4,0:3", "--format", "records")
    assert code == 0
    assert "# page 1" in out and "# page 2" in out


def test_descent_abutment_report(capsys):
    code, out, _ = run(capsys, "descent", "A1", "unit", "--abutment",
                       "--window=-3:1,-10:4,0:3")
    assert code == 0
    assert "# reconciliation" in out and "contradiction" not in out


def test_descent_svg_needs_out(capsys, tmp_path):
    code, _, err = run(capsys, "descent", "A1", "unit", "--window=-2:0,-6:2,0:2",
                       "--format", "svg")
    assert code == 1 and "--out" in err
    code, _, _ = run(capsys, "descent", "A1", "unit", "--window=-2:0,-6:2,0:2",
                     "--format", "svg", "--out", str(tmp_path / "pages"), "--labels")
    assert code == 0
    names = sorted(os.listdir(tmp_path / "pages"))
    assert "E1_n0.svg" in names and "E2_n0.svg" in names


def test_descent_M_undetermined(capsys):
    code, out, _ = run(capsys, "descent", "A1", "Mpaper", "--window=-2:0,-10:4,0:2")
    assert code == 0 and out.startswith("status: undetermined")


def test_descent_N_variants(capsys):
    code, out, _ = run(capsys, "descent", "A1", "Npaper", "--window=-2:0,-10:4,0:2")
    assert code == 0
    assert out.count("# E_1") == 4 and "variant 3" in out


def test_pic(capsys):
    code, out, _ = run(capsys, "pic", "A1")
    assert code == 0
    assert out.splitlines()[0] == "Z ⊕ Z ⊕ Z/2; generators [1]-shift, Ω, joker"
    assert "status: determined" in out


def test_lift_modes(capsys, tmp_path):
    code, out, _ = run(capsys, "lift", "A1", "Npaper", "census", "--save", str(tmp_path))
    assert code == 0 and out.startswith("census: 8")
    assert len(os.listdir(tmp_path)) == 8
    code, out, _ = run(capsys, "validate", str(tmp_path / "lift0.txt"))
    assert code == 0
    code, out, _ = run(capsys, "lift", "A1", "Mpaper", "census")
    assert out.startswith("census: 0")
    code, out, _ = run(capsys, "lift", "A1", "Npaper", "bound")
    assert out.startswith("bound: 8")
    code, out, _ = run(capsys, "lift", "A1", "Mpaper", "obstruction")
    assert out.startswith("obstruction: nonempty")
    code, out, _ = run(capsys, "lift", "A1", "joker", "bound")
    assert code == 1


def test_chart_rerenders_records(tmp_path, capsys):
    rec = tmp_path / "ext.txt"
    assert main(["ext", "E1", "unit", "unit", "--window", "0:3", "--format", "records",
                 "--out", str(rec)]) == 0
    code, out, _ = run(capsys, "chart", str(rec))
    assert code == 0 and out.startswith("# Ext_E(1)")
    bad = tmp_path / "bad.txt"
    bad.write_text("# chart x\n1 two 3\n")
    code, _, err = run(capsys, "chart", str(bad))
    assert code == 1 and ":2:" in err


@pytest.mark.parametrize("argv", [
    ["ext", "A1", "unit", "unit", "--smax", "6", "--tmax", "16"],
    ["descent", "A1", "unit", "--window=-3:1,-10:4,0:3"],
    ["pic", "A1"],
    ["lift", "A1", "Npaper", "bound"],
])
def test_outputs_are_deterministic(argv, capsys):
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second and first[0] == 0
