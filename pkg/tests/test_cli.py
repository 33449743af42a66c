import shutil

import pytest

from conftest import bundled_tower
from pseudored import weil
from pseudored.cli import data_path, main
from pseudored.linalg import parse_matrix


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def body(out):
    lines = out.splitlines()
    assert lines[0].startswith("# seed=")
    return lines[1:]


def test_header_echoes_seed(capsys):
    code, out, _ = run(capsys, "field", "check", "--tower", "p2_s4")
    assert code == 0 and out.startswith("# seed=0\n")
    code, out, _ = run(capsys, "--seed", "7", "field", "check", "--tower", "p2_s4")
    assert out.startswith("# seed=7\n")


def test_field_check(capsys, tmp_path):
    code, out, _ = run(capsys, "field", "check", "--tower", "p2_s2_r4")
    assert code == 0 and "degree = 8" in out and "exponent = 2" in out
    bad = tmp_path / "sep.tower"
    bad.write_text("p = 2\nbase = t\ngen s : e = 1, power = t\ngen r : e = 1, power = t\n")
    code, out, _ = run(capsys, "field", "check", "--tower", str(bad))
    assert code == 1 and "FAIL" in out
    bad.write_text("p = 2\nbase = t\ngen s : e = one, power = t\n")
    assert run(capsys, "field", "check", "--tower", str(bad))[0] == 3
    assert run(capsys, "field", "check", "--tower", str(tmp_path / "missing.tower"))[0] == 3


def test_usage_errors(capsys):
    assert run(capsys, "orbits", "--box", "2")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "dim", "c", "--tower", "p2_s4")[0] == 2


def test_weil_matrix_round_trip(capsys):
    T = bundled_tower("p3_s9")
    code, out, _ = run(capsys, "weil", "matrix", "--tower", "p3_s9", "--element", "1 + t*s + s^4")
    assert code == 0
    M = parse_matrix(T.base, "\n".join(body(out)))
    assert M == weil.mult_matrix(T.parse("1 + t*s + s^4"))


def test_weil_symbolic(capsys):
    code, out, _ = run(capsys, "weil", "profile", "--tower", "p3_cube", "--symbolic")
    assert code == 0 and "v^2*c^3 + v*b^3 + a^3" in out


def test_weil_parse_error(capsys):
    assert run(capsys, "weil", "matrix", "--tower", "p2_s4", "--element", "s +* 1")[0] == 3


def test_dim_lines(capsys):
    code, out, _ = run(capsys, "dim", "g", "--tower", "p2_s4", "--lambda-range", "0..3", "--certify")
    assert code == 0
    assert body(out) == [
        "λ=0 dimLC=1 dimLM=1 dimLG=1 certified",
        "λ=1 dimLC=4 dimLM=2 dimLG=8 certified",
        "λ=2 dimLC=2 dimLM=2 dimLG=4 certified",
        "λ=3 dimLC=4 dimLM=4 dimLG=16 certified",
    ]
    code, out, _ = run(capsys, "--tsv", "dim", "c", "--algebra", "sqrt_t_sqrt_u", "--lambda", "1,2")
    assert code == 0 and body(out)[-1].split("\t")[-1] == "2"


def test_irrep_commands(capsys, tmp_path):
    code, out, _ = run(capsys, "irrep", "info", "--tower", "p2_s4", "--group", "sl2", "--lambda", "3")
    assert code == 0 and "dimension = 16" in out
    code, out, _ = run(capsys, "irrep", "build", "--tower", "p2_s2", "--group", "gm", "--lambda", "1", "--eval", "s + 1")
    assert code == 0 and len(body(out)) == 2
    code, out, _ = run(capsys, "irrep", "verify", "--tower", "p3_s3", "--group", "sl2", "--lambda", "4")
    assert code == 0 and "verdict = Irreducible" in out and "certificate" in out
    gens = tmp_path / "gens.txt"
    gens.write_text("1 | t\n0 | 1\n---\nt | 0\n0 | 1\n")
    code, out, _ = run(capsys, "irrep", "verify", "--tower", "p2_s2", "--gens", str(gens))
    assert code == 1 and "verdict = Reducible" in out
    gens.write_text("1 | t\n0\n")
    assert run(capsys, "irrep", "verify", "--tower", "p2_s2", "--gens", str(gens))[0] == 3


def test_orbits_command(capsys):
    code, out, _ = run(capsys, "orbits", "--action", "swap", "--box", "3", "--stub")
    assert code == 0 and body(out)[0] == "orbits=10 points=16 truncated=0"
    assert "same multiplicity" in out


def test_selftest_subset(capsys):
    code, out, _ = run(capsys, "selftest", "--only", "orbits", "--only", "product")
    assert code == 0 and "2/2 checks passed" in out


def test_corrupted_golden_names_the_file(capsys, tmp_path):
    golden = tmp_path / "golden"
    shutil.copytree(data_path("golden"), golden)
    target = golden / "orbits.txt"
    target.write_text(target.read_text().replace("orbits=", "orbitz=", 1))
    code, out, _ = run(capsys, "selftest", "--golden", str(golden), "--only", "orbits")
    assert code != 0 and str(target) in out
    target.write_bytes(b"\xff\xfe\x00garbage")
    code, out, _ = run(capsys, "selftest", "--golden", str(golden), "--only", "orbits")
    assert code != 0 and str(target) in out
    target.unlink()
    code, out, _ = run(capsys, "selftest", "--golden", str(golden), "--only", "orbits")
    assert code != 0 and str(target) in out


@pytest.mark.slow
def test_selftest_verdicts_do_not_depend_on_seed(capsys):
    code0, out0, _ = run(capsys, "--seed", "0", "selftest")
    code1, out1, _ = run(capsys, "--seed", "1", "selftest")
    assert code0 == code1 == 0
    assert body(out0) == body(out1)
