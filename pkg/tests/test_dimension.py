import pytest

from conftest import bundled_tower
from pseudored import dimension as dm
from pseudored.cli import data_path
from pseudored.errors import AmbientMismatch, MissingTableEntry, NotDominant, ParseError
from pseudored.subfields import load_algebra


def test_a1_dim_is_product_of_digits():
    assert [dm.a1_dim(n, 2) for n in range(8)] == [1, 2, 2, 4, 2, 4, 4, 8]
    assert [dm.a1_dim(n, 3) for n in range(6)] == [1, 2, 3, 2, 4, 6]
    with pytest.raises(NotDominant):
        dm.a1_dim(-1, 2)


def test_dim_LC_single_field():
    T = bundled_tower("p2_s8")
    assert [dm.dim_LC(l, T) for l in (1, 2, 4, 8, 16, -6, 0)] == [8, 4, 2, 1, 1, 4, 1]
    with pytest.raises(AmbientMismatch):
        dm.dim_LC((1, 2), T)


def test_dim_LC_product():
    A = load_algebra(data_path("towers", "sqrt_t_sqrt_u.algebra"))
    assert dm.dim_LC((1, 1), A) == 4
    assert dm.dim_LC((1, 2), A) == 2
    assert dm.dim_LC((2, 2), A) == 1
    assert dm.dim_LC((0, -3), A) == 2
    with pytest.raises(AmbientMismatch):
        dm.dim_LC(1, A)


def test_report_line_format():
    T = bundled_tower("p2_s4")
    r = dm.dim_LG(3, T, dm.LeviDescriptor.a1_power(2))
    assert r.line() == "λ=3 dimLC=4 dimLM=4 dimLG=16"
    assert r.tsv() == "3\t4\t4\t16\t-"
    r = dm.dim_LG(2, T, dm.LeviDescriptor.torus(2), certify=True)
    assert r.certified and r.line().endswith(" certified")


@pytest.mark.parametrize("name", ["p2_s2", "p2_s4"])
def test_certified_sl2_dimensions(name):
    T = bundled_tower(name)
    for lam in range(0, 8):
        r = dm.dim_LG(lam, T, dm.LeviDescriptor.a1_power(2), certify=True)
        assert r.dim_LG == r.dim_LC * r.dim_LM
        assert r.certified


def test_certification_cap():
    T = bundled_tower("p2_s8")
    r = dm.dim_LG(7, T, dm.LeviDescriptor.a1_power(2), certify=True, cap=8)
    assert not r.certified and any("cap" in n for n in r.notes)


def test_table_levi(tmp_path):
    f = tmp_path / "levi.txt"
    f.write_text("# weights of a rank 2 Levi\n1,0 : 3\n0,1 : 3\n1,1 : 8\n")
    levi = dm.LeviDescriptor.from_table(2, f)
    assert dm.dim_LM((1, 1), levi) == 8
    with pytest.raises(MissingTableEntry):
        dm.dim_LM((2, 0), levi)
    f.write_text("1,0 : three\n")
    with pytest.raises(ParseError):
        dm.load_levi_table(f)
