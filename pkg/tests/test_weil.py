import random

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from conftest import bundled_tower
from oracles import poly_mod_p, sympy_det_mod_p
from pseudored import weil
from pseudored.errors import ZeroElement
from pseudored.fields import random_unit
from pseudored.linalg import format_matrix


def generic_rows(T):
    M = weil.mult_matrix(weil.generic_element(T))
    return [[str(x) for x in r] for r in M.rows]


def test_cube_root_tower_generic_matrix():
    T = bundled_tower("p3_cube")
    rows = generic_rows(T)
    assert rows == [["a", "v*c", "v*b"], ["b", "a", "v*c"], ["c", "b", "a"]]
    prof = weil.coordinate_profile(weil.generic_element(T))
    gens = sympy.symbols("a b c v")
    want = poly_mod_p("a^3 + v*b^3 + v^2*c^3", 3, gens)
    assert poly_mod_p(str(prof.d_hat), 3, gens) == want
    assert sympy_det_mod_p(rows, 3).as_expr() == want.as_expr()


def test_biquadratic_tower_generic_matrix():
    T = bundled_tower("p2_biquad")
    prof = weil.coordinate_profile(weil.generic_element(T))
    gens = sympy.symbols("a b c d x y")
    d_hat = poly_mod_p("a^2 + x*b^2 + y*c^2 + x*y*d^2", 2, gens)
    assert poly_mod_p(str(prof.d_hat), 2, gens) == d_hat
    det = sympy_det_mod_p(generic_rows(T), 2)
    assert sympy.Poly(det.as_expr(), *gens, modulus=2) == d_hat**2


@pytest.mark.parametrize("name", ["p3_cube", "p2_biquad", "p2_s4", "p2_s2_r4", "p3_s9"])
def test_profile_identities_on_samples(name):
    T = bundled_tower(name)
    pe = T.p**T.exponent
    for i in range(6):
        u = random_unit(T, (name, i))
        M = weil.mult_matrix(u)
        assert M.column(0) == u.coords
        prof = weil.coordinate_profile(u)
        assert prof.d_hat == weil.d_hat(u)
        assert prof.det**pe == prof.d_hat**T.degree
        assert weil.inverse_coordinate_identity_check(u)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 10**6))
def test_mult_matrix_is_a_homomorphism(a, b):
    T = bundled_tower("p2_s2_r2")
    u, v = random_unit(T, a), random_unit(T, b)
    assert weil.mult_matrix(u * v) == weil.mult_matrix(u) @ weil.mult_matrix(v)
    assert weil.d_hat(u * v) == weil.d_hat(u) * weil.d_hat(v)
    assert weil.mult_matrix(u.inverse()) == weil.mult_matrix(u).inverse()


def test_torus_embedding_is_scalar():
    T = bundled_tower("p3_s3")
    g = weil.torus_embed(T.base.parse("v + 1") if "v" in T.base.names else T.base.parse("t + 1"), T)
    assert weil.mult_matrix(g).is_scalar()
    with pytest.raises(ZeroElement):
        weil.torus_embed(0, T)
    with pytest.raises(ZeroElement):
        weil.WeilGroupPoint.of(T.zero)


def test_generic_element_symbols_avoid_clashes():
    T = bundled_tower("p2_biquad")
    g = weil.generic_element(T, ["e1", "e2", "e3", "e4"])
    assert "e4" in format_matrix(weil.mult_matrix(g))
    with pytest.raises(ValueError):
        weil.generic_element(T, ["x", "b", "c", "d"])
