import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import bundled_tower
from pseudored import reps
from pseudored.errors import IncompatibleElement, NotCoprime, NotDiagonalizable
from pseudored.fields import random_unit
from pseudored.linalg import Matrix
from pseudored.subfields import Subfield, lambda_field


def sl2_random(T, seed):
    """A product of elementary matrices, so a genuinely generic SL_2 point."""
    rng = random.Random(repr(seed))
    g = reps.SL2Point.identity(T)
    for _ in range(3):
        g = g * reps.SL2Point.upper(random_unit(T, rng)) * reps.SL2Point.lower(random_unit(T, rng))
    return g


@pytest.mark.parametrize("name", ["p2_s4", "p2_s2_r2", "p3_s9"])
def test_LC_is_a_homomorphism(name):
    T = bundled_tower(name)
    for lam in (-3, -2, 1, 2, 3, 6):
        V = reps.build_LC(lam, T)
        assert V.dimension == lambda_field(lam, T).degree
        for i in range(3):
            u, v = random_unit(T, (name, lam, i)), random_unit(T, (name, lam, i, "b"))
            gu, gv = reps.GmPoint((u,)), reps.GmPoint((v,))
            assert reps.evaluate(V, gu * gv) == reps.evaluate(V, gu) @ reps.evaluate(V, gv)


@pytest.mark.parametrize("lam", [-4, -1, 0, 1, 2, 3, 4, 5, 12])
def test_LC_weight_is_lambda(lam):
    T = bundled_tower("p2_s4")
    V = reps.build_LC(lam, T)
    assert V.weight == lam
    (w, S), = reps.weight_decomposition(V, T)
    assert w == lam and S.is_full()
    # the split torus c acts by c^lam
    c = T.base.parse("t + 1")
    assert reps.evaluate(V, reps.GmPoint((T.scalar(c),))) == Matrix.scalar(T.base, V.dimension, c**lam)


@pytest.mark.parametrize("name", ["p2_s2", "p2_s4", "p3_s3"])
def test_SL2_irreps_are_homomorphisms(name):
    T = bundled_tower(name)
    for lam in range(0, 8):
        L = reps.build_SL2_irrep(lam, T)
        V = reps.build_LG(lam, T)
        assert L.dimension == reps.sl2_dim(lam, T.p)
        assert V.dimension == reps.sl2_dim(lam // T.p ** _nu(lam, T.p), T.p) * lambda_field(lam, T).degree
        g, h = sl2_random(T, (lam, 1)), sl2_random(T, (lam, 2))
        assert reps.evaluate(L, g * h) == reps.evaluate(L, g) @ reps.evaluate(L, h)
        assert reps.evaluate(V, g * h) == reps.evaluate(V, g) @ reps.evaluate(V, h)
        assert reps.evaluate(V, reps.SL2Point.identity(T)).is_identity()


def _nu(lam, p):
    n = 0
    while lam and lam % p == 0:
        lam //= p
        n += 1
    return n


def test_sympower_torus_weights():
    T = bundled_tower("p3_s3")
    x = T.gen("s")
    M = reps.evaluate(reps.SymPower(2, 3), reps.SL2Point.torus(x))
    assert [M.rows[i][i] for i in range(3)] == [x**2, T.one, x.inverse() ** 2]
    wts = sorted(w for w, S in reps.weight_decomposition(reps.build_SL2_irrep(5, T), T))
    # 5 = 2 + 1*3: weights (2,0,-2) + 3*(1,-1)
    assert wts == sorted(a + 3 * b for a in (2, 0, -2) for b in (1, -1))


def test_digits_and_dims():
    assert reps.digits(11, 2) == [1, 1, 0, 1]
    assert reps.sl2_dim(11, 2) == 8
    assert reps.sl2_dim(5, 3) == 6
    assert reps.sl2_dim(0, 5) == 1
    with pytest.raises(ValueError):
        reps.digits(-1, 2)


@settings(max_examples=15, deadline=None)
@given(st.sampled_from(["p2_s4", "p3_s9", "p2_s2_r4"]), st.integers(1, 20), st.integers(0, 10**6))
def test_twist_pair(name, lam, seed):
    T = bundled_tower(name)
    if lam % T.p == 0:
        with pytest.raises(NotCoprime):
            reps.twist_inverse_pair(lam, T)
        return
    tp = reps.twist_inverse_pair(lam, T)
    assert lam * tp.mu == 1 + tp.r * tp.pe
    S = reps.standard(T)
    sS = tp.sigma(S)
    u = reps.GmPoint((random_unit(T, seed),))
    assert reps.evaluate(tp.tau(sS), u) == reps.evaluate(S, u)
    assert reps.evaluate(tp.sigma(tp.tau(sS)), u) == reps.evaluate(sS, u)
    assert tp.sigma(tp.tau(S)).weight == 1 - tp.r * tp.pe * (lam - 1)


def test_product_rep():
    from pseudored.cli import data_path
    from pseudored.subfields import load_algebra

    A = load_algebra(data_path("towers", "sqrt_t_sqrt_u.algebra"))
    V = reps.build_LC((1, 1), A)
    assert V.dimension == 4
    pts = reps.gm_points(A, seed=0, n_random=2)
    assert all(len(p.values) == 2 for p in pts)
    for g, h in zip(pts, pts[1:]):
        assert reps.evaluate(V, g * h) == reps.evaluate(V, g) @ reps.evaluate(V, h)
    wts = reps.weight_decomposition(V, A.tower, nfactors=2)
    assert [w for w, _ in wts] == [(1, 1)]
    with pytest.raises(IncompatibleElement):
        reps.evaluate(V, reps.GmPoint((A.tower.gen("s"),)))


def test_restrict_to_levi_is_over_base():
    T = bundled_tower("p2_s4")
    V = reps.build_LG(3, T)
    mats = reps.restrict_to_levi(V, T)
    assert all(M.shape == (V.dimension, V.dimension) for M in mats)
    with pytest.raises(IncompatibleElement):
        reps.restrict_to_levi(V, T, points=[reps.SL2Point.upper(T.gen("s"))])


def test_sl2_point_requires_det_one():
    T = bundled_tower("p2_s2")
    with pytest.raises(Exception):
        reps.SL2Point(T.gen("s"), T.zero, T.zero, T.gen("s"))


def test_weight_decomposition_rejects_non_diagonal():
    T = bundled_tower("p2_s2")
    V = reps.standard(T)
    with pytest.raises(NotDiagonalizable):
        reps.weight_decomposition(V, T, bound=0)
    assert reps.standard(Subfield.full(T)).dimension == 2
