import pytest

from conftest import bundled_tower
from pseudored import meataxe, reps
from pseudored.errors import GeneratorCountMismatch, NonCommutingGenerators
from pseudored.linalg import Matrix
from pseudored.meataxe import (
    GeneratorSet,
    enveloping_dimension,
    generator_set,
    hom_matrices,
    hom_space,
    is_irreducible,
    is_irreducible_commutative,
    is_irreducible_norton,
    isotypic_check,
    replay_certificate,
)


def sl2_gens(rep, T, seed=0):
    return generator_set(rep, T, seed)


def assert_witness(verdict, gens):
    assert verdict.kind == "Reducible"
    W = verdict.witness
    assert 0 < W.dim < W.ambient_dim
    assert W.is_invariant(gens.gens)


def test_verdicts_refuse_truth_testing():
    T = bundled_tower("p2_s2")
    v = is_irreducible_commutative(generator_set(reps.standard(T), T))
    with pytest.raises(TypeError):
        bool(v)


class TestCommutative:
    @pytest.mark.parametrize("name", ["p2_s2", "p2_s4", "p2_s2_r2", "p3_s9"])
    def test_standard_module_is_simple(self, name):
        T = bundled_tower(name)
        gs = generator_set(reps.standard(T), T)
        v = is_irreducible_commutative(gs)
        assert v.kind == "Irreducible"
        assert v.certificate["algebra_dim"] == T.degree
        assert replay_certificate(gs, v.certificate)

    def test_frobenius_twist_of_standard_is_reducible(self):
        # u -> u^2 on k' only sees the subfield k'^2, of half the degree
        T = bundled_tower("p2_s4")
        gs = generator_set(reps.Twist(2, reps.standard(T)), T)
        assert enveloping_dimension(gs) == 2
        assert_witness(is_irreducible_commutative(gs), gs)

    def test_nilpotent_algebra_is_reducible(self):
        T = bundled_tower("p3_s3")
        F = T.base
        t = F.gen(0)
        g = Matrix(F, [[F.one, t], [F.zero, F.one]])
        h = Matrix(F, [[t, F.one], [F.zero, t]])
        gs = GeneratorSet([g, h])
        assert_witness(is_irreducible_commutative(gs), gs)

    def test_rejects_noncommuting(self):
        T = bundled_tower("p2_s2")
        with pytest.raises(NonCommutingGenerators):
            is_irreducible_commutative(sl2_gens(reps.build_LG(1, T), T))


class TestNorton:
    @pytest.mark.parametrize("name,lam", [("p2_s2", 1), ("p2_s2", 3), ("p2_s4", 2), ("p3_s3", 4), ("p3_s3", 2)])
    def test_LG_irreducible_with_replayable_certificate(self, name, lam):
        T = bundled_tower(name)
        gs = sl2_gens(reps.build_LG(lam, T), T)
        v = is_irreducible_norton(gs, seed=0)
        assert v.kind == "Irreducible"
        assert replay_certificate(gs, v.certificate)
        # a certificate for other generators does not replay
        bad = dict(v.certificate, v=["0"] * gs.dim)
        assert not replay_certificate(gs, bad)

    def test_direct_sum_is_reducible(self):
        T = bundled_tower("p3_s3")
        V = reps.DirectSum(reps.build_LG(1, T), reps.build_LG(0, T))
        gs = sl2_gens(V, T)
        assert_witness(is_irreducible_norton(gs), gs)

    def test_char_two_square_is_reducible(self):
        # Sym^2 in characteristic 2 contains the span of x^2, y^2
        T = bundled_tower("p2_s2")
        gs = sl2_gens(reps.weil_restrict_rep(reps.SymPower(2, 2), reps.Subfield.full(T)), T)
        assert_witness(is_irreducible_norton(gs), gs)

    def test_enveloping_dimension_of_natural_module(self):
        T = bundled_tower("p2_s2")
        gs = sl2_gens(reps.build_LG(1, T), T)
        # the commutant is k', so the enveloping algebra is M_2(k'), of k-dimension 8
        assert enveloping_dimension(gs) == 8

    def test_zero_budget_is_inconclusive(self):
        T = bundled_tower("p2_s2")
        gs = sl2_gens(reps.build_LG(1, T), T)
        v = is_irreducible_norton(gs, budget=0)
        assert v.kind == "Inconclusive"

    def test_dispatch(self):
        T = bundled_tower("p2_s4")
        assert is_irreducible(generator_set(reps.standard(T), T)).certificate["method"] == "commutative"
        assert is_irreducible(sl2_gens(reps.build_LG(1, T), T)).certificate["method"] == "norton"

    def test_seed_changes_nothing_in_the_verdict(self):
        T = bundled_tower("p3_s3")
        V = reps.build_LG(5, T)
        kinds = {is_irreducible_norton(sl2_gens(V, T, s), seed=s).kind for s in range(3)}
        assert kinds == {"Irreducible"}


class TestHom:
    def test_end_of_standard_is_the_field(self):
        T = bundled_tower("p2_s2_r2")
        gs = generator_set(reps.standard(T), T)
        assert hom_space(gs, gs).dim == T.degree

    @pytest.mark.parametrize("lam", [1, 2, 3])
    def test_matches_direct_system(self, lam):
        T = bundled_tower("p2_s2")
        L = reps.build_SL2_irrep(lam, T)
        A = meataxe.GeneratorSet(reps.restrict_to_levi(L, T))
        V = reps.build_LG(lam, T)
        B = meataxe.GeneratorSet(reps.restrict_to_levi(V, T))
        fast = hom_matrices(A, B)
        direct = meataxe._hom_direct(A, B)
        assert len(fast) == len(direct)
        for X in fast:
            assert all(X @ a == b @ X for a, b in zip(A.gens, B.gens))

    def test_isotypic(self):
        T = bundled_tower("p2_s2")
        L = reps.build_SL2_irrep(1, T)
        LL = reps.DirectSum(L, L)
        LT = reps.DirectSum(L, reps.Trivial("sl2", "tower", T))
        gL = meataxe.GeneratorSet(reps.restrict_to_levi(L, T))
        r = isotypic_check(gL, meataxe.GeneratorSet(reps.restrict_to_levi(LL, T)))
        assert r.isotypic and r.multiplicity == 2
        r = isotypic_check(gL, meataxe.GeneratorSet(reps.restrict_to_levi(LT, T)))
        assert not r.isotypic

    def test_generator_count_mismatch(self):
        T = bundled_tower("p2_s2")
        gs = generator_set(reps.standard(T), T)
        with pytest.raises(GeneratorCountMismatch):
            hom_matrices(gs, GeneratorSet(gs.gens[:1]))
