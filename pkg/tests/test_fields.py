import random

import pytest
from hypothesis import given, settings, strategies as st

from pseudored.errors import DivisionByZero, NotPrime, NotPurelyInseparable, ParseError, TowerMismatch
from pseudored.fields import (
    base_field,
    is_pth_power,
    make_tower,
    parse_tower_text,
    pth_root,
    random_element,
    validate_tower,
)

F2 = base_field(2, ("t", "u"))
F3 = base_field(3, ("t",))

seeds = st.integers(min_value=0, max_value=10**6)


def rf(F, seed, deg=2):
    return F.random(random.Random(seed), deg)


class TestBaseField:
    @settings(max_examples=60, deadline=None)
    @given(seeds, seeds, seeds)
    def test_field_axioms(self, a, b, c):
        x, y, z = rf(F2, a), rf(F2, b), rf(F2, c)
        assert (x + y) + z == x + (y + z)
        assert x * (y + z) == x * y + x * z
        assert x * y == y * x
        if not x.is_zero():
            assert x * x.inverse() == F2.one

    @settings(max_examples=40, deadline=None)
    @given(seeds, seeds)
    def test_frobenius_is_additive(self, a, b):
        x, y = rf(F3, a), rf(F3, b)
        assert (x + y).frobenius() == x.frobenius() + y.frobenius()
        assert (x + y) ** 3 == x**3 + y**3

    def test_canonical_form(self):
        t = F3.gen("t")
        x = (t**2 - 1) / (2 * t + 2)
        assert x == (t - 1) * F3(2)
        assert str(x) == "2*t + 1"
        assert hash((t * t) / t) == hash(t)
        assert str((t + 1) / (2 * t)) == "(2*t + 2)/(t)"  # monic denominator

    def test_division_by_zero(self):
        with pytest.raises(DivisionByZero):
            F2.one / F2.zero

    def test_parse(self):
        t = F2.gen("t")
        assert F2.parse("t^2 + t*u") == t**2 + t * F2.gen("u")
        assert F2.parse("1/(t+1)") == (t + 1).inverse()
        with pytest.raises(ParseError):
            F2.parse("t + w")
        with pytest.raises(ParseError):
            F2.parse("t^(1/2)")

    def test_p_components_reassemble(self):
        rng = random.Random(3)
        for nu in (1, 2):
            for _ in range(10):
                a = F2.random(rng, 3)
                comps = F2.p_components(a, nu)
                P = 2**nu
                back = F2.zero
                for b, c in comps.items():
                    mono = F2.one
                    for name, e in zip(F2.names, b):
                        mono = mono * F2.gen(name) ** int(e)
                    back = back + c**P * mono
                assert back == a

    def test_pth_power_detection(self):
        t = F3.gen("t")
        assert is_pth_power(t**3 + 1) == t + 1
        assert is_pth_power(t) is None
        assert is_pth_power((t**3 + 2) / t**6) == (t + 2) / t**2

    def test_not_prime(self):
        with pytest.raises(NotPrime):
            base_field(4, ("t",))


class TestTowers:
    def test_degree_and_exponent(self, towers):
        expect = {"p2_s2": (2, 1), "p2_s4": (4, 2), "p2_s8": (8, 3), "p2_s2_r2": (4, 1),
                  "p2_s2_r4": (8, 2), "p3_s3": (3, 1), "p3_s9": (9, 2), "p2_biquad": (4, 1)}
        for name, (q, e) in expect.items():
            assert (towers[name].degree, towers[name].exponent) == (q, e), name

    def test_nested_generator_exponent(self):
        T = make_tower(2, ["t"], [("s", 1, "t"), ("r", 1, "s")])
        assert T.degree == 4 and T.exponent == 2
        r = T.gen("r")
        assert r**4 == T.scalar(T.base.gen("t"))

    def test_rejects_separable_or_redundant(self):
        with pytest.raises(NotPurelyInseparable) as exc:
            make_tower(2, ["t"], [("s", 1, "t"), ("r", 1, "t")])
        assert exc.value.witness is not None
        with pytest.raises(NotPurelyInseparable):
            make_tower(2, ["t"], [("s", 1, "t^2")])
        with pytest.raises(NotPrime):
            make_tower(6, ["t"], [("s", 1, "t")])

    def test_tower_file_rejects_unknown_identifiers(self):
        with pytest.raises(ParseError):
            validate_tower(parse_tower_text("p = 2\nbase = t\ngen s : e = 1, power = w\n"))
        with pytest.raises(ParseError):
            parse_tower_text("p = 2\nbase = t\ncolour = blue\n")
        with pytest.raises(ParseError):
            parse_tower_text("base = t\n")

    def test_basis_order_first_generator_fastest(self, towers):
        T = towers["p2_biquad"]
        assert [T.monomial_str(i) for i in range(4)] == ["1", "s", "u", "s*u"]

    @settings(max_examples=30, deadline=None)
    @given(seeds, seeds)
    def test_tower_arithmetic(self, a, b):
        from conftest import bundled_tower

        T = bundled_tower("p2_s2_r4")
        x, y = random_element(T, a), random_element(T, b)
        assert x * y == y * x
        assert (x + y) ** 2 == x**2 + y**2
        if not x.is_zero():
            assert x * x.inverse() == T.one
            assert x.inverse() == x.inverse(fast=True)
        assert x.frobenius(T.exponent).in_base()

    def test_pth_root_in_tower(self, towers):
        T = towers["p2_s2_r4"]
        rng = random.Random(5)
        for _ in range(10):
            x = random_element(T, rng)
            assert pth_root(x**2) == x
        assert pth_root(T.gen("s")) is None

    def test_mixing_towers_fails(self, towers):
        with pytest.raises(TowerMismatch):
            towers["p2_s2"].gen("s") + towers["p2_s4"].gen("s")
