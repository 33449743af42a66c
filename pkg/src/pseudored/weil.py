"""R_{k'/k}(G_m) as an explicit matrix group over k.

A point of C(k) = (k')^x acts on k' (the standard module) by multiplication;
taking coordinates in the monomial basis (first basis vector 1) gives a q x q
matrix over k.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import NotScalarPower, ZeroElement
from .fields import FieldElement, RatFunc, Tower
from .linalg import Matrix, block_diag, det
from .subfields import Subfield


@dataclass(frozen=True)
class WeilGroupPoint:
    """A k-point of R_{k'/k}(G_m), i.e. a nonzero element ``u`` of k'."""

    tower: Tower
    u: FieldElement

    def __post_init__(self):
        if self.u.tower is not self.tower:
            raise ZeroElement("point element is not in the given tower")
        if self.u.is_zero():
            raise ZeroElement("0 is not a point of R(G_m)")

    @classmethod
    def of(cls, u: FieldElement) -> "WeilGroupPoint":
        return cls(u.tower, u)

    def __mul__(self, other: "WeilGroupPoint") -> "WeilGroupPoint":
        return WeilGroupPoint(self.tower, self.u * other.u)

    def inverse(self) -> "WeilGroupPoint":
        return WeilGroupPoint(self.tower, self.u.inverse())

    def __pow__(self, n: int) -> "WeilGroupPoint":
        return WeilGroupPoint(self.tower, self.u**n)


@dataclass(frozen=True)
class CoordinateProfile:
    alpha_hat: tuple
    d_hat: RatFunc
    det: RatFunc


def _point(g) -> WeilGroupPoint:
    if isinstance(g, WeilGroupPoint):
        return g
    if isinstance(g, FieldElement):
        return WeilGroupPoint.of(g)
    raise TypeError(f"expected a WeilGroupPoint, got {g!r}")


def mult_matrix(g) -> Matrix:
    """Column i is the coordinate vector of ``u * m_i``."""
    g = _point(g)
    return Matrix.from_columns(g.tower.base, g.tower.mult_columns(g.u))


def coordinate_profile(g) -> CoordinateProfile:
    """alpha-hat (first column), d-hat (scalar of M^(p^e)) and det of the point's matrix."""
    g = _point(g)
    t = g.tower
    M = mult_matrix(g)
    pe = t.p**t.exponent
    P = M**pe
    if not P.is_scalar():
        raise NotScalarPower("p^e-th power of a multiplication matrix is not scalar")
    d_hat = P[0, 0]
    dt = det(M)
    if dt**pe != d_hat**t.degree:
        raise NotScalarPower("det^(p^e) != d_hat^q")
    return CoordinateProfile(M.column(0), d_hat, dt)


def d_hat(g) -> RatFunc:
    """The character u -> u^(p^e), read off in k."""
    g = _point(g)
    return g.u.frobenius(g.tower.exponent).to_base()


def inverse_coordinate_identity_check(g) -> bool:
    """Check coords(u^-1) == coords(u^(p^e - 1) / d_hat(u)) exactly."""
    g = _point(g)
    t = g.tower
    prof = coordinate_profile(g)
    lhs = g.u.inverse()
    rhs = (g.u ** (t.p**t.exponent - 1)) * prof.d_hat.inverse()
    return lhs.coords == rhs.coords


def torus_embed(c, tower: Tower) -> WeilGroupPoint:
    """The canonical G_m(k) inside R_{k'/k}(G_m): c |-> c * 1."""
    c = tower.base(c)
    if c.is_zero():
        raise ZeroElement("torus_embed needs c != 0")
    return WeilGroupPoint(tower, tower.scalar(c))


@dataclass(frozen=True)
class ProductPoint:
    """A point of prod_i R_{k_i/k}(G_m) with the k_i subfields of one ambient tower."""

    factors: tuple[Subfield, ...]
    values: tuple[FieldElement, ...]

    def __post_init__(self):
        if len(self.factors) != len(self.values):
            raise ZeroElement("one value per factor field is required")
        for F, x in zip(self.factors, self.values):
            if x.is_zero():
                raise ZeroElement("factor value is zero")
            if not F.contains(x):
                raise ZeroElement(f"{x} does not lie in its factor field")

    def __mul__(self, other: "ProductPoint") -> "ProductPoint":
        return ProductPoint(self.factors, tuple(a * b for a, b in zip(self.values, other.values)))


def product_mult_matrix(g: ProductPoint) -> Matrix:
    """Block-diagonal action on the product of the factor fields."""
    tower = g.factors[0].ambient
    return block_diag(tower.base, [F.mult_matrix(x) for F, x in zip(g.factors, g.values)])


def standard_generators(tower: Tower, extra: Sequence[FieldElement] = ()) -> list[Matrix]:
    """Multiplication matrices of the basis monomials (plus any extra points)."""
    return [mult_matrix(b) for b in tower.basis()[1:]] + [mult_matrix(x) for x in extra]


def generic_element(tower: Tower, symbols: Sequence[str] | None = None) -> FieldElement:
    """sum_i c_i m_i over k(c_1..c_q), the same tower with the coefficients adjoined as variables.

    Its multiplication matrix and profile are the symbolic forms of the
    coordinate functions.
    """
    from .fields import GeneratorSpec, TowerDescriptor, validate_tower

    q = tower.degree
    taken = set(tower.base.names) | set(tower.names)
    if symbols is None:
        letters = "abcdefghijklmnopqrstuvwxyz"
        symbols = [letters[i] for i in range(q)] if q <= 26 else []
        if len(symbols) != q or taken & set(symbols):
            symbols = [f"c{i}" for i in range(q)]
            while taken & set(symbols):
                symbols = ["_" + x for x in symbols]
    symbols = tuple(symbols)
    if len(symbols) != q or taken & set(symbols):
        raise ValueError("need one fresh symbol per basis element")
    chain = tower.tower_chain()[1:]
    gens = []
    for t in chain:
        j = len(t.names) - 1
        power = t.pe_powers[j]
        gens.append(GeneratorSpec(t.names[j], t.exps[j], _element_text(power)))
    ext = validate_tower(TowerDescriptor(tower.p, tower.base.names + symbols, tuple(gens)))
    g = ext.zero
    for i, c in enumerate(symbols):
        g = g + ext.basis_element(i) * ext.scalar(ext.base.gen(c))
    return g


def _element_text(x: FieldElement) -> str:
    parts = []
    for i, c in enumerate(x.coords):
        if not c.is_zero():
            parts.append(f"({c})*({x.tower.monomial_str(i)})")
    return " + ".join(parts) or "0"
