"""Representations as evaluatable recipes.

A recipe is a small immutable tree.  ``evaluate(rep, g)`` returns the matrix of
a group element ``g``:

* over k for recipes of R_{k'/k}(G_m) (and products of such) and for Weil
  restrictions of SL_2-recipes;
* over the tower k' (a :class:`TMatrix`) for the SL_2-recipes themselves
  (:class:`SymPower`, Frobenius pullbacks and tensor products of those).

Nothing here asserts irreducibility; that is the job of :mod:`pseudored.meataxe`.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Sequence

from .errors import DimensionMismatch, IncompatibleElement, NotCoprime, NotDiagonalizable, SubfieldMismatch
from .fields import FieldElement, Tower
from .linalg import Matrix, Subspace, block_diag, kernel
from .subfields import AmbientTower, Subfield, compositum, lambda_field, nu_p
from .weil import WeilGroupPoint, ProductPoint, d_hat

# ---------------------------------------------------------------------------
# Group elements
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GmPoint:
    """A point of prod_i R_{k_i/k}(G_m); a single field is the one-factor case."""

    values: tuple[FieldElement, ...]

    def __post_init__(self):
        if not self.values:
            raise IncompatibleElement("a G_m point needs at least one value")
        for x in self.values:
            if x.is_zero():
                raise IncompatibleElement("G_m point with a zero coordinate")

    @property
    def tower(self) -> Tower:
        return self.values[0].tower

    def __mul__(self, other: "GmPoint") -> "GmPoint":
        return GmPoint(tuple(a * b for a, b in zip(self.values, other.values)))

    def __pow__(self, n: int) -> "GmPoint":
        return GmPoint(tuple(x**n for x in self.values))

    def frobenius(self, nu: int) -> "GmPoint":
        return GmPoint(tuple(x.frobenius(nu) for x in self.values))

    def __str__(self):
        return ", ".join(str(x) for x in self.values)


@dataclass(frozen=True)
class SL2Point:
    """A 2x2 matrix ``[[a, b], [c, d]]`` over k' with determinant 1."""

    a: FieldElement
    b: FieldElement
    c: FieldElement
    d: FieldElement

    def __post_init__(self):
        t = self.a.tower
        if any(x.tower is not t for x in (self.b, self.c, self.d)):
            raise IncompatibleElement("SL2 entries from different towers")
        if self.a * self.d - self.b * self.c != t.one:
            raise IncompatibleElement("SL2 point must have determinant 1")

    @property
    def tower(self) -> Tower:
        return self.a.tower

    def __mul__(self, o: "SL2Point") -> "SL2Point":
        return SL2Point(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    def inverse(self) -> "SL2Point":
        return SL2Point(self.d, -self.b, -self.c, self.a)

    def frobenius(self, nu: int) -> "SL2Point":
        return SL2Point(*(x.frobenius(nu) for x in (self.a, self.b, self.c, self.d)))

    def is_over_base(self) -> bool:
        return all(x.in_base() for x in (self.a, self.b, self.c, self.d))

    @classmethod
    def upper(cls, x: FieldElement) -> "SL2Point":
        t = x.tower
        return cls(t.one, x, t.zero, t.one)

    @classmethod
    def lower(cls, x: FieldElement) -> "SL2Point":
        t = x.tower
        return cls(t.one, t.zero, x, t.one)

    @classmethod
    def torus(cls, x: FieldElement) -> "SL2Point":
        t = x.tower
        return cls(x, t.zero, t.zero, x.inverse())

    @classmethod
    def identity(cls, tower: Tower) -> "SL2Point":
        return cls(tower.one, tower.zero, tower.zero, tower.one)

    def __str__(self):
        return f"[[{self.a}, {self.b}], [{self.c}, {self.d}]]"


def as_gm_point(g) -> GmPoint:
    if isinstance(g, GmPoint):
        return g
    if isinstance(g, FieldElement):
        return GmPoint((g,))
    if isinstance(g, WeilGroupPoint):
        return GmPoint((g.u,))
    if isinstance(g, ProductPoint):
        return GmPoint(g.values)
    if isinstance(g, tuple) and all(isinstance(x, FieldElement) for x in g):
        return GmPoint(g)
    raise IncompatibleElement(f"not a G_m point: {g!r}")


# ---------------------------------------------------------------------------
# Matrices over the tower
# ---------------------------------------------------------------------------


class TMatrix:
    """A small dense matrix with entries in a tower (used for SL_2 recipes over k')."""

    __slots__ = ("tower", "rows")

    def __init__(self, tower: Tower, rows: list[list[FieldElement]]):
        self.tower = tower
        self.rows = rows

    @property
    def n(self) -> int:
        return len(self.rows)

    @classmethod
    def identity(cls, tower: Tower, n: int) -> "TMatrix":
        return cls(tower, [[tower.one if i == j else tower.zero for j in range(n)] for i in range(n)])

    def kron(self, other: "TMatrix") -> "TMatrix":
        return TMatrix(self.tower, [[a * b for a in r for b in s] for r in self.rows for s in other.rows])

    def __matmul__(self, other: "TMatrix") -> "TMatrix":
        cols = list(zip(*other.rows))
        z = self.tower.zero
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = z
                for a, b in zip(r, c):
                    if not a.is_zero() and not b.is_zero():
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return TMatrix(self.tower, out)

    def __eq__(self, other):
        return isinstance(other, TMatrix) and self.rows == other.rows

    def to_base(self) -> Matrix:
        """Entries must all lie in k."""
        return Matrix(self.tower.base, [[x.to_base() for x in r] for r in self.rows])

    def __str__(self):
        return "\n".join(" | ".join(str(x) for x in r) for r in self.rows)


# ---------------------------------------------------------------------------
# Recipes
# ---------------------------------------------------------------------------


class RepRecipe:
    """Base class.  Subclasses set ``group`` ('gm' or 'sl2'), ``over`` ('k' or 'tower'),
    ``dimension`` and ``weight``."""

    group: str
    over: str = "k"

    @property
    def dimension(self) -> int:
        raise NotImplementedError

    @property
    def weight(self):
        raise NotImplementedError

    def weight_bound(self) -> int:
        raise NotImplementedError

    def evaluate(self, g):
        raise NotImplementedError

    def __call__(self, g):
        return evaluate(self, g)


def evaluate(rep: RepRecipe, g):
    """Matrix of ``g`` in ``rep``; checks the output size against ``rep.dimension``."""
    M = rep.evaluate(g)
    n = M.nrows if isinstance(M, Matrix) else M.n
    if n != rep.dimension:
        raise DimensionMismatch(f"{rep!r} evaluated to size {n}, expected {rep.dimension}")
    return M


def _weight_add(a, b):
    if isinstance(a, tuple):
        return tuple(x + y for x, y in zip(a, b))
    return a + b


def _weight_scale(a, c):
    if isinstance(a, tuple):
        return tuple(x * c for x in a)
    return a * c


@dataclass(frozen=True)
class Trivial(RepRecipe):
    group: str = "gm"
    over: str = "k"
    tower: Tower | None = None
    nfactors: int = 1

    @property
    def dimension(self):
        return 1

    @property
    def weight(self):
        return 0 if self.nfactors == 1 or self.group == "sl2" else (0,) * self.nfactors

    def weight_bound(self):
        return 0

    def evaluate(self, g):
        t = g.tower if self.tower is None else self.tower
        if self.over == "tower":
            return TMatrix.identity(t, 1)
        return Matrix.identity(t.base, 1)


@dataclass(frozen=True)
class Standard(RepRecipe):
    """k' (or a subfield F) with u acting by multiplication."""

    field: Subfield
    group: str = "gm"

    @property
    def dimension(self):
        return self.field.degree

    @property
    def weight(self):
        return 1

    def weight_bound(self):
        return 1

    def evaluate(self, g):
        g = as_gm_point(g)
        if len(g.values) != 1:
            raise IncompatibleElement("Standard takes a single-field point")
        u = g.values[0]
        if u.tower is not self.field.ambient:
            raise IncompatibleElement("point from another tower")
        if not self.field.contains(u):
            raise IncompatibleElement(f"{u} is not in the carrier field")
        return self.field.mult_matrix(u)


@dataclass(frozen=True)
class Twist(RepRecipe):
    """Precompose with g -> g^lam."""

    lam: int
    inner: RepRecipe

    @property
    def group(self):
        return self.inner.group

    @property
    def over(self):
        return self.inner.over

    @property
    def dimension(self):
        return self.inner.dimension

    @property
    def weight(self):
        return _weight_scale(self.inner.weight, self.lam)

    def weight_bound(self):
        return abs(self.lam) * self.inner.weight_bound()

    def evaluate(self, g):
        if self.group != "gm":
            raise IncompatibleElement("Twist is defined for G_m recipes")
        return self.inner.evaluate(as_gm_point(g) ** self.lam)


@dataclass(frozen=True)
class TensorChar(RepRecipe):
    """Tensor with the r-th power of the character d-hat: u -> u^(p^e), read in k."""

    r: int
    pe: int
    inner: RepRecipe

    @property
    def group(self):
        return self.inner.group

    @property
    def dimension(self):
        return self.inner.dimension

    @property
    def weight(self):
        return self.inner.weight + self.r * self.pe

    def weight_bound(self):
        return self.inner.weight_bound() + abs(self.r) * self.pe

    def evaluate(self, g):
        g = as_gm_point(g)
        if len(g.values) != 1:
            raise IncompatibleElement("TensorChar takes a single-field point")
        u = g.values[0]
        if u.tower.p ** u.tower.exponent != self.pe:
            raise IncompatibleElement("character exponent does not match the tower")
        return self.inner.evaluate(g).scale(d_hat(WeilGroupPoint.of(u)) ** self.r)


@dataclass(frozen=True)
class FrobPullback(RepRecipe):
    """Precompose with the p^nu-power Frobenius."""

    nu: int
    p: int
    inner: RepRecipe

    @property
    def group(self):
        return self.inner.group

    @property
    def over(self):
        return self.inner.over

    @property
    def dimension(self):
        return self.inner.dimension

    @property
    def weight(self):
        return _weight_scale(self.inner.weight, self.p**self.nu)

    def weight_bound(self):
        return self.inner.weight_bound() * self.p**self.nu

    def evaluate(self, g):
        if isinstance(g, SL2Point):
            return self.inner.evaluate(g.frobenius(self.nu))
        return self.inner.evaluate(as_gm_point(g).frobenius(self.nu))


@dataclass(frozen=True)
class SymPower(RepRecipe):
    """n-th symmetric power of the natural module of SL_2 over the tower."""

    n: int
    p: int
    group: str = "sl2"
    over: str = "tower"

    @property
    def dimension(self):
        return self.n + 1

    @property
    def weight(self):
        return self.n

    def weight_bound(self):
        return self.n

    def evaluate(self, g):
        if not isinstance(g, SL2Point):
            raise IncompatibleElement("SymPower takes an SL2 point")
        t = g.tower
        n = self.n
        # column i = (a x + c y)^(n-i) (b x + d y)^i, coefficient of x^(n-j) y^j in row j
        def power(x, y, m):
            return [x ** (m - k) * y**k * (math.comb(m, k) % self.p) for k in range(m + 1)]

        def mul(f, h):
            out = [t.zero] * (len(f) + len(h) - 1)
            for i, a in enumerate(f):
                if a.is_zero():
                    continue
                for j, b in enumerate(h):
                    if not b.is_zero():
                        out[i + j] = out[i + j] + a * b
            return out

        cols = [mul(power(g.a, g.c, n - i), power(g.b, g.d, i)) for i in range(n + 1)]
        return TMatrix(t, [[cols[i][j] for i in range(n + 1)] for j in range(n + 1)])


@dataclass(frozen=True)
class Tensor(RepRecipe):
    left: RepRecipe
    right: RepRecipe

    def __post_init__(self):
        if self.left.group != self.right.group or self.left.over != self.right.over:
            raise IncompatibleElement("tensor factors must be recipes of the same kind")

    @property
    def group(self):
        return self.left.group

    @property
    def over(self):
        return self.left.over

    @property
    def dimension(self):
        return self.left.dimension * self.right.dimension

    @property
    def weight(self):
        return _weight_add(self.left.weight, self.right.weight)

    def weight_bound(self):
        return self.left.weight_bound() + self.right.weight_bound()

    def evaluate(self, g):
        return self.left.evaluate(g).kron(self.right.evaluate(g))


@dataclass(frozen=True)
class DirectSum(RepRecipe):
    left: RepRecipe
    right: RepRecipe

    def __post_init__(self):
        if self.left.group != self.right.group or self.left.over != self.right.over:
            raise IncompatibleElement("summands must be recipes of the same kind")

    @property
    def group(self):
        return self.left.group

    @property
    def over(self):
        return self.left.over

    @property
    def dimension(self):
        return self.left.dimension + self.right.dimension

    @property
    def weight(self):
        return (self.left.weight, self.right.weight)

    def weight_bound(self):
        return max(self.left.weight_bound(), self.right.weight_bound())

    def evaluate(self, g):
        A, B = self.left.evaluate(g), self.right.evaluate(g)
        if isinstance(A, TMatrix):
            z = A.tower.zero
            return TMatrix(A.tower, [list(r) + [z] * B.n for r in A.rows] + [[z] * A.n + list(r) for r in B.rows])
        return block_diag(A.field, [A, B])


@dataclass(frozen=True)
class WeilRestrictOver(RepRecipe):
    """R_{F/k} of an SL_2-recipe over F, pulled back along the p^nu Frobenius.

    ``g`` in SL_2(k') is first sent to F^nu(g), whose entries lie in F; each
    entry of the inner matrix is then replaced by its multiplication matrix on
    the k-basis of F.
    """

    field: Subfield
    inner: RepRecipe
    nu: int = 0
    group: str = "sl2"

    @property
    def dimension(self):
        return self.inner.dimension * self.field.degree

    @property
    def weight(self):
        return self.inner.weight * self.field.ambient.p**self.nu

    def weight_bound(self):
        return self.inner.weight_bound() * self.field.ambient.p**self.nu

    def evaluate(self, g):
        if not isinstance(g, SL2Point):
            raise IncompatibleElement("WeilRestrictOver takes an SL2 point")
        if g.tower is not self.field.ambient:
            raise IncompatibleElement("point from another tower")
        h = g.frobenius(self.nu) if self.nu else g
        A = self.inner.evaluate(h)
        F = self.field
        d = F.degree
        n = A.n
        out = [[None] * (n * d) for _ in range(n * d)]
        for i, r in enumerate(A.rows):
            for j, x in enumerate(r):
                B = F.mult_matrix(x)
                for a in range(d):
                    out[i * d + a][j * d:(j + 1) * d] = B.rows[a]
        return Matrix(F.ambient.base, out)


@dataclass(frozen=True)
class CompositeX(RepRecipe):
    """The composite u = (u_i) -> prod_i u_i^(lam_i) acting on K = compositum of k_i(lam_i).

    Factor i is sent through its p^(v_p(lam_i)) Frobenius into k_i(lam_i), embedded
    in K, and raised to mu_i = lam_i / p^(v_p(lam_i)).
    """

    factors: tuple[Subfield, ...]
    lams: tuple[int, ...]
    carrier: Subfield
    group: str = "gm"

    @property
    def dimension(self):
        return self.carrier.degree

    @property
    def weight(self):
        return tuple(self.lams)

    def weight_bound(self):
        return sum(abs(x) for x in self.lams)

    def evaluate(self, g):
        g = as_gm_point(g)
        if len(g.values) != len(self.factors):
            raise IncompatibleElement("wrong number of factor values")
        tower = self.carrier.ambient
        z = tower.one
        p = tower.p
        for F, lam, u in zip(self.factors, self.lams, g.values):
            if not F.contains(u):
                raise IncompatibleElement(f"{u} is not in its factor field")
            if lam == 0:
                continue
            nu = nu_p(lam, p)
            z = z * (u.frobenius(nu) ** (lam // p**nu))
        return self.carrier.mult_matrix(z)


# ---------------------------------------------------------------------------
# Builders
# ---------------------------------------------------------------------------


def standard(tower_or_field) -> Standard:
    F = tower_or_field if isinstance(tower_or_field, Subfield) else Subfield.full(tower_or_field)
    return Standard(F)


def build_LC(lam, tower_or_algebra) -> RepRecipe:
    """The simple module of weight ``lam`` for R(G_m) (or a product of such).

    Single field: FrobPullback(nu, Twist(mu, Standard(k'(lam)))), lam = p^nu mu.
    Product: :class:`CompositeX` on the compositum of the k_i(lam_i).
    """
    if isinstance(tower_or_algebra, AmbientTower):
        alg = tower_or_algebra
        lams = tuple(lam)
        if len(lams) != len(alg.factors):
            raise IncompatibleElement("one weight per factor field is required")
        parts = [lambda_field(l, F) for l, F in zip(lams, alg.factors)]
        K = compositum(parts)
        return CompositeX(tuple(alg.factors), lams, K)
    tower = tower_or_algebra.ambient if isinstance(tower_or_algebra, Subfield) else tower_or_algebra
    base_field = tower_or_algebra if isinstance(tower_or_algebra, Subfield) else Subfield.full(tower)
    if lam == 0:
        return Trivial("gm", "k", tower)
    nu = nu_p(lam, tower.p)
    mu = lam // tower.p**nu
    F = lambda_field(lam, base_field)
    rep: RepRecipe = Standard(F)
    if mu != 1:
        rep = Twist(mu, rep)
    if nu:
        rep = FrobPullback(nu, tower.p, rep)
    return rep


@dataclass(frozen=True)
class TwistPair:
    lam: int
    mu: int
    r: int
    pe: int

    def sigma(self, V: RepRecipe) -> RepRecipe:
        return Twist(self.lam, V)

    def tau(self, V: RepRecipe) -> RepRecipe:
        return TensorChar(-self.r, self.pe, Twist(self.mu, V))


def twist_inverse_pair(lam: int, tower: Tower) -> TwistPair:
    """mu, r with lam*mu = 1 + r p^e, and the transforms sigma = Twist(lam), tau = d^-r (x) Twist(mu)."""
    p, e = tower.p, tower.exponent
    if math.gcd(lam, p) != 1:
        raise NotCoprime(f"{lam} is not coprime to {p}")
    pe = p**e
    mu = pow(lam, -1, pe) if pe > 1 else 1
    r = (lam * mu - 1) // pe
    assert lam * mu == 1 + r * pe
    return TwistPair(lam, mu, r, pe)


def digits(lam: int, p: int) -> list[int]:
    if lam < 0:
        raise ValueError("SL2 highest weights are nonnegative")
    out = []
    while lam:
        out.append(lam % p)
        lam //= p
    return out


def build_SL2_irrep(lam: int, tower: Tower) -> RepRecipe:
    """Tensor product over base-p digits of Frobenius-twisted symmetric powers (over k')."""
    p = tower.p
    rep: RepRecipe | None = None
    for i, dgt in enumerate(digits(lam, p)):
        if dgt == 0:
            continue
        piece: RepRecipe = SymPower(dgt, p)
        if i:
            piece = FrobPullback(i, p, piece)
        rep = piece if rep is None else Tensor(rep, piece)
    return rep if rep is not None else Trivial("sl2", "tower", tower)


def sl2_dim(lam: int, p: int) -> int:
    return math.prod(d + 1 for d in digits(lam, p))


def weil_restrict_rep(inner: RepRecipe, F: Subfield, nu: int = 0) -> WeilRestrictOver:
    if inner.group != "sl2" or inner.over != "tower":
        raise SubfieldMismatch("weil_restrict_rep takes an SL2 recipe over the tower")
    return WeilRestrictOver(F, inner, nu)


def build_LG(lam: int, tower: Tower) -> WeilRestrictOver:
    """L_G(lam) for G = R_{k'/k}(SL_2): R_{k'(lam)/k}(L(mu)) pulled back along F^nu, lam = p^nu mu."""
    if lam == 0:
        return WeilRestrictOver(Subfield.base(tower), Trivial("sl2", "tower", tower), 0)
    nu = nu_p(lam, tower.p)
    mu = lam // tower.p**nu
    return weil_restrict_rep(build_SL2_irrep(mu, tower), lambda_field(lam, tower), nu)


# ---------------------------------------------------------------------------
# Sampling and restriction
# ---------------------------------------------------------------------------


def _rng(seed, tag) -> random.Random:
    return random.Random(repr((tag, seed)))


def gm_points(tower_or_algebra, seed=0, n_random: int = 8, degree_bound: int = 1) -> list[GmPoint]:
    """Basis elements of each factor field (1 elsewhere) followed by seeded random points."""
    rng = _rng(seed, "gm")
    if isinstance(tower_or_algebra, AmbientTower):
        factors = list(tower_or_algebra.factors)
    elif isinstance(tower_or_algebra, Subfield):
        factors = [tower_or_algebra]
    else:
        factors = [Subfield.full(tower_or_algebra)]
    one = factors[0].ambient.one
    pts = []
    for i, F in enumerate(factors):
        for b in F.basis()[1:]:
            vals = [one] * len(factors)
            vals[i] = b
            pts.append(GmPoint(tuple(vals)))
    for _ in range(n_random):
        pts.append(GmPoint(tuple(F.random_unit(rng, degree_bound) for F in factors)))
    return pts


def sl2_points(tower: Tower, seed=0, n_random: int = 2, degree_bound: int = 1) -> list[SL2Point]:
    """Elementary matrices with entries from the pool (basis of k' and seeded random
    elements), followed by torus elements diag(x, 1/x) for the non-scalar pool entries."""
    rng = _rng(seed, "sl2")
    from .fields import random_unit

    pool = list(tower.basis()) + [random_unit(tower, rng, degree_bound) for _ in range(n_random)]
    pts = []
    for x in pool:
        pts.append(SL2Point.upper(x))
        pts.append(SL2Point.lower(x))
    for x in pool[1:]:
        pts.append(SL2Point.torus(x))
    return pts


def levi_points(tower: Tower, seed=0, n_random: int = 1, degree_bound: int = 1) -> list[SL2Point]:
    """Points of M = SL_2(k) inside SL_2(k'): entries from k only."""
    rng = _rng(seed, "levi")
    F = tower.base
    pool = [F.one] + list(F.gens()) + [F.random(rng, degree_bound, True) for _ in range(n_random)]
    pool = [c for c in pool if not c.is_zero()]
    pts = []
    for c in pool:
        pts.append(SL2Point.upper(tower.scalar(c)))
        pts.append(SL2Point.lower(tower.scalar(c)))
    for c in pool:
        if c.degree() > 0:
            pts.append(SL2Point.torus(tower.scalar(c)))
    return pts


def restrict_to_levi(rep: RepRecipe, tower: Tower, seed=0, points=None) -> list[Matrix]:
    """Images of M(k) points: SL_2(k) for SL_2 recipes, the scalar torus for G_m recipes."""
    if rep.group == "sl2":
        pts = levi_points(tower, seed) if points is None else points
        for g in pts:
            if not g.is_over_base():
                raise IncompatibleElement("Levi points must have entries in k")
        out = []
        for g in pts:
            M = evaluate(rep, g)
            out.append(M.to_base() if isinstance(M, TMatrix) else M)
        return out
    F = tower.base
    cs = [F.gen(i) for i in range(F.nvars)] + [F.one + F.gen(0)] if points is None else points
    return [evaluate(rep, GmPoint((tower.scalar(c),))) for c in cs]


def cocharacters(rep: RepRecipe, tower: Tower, nfactors: int = 1):
    """One-parameter subgroups of the split torus: c -> point."""
    if rep.group == "sl2":
        return [lambda c: SL2Point.torus(tower.scalar(c))]
    if nfactors == 1:
        return [lambda c: GmPoint((tower.scalar(c),))]
    outs = []
    for i in range(nfactors):
        def phi(c, i=i):
            vals = [tower.one] * nfactors
            vals[i] = tower.scalar(c)
            return GmPoint(tuple(vals))
        outs.append(phi)
    return outs


def weight_decomposition(rep: RepRecipe, tower: Tower, nfactors: int = 1, bound: int | None = None,
                         samples: Sequence | None = None) -> list[tuple]:
    """Simultaneous eigenspaces of the split torus, as (weight, Subspace) pairs.

    For each cocharacter and candidate weight w, intersect the kernels of
    rho(c) - c^w for two scalar samples c; the pieces must exhaust the space.
    """
    F = tower.base
    if samples is None:
        t = F.gen(0) if F.nvars else F(2)
        samples = (t, t + 1)
    if bound is None:
        bound = rep.weight_bound()
    d = rep.dimension
    pieces: list[tuple[tuple, Subspace]] = [((), Subspace.full(F, d))]
    for phi in cocharacters(rep, tower, nfactors):
        mats = []
        for c in samples:
            M = evaluate(rep, phi(c))
            mats.append((c, M.to_base() if isinstance(M, TMatrix) else M))
        found = []
        total = 0
        for w in range(-bound, bound + 1):
            K = None
            for c, M in mats:
                Kc = kernel(M - Matrix.scalar(F, d, c**w))
                K = Kc if K is None else K.intersection(Kc)
                if K.is_zero():
                    break
            if K is not None and not K.is_zero():
                found.append((w, K))
                total += K.dim
        if total != d:
            raise NotDiagonalizable(f"torus eigenspaces span {total} of {d} dimensions")
        new = []
        for wt, S in pieces:
            for w, K in found:
                X = S.intersection(K)
                if not X.is_zero():
                    new.append((wt + (w,), X))
        pieces = new
    return [((wt[0] if len(wt) == 1 else wt), S) for wt, S in pieces]
