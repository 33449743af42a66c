"""Intermediate fields of a tower: lambda-fields, composita, closures and stabilizers.

A :class:`Subfield` is a k-subspace of the ambient tower (coordinates over the
monomial basis) that contains 1 and is closed under multiplication.
"""

from __future__ import annotations

import logging
import random
import re
from dataclasses import dataclass, field
from typing import Sequence

from .errors import AmbientMismatch, MissingIdentity, ParseError, SubfieldMismatch, ZeroSubspace
from .fields import FieldElement, Tower, parse_tower_text, random_element, validate_tower
from .linalg import Matrix, Subspace, kernel, primitive

log = logging.getLogger(__name__)


def nu_p(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


class Subfield:
    """A subfield k <= F <= k' given by its k-span inside the ambient tower."""

    def __init__(self, ambient: Tower, space: Subspace, check: bool = True):
        if space.ambient_dim != ambient.degree:
            raise AmbientMismatch("subspace dimension does not match the ambient tower")
        self.ambient = ambient
        self.space = space
        if check:
            if not space.contains(ambient.one.coords):
                raise MissingIdentity("a subfield must contain 1")
            if not _mult_closed(ambient, space):
                raise SubfieldMismatch("subspace is not closed under multiplication")

    @classmethod
    def full(cls, tower: Tower) -> "Subfield":
        return cls(tower, Subspace.full(tower.base, tower.degree), check=False)

    @classmethod
    def base(cls, tower: Tower) -> "Subfield":
        return cls(tower, Subspace.from_vectors(tower.base, tower.degree, [tower.one.coords]), check=False)

    @property
    def degree(self) -> int:
        return self.space.dim

    def basis(self) -> list[FieldElement]:
        return [FieldElement(self.ambient, tuple(r)) for r in self.space.rows]

    def contains(self, x: FieldElement) -> bool:
        if x.tower is not self.ambient:
            raise AmbientMismatch("element from another tower")
        return self.space.contains(x.coords)

    __contains__ = contains

    def coordinates(self, x: FieldElement) -> tuple:
        if not self.contains(x):
            raise SubfieldMismatch(f"{x} is not in the subfield")
        return tuple(x.coords[c] for c in self.space.pivots)

    def from_coordinates(self, coords: Sequence) -> FieldElement:
        F = self.ambient.base
        out = [F.zero] * self.ambient.degree
        for c, row in zip(coords, self.space.rows):
            c = F(c)
            if c.is_zero():
                continue
            out = [a + c * b for a, b in zip(out, row)]
        return FieldElement(self.ambient, tuple(out))

    def mult_matrix(self, x: FieldElement) -> Matrix:
        """Matrix of multiplication by ``x`` on this subfield's echelon basis."""
        if not self.contains(x):
            raise SubfieldMismatch(f"{x} is not in the subfield")
        cols = [self.coordinates(x * b) for b in self.basis()]
        return Matrix.from_columns(self.ambient.base, cols)

    def random_element(self, seed, degree_bound: int = 1) -> FieldElement:
        rng = seed if isinstance(seed, random.Random) else random.Random(repr(seed))
        return self.from_coordinates([self.ambient.base.random(rng, degree_bound, True) for _ in range(self.degree)])

    def random_unit(self, seed, degree_bound: int = 1) -> FieldElement:
        rng = seed if isinstance(seed, random.Random) else random.Random(repr(seed))
        while True:
            x = self.random_element(rng, degree_bound)
            if not x.is_zero():
                return x

    def is_subfield_of(self, other: "Subfield") -> bool:
        _same_ambient([self, other])
        return other.space.contains_space(self.space)

    def __eq__(self, other):
        if not isinstance(other, Subfield):
            return NotImplemented
        return self.ambient is other.ambient and self.space == other.space

    def __hash__(self):
        return hash((id(self.ambient), self.space))

    def __repr__(self):
        gens = ", ".join(str(b) for b in self.basis())
        return f"Subfield(degree={self.degree}, basis=[{gens}])"


def _as_subfield(F) -> Subfield:
    if isinstance(F, Subfield):
        return F
    if isinstance(F, Tower):
        return Subfield.full(F)
    raise TypeError(f"expected a Tower or Subfield, got {F!r}")


def _same_ambient(fields: Sequence[Subfield]) -> Tower:
    amb = fields[0].ambient
    for f in fields[1:]:
        if f.ambient is not amb:
            raise AmbientMismatch("subfields live in different ambient towers")
    return amb


def _products(tower: Tower, rows: Sequence[Sequence]) -> list[tuple]:
    els = [FieldElement(tower, tuple(r)) for r in rows]
    return [(a * b).coords for i, a in enumerate(els) for b in els[i:]]


def _mult_closed(tower: Tower, space: Subspace) -> bool:
    return all(space.contains(v) for v in _products(tower, space.rows))


def power_span(F, nu: int) -> Subspace:
    """k-span of the p^nu-th powers of a basis of ``F``.

    Equals the span of all p^nu-th powers, since
    ``(sum c_i b_i)^(p^nu) = sum c_i^(p^nu) b_i^(p^nu)``.
    """
    F = _as_subfield(F)
    tower = F.ambient
    nu = min(nu, tower.exponent)
    vecs = [b.frobenius(nu).coords for b in F.basis()]
    return Subspace.from_vectors(tower.base, tower.degree, vecs)


def field_closure(W: Subspace, tower: Tower) -> Subfield:
    """Smallest subfield containing ``W`` (which must contain 1): iterate W <- W + W*W."""
    if W.ambient_dim != tower.degree:
        raise AmbientMismatch("subspace does not live in this tower")
    if not W.contains(tower.one.coords):
        raise MissingIdentity("field_closure needs 1 in the subspace")
    while True:
        bigger = Subspace.from_vectors(tower.base, tower.degree, W.rows + _products(tower, W.rows))
        if bigger.dim == W.dim:
            return Subfield(tower, W, check=False)
        W = bigger


def lambda_field(lam: int, F=None, diagnostics: list | None = None) -> Subfield:
    """The subfield generated by k and the lam-th powers of ``F`` (default: the whole tower).

    Computed as the span of the p^nu-th powers, nu = v_p(lam), with k for lam = 0.
    The span is re-closed under multiplication; if closing changes it a
    diagnostic is logged (and appended to ``diagnostics``).
    """
    if F is None:
        raise TypeError("lambda_field needs a tower or subfield")
    F = _as_subfield(F)
    tower = F.ambient
    if lam == 0:
        return Subfield.base(tower)
    nu = nu_p(lam, tower.p)
    span = power_span(F, nu)
    closed = field_closure(span, tower)
    if closed.space != span:
        msg = f"span of p^{nu}-th powers was not closed (dim {span.dim} -> {closed.degree})"
        log.warning(msg)
        if diagnostics is not None:
            diagnostics.append(msg)
    return closed


def brute_lambda_span(lam: int, F, samples: int | None = None, seed=0, degree_bound: int = 1) -> Subspace:
    """Independent oracle: close span({1} + {u^lam : u sampled}) under multiplication.

    Uses the definition directly (no valuation shortcut); negative exponents go
    through genuine field inversion.
    """
    if lam == 0:
        raise ValueError("brute_lambda_span needs lam != 0")
    F = _as_subfield(F)
    tower = F.ambient
    if samples is None:
        samples = 4 * F.degree
    if samples < 4 * F.degree:
        raise ValueError(f"need at least {4 * F.degree} samples")
    rng = random.Random(repr(("brute_lambda", seed, lam)))
    vecs = [tower.one.coords]
    for _ in range(samples):
        u = F.random_unit(rng, degree_bound)
        if lam < 0:
            u = u.inverse()
        vecs.append((u ** abs(lam)).coords)
    W = Subspace.from_vectors(tower.base, tower.degree, vecs)
    return field_closure(W, tower).space


def compositum(fields: Sequence) -> Subfield:
    """Smallest subfield containing every field in ``fields`` (common ambient required)."""
    fields = [_as_subfield(f) for f in fields]
    if not fields:
        raise ValueError("compositum of an empty family")
    tower = _same_ambient(fields)
    W = fields[0].space
    for f in fields[1:]:
        W = W + f.space
    return field_closure(W, tower)


def stabilizer_field(W: Subspace, tower: Tower) -> Subfield:
    """E = {x in k' : x W <= W} for a nonzero subspace ``W`` of k'.

    If 1 is not in ``W`` it is first replaced by ``w^-1 W`` for its first echelon
    basis vector ``w`` (this does not change the stabilizer).
    """
    if W.ambient_dim != tower.degree:
        raise AmbientMismatch("subspace does not live in this tower")
    if W.is_zero():
        raise ZeroSubspace("stabilizer of the zero subspace")
    if not W.contains(tower.one.coords):
        w_inv = FieldElement(tower, tuple(W.rows[0])).inverse()
        W = Subspace.from_vectors(tower.base, tower.degree, [(w_inv * FieldElement(tower, tuple(r))).coords for r in W.rows])
    # 1 in W forces E = E*1 <= W, so search x = sum c_j w_j and cut down one w at a time
    q = tower.degree
    prim = [FieldElement(tower, tuple(primitive(r))) for r in W.rows]
    cand = list(prim)
    for b in prim:
        if len(cand) <= 1:
            break
        res = [W.residual((x * b).coords) for x in cand]
        rows = [[res[j][l] for j in range(len(cand))] for l in range(q) if l not in W.pivots]
        if all(c.is_zero() for row in rows for c in row):
            continue
        K = kernel(Matrix(tower.base, rows, len(cand)))
        cand = [_combine(tower, cand, primitive(v)) for v in K.basis()]
    E = Subspace.from_vectors(tower.base, q, [x.coords for x in cand])
    out = Subfield(tower, E, check=True)
    assert all(W.contains((x * FieldElement(tower, tuple(r))).coords) for x in out.basis() for r in W.rows)
    return out


def _combine(tower: Tower, els: Sequence[FieldElement], coeffs: Sequence) -> FieldElement:
    out = tower.zero
    for c, x in zip(coeffs, els):
        if not c.is_zero():
            out = out + x * tower.scalar(c)
    return out


# ---------------------------------------------------------------------------
# Reduced algebras: products of subfields of one ambient tower
# ---------------------------------------------------------------------------


@dataclass
class AmbientTower:
    """An ambient tower K' with named factor fields k_1..k_n inside it."""

    tower: Tower
    factors: list[Subfield] = field(default_factory=list)
    names: list[str] = field(default_factory=list)

    def __post_init__(self):
        for f in self.factors:
            if f.ambient is not self.tower:
                raise AmbientMismatch("factor field is not inside the ambient tower")
        if not self.names:
            self.names = [f"k{i + 1}" for i in range(len(self.factors))]

    def add_factor(self, name: str, generators: Sequence[FieldElement | str]) -> Subfield:
        """Adjoin the factor field k(generators)."""
        els = [self.tower.parse(g) if isinstance(g, str) else g for g in generators]
        W = Subspace.from_vectors(self.tower.base, self.tower.degree, [self.tower.one.coords] + [e.coords for e in els])
        F = field_closure(W, self.tower)
        self.factors.append(F)
        self.names.append(name)
        return F


_FACTOR_LINE = re.compile(r"^factor\s+([A-Za-z_]\w*)\s*[:=]\s*(.*)$")


def parse_algebra_text(text: str) -> AmbientTower:
    """Tower file lines plus ``factor NAME : EXPR, EXPR, ...`` lines (factor = k(EXPRs))."""
    tower_lines, factor_lines = [], []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line.startswith("factor"):
            m = _FACTOR_LINE.match(line)
            if not m:
                raise ParseError(f"malformed factor line {raw!r}")
            factor_lines.append((m.group(1), [x.strip() for x in m.group(2).split(",") if x.strip()]))
        else:
            tower_lines.append(raw)
    tower = validate_tower(parse_tower_text("\n".join(tower_lines)))
    amb = AmbientTower(tower)
    for name, gens in factor_lines:
        amb.add_factor(name, gens)
    if not amb.factors:
        raise ParseError("algebra file declares no factor fields")
    return amb


def load_algebra(path) -> AmbientTower:
    with open(path, encoding="utf-8") as fh:
        return parse_algebra_text(fh.read())


def random_subspace_with_one(tower: Tower, dim: int, seed, degree_bound: int = 1) -> Subspace:
    """A seeded subspace of the given dimension containing 1 (for sweeps over proper subspaces)."""
    rng = random.Random(repr(("subspace", seed)))
    vecs = [tower.one.coords]
    W = Subspace.from_vectors(tower.base, tower.degree, vecs)
    while W.dim < dim:
        v = random_element(tower, rng, degree_bound, polynomial=True).coords
        if not W.contains(v):
            vecs.append(v)
            W = Subspace.from_vectors(tower.base, tower.degree, vecs)
    return W
