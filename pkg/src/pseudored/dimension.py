"""dim L_G(lam) = dim L_M(lam) * dim L_C(lam), with optional certification."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

from .errors import AmbientMismatch, DimensionMismatch, MissingTableEntry, NotDominant, ParseError
from .fields import Tower
from .subfields import AmbientTower, Subfield, compositum, lambda_field


@dataclass(frozen=True)
class LeviDescriptor:
    """``kind`` is 'torus', 'a1' or 'table'.

    For 'torus' and 'a1', ``rank`` is the number of factors (weights are
    tuples of that length, or plain ints when rank is 1).  For 'table',
    ``table`` maps weight tuples to dimensions.
    """

    kind: str
    p: int
    rank: int = 1
    table: dict = field(default_factory=dict, hash=False, compare=False)

    @classmethod
    def torus(cls, p: int, rank: int = 1) -> "LeviDescriptor":
        return cls("torus", p, rank)

    @classmethod
    def a1_power(cls, p: int, n: int = 1) -> "LeviDescriptor":
        return cls("a1", p, n)

    @classmethod
    def from_table(cls, p: int, path) -> "LeviDescriptor":
        return cls("table", p, 0, load_levi_table(path))


def load_levi_table(path) -> dict:
    """Lines ``w1,w2,... : dim``; ``#`` starts a comment."""
    out = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            key, val = line.split(":")
            wt = tuple(int(x) for x in key.replace(" ", "").split(","))
            dim = int(val)
        except ValueError as exc:
            raise ParseError(f"{path}:{lineno}: expected 'w1,w2,... : dim'") from exc
        if dim <= 0:
            raise ParseError(f"{path}:{lineno}: dimensions must be positive")
        out[wt] = dim
    return out


@dataclass(frozen=True)
class DimReport:
    lam: object
    dim_LC: int
    dim_LM: int
    dim_LG: int
    notes: tuple[str, ...] = ()
    certified: bool = False

    def __post_init__(self):
        if self.dim_LG != self.dim_LC * self.dim_LM:
            raise DimensionMismatch("dim_LG must equal dim_LC * dim_LM")

    def line(self) -> str:
        tail = " certified" if self.certified else ""
        return f"λ={_fmt(self.lam)} dimLC={self.dim_LC} dimLM={self.dim_LM} dimLG={self.dim_LG}{tail}"

    def tsv(self) -> str:
        return "\t".join([_fmt(self.lam), str(self.dim_LC), str(self.dim_LM), str(self.dim_LG),
                          "certified" if self.certified else "-"])


def _fmt(lam) -> str:
    return ",".join(map(str, lam)) if isinstance(lam, tuple) else str(lam)


def dim_LC(lam, ambient) -> int:
    """[k'(lam):k] for one field; [K:k] for the compositum K of the k_i(lam_i) for a product."""
    if isinstance(ambient, AmbientTower):
        lams = tuple(lam) if isinstance(lam, (tuple, list)) else (lam,)
        if len(lams) != len(ambient.factors):
            raise AmbientMismatch(f"{len(lams)} weights for {len(ambient.factors)} factor fields")
        return compositum([lambda_field(l, F) for l, F in zip(lams, ambient.factors)]).degree
    if isinstance(lam, (tuple, list)):
        if len(lam) != 1:
            raise AmbientMismatch("a single field takes one weight")
        lam = lam[0]
    if not isinstance(ambient, (Tower, Subfield)):
        raise AmbientMismatch(f"not a tower or ambient algebra: {ambient!r}")
    return lambda_field(lam, ambient).degree


def a1_dim(lam: int, p: int) -> int:
    if lam < 0:
        raise NotDominant(f"{lam} is not dominant for SL_2")
    out = 1
    while lam:
        out *= lam % p + 1
        lam //= p
    return out


def dim_LM(lam, levi: LeviDescriptor) -> int:
    wt = tuple(lam) if isinstance(lam, (tuple, list)) else (lam,)
    if levi.kind == "torus":
        return 1
    if levi.kind == "a1":
        if len(wt) != levi.rank:
            raise NotDominant(f"expected {levi.rank} weight coordinates, got {len(wt)}")
        return math.prod(a1_dim(x, levi.p) for x in wt)
    if levi.kind == "table":
        try:
            return levi.table[wt]
        except KeyError:
            raise MissingTableEntry(f"no table entry for weight {_fmt(wt)}") from None
    raise ValueError(f"unknown Levi kind {levi.kind!r}")


def dim_LG(lam, tower, levi: LeviDescriptor, certify: bool = False, seed=0, cap: int = 32) -> DimReport:
    """Dimension report; with ``certify`` the module is built and checked.

    Certification covers A1 Levis of R_{k'/k}(SL_2) and torus Levis of
    R_{k'/k}(G_m) (or products) up to dimension ``cap``; a wrong size or a
    verdict other than Irreducible raises.
    """
    c = dim_LC(lam, tower)
    m = dim_LM(lam, levi)
    notes = ["dim_LC from subfield spans"]
    notes.append({"torus": "dim_LM = 1 (torus)", "a1": "dim_LM from base-p digits",
                  "table": "dim_LM from table"}[levi.kind])
    certified = False
    if certify and c * m <= cap:
        _certify(lam, tower, levi, c * m, seed)
        certified = True
        notes.append("construction certified irreducible")
    elif certify:
        notes.append(f"certification skipped: dimension {c * m} above cap {cap}")
    return DimReport(lam, c, m, c * m, tuple(notes), certified)


def _certify(lam, tower, levi: LeviDescriptor, expected: int, seed) -> None:
    from . import meataxe, reps

    if levi.kind == "a1" and levi.rank == 1 and isinstance(tower, Tower):
        lam0 = lam[0] if isinstance(lam, (tuple, list)) else lam
        rep = reps.build_LG(lam0, tower)
        gs = meataxe.generator_set(rep, tower, seed)
        verdict = meataxe.is_irreducible_norton(gs, seed)
    elif levi.kind == "torus":
        rep = reps.build_LC(lam, tower)
        gs = meataxe.generator_set(rep, tower, seed)
        verdict = meataxe.is_irreducible_commutative(gs)
    else:
        raise NotDominant("certification is implemented for A1 (rank 1) and torus Levis only")
    if rep.dimension != expected:
        raise DimensionMismatch(f"constructed module has dimension {rep.dimension}, formula gives {expected}")
    if verdict.kind != "Irreducible":
        raise DimensionMismatch(f"constructed module for weight {_fmt(lam)} is {verdict.kind}")
