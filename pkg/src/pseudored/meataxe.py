"""Irreducibility tests over F_p(t_1..t_m) and hom spaces between matrix modules.

Two decision procedures:

* :func:`is_irreducible_commutative` - exact for commutative generator sets.
  The enveloping algebra A is a field iff it is purely inseparable and
  reduced; V is then simple iff dim A = dim V.
* :func:`is_irreducible_norton` - a Norton-style test.  For an algebra element
  theta and an irreducible factor f of its characteristic polynomial with
  dim ker f(theta) = deg f, every nonzero vector of ker f(theta) generates that
  kernel under k[theta].  Spinning one such vector (and one for the transposed
  action) therefore decides irreducibility.  When no such theta turns up within
  the budget the answer is Inconclusive.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Sequence

from .errors import CapExceeded, DimensionMismatch, GeneratorCountMismatch, NonCommutingGenerators
from .fields import BaseField
from .linalg import (
    Matrix,
    Subspace,
    _EchelonBuilder,
    charpoly,
    kernel,
    matinv,
    poly_eval_matrix,
    spin,
    spin_basis,
)

# ---------------------------------------------------------------------------
# Generator sets and verdicts
# ---------------------------------------------------------------------------


@dataclass
class GeneratorSet:
    """Matrices of sampled group points, with provenance.

    ``unipotent`` lists indices of generators known to be images of unipotent
    elements; the Norton search tries ``g - 1`` for those first.
    """

    gens: list[Matrix]
    labels: list[str] = field(default_factory=list)
    unipotent: list[int] = field(default_factory=list)
    seed: object = 0

    def __post_init__(self):
        if not self.gens:
            raise DimensionMismatch("empty generator set")
        n = self.gens[0].nrows
        for g in self.gens:
            if g.shape != (n, n):
                raise DimensionMismatch("generators must be square of one size")
        if not self.labels:
            self.labels = [f"g{i}" for i in range(len(self.gens))]

    @property
    def dim(self) -> int:
        return self.gens[0].nrows

    @property
    def field(self) -> BaseField:
        return self.gens[0].field

    def __len__(self):
        return len(self.gens)


def _as_gens(gens) -> GeneratorSet:
    return gens if isinstance(gens, GeneratorSet) else GeneratorSet(list(gens))


def generator_set(rep, ambient, seed=0, n_random: int | None = None) -> GeneratorSet:
    """Evaluate a recipe at the standard sample points for its group."""
    from . import reps

    if rep.group == "sl2":
        tower = ambient
        pts = reps.sl2_points(tower, seed, 8 if n_random is None else n_random)
        mats, labels, unip = [], [], []
        for i, g in enumerate(pts):
            M = reps.evaluate(rep, g)
            mats.append(M.to_base() if isinstance(M, reps.TMatrix) else M)
            labels.append(str(g))
            if g.a == tower.one and g.d == tower.one:
                unip.append(i)
        return GeneratorSet(mats, labels, unip, seed)
    pts = reps.gm_points(ambient, seed, 8 if n_random is None else n_random)
    return GeneratorSet([reps.evaluate(rep, g) for g in pts], [str(g) for g in pts], [], seed)


class Verdict:
    kind: str = ""

    def __bool__(self):
        raise TypeError("compare verdict.kind instead of truth-testing a verdict")


@dataclass
class Irreducible(Verdict):
    certificate: dict
    kind: str = "Irreducible"


@dataclass
class Reducible(Verdict):
    witness: Subspace
    kind: str = "Reducible"


@dataclass
class Inconclusive(Verdict):
    diagnostics: dict
    kind: str = "Inconclusive"


def _check_witness(W: Subspace, gens: Sequence[Matrix]) -> None:
    assert 0 < W.dim < W.ambient_dim, "witness must be proper and nonzero"
    assert W.is_invariant(gens), "witness must be invariant"


# ---------------------------------------------------------------------------
# Enveloping algebra
# ---------------------------------------------------------------------------


def enveloping_basis(gens, cap: int | None = None) -> list[Matrix]:
    """k-basis of the algebra generated by the generators (and 1), by spinning I."""
    gs = _as_gens(gens)
    F, n = gs.field, gs.dim
    cap = n * n if cap is None else cap
    eb = _EchelonBuilder(F, n * n)
    out = [Matrix.identity(F, n)]
    eb.add(out[0].vectorize())
    i = 0
    while i < len(out):
        for g in gs.gens:
            P = out[i] @ g
            if eb.add(P.vectorize()) is not None:
                out.append(P)
                if len(out) > cap:
                    raise CapExceeded(f"enveloping algebra has dimension > {cap}")
        i += 1
    return out


def enveloping_dimension(gens, cap: int | None = None) -> int:
    return len(enveloping_basis(gens, cap))


def _commute(gs: GeneratorSet) -> bool:
    # pairwise commutation of a basis of the span is enough
    eb = _EchelonBuilder(gs.field, gs.dim * gs.dim)
    span = [g for g in gs.gens if eb.add(g.vectorize()) is not None]
    for a, b in itertools.combinations(span, 2):
        if a @ b != b @ a:
            return False
    return True


# ---------------------------------------------------------------------------
# Commutative certificate
# ---------------------------------------------------------------------------


def _spin_search(gs: GeneratorSet, limit: int | None = None) -> Subspace | None:
    """Look for a proper invariant subspace spun from a standard basis vector."""
    F, n = gs.field, gs.dim
    for i in range(n if limit is None else min(n, limit)):
        e = [F.zero] * n
        e[i] = F.one
        S = spin(gs.gens, [e])
        if S.dim < n:
            return S
    return None


def _combo(F: BaseField, basis: Sequence[Matrix], rng: random.Random) -> Matrix:
    n = basis[0].nrows
    out = Matrix.zeros(F, n, n)
    for a in basis:
        c = rng.randrange(F.p)
        if c:
            out = out + a.scale(F(c))
    return out


def is_irreducible_commutative(gens) -> Verdict:
    """Exact irreducibility test for commuting generators."""
    gs = _as_gens(gens)
    if not _commute(gs):
        raise NonCommutingGenerators("generators do not commute")
    F, n = gs.field, gs.dim
    p = F.p
    if n == 1:
        return Irreducible({"method": "commutative", "algebra_dim": 1, "frobenius_exponent": 0})
    A = enveloping_basis(gs)
    N = 0
    while p**N < max(len(A), n):
        N += 1
    scalars = []
    for a in A:
        P = a ** (p**N)
        if not P.is_scalar():
            W = _spin_search(gs)
            if W is not None:
                _check_witness(W, gs.gens)
                return Reducible(W)
            return Inconclusive({"reason": "enveloping algebra is not purely inseparable", "algebra_dim": len(A)})
        scalars.append(P[0, 0])
    # reduced iff the p^N-th powers of a basis stay independent over k^(p^N)
    comps = [F.p_components(c, N) for c in scalars]
    keys = sorted({b for c in comps for b in c})
    rows = [[c.get(b, F.zero) for b in keys] for c in comps]
    M = Matrix(F, rows, len(keys)).transpose()
    K = kernel(M)
    if not K.is_zero():
        d = K.basis()[0]
        x = Matrix.zeros(F, n, n)
        for di, a in zip(d, A):
            if not di.is_zero():
                x = x + a.scale(di)
        W = kernel(x)
        _check_witness(W, gs.gens)
        return Reducible(W)
    if len(A) == n:
        # the field test above is exact; a sampled product is a cheap cross-check
        rng = random.Random(repr(("zero-divisor", n)))
        x, y = (_combo(F, A, rng) for _ in range(2))
        if not x.is_zero() and not y.is_zero():
            assert not (x @ y).is_zero(), "zero divisor in a certified field"
        return Irreducible({
            "method": "commutative",
            "algebra_dim": len(A),
            "frobenius_exponent": N,
            "scalars": [str(c) for c in scalars],
        })
    e = [F.zero] * n
    e[0] = F.one
    W = spin(gs.gens, [e])
    _check_witness(W, gs.gens)
    return Reducible(W)


# ---------------------------------------------------------------------------
# Norton test
# ---------------------------------------------------------------------------


class _WordCache:
    def __init__(self, gs: GeneratorSet):
        self.gs = gs
        self.cache: dict[tuple, Matrix] = {(): Matrix.identity(gs.field, gs.dim)}

    def __call__(self, word: tuple) -> Matrix:
        hit = self.cache.get(word)
        if hit is None:
            hit = self(word[:-1]) @ self.gs.gens[word[-1]]
            self.cache[word] = hit
        return hit


def build_theta(gs: GeneratorSet, terms: Sequence[tuple[int, tuple]], words: _WordCache | None = None) -> Matrix:
    """sum of coefficient * word, with words as tuples of generator indices."""
    words = _WordCache(gs) if words is None else words
    F, n = gs.field, gs.dim
    out = Matrix.zeros(F, n, n)
    for c, w in terms:
        out = out + words(tuple(w)).scale(F(c))
    return out


def _candidates(gs: GeneratorSet, rng: random.Random, max_word_length: int):
    p = gs.field.p
    n = len(gs)
    for i in gs.unipotent:
        yield "unipotent", [(1, (i,)), (-1, ())]
    pairs = list(itertools.combinations(range(n), 2))
    rng.shuffle(pairs)
    for i, j in pairs[:3]:
        yield "conjugate-difference", [(1, (i, j)), (-1, (j, i))]
    for i in range(n):
        yield "generator", [(1, (i,))]
    while True:
        terms = []
        for _ in range(rng.randint(2, 4)):
            w = tuple(rng.randrange(n) for _ in range(rng.randint(1, max_word_length)))
            terms.append((rng.randrange(1, p) if p > 2 else 1, w))
        if rng.random() < 0.5:
            terms.append((rng.randrange(p), ()))
        yield "random-combination", terms


def _transpose_gens(gs: GeneratorSet) -> list[Matrix]:
    return [g.transpose() for g in gs.gens]


def is_irreducible_norton(gens, seed=0, budget: int = 200, max_word_length: int = 8,
                          max_factor_degree: int = 8, spin_budget: int = 6,
                          diagnostics: dict | None = None) -> Verdict:
    """Norton-style irreducibility test; deterministic for a given seed.

    Kernels that cannot certify (dim ker f(theta) > deg f) are still spun in
    search of a submodule, at most ``spin_budget`` times per call.
    """
    gs = _as_gens(gens)
    F, n = gs.field, gs.dim
    if n == 1:
        return Irreducible({"method": "trivial", "dim": 1})
    rng = random.Random(repr(("norton", seed)))
    words = _WordCache(gs)
    gens_t = None
    tried = []
    for attempt, (source, terms) in enumerate(_candidates(gs, rng, max_word_length)):
        if attempt >= budget:
            break
        theta = build_theta(gs, terms, words)
        factors = F.factor_univariate(charpoly(theta))
        tried.append((source, [(len(f) - 1, m) for f, m in factors]))
        for f, _mult in factors:
            deg = len(f) - 1
            if deg > max_factor_degree:
                continue
            fT = poly_eval_matrix(f, theta)
            K = kernel(fT)
            if K.is_zero():
                continue
            if K.dim != deg:
                if spin_budget <= 0:
                    continue
                spin_budget -= 1
            v = K.basis()[0]
            S = spin(gs.gens, [v])
            if S.dim < n:
                _check_witness(S, gs.gens)
                return Reducible(S)
            if K.dim != deg:
                continue
            if gens_t is None:
                gens_t = _transpose_gens(gs)
            KT = kernel(fT.transpose())
            w = KT.basis()[0]
            ST = spin(gens_t, [w])
            if ST.dim < n:
                W = ST.annihilator()
                _check_witness(W, gs.gens)
                return Reducible(W)
            return Irreducible({
                "method": "norton",
                "seed": seed,
                "attempt": attempt,
                "source": source,
                "theta": [(int(c), list(w_)) for c, w_ in terms],
                "factor": [str(c) for c in f],
                "v": [str(x) for x in v],
                "w": [str(x) for x in w],
            })
    if diagnostics is not None:
        diagnostics["tried"] = tried
    return Inconclusive({"budget": budget, "tried": tried})


def replay_certificate(gens, certificate: dict) -> bool:
    """Re-derive an Irreducible verdict from its certificate."""
    gs = _as_gens(gens)
    F, n = gs.field, gs.dim
    if certificate.get("method") == "trivial":
        return n == 1
    if certificate.get("method") == "commutative":
        v = is_irreducible_commutative(gs)
        return v.kind == "Irreducible"
    theta = build_theta(gs, [(c, tuple(w)) for c, w in certificate["theta"]])
    f = [F.parse(c) for c in certificate["factor"]]
    factors = F.factor_univariate(f)
    if len(factors) != 1 or factors[0][1] != 1:
        return False
    fT = poly_eval_matrix(f, theta)
    v = [F.parse(x) for x in certificate["v"]]
    w = [F.parse(x) for x in certificate["w"]]
    K, KT = kernel(fT), kernel(fT.transpose())
    if K.dim != len(f) - 1 or not K.contains(v) or not KT.contains(w):
        return False
    if not any(not x.is_zero() for x in v) or not any(not x.is_zero() for x in w):
        return False
    return spin(gs.gens, [v]).dim == n and spin(_transpose_gens(gs), [w]).dim == n


def is_irreducible(gens, seed=0, **kw) -> Verdict:
    gs = _as_gens(gens)
    if _commute(gs):
        return is_irreducible_commutative(gs)
    return is_irreducible_norton(gs, seed, **kw)


# ---------------------------------------------------------------------------
# Hom spaces
# ---------------------------------------------------------------------------


def _cyclic_vector(gs: GeneratorSet, seed=0, tries: int = 4):
    F, n = gs.field, gs.dim
    cands = []
    for i in range(n):
        e = [F.zero] * n
        e[i] = F.one
        cands.append(e)
    rng = random.Random(repr(("cyclic", seed)))
    for _ in range(tries):
        cands.append([F(rng.randrange(F.p)) for _ in range(n)])
    for v in cands:
        raw, words = spin_basis(gs.gens, v)
        if len(raw) == n:
            return raw, words
    return None


def _hom_direct(A: GeneratorSet, B: GeneratorSet) -> list[Matrix]:
    F = A.field
    da, db = A.dim, B.dim
    rows = []
    for Ag, Bg in zip(A.gens, B.gens):
        for r in range(db):
            for c in range(da):
                row = [F.zero] * (da * db)
                for k in range(da):
                    x = Ag.rows[k][c]
                    if not x.is_zero():
                        row[r * da + k] = row[r * da + k] + x
                for k in range(db):
                    x = Bg.rows[r][k]
                    if not x.is_zero():
                        row[k * da + c] = row[k * da + c] - x
                rows.append(row)
    K = kernel(Matrix(F, rows, da * db))
    return [Matrix(F, [v[r * da:(r + 1) * da] for r in range(db)], da) for v in K.basis()]


def hom_matrices(gens_a, gens_b, seed=0) -> list[Matrix]:
    """Basis of {X : X A_i = B_i X for all i}, X of shape dim B x dim A.

    With a cyclic vector v0 of A, X is determined by x = X v0; the spinning
    relations of A cut out the admissible x one linear condition block at a time.
    """
    A, B = _as_gens(gens_a), _as_gens(gens_b)
    if len(A) != len(B):
        raise GeneratorCountMismatch("generator sets must be indexed alike")
    F = A.field
    da, db = A.dim, B.dim
    cyc = _cyclic_vector(A, seed)
    if cyc is None:
        return _hom_direct(A, B)
    raw, words = cyc
    basis_mat = Matrix.from_columns(F, raw)
    binv = matinv(basis_mat)
    made = {(words[l][0], words[l][1]) for l in range(1, da)}
    Y: list[Matrix] = [Matrix.identity(F, db)]
    for l in range(1, da):
        parent, gi = words[l]
        Y.append(B.gens[gi] @ Y[parent])
    r = db
    for j in range(da):
        for gi, Ag in enumerate(A.gens):
            if r == 0:
                return []
            if (j, gi) in made:
                continue
            coords = binv.apply(Ag.apply(raw[j]))
            R = B.gens[gi] @ Y[j]
            for l, c in enumerate(coords):
                if not c.is_zero():
                    R = R - Y[l].scale(c)
            if R.is_zero():
                continue
            K = kernel(R)
            Nm = Matrix.from_columns(F, K.basis()) if K.dim else None
            r = K.dim
            if Nm is None:
                return []
            Y = [y @ Nm for y in Y]
    out = []
    for c in range(r):
        Xs = Matrix.from_columns(F, [y.column(c) for y in Y])
        X = Xs @ binv
        for Ag, Bg in zip(A.gens, B.gens):
            assert X @ Ag == Bg @ X
        out.append(X)
    return out


def hom_space(gens_a, gens_b, seed=0) -> Subspace:
    """Intertwiners as a subspace of row-major vectorized dim B x dim A matrices."""
    A, B = _as_gens(gens_a), _as_gens(gens_b)
    mats = hom_matrices(A, B, seed)
    return Subspace.from_vectors(A.field, A.dim * B.dim, [X.vectorize() for X in mats])


@dataclass
class IsotypicReport:
    isotypic: bool
    multiplicity: int
    hom_dim: int
    end_dim: int


def isotypic_check(sub_gens, big_gens, seed=0) -> IsotypicReport:
    """Is the big module L^m for the simple module L?  m = dim Hom(L, V) / dim End(L)."""
    L, V = _as_gens(sub_gens), _as_gens(big_gens)
    h = len(hom_matrices(L, V, seed))
    e = len(hom_matrices(L, L, seed))
    if e == 0:
        raise DimensionMismatch("End(L) is zero; L is not a module for these generators")
    m = h // e
    return IsotypicReport(h % e == 0 and m * L.dim == V.dim, m, h, e)
