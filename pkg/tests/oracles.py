"""Independent reference computations used by the tests.

Each oracle works from a definition rather than from the library's own
shortcuts: determinants by sympy, subspaces by explicit linear systems,
orbits by enumerating the whole group.
"""

import itertools
import random

import sympy

from pseudored.fields import FieldElement
from pseudored.linalg import Matrix, Subspace, kernel, primitive


def sympy_det_mod_p(rows, p):
    """Determinant of a matrix of polynomial strings, reduced mod p."""
    M = sympy.Matrix([[sympy.sympify(x.replace("^", "**")) for x in r] for r in rows])
    d = sympy.expand(M.det(method="berkowitz"))
    return sympy.Poly(d, *sorted(d.free_symbols, key=str), modulus=p)


def poly_mod_p(text, p, gens):
    return sympy.Poly(sympy.sympify(text.replace("^", "**")), *gens, modulus=p)


def stabilizer_by_annihilator(W: Subspace, tower) -> Subspace:
    """Solve x*w in W for all basis vectors w of W as one linear system in coords(x).

    x*w in W iff every functional vanishing on W kills x*w.
    """
    # rescaling w's and functionals to polynomial vectors leaves the system's solutions unchanged
    ann = [primitive(f) for f in W.annihilator().basis()]
    q = tower.degree
    rows = []
    for w in W.basis():
        wel = FieldElement(tower, tuple(primitive(w)))
        cols = [(tower.basis_element(i) * wel).coords for i in range(q)]
        for f in ann:
            rows.append([sum((a * b for a, b in zip(f, cols[i])), tower.base.zero) for i in range(q)])
    if not rows:
        return Subspace.full(tower.base, q)
    return kernel(Matrix(tower.base, rows))


def brute_closure(lams, factors, tower, seed=0, per=None):
    """Span of 1 and the products prod_i u_i^lam_i over sampled u_i in the factors, closed under products."""
    rng = random.Random(repr(("closure", seed, tuple(lams))))
    vecs = [tower.one.coords]
    per = per or 4 * tower.degree
    for _ in range(per):
        x = tower.one
        for lam, F in zip(lams, factors):
            u = F.random_unit(rng, 1)
            x = x * (u.inverse() ** -lam if lam < 0 else u**lam)
        vecs.append(x.coords)
    W = Subspace.from_vectors(tower.base, tower.degree, vecs)
    while True:
        els = [FieldElement(tower, tuple(r)) for r in W.rows]
        bigger = Subspace.from_vectors(tower.base, tower.degree,
                                       W.rows + [(a * b).coords for a in els for b in els])
        if bigger.dim == W.dim:
            return W
        W = bigger


def brute_orbit_count(gens, box, rank):
    """Orbits as connected components of the graph x -> g x, inside a stable box."""
    pts = list(itertools.product(range(box + 1), repeat=rank))
    parent = {v: v for v in pts}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for g in gens:
        for v in pts:
            w = tuple(sum(a * x for a, x in zip(r, v)) for r in g)
            parent[find(v)] = find(w)
    return len({find(v) for v in pts})

