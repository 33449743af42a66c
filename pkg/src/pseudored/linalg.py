"""Dense exact linear algebra over a base field F_p(t_1..t_m).

Matrices are row lists of :class:`~pseudored.fields.RatFunc`; vectors are plain
tuples.  Elimination re-canonicalizes each entry as it goes (every ``RatFunc``
operation returns a reduced fraction), and pivots are chosen with the smallest
degree to keep entry growth down.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import DimensionMismatch, ParseError, Singular
from .fields import BaseField, RatFunc


class Matrix:
    """An immutable-by-convention dense matrix over a :class:`BaseField`."""

    __slots__ = ("field", "rows", "nrows", "ncols")

    def __init__(self, field: BaseField, rows: Iterable[Sequence], ncols: int | None = None):
        self.field = field
        self.rows = [list(map(field, r)) for r in rows]
        self.nrows = len(self.rows)
        if ncols is None:
            ncols = len(self.rows[0]) if self.rows else 0
        self.ncols = ncols
        if any(len(r) != ncols for r in self.rows):
            raise DimensionMismatch("ragged matrix rows")

    @classmethod
    def _raw(cls, field: BaseField, rows: list[list], ncols: int) -> "Matrix":
        m = object.__new__(cls)
        m.field = field
        m.rows = rows
        m.nrows = len(rows)
        m.ncols = ncols
        return m

    @classmethod
    def identity(cls, field: BaseField, n: int) -> "Matrix":
        z, o = field.zero, field.one
        return cls._raw(field, [[o if i == j else z for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, field: BaseField, nrows: int, ncols: int) -> "Matrix":
        return cls._raw(field, [[field.zero] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def scalar(cls, field: BaseField, n: int, c) -> "Matrix":
        c = field(c)
        z = field.zero
        return cls._raw(field, [[c if i == j else z for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_columns(cls, field: BaseField, cols: Sequence[Sequence]) -> "Matrix":
        n = len(cols[0]) if cols else 0
        return cls._raw(field, [[field(c[i]) for c in cols] for i in range(n)], len(cols))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self) -> "Matrix":
        return Matrix._raw(self.field, [list(c) for c in zip(*self.rows)] if self.rows else [], self.nrows)

    T = property(transpose)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    # arithmetic --------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash(tuple(tuple(r) for r in self.rows))

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot add {self.shape} and {other.shape}")
        return Matrix._raw(self.field, [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot subtract {self.shape} and {other.shape}")
        return Matrix._raw(self.field, [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols)

    def __neg__(self):
        return Matrix._raw(self.field, [[-a for a in r] for r in self.rows], self.ncols)

    def scale(self, c) -> "Matrix":
        c = self.field(c)
        return Matrix._raw(self.field, [[a * c for a in r] for r in self.rows], self.ncols)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            return matmul(self, other)
        return self.apply(other)

    def apply(self, v: Sequence) -> tuple:
        if len(v) != self.ncols:
            raise DimensionMismatch(f"vector of length {len(v)} for {self.shape} matrix")
        nz = [(j, x) for j, x in enumerate(v) if not x.is_zero()]
        zero = self.field.zero
        out = []
        for r in self.rows:
            acc = zero
            for j, x in nz:
                a = r[j]
                if not a.is_zero():
                    acc = acc + a * x
            out.append(acc)
        return tuple(out)

    def __pow__(self, n: int) -> "Matrix":
        if not self.is_square():
            raise DimensionMismatch("power of a non-square matrix")
        if n < 0:
            return matinv(self) ** (-n)
        result = Matrix.identity(self.field, self.nrows)
        base = self
        while n:
            if n & 1:
                result = result @ base
            n >>= 1
            if n:
                base = base @ base
        return result

    def is_zero(self) -> bool:
        return all(a.is_zero() for r in self.rows for a in r)

    def is_scalar(self) -> bool:
        if not self.is_square():
            return False
        if self.nrows == 0:
            return True
        c = self.rows[0][0]
        return all(
            (a == c) if i == j else a.is_zero()
            for i, r in enumerate(self.rows)
            for j, a in enumerate(r)
        )

    def is_identity(self) -> bool:
        return self.is_scalar() and (self.nrows == 0 or self.rows[0][0].is_one())

    def vectorize(self) -> tuple:
        """Row-major flattening."""
        return tuple(a for r in self.rows for a in r)

    def kron(self, other: "Matrix") -> "Matrix":
        rows = []
        for r in self.rows:
            for s in other.rows:
                rows.append([a * b for a in r for b in s])
        return Matrix._raw(self.field, rows, self.ncols * other.ncols)

    def rank(self) -> int:
        return rref(self)[1]

    def det(self) -> RatFunc:
        return det(self)

    def inverse(self) -> "Matrix":
        return matinv(self)

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols})"

    def __str__(self):
        return format_matrix(self)


def block_diag(field: BaseField, blocks: Sequence[Matrix]) -> Matrix:
    n = sum(b.nrows for b in blocks)
    out = Matrix.zeros(field, n, n).rows
    off = 0
    for b in blocks:
        for i, r in enumerate(b.rows):
            out[off + i][off:off + b.ncols] = r
        off += b.nrows
    return Matrix._raw(field, out, n)


def matmul(A: Matrix, B: Matrix) -> Matrix:
    if A.ncols != B.nrows:
        raise DimensionMismatch(f"cannot multiply {A.shape} by {B.shape}")
    zero = A.field.zero
    Bt = [[(i, x) for i, x in enumerate(col) if not x.is_zero()] for col in zip(*B.rows)] if B.rows else []
    rows = []
    for r in A.rows:
        row = []
        for col in Bt:
            acc = zero
            for i, x in col:
                a = r[i]
                if not a.is_zero():
                    acc = acc + a * x
            row.append(acc)
        if not Bt:
            row = [zero] * B.ncols
        rows.append(row)
    return Matrix._raw(A.field, rows, B.ncols)


# ---------------------------------------------------------------------------
# Elimination
# ---------------------------------------------------------------------------


def _pivot_weight(x: RatFunc) -> tuple:
    return (x.num.total_degree() + x.den.total_degree(), len(x.num) + len(x.den))


def _rref_rows(field: BaseField, rows: list[list], ncols: int, ncols_pivot: int | None = None):
    """In-place Gauss-Jordan on a list of rows; returns the pivot columns."""
    if ncols_pivot is None:
        ncols_pivot = ncols
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols_pivot):
        if r == nrows:
            break
        best, best_w = None, None
        for i in range(r, nrows):
            x = rows[i][c]
            if not x.is_zero():
                w = _pivot_weight(x)
                if best is None or w < best_w:
                    best, best_w = i, w
                    if w[0] == 0 and w[1] == 2:
                        break
        if best is None:
            continue
        rows[r], rows[best] = rows[best], rows[r]
        prow = rows[r]
        piv = prow[c]
        if not piv.is_one():
            inv = piv.inverse()
            prow = [x if x.is_zero() else x * inv for x in prow]
            rows[r] = prow
        nz = [(j, prow[j]) for j in range(c + 1, ncols) if not prow[j].is_zero()]
        for i in range(nrows):
            if i == r:
                continue
            row = rows[i]
            f = row[c]
            if f.is_zero():
                continue
            row[c] = field.zero
            for j, x in nz:
                row[j] = row[j] - f * x
        pivots.append(c)
        r += 1
    return pivots


def rref(M: Matrix) -> tuple[Matrix, int, list[int]]:
    """Reduced row echelon form, rank and pivot columns.  Zero rows are kept at the bottom."""
    rows = [list(r) for r in M.rows]
    pivots = _rref_rows(M.field, rows, M.ncols)
    return Matrix._raw(M.field, rows, M.ncols), len(pivots), pivots


def det(M: Matrix) -> RatFunc:
    if not M.is_square():
        raise DimensionMismatch("determinant of a non-square matrix")
    F = M.field
    rows = [list(r) for r in M.rows]
    n = M.nrows
    d = F.one
    for c in range(n):
        best, best_w = None, None
        for i in range(c, n):
            x = rows[i][c]
            if not x.is_zero():
                w = _pivot_weight(x)
                if best is None or w < best_w:
                    best, best_w = i, w
        if best is None:
            return F.zero
        if best != c:
            rows[c], rows[best] = rows[best], rows[c]
            d = -d
        piv = rows[c][c]
        d = d * piv
        inv = piv.inverse()
        nz = [(j, rows[c][j] * inv) for j in range(c + 1, n) if not rows[c][j].is_zero()]
        for i in range(c + 1, n):
            f = rows[i][c]
            if f.is_zero():
                continue
            row = rows[i]
            for j, x in nz:
                row[j] = row[j] - f * x
    return d


def solve(A: Matrix, b: Sequence) -> tuple | None:
    """One solution x of ``A x = b``, or ``None`` when the system is inconsistent."""
    if len(b) != A.nrows:
        raise DimensionMismatch(f"right-hand side of length {len(b)} for {A.shape} system")
    F = A.field
    rows = [list(r) + [F(x)] for r, x in zip(A.rows, b)]
    pivots = _rref_rows(F, rows, A.ncols + 1, A.ncols)
    for row in rows[len(pivots):]:
        if not row[-1].is_zero():
            return None
    x = [F.zero] * A.ncols
    for i, c in enumerate(pivots):
        x[c] = rows[i][-1]
    return tuple(x)


def kernel(A: Matrix) -> "Subspace":
    """Right kernel {x : A x = 0}."""
    F = A.field
    E, rank, pivots = rref(A)
    free = [j for j in range(A.ncols) if j not in set(pivots)]
    basis = []
    for f in free:
        v = [F.zero] * A.ncols
        v[f] = F.one
        for i, c in enumerate(pivots):
            v[c] = -E.rows[i][f]
        basis.append(v)
    return Subspace.from_vectors(F, A.ncols, basis)


def matinv(A: Matrix) -> Matrix:
    if not A.is_square():
        raise DimensionMismatch("inverse of a non-square matrix")
    F = A.field
    n = A.nrows
    I = Matrix.identity(F, n)
    rows = [list(r) + list(s) for r, s in zip(A.rows, I.rows)]
    pivots = _rref_rows(F, rows, 2 * n, n)
    if len(pivots) < n:
        raise Singular("matrix is singular")
    return Matrix._raw(F, [r[n:] for r in rows], n)


def primitive(v: Sequence) -> list:
    """The multiple of ``v`` with polynomial entries and no common polynomial factor."""
    nz = [x for x in v if not x.is_zero()]
    if not nz:
        return list(v)
    F = nz[0].field
    den = nz[0].den
    for x in nz[1:]:
        den = (den * x.den) // den.gcd(x.den)
    nums = [x.num * (den // x.den) if not x.is_zero() else None for x in v]
    g = None
    for n in nums:
        if n is not None:
            g = n if g is None else g.gcd(n)
    return [F.frac(n // g, F._one_poly) if n is not None else F.zero for n in nums]


# ---------------------------------------------------------------------------
# Subspaces
# ---------------------------------------------------------------------------


class Subspace:
    """A subspace of F^n held as a reduced row-echelon basis with strictly increasing pivots."""

    __slots__ = ("field", "ambient_dim", "rows", "pivots")

    def __init__(self, field: BaseField, ambient_dim: int, rows: list[list], pivots: list[int]):
        self.field = field
        self.ambient_dim = ambient_dim
        self.rows = rows
        self.pivots = pivots

    @classmethod
    def from_vectors(cls, field: BaseField, ambient_dim: int, vectors: Iterable[Sequence]) -> "Subspace":
        rows = [list(map(field, v)) for v in vectors]
        for r in rows:
            if len(r) != ambient_dim:
                raise DimensionMismatch(f"vector of length {len(r)} in {ambient_dim}-space")
        pivots = _rref_rows(field, rows, ambient_dim)
        return cls(field, ambient_dim, rows[: len(pivots)], pivots)

    @classmethod
    def zero(cls, field: BaseField, n: int) -> "Subspace":
        return cls(field, n, [], [])

    @classmethod
    def full(cls, field: BaseField, n: int) -> "Subspace":
        return cls(field, n, Matrix.identity(field, n).rows, list(range(n)))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __len__(self):
        return self.dim

    def basis(self) -> list[tuple]:
        return [tuple(r) for r in self.rows]

    def matrix(self) -> Matrix:
        return Matrix._raw(self.field, [list(r) for r in self.rows], self.ambient_dim)

    def is_zero(self) -> bool:
        return not self.rows

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def residual(self, v: Sequence) -> list:
        """``v`` minus its echelon projection; zero iff ``v`` lies in the subspace."""
        v = list(v)
        for row, c in zip(self.rows, self.pivots):
            f = v[c]
            if f.is_zero():
                continue
            for j in range(c, self.ambient_dim):
                x = row[j]
                if not x.is_zero():
                    v[j] = v[j] - f * x
        return v

    def contains(self, v: Sequence) -> bool:
        return all(x.is_zero() for x in self.residual(v))

    __contains__ = contains

    def coordinates(self, v: Sequence) -> tuple:
        """Coefficients of ``v`` in the echelon basis (``v`` must lie in the subspace)."""
        if not self.contains(v):
            raise ValueError("vector is not in the subspace")
        return tuple(v[c] for c in self.pivots)

    def contains_space(self, other: "Subspace") -> bool:
        return all(self.contains(r) for r in other.rows)

    def __add__(self, other: "Subspace") -> "Subspace":
        if other.ambient_dim != self.ambient_dim:
            raise DimensionMismatch("subspaces of different ambient spaces")
        return Subspace.from_vectors(self.field, self.ambient_dim, self.rows + other.rows)

    def intersection(self, other: "Subspace") -> "Subspace":
        if other.ambient_dim != self.ambient_dim:
            raise DimensionMismatch("subspaces of different ambient spaces")
        # x = sum a_i u_i = sum b_j w_j  <=>  (a, -b) in ker [U^T | W^T]
        F = self.field
        if self.is_zero() or other.is_zero():
            return Subspace.zero(F, self.ambient_dim)
        cols = self.rows + [[-x for x in r] for r in other.rows]
        K = kernel(Matrix.from_columns(F, cols))
        vecs = []
        for k in K.rows:
            v = [F.zero] * self.ambient_dim
            for a, u in zip(k[: self.dim], self.rows):
                if not a.is_zero():
                    v = [x + a * y for x, y in zip(v, u)]
            vecs.append(v)
        return Subspace.from_vectors(F, self.ambient_dim, vecs)

    def annihilator(self) -> "Subspace":
        """{x : u . x = 0 for every u in the subspace}."""
        if self.is_zero():
            return Subspace.full(self.field, self.ambient_dim)
        return kernel(self.matrix())

    def is_invariant(self, gens: Sequence[Matrix]) -> bool:
        return all(self.contains(g.apply(r)) for g in gens for r in self.rows)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.pivots == other.pivots and self.rows == other.rows

    def __hash__(self):
        return hash((self.ambient_dim, tuple(self.pivots), tuple(tuple(r) for r in self.rows)))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


class _EchelonBuilder:
    """Incremental semi-echelon basis used while spinning."""

    def __init__(self, field: BaseField, n: int):
        self.field = field
        self.n = n
        self.rows: list[list] = []
        self.pivots: list[int] = []

    def reduce(self, v: Sequence) -> list:
        v = list(v)
        for row, c in zip(self.rows, self.pivots):
            f = v[c]
            if f.is_zero():
                continue
            for j in range(self.n):
                x = row[j]
                if not x.is_zero():
                    v[j] = v[j] - f * x
        return v

    def add(self, v: Sequence) -> list | None:
        """Reduce ``v``; if nonzero, store it (pivot normalized to 1) and return it."""
        v = self.reduce(v)
        for c, x in enumerate(v):
            if not x.is_zero():
                if not x.is_one():
                    inv = x.inverse()
                    v = [y if y.is_zero() else y * inv for y in v]
                self.rows.append(v)
                self.pivots.append(c)
                return v
        return None

    @property
    def dim(self) -> int:
        return len(self.rows)

    def subspace(self) -> Subspace:
        return Subspace.from_vectors(self.field, self.n, self.rows)


def spin(generators: Sequence[Matrix], seeds: Iterable[Sequence], field: BaseField | None = None,
         n: int | None = None, words: list | None = None) -> Subspace:
    """Smallest subspace containing ``seeds`` and invariant under every generator.

    If ``words`` is a list it receives, for each basis vector found, a pair
    ``(parent_index, generator_index)`` (``(None, seed_index)`` for seeds), so the
    spinning basis can be replayed as words in the generators.
    """
    seeds = list(seeds)
    if field is None:
        field = generators[0].field if generators else None
    if n is None:
        n = generators[0].nrows if generators else (len(seeds[0]) if seeds else 0)
    if field is None:
        raise ValueError("cannot determine the base field")
    for g in generators:
        if g.nrows != n or g.ncols != n:
            raise DimensionMismatch(f"generator of shape {g.shape} in spin of dimension {n}")
    eb = _EchelonBuilder(field, n)
    raw: list[tuple] = []
    for si, s in enumerate(seeds):
        if len(s) != n:
            raise DimensionMismatch(f"seed of length {len(s)} in spin of dimension {n}")
        if eb.add(s) is not None:
            raw.append(tuple(field(x) for x in s))
            if words is not None:
                words.append((None, si))
    i = 0
    while i < len(raw) and eb.dim < n:
        v = raw[i]
        for gi, g in enumerate(generators):
            w = g.apply(v)
            if eb.add(w) is not None:
                raw.append(w)
                if words is not None:
                    words.append((i, gi))
                if eb.dim == n:
                    break
        i += 1
    if eb.dim == n:
        return Subspace.full(field, n)
    return eb.subspace()


def spin_basis(generators: Sequence[Matrix], seed: Sequence) -> tuple[list[tuple], list]:
    """Spin one vector, returning the raw spinning vectors and their words."""
    words: list = []
    field = generators[0].field
    n = generators[0].nrows
    eb = _EchelonBuilder(field, n)
    raw: list[tuple] = []
    if eb.add(seed) is not None:
        raw.append(tuple(seed))
        words.append((None, 0))
    i = 0
    while i < len(raw) and eb.dim < n:
        for gi, g in enumerate(generators):
            w = g.apply(raw[i])
            if eb.add(w) is not None:
                raw.append(w)
                words.append((i, gi))
        i += 1
    return raw, words


# ---------------------------------------------------------------------------
# Text format
# ---------------------------------------------------------------------------


def format_matrix(M: Matrix) -> str:
    """One row per line, entries separated by ``|``."""
    return "\n".join(" | ".join(str(x) for x in r) for r in M.rows)


def parse_matrix(field: BaseField, text: str) -> Matrix:
    rows = []
    for line in text.splitlines():
        if not line.strip():
            continue
        rows.append([field.parse(x.strip()) for x in line.split("|")])
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise ParseError("ragged matrix text")
    return Matrix(field, rows)


# ---------------------------------------------------------------------------
# characteristic polynomials
# ---------------------------------------------------------------------------


def _upoly_mul(F: BaseField, f: list, g: list) -> list:
    out = [F.zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a.is_zero():
            continue
        for j, b in enumerate(g):
            if not b.is_zero():
                out[i + j] = out[i + j] + a * b
    return out


def _upoly_add(F: BaseField, f: list, g: list) -> list:
    n = max(len(f), len(g))
    return [(f[i] if i < len(f) else F.zero) + (g[i] if i < len(g) else F.zero) for i in range(n)]


def hessenberg(M: Matrix) -> Matrix:
    """Upper Hessenberg form similar to ``M`` (elementary similarity transforms)."""
    if not M.is_square():
        raise DimensionMismatch("Hessenberg form of a non-square matrix")
    n = M.nrows
    H = [list(r) for r in M.rows]
    for m in range(1, n - 1):
        best, best_w = None, None
        for i in range(m, n):
            x = H[i][m - 1]
            if not x.is_zero():
                w = _pivot_weight(x)
                if best is None or w < best_w:
                    best, best_w = i, w
        if best is None:
            continue
        if best != m:
            H[m], H[best] = H[best], H[m]
            for r in H:
                r[m], r[best] = r[best], r[m]
        inv = H[m][m - 1].inverse()
        for i in range(m + 1, n):
            if H[i][m - 1].is_zero():
                continue
            u = H[i][m - 1] * inv
            rm, ri = H[m], H[i]
            for j in range(n):
                if not rm[j].is_zero():
                    ri[j] = ri[j] - u * rm[j]
            for r in H:
                if not r[i].is_zero():
                    r[m] = r[m] + u * r[i]
    return Matrix._raw(M.field, H, n)


def charpoly(M: Matrix) -> list:
    """Characteristic polynomial det(X - M) as coefficients, constant term first."""
    F = M.field
    H = hessenberg(M).rows
    n = len(H)
    polys = [[F.one]]
    for m in range(1, n + 1):
        p = _upoly_mul(F, [-H[m - 1][m - 1], F.one], polys[m - 1])
        prod = F.one
        for i in range(1, m):
            prod = prod * H[m - i][m - i - 1]
            if prod.is_zero():
                break
            c = H[m - i - 1][m - 1] * prod
            if not c.is_zero():
                p = _upoly_add(F, p, [-c * x for x in polys[m - i - 1]])
        polys.append(p)
    return polys[n]


def poly_eval_matrix(f: Sequence, M: Matrix) -> Matrix:
    """f(M) for f given as coefficients (constant term first)."""
    F = M.field
    n = M.nrows
    terms = [(j, c) for j, c in enumerate(f) if not c.is_zero()]
    if len(terms) <= 2:
        # binomials such as X^(p^a) - c: square-and-multiply beats Horner
        out = Matrix.zeros(F, n, n)
        for j, c in terms:
            out = out + (M**j).scale(c)
        return out
    out = Matrix.scalar(F, n, f[-1])
    for c in reversed(f[:-1]):
        out = out @ M
        if not c.is_zero():
            out = out + Matrix.scalar(F, n, c)
    return out
