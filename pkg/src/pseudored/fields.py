"""Exact arithmetic in k = F_p(t_1, ..., t_m) and in purely inseparable towers over k.

Base-field scalars are :class:`RatFunc` objects: a numerator/denominator pair of
``flint.nmod_mpoly`` polynomials in graded-lex order, kept with the gcd removed
and a monic denominator, so equality is structural.

A tower ``k' = k(s_1, ..., s_n)`` with ``s_j^(p^e_j)`` in the field below is a
:class:`Tower`; its elements are :class:`FieldElement` coordinate vectors over
the monomial basis ``prod s_j^i_j`` (0 <= i_j < p^e_j), first generator varying
fastest.
"""

from __future__ import annotations

import ast
import functools
import itertools
import random
import re
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

import flint

from .errors import (
    DivisionByZero,
    NotPrime,
    NotPurelyInseparable,
    ParseError,
    TowerMismatch,
)

# ---------------------------------------------------------------------------
# Expression parsing
# ---------------------------------------------------------------------------

_TOKEN_OK = re.compile(r"^[\sA-Za-z0-9_+\-*/^().]*$")


def parse_expression(text: str, names: Mapping[str, object], const: Callable[[int], object]):
    """Evaluate an arithmetic expression over ``+ - * / ^ ( )``, integers and names.

    Names are resolved through ``names``; anything else raises :class:`ParseError`.
    Exponents must be integer literals (optionally negated).
    """
    if not isinstance(text, str) or not text.strip():
        raise ParseError("empty expression")
    if not _TOKEN_OK.match(text):
        raise ParseError(f"illegal character in expression {text!r}")
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise ParseError(f"cannot parse {text!r}: {exc.msg}") from None

    def exponent(node) -> int:
        if isinstance(node, ast.Constant) and type(node.value) is int:
            return node.value
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = exponent(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        raise ParseError(f"exponent must be an integer literal in {text!r}")

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant):
            if type(node.value) is not int:
                raise ParseError(f"only integer constants are allowed: {node.value!r}")
            return const(node.value)
        if isinstance(node, ast.Name):
            if node.id not in names:
                raise ParseError(f"unknown identifier {node.id!r}")
            return names[node.id]
        if isinstance(node, ast.UnaryOp):
            if isinstance(node.op, ast.USub):
                return -ev(node.operand)
            if isinstance(node.op, ast.UAdd):
                return ev(node.operand)
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                return ev(node.left) ** exponent(node.right)
            left, right = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if isinstance(node.op, ast.Div):
                return left / right
        raise ParseError(f"unsupported syntax in {text!r}")

    return ev(tree)


# ---------------------------------------------------------------------------
# Base field F_p(t_1..t_m)
# ---------------------------------------------------------------------------


def _check_prime(p: int) -> None:
    if not isinstance(p, int) or p < 2 or not flint.fmpz(p).is_prime():
        raise NotPrime(f"{p!r} is not a prime")


class BaseField:
    """The rational function field F_p(names).  Obtain instances via :func:`base_field`."""

    def __init__(self, p: int, names: tuple[str, ...]):
        _check_prime(p)
        for n in names:
            if not n.isidentifier():
                raise ParseError(f"bad variable name {n!r}")
        if len(set(names)) != len(names):
            raise ParseError("repeated base variable name")
        self.p = p
        self.names = names
        self.ctx = flint.nmod_mpoly_ctx.get(names, modulus=p, ordering="deglex")
        self._one_poly = self.ctx.from_dict({(0,) * len(names): 1})
        self._zero_poly = self.ctx.from_dict({})
        self.zero = RatFunc(self, self._zero_poly, self._one_poly)
        self.one = RatFunc(self, self._one_poly, self._one_poly)

    @property
    def nvars(self) -> int:
        return len(self.names)

    def __repr__(self):
        return f"F_{self.p}({', '.join(self.names)})"

    def __reduce__(self):
        return (base_field, (self.p, self.names))

    # construction -----------------------------------------------------------

    def __call__(self, x) -> "RatFunc":
        if isinstance(x, RatFunc):
            if x.field is not self:
                raise TowerMismatch("scalar from a different base field")
            return x
        if isinstance(x, int):
            x %= self.p
            if x == 0:
                return self.zero
            if x == 1:
                return self.one
            return RatFunc(self, self._one_poly * x, self._one_poly)
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, flint.nmod_mpoly):
            return RatFunc(self, x, self._one_poly)
        raise TypeError(f"cannot coerce {x!r} into {self}")

    def frac(self, num, den) -> "RatFunc":
        return _make(self, num, den)

    def gen(self, name_or_index) -> "RatFunc":
        i = self.names.index(name_or_index) if isinstance(name_or_index, str) else name_or_index
        return RatFunc(self, self.ctx.gens()[i], self._one_poly)

    def gens(self) -> tuple["RatFunc", ...]:
        return tuple(self.gen(i) for i in range(self.nvars))

    def parse(self, text: str) -> "RatFunc":
        out = parse_expression(text, {n: self.gen(n) for n in self.names}, self)
        return self(out) if isinstance(out, int) else out

    def random(self, rng: random.Random, degree_bound: int, polynomial: bool = False) -> "RatFunc":
        num = self._random_poly(rng, degree_bound)
        if polynomial or degree_bound == 0 or rng.random() < 0.5:
            return RatFunc(self, num, self._one_poly)
        den = self._random_poly(rng, degree_bound)
        if den.is_zero():
            den = self._one_poly
        return _make(self, num, den)

    def _random_poly(self, rng: random.Random, degree_bound: int):
        terms = {}
        for mon in _monomials_upto(self.nvars, degree_bound):
            c = rng.randrange(self.p)
            if c:
                terms[mon] = c
        return self.ctx.from_dict(terms)

    # p-th powers ------------------------------------------------------------

    def p_components(self, a: "RatFunc", nu: int = 1) -> dict[tuple[int, ...], "RatFunc"]:
        """Split ``a = sum_b c_b^(p^nu) * t^b`` over exponents ``b`` in ``[0, p^nu)^m``.

        Returns the nonzero components ``c_b``.  The decomposition is unique since
        the monomials ``t^b`` form a basis of k over k^(p^nu).
        """
        P = self.p**nu
        if a.num.is_zero():
            return {}
        spread = a.num * a.den ** (P - 1)
        groups: dict[tuple[int, ...], dict] = {}
        for mon, c in spread.terms():
            b = tuple(x % P for x in mon)
            groups.setdefault(b, {})[tuple(x // P for x in mon)] = int(c)
        return {b: _make(self, self.ctx.from_dict(t), a.den) for b, t in sorted(groups.items())}

    def is_pth_power(self, a: "RatFunc") -> "RatFunc | None":
        """The p-th root of ``a`` if ``a`` lies in k^p, else ``None``."""
        comps = self.p_components(a, 1)
        if not comps:
            return self.zero
        zero_b = (0,) * self.nvars
        if set(comps) == {zero_b}:
            return comps[zero_b]
        return None

    # univariate polynomials over k -----------------------------------------

    def factor_univariate(self, coeffs: Sequence["RatFunc"]) -> list[tuple[list["RatFunc"], int]]:
        """Factor a polynomial in X over k (coefficients constant term first).

        Clears denominators, factors in F_p[t, X] and returns the factors of
        positive X-degree, made monic in X, with multiplicities.
        """
        coeffs = [self(c) for c in coeffs]
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        if len(coeffs) < 2:
            return []
        ext = flint.nmod_mpoly_ctx.get(self.names + ("_X",), modulus=self.p, ordering="deglex")
        lcm = self._one_poly
        for c in coeffs:
            if not c.den.is_one():
                lcm = lcm * (c.den / lcm.gcd(c.den))
        terms: dict = {}
        for j, c in enumerate(coeffs):
            if c.is_zero():
                continue
            scaled = c.num * (lcm / c.den)
            for mon, v in scaled.terms():
                terms[tuple(mon) + (j,)] = int(v)
        _, factors = ext.from_dict(terms).factor()
        out = []
        for f, mult in factors:
            by_deg: dict[int, dict] = {}
            for mon, v in f.terms():
                by_deg.setdefault(mon[-1], {})[tuple(mon[:-1])] = int(v)
            deg = max(by_deg)
            if deg == 0:
                continue
            lead = self.ctx.from_dict(by_deg[deg])
            monic = [_make(self, self.ctx.from_dict(by_deg[j]), lead) if j in by_deg else self.zero
                     for j in range(deg + 1)]
            out.append((monic, int(mult)))
        out.sort(key=lambda fm: (len(fm[0]), str(fm[0])))
        return out


@functools.lru_cache(maxsize=None)
def base_field(p: int, names: Sequence[str]) -> BaseField:
    return BaseField(p, tuple(names))


@functools.lru_cache(maxsize=None)
def _monomials_upto(nvars: int, degree: int) -> tuple[tuple[int, ...], ...]:
    return tuple(
        m for m in itertools.product(range(degree + 1), repeat=nvars) if sum(m) <= degree
    )


def _make(F: BaseField, num, den) -> "RatFunc":
    if den.is_zero():
        raise DivisionByZero("zero denominator")
    if num.is_zero():
        return F.zero
    if not den.is_one():
        g = num.gcd(den)
        if not g.is_one():
            num = num / g
            den = den / g
        lc = int(den.leading_coefficient())
        if lc != 1:
            inv = pow(lc, -1, F.p)
            num = num * inv
            den = den * inv
    return RatFunc(F, num, den)


class RatFunc:
    """An element of F_p(t_1..t_m) in canonical form."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field: BaseField, num, den):
        self.field = field
        self.num = num
        self.den = den

    # predicates ------------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def __bool__(self):
        return not self.num.is_zero()

    def degree(self) -> int:
        """Max of numerator and denominator total degree (0 for constants)."""
        return max(self.num.total_degree(), self.den.total_degree(), 0)

    # arithmetic --------------------------------------------------------------

    def _coerce(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            if other.field is not self.field:
                raise TowerMismatch("scalars from different base fields")
            return other
        if isinstance(other, int):
            return self.field(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o.num.is_zero():
            return self
        if self.num.is_zero():
            return o
        if self.den.is_one() and o.den.is_one():
            n = self.num + o.num
            if n.is_zero():
                return self.field.zero
            return RatFunc(self.field, n, self.den)
        if self.den == o.den:
            return _make(self.field, self.num + o.num, self.den)
        return _make(self.field, self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(self.field, -self.num, self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if self.num.is_zero() or o.num.is_zero():
            return self.field.zero
        if self.den.is_one() and o.den.is_one():
            return RatFunc(self.field, self.num * o.num, self.den)
        a, b, c, d = self.num, self.den, o.num, o.den
        g1 = a.gcd(d)
        if not g1.is_one():
            a, d = a / g1, d / g1
        g2 = c.gcd(b)
        if not g2.is_one():
            c, b = c / g2, b / g2
        num, den = a * c, b * d
        lc = int(den.leading_coefficient())
        if lc != 1:
            inv = pow(lc, -1, self.field.p)
            num, den = num * inv, den * inv
        return RatFunc(self.field, num, den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.num.is_zero():
            raise DivisionByZero("inverse of zero")
        num, den = self.den, self.num
        lc = int(den.leading_coefficient())
        if lc != 1:
            inv = pow(lc, -1, self.field.p)
            num, den = num * inv, den * inv
        return RatFunc(self.field, num, den)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return self.field.one
        return RatFunc(self.field, self.num**n, self.den**n)

    # comparison --------------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.field is other.field and self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((str(self.num), str(self.den)))

    def __str__(self):
        n = str(self.num)
        if self.den.is_one():
            return n
        if len(self.num) > 1:
            n = f"({n})"
        return f"{n}/({self.den})"

    def __repr__(self):
        return f"RatFunc({self})"

    def __reduce__(self):
        return (_ratfunc_from_str, (self.field, str(self)))

    def frobenius(self, nu: int = 1) -> "RatFunc":
        return self ** (self.field.p**nu)


def _ratfunc_from_str(F: BaseField, text: str) -> RatFunc:
    return F.parse(text)


# ---------------------------------------------------------------------------
# Towers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GeneratorSpec:
    """One generator ``name`` with ``name^(p^e) = power``.

    ``power`` may be an expression string (over the base variables and earlier
    generators), an int, a :class:`RatFunc` or a :class:`FieldElement` of the
    tower below.
    """

    name: str
    e: int
    power: object


@dataclass(frozen=True)
class TowerDescriptor:
    p: int
    base_vars: tuple[str, ...]
    gens: tuple[GeneratorSpec, ...] = field(default=())

    @classmethod
    def make(cls, p: int, base_vars: Iterable[str], gens: Iterable[tuple] = ()):
        return cls(p, tuple(base_vars), tuple(GeneratorSpec(*g) for g in gens))


class Tower:
    """A validated purely inseparable tower over a rational function field.

    Build through :func:`validate_tower`.  Attributes ``degree`` (= q) and
    ``exponent`` (= the least e with (k')^(p^e) inside k) are computed at
    validation time.
    """

    def __init__(self, base: BaseField, parent: "Tower | None", name: str | None, e: int | None, power=None):
        self.base = base
        self.p = base.p
        self.parent = parent
        if parent is None:
            self.names: tuple[str, ...] = ()
            self.exps: tuple[int, ...] = ()
            self.pe_powers: tuple[FieldElement, ...] = ()
        else:
            self.names = parent.names + (name,)
            self.exps = parent.exps + (e,)
            self.pe_powers = parent.pe_powers + (power,)
        self.sizes = tuple(self.p**x for x in self.exps)
        self.degree = 1
        strides = []
        for s in self.sizes:
            strides.append(self.degree)
            self.degree *= s
        self.strides = tuple(strides)
        self.basis_exps: tuple[tuple[int, ...], ...] = tuple(
            tuple(reversed(t)) for t in itertools.product(*[range(s) for s in reversed(self.sizes)])
        )
        self._reduce_cache: dict = {}
        self._table = self._build_table()
        self._zero_coords = (base.zero,) * self.degree
        self.zero = FieldElement(self, self._zero_coords)
        self.one = self.scalar(base.one)
        self._frob_basis = tuple(self.basis_element(i)._small_pow(self.p) for i in range(self.degree))
        self.exponent = self._compute_exponent()

    # structure ---------------------------------------------------------------

    @property
    def q(self) -> int:
        return self.degree

    @property
    def ngens(self) -> int:
        return len(self.names)

    def index(self, exps: Sequence[int]) -> int:
        return sum(i * s for i, s in zip(exps, self.strides))

    def _reduce(self, exps: tuple[int, ...]) -> dict[int, RatFunc]:
        hit = self._reduce_cache.get(exps)
        if hit is not None:
            return hit
        j = next((j for j in reversed(range(len(exps))) if exps[j] >= self.sizes[j]), None)
        if j is None:
            out = {self.index(exps): self.base.one}
        else:
            rest = list(exps)
            rest[j] -= self.sizes[j]
            out: dict[int, RatFunc] = {}
            for idx, c in enumerate(self.pe_powers[j].coords):
                if c.is_zero():
                    continue
                low = self.basis_exps[idx]
                combined = tuple(a + b for a, b in zip(rest, low))
                for k, v in self._reduce(combined).items():
                    out[k] = out.get(k, self.base.zero) + c * v
            out = {k: v for k, v in out.items() if not v.is_zero()}
        self._reduce_cache[exps] = out
        return out

    def _build_table(self):
        q = self.degree
        table = [[None] * q for _ in range(q)]
        for a in range(q):
            for b in range(a, q):
                ex = tuple(x + y for x, y in zip(self.basis_exps[a], self.basis_exps[b]))
                entry = tuple(sorted(self._reduce(ex).items()))
                table[a][b] = table[b][a] = entry
        return table

    def _compute_exponent(self) -> int:
        e = 0
        gens = [self.basis_element(self.strides[j]) for j in range(self.ngens)]
        while not all(g.in_base() for g in gens):
            gens = [g.frobenius(1) for g in gens]
            e += 1
        return e

    # elements ----------------------------------------------------------------

    def element(self, coords: Sequence) -> "FieldElement":
        if len(coords) != self.degree:
            raise ValueError(f"expected {self.degree} coordinates, got {len(coords)}")
        return FieldElement(self, tuple(self.base(c) for c in coords))

    def scalar(self, c) -> "FieldElement":
        c = self.base(c)
        return FieldElement(self, (c,) + self._zero_coords[1:])

    def basis_element(self, i: int) -> "FieldElement":
        coords = list(self._zero_coords)
        coords[i] = self.base.one
        return FieldElement(self, tuple(coords))

    def basis(self) -> tuple["FieldElement", ...]:
        return tuple(self.basis_element(i) for i in range(self.degree))

    def gen(self, name: str) -> "FieldElement":
        return self.basis_element(self.strides[self.names.index(name)])

    def embed(self, x: "FieldElement") -> "FieldElement":
        """Map an element of a tower below this one into this tower."""
        if x.tower is self:
            return x
        t = self.parent
        while t is not None and t is not x.tower:
            t = t.parent
        if t is None:
            raise TowerMismatch("element is not from a subtower")
        return FieldElement(self, x.coords + self._zero_coords[len(x.coords):])

    def parse(self, text: str) -> "FieldElement":
        names: dict[str, object] = {n: self.scalar(self.base.gen(n)) for n in self.base.names}
        for n in self.names:
            names[n] = self.gen(n)
        out = parse_expression(text, names, lambda i: self.scalar(i))
        return out

    def monomial_str(self, i: int) -> str:
        parts = []
        for name, x in zip(self.names, self.basis_exps[i]):
            if x == 1:
                parts.append(name)
            elif x > 1:
                parts.append(f"{name}^{x}")
        return "*".join(parts) if parts else "1"

    def tower_chain(self) -> list["Tower"]:
        chain, t = [], self
        while t is not None:
            chain.append(t)
            t = t.parent
        return chain[::-1]

    def __repr__(self):
        gens = ", ".join(
            f"{n}^{self.p}^{e}={pw}" for n, e, pw in zip(self.names, self.exps, self.pe_powers)
        )
        return f"Tower({self.base}; {gens or 'trivial'}; q={self.degree}, e={self.exponent})"

    def describe(self) -> str:
        lines = [f"p = {self.p}", f"base = {','.join(self.base.names)}"]
        for n, e, pw in zip(self.names, self.exps, self.pe_powers):
            lines.append(f"gen {n} : e = {e}, power = {pw}")
        return "\n".join(lines) + "\n"

    # arithmetic kernels --------------------------------------------------------

    def _mul(self, x: tuple, y: tuple) -> tuple:
        q = self.degree
        zero = self.base.zero
        if q == 1:
            return (x[0] * y[0],)
        out = [zero] * q
        xs = [(a, c) for a, c in enumerate(x) if not c.is_zero()]
        ys = [(b, c) for b, c in enumerate(y) if not c.is_zero()]
        table = self._table
        for a, ca in xs:
            row = table[a]
            for b, cb in ys:
                prod = ca * cb
                for idx, coef in row[b]:
                    out[idx] = out[idx] + (prod if coef.is_one() else prod * coef)
        return tuple(out)

    def mult_columns(self, x: "FieldElement") -> list[tuple]:
        """Coordinate vectors of ``x * m_i`` for each basis monomial ``m_i``."""
        return [self._mul(x.coords, self.basis_element(i).coords) for i in range(self.degree)]


def validate_tower(desc: TowerDescriptor) -> Tower:
    """Check a descriptor and build the tower, computing q and the exponent.

    Raises :class:`NotPrime` or :class:`NotPurelyInseparable`; the latter carries
    the p-th root witness.
    """
    _check_prime(desc.p)
    if desc.gens and not desc.base_vars:
        raise NotPurelyInseparable("a nontrivial tower needs at least one base variable (k must be imperfect)")
    base = base_field(desc.p, tuple(desc.base_vars))
    tower = Tower(base, None, None, None)
    seen = set(base.names)
    for g in desc.gens:
        if not isinstance(g.name, str) or not g.name.isidentifier() or g.name in seen:
            raise ParseError(f"bad or repeated generator name {g.name!r}")
        if not isinstance(g.e, int) or g.e < 1:
            raise ParseError(f"generator {g.name}: e must be a positive integer")
        power = _coerce_power(tower, g.power)
        root = pth_root(power)
        if root is not None:
            raise NotPurelyInseparable(
                f"power of {g.name} is a {desc.p}-th power: ({root})^{desc.p}", witness=root
            )
        seen.add(g.name)
        tower = Tower(base, tower, g.name, g.e, power)
    return tower


def _coerce_power(tower: Tower, power) -> "FieldElement":
    if isinstance(power, str):
        return tower.parse(power)
    if isinstance(power, int) or isinstance(power, RatFunc):
        return tower.scalar(power)
    if isinstance(power, FieldElement):
        return tower.embed(power)
    raise TypeError(f"cannot interpret generator power {power!r}")


def make_tower(p: int, base_vars: Iterable[str], gens: Iterable[tuple] = ()) -> Tower:
    """Shorthand: ``make_tower(2, ['t'], [('s', 2, 't')])``."""
    return validate_tower(TowerDescriptor.make(p, base_vars, gens))


_GEN_LINE = re.compile(r"^gen\s+([A-Za-z_]\w*)\s*:\s*e\s*=\s*(\d+)\s*,\s*power\s*=\s*(.+)$")


def parse_tower_text(text: str) -> TowerDescriptor:
    """Parse the line-oriented tower format (``p =``, ``base =``, ``gen NAME : e = E, power = EXPR``)."""
    p = None
    base: tuple[str, ...] | None = None
    gens = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("gen"):
            m = _GEN_LINE.match(line)
            if not m:
                raise ParseError(f"line {lineno}: malformed generator line {raw!r}")
            gens.append(GeneratorSpec(m.group(1), int(m.group(2)), m.group(3).strip()))
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep:
            raise ParseError(f"line {lineno}: expected 'key = value', got {raw!r}")
        if key == "p":
            try:
                p = int(value)
            except ValueError:
                raise ParseError(f"line {lineno}: p must be an integer") from None
        elif key == "base":
            base = tuple(v.strip() for v in value.split(",") if v.strip())
        elif key in ("factor",):
            continue
        else:
            raise ParseError(f"line {lineno}: unknown key {key!r}")
    if p is None:
        raise ParseError("missing 'p = <prime>' line")
    if base is None:
        base = ()
    return TowerDescriptor(p, base, tuple(gens))


def load_tower(path) -> Tower:
    with open(path, encoding="utf-8") as fh:
        return validate_tower(parse_tower_text(fh.read()))


# ---------------------------------------------------------------------------
# Field elements
# ---------------------------------------------------------------------------


class FieldElement:
    """An element of a tower, stored as canonical coordinates in k."""

    __slots__ = ("tower", "coords")

    def __init__(self, tower: Tower, coords: tuple):
        self.tower = tower
        self.coords = coords

    def _other(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.tower is not self.tower:
                raise TowerMismatch("elements belong to different towers")
            return other
        if isinstance(other, (int, RatFunc)):
            return self.tower.scalar(other)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.tower, tuple(a + b for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.tower, tuple(-a for a in self.coords))

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.tower, tuple(a - b for a, b in zip(self.coords, o.coords)))

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, RatFunc)):
            c = self.tower.base(other)
            return FieldElement(self.tower, tuple(a * c for a in self.coords))
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.tower, self.tower._mul(self.coords, o.coords))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        if o.in_base():
            return FieldElement(self.tower, tuple(a / o.coords[0] for a in self.coords))
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        p = self.tower.p
        if n >= p:
            # base-p digits; the p-th power map is cheap coordinatewise
            result = self.tower.one
            x = self
            while n:
                n, d = divmod(n, p)
                if d:
                    result = result * x._small_pow(d)
                if n:
                    x = x.frobenius(1)
            return result
        return self._small_pow(n)

    def _small_pow(self, n: int) -> "FieldElement":
        result = self.tower.one
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, RatFunc)):
            other = self.tower.scalar(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.tower is other.tower and self.coords == other.coords

    def __hash__(self):
        return hash((id(self.tower), self.coords))

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coords)

    def __bool__(self):
        return not self.is_zero()

    def in_base(self) -> bool:
        return all(c.is_zero() for c in self.coords[1:])

    def to_base(self) -> RatFunc:
        if not self.in_base():
            raise ValueError("element does not lie in the base field")
        return self.coords[0]

    def inverse(self, fast: bool = False) -> "FieldElement":
        """Multiplicative inverse.

        Default: solve ``M_a x = e_1`` with the multiplication matrix of ``a``.
        ``fast=True`` uses ``a^(p^e - 1) / a^(p^e)`` with ``a^(p^e)`` in k.
        """
        if self.is_zero():
            raise DivisionByZero("inverse of zero field element")
        if self.in_base():
            return self.tower.scalar(self.coords[0].inverse())
        if fast:
            pe = self.tower.p**self.tower.exponent
            norm = self.frobenius(self.tower.exponent).to_base()
            return (self ** (pe - 1)) * norm.inverse()
        from .linalg import Matrix, solve

        cols = self.tower.mult_columns(self)
        q = self.tower.degree
        M = Matrix(self.tower.base, [[cols[j][i] for j in range(q)] for i in range(q)])
        x = solve(M, self.tower.one.coords)
        if x is None:
            raise DivisionByZero("multiplication matrix is singular")
        return FieldElement(self.tower, tuple(x))

    def frobenius(self, nu: int = 1) -> "FieldElement":
        """``a^(p^nu)``, computed coordinate-wise from the p-th powers of the basis."""
        x = self
        t = self.tower
        for _ in range(nu):
            out = list(t._zero_coords)
            for c, fb in zip(x.coords, t._frob_basis):
                if c.is_zero():
                    continue
                cp = c ** t.p
                for i, v in enumerate(fb.coords):
                    if not v.is_zero():
                        out[i] = out[i] + cp * v
            x = FieldElement(t, tuple(out))
        return x

    def __str__(self):
        parts = []
        for i, c in enumerate(self.coords):
            if c.is_zero():
                continue
            mon = self.tower.monomial_str(i)
            cs = str(c)
            if mon == "1":
                parts.append(cs if c.is_polynomial() or "/" not in cs else cs)
                continue
            if c.is_one():
                parts.append(mon)
            elif c.is_polynomial() and len(c.num) == 1:
                parts.append(f"{cs}*{mon}")
            else:
                parts.append(f"({cs})*{mon}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"FieldElement({self})"


def pth_root(a: FieldElement) -> FieldElement | None:
    """The p-th root of ``a`` inside its own tower, or ``None`` if there is none.

    Writes every coordinate over the p-basis ``t^b`` of k/k^p and solves the
    resulting k-linear system for the coordinates of the root.
    """
    t = a.tower
    F = t.base
    if t.degree == 1:
        r = F.is_pth_power(a.coords[0])
        return None if r is None else t.scalar(r)
    if a.is_zero():
        return t.zero
    from .linalg import Matrix, solve

    betas = list(itertools.product(range(t.p), repeat=F.nvars))
    bidx = {b: i for i, b in enumerate(betas)}
    q = t.degree
    nrows = q * len(betas)

    def spread(coords) -> list:
        out = [F.zero] * nrows
        for l, c in enumerate(coords):
            for b, cb in F.p_components(c, 1).items():
                out[l * len(betas) + bidx[b]] = cb
        return out

    cols = [spread(fb.coords) for fb in t._frob_basis]
    M = Matrix(F, [[cols[j][r] for j in range(q)] for r in range(nrows)])
    x = solve(M, spread(a.coords))
    if x is None:
        return None
    root = FieldElement(t, tuple(x))
    assert root ** t.p == a
    return root


def is_pth_power(a: RatFunc) -> RatFunc | None:
    """p-th root of a base-field element, or ``None``."""
    return a.field.is_pth_power(a)


def random_element(
    tower: Tower, seed, degree_bound: int = 1, polynomial: bool = False
) -> FieldElement:
    """Deterministic pseudo-random element for a given seed.

    Coordinate numerators and denominators have total degree <= ``degree_bound``;
    ``polynomial=True`` forces denominators to 1.
    """
    rng = seed if isinstance(seed, random.Random) else random.Random(repr(seed))
    return FieldElement(
        tower, tuple(tower.base.random(rng, degree_bound, polynomial) for _ in range(tower.degree))
    )


def random_unit(tower: Tower, seed, degree_bound: int = 1, polynomial: bool = True) -> FieldElement:
    """Like :func:`random_element` but never zero."""
    rng = seed if isinstance(seed, random.Random) else random.Random(repr(seed))
    while True:
        x = random_element(tower, rng, degree_bound, polynomial)
        if not x.is_zero():
            return x
