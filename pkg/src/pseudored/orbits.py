"""Orbits of a finite group of lattice automorphisms on dominant weights in a box."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .errors import CapExceeded, DominanceViolated, NotInvertible, ParseError

IntMatrix = tuple[tuple[int, ...], ...]


def _det(M: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant."""
    A = [list(r) for r in M]
    n = len(A)
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1] if n else 1


def _mul(A: IntMatrix, B: IntMatrix) -> IntMatrix:
    return tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in zip(*B)) for r in A)


def _apply(A: IntMatrix, v: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(sum(a * x for a, x in zip(r, v)) for r in A)


def _identity(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


@dataclass(frozen=True)
class GaloisAction:
    rank: int
    gens: tuple[IntMatrix, ...]
    dominance: tuple[tuple[int, ...], ...] = ()
    names: tuple[str, ...] = ()

    def __post_init__(self):
        for g in self.gens:
            if len(g) != self.rank or any(len(r) != self.rank for r in g):
                raise NotInvertible("generator has the wrong shape")
            if abs(_det(g)) != 1:
                raise NotInvertible(f"generator {g} is not invertible over the integers")
        if not self.dominance:
            object.__setattr__(self, "dominance", _identity(self.rank))

    @classmethod
    def make(cls, gens, dominance=(), names=()) -> "GaloisAction":
        gens = tuple(tuple(tuple(int(x) for x in r) for r in g) for g in gens)
        rank = len(gens[0]) if gens else len(dominance[0])
        return cls(rank, gens, tuple(tuple(d) for d in dominance), tuple(names))

    def is_dominant(self, v) -> bool:
        return all(sum(a * x for a, x in zip(d, v)) >= 0 for d in self.dominance)

    def group(self, cap: int = 10_000) -> list[IntMatrix]:
        """All elements of the generated group (it must be finite)."""
        e = _identity(self.rank)
        seen = {e}
        frontier = [e]
        while frontier:
            nxt = []
            for x in frontier:
                for g in self.gens:
                    y = _mul(g, x)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
                        if len(seen) > cap:
                            raise CapExceeded(f"group has more than {cap} elements")
            frontier = nxt
        return sorted(seen)


def box_points(action: GaloisAction, box) -> list[tuple[int, ...]]:
    """Dominant points of the box; ``box`` is N (coordinates 0..N) or per-coordinate (lo, hi) pairs."""
    if isinstance(box, int):
        ranges = [range(0, box + 1)] * action.rank
    else:
        ranges = [range(lo, hi + 1) for lo, hi in box]
    return [v for v in itertools.product(*ranges) if action.is_dominant(v)]


def _in_box(v, box, rank) -> bool:
    if isinstance(box, int):
        return all(0 <= x <= box for x in v)
    return all(lo <= x <= hi for x, (lo, hi) in zip(v, box))


@dataclass(frozen=True)
class Orbit:
    representative: tuple[int, ...]
    members: tuple[tuple[int, ...], ...]
    truncated: bool = False

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass
class OrbitReport:
    orbits: list[Orbit]
    npoints: int
    box: object = None

    @property
    def count(self) -> int:
        return len(self.orbits)

    @property
    def truncated(self) -> list[Orbit]:
        return [o for o in self.orbits if o.truncated]


def orbits(action: GaloisAction, box, cap: int = 10_000) -> OrbitReport:
    """Partition the dominant points of the box into orbits.

    Orbits are followed through the whole lattice; an orbit with members
    outside the box is kept (in-box part only) and flagged as truncated.
    """
    pts = box_points(action, box)
    pts_set = set(pts)
    seen: set = set()
    out = []
    for v in pts:
        if v in seen:
            continue
        orb = {v}
        frontier = [v]
        while frontier:
            nxt = []
            for x in frontier:
                for g in action.gens:
                    y = _apply(g, x)
                    if y not in orb:
                        if not action.is_dominant(y):
                            raise DominanceViolated(f"{g} sends dominant {x} to non-dominant {y}")
                        orb.add(y)
                        nxt.append(y)
                        if len(orb) > cap:
                            raise CapExceeded(f"orbit of {v} exceeds {cap} points")
            frontier = nxt
        inside = tuple(sorted(y for y in orb if y in pts_set))
        seen.update(inside)
        out.append(Orbit(inside[0], inside, len(inside) != len(orb)))
    out.sort(key=lambda o: o.representative)
    return OrbitReport(out, len(pts), box)


def burnside_count(action: GaloisAction, box) -> int:
    """Orbit count from fixed points: sum |Fix(g)| / |group|.  Requires a stable box."""
    grp = action.group()
    pts = box_points(action, box)
    for g in action.gens:
        for v in pts:
            if not _in_box(_apply(g, v), box, action.rank):
                raise DominanceViolated("box is not stable under the action; Burnside does not apply")
    total = sum(sum(1 for v in pts if _apply(g, v) == v) for g in grp)
    if total % len(grp):
        raise ArithmeticError("fixed-point total not divisible by the group order")
    return total // len(grp)


def multiplicity_stub(orbit: Orbit, name: str = "V") -> str:
    """Decomposition statement for the orbit; the common multiplicity is left symbolic."""
    summands = " ⊕ ".join(f"L({','.join(map(str, m))})^m" for m in orbit.members)
    note = " (orbit truncated by the box)" if orbit.truncated else ""
    if orbit.size == 1:
        return f"{name}_K ≅ {summands}, a single summand with multiplicity m{note}"
    return f"{name}_K ≅ {summands}, all {orbit.size} summands with the same multiplicity m{note}"


def parse_action_text(text: str, source: str = "<action>") -> GaloisAction:
    """Action file::

        rank 2
        dominance 1 0      # optional, repeatable; defaults to the coordinate functionals
        dominance 0 1
        gen swap           # followed by `rank` rows of integers
        0 1
        1 0
    """
    rank = None
    dominance: list[tuple[int, ...]] = []
    gens: list[list[tuple[int, ...]]] = []
    names: list[str] = []
    current: list | None = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        try:
            if head == "rank":
                rank = int(rest[0])
                if rank < 1 or len(rest) != 1:
                    raise ValueError
            elif head == "dominance":
                dominance.append(tuple(int(x) for x in rest))
            elif head == "gen":
                current = []
                gens.append(current)
                names.append(rest[0] if rest else f"g{len(gens) - 1}")
            else:
                if current is None:
                    raise ValueError
                current.append(tuple(int(x) for x in line.split()))
        except (ValueError, IndexError):
            raise ParseError(f"{source}:{lineno}: cannot parse {raw.strip()!r}") from None
    if rank is None:
        raise ParseError(f"{source}: missing 'rank' line")
    for d in dominance:
        if len(d) != rank:
            raise ParseError(f"{source}: dominance functional {d} has the wrong length")
    for name, g in zip(names, gens):
        if len(g) != rank or any(len(r) != rank for r in g):
            raise ParseError(f"{source}: generator {name} is not {rank}x{rank}")
    if not gens:
        gens_t: tuple = ()
    else:
        gens_t = tuple(tuple(g) for g in gens)
    return GaloisAction(rank, gens_t, tuple(dominance), tuple(names))


def load_action(path) -> GaloisAction:
    return parse_action_text(Path(path).read_text(), str(path))


def swap_action() -> GaloisAction:
    return GaloisAction.make([((0, 1), (1, 0))], names=("swap",))


def trivial_action(rank: int = 2) -> GaloisAction:
    return GaloisAction(rank, (), (), ())
