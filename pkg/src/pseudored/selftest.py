"""Golden-file regression checks behind ``pseudored selftest``.

Each check renders canonical text (no seeds, timings or certificates, only
verdicts and exact values) and compares it byte for byte with
``<golden dir>/<name>.txt``.
"""

from __future__ import annotations

import difflib
import itertools
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

from . import dimension, meataxe, orbits, reps, subfields, weil
from .fields import load_tower, random_element
from .linalg import format_matrix


def _data(*parts) -> Path:
    from .cli import data_path

    return data_path(*parts)


def _tower(name: str):
    return load_tower(_data("towers", name + ".tower"))


@dataclass
class CheckResult:
    name: str
    ok: bool
    path: Path
    message: str = ""
    diff: list[str] = field(default_factory=list)


def _coords(name: str, seed) -> list[str]:
    T = _tower(name)
    g = weil.generic_element(T)
    prof = weil.coordinate_profile(g)
    lines = [f"tower {name}", "matrix:"] + format_matrix(weil.mult_matrix(g)).splitlines()
    lines += [f"d_hat = {prof.d_hat}", f"det = {prof.det}"]
    pe = T.p**T.exponent
    ok = True
    for i in range(20):
        u = random_element(T, ("selftest", name, seed, i), 1, polynomial=True)
        if u.is_zero():
            continue
        pr = weil.coordinate_profile(u)
        ok &= pr.det**pe == pr.d_hat**T.degree and weil.inverse_coordinate_identity_check(u)
    lines.append(f"sampled profiles consistent: {str(ok).lower()}")
    return lines


def check_coords_p3_cube(seed) -> list[str]:
    return _coords("p3_cube", seed)


def check_coords_p2_biquad(seed) -> list[str]:
    return _coords("p2_biquad", seed)


GM_TOWERS = ("p2_s2", "p2_s4", "p2_s2_r2", "p3_s3", "p3_s9")


def check_gmfield(seed) -> list[str]:
    lines = []
    for name in GM_TOWERS:
        T = _tower(name)
        for lam in [x for x in range(-6, 7) if x]:
            deg = subfields.lambda_field(lam, T).degree
            brute = subfields.brute_lambda_span(lam, T, seed=("selftest", seed, lam)).dim
            rep = reps.build_LC(lam, T)
            v = meataxe.is_irreducible_commutative(meataxe.generator_set(rep, T, seed))
            lines.append(f"{name} λ={lam} degree={deg} brute={brute} dim={rep.dimension} {v.kind}")
    return lines


def check_twist(seed) -> list[str]:
    """tau(sigma(S)) = S; sigma(tau(.)) is the identity on sigma(S) = L_C(lam) but moves S
    to weight 1 - r p^e (lam - 1), so that column reads false whenever r != 0."""
    lines = []
    for name in GM_TOWERS:
        T = _tower(name)
        S = reps.standard(T)
        for lam in range(1, 11):
            if math.gcd(lam, T.p) != 1:
                continue
            tp = reps.twist_inverse_pair(lam, T)
            sS = tp.sigma(S)
            ts = st_S = st_sS = True
            for i in range(5):
                x = random_element(T, ("twist", seed, name, lam, i), 1, True)
                if x.is_zero():
                    continue
                u = reps.GmPoint((x,))
                ts &= reps.evaluate(tp.tau(tp.sigma(S)), u) == reps.evaluate(S, u)
                st_S &= reps.evaluate(tp.sigma(tp.tau(S)), u) == reps.evaluate(S, u)
                st_sS &= reps.evaluate(tp.sigma(tp.tau(sS)), u) == reps.evaluate(sS, u)
            lines.append(f"{name} λ={lam} μ={tp.mu} r={tp.r} tau_sigma_S={str(ts).lower()} "
                         f"sigma_tau_S={str(st_S).lower()} sigma_tau_sigmaS={str(st_sS).lower()} "
                         f"weight_sigma_tau_S={tp.sigma(tp.tau(S)).weight}")
    return lines


def check_levi_restriction(seed) -> list[str]:
    lines = []
    for name in ("p2_s2", "p2_s4"):
        T = _tower(name)
        levi = dimension.LeviDescriptor.a1_power(2)
        for lam in range(0, 8):
            rep = dimension.dim_LG(lam, T, levi, certify=True, seed=seed)
            V = reps.build_LG(lam, T)
            L = reps.build_SL2_irrep(lam, T)
            iso = meataxe.isotypic_check(reps.restrict_to_levi(L, T), reps.restrict_to_levi(V, T))
            lines.append(f"{name} {rep.line()} isotypic={str(iso.isotypic).lower()} multiplicity={iso.multiplicity}")
    return lines


def check_product(seed) -> list[str]:
    A = subfields.load_algebra(_data("towers", "sqrt_t_sqrt_u.algebra"))
    lines = []
    for lam in itertools.product(range(-2, 3), repeat=2):
        lines.append(f"λ={lam[0]},{lam[1]} dimLC={dimension.dim_LC(lam, A)}")
    return lines


def check_stabilizer(seed) -> list[str]:
    lines = []
    for name in ("p2_s4", "p2_s2_r4"):
        T = _tower(name)
        ok = True
        for i in range(10):
            dim = 2 + i % (T.degree - 2)
            W = subfields.random_subspace_with_one(T, dim, ("selftest", seed, name, i))
            E = subfields.stabilizer_field(W, T)
            ok &= all(W.contains((e * w).coords) for e in E.basis() for w in _elements(T, W))
            ok &= E.degree < T.degree
        lines.append(f"{name} stabilizers proper and stabilizing: {str(ok).lower()}")
    return lines


def _elements(T, W):
    return [T.element(v) for v in W.basis()]


def check_orbits(seed) -> list[str]:
    lines = []
    for name in ("trivial", "swap", "diag2"):
        action = orbits.load_action(_data("actions", name + ".action"))
        for box in (4, 9) if action.rank == 2 else (2, 4):
            rep = orbits.orbits(action, box)
            b = orbits.burnside_count(action, box)
            lines.append(f"{name} box={box} points={rep.npoints} orbits={rep.count} burnside={b}")
    return lines


CHECKS: dict[str, Callable] = {
    "coords_p3_cube": check_coords_p3_cube,
    "coords_p2_biquad": check_coords_p2_biquad,
    "gmfield": check_gmfield,
    "twist": check_twist,
    "levi_restriction": check_levi_restriction,
    "product": check_product,
    "stabilizer": check_stabilizer,
    "orbits": check_orbits,
}


def render(name: str, seed=0) -> str:
    return "\n".join(CHECKS[name](seed)) + "\n"


def run(golden_dir: Path, seed=0, only=None, update: bool = False) -> list[CheckResult]:
    names = list(CHECKS) if not only else [n for n in CHECKS if n in only]
    unknown = set(only or ()) - set(CHECKS)
    results = [CheckResult(n, False, golden_dir / f"{n}.txt", "unknown check") for n in sorted(unknown)]
    for name in names:
        path = golden_dir / f"{name}.txt"
        try:
            got = render(name, seed)
        except Exception as exc:  # a crash inside a check is a failed check
            results.append(CheckResult(name, False, path, f"check raised {type(exc).__name__}: {exc}"))
            continue
        if update:
            path.write_text(got, encoding="utf-8")
            results.append(CheckResult(name, True, path, "updated"))
            continue
        try:
            want = path.read_text(encoding="utf-8")
        except (OSError, UnicodeDecodeError) as exc:
            results.append(CheckResult(name, False, path, f"cannot read golden file: {exc}"))
            continue
        if got == want:
            results.append(CheckResult(name, True, path))
        else:
            diff = list(difflib.unified_diff(want.splitlines(), got.splitlines(), "golden", "current", lineterm=""))
            results.append(CheckResult(name, False, path, "output differs from golden file", diff[:40]))
    results.sort(key=lambda r: list(CHECKS).index(r.name) if r.name in CHECKS else -1)
    return results
