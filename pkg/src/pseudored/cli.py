"""Command line front end.

Exit codes: 0 success, 1 check failure, 2 usage error, 3 input parse error.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from importlib import resources
from pathlib import Path

from . import dimension, meataxe, orbits as orb, reps, subfields, weil
from .errors import ParseError, PseudoredError
from .fields import load_tower, random_element
from .linalg import format_matrix, parse_matrix

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_PARSE = 0, 1, 2, 3


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------


def data_path(*parts: str) -> Path:
    return Path(str(resources.files("pseudored").joinpath("data", *parts)))


def _resolve(name: str, folder: str, suffix: str) -> Path:
    """A path as given, else a bundled data file (``p2_s4`` -> data/towers/p2_s4.tower)."""
    p = Path(name)
    if p.exists():
        return p
    for cand in (data_path(folder, name), data_path(folder, name + suffix)):
        if cand.exists():
            return cand
    raise FileNotFoundError(f"no such file: {name}")


def _tower(args):
    return load_tower(_resolve(args.tower, "towers", ".tower"))


def _algebra(args):
    return subfields.load_algebra(_resolve(args.algebra, "towers", ".algebra"))


def _int_range(text: str) -> list[int]:
    try:
        if ".." in text:
            a, b = text.split("..")
            return list(range(int(a), int(b) + 1))
        return [int(text)]
    except ValueError:
        raise UsageError(f"bad range {text!r}; expected A..B") from None


def _int_tuple(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"bad weight {text!r}; expected integers separated by commas") from None


class Out:
    """Collects output; the first line echoes the seed."""

    def __init__(self, args, stream=None):
        self.tsv = getattr(args, "tsv", False)
        self.stream = stream or sys.stdout
        self.stream.write(f"# seed={args.seed}\n")

    def line(self, text: str = "") -> None:
        self.stream.write(text + "\n")

    def row(self, *cells) -> None:
        self.line("\t".join(str(c) for c in cells))


# ---------------------------------------------------------------------------
# verbs
# ---------------------------------------------------------------------------


def cmd_field_check(args, out: Out) -> int:
    from .errors import NotPurelyInseparable

    try:
        T = _tower(args)
    except NotPurelyInseparable as exc:
        out.line(f"FAIL not purely inseparable: {exc}")
        return EXIT_FAIL
    if out.tsv:
        out.row("p", "degree", "exponent")
        out.row(T.p, T.degree, T.exponent)
    else:
        out.line(T.describe())
        out.line(f"degree = {T.degree}")
        out.line(f"exponent = {T.exponent}")
        out.line("basis = " + ", ".join(T.monomial_str(i) for i in range(T.degree)))
        out.line("OK")
    return EXIT_OK


def _weil_element(args):
    T = _tower(args)
    if args.symbolic:
        return weil.generic_element(T)
    if args.element is not None:
        return T.parse(args.element)
    return random_element(T, ("cli", args.seed), 1, polynomial=True)


def cmd_weil_matrix(args, out: Out) -> int:
    g = _weil_element(args)
    M = weil.mult_matrix(g)
    if out.tsv:
        for r in M.rows:
            out.row(*r)
    else:
        out.line(format_matrix(M))
    return EXIT_OK


def cmd_weil_profile(args, out: Out) -> int:
    g = _weil_element(args)
    prof = weil.coordinate_profile(g)
    T = g.tower
    ok = prof.det ** (T.p**T.exponent) == prof.d_hat**T.degree
    if out.tsv:
        out.row("alpha_hat", *prof.alpha_hat)
        out.row("d_hat", prof.d_hat)
        out.row("det", prof.det)
        out.row("det^(p^e)==d_hat^q", str(ok).lower())
    else:
        out.line("alpha_hat = (" + ", ".join(map(str, prof.alpha_hat)) + ")")
        out.line(f"d_hat = {prof.d_hat}")
        out.line(f"det = {prof.det}")
        out.line(f"det^(p^e) == d_hat^q : {str(ok).lower()}")
    return EXIT_OK if ok else EXIT_FAIL


def _weights(args) -> list[int]:
    _one_weight_flag(args)
    if args.lam is not None:
        try:
            return [int(args.lam)]
        except ValueError:
            raise UsageError(f"--lambda must be an integer, got {args.lam!r}") from None
    return _int_range(args.lambda_range)


def _one_weight_flag(args) -> None:
    if (args.lam is None) == (args.lambda_range is None):
        raise UsageError("give exactly one of --lambda / --lambda-range")


def cmd_dim_c(args, out: Out) -> int:
    if (args.tower is None) == (args.algebra is None):
        raise UsageError("give exactly one of --tower / --algebra")
    if args.algebra is not None:
        amb = _algebra(args)
        _one_weight_flag(args)
        if args.lam is not None:
            lams = [_int_tuple(args.lam)]
        else:
            lams = list(itertools.product(_int_range(args.lambda_range), repeat=len(amb.factors)))
    else:
        amb = _tower(args)
        lams = _weights(args)
    if out.tsv:
        out.row("lambda", "dimLC")
    for lam in lams:
        d = dimension.dim_LC(lam, amb)
        lam_s = ",".join(map(str, lam)) if isinstance(lam, tuple) else str(lam)
        if out.tsv:
            out.row(lam_s, d)
        else:
            out.line(f"λ={lam_s} dimLC={d}")
    return EXIT_OK


def _levi(args, p: int) -> dimension.LeviDescriptor:
    kind = args.levi
    if kind == "a1":
        return dimension.LeviDescriptor.a1_power(p, 1)
    if kind == "torus":
        return dimension.LeviDescriptor.torus(p, 1)
    if kind.startswith("table:"):
        return dimension.LeviDescriptor.from_table(p, kind[len("table:"):])
    raise UsageError(f"unknown Levi {kind!r}; use a1, torus or table:PATH")


def cmd_dim_g(args, out: Out) -> int:
    T = _tower(args)
    levi = _levi(args, T.p)
    lams = _weights(args)
    if out.tsv:
        out.row("lambda", "dimLC", "dimLM", "dimLG", "certified")
    status = EXIT_OK
    for lam in lams:
        try:
            rep = dimension.dim_LG(lam, T, levi, certify=args.certify, seed=args.seed, cap=args.cap)
        except PseudoredError as exc:
            if not args.certify:
                raise
            out.line(f"λ={lam} FAIL {exc}")
            status = EXIT_FAIL
            continue
        out.line(rep.tsv() if out.tsv else rep.line())
    return status


def _recipe(args, T):
    lam = args.lam
    if args.group == "gm":
        return reps.build_LC(lam, T)
    if lam < 0:
        raise UsageError("SL2 weights must be nonnegative")
    return reps.build_LG(lam, T)


def _group_element(args, T):
    if args.group == "gm":
        return reps.GmPoint((T.parse(args.eval),))
    parts = [x.strip() for x in args.eval.split(",")]
    if len(parts) != 4:
        raise ParseError("an SL2 element is four entries 'a,b,c,d' (row by row)")
    from .errors import IncompatibleElement

    try:
        return reps.SL2Point(*(T.parse(x) for x in parts))
    except IncompatibleElement as exc:
        raise ParseError(str(exc)) from None


def cmd_irrep_build(args, out: Out) -> int:
    T = _tower(args)
    rep = _recipe(args, T)
    M = reps.evaluate(rep, _group_element(args, T))
    if isinstance(M, reps.TMatrix):
        M = M.to_base()
    if out.tsv:
        for r in M.rows:
            out.row(*r)
    else:
        out.line(format_matrix(M))
    return EXIT_OK


def cmd_irrep_info(args, out: Out) -> int:
    T = _tower(args)
    rep = _recipe(args, T)
    if out.tsv:
        out.row("dimension", "weight", "recipe")
        out.row(rep.dimension, rep.weight, rep)
    else:
        out.line(f"dimension = {rep.dimension}")
        out.line(f"weight = {rep.weight}")
        out.line(f"recipe = {rep}")
    return EXIT_OK


def _load_gens(path: str, field) -> list:
    text = Path(path).read_text()
    blocks = [b for b in text.split("---")]
    mats = [parse_matrix(field, b.strip()) for b in blocks if b.strip()]
    if not mats:
        raise ParseError(f"{path}: no matrices")
    return mats


def cmd_irrep_verify(args, out: Out) -> int:
    T = _tower(args)
    if args.gens is not None:
        gs = meataxe.GeneratorSet(_load_gens(args.gens, T.base))
        verdict = meataxe.is_irreducible(gs, args.seed, budget=args.budget)
    else:
        if args.lam is None or args.group is None:
            raise UsageError("give --group and --lambda, or --gens FILE")
        rep = _recipe(args, T)
        gs = meataxe.generator_set(rep, T, args.seed)
        if args.group == "gm":
            verdict = meataxe.is_irreducible_commutative(gs)
        else:
            verdict = meataxe.is_irreducible_norton(gs, args.seed, budget=args.budget)
    out.line(f"dimension = {gs.dim}")
    out.line(f"verdict = {verdict.kind}")
    if verdict.kind == "Irreducible":
        out.line("certificate = " + json.dumps(verdict.certificate, sort_keys=True))
    elif verdict.kind == "Reducible":
        out.line(f"witness dimension = {verdict.witness.dim}")
        out.line(format_matrix(verdict.witness.matrix()))
    else:
        out.line("diagnostics = " + json.dumps(verdict.diagnostics, sort_keys=True, default=str))
    return EXIT_OK if verdict.kind == "Irreducible" else EXIT_FAIL


def cmd_orbits(args, out: Out) -> int:
    action = orb.load_action(_resolve(args.action, "actions", ".action"))
    if args.box < 0:
        raise UsageError("--box must be nonnegative")
    rep = orb.orbits(action, args.box)
    if out.tsv:
        out.row("representative", "size", "truncated", "members")
        for o in rep.orbits:
            out.row(",".join(map(str, o.representative)), o.size, str(o.truncated).lower(),
                    " ".join("(" + ",".join(map(str, m)) + ")" for m in o.members))
        return EXIT_OK
    out.line(f"orbits={rep.count} points={rep.npoints} truncated={len(rep.truncated)}")
    for o in rep.orbits:
        flag = " truncated" if o.truncated else ""
        members = " ".join("(" + ",".join(map(str, m)) + ")" for m in o.members)
        out.line(f"({','.join(map(str, o.representative))}) size={o.size}{flag}: {members}")
        if args.stub:
            out.line("  " + orb.multiplicity_stub(o))
    return EXIT_OK


def cmd_selftest(args, out: Out) -> int:
    from . import selftest

    golden = Path(args.golden) if args.golden else data_path("golden")
    results = selftest.run(golden, seed=args.seed, only=args.only, update=args.update)
    failed = [r for r in results if not r.ok]
    for r in results:
        out.line(f"{'PASS' if r.ok else 'FAIL'} {r.name}" + ("" if r.ok else f" ({r.path}): {r.message}"))
        if not r.ok and r.diff:
            for d in r.diff:
                out.line("    " + d)
    out.line(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return EXIT_FAIL if failed else EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for sampling (default 0)")
    common.add_argument("--tsv", action="store_true", default=argparse.SUPPRESS, help="tab-separated output")

    parser = argparse.ArgumentParser(prog="pseudored", description=__doc__.splitlines()[0], parents=[common])
    sub = parser.add_subparsers(dest="verb", required=True)

    def tower_arg(p, required=True):
        p.add_argument("--tower", required=required, help="tower file or bundled tower name")

    field_p = sub.add_parser("field", help="tower checks").add_subparsers(dest="sub", required=True)
    p = field_p.add_parser("check", parents=[common], help="validate a tower file")
    tower_arg(p)
    p.set_defaults(func=cmd_field_check)

    weil_p = sub.add_parser("weil", help="R(G_m) as matrices").add_subparsers(dest="sub", required=True)
    for name, fn in (("matrix", cmd_weil_matrix), ("profile", cmd_weil_profile)):
        p = weil_p.add_parser(name, parents=[common])
        tower_arg(p)
        g = p.add_mutually_exclusive_group()
        g.add_argument("--element", help="element of k' (default: a seeded random element)")
        g.add_argument("--symbolic", action="store_true", help="generic element with symbolic coefficients")
        p.set_defaults(func=fn)

    dim_p = sub.add_parser("dim", help="dimension formulas").add_subparsers(dest="sub", required=True)
    p = dim_p.add_parser("c", parents=[common], help="dim L_C(lambda)")
    tower_arg(p, required=False)
    p.add_argument("--algebra", help="ambient tower with factor fields")
    p.add_argument("--lambda", dest="lam", help="weight (comma-separated for products)")
    p.add_argument("--lambda-range", help="A..B (each coordinate for products)")
    p.set_defaults(func=cmd_dim_c)
    p = dim_p.add_parser("g", parents=[common], help="dim L_G(lambda) = dim L_M * dim L_C")
    tower_arg(p)
    p.add_argument("--levi", default="a1", help="a1, torus or table:PATH")
    p.add_argument("--lambda", dest="lam")
    p.add_argument("--lambda-range")
    p.add_argument("--certify", action="store_true", help="build and certify each module")
    p.add_argument("--cap", type=int, default=32, help="largest dimension certified")
    p.set_defaults(func=cmd_dim_g)

    irrep_p = sub.add_parser("irrep", help="simple modules").add_subparsers(dest="sub", required=True)
    for name, fn in (("build", cmd_irrep_build), ("info", cmd_irrep_info), ("verify", cmd_irrep_verify)):
        p = irrep_p.add_parser(name, parents=[common])
        tower_arg(p)
        p.add_argument("--group", choices=["gm", "sl2"], required=name != "verify")
        p.add_argument("--lambda", dest="lam", type=int, required=name != "verify")
        if name == "build":
            p.add_argument("--eval", required=True, help="G_m: element of k'; SL2: 'a,b,c,d'")
        if name == "verify":
            p.add_argument("--budget", type=int, default=200)
            p.add_argument("--gens", help="file of '|' matrices separated by '---' lines")
        p.set_defaults(func=fn)

    p = sub.add_parser("orbits", parents=[common], help="Galois orbits on dominant weights")
    p.add_argument("--action", required=True, help="action file or bundled action name")
    p.add_argument("--box", type=int, required=True, help="coordinates 0..N")
    p.add_argument("--stub", action="store_true", help="print the decomposition statement per orbit")
    p.set_defaults(func=cmd_orbits)

    p = sub.add_parser("selftest", parents=[common], help="golden-file regression checks")
    p.add_argument("--golden", help="directory of golden files (default: bundled)")
    p.add_argument("--only", action="append", help="run only the named check (repeatable)")
    p.add_argument("--update", action="store_true", help="rewrite golden files from current output")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if not hasattr(args, "seed"):
        args.seed = 0
    if not hasattr(args, "tsv"):
        args.tsv = False
    try:
        out = Out(args)
        return args.func(args, out)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ParseError, FileNotFoundError, UnicodeDecodeError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except PseudoredError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
