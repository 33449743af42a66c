import functools

import pytest
import sympy
from sympy import GF
from sympy.polys.matrices import DomainMatrix

from pseudored.cli import data_path
from pseudored.fields import load_tower


@functools.lru_cache(maxsize=None)
def bundled_tower(name):
    return load_tower(data_path("towers", name + ".tower"))


@pytest.fixture(scope="session")
def towers():
    names = ["p3_cube", "p2_biquad", "p2_s2", "p2_s4", "p2_s8", "p2_s2_r2", "p2_s2_r4", "p3_s3", "p3_s9"]
    return {n: bundled_tower(n) for n in names}


def sympy_field(F):
    syms = sympy.symbols(F.names)
    return GF(F.p).frac_field(*syms)


def to_sympy(K, x):
    return K.from_sympy(sympy.sympify(str(x).replace("^", "**")))


def sympy_matrix(M):
    K = sympy_field(M.field)
    return DomainMatrix([[to_sympy(K, x) for x in r] for r in M.rows], M.shape, K), K


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
