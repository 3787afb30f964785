import sys
from fractions import Fraction

import sympy as sp
from hypothesis import settings

from pnormpoly.algebra import MPoly

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def to_sympy(f: MPoly, symbols):
    return sp.Add(*[sp.Rational(c.numerator, c.denominator)
                    * sp.Mul(*[s ** e for s, e in zip(symbols, exp)])
                    for exp, c in f.terms.items()])


def from_sympy(expr, symbols, var="x") -> MPoly:
    poly = sp.Poly(sp.expand(expr), *symbols)
    return MPoly(len(symbols), {exp: Fraction(int(c.p), int(c.q)) for exp, c in poly.terms()},
                 var)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
