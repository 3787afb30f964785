from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, strategies as st

from pnormpoly.algebra import (
    InexactDivisionError, MPoly, RingMismatchError, TSeries, as_rat, divide_exact,
    mpoly_is_coefficientwise_nonneg, mpoly_partial, render, series_exp, series_log, series_mul,
)
from conftest import from_sympy, to_sympy

N = 3
rats = st.fractions(min_value=-5, max_value=5, max_denominator=6)
exps = st.tuples(*[st.integers(0, 3)] * N)
polys = st.dictionaries(exps, rats, max_size=5).map(lambda d: MPoly(N, d))
X = sp.symbols("x1:4")


def test_as_rat_inputs():
    assert as_rat("3/4") == Fraction(3, 4)
    assert as_rat(0.5) == Fraction(1, 2)
    assert as_rat(7) == 7
    with pytest.raises((ValueError, TypeError)):
        as_rat("pear")


def test_render_canonical_order():
    x1, x2 = MPoly.gen(0, 2), MPoly.gen(1, 2)
    assert render((x1 + x2) ** 2) == "x1^2 + 2*x1*x2 + x2^2"
    assert render(x2 - x1 * Fraction(1, 3)) == "-1/3*x1 + x2"
    assert render(MPoly.zero(2)) == "0"
    assert render(MPoly.constant(-2, 2)) == "-2"


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == MPoly.zero(N)


@given(polys, polys)
def test_multiplication_matches_sympy(a, b):
    assert from_sympy(to_sympy(a, X) * to_sympy(b, X), X) == a * b


@given(polys, st.lists(rats, min_size=N, max_size=N))
def test_evaluate_matches_sympy(a, point):
    expected = to_sympy(a, X).subs(dict(zip(X, [sp.Rational(p.numerator, p.denominator)
                                                for p in point])))
    assert a.evaluate(point) == Fraction(int(sp.numer(expected)), int(sp.denom(expected)))


@given(polys, polys)
def test_divide_exact_roundtrip(a, b):
    if b.is_zero():
        return
    assert divide_exact(a * b, b) == a


def test_divide_exact_rejects_remainder():
    x1, x2 = MPoly.gen(0, 2), MPoly.gen(1, 2)
    with pytest.raises(InexactDivisionError):
        divide_exact(x1 ** 2 + x2, x1)
    with pytest.raises(ZeroDivisionError):
        divide_exact(x1, MPoly.zero(2))
    with pytest.raises(RingMismatchError):
        divide_exact(x1, MPoly.gen(0, 3))


@given(polys)
def test_partial_matches_sympy(a):
    for i in range(N):
        assert mpoly_partial(a, i) == from_sympy(sp.diff(to_sympy(a, X), X[i]), X)


def test_nonneg_witness():
    x1, x2 = MPoly.gen(0, 2), MPoly.gen(1, 2)
    assert mpoly_is_coefficientwise_nonneg(x1 + x2) == (True, None)
    ok, (exp, c) = mpoly_is_coefficientwise_nonneg(x1 - x2)
    assert not ok and exp == (0, 1) and c == -1


def test_homogeneity_and_degree():
    x1, x2 = MPoly.gen(0, 2), MPoly.gen(1, 2)
    f = x1 ** 3 + x1 * x2 ** 2
    assert f.degree() == 3 and f.is_homogeneous()
    assert not (f + x1).is_homogeneous()
    assert (x1 ** 2 + x2).is_homogeneous(weights=(1, 2))


series_coeffs = st.lists(rats, min_size=7, max_size=7)


@given(series_coeffs)
def test_exp_log_inverse(cs):
    a = TSeries([0] + cs[1:], 6)
    assert series_log(series_exp(a)) == a
    b = TSeries([1] + cs[1:], 6)
    assert series_exp(series_log(b)) == b


@given(series_coeffs)
def test_exp_matches_sympy(cs):
    t = sp.symbols("t")
    a = [Fraction(0)] + cs[1:]
    expr = sum(sp.Rational(c.numerator, c.denominator) * t ** i for i, c in enumerate(a))
    expected = sp.series(sp.exp(expr), t, 0, 7).removeO()
    got = series_exp(TSeries(a, 6))
    for i in range(7):
        c = expected.coeff(t, i)
        assert got[i] == Fraction(int(sp.numer(c)), int(sp.denom(c)))


def test_series_polynomial_ring_and_truncation():
    ring = (2, "x")
    x1, x2 = MPoly.gen(0, 2), MPoly.gen(1, 2)
    a = TSeries([1, x1], 3, ring)
    b = TSeries([1, x2], 3, ring)
    prod = series_mul(a, b)
    assert prod[1] == x1 + x2 and prod[2] == x1 * x2
    # mixed orders truncate to the smaller one
    assert series_mul(a, TSeries([1, 1], 1, ring)).order == 1
    with pytest.raises(RingMismatchError):
        TSeries([x1, MPoly.gen(0, 3)])


def test_exp_log_preconditions():
    with pytest.raises(ValueError):
        series_exp(TSeries([1, 1], 2))
    with pytest.raises(ValueError):
        series_log(TSeries([2, 1], 2))
