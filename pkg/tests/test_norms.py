import math
import random
from fractions import Fraction

import mpmath as mp
import pytest
from hypothesis import given, strategies as st

from pnormpoly.norms import (
    WindowError, check_theorem, equal_sum_pair, finite_difference_gradient, fuzz_theorem,
    majorized_pair, mellin_closed_form, mellin_constant, mellin_integral, phi_kernel, pnorm,
    psi_kernel, schur_convex_target, schur_ostrowski_check, verify_power_representation,
)
from pnormpoly.sympoly import compute_G, compute_H, gradient


def mp_psi(r, t):
    # integral of s^r/(1+s) over [0, t]; no cancellation near 0
    t = mp.mpf(t)
    return t ** (r + 1) / (r + 1) * mp.hyp2f1(1, r + 1, r + 2, -t)


def mp_mellin(kind, r, p, a=1):
    if kind == "psi":
        f = lambda t: mp_psi(r, a * t) * t ** (-p - 1)  # noqa: E731
    else:
        f = lambda t: mp_psi(1, (a * t) ** r) * t ** (-p - 1)  # noqa: E731
    with mp.workdps(30):
        return mp.quad(f, [0, 1 / mp.mpf(a), 1, mp.inf])


def majorizes(x, y):
    xs, ys = sorted(x, reverse=True), sorted(y, reverse=True)
    if sum(xs) != sum(ys):
        return False
    px = py = 0
    for a, b in zip(xs, ys):
        px += a
        py += b
        if px < py:
            return False
    return True


# ---------------------------------------------------------------------------
# norms and kernels

def test_pnorm_conventions():
    assert pnorm([1, 4], 1) == pytest.approx(2.5)
    assert pnorm([1, 4], 0) == pytest.approx(2.0)
    assert pnorm([1, 4], 2) == pytest.approx(math.sqrt(8.5))
    assert pnorm([0, 4], 0) == 0.0
    assert pnorm([0, 0], 3) == 0.0
    with pytest.raises(ValueError):
        pnorm([-1, 2], 2)


@given(st.lists(st.floats(0.01, 100), min_size=2, max_size=5),
       st.floats(-3, 6), st.floats(0.01, 2))
def test_power_mean_monotone_in_p(x, p, dp):
    assert pnorm(x, p) <= pnorm(x, p + dp) * (1 + 1e-12)


@pytest.mark.parametrize("r", range(0, 5))
@pytest.mark.parametrize("t", [1e-4, 0.1, 0.49, 0.5, 0.9, 3.0, 50.0])
def test_psi_kernel_matches_mpmath(r, t):
    assert psi_kernel(r, t) == pytest.approx(float(mp_psi(r, t)), rel=1e-12)
    assert psi_kernel(r, t) > 0


def test_phi_kernel():
    assert phi_kernel(2, 1.5) == pytest.approx(1.5 ** 2 - math.log1p(1.5 ** 2), rel=1e-14)
    with pytest.raises(ValueError):
        phi_kernel(0, 1.0)


# ---------------------------------------------------------------------------
# Mellin layer

@pytest.mark.parametrize("kind,r,p", [("psi", 0, 0.3), ("psi", 1, 1.6), ("psi", 2, 2.4),
                                      ("psi", 3, 3.7), ("phi", 2, 2.5), ("phi", 3, 4.2)])
def test_quadrature_matches_mpmath_oracle(kind, r, p):
    oracle = float(mp_mellin(kind, r, p))
    assert mellin_constant(kind, r, p) == pytest.approx(oracle, rel=1e-8)
    assert mellin_closed_form(kind, r, p) == pytest.approx(oracle, rel=1e-8)


@pytest.mark.parametrize("kind,r", [("psi", 0), ("psi", 1), ("psi", 2), ("psi", 4),
                                    ("phi", 1), ("phi", 2), ("phi", 3)])
def test_closed_form_across_window(kind, r):
    lo, hi = (r, r + 1) if kind == "psi" else (r, 2 * r)
    for i in range(1, 8):
        p = lo + (hi - lo) * i / 8
        c = mellin_constant(kind, r, p)
        assert abs(c - mellin_closed_form(kind, r, p)) / c < 1e-8


@pytest.mark.parametrize("a", [0.5, 1.0, 2.0, 10.0])
def test_power_representation(a):
    for kind, r, p in [("psi", 0, 0.5), ("psi", 2, 2.5), ("phi", 2, 3.0), ("phi", 3, 4.0)]:
        assert verify_power_representation(kind, r, a, p) < 1e-8


def test_mellin_scaling_law():
    # substituting s = a t: I(a) = a^p I(1)
    assert mellin_integral("psi", 1, 1.5, 3.0) == pytest.approx(
        3.0 ** 1.5 * mellin_integral("psi", 1, 1.5, 1.0), rel=1e-10)


def test_window_errors():
    for kind, r, p in [("psi", 1, 1.0), ("psi", 1, 2.0), ("phi", 2, 4.0), ("phi", 2, 1.9)]:
        with pytest.raises(WindowError):
            mellin_constant(kind, r, p)
    with pytest.raises(ValueError):
        mellin_integral("psi", 1, 1.5, a=0.0)


# ---------------------------------------------------------------------------
# pair generators

def test_majorized_pairs_are_majorized():
    rng = random.Random(3)
    for _ in range(300):
        x, y = majorized_pair(rng, 4)
        assert majorizes(x, y)


def test_equal_sum_pairs():
    rng = random.Random(3)
    for _ in range(50):
        x, y = equal_sum_pair(rng, 3)
        assert sum(x) == sum(y)


# ---------------------------------------------------------------------------
# theorem checking

def test_check_theorem_H_example():
    v = check_theorem("H", 2, [3, 1], [2, 2])
    assert v.hypothesis_satisfied and v.sum_constraint_satisfied
    assert not v.counterexample
    assert v.min_checked_margin > 0.1
    assert v.k_range == (1, 12)


def test_check_theorem_identical_pair_margins_zero():
    v = check_theorem("G", 2, [Fraction(5, 2), 1, 3], [Fraction(5, 2), 1, 3])
    assert v.hypothesis_satisfied
    assert all(c.margin == 0 for c in v.conclusions)


def test_check_theorem_hypothesis_decided_exactly():
    # x does not majorize y here, so the G hypothesis must fail for some k
    v = check_theorem("G", 2, [2, 2], [3, 1])
    assert not v.hypothesis_satisfied and v.failing_k
    assert v._checked() == []


def test_F_inequality_below_one_needs_no_sum():
    v = check_theorem("F", 2, [3, 1], [2, 1])
    assert v.k_range == (2, 4)
    assert not v.sum_constraint_satisfied
    if v.hypothesis_satisfied:
        assert all(c.direction == "<=" for c in v._checked())


def test_check_theorem_validation():
    with pytest.raises(ValueError):
        check_theorem("H", 0, [1], [1])
    with pytest.raises(ValueError):
        check_theorem("Q", 1, [1], [1])
    with pytest.raises(ValueError):
        check_theorem("G", 1, [1, 2], [1])
    with pytest.raises(ValueError):
        check_theorem("G", 1, [-1, 2], [1, 0])


@pytest.mark.parametrize("family,r,n", [("F", 2, 3), ("G", 0, 3), ("G", 2, 4), ("H", 2, 3)])
def test_small_fuzz_is_clean_and_reproducible(family, r, n):
    a = fuzz_theorem(family, r, n, 150, seed=11)
    b = fuzz_theorem(family, r, n, 150, seed=11)
    assert a.passed and a == b
    assert sum(a.margin_histogram.values()) == a.checked


def test_fuzz_identical_pairs():
    rep = fuzz_theorem("H", 2, 3, 50, seed=1, pairs="identical")
    assert rep.checked == 50 and rep.min_margin == 0.0


def test_fuzz_escalation_resolves_truncation_artifacts():
    rep = fuzz_theorem("H", 2, 3, 400, seed=5, pairs="equal-sum")
    assert rep.passed
    for entry in rep.resolved_by_larger_k:
        assert entry["k_max_needed"] > 12
        assert min(entry["failing_k"]) > 12


# ---------------------------------------------------------------------------
# Schur-Ostrowski

def test_polynomial_gradient_matches_finite_differences():
    g = compute_G(4, 2, 3)
    pt = [1.3, 0.4, 2.2]
    fd = finite_difference_gradient(lambda v: float(g.evaluate(v)), pt)
    exact = [float(d.evaluate(pt)) for d in gradient(g)]
    assert fd == pytest.approx(exact, rel=1e-6)


@pytest.mark.parametrize("family", ["G", "H"])
def test_schur_ostrowski_signs(family):
    for k in range(1, 5):
        for r in range(1, 4):
            rep = schur_ostrowski_check(family, k, r, 30, 3, seed=k * 10 + r)
            assert rep.passed, rep.violations[:1]


def test_schur_ostrowski_detects_wrong_sign():
    # H itself (not -H) is Schur concave, so its convexity check must fail
    rep = schur_ostrowski_check("H", 2, 2, 40, 3, seed=2, f=compute_H(2, 2, 3))
    assert rep.violations


def test_targets():
    assert schur_convex_target("G", 2, 0, 3) == -compute_G(2, 0, 3)
    assert schur_convex_target("G", 3, 3, 3) == -compute_G(3, 3, 3)
    assert schur_convex_target("G", 3, 2, 3) == compute_G(3, 2, 3)
