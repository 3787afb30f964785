"""The polynomial families F_{k,r}, G_{k,r}, H_{k,r} and the cycle index Z_k.

G and H are computed three ways:

``generating-function``
    expand the defining product-times-exponential in ``t`` with polynomial
    coefficients in ``x_1..x_n``;
``cycle-index``
    evaluate ``Z_k`` on the modified power-sum sequence by the Newton
    recursion, then substitute ``p_m -> sum_i x_i^m``;
``brute-force``
    sum ``sgn * p_{sigma_r}`` over the restricted permutation classes, by
    cycle type (or element by element with ``explicit=True``).

p-basis polynomials use the variables ``p1, p2, ...``; x-basis ones use
``x1..xn``.  Variable indices in the Python API are 0-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Sequence

from .algebra import (
    MPoly, TSeries, divide_exact, mpoly_partial, series_exp, series_mul,
)
from .combinatorics import (
    CycleType, admissible_S, admissible_T, all_permutations, cycle_types_filtered,
    cycles_of, partition_sign, partitions_of, sign_of, truncate_short_cycles,
)

ROUTES = ("generating-function", "cycle-index", "brute-force")


class FamilyError(ValueError):
    """Invalid family parameters (for example r = 0 for H)."""


# ---------------------------------------------------------------------------
# basic symmetric polynomials

@lru_cache(maxsize=None)
def power_sum(m: int, n: int) -> MPoly:
    if m < 1 or n < 1:
        raise ValueError("need m >= 1 and n >= 1")
    terms = {}
    for i in range(n):
        e = [0] * n
        e[i] = m
        terms[tuple(e)] = 1
    return MPoly(n, terms)


@lru_cache(maxsize=None)
def elementary(k: int, n: int) -> MPoly:
    """e_k(x_1..x_n), the zero polynomial when k > n."""
    if k < 0 or n < 1:
        raise ValueError("need k >= 0 and n >= 1")
    prod = TSeries.one(k, (n, "x"))
    for i in range(n):
        prod = series_mul(prod, TSeries([1, MPoly.gen(i, n)], k))
    return prod[k]


def p_var(m: int, nvars: int) -> MPoly:
    return MPoly.gen(m - 1, nvars, "p")


def to_x_basis(f: MPoly, n: int) -> MPoly:
    """Substitute ``p_m -> sum_i x_i^m`` in a p-basis polynomial."""
    return f.compose([power_sum(m, n) for m in range(1, f.nvars + 1)])


# ---------------------------------------------------------------------------
# modified power-sum sequences

@dataclass(frozen=True)
class AlphaSeq:
    """The sequence (alpha_m) feeding Z_k for family G or H at a given r."""

    family: str
    r: int

    def __post_init__(self):
        if self.family not in ("G", "H"):
            raise FamilyError(f"unknown family {self.family!r}")
        if self.family == "G" and self.r < 0:
            raise FamilyError("G needs r >= 0")
        if self.family == "H" and self.r < 1:
            raise FamilyError("H needs r >= 1")

    def nvars(self, k: int) -> int:
        """Number of p-variables needed for alpha_1..alpha_k."""
        return k * self.r if self.family == "H" else k

    def term(self, m: int, nvars: int) -> MPoly:
        """alpha_m as a p-basis polynomial."""
        if m < 1:
            raise ValueError("m must be >= 1")
        r = self.r
        if self.family == "G":
            if m <= r:
                return p_var(1, nvars) ** m if m % 2 else MPoly.zero(nvars, "p")
            return p_var(m, nvars)
        if m == 1:
            return p_var(1, nvars) ** r
        return p_var(m * r, nvars)

    def values(self, k: int, nvars: int | None = None) -> list[MPoly]:
        nvars = self.nvars(k) if nvars is None else nvars
        return [self.term(m, nvars) for m in range(1, k + 1)]

    def evaluate(self, m: int, power_sums: Sequence):
        """alpha_m with ``power_sums[j - 1]`` standing for p_j."""
        r = self.r
        if self.family == "G":
            if m <= r:
                return power_sums[0] ** m if m % 2 else 0 * power_sums[0]
            return power_sums[m - 1]
        if m == 1:
            return power_sums[0] ** r
        return power_sums[m * r - 1]

    def numeric(self, k: int, power_sums: Sequence) -> list:
        return [self.evaluate(m, power_sums) for m in range(1, k + 1)]


# ---------------------------------------------------------------------------
# Z_k, the signed cycle index, three ways

def _one_like(values: Sequence):
    for v in values:
        if isinstance(v, MPoly):
            return MPoly.constant(1, v.nvars, v.var)
    return Fraction(1)


def _alpha_list(alpha, k: int) -> list:
    if isinstance(alpha, AlphaSeq):
        return alpha.values(k)
    vals = list(alpha)
    if len(vals) < k:
        raise ValueError(f"need alpha_1..alpha_{k}, got {len(vals)} values")
    return [Fraction(v) if isinstance(v, int) else v for v in vals[:k]]


def zk_all(alpha, K: int) -> list:
    """[Z_0, ..., Z_K] from ``k Z_k = sum_j (-1)^(j-1) alpha_j Z_{k-j}``."""
    a = _alpha_list(alpha, K)
    Z = [_one_like(a)]
    for k in range(1, K + 1):
        s = 0 * Z[0]
        for j in range(1, k + 1):
            if not a[j - 1]:
                continue
            term = a[j - 1] * Z[k - j]
            s = s + term if j % 2 else s - term
        Z.append(s * Fraction(1, k))
    return Z


def zk_determinant(alpha, k: int):
    """Z_k by the Newton recursion equivalent to the almost-triangular determinant."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return zk_all(alpha, k)[k]


def zk_partition(alpha, k: int):
    """Z_k as a signed sum over partitions of k."""
    if k < 1:
        raise ValueError("k must be >= 1")
    a = _alpha_list(alpha, k)
    total = 0 * _one_like(a)
    for lam in partitions_of(k):
        term = _one_like(a) * (CycleType(lam).sign)
        for m, c in lam.multiplicities().items():
            term = term * (a[m - 1] * Fraction(1, m)) ** c * Fraction(1, factorial(c))
        total = total + term
    return total


def zk_permutation_sum(alpha, k: int, cap: int | None = None):
    """Z_k = (1/k!) sum over S_k of sgn(sigma) alpha_sigma, element by element."""
    if k < 1:
        raise ValueError("k must be >= 1")
    a = _alpha_list(alpha, k)
    one = _one_like(a)
    total = 0 * one
    for _, perm in all_permutations(k, cap=cap):
        term = one * sign_of(perm)
        for cyc in cycles_of(perm):
            term = term * a[len(cyc) - 1]
        total = total + term
    return total * Fraction(1, factorial(k))


def cycle_index_matrix(alpha, k: int) -> list[list]:
    """The k x k almost-triangular matrix whose determinant is k! Z_k."""
    a = _alpha_list(alpha, k)
    zero = 0 * _one_like(a)
    rows = []
    for i in range(k):
        row = []
        for j in range(k):
            if j <= i:
                row.append(a[i - j])
            elif j == i + 1:
                row.append(zero + (i + 1))
            else:
                row.append(zero)
        rows.append(row)
    return rows


def apply_homomorphism(f: MPoly, alpha: AlphaSeq, nvars: int) -> MPoly:
    """Image of a p-basis polynomial under ``p_m -> alpha_m``."""
    return f.compose([alpha.term(m, nvars) for m in range(1, f.nvars + 1)])


# ---------------------------------------------------------------------------
# F_{k,r}

@lru_cache(maxsize=None)
def F_series(r: int, n: int) -> TSeries:
    """prod_i P_r(x_i t) through order n r (it is a polynomial in t)."""
    if r < 1 or n < 1:
        raise FamilyError("F needs r >= 1 and n >= 1")
    K = n * r
    prod = TSeries.one(K, (n, "x"))
    for i in range(n):
        xi = MPoly.gen(i, n)
        factor = TSeries([xi ** m * Fraction(1, factorial(m)) for m in range(r + 1)], K)
        prod = series_mul(prod, factor)
    return prod


def compute_F(k: int, r: int, n: int) -> MPoly:
    if k < 0:
        raise ValueError("k must be >= 0")
    if k > n * r:
        F_series(r, n)  # validates r, n
        return MPoly.zero(n)
    return F_series(r, n)[k]


# ---------------------------------------------------------------------------
# generating functions g_r, h_r

def _g_exponent(r: int, n: int, K: int) -> TSeries:
    """-sum_i Q_r(x_i t) + Q_r^-(sum_i x_i t), whose coefficients are nonnegative."""
    p1 = power_sum(1, n)
    cs: list = [0] * (K + 1)
    for m in range(1, min(r, K) + 1):
        c = power_sum(m, n) * Fraction((-1) ** m, m)
        if m % 2:
            c = c + p1 ** m * Fraction(1, m)
        cs[m] = c
    return TSeries(cs, K, (n, "x"))


def _product_series(n: int, K: int, power: int = 1, skip: Sequence[int] = ()) -> TSeries:
    """prod over i not in ``skip`` of (1 + x_i^power t)."""
    prod = TSeries.one(K, (n, "x"))
    for i in range(n):
        if i in skip:
            continue
        prod = series_mul(prod, TSeries([1, MPoly.gen(i, n) ** power], K))
    return prod


@lru_cache(maxsize=None)
def g_series(r: int, n: int, K: int) -> TSeries:
    if r < 0:
        raise FamilyError("G needs r >= 0")
    return series_mul(_product_series(n, K), series_exp(_g_exponent(r, n, K)))


def _h_exponent(r: int, n: int, K: int) -> TSeries:
    return TSeries([0, power_sum(1, n) ** r - power_sum(r, n)], K, (n, "x"))


@lru_cache(maxsize=None)
def h_series(r: int, n: int, K: int) -> TSeries:
    if r < 1:
        raise FamilyError("H needs r >= 1")
    return series_mul(_product_series(n, K, power=r), series_exp(_h_exponent(r, n, K)))


# ---------------------------------------------------------------------------
# p-basis forms

@lru_cache(maxsize=None)
def cycle_index_p(family: str, k: int, r: int) -> MPoly:
    """Z_k(alpha) in the p-basis."""
    alpha = AlphaSeq(family, r)
    return zk_determinant(alpha.values(k), k)


def _g_sigma_r_monomial(ct_or_lengths, r: int, nvars: int) -> MPoly:
    exp = [0] * nvars
    for m in ct_or_lengths:
        if m <= r:
            exp[0] += m
        else:
            exp[m - 1] += 1
    return MPoly.monomial(exp, 1, "p")


def _h_sigma_r_monomial(lengths, r: int, nvars: int) -> MPoly:
    exp = [0] * nvars
    for m in lengths:
        if m <= r:  # an r-cycle, replaced by r fixed points
            exp[0] += m
        else:
            exp[m - 1] += 1
    return MPoly.monomial(exp, 1, "p")


@lru_cache(maxsize=None)
def brute_force_p(family: str, k: int, r: int, explicit: bool = False,
                  cap: int | None = None) -> MPoly:
    """G or H in the p-basis from the sigma_r sums over S(k,r) or T(k,r)."""
    AlphaSeq(family, r)  # validation
    if family == "G":
        nvars, size = k, k
        admissible = admissible_S(r)
        monomial = _g_sigma_r_monomial
    else:
        nvars, size = k * r, k * r
        admissible = admissible_T(r)
        monomial = _h_sigma_r_monomial
    total = MPoly.zero(nvars, "p")

    def weight(lengths) -> int:
        if family == "G":
            return 1
        return (-1) ** (k * (r - 1)) * r ** len(lengths)

    if explicit:
        for _, perm in all_permutations(size, admissible, cap=cap):
            cycles = cycles_of(perm)
            lengths = [len(c) for c in cycles]
            # sgn(sigma_r) for G, sgn(sigma) for H
            sr = truncate_short_cycles(perm, r)
            sgn = sign_of(sr) if family == "G" else sign_of(perm)
            total = total + monomial(lengths, r, nvars) * (sgn * weight(lengths))
    else:
        for ct in cycle_types_filtered(size, admissible):
            lengths = list(ct.partition)
            if family == "G":
                sgn = partition_sign([m for m in lengths if m > r])
            else:
                sgn = ct.sign
            coeff = ct.class_size * sgn * weight(lengths)
            total = total + monomial(lengths, r, nvars) * coeff
    return total * Fraction(1, factorial(size))


# ---------------------------------------------------------------------------
# public entry points

def _compute(family: str, k: int, r: int, n: int | None, route: str, basis: str,
             explicit: bool, cap: int | None) -> MPoly:
    AlphaSeq(family, r)
    if k < 1:
        raise ValueError("k must be >= 1")
    if route not in ROUTES:
        raise ValueError(f"unknown route {route!r}; expected one of {ROUTES}")
    if basis not in ("x", "p"):
        raise ValueError("basis must be 'x' or 'p'")
    if basis == "p":
        if route == "generating-function":
            raise ValueError("the generating-function route only produces x-basis output")
        if route == "cycle-index":
            return cycle_index_p(family, k, r)
        return brute_force_p(family, k, r, explicit, cap)
    if n is None or n < 1:
        raise ValueError("x-basis output needs n >= 1")
    if route == "generating-function":
        series = g_series(r, n, k) if family == "G" else h_series(r, n, k)
        return series[k]
    if route == "cycle-index":
        return to_x_basis(cycle_index_p(family, k, r), n)
    return to_x_basis(brute_force_p(family, k, r, explicit, cap), n)


def compute_G(k: int, r: int, n: int | None = None, route: str = "cycle-index",
              basis: str = "x", explicit: bool = False, cap: int | None = None) -> MPoly:
    """G_{k,r}, the coefficient of t^k in g_r(x, t)."""
    return _compute("G", k, r, n, route, basis, explicit, cap)


def compute_H(k: int, r: int, n: int | None = None, route: str = "cycle-index",
              basis: str = "x", explicit: bool = False, cap: int | None = None) -> MPoly:
    """H_{k,r}, the coefficient of t^k in h_r(x, t)."""
    return _compute("H", k, r, n, route, basis, explicit, cap)


def elementary_p(k: int) -> MPoly:
    """e_k in the p-basis, i.e. Z_k(p_1, ..., p_k)."""
    return zk_determinant([p_var(m, k) for m in range(1, k + 1)], k)


def gradient(f: MPoly) -> list[MPoly]:
    return [mpoly_partial(f, i) for i in range(f.nvars)]


# ---------------------------------------------------------------------------
# numeric evaluation at a point (exact when the point is rational)

def evaluate_family(family: str, r: int, point: Sequence, K: int) -> list:
    """[f_1(point), ..., f_K(point)] for family F, G or H."""
    n = len(point)
    if family == "F":
        if r < 1:
            raise FamilyError("F needs r >= 1")
        prod = [Fraction(1)] + [Fraction(0)] * K
        for x in point:
            factor = [Fraction(1)]
            for m in range(1, r + 1):
                factor.append(factor[-1] * x / m)
            new = [Fraction(0)] * (K + 1)
            for a, ca in enumerate(prod):
                if not ca:
                    continue
                for b, cb in enumerate(factor):
                    if a + b > K:
                        break
                    new[a + b] += ca * cb
            prod = new
        return prod[1:]
    alpha = AlphaSeq(family, r)
    top = alpha.nvars(K)
    sums = []
    powers = list(point)
    for _ in range(top):
        sums.append(sum(powers, Fraction(0)) if n else Fraction(0))
        powers = [a * b for a, b in zip(powers, point)]
    return zk_all(alpha.numeric(K, sums), K)[1:]


# ---------------------------------------------------------------------------
# the explicit series gamma and delta behind the Schur-Ostrowski argument

def _divided_difference(n: int, i: int, j: int, m: int) -> MPoly:
    """(x_i^m - x_j^m) / (x_i - x_j) by exact division."""
    xi, xj = MPoly.gen(i, n), MPoly.gen(j, n)
    return divide_exact(xi ** m - xj ** m, xi - xj)


def _check_pair(n: int, i: int, j: int) -> None:
    if n < 2 or i == j or not (0 <= i < n and 0 <= j < n):
        raise ValueError("need n >= 2 and distinct indices i, j in range")


def gamma_series(r: int, n: int, i: int, j: int, K: int) -> TSeries:
    """gamma with (-1)^r (dg_r/dx_i - dg_r/dx_j) = (x_i - x_j) gamma."""
    if r < 1:
        raise FamilyError("gamma needs r >= 1")
    _check_pair(n, i, j)
    ring = (n, "x")
    xi, xj = MPoly.gen(i, n), MPoly.gen(j, n)
    bracket = [0] * (K + 1)
    if r + 1 <= K:
        bracket[r + 1] = _divided_difference(n, i, j, r)
    if r + 2 <= K:
        bracket[r + 2] = xi * xj * _divided_difference(n, i, j, r - 1)
    rest = series_mul(_product_series(n, K, skip=(i, j)), series_exp(_g_exponent(r, n, K)))
    return series_mul(TSeries(bracket, K, ring), rest)


def delta_series(r: int, n: int, i: int, j: int, K: int) -> TSeries:
    """delta with dh_r/dx_i - dh_r/dx_j = -(x_i - x_j) delta."""
    if r < 1:
        raise FamilyError("delta needs r >= 1")
    _check_pair(n, i, j)
    ring = (n, "x")
    xi, xj = MPoly.gen(i, n), MPoly.gen(j, n)
    bracket = [0] * (K + 1)
    if 2 <= K:
        bracket[2] = _divided_difference(n, i, j, 2 * r - 1) * r
    if 3 <= K:
        bracket[3] = (xi * xj) ** r * _divided_difference(n, i, j, r - 1) * r
    rest = series_mul(_product_series(n, K, power=r, skip=(i, j)),
                      series_exp(_h_exponent(r, n, K)))
    return series_mul(TSeries(bracket, K, ring), rest)


def schur_identity(family: str, r: int, n: int, i: int, j: int, K: int):
    """Check the gradient-difference identity for g_r (family G) or h_r (H).

    Returns ``(holds, series)`` where ``series`` is gamma or delta.
    """
    xi_minus_xj = MPoly.gen(i, n) - MPoly.gen(j, n)
    if family == "G":
        gen, aux, sign_lhs, sign_rhs = g_series(r, n, K), gamma_series(r, n, i, j, K), (-1) ** r, 1
    elif family == "H":
        gen, aux, sign_lhs, sign_rhs = h_series(r, n, K), delta_series(r, n, i, j, K), 1, -1
    else:
        raise FamilyError(f"unknown family {family!r}")
    holds = all(
        (mpoly_partial(gen[k], i) - mpoly_partial(gen[k], j)) * sign_lhs
        == xi_minus_xj * aux[k] * sign_rhs
        for k in range(K + 1))
    return holds, aux
