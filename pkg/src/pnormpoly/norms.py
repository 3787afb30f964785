"""Floating-point layer: p-norms, Mellin kernels, and the inequality checkers.

Polynomial hypotheses are always decided exactly (inputs are rationalized
first); only the norm conclusions and the Mellin integrals use floats.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import quad

from .algebra import MPoly, as_rat
from .sympoly import FamilyError, compute_G, compute_H, evaluate_family, gradient

DEFAULT_K_MAX = 12
DEFAULT_P_STEP = 0.05
DEFAULT_RTOL = 1e-9
QUAD_RTOL = 1e-10

THEOREM_FAMILIES = ("F", "G", "H")


class WindowError(ValueError):
    """p lies outside the interval where the Mellin integral converges."""


class QuadratureError(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# norms and kernels

def pnorm(x: Sequence[float], p: float) -> float:
    """((1/n) sum x_i^p)^(1/p); the geometric mean at p = 0."""
    v = np.asarray([float(a) for a in x], dtype=float)
    if v.size == 0:
        raise ValueError("empty vector")
    if np.any(v < 0):
        raise ValueError("entries must be nonnegative")
    if p == 0:
        if np.any(v == 0):
            return 0.0
        return float(np.exp(np.mean(np.log(v))))
    if p < 0 and np.any(v == 0):
        return 0.0
    scale = float(v.max() if p > 0 else v.min())
    if scale == 0:
        return 0.0
    with np.errstate(divide="ignore"):
        lv = np.log(v / scale)
    if abs(p) < 1e-8 and np.all(v > 0):
        # log M_p = mean(log v) + p var(log v) / 2 + O(p^2)
        return scale * math.exp(float(np.mean(lv) + p * np.var(lv) / 2))
    # log1p/expm1 keep small |p| accurate
    return scale * math.exp(math.log1p(float(np.mean(np.expm1(p * lv)))) / p)


def _log_tail(r: int, t: float) -> float:
    # sum_{j>=1} (-1)^(j-1) t^(r+j)/(r+j), valid for t < 1
    total = 0.0
    power = t ** (r + 1)
    j = 1
    while True:
        term = power / (r + j)
        total += term if j % 2 else -term
        if term < 1e-18 * abs(total):
            return total
        power *= t
        j += 1


def psi_kernel(r: int, t: float) -> float:
    """(-1)^r (log(1+t) - Q_r(t)), Q_r the degree-r Taylor polynomial of log(1+t)."""
    if r < 0:
        raise ValueError("psi needs r >= 0")
    if t < 0:
        raise ValueError("t must be nonnegative")
    if t == 0:
        return 0.0
    if t < 0.5:
        return _log_tail(r, t)
    Q = sum((-1) ** (m - 1) * t ** m / m for m in range(1, r + 1))
    return (-1) ** r * (math.log1p(t) - Q)


def phi_kernel(r: int, t: float) -> float:
    """t^r - log(1 + t^r)."""
    if r < 1:
        raise ValueError("phi needs r >= 1")
    if t < 0:
        raise ValueError("t must be nonnegative")
    return psi_kernel(1, t ** r)


def kernel_window(kind: str, r: int) -> tuple[float, float]:
    """Open interval of p for which the Mellin integral converges."""
    if kind == "psi":
        if r < 0:
            raise ValueError("psi needs r >= 0")
        return (r, r + 1)
    if kind == "phi":
        if r < 1:
            raise ValueError("phi needs r >= 1")
        return (r, 2 * r)
    raise ValueError(f"unknown kernel {kind!r}")


def mellin_closed_form(kind: str, r: int, p: float) -> float:
    """C_p by integration by parts and the beta integral int t^(a-1)/(1+t) dt = pi/sin(pi a)."""
    _check_window(kind, r, p)
    if kind == "psi":
        return math.pi / (p * math.sin(math.pi * (r + 1 - p)))
    return -math.pi / (p * math.sin(math.pi * p / r))


def _check_window(kind: str, r: int, p: float) -> None:
    lo, hi = kernel_window(kind, r)
    if not lo < p < hi:
        raise WindowError(f"p={p} outside the {kind}_{r} window ({lo}, {hi})")


def _quad(f, a, b, **kw) -> float:
    val, err, *info = quad(f, a, b, epsabs=0.0, epsrel=QUAD_RTOL / 10, limit=400,
                           full_output=1, **kw)
    if len(info) > 1 and val and abs(err) > QUAD_RTOL * abs(val):
        raise QuadratureError(f"quadrature missed tolerance: {val} +- {err}")
    return val


def mellin_integral(kind: str, r: int, p: float, a: float = 1.0) -> float:
    """int_0^inf kernel(a t) t^(-p) dt/t by adaptive Gauss-Kronrod panels.

    Split at t = 1/a.  The head carries the algebraic weight t^(low - p - 1);
    the tail is mapped by u = 1/t onto (0, a] with weight u^(p - growth - 1).
    """
    _check_window(kind, r, p)
    if a <= 0:
        raise ValueError("a must be positive")
    if kind == "psi":
        kern = lambda s: psi_kernel(r, s)  # noqa: E731
        low, growth, c0, cinf = r + 1, r, 1.0 / (r + 1), (1.0 / r if r else 0.0)
    else:
        kern = lambda s: phi_kernel(r, s)  # noqa: E731
        low, growth, c0, cinf = 2 * r, r, 0.5, 1.0

    def head(t):
        return kern(a * t) / t ** low if t > 0 else a ** low * c0

    total = _quad(head, 0.0, 1.0 / a, weight="alg", wvar=(low - p - 1, 0.0))
    if kind == "psi" and r == 0:
        # log(1 + a/u) = log(u + a) - log(u)
        total += _quad(lambda u: math.log(u + a), 0.0, a, weight="alg", wvar=(p - 1, 0.0))
        total += _quad(lambda u: -1.0, 0.0, a, weight="alg-loga", wvar=(p - 1, 0.0))
        return total

    def tail(u):
        return kern(a / u) * u ** growth if u > 0 else a ** growth * cinf

    total += _quad(tail, 0.0, a, weight="alg", wvar=(p - growth - 1, 0.0))
    return total


def mellin_constant(kind: str, r: int, p: float) -> float:
    """C_p of the kernel psi_r or phi_r, computed by quadrature."""
    c = mellin_integral(kind, r, p, 1.0)
    if not c > 0:
        raise QuadratureError(f"nonpositive Mellin constant {c}")
    return c


def verify_power_representation(kind: str, r: int, a: float, p: float) -> float:
    """Relative error of (1/C_p) int kernel(a t) t^(-p-1) dt against a^p."""
    approx = mellin_integral(kind, r, p, a) / mellin_constant(kind, r, p)
    exact = a ** p
    return abs(approx - exact) / exact


# ---------------------------------------------------------------------------
# theorem checking

@dataclass
class Conclusion:
    p: float
    norm_x: float
    norm_y: float
    direction: str   # ">=" means ||x||_p >= ||y||_p is claimed
    margin: float    # relative, positive when the claim holds


@dataclass
class TheoremVerdict:
    family: str
    r: int
    k_range: tuple[int, int]
    hypothesis_satisfied: bool
    failing_k: list[int]
    sum_constraint_satisfied: bool
    sum_residual: Fraction
    conclusions: list[Conclusion] = field(default_factory=list)
    counterexample: bool = False
    rtol: float = DEFAULT_RTOL

    @property
    def min_margin(self) -> float:
        return min((c.margin for c in self.conclusions), default=math.inf)

    @property
    def min_checked_margin(self) -> float:
        """Smallest margin among conclusions whose hypotheses hold."""
        return min((c.margin for c in self._checked()), default=math.inf)

    def _checked(self):
        if not self.hypothesis_satisfied:
            return []
        return [c for c in self.conclusions
                if self.sum_constraint_satisfied or not _needs_sum(self.family, c)]


def _needs_sum(family: str, c: Conclusion) -> bool:
    return not (family == "F" and c.direction == "<=")


def p_grid(lo: float, hi: float, step: float) -> list[float]:
    """Closed grid from lo to hi, endpoints included."""
    count = max(1, int(round((hi - lo) / step)))
    return [lo + (hi - lo) * i / count for i in range(count + 1)]


def theorem_intervals(family: str, r: int) -> list[tuple[float, float, str]]:
    """(p_lo, p_hi, direction) claimed by the theorem for this family."""
    if family == "F":
        return [(0.0, 1.0, "<="), (1.0, r + 1.0, ">=")]
    if family == "G":
        return [(float(r), r + 1.0, ">=")]
    return [(float(r), 2.0 * r, ">=")]


def _validate_family(family: str, r: int) -> str:
    if family not in THEOREM_FAMILIES:
        raise FamilyError(f"unknown theorem family {family!r}")
    fam = family
    if fam in ("F", "H") and r < 1:
        raise FamilyError(f"family {fam} needs r >= 1")
    if fam == "G" and r < 0:
        raise FamilyError("family G needs r >= 0")
    return fam


def hypothesis_k_range(family: str, r: int, n: int, k_max: int) -> tuple[int, int]:
    if family == "F":
        return (r, n * r)
    return (1, k_max)


def check_theorem(family: str, r: int, x: Sequence, y: Sequence,
                  p_step: float = DEFAULT_P_STEP, k_max: int = DEFAULT_K_MAX,
                  rtol: float = DEFAULT_RTOL) -> TheoremVerdict:
    """Decide the polynomial hypotheses exactly, then check the norm conclusion."""
    fam = _validate_family(family, r)
    if len(x) != len(y) or not x:
        raise ValueError("x and y must be nonempty and of equal length")
    xr = [as_rat(v) for v in x]
    yr = [as_rat(v) for v in y]
    if any(v < 0 for v in xr + yr):
        raise ValueError("x and y must be nonnegative")
    n = len(xr)
    k_lo, k_hi = hypothesis_k_range(fam, r, n, k_max)
    fx = evaluate_family(fam, r, xr, k_hi)
    fy = evaluate_family(fam, r, yr, k_hi)
    failing = []
    for k in range(k_lo, k_hi + 1):
        a, b = fx[k - 1], fy[k - 1]
        if fam == "G":
            ok = (-1) ** r * (a - b) >= 0
        else:
            ok = a <= b
        if not ok:
            failing.append(k)
    residual = sum(xr) - sum(yr)
    verdict = TheoremVerdict(
        family=fam, r=r, k_range=(k_lo, k_hi), hypothesis_satisfied=not failing,
        failing_k=failing, sum_constraint_satisfied=residual == 0,
        sum_residual=residual, rtol=rtol)
    xf = [float(v) for v in xr]
    yf = [float(v) for v in yr]
    for lo, hi, direction in theorem_intervals(fam, r):
        for p in p_grid(lo, hi, p_step):
            nx, ny = pnorm(xf, p), pnorm(yf, p)
            scale = max(nx, ny)
            diff = nx - ny if direction == ">=" else ny - nx
            margin = diff / scale if scale > 0 else 0.0
            verdict.conclusions.append(Conclusion(p, nx, ny, direction, margin))
    verdict.counterexample = any(c.margin < -rtol for c in verdict._checked())
    return verdict


# ---------------------------------------------------------------------------
# random majorization pairs and fuzzing

def random_point(rng: random.Random, n: int, max_num: int = 40, max_den: int = 8,
                 zero_prob: float = 0.05) -> list[Fraction]:
    return [Fraction(0) if rng.random() < zero_prob
            else Fraction(rng.randint(1, max_num), rng.randint(1, max_den))
            for _ in range(n)]


def t_transform(x: Sequence[Fraction], i: int, j: int, lam: Fraction) -> list[Fraction]:
    """Average coordinates i and j: the result is majorized by x."""
    y = list(x)
    y[i] = lam * x[i] + (1 - lam) * x[j]
    y[j] = lam * x[j] + (1 - lam) * x[i]
    return y


def majorized_pair(rng: random.Random, n: int, max_steps: int = 3,
                   degenerate_prob: float = 0.02) -> tuple[list[Fraction], list[Fraction]]:
    """(x, y) with y = D x for D a random product of T-transforms, so x majorizes y."""
    x = random_point(rng, n)
    if n < 2 or rng.random() < degenerate_prob:
        return x, list(x)
    y = list(x)
    for _ in range(rng.randint(1, max_steps)):
        i, j = rng.sample(range(n), 2)
        y = t_transform(y, i, j, Fraction(rng.randint(0, 16), 16))
    return x, y


def equal_sum_pair(rng: random.Random, n: int) -> tuple[list[Fraction], list[Fraction]]:
    """Independent x and y rescaled to a common sum; majorization not guaranteed."""
    x = random_point(rng, n, zero_prob=0.0)
    y = random_point(rng, n, zero_prob=0.0)
    sx, sy = sum(x), sum(y)
    return x, [v * sx / sy for v in y]


def identical_pair(rng: random.Random, n: int) -> tuple[list[Fraction], list[Fraction]]:
    x = random_point(rng, n)
    return x, list(x)


PAIR_GENERATORS = {"majorization": majorized_pair, "equal-sum": equal_sum_pair,
                   "identical": identical_pair}


MARGIN_BINS = (-math.inf, -1e-9, 0.0, 1e-12, 1e-9, 1e-6, 1e-3, 1e-1, math.inf)


@dataclass
class FuzzReport:
    family: str
    r: int
    n: int
    samples: int
    seed: int
    k_max: int
    pairs: str
    p_step: float
    rtol: float
    hypothesis_satisfied: int = 0
    sum_satisfied: int = 0
    checked: int = 0
    resolved_by_larger_k: list[dict] = field(default_factory=list)
    counterexamples: list[dict] = field(default_factory=list)
    margin_histogram: dict[str, int] = field(default_factory=dict)
    min_margin: float = math.inf
    rows: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.counterexamples


def _bin_label(lo: float, hi: float) -> str:
    return f"[{lo:g}, {hi:g})"


def fuzz_theorem(family: str, r: int, n: int, samples: int, seed: int = 0,
                 k_max: int = DEFAULT_K_MAX, p_step: float = DEFAULT_P_STEP,
                 rtol: float = DEFAULT_RTOL, pairs: str = "majorization",
                 escalate: Sequence[int] = (4, 16)) -> FuzzReport:
    """Run ``check_theorem`` on ``samples`` seeded pairs.

    A candidate counterexample is re-checked with ``k_max`` multiplied by each
    factor in ``escalate``; if a hypothesis then fails it is recorded under
    ``resolved_by_larger_k`` instead of ``counterexamples``.
    """
    fam = _validate_family(family, r)
    if pairs not in PAIR_GENERATORS:
        raise ValueError(f"unknown pair generator {pairs!r}")
    rng = random.Random(seed)
    report = FuzzReport(fam, r, n, samples, seed, k_max, pairs, p_step, rtol)
    hist = {_bin_label(lo, hi): 0 for lo, hi in zip(MARGIN_BINS, MARGIN_BINS[1:])}
    for idx in range(samples):
        x, y = PAIR_GENERATORS[pairs](rng, n)
        v = check_theorem(fam, r, x, y, p_step, k_max, rtol)
        report.hypothesis_satisfied += v.hypothesis_satisfied
        report.sum_satisfied += v.sum_constraint_satisfied
        m = v.min_checked_margin
        if v.hypothesis_satisfied:
            report.checked += 1
            report.min_margin = min(report.min_margin, m)
            for lo, hi in zip(MARGIN_BINS, MARGIN_BINS[1:]):
                if lo <= m < hi:
                    hist[_bin_label(lo, hi)] += 1
                    break
        report.rows.append({"index": idx, "hypothesis": v.hypothesis_satisfied,
                            "sum_equal": v.sum_constraint_satisfied,
                            "min_margin": m if v.hypothesis_satisfied else None,
                            "counterexample": v.counterexample})
        if v.counterexample:
            worst = min(v._checked(), key=lambda c: c.margin)
            entry = {"index": idx, "x": [str(a) for a in x], "y": [str(b) for b in y],
                     "p": worst.p, "margin": worst.margin}
            for factor in escalate if fam != "F" else ():
                again = check_theorem(fam, r, x, y, p_step, k_max * factor, rtol)
                if not again.hypothesis_satisfied:
                    entry["k_max_needed"] = k_max * factor
                    entry["failing_k"] = again.failing_k[:5]
                    report.resolved_by_larger_k.append(entry)
                    break
            else:
                report.counterexamples.append(entry)
    report.margin_histogram = hist
    return report


# ---------------------------------------------------------------------------
# Schur-Ostrowski sampling

def schur_convex_target(family: str, k: int, r: int, n: int) -> MPoly:
    """The polynomial claimed Schur convex: (-1)^r G (with -G at r = 0), or -H."""
    if family == "G":
        G = compute_G(k, r, n)
        return -G if r == 0 else G * (-1) ** r
    if family == "H":
        return -compute_H(k, r, n)
    if family == "e":
        from .sympoly import elementary
        return -elementary(k, n)
    raise FamilyError(f"unknown family {family!r}")


@dataclass
class SchurOstrowskiReport:
    family: str
    k: int
    r: int
    n: int
    samples: int
    seed: int
    equalities: int = 0
    violations: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations


def schur_ostrowski_check(family: str, k: int, r: int, samples: int, n: int,
                          seed: int = 0, f: MPoly | None = None) -> SchurOstrowskiReport:
    """Exact sign of (x_i - x_j)(df/dx_i - df/dx_j) at seeded random rational points."""
    if n < 2:
        raise ValueError("Schur-Ostrowski needs n >= 2")
    f = schur_convex_target(family, k, r, n) if f is None else f
    grad = gradient(f)
    rng = random.Random(seed)
    report = SchurOstrowskiReport(family, k, r, n, samples, seed)
    for _ in range(samples):
        x = random_point(rng, n, zero_prob=0.1)
        i, j = rng.sample(range(n), 2)
        value = (x[i] - x[j]) * (grad[i].evaluate(x) - grad[j].evaluate(x))
        if value == 0:
            report.equalities += 1
        elif value < 0:
            report.violations.append({"x": [str(v) for v in x], "i": i, "j": j,
                                      "value": str(value)})
    return report


def finite_difference_gradient(f: Callable[[Sequence[float]], float], x: Sequence[float],
                               h: float = 1e-5) -> list[float]:
    """Central differences with a step scaled to each coordinate."""
    out = []
    for i in range(len(x)):
        step = h * max(1.0, abs(x[i]))
        up = list(x)
        dn = list(x)
        up[i] += step
        dn[i] -= step
        out.append((f(up) - f(dn)) / (2 * step))
    return out
