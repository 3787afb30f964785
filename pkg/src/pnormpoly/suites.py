"""Cross-route verification suites behind ``pnormpoly verify``.

Each suite returns a list of :class:`Check` records; nothing here raises on a
failed identity.
"""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from itertools import permutations
from math import comb, factorial

from .algebra import MPoly, mpoly_is_coefficientwise_nonneg
from .combinatorics import EnumerationCapError, DEFAULT_PERMUTATION_CAP, sign_of
from .matrixforms import (
    family_from_entries, family_from_traces, inverse, matmul, modified_det_G,
    modified_det_H, rat_matrix,
)
from .norms import (
    mellin_closed_form, mellin_constant, schur_ostrowski_check, verify_power_representation,
)
from .sympoly import (
    AlphaSeq, apply_homomorphism, brute_force_p, compute_F, compute_G, compute_H,
    cycle_index_matrix, cycle_index_p, elementary, elementary_p, g_series, h_series,
    schur_identity, to_x_basis, zk_determinant, zk_partition, zk_permutation_sum,
)

SUITES = ("golden", "degenerations", "routes", "zk-forms", "homomorphism", "matrix",
          "positivity", "mellin", "schur-ostrowski")


@dataclass
class Check:
    suite: str
    name: str
    params: dict
    passed: bool
    detail: str = ""
    value: float | None = None


@dataclass
class SuiteConfig:
    seed: int = 42
    cap: int = DEFAULT_PERMUTATION_CAP
    matrices: int = 20
    so_samples: int = 100


def _fmt(f) -> str:
    return str(f)


# ---------------------------------------------------------------------------

GOLDEN_G53 = MPoly(5, {(5, 0, 0, 0, 0): Fraction(7, 40), (1, 0, 0, 1, 0): Fraction(-1, 4),
                       (0, 0, 0, 0, 1): Fraction(1, 5)}, "p")


def suite_golden(cfg: SuiteConfig) -> list[Check]:
    out = []
    for route in ("cycle-index", "brute-force"):
        got = compute_G(5, 3, basis="p", route=route)
        out.append(Check("golden", "G_{5,3} p-basis", {"route": route},
                         got == GOLDEN_G53, _fmt(got)))
    return out


def suite_degenerations(cfg: SuiteConfig, k_max: int = 6, n_max: int = 5) -> list[Check]:
    out = []
    for n in range(1, n_max + 1):
        for k in range(1, k_max + 1):
            e = elementary(k, n)
            forms = {"F_{k,1}": compute_F(k, 1, n),
                     "G_{k,0}": g_series(0, n, k)[k],
                     "G_{k,1}": g_series(1, n, k)[k],
                     "H_{k,1}": h_series(1, n, k)[k],
                     "G_{k,0} cycle-index": compute_G(k, 0, n),
                     "H_{k,1} cycle-index": compute_H(k, 1, n)}
            bad = [name for name, f in forms.items() if f != e]
            out.append(Check("degenerations", "= e_k", {"k": k, "n": n}, not bad,
                             "mismatch: " + ", ".join(bad) if bad else ""))
    return out


def route_agreement(family: str, k: int, r: int, n: int, cap: int) -> Check:
    compute = compute_G if family == "G" else compute_H
    gen = compute(k, r, n, route="generating-function")
    ci = compute(k, r, n, route="cycle-index")
    bf = compute(k, r, n, route="brute-force")
    ok = gen == ci == bf
    detail = []
    size = k if family == "G" else k * r
    if size <= cap:
        explicit = to_x_basis(brute_force_p(family, k, r, explicit=True, cap=cap), n)
        ok = ok and explicit == gen
        detail.append("explicit enumeration included")
    if not ok:
        detail.append(f"generating-function={gen}; cycle-index={ci}; brute-force={bf}")
    return Check("routes", f"{family} routes", {"k": k, "r": r, "n": n}, ok, "; ".join(detail))


def suite_routes(cfg: SuiteConfig) -> list[Check]:
    out = []
    for r in range(0, 5):
        for n in range(1, 6):
            for k in range(1, 7):
                out.append(route_agreement("G", k, r, n, cfg.cap))
    for r in range(1, 4):
        for n in range(1, 5):
            for k in range(1, 4):
                out.append(route_agreement("H", k, r, n, cfg.cap))
    return out


def random_rational(rng: random.Random, span: int = 9, den: int = 7) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, den))


def leibniz_det(M) -> object:
    """Plain permutation-sum determinant; oracle use only."""
    k = len(M)
    total = 0 * M[0][0]
    for perm in permutations(range(k)):
        term = M[0][perm[0]] * sign_of(perm)
        for i in range(1, k):
            term = term * M[i][perm[i]]
        total = total + term
    return total


def suite_zk_forms(cfg: SuiteConfig, k_max: int = 7, det_k_max: int = 6) -> list[Check]:
    rng = random.Random(cfg.seed)
    out = []
    for k in range(1, k_max + 1):
        for trial in range(3):
            alpha = [random_rational(rng) for _ in range(k)]
            a = zk_partition(alpha, k)
            b = zk_determinant(alpha, k)
            ok = a == b
            detail = f"Z={a}"
            if k <= cfg.cap:
                c = zk_permutation_sum(alpha, k, cap=cfg.cap)
                ok = ok and a == c
            if k <= det_k_max:
                d = leibniz_det(cycle_index_matrix(alpha, k)) / factorial(k)
                ok = ok and a == d
            out.append(Check("zk-forms", "Z_k three forms", {"k": k, "trial": trial}, ok, detail))
    return out


def suite_homomorphism(cfg: SuiteConfig, k_max: int = 6, r_max: int = 4) -> list[Check]:
    out = []
    for k in range(1, k_max + 1):
        ek = elementary_p(k)
        for r in range(0, r_max + 1):
            img = apply_homomorphism(ek, AlphaSeq("G", r), k)
            out.append(Check("homomorphism", "phi(e_k) = G_{k,r}", {"k": k, "r": r},
                             img == cycle_index_p("G", k, r) == brute_force_p("G", k, r)))
            if r >= 1:
                img = apply_homomorphism(ek, AlphaSeq("H", r), k * r)
                out.append(Check("homomorphism", "psi(e_k) = H_{k,r}", {"k": k, "r": r},
                                 img == cycle_index_p("H", k, r) == brute_force_p("H", k, r)))
    return out


def random_matrix(rng: random.Random, n: int):
    return rat_matrix([[random_rational(rng) for _ in range(n)] for _ in range(n)])


def suite_matrix(cfg: SuiteConfig) -> list[Check]:
    rng = random.Random(cfg.seed)
    out = []
    for idx in range(cfg.matrices):
        n = 1 + idx % 3
        A = random_matrix(rng, n)
        params = {"matrix": idx, "n": n}
        for k in range(1, 5):
            for r in range(0, 4):
                a = family_from_traces("G", k, r, A)
                b = family_from_entries("G", k, r, A, cap=cfg.cap)
                out.append(Check("matrix", "G entries = traces", {**params, "k": k, "r": r},
                                 a == b, f"traces={a} entries={b}"))
        a = family_from_traces("H", 2, 2, A)
        b = family_from_entries("H", 2, 2, A, cap=cfg.cap)
        out.append(Check("matrix", "H entries = traces", {**params, "k": 2, "r": 2},
                         a == b, f"traces={a} entries={b}"))
        # similarity invariance of the trace route
        while True:
            P = random_matrix(rng, n)
            try:
                Pinv = inverse(P)
                break
            except ZeroDivisionError:
                continue
        B = matmul(matmul(P, A), Pinv)
        same = all(family_from_traces("G", k, 3, A) == family_from_traces("G", k, 3, B)
                   for k in range(1, 5))
        out.append(Check("matrix", "similarity invariance", params, same))
    # degenerations of the modified determinants
    for k in range(1, 5):
        B = random_matrix(rng, k)
        d = leibniz_det(B)
        out.append(Check("matrix", "delta_1 = det", {"k": k}, modified_det_G(B, 1) == d))
        out.append(Check("matrix", "D_1 = det", {"k": k}, modified_det_H(B, k, 1) == d))
    return out


def _nonneg_check(label: str, f: MPoly, degree: int, params: dict) -> Check:
    ok, witness = mpoly_is_coefficientwise_nonneg(f)
    # nonnegativity is what is tested; zero monomials are only reported
    zeros = comb(f.nvars + degree - 1, degree) - len(f.terms)
    detail = f"zero coefficients: {zeros}"
    if not ok:
        detail += f"; negative witness {witness}"
    return Check("positivity", label, params, ok, detail)


def suite_positivity(cfg: SuiteConfig) -> list[Check]:
    out = []
    for r in range(0, 5):
        for n in range(1, 6):
            for k in range(1, 7):
                out.append(_nonneg_check("G coefficients >= 0", compute_G(k, r, n), k,
                                         {"k": k, "r": r, "n": n}))
    for r in range(1, 4):
        for n in range(1, 5):
            for k in range(1, 4):
                out.append(_nonneg_check("H coefficients >= 0", compute_H(k, r, n), k * r,
                                         {"k": k, "r": r, "n": n}))
    K = 6
    for family, label in (("G", "gamma"), ("H", "delta")):
        for r in range(1, 4):
            for n in range(2, 4):
                holds, series = schur_identity(family, r, n, 0, 1, K)
                bad = [k for k in range(K + 1)
                       if not mpoly_is_coefficientwise_nonneg(series[k])[0]]
                out.append(Check("positivity", f"{label} identity and nonnegativity",
                                 {"r": r, "n": n, "order": K}, holds and not bad,
                                 f"identity={'ok' if holds else 'FAILED'}"
                                 + (f"; negative at t^{bad}" if bad else "")))
    return out


MELLIN_GRID = {
    "psi": [(0, 0.25), (0, 0.5), (0, 0.75), (1, 1.25), (1, 1.5), (1, 1.75), (2, 2.25),
            (2, 2.5), (2, 2.75), (3, 3.25), (3, 3.5), (4, 4.5)],
    "phi": [(2, 2.5), (2, 3.0), (2, 3.5), (3, 3.5), (3, 4.5), (3, 5.5), (4, 5.0),
            (4, 6.0), (4, 7.0)],
}
MELLIN_TOL = 1e-8


def suite_mellin(cfg: SuiteConfig) -> list[Check]:
    out = []
    for kind, grid in MELLIN_GRID.items():
        for r, p in grid:
            c = mellin_constant(kind, r, p)
            exact = mellin_closed_form(kind, r, p)
            err = abs(c - exact) / abs(exact)
            out.append(Check("mellin", f"C_p({kind}_r) closed form", {"r": r, "p": p},
                             err < MELLIN_TOL and c > 0, f"rel err {err:.3e}", err))
            for a in (0.5, 1.0, 2.0, 10.0):
                err = verify_power_representation(kind, r, a, p)
                out.append(Check("mellin", "a^p representation",
                                 {"kernel": kind, "r": r, "p": p, "a": a},
                                 err < MELLIN_TOL, f"rel err {err:.3e}", err))
    return out


def suite_schur_ostrowski(cfg: SuiteConfig) -> list[Check]:
    out = []
    for family in ("G", "H"):
        for k in range(1, 5):
            for r in range(1, 4):
                for n in range(2, 5):
                    seed = cfg.seed * 1000 + k * 100 + r * 10 + n
                    rep = schur_ostrowski_check(family, k, r, cfg.so_samples, n, seed=seed)
                    out.append(Check("schur-ostrowski",
                                     "(-1)^r G convex" if family == "G" else "H concave",
                                     {"k": k, "r": r, "n": n, "samples": cfg.so_samples},
                                     rep.passed,
                                     f"equalities={rep.equalities}"
                                     + (f"; first violation {rep.violations[0]}"
                                        if rep.violations else "")))
    return out


RUNNERS = {
    "golden": suite_golden,
    "degenerations": suite_degenerations,
    "routes": suite_routes,
    "zk-forms": suite_zk_forms,
    "homomorphism": suite_homomorphism,
    "matrix": suite_matrix,
    "positivity": suite_positivity,
    "mellin": suite_mellin,
    "schur-ostrowski": suite_schur_ostrowski,
}


def run_suite(name: str, cfg: SuiteConfig) -> list[Check]:
    try:
        return RUNNERS[name](cfg)
    except EnumerationCapError as exc:
        return [Check(name, "cap", {}, False, str(exc))]


def summarize(name: str, checks: list[Check]) -> dict:
    failed = [c for c in checks if not c.passed]
    summary = {"passed": len(checks) - len(failed), "failed": len(failed),
               "first_failure": asdict(failed[0]) if failed else None,
               "checks": [asdict(c) for c in checks]}
    values = [c.value for c in checks if c.value is not None]
    if values:
        summary["max_relative_error"] = max(values)
    return summary


@dataclass
class VerifyResult:
    suites: dict[str, list[Check]] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for checks in self.suites.values() for c in checks)
