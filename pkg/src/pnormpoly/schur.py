"""Schur-basis expansion of p-basis symmetric functions.

Irreducible characters of S_k come from the Murnaghan-Nakayama rule worked on
beta-sets: removing a rim hook of length m moves one bead down by m, with
sign (-1)^(beads jumped over).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .algebra import MPoly
from .combinatorics import Partition, partitions_of

DEFAULT_SCHUR_CAP = 12


def _beta_set(lam: tuple[int, ...]) -> tuple[int, ...]:
    L = len(lam)
    return tuple(part + (L - 1 - i) for i, part in enumerate(lam))


def _from_beta(beta: tuple[int, ...]) -> tuple[int, ...]:
    bs = sorted(beta, reverse=True)
    L = len(bs)
    return tuple(p for p in (b - (L - 1 - i) for i, b in enumerate(bs)) if p > 0)


@lru_cache(maxsize=None)
def mn_character(lam: tuple[int, ...], mu: tuple[int, ...]) -> int:
    """chi^lam evaluated on the class of cycle type mu."""
    lam, mu = tuple(Partition(lam)), tuple(Partition(mu))
    if sum(lam) != sum(mu):
        raise ValueError("partitions of different sizes")
    if not mu:
        return 1
    m, rest = mu[0], mu[1:]
    beta = set(_beta_set(lam))
    total = 0
    for b in beta:
        target = b - m
        if target < 0 or target in beta:
            continue
        jumped = sum(1 for c in beta if target < c < b)
        smaller = _from_beta(tuple((beta - {b}) | {target}))
        total += (-1) ** jumped * mn_character(smaller, rest)
    return total


def character_table(k: int) -> dict[tuple[Partition, Partition], int]:
    parts = list(partitions_of(k))
    return {(lam, mu): mn_character(lam, mu) for lam in parts for mu in parts}


def p_term_partition(exp: tuple[int, ...]) -> Partition:
    """The partition mu with p_mu equal to the monomial ``exp``."""
    return Partition([m + 1 for m, c in enumerate(exp) for _ in range(c)])


def schur_expand(f: MPoly, k: int, cap: int = DEFAULT_SCHUR_CAP) -> dict[Partition, Fraction]:
    """Coefficients of s_lambda, lambda |- k, in a degree-k p-basis polynomial.

    ``k`` is the symmetric-function degree, so H_{k,r} needs ``k * r`` here.

    Uses ``p_mu = sum_lambda chi^lambda(mu) s_lambda``.  Zero coefficients are
    kept so every partition of k appears.
    """
    if k > cap:
        raise ValueError(f"Schur expansion capped at k <= {cap}, asked for {k}")
    if f.var != "p":
        raise ValueError("schur_expand expects a p-basis polynomial")
    coeffs = {lam: Fraction(0) for lam in partitions_of(k)}
    for exp, c in f.terms.items():
        mu = p_term_partition(exp)
        if mu.size != k:
            raise ValueError(f"term p_{mu} has degree {mu.size}, expected {k}")
        for lam in coeffs:
            chi = mn_character(lam, mu)
            if chi:
                coeffs[lam] += c * chi
    return coeffs
