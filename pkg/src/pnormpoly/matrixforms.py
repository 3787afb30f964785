"""G_{k,r} and H_{k,r} of a matrix's eigenvalues from its entries.

Two routes that never touch eigenvalues: substituting traces of powers into
Z_k, and summing modified determinants over generalized submatrices
A[m|m] (index maps with repetition).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import factorial
from pathlib import Path
from typing import Sequence

from .algebra import as_rat
from .combinatorics import (
    admissible_S, admissible_T, all_permutations, cycles_of, multiset_indices,
    sign_of, truncate_short_cycles,
)
from .sympoly import AlphaSeq, zk_determinant

Matrix = tuple[tuple[Fraction, ...], ...]


def rat_matrix(rows: Sequence[Sequence]) -> Matrix:
    """Square matrix of Fractions; entries may be ints, Fractions or "p/q" strings."""
    out = tuple(tuple(as_rat(v) for v in row) for row in rows)
    n = len(out)
    if any(len(row) != n for row in out):
        raise ValueError("matrix must be square")
    return out


def parse_matrix(text: str) -> Matrix:
    """Read the plain-text format: ``n`` on the first line, then n rows of n rationals."""
    lines = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty matrix file")
    try:
        n = int(lines[0][0])
    except ValueError as exc:
        raise ValueError(f"first line must be the dimension, got {lines[0]}") from exc
    rows = lines[1:]
    if len(lines[0]) != 1 or len(rows) != n or any(len(r) != n for r in rows):
        raise ValueError(f"expected {n} rows of {n} entries after the dimension line")
    return rat_matrix(rows)


def read_matrix(path: str | Path) -> Matrix:
    return parse_matrix(Path(path).read_text())


def format_matrix(A: Matrix) -> str:
    return "\n".join([str(len(A))] + [" ".join(str(v) for v in row) for row in A]) + "\n"


def matmul(A: Matrix, B: Matrix) -> Matrix:
    n = len(A)
    cols = list(zip(*B))
    return tuple(tuple(sum((a * b for a, b in zip(A[i], cols[j])), Fraction(0))
                       for j in range(n)) for i in range(n))


def identity(n: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def inverse(A: Matrix) -> Matrix:
    """Exact Gauss-Jordan inverse; raises ZeroDivisionError when singular."""
    n = len(A)
    M = [list(row) + list(e) for row, e in zip(A, identity(n))]
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c]), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        M[c], M[piv] = M[piv], M[c]
        inv = 1 / M[c][c]
        M[c] = [v * inv for v in M[c]]
        for r in range(n):
            if r != c and M[r][c]:
                f = M[r][c]
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return tuple(tuple(row[n:]) for row in M)


def trace_powers(A: Matrix, m_max: int) -> list[Fraction]:
    """[tr A, tr A^2, ..., tr A^m_max]."""
    out = []
    P = A
    for m in range(1, m_max + 1):
        if m > 1:
            P = matmul(P, A)
        out.append(sum((P[i][i] for i in range(len(A))), Fraction(0)))
    return out


def trace_power(A: Matrix, m: int) -> Fraction:
    if m < 1:
        raise ValueError("m must be >= 1")
    return trace_powers(A, m)[-1]


def family_from_traces(family: str, k: int, r: int, A: Matrix) -> Fraction:
    """Z_k(alpha) with every p_m replaced by tr(A^m)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    alpha = AlphaSeq(family, r)
    sums = trace_powers(A, alpha.nvars(k))
    return zk_determinant(alpha.numeric(k, sums), k)


def generalized_submatrix(A: Matrix, index_map: Sequence[int]) -> Matrix:
    """A[m|m] with entries A(m(i), m(j)); ``index_map`` is 0-based."""
    return tuple(tuple(A[a][b] for b in index_map) for a in index_map)


# the class functions behind the modified determinants, as {sigma_r: coefficient}

@lru_cache(maxsize=None)
def _delta_terms(k: int, r: int, cap: int | None) -> tuple[tuple[tuple[int, ...], int], ...]:
    acc: dict[tuple[int, ...], int] = {}
    for _, perm in all_permutations(k, admissible_S(r), cap=cap):
        sr = truncate_short_cycles(perm, r)
        acc[sr] = acc.get(sr, 0) + sign_of(sr)
    return tuple((p, c) for p, c in sorted(acc.items()) if c)


@lru_cache(maxsize=None)
def _D_terms(k: int, r: int, cap: int | None) -> tuple[tuple[tuple[int, ...], int], ...]:
    acc: dict[tuple[int, ...], int] = {}
    outer = (-1) ** (k * (r - 1))
    for _, perm in all_permutations(k * r, admissible_T(r), cap=cap):
        sr = truncate_short_cycles(perm, r)
        coef = outer * sign_of(perm) * r ** len(cycles_of(perm))
        acc[sr] = acc.get(sr, 0) + coef
    return tuple((p, c) for p, c in sorted(acc.items()) if c)


def _apply_terms(terms, B: Matrix) -> Fraction:
    total = Fraction(0)
    for perm, c in terms:
        prod = Fraction(c)
        for j, i in enumerate(perm):
            prod *= B[i][j]
            if not prod:
                break
        total += prod
    return total


def modified_det_G(B: Matrix, r: int, cap: int | None = None) -> Fraction:
    """sum over S(k,r) of sgn(sigma_r) prod_j B[sigma_r(j), j]."""
    if r < 0:
        raise ValueError("r must be >= 0")
    return _apply_terms(_delta_terms(len(B), r, cap), B)


def modified_det_H(B: Matrix, k: int, r: int, cap: int | None = None) -> Fraction:
    """(-1)^(k(r-1)) sum over T(k,r) of sgn(sigma) r^L(sigma) prod_j B[sigma_r(j), j]."""
    if r < 1:
        raise ValueError("r must be >= 1")
    if len(B) != k * r:
        raise ValueError(f"D_r needs a {k * r} x {k * r} matrix, got {len(B)}")
    return _apply_terms(_D_terms(k, r, cap), B)


def _modified_det(family: str, k: int, r: int, B: Matrix, cap: int | None) -> Fraction:
    if family == "G":
        return modified_det_G(B, r, cap)
    return modified_det_H(B, k, r, cap)


def family_from_entries(family: str, k: int, r: int, A: Matrix, cap: int | None = None,
                        full: bool = False) -> Fraction:
    """G or H of the eigenvalues of A via modified determinants of A[m|m].

    The default sums over multiset indices N with weight 1/(N_1!...N_n!);
    ``full=True`` sums over every index map and divides by size!.
    """
    AlphaSeq(family, r)
    if k < 1:
        raise ValueError("k must be >= 1")
    size = k if family == "G" else k * r
    n = len(A)
    if full:
        total = Fraction(0)
        for m in product(range(n), repeat=size):
            total += _modified_det(family, k, r, generalized_submatrix(A, m), cap)
        return total / factorial(size)
    total = Fraction(0)
    for N in multiset_indices(n, size):
        d = _modified_det(family, k, r, generalized_submatrix(A, N.index_map), cap)
        if d:
            total += d / N.denominator
    return total
