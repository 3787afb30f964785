from fractions import Fraction
from math import factorial, prod

import pytest

from pnormpoly.algebra import MPoly
from pnormpoly.combinatorics import Partition, centralizer_size, partitions_of
from pnormpoly.schur import character_table, mn_character, p_term_partition, schur_expand
from pnormpoly.sympoly import cycle_index_p, elementary_p, p_var, zk_partition


def hook_length_dimension(lam: Partition) -> int:
    conj = lam.conjugate()
    hooks = prod(lam[i] - j + conj[j] - i - 1 for i in range(len(lam)) for j in range(lam[i]))
    return factorial(lam.size) // hooks


@pytest.mark.parametrize("k", range(1, 9))
def test_dimension_matches_hook_length(k):
    for lam in partitions_of(k):
        assert mn_character(lam, (1,) * k) == hook_length_dimension(lam)


@pytest.mark.parametrize("k", range(1, 8))
def test_row_orthogonality(k):
    parts = list(partitions_of(k))
    for lam in parts:
        for nu in parts:
            s = sum(Fraction(mn_character(lam, mu) * mn_character(nu, mu), centralizer_size(mu))
                    for mu in parts)
            assert s == (1 if lam == nu else 0)


def test_known_S3_table():
    table = character_table(3)
    # rows (3), (2,1), (1,1,1); columns (1,1,1), (2,1), (3)
    expected = {(3,): (1, 1, 1), (2, 1): (2, 0, -1), (1, 1, 1): (1, -1, 1)}
    for lam, row in expected.items():
        assert tuple(table[(Partition(lam), Partition(mu))]
                     for mu in [(1, 1, 1), (2, 1), (3,)]) == row


def test_sign_and_trivial_characters():
    for k in range(1, 7):
        for mu in partitions_of(k):
            assert mn_character((k,), mu) == 1
            assert mn_character((1,) * k, mu) == (-1) ** (k - len(mu))


@pytest.mark.parametrize("k", range(1, 7))
def test_elementary_is_single_column_schur(k):
    coeffs = schur_expand(elementary_p(k), k)
    assert coeffs == {lam: (1 if lam == Partition([1] * k) else 0) for lam in partitions_of(k)}


@pytest.mark.parametrize("k", range(1, 7))
def test_complete_homogeneous_is_single_row_schur(k):
    h = zk_partition([p_var(m, k) for m in range(1, k + 1)], k)  # no sign twist -> h_k
    h = sum((c * MPoly.monomial(exp, 1, "p") * (-1) ** (k - sum(exp))
             for exp, c in h.terms.items()), MPoly.zero(k, "p"))
    coeffs = schur_expand(h, k)
    assert coeffs == {lam: (1 if lam == Partition([k]) else 0) for lam in partitions_of(k)}


def test_p1_power_gives_dimensions():
    coeffs = schur_expand(p_var(1, 5) ** 5, 5)
    assert coeffs == {lam: hook_length_dimension(lam) for lam in partitions_of(5)}


def test_p_term_partition():
    assert p_term_partition((2, 0, 1)) == Partition([3, 1, 1])


def test_H22_expansion_regular_character():
    # pairing with f^lambda is the regular character: k! times the p1^k coefficient
    coeffs = schur_expand(cycle_index_p("H", 2, 2), 4)
    assert sum(c * hook_length_dimension(lam) for lam, c in coeffs.items()) == \
        cycle_index_p("H", 2, 2).coeff((4, 0, 0, 0)) * factorial(4)


def test_schur_expand_validation():
    with pytest.raises(ValueError):
        schur_expand(elementary_p(3), 2)
    with pytest.raises(ValueError):
        schur_expand(MPoly.gen(0, 2), 1)
    with pytest.raises(ValueError):
        schur_expand(elementary_p(7), 7, cap=6)
