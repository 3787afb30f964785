"""Partitions, cycle types of S_k, restricted permutation classes, multiset indices."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from math import factorial, prod
from typing import Callable, Iterator, Sequence

DEFAULT_PERMUTATION_CAP = 8

Permutation = tuple[int, ...]  # 0-based images: perm[j] is where j goes


class EnumerationCapError(ValueError):
    """An explicit permutation enumeration was asked for beyond the cap."""


class Partition(tuple):
    """Nonincreasing tuple of positive parts."""

    def __new__(cls, parts: Sequence[int] = ()):
        parts = tuple(sorted((int(p) for p in parts), reverse=True))
        if any(p <= 0 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        return super().__new__(cls, parts)

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def multiplicities(self) -> dict[int, int]:
        return dict(Counter(self))

    def conjugate(self) -> "Partition":
        if not self:
            return Partition()
        return Partition([sum(1 for p in self if p > i) for i in range(self[0])])

    def __repr__(self) -> str:
        return f"Partition({list(self)})"

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self)) + ")"


def partitions_of(k: int, max_part: int | None = None) -> Iterator[Partition]:
    """All partitions of ``k`` in reverse lexicographic order.

    >>> [tuple(p) for p in partitions_of(4)]
    [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    if max_part is None:
        max_part = k

    def rec(rest: int, cap: int, prefix: list[int]):
        if rest == 0:
            yield Partition(prefix)
            return
        for part in range(min(rest, cap), 0, -1):
            prefix.append(part)
            yield from rec(rest - part, part, prefix)
            prefix.pop()

    yield from rec(k, max_part, [])


def partition_sign(parts: Sequence[int]) -> int:
    """Sign of any permutation with these cycle lengths."""
    return -1 if sum(p - 1 for p in parts) % 2 else 1


def centralizer_size(parts: Sequence[int]) -> int:
    """prod_m m^{n_m} n_m!, the order of the centralizer of the class."""
    return prod(m ** c * factorial(c) for m, c in Counter(parts).items())


@dataclass(frozen=True)
class CycleType:
    partition: Partition

    @cached_property
    def multiplicities(self) -> dict[int, int]:
        return self.partition.multiplicities()

    @property
    def k(self) -> int:
        return self.partition.size

    @cached_property
    def class_size(self) -> int:
        return factorial(self.k) // centralizer_size(self.partition)

    @property
    def sign(self) -> int:
        return partition_sign(self.partition)

    @property
    def cycle_count(self) -> int:
        return len(self.partition)

    def n(self, m: int) -> int:
        """Number of cycles of length ``m``."""
        return self.multiplicities.get(m, 0)


def cycle_types_filtered(k: int, admissible: Callable[[int], bool] | None = None
                         ) -> Iterator[CycleType]:
    """Cycle types of S_k whose every cycle length satisfies ``admissible``."""
    for lam in partitions_of(k):
        if admissible is None or all(admissible(m) for m in set(lam)):
            yield CycleType(lam)


def admissible_S(r: int) -> Callable[[int], bool]:
    """Predicate for S(k, r): no cycle of even length <= r."""
    return lambda m: not (m % 2 == 0 and m <= r)


def admissible_T(r: int) -> Callable[[int], bool]:
    """Predicate for T(k, r) inside S_{kr}: every cycle length divisible by r."""
    return lambda m: m % r == 0


# explicit permutations (oracle scale only)

def cycles_of(perm: Sequence[int]) -> list[tuple[int, ...]]:
    """Disjoint cycles, each starting at its smallest point, sorted by that point."""
    seen = [False] * len(perm)
    out = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cyc = []
        j = start
        while not seen[j]:
            seen[j] = True
            cyc.append(j)
            j = perm[j]
        out.append(tuple(cyc))
    return out


def cycle_type_of(perm: Sequence[int]) -> Partition:
    return Partition(len(c) for c in cycles_of(perm))


def sign_of(perm: Sequence[int]) -> int:
    return partition_sign([len(c) for c in cycles_of(perm)])


def truncate_short_cycles(perm: Sequence[int], r: int) -> Permutation:
    """sigma_r: every cycle of length <= r becomes fixed points."""
    out = list(range(len(perm)))
    for cyc in cycles_of(perm):
        if len(cyc) > r:
            for a in cyc:
                out[a] = perm[a]
    return tuple(out)


def _check_cap(k: int, cap: int | None) -> None:
    cap = DEFAULT_PERMUTATION_CAP if cap is None else cap
    if k > cap:
        raise EnumerationCapError(
            f"explicit enumeration of S_{k} exceeds the cap k <= {cap}")


def permutations_of_class(cycle_type: CycleType | Sequence[int], k: int | None = None,
                          cap: int | None = None) -> Iterator[Permutation]:
    """Every permutation of the given cycle type, each exactly once."""
    lam = cycle_type.partition if isinstance(cycle_type, CycleType) else Partition(cycle_type)
    if k is None:
        k = lam.size
    if lam.size != k:
        raise ValueError(f"cycle type {lam} is not a type on {k} points")
    _check_cap(k, cap)
    lengths = Counter(lam)
    perm = [-1] * k

    def rec(free: list[int]):
        if not free:
            yield tuple(perm)
            return
        head, rest = free[0], free[1:]
        for m in sorted(lengths):
            if not lengths[m]:
                continue
            lengths[m] -= 1
            for tail in _arrangements(rest, m - 1):
                cyc = (head,) + tail
                for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                    perm[a] = b
                used = set(tail)
                yield from rec([p for p in rest if p not in used])
            lengths[m] += 1

    yield from rec(list(range(k)))


def _arrangements(pool: list[int], m: int) -> Iterator[tuple[int, ...]]:
    if m == 0:
        yield ()
        return
    for i, p in enumerate(pool):
        for tail in _arrangements(pool[:i] + pool[i + 1:], m - 1):
            yield (p,) + tail


def all_permutations(k: int, admissible: Callable[[int], bool] | None = None,
                     cap: int | None = None) -> Iterator[tuple[CycleType, Permutation]]:
    """Stream ``(type, permutation)`` over every admissible class of S_k."""
    _check_cap(k, cap)
    for ct in cycle_types_filtered(k, admissible):
        for perm in permutations_of_class(ct, k, cap):
            yield ct, perm


# multiset indices for the generalized-submatrix sums

@dataclass(frozen=True)
class MultisetIndex:
    counts: tuple[int, ...]
    index_map: tuple[int, ...] = field(init=False)
    multiplicity: int = field(init=False)

    def __post_init__(self):
        m = tuple(i for i, c in enumerate(self.counts) for _ in range(c))
        object.__setattr__(self, "index_map", m)
        mult = factorial(sum(self.counts)) // prod(factorial(c) for c in self.counts)
        object.__setattr__(self, "multiplicity", mult)

    @property
    def denominator(self) -> int:
        """N_1! ... N_n!"""
        return prod(factorial(c) for c in self.counts)


def multiset_indices(n: int, k: int) -> Iterator[MultisetIndex]:
    """Weak compositions of ``k`` into ``n`` parts, in colex order."""
    if n < 1 or k < 0:
        raise ValueError("need n >= 1 and k >= 0")

    def rec(i: int, rest: int) -> Iterator[tuple[int, ...]]:
        # colex: the last coordinate varies slowest
        if i == 0:
            yield (rest,)
            return
        for last in range(rest + 1):
            for head in rec(i - 1, rest - last):
                yield head + (last,)

    for counts in rec(n - 1, k):
        yield MultisetIndex(counts)
