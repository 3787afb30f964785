"""Exact scalars, sparse multivariate polynomials and truncated power series.

Scalars are :class:`fractions.Fraction`.  Polynomials are immutable maps from
exponent tuples to nonzero rationals; series carry their truncation order.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Iterator, Mapping, Sequence, Union

log = logging.getLogger(__name__)

Rat = Fraction
Exponent = tuple[int, ...]


class InexactDivisionError(ArithmeticError):
    """Raised when a polynomial division leaves a nonzero remainder."""

    def __init__(self, remainder: "MPoly"):
        super().__init__(f"inexact division, remainder {remainder}")
        self.remainder = remainder


class RingMismatchError(TypeError):
    pass


def as_rat(value) -> Fraction:
    """Coerce ints, Fractions and decimal strings like ``"7/40"`` to Fraction.

    Floats are read through their shortest repr so ``0.1`` becomes ``1/10``.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(repr(value))
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as a rational")


def _add_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(i + j for i, j in zip(a, b))


def _grlex_key(e: Exponent):
    return (sum(e), e)


class MPoly:
    """Sparse polynomial over the rationals in ``nvars`` named variables.

    ``var`` only affects rendering: variable ``i`` (0-based) prints as
    ``f"{var}{i + 1}"``.
    """

    __slots__ = ("nvars", "terms", "var", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Exponent, object] | None = None,
                 var: str = "x"):
        if nvars < 0:
            raise ValueError("nvars must be nonnegative")
        clean: dict[Exponent, Fraction] = {}
        for exp, c in (terms or {}).items():
            exp = tuple(exp)
            if len(exp) != nvars or any(e < 0 for e in exp):
                raise ValueError(f"bad exponent {exp} for {nvars} variables")
            c = as_rat(c)
            if c:
                clean[exp] = clean.get(exp, Fraction(0)) + c
                if not clean[exp]:
                    del clean[exp]
        self.nvars = nvars
        self.terms = clean
        self.var = var
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: dict, var: str) -> "MPoly":
        # trusted constructor: terms already clean
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj.terms = terms
        obj.var = var
        obj._hash = None
        return obj

    # constructors

    @classmethod
    def zero(cls, nvars: int, var: str = "x") -> "MPoly":
        return cls._raw(nvars, {}, var)

    @classmethod
    def constant(cls, c, nvars: int, var: str = "x") -> "MPoly":
        c = as_rat(c)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {}, var)

    @classmethod
    def gen(cls, i: int, nvars: int, var: str = "x") -> "MPoly":
        """The variable with 0-based index ``i``."""
        if not 0 <= i < nvars:
            raise IndexError(f"variable index {i} out of range for {nvars} variables")
        e = [0] * nvars
        e[i] = 1
        return cls._raw(nvars, {tuple(e): Fraction(1)}, var)

    @classmethod
    def monomial(cls, exp: Sequence[int], coeff=1, var: str = "x") -> "MPoly":
        return cls(len(exp), {tuple(exp): coeff}, var)

    # basic protocol

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[tuple[Exponent, Fraction]]:
        return iter(sorted(self.terms.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True))

    def coeff(self, exp: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exp), Fraction(0))

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def weighted_degrees(self, weights: Sequence[int]) -> set[int]:
        return {sum(w * e for w, e in zip(weights, exp)) for exp in self.terms}

    def is_homogeneous(self, weights: Sequence[int] | None = None) -> bool:
        w = weights if weights is not None else [1] * self.nvars
        return len(self.weighted_degrees(w)) <= 1

    def leading(self) -> tuple[Exponent, Fraction]:
        """Leading term in graded lexicographic order."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        exp = max(self.terms, key=_grlex_key)
        return exp, self.terms[exp]

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def __eq__(self, other) -> bool:
        if isinstance(other, MPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == MPoly.constant(other, self.nvars, self.var)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"MPoly({self.nvars}, {self})"

    def __str__(self) -> str:
        return render(self)

    # arithmetic

    def _coerce(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            if other.nvars != self.nvars:
                raise RingMismatchError(
                    f"polynomials in {self.nvars} and {other.nvars} variables")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return MPoly.constant(other, self.nvars, self.var)
        return NotImplemented

    def __add__(self, other) -> "MPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self.terms)
        for exp, c in other.terms.items():
            s = terms.get(exp, 0) + c
            if s:
                terms[exp] = s
            else:
                terms.pop(exp, None)
        return MPoly._raw(self.nvars, terms, self.var)

    __radd__ = __add__

    def __neg__(self) -> "MPoly":
        return MPoly._raw(self.nvars, {e: -c for e, c in self.terms.items()}, self.var)

    def __sub__(self, other) -> "MPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "MPoly":
        return (-self) + other

    def scale(self, c) -> "MPoly":
        c = as_rat(c)
        if not c:
            return MPoly.zero(self.nvars, self.var)
        return MPoly._raw(self.nvars, {e: v * c for e, v in self.terms.items()}, self.var)

    def __mul__(self, other) -> "MPoly":
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out: dict[Exponent, Fraction] = {}
        get = out.get
        for eb, cb in b.items():
            for ea, ca in a.items():
                e = tuple(i + j for i, j in zip(ea, eb))
                out[e] = get(e, 0) + ca * cb
        return MPoly._raw(self.nvars, {e: c for e, c in out.items() if c}, self.var)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "MPoly":
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(Fraction(1) / as_rat(other))
        if isinstance(other, MPoly):
            return divide_exact(self, other)
        return NotImplemented

    def __pow__(self, k: int) -> "MPoly":
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = MPoly.constant(1, self.nvars, self.var)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # evaluation and substitution

    def __call__(self, *values):
        return self.evaluate(values)

    def evaluate(self, values: Sequence):
        """Evaluate at a point; exact when ``values`` are rationals."""
        if len(values) != self.nvars:
            raise ValueError(f"expected {self.nvars} values, got {len(values)}")
        maxdeg = [0] * self.nvars
        for exp in self.terms:
            for i, e in enumerate(exp):
                if e > maxdeg[i]:
                    maxdeg[i] = e
        powers = []
        for v, d in zip(values, maxdeg):
            row = [1]
            for _ in range(d):
                row.append(row[-1] * v)
            powers.append(row)
        total = 0
        for exp, c in self.terms.items():
            term = c
            for i, e in enumerate(exp):
                if e:
                    term = term * powers[i][e]
            total = total + term
        return total

    def compose(self, images: Sequence["MPoly"]) -> "MPoly":
        """Substitute ``images[i]`` for variable ``i``."""
        if len(images) != self.nvars:
            raise ValueError(f"need {self.nvars} images, got {len(images)}")
        if not images:
            return self
        target = images[0]
        cache: dict[tuple[int, int], MPoly] = {}

        def power(i: int, e: int) -> MPoly:
            if (i, e) not in cache:
                cache[(i, e)] = images[i] ** e
            return cache[(i, e)]

        result = MPoly.zero(target.nvars, target.var)
        for exp, c in self.terms.items():
            term = MPoly.constant(c, target.nvars, target.var)
            for i, e in enumerate(exp):
                if e:
                    term = term * power(i, e)
            result = result + term
        return result

    def relabel(self, var: str) -> "MPoly":
        return MPoly._raw(self.nvars, self.terms, var)

    def embed(self, nvars: int) -> "MPoly":
        """Same polynomial viewed in a ring with ``nvars >= self.nvars`` variables."""
        if nvars < self.nvars:
            if any(any(e[nvars:]) for e in self.terms):
                raise ValueError("polynomial uses variables beyond the target ring")
            return MPoly._raw(nvars, {e[:nvars]: c for e, c in self.terms.items()}, self.var)
        pad = (0,) * (nvars - self.nvars)
        return MPoly._raw(nvars, {e + pad: c for e, c in self.terms.items()}, self.var)

    def permute_variables(self, perm: Sequence[int]) -> "MPoly":
        """Rename variable ``i`` to ``perm[i]``."""
        out = {}
        for exp, c in self.terms.items():
            e = [0] * self.nvars
            for i, v in enumerate(exp):
                e[perm[i]] = v
            out[tuple(e)] = c
        return MPoly._raw(self.nvars, out, self.var)


def render(f: MPoly) -> str:
    """Canonical text form: graded-lex descending, rationals as ``p/q``."""
    if not f.terms:
        return "0"
    parts = []
    for exp, c in f:
        mono = "*".join(
            f"{f.var}{i + 1}" + (f"^{e}" if e > 1 else "")
            for i, e in enumerate(exp) if e)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts)


def mpoly_partial(f: MPoly, i: int) -> MPoly:
    """Formal partial derivative with respect to variable ``i`` (0-based)."""
    if not 0 <= i < f.nvars:
        raise IndexError(f"variable index {i} out of range for {f.nvars} variables")
    out = {}
    for exp, c in f.terms.items():
        e = exp[i]
        if e:
            new = exp[:i] + (e - 1,) + exp[i + 1:]
            out[new] = c * e
    return MPoly._raw(f.nvars, out, f.var)


def mpoly_is_coefficientwise_nonneg(f: MPoly):
    """Return ``(True, None)`` or ``(False, (exponent, coefficient))``."""
    for exp, c in f:
        if c < 0:
            return False, (exp, c)
    return True, None


def divide_exact(f: MPoly, g: MPoly) -> MPoly:
    """Quotient ``q`` with ``q * g == f``; raises :class:`InexactDivisionError`."""
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if f.nvars != g.nvars:
        raise RingMismatchError("polynomials in different rings")
    g_exp, g_c = g.leading()
    rem = f
    quot: dict[Exponent, Fraction] = {}
    while rem.terms:
        r_exp, r_c = rem.leading()
        diff = tuple(a - b for a, b in zip(r_exp, g_exp))
        if any(d < 0 for d in diff):
            raise InexactDivisionError(rem)
        c = r_c / g_c
        quot[diff] = c
        rem = rem - g * MPoly._raw(f.nvars, {diff: c}, f.var)
    return MPoly._raw(f.nvars, quot, f.var)


mpoly_divide_exact = divide_exact


# ---------------------------------------------------------------------------
# truncated power series

Coeff = Union[Fraction, MPoly]


def _ring_of(c) -> tuple | None:
    if isinstance(c, MPoly):
        return (c.nvars, c.var)
    return None


class TSeries:
    """Power series in ``t`` known modulo ``t**(order + 1)``.

    Coefficients are either all rationals or all :class:`MPoly` in one ring.
    """

    __slots__ = ("order", "coeffs", "ring")

    def __init__(self, coeffs: Iterable, order: int | None = None, ring: tuple | None = None):
        cs = list(coeffs)
        if ring is None:
            rings = {_ring_of(c) for c in cs if isinstance(c, MPoly)}
            if len(rings) > 1:
                raise RingMismatchError(f"mixed coefficient rings {rings}")
            ring = rings.pop() if rings else None
        if order is None:
            order = len(cs) - 1
        if order < 0:
            raise ValueError("order must be nonnegative")
        cs = cs[:order + 1]
        cs += [0] * (order + 1 - len(cs))
        self.ring = ring
        self.order = order
        self.coeffs = tuple(self._lift(c) for c in cs)

    def _lift(self, c):
        if self.ring is None:
            if isinstance(c, MPoly):
                raise RingMismatchError("polynomial coefficient in a rational series")
            return as_rat(c)
        nvars, var = self.ring
        if isinstance(c, MPoly):
            if c.nvars != nvars:
                raise RingMismatchError(
                    f"coefficient in {c.nvars} variables, series ring has {nvars}")
            return c
        return MPoly.constant(c, nvars, var)

    @classmethod
    def one(cls, order: int, ring: tuple | None = None) -> "TSeries":
        return cls([1], order, ring)

    @classmethod
    def from_poly_in_t(cls, coeffs: Sequence, order: int, ring: tuple | None = None) -> "TSeries":
        return cls(list(coeffs)[:order + 1], order, ring)

    def __getitem__(self, k: int):
        return self.coeffs[k]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TSeries):
            return NotImplemented
        return (self.order == other.order and self.ring == other.ring
                and self.coeffs == other.coeffs)

    def __repr__(self) -> str:
        body = " + ".join(f"({c})*t^{k}" for k, c in enumerate(self.coeffs) if c)
        return f"TSeries[{body or '0'} + O(t^{self.order + 1})]"

    def _zero(self):
        if self.ring is None:
            return Fraction(0)
        return MPoly.zero(*self.ring)

    def _check(self, other: "TSeries") -> int:
        if self.ring != other.ring:
            raise RingMismatchError(f"series over {self.ring} and {other.ring}")
        if self.order != other.order:
            log.debug("truncating series order %d/%d to %d",
                      self.order, other.order, min(self.order, other.order))
        return min(self.order, other.order)

    def truncate(self, order: int) -> "TSeries":
        return TSeries(self.coeffs[:order + 1], min(order, self.order), self.ring)

    def __add__(self, other: "TSeries") -> "TSeries":
        K = self._check(other)
        return TSeries([a + b for a, b in zip(self.coeffs[:K + 1], other.coeffs)], K, self.ring)

    def __sub__(self, other: "TSeries") -> "TSeries":
        K = self._check(other)
        return TSeries([a - b for a, b in zip(self.coeffs[:K + 1], other.coeffs)], K, self.ring)

    def __neg__(self) -> "TSeries":
        return TSeries([-c for c in self.coeffs], self.order, self.ring)

    def scale(self, c) -> "TSeries":
        return TSeries([a * c for a in self.coeffs], self.order, self.ring)

    def __mul__(self, other):
        if isinstance(other, TSeries):
            return series_mul(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def map(self, fn) -> "TSeries":
        return TSeries([fn(c) for c in self.coeffs], self.order, self.ring)

    def derivative(self) -> "TSeries":
        """d/dt; the result is known to one order less."""
        K = max(self.order - 1, 0)
        cs = [self.coeffs[k + 1] * (k + 1) for k in range(self.order)]
        return TSeries(cs or [0], K, self.ring)


def series_mul(a: TSeries, b: TSeries) -> TSeries:
    """Cauchy product truncated at the common order."""
    K = a._check(b)
    zero = a._zero()
    out = []
    for k in range(K + 1):
        s = zero
        for j in range(k + 1):
            x, y = a.coeffs[j], b.coeffs[k - j]
            if x and y:
                s = s + x * y
        out.append(s)
    return TSeries(out, K, a.ring)


def series_exp(a: TSeries) -> TSeries:
    """exp of a series with zero constant term, via ``n E_n = sum j a_j E_{n-j}``."""
    if a.coeffs[0]:
        raise ValueError("series_exp needs a zero constant term")
    K = a.order
    zero = a._zero()
    E = [a._lift(1)]
    weighted = [a.coeffs[j] * j for j in range(K + 1)]
    for n in range(1, K + 1):
        s = zero
        for j in range(1, n + 1):
            if weighted[j] and E[n - j]:
                s = s + weighted[j] * E[n - j]
        E.append(s * Fraction(1, n))
    return TSeries(E, K, a.ring)


def series_log(a: TSeries) -> TSeries:
    """log of a series with constant term 1, via ``L' = a'/a``."""
    if a.coeffs[0] != a._lift(1):
        raise ValueError("series_log needs constant term 1")
    K = a.order
    zero = a._zero()
    L = [zero]
    for n in range(1, K + 1):
        s = a.coeffs[n] * n
        for j in range(1, n):
            if L[j] and a.coeffs[n - j]:
                s = s - L[j] * j * a.coeffs[n - j]
        L.append(s * Fraction(1, n))
    return TSeries(L, K, a.ring)
