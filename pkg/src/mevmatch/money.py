"""Exact arithmetic for auction amounts.

Greedy combinatorial payments have the form bid * sqrt(|B_i| / |B_j|), so
amounts are represented as rational linear combinations of square roots of
square-free integers.  That set is closed under addition, subtraction,
multiplication and division, and it admits a decidable total order, which
is what lets allocation revenues, Shapley values and redistribution shares
be compared exactly instead of within a float tolerance.

Equality is coefficient equality: square roots of distinct square-free
integers are linearly independent over the rationals, so two combinations
are equal iff their term maps match.  Ordering of distinct values is
decided by interval refinement: each sqrt(d) is bracketed via integer
square roots at increasing precision until the sign of the difference is
determined.  The loop terminates because the difference is nonzero.

Money objects are immutable; every operation returns a fresh value, so
instances can be shared freely across caches and threads.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from typing import Union

Rational = Union[int, Fraction]


@lru_cache(maxsize=None)
def _split_square(k: int) -> tuple[int, int]:
    """Decompose sqrt(k) as outer*sqrt(inner) with inner square-free."""
    outer, inner = 1, 1
    d = 2
    while d * d <= k:
        exp = 0
        while k % d == 0:
            k //= d
            exp += 1
        outer *= d ** (exp // 2)
        if exp % 2:
            inner *= d
        d += 1 if d == 2 else 2
    return outer, inner * k  # leftover k is prime or 1


@lru_cache(maxsize=None)
def _prime_factors(d: int) -> tuple[int, ...]:
    """Prime factors of a square-free integer d >= 1."""
    primes = []
    p = 2
    while p * p <= d:
        if d % p == 0:
            primes.append(p)
            d //= p
        p += 1 if p == 2 else 2
    if d > 1:
        primes.append(d)
    return tuple(primes)


class Money:
    """An exact amount; see the module docstring for the representation.

    The term map sends each square-free radicand d to a nonzero rational
    coefficient; the rational part lives at radicand 1.  An empty map is
    zero.  Construct from int, Fraction, a numeric string ("10", "0.25",
    "8/3"), or another Money.  Floats are rejected: they carry binary
    rounding that would silently break exactness.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, value: Union[int, str, Fraction, "Money"] = 0):
        if isinstance(value, Money):
            terms = value._terms
        elif isinstance(value, (int, Fraction)):
            f = Fraction(value)
            terms = {1: f} if f else {}
        elif isinstance(value, str):
            f = Fraction(value)
            terms = {1: f} if f else {}
        else:
            raise TypeError(
                f"exact amounts only; got {type(value).__name__} (pass str or Fraction)"
            )
        self._terms = terms
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[int, Fraction]) -> "Money":
        m = object.__new__(cls)
        m._terms = terms
        m._hash = None
        return m

    @classmethod
    def sqrt(cls, k: int) -> "Money":
        """Exact square root of a nonnegative integer."""
        if k < 0:
            raise ValueError("square root of a negative amount")
        if k == 0:
            return _ZERO
        outer, inner = _split_square(k)
        return cls._raw({inner: Fraction(outer)})

    # -- predicates ---------------------------------------------------

    @property
    def is_rational(self) -> bool:
        t = self._terms
        return not t or (len(t) == 1 and 1 in t)

    def as_fraction(self) -> Fraction:
        if not self._terms:
            return Fraction(0)
        if self.is_rational:
            return self._terms[1]
        raise ValueError(f"{self} is not rational")

    def __bool__(self) -> bool:
        return bool(self._terms)

    # -- arithmetic ---------------------------------------------------

    @staticmethod
    def _coerce(value):
        if isinstance(value, Money):
            return value
        if isinstance(value, (int, Fraction)):
            return Money(value)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self._terms, o._terms
        if not a:
            return o
        if not b:
            return self
        terms = dict(a)
        for d, c in b.items():
            s = terms.get(d)
            if s is None:
                terms[d] = c
            else:
                s = s + c
                if s:
                    terms[d] = s
                else:
                    del terms[d]
        return Money._raw(terms)

    __radd__ = __add__

    def __neg__(self):
        return Money._raw({d: -c for d, c in self._terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return _ZERO
            return Money._raw({d: c * other for d, c in self._terms.items()})
        if not isinstance(other, Money):
            return NotImplemented
        terms: dict[int, Fraction] = {}
        for d1, c1 in self._terms.items():
            for d2, c2 in other._terms.items():
                # square-free * square-free: the shared part is exactly gcd^2
                g = gcd(d1, d2)
                d = (d1 // g) * (d2 // g)
                c = c1 * c2 * g
                s = terms.get(d)
                if s is None:
                    terms[d] = c
                else:
                    s = s + c
                    if s:
                        terms[d] = s
                    else:
                        del terms[d]
        return Money._raw(terms)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("money division by zero")
            return Money._raw({d: c / other for d, c in self._terms.items()})
        if not isinstance(other, Money):
            return NotImplemented
        if not other._terms:
            raise ZeroDivisionError("money division by zero")
        if other.is_rational:
            return self / other.as_fraction()
        return self * other._inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def _inverse(self) -> "Money":
        # Multiply by every nontrivial conjugate (sign flips on sqrt(p) per
        # prime subset); the full product self * acc is invariant under all
        # flips, hence rational, and the inverse is acc / that rational.
        primes = sorted({p for d in self._terms if d != 1 for p in _prime_factors(d)})
        if len(primes) > 16:
            raise ValueError("too many distinct radicand primes to invert")
        acc = Money(1)
        for bits in range(1, 1 << len(primes)):
            flips = frozenset(p for i, p in enumerate(primes) if bits >> i & 1)
            conj = {}
            for d, c in self._terms.items():
                odd = sum(1 for p in _prime_factors(d) if p in flips) % 2
                conj[d] = -c if odd else c
            acc = acc * Money._raw(conj)
        norm = self * acc
        return acc / norm.as_fraction()

    def __abs__(self):
        return -self if self._sign() < 0 else self

    # -- ordering -----------------------------------------------------

    def _sign(self) -> int:
        t = self._terms
        if not t:
            return 0
        # sqrt(d) > 0 for every radicand, so uniform coefficient signs decide
        if all(c > 0 for c in t.values()):
            return 1
        if all(c < 0 for c in t.values()):
            return -1
        prec = 32
        while True:
            approx = Fraction(0)
            slack = Fraction(0)
            unit = Fraction(1, 1 << prec)
            for d, c in t.items():
                if d == 1:
                    approx += c
                else:
                    approx += c * Fraction(isqrt(d << (2 * prec)), 1 << prec)
                    slack += abs(c) * unit
            if approx > slack:
                return 1
            if approx < -slack:
                return -1
            prec *= 2

    def _cmp(self, other) -> int:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self._terms == o._terms:
            return 0
        return (self - o)._sign()

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._terms == o._terms

    def __lt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c >= 0

    def __hash__(self):
        h = self._hash
        if h is None:
            if self.is_rational:
                h = hash(self.as_fraction())  # consistent with int/Fraction
            else:
                h = hash(tuple(sorted(self._terms.items())))
            self._hash = h
        return h

    # -- conversion ---------------------------------------------------

    def __float__(self) -> float:
        total = Fraction(0)
        prec = 96  # comfortably past the double mantissa
        for d, c in self._terms.items():
            if d == 1:
                total += c
            else:
                total += c * Fraction(isqrt(d << (2 * prec)), 1 << prec)
        return float(total)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for d in sorted(self._terms):
            c = self._terms[d]
            if d == 1:
                body = str(c)
            elif c == 1:
                body = f"sqrt({d})"
            elif c == -1:
                body = f"-sqrt({d})"
            else:
                body = f"{c}*sqrt({d})"
            parts.append(body)
        out = parts[0]
        for body in parts[1:]:
            if body.startswith("-"):
                out += " - " + body[1:]
            else:
                out += " + " + body
        return out

    def __repr__(self) -> str:
        return f"Money({self})"


_ZERO = Money(0)

ZERO = _ZERO
ONE = Money(1)
