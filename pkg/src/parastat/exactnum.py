"""Exact arithmetic on rational linear combinations of square roots.

Every number is ``sum_d c_d * sqrt(d)`` with ``d`` square-free and ``c_d`` a
nonzero rational.  The representation is canonical, so equality (and in
particular zero-testing) is a plain comparison of integers.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational as _RationalABC
from typing import Iterable, Mapping

__all__ = [
    "Rational",
    "Radical",
    "RadicalSum",
    "NegativeRadicand",
    "FactorizationLimit",
    "squarefree_decompose",
    "sqrt_normalize",
    "add",
    "mul",
    "to_float",
    "ZERO",
    "ONE",
]

# Rationals are plain fractions.Fraction (always reduced, positive denominator).
Rational = Fraction

TRIAL_DIVISION_BOUND = 10**6


class NegativeRadicand(ValueError):
    """A square root of a negative rational was requested."""


class FactorizationLimit(ArithmeticError):
    """Square-free decomposition needs a prime factor beyond the trial bound."""


@lru_cache(maxsize=65536)
def _squarefree_cached(n: int, bound: int) -> tuple[int, int]:
    square, free = 1, 1
    rest = n
    d = 2
    while d * d <= rest:
        if d > bound:
            raise FactorizationLimit(
                f"cannot factor {n}: cofactor {rest} has no prime factor <= {bound}"
            )
        if rest % d == 0:
            e = 0
            while rest % d == 0:
                rest //= d
                e += 1
            square *= d ** (e // 2)
            if e % 2:
                free *= d
        d += 1 if d == 2 else 2
    # what is left is 1 or a prime
    free *= rest
    return square, free


def squarefree_decompose(n: int, bound: int = TRIAL_DIVISION_BOUND) -> tuple[int, int]:
    """Return ``(s, d)`` with ``n == s*s*d`` and ``d`` square-free (``n >= 1``)."""
    if n < 1:
        raise ValueError(f"expected a positive integer, got {n}")
    return _squarefree_cached(int(n), bound)


@dataclass(frozen=True)
class Radical:
    """A single term ``coefficient * sqrt(radicand)``."""

    coefficient: Fraction
    radicand: int = 1

    def __post_init__(self):
        object.__setattr__(self, "coefficient", Fraction(self.coefficient))
        if self.radicand < 1 or squarefree_decompose(self.radicand)[0] != 1:
            raise ValueError(f"radicand {self.radicand} is not square-free")

    def to_sum(self) -> "RadicalSum":
        return RadicalSum({self.radicand: self.coefficient})


def sqrt_normalize(q, bound: int = TRIAL_DIVISION_BOUND) -> Radical:
    """Write ``sqrt(q)`` for rational ``q >= 0`` as ``c*sqrt(d)``.

    >>> sqrt_normalize(8)
    Radical(coefficient=Fraction(2, 1), radicand=2)
    """
    q = Fraction(q)
    if q < 0:
        raise NegativeRadicand(f"square root of negative number {q}")
    if q == 0:
        return Radical(Fraction(0), 1)
    # sqrt(a/b) = sqrt(a*b)/b
    s, d = squarefree_decompose(q.numerator * q.denominator, bound)
    return Radical(Fraction(s, q.denominator), d)


class RadicalSum:
    """Immutable exact number ``sum_d c_d sqrt(d)`` in canonical form.

    Internally the coefficients share one positive denominator: ``_num``
    maps radicands to nonzero integers and ``gcd(den, *nums) == 1``, so the
    pair is unique and arithmetic stays in machine-friendly integers.
    """

    __slots__ = ("_num", "_den", "_hash")

    def __init__(self, terms: Mapping[int, object] | None = None):
        clean: dict[int, Fraction] = {}
        if terms:
            for d, c in terms.items():
                c = Fraction(c)
                if c == 0:
                    continue
                if d != 1:
                    s, d = squarefree_decompose(d)
                    c *= s
                clean[d] = clean.get(d, 0) + c
        den = 1
        for c in clean.values():
            den = den * c.denominator // math.gcd(den, c.denominator)
        self._num = {d: int(c * den) for d, c in clean.items() if c}
        self._den = den if self._num else 1
        self._hash = None

    @classmethod
    def _make(cls, num: dict[int, int], den: int) -> "RadicalSum":
        # trusted constructor: keys square-free, values nonzero ints, den > 0
        if num:
            g = math.gcd(den, *num.values())
            if g != 1:
                num = {d: v // g for d, v in num.items()}
                den //= g
        else:
            den = 1
        obj = cls.__new__(cls)
        obj._num = num
        obj._den = den
        obj._hash = None
        return obj

    @classmethod
    def rational(cls, q) -> "RadicalSum":
        q = Fraction(q)
        return cls._make({1: q.numerator} if q else {}, q.denominator)

    @classmethod
    def sqrt(cls, q) -> "RadicalSum":
        """``sqrt(q)`` for a nonnegative rational ``q``."""
        r = sqrt_normalize(q)
        c = r.coefficient
        return cls._make({r.radicand: c.numerator} if c else {}, c.denominator)

    @classmethod
    def coerce(cls, x) -> "RadicalSum":
        if isinstance(x, RadicalSum):
            return x
        if isinstance(x, int):
            return cls._make({1: x} if x else {}, 1)
        if isinstance(x, Radical):
            return x.to_sum()
        if isinstance(x, _RationalABC):
            return cls.rational(x)
        raise TypeError(f"cannot convert {type(x).__name__} to RadicalSum")

    @property
    def terms(self) -> dict[int, Fraction]:
        return {d: Fraction(v, self._den) for d, v in self._num.items()}

    def items(self):
        return sorted(self.terms.items())

    def is_zero(self) -> bool:
        return not self._num

    def is_rational(self) -> bool:
        return not self._num or set(self._num) == {1}

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self._num.get(1, 0), self._den)

    def as_radical(self) -> Radical:
        """The value as a single term; raises if there are two or more."""
        if not self._num:
            return Radical(Fraction(0), 1)
        if len(self._num) > 1:
            raise ValueError(f"{self} is not a single radical")
        (d, v), = self._num.items()
        return Radical(Fraction(v, self._den), d)

    def __bool__(self):
        return bool(self._num)

    def __eq__(self, other):
        try:
            other = RadicalSum.coerce(other)
        except TypeError:
            return NotImplemented
        return self._den == other._den and self._num == other._num

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._den, frozenset(self._num.items())))
        return self._hash

    def __neg__(self):
        obj = RadicalSum.__new__(RadicalSum)
        obj._num = {d: -v for d, v in self._num.items()}
        obj._den = self._den
        obj._hash = None
        return obj

    def __add__(self, other):
        try:
            other = RadicalSum.coerce(other)
        except TypeError:
            return NotImplemented
        if not other._num:
            return self
        if not self._num:
            return other
        d1, d2 = self._den, other._den
        if d1 == d2:
            out = dict(self._num)
            f2 = 1
            den = d1
        else:
            g = math.gcd(d1, d2)
            f1, f2 = d2 // g, d1 // g
            den = d1 * f1
            out = {d: v * f1 for d, v in self._num.items()}
        for d, v in other._num.items():
            w = out.get(d, 0) + v * f2
            if w:
                out[d] = w
            else:
                out.pop(d, None)
        return RadicalSum._make(out, den)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            other = RadicalSum.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return RadicalSum.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return ZERO
            q = Fraction(other)
            return RadicalSum._make({d: v * q.numerator for d, v in self._num.items()},
                                    self._den * q.denominator)
        try:
            other = RadicalSum.coerce(other)
        except TypeError:
            return NotImplemented
        out: dict[int, int] = {}
        for d1, c1 in self._num.items():
            for d2, c2 in other._num.items():
                if d1 == 1:
                    d, c = d2, c1 * c2
                elif d2 == 1:
                    d, c = d1, c1 * c2
                elif d1 == d2:
                    d, c = 1, c1 * c2 * d1
                else:
                    g = math.gcd(d1, d2)
                    # d1*d2 = g^2 * (d1/g)*(d2/g), the cofactor is square-free
                    d, c = (d1 // g) * (d2 // g), c1 * c2 * g
                v = out.get(d, 0) + c
                if v:
                    out[d] = v
                else:
                    out.pop(d, None)
        return RadicalSum._make(out, self._den * other._den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        other = RadicalSum.coerce(other)
        if len(other._num) != 1:
            raise ZeroDivisionError("division only by a nonzero single radical")
        (d, v), = other._num.items()
        # 1/(c sqrt d) = sqrt(d)/(c d) with c = v/den
        q = Fraction(other._den, v * d)
        return self * RadicalSum._make({d: q.numerator}, q.denominator)

    def square(self) -> "RadicalSum":
        return self * self

    def __float__(self):
        return to_float(self)

    def __repr__(self):
        return f"RadicalSum({self.items()!r})"

    def __str__(self):
        if not self._num:
            return "0"
        parts = []
        for d, c in self.items():
            sign = "-" if c < 0 else "+"
            a = abs(c)
            mag = str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
            if d != 1:
                mag = f"√{d}" if a == 1 else f"{mag}√{d}"
            parts.append((sign, mag))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, mag in parts[1:]:
            s += f" {sign} {mag}"
        return s

    def to_json_obj(self) -> dict:
        return {
            "terms": [
                {"num": c.numerator, "den": c.denominator, "radicand": d}
                for d, c in self.items()
            ]
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    @classmethod
    def from_json_obj(cls, obj: dict) -> "RadicalSum":
        return cls({t["radicand"]: Fraction(t["num"], t["den"]) for t in obj["terms"]})

    @classmethod
    def from_json(cls, text: str) -> "RadicalSum":
        return cls.from_json_obj(json.loads(text))


ZERO = RadicalSum._make({}, 1)
ONE = RadicalSum._make({1: 1}, 1)


def add(a: RadicalSum, b: RadicalSum) -> RadicalSum:
    return RadicalSum.coerce(a) + RadicalSum.coerce(b)


def mul(a: RadicalSum, b: RadicalSum) -> RadicalSum:
    return RadicalSum.coerce(a) * RadicalSum.coerce(b)


def to_float(a: RadicalSum) -> float:
    """Double-precision value, for display only."""
    return float(sum(float(c) * math.sqrt(d) for d, c in RadicalSum.coerce(a).items()))


def radical_sum(values: Iterable[RadicalSum]) -> RadicalSum:
    total = ZERO
    for v in values:
        total = total + v
    return total
