"""Signed square roots of products of integer factors.

Closed-form coefficients are built as ``sign * sqrt(prod(num) / prod(den))``
from integer linear factors.  Zero factors are cancelled pairwise (one in the
numerator against one in the denominator) before anything is multiplied; the
cancellations are recorded so callers can audit them.
"""

from __future__ import annotations

import logging
import threading
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from .exactnum import NegativeRadicand, RadicalSum, ZERO

logger = logging.getLogger("parastat")

_events: deque = deque(maxlen=100_000)
_events_lock = threading.Lock()


def record_cancellation(event: dict) -> None:
    with _events_lock:
        _events.append(event)
    logger.debug("0/0 factor cancellation: %s", event)


def cancellation_events() -> list[dict]:
    with _events_lock:
        return list(_events)


def clear_cancellation_events() -> None:
    with _events_lock:
        _events.clear()


class SingularValue(ZeroDivisionError):
    """A zero factor is left over in a denominator."""

    def __init__(self, message: str, context: dict | None = None):
        super().__init__(message)
        self.context = context or {}


@dataclass
class SqrtProduct:
    sign: int = 1
    num: list[int] = field(default_factory=list)
    den: list[int] = field(default_factory=list)

    def under(self, *factors: int) -> "SqrtProduct":
        self.num.extend(factors)
        return self

    def over(self, *factors: int) -> "SqrtProduct":
        self.den.extend(factors)
        return self

    def ratio(self, a: int, b: int) -> "SqrtProduct":
        self.num.append(a)
        self.den.append(b)
        return self

    def abs_ratio(self, a: int, b: int) -> "SqrtProduct":
        self.num.append(abs(a))
        self.den.append(abs(b))
        return self

    def outside(self, a: int, b: int = 1) -> "SqrtProduct":
        """Multiply by the rational ``a/b`` outside the square root."""
        if a < 0:
            self.sign = -self.sign
        if b < 0:
            self.sign = -self.sign
        self.num.extend((abs(a), abs(a)))
        self.den.extend((abs(b), abs(b)))
        return self

    def flip(self, exponent: int = 1) -> "SqrtProduct":
        if exponent % 2:
            self.sign = -self.sign
        return self

    def evaluate(self, error=SingularValue, context: dict | None = None) -> RadicalSum:
        zn = self.num.count(0)
        zd = self.den.count(0)
        if zn and zd:
            record_cancellation({"pairs": min(zn, zd), **(context or {})})
        if zd > zn:
            raise error(f"zero denominator after cancellation ({context})", context)
        if zn > zd:
            return ZERO
        value = Fraction(1)
        for a in self.num:
            if a:
                value *= a
        for b in self.den:
            if b:
                value /= b
        if value < 0:
            raise NegativeRadicand(f"negative quantity {value} under square root ({context})")
        out = RadicalSum.sqrt(value)
        return -out if self.sign < 0 else out
