"""Reduced matrix elements G_k of the creation operators on V(p).

``G(k, top, p)`` is the factor ``([mu]_{+k} || c^+ || [mu])`` that multiplies
the Clebsch-Gordan coefficient in every matrix element of ``c_j^+``.  The
three closed forms (k <= m even, k <= m odd, k > m) are coded factor by
factor; 0/0 factors are cancelled pairwise and recorded.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

from ._sqrtprod import SingularValue, SqrtProduct, cancellation_events, clear_cancellation_events
from .exactnum import ZERO, RadicalSum
from .gzbasis import valid_top_row

__all__ = [
    "SingularReducedElement",
    "E",
    "O",
    "G",
    "G_tilde",
    "cancellation_events",
    "clear_cancellation_events",
]


class SingularReducedElement(SingularValue):
    """A reduced matrix element has a zero denominator that does not cancel."""


def E(j: int) -> int:
    """1 if ``j`` is even, else 0."""
    return 1 if j % 2 == 0 else 0


def O(j: int) -> int:  # noqa: E741,E743
    """1 if ``j`` is odd, else 0."""
    return 1 - E(j)


def _G_fermion(k: int, mu: tuple[int, ...], m: int, n: int, p: int) -> SqrtProduct:
    f = SqrtProduct()
    a = mu[k - 1]
    M = lambda j: mu[j - 1]  # noqa: E731
    if k % 2 == 0:
        f.under(-1)  # leading minus under the root
        f.under(E(m) * (a + m - n - k) + 1)
        for j in range(1, m + 1):
            if j != k:
                f.under(a - M(j) - k + j)
        for j in range(1, m // 2 + 1):
            if j != k // 2:
                f.over(a - M(2 * j) - k + 2 * j, a - M(2 * j) - k + 2 * j + 1)
        parity = E
    else:
        f.under(p - a + k - 1)
        f.under(O(m) * (a + m - n - k) + 1)
        for j in range(1, m + 1):
            if j != k:
                f.under(a - M(j) - k + j)
        for j in range(1, (m + 1) // 2 + 1):
            if j != (k + 1) // 2:
                f.over(a - M(2 * j - 1) - k + 2 * j - 1, a - M(2 * j - 1) - k + 2 * j)
        parity = O
    for j in range(1, n + 1):
        b = M(m + j)
        top = a + b + m - j - k + 2
        f.ratio(top, top - parity(m + b))
    return f


def _G_boson(k: int, mu: tuple[int, ...], m: int, n: int, p: int) -> SqrtProduct:
    """G_{m+k}; ``k`` counts parabosons (1..n)."""
    f = SqrtProduct()
    M = lambda j: mu[j - 1]  # noqa: E731
    a = M(m + k)
    ev, od = E(m + a), O(m + a)
    f.flip(sum(mu[m + k:]))
    f.under(O(a) * (a - k + n) + 1, ev * (p + a + m - k) + 1)
    for j in range(1, m // 2 + 1):
        f.under(ev * (M(2 * j) + a - 2 * j - k + m + 1) + 1)
    for j in range(1, (m + 1) // 2 + 1):
        f.over(ev * (M(2 * j - 1) + a - 2 * j - k + m + 1) + 1)
    for j in range(1, (m + 1) // 2 + 1):
        f.under(od * (M(2 * j - 1) + a - 2 * j - k + m + 2) + 1)
    for j in range(1, m // 2 + 1):
        f.over(od * (M(2 * j) + a - 2 * j - k + m) + 1)
    for j in range(1, n + 1):
        if j != k:
            top = M(m + j) - a - j + k
            f.ratio(top, top - O(M(m + j) - a))
    return f


@lru_cache(maxsize=None)
def _G_cached(k: int, top: tuple[int, ...], m: int, p: int) -> RadicalSum:
    n = len(top) - m
    raised = list(top)
    raised[k - 1] += 1
    if not valid_top_row(raised, m) or not valid_top_row(top, m):
        return ZERO
    if k <= m:
        f = _G_fermion(k, top, m, n, p)
    else:
        f = _G_boson(k - m, top, m, n, p)
    return f.evaluate(SingularReducedElement, {"G": k, "top": top, "m": m, "p": p})


def G(k: int, top: Sequence[int], m: int, p: int) -> RadicalSum:
    """Reduced matrix element ``G_k(top)`` for gl(m|n) with ``n = len(top) - m``.

    Zero when the raised top row ``top + e_k`` is not an admissible top row.
    """
    top = tuple(int(x) for x in top)
    if not 1 <= k <= len(top):
        raise IndexError(f"k={k} out of range 1..{len(top)}")
    return _G_cached(k, top, m, p)


def G_tilde(k: int, top: Sequence[int], m: int, p: int) -> RadicalSum:
    """Phase-twisted reduced element: ``(-1)^level G_k`` for ``k <= m``."""
    value = G(k, top, m, p)
    if k <= m and sum(top) % 2:
        return -value
    return value
