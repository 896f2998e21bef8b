"""Clebsch-Gordan coefficients for (1,0,...,0) x covariant gl(m|n) modules.

A CGC is a product of one isoscalar factor per pattern row.  Rows ``t > m``
use the six gl(m|t-m) > gl(m|t-m-1) factors, rows ``t <= m`` the two
gl(t) > gl(t-1) factors.  Every factor is evaluated exactly from the label
coordinates ``l_{is}`` of the *source* pattern.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from ._sqrtprod import SingularValue, SqrtProduct
from .exactnum import ONE, ZERO, RadicalSum
from .gzbasis import GZPattern, Signature, is_valid

__all__ = [
    "SingularCoefficient",
    "Transition",
    "l_coord",
    "S",
    "iso_super",
    "iso_classical",
    "cgc",
    "cgc_factors",
    "raising_transitions",
    "transition_between",
]


class SingularCoefficient(SingularValue):
    """An isoscalar factor has a zero denominator that does not cancel."""


def l_coord(pattern: GZPattern, i: int, s: int) -> int:
    m = pattern.m
    if i <= m:
        return pattern.mu(i, s) - i + m + 1
    return -pattern.mu(i, s) + i - m


def S(k: int, q: int) -> int:
    return 1 if k <= q else -1


def _theta_sum(pattern: GZPattern, lo: int, hi: int, s: int) -> int:
    return sum(pattern.theta(i, s) for i in range(lo, hi + 1))


def iso_super(case: str, k: int, q: int | None, t: int, mu: GZPattern) -> RadicalSum:
    """gl(m|t-m) > gl(m|t-m-1) isoscalar factor.

    ``case`` names the kind of label moved in row ``t`` and in row ``t-1``
    (``f``: one of the first m, ``b``: a later one, ``end``: row unchanged),
    one of ``"f-end" "b-end" "f-f" "f-b" "b-f" "b-b"``; ``k`` is the changed position in
    row ``t`` and ``q`` the changed position in row ``t-1`` (``None`` when
    that row is unchanged).
    """
    m = mu.m
    L = lambda i, s: l_coord(mu, i, s)  # noqa: E731
    th = lambda i: mu.theta(i, t - 1)  # noqa: E731
    f = SqrtProduct()
    ctx = {"formula": case, "k": k, "q": q, "t": t, "pattern": mu.rows}

    if case == "f-end":
        f.flip(k - 1).flip(_theta_sum(mu, k, m, t - 1))
        for i in range(1, m + 1):
            if i != k:
                f.ratio(L(k, t) - L(i, t) + 1, L(k, t) - L(i, t - 1))
        for s in range(m + 1, t):
            f.under(L(k, t) - L(s, t - 1))
        for s in range(m + 1, t + 1):
            f.over(L(k, t) - L(s, t) + 1)

    elif case == "b-end":
        for i in range(1, m + 1):
            f.ratio(L(i, t) - L(k, t), L(i, t - 1) - L(k, t) + 1)
        for s in range(m + 1, t):
            f.under(L(s, t - 1) - L(k, t) + 1)
        for s in range(m + 1, t + 1):
            if s != k:
                f.over(L(s, t) - L(k, t))

    elif case == "f-f":
        d = 1 if k == q else 0
        f.flip(k + q).flip(_theta_sum(mu, min(k + 1, q + 1), max(k - 1, q - 1), t - 1))
        if S(k, q) < 0:
            f.flip()
        if d == 0:
            # taken in absolute value: with the signed difference S(k,q) would
            # cancel against it and the coefficients stop being orthogonal
            f.outside(1, abs(L(k, t) - L(q, t)))
        if th(q):
            for i in range(1, m + 1):
                if i != k and i != q:
                    f.under(L(i, t - 1) - L(k, t - 1) - 1 - d + 2 * th(i),
                            L(i, t - 1) - L(q, t - 1))
                    f.over(L(i, t) - L(k, t), L(i, t) - L(q, t))
            for s in range(m + 1, t + 1):
                f.ratio(L(q, t) - L(s, t), L(k, t) - L(s, t) + 1)
            for s in range(m + 1, t):
                f.ratio(L(k, t) - L(s, t - 1), L(q, t - 1) - L(s, t - 1))

    elif case == "f-b":
        f.flip(k).flip(_theta_sum(mu, 1, k - 1, t - 1))
        f.over(L(k, t) - L(q, t - 1))
        for i in range(1, m + 1):
            if i != k:
                f.under(L(i, t - 1) - L(k, t - 1) - 1 + 2 * th(i),
                        L(i, t - 1) - L(q, t - 1) + 1)
                f.over(L(i, t) - L(k, t), L(i, t) - L(q, t - 1))
        for s in range(m + 1, t + 1):
            f.under(abs(L(s, t) - L(q, t - 1)))
            f.over(L(k, t) - L(s, t) + 1)
        for s in range(m + 1, t):
            if s != q:
                f.under(L(k, t) - L(s, t - 1))
                f.over(abs(L(s, t - 1) - L(q, t - 1) + 1))

    elif case == "b-f":
        f.flip(q).flip(_theta_sum(mu, q + 1, m, t - 1))
        f.over(L(q, t) - L(k, t) + 1)
        for i in range(1, m + 1):
            f.ratio(L(i, t) - L(k, t), L(i, t - 1) - L(k, t) + 1)
        for i in range(1, m + 1):
            if i != q:
                f.abs_ratio(L(q, t - 1) - L(i, t - 1), L(q, t) - L(i, t))
        for s in range(m + 1, t + 1):
            if s != k:
                f.abs_ratio(L(q, t) - L(s, t), L(s, t) - L(k, t))
        for s in range(m + 1, t):
            f.abs_ratio(L(s, t - 1) - L(k, t) + 1, L(q, t) - L(s, t - 1) - 1)

    elif case == "b-b":
        if S(k, q) < 0:
            f.flip()
        f.flip(_theta_sum(mu, 1, m, t - 1))
        for i in range(1, m + 1):
            f.under(L(i, t) - L(k, t), L(i, t - 1) - L(q, t - 1) + 1)
            f.over(L(i, t - 1) - L(k, t) + 1, L(i, t) - L(q, t - 1))
        for s in range(m + 1, t + 1):
            if s != k:
                f.abs_ratio(L(s, t) - L(q, t - 1), L(s, t) - L(k, t))
        for s in range(m + 1, t):
            if s != q:
                f.abs_ratio(L(s, t - 1) - L(k, t) + 1, L(s, t - 1) - L(q, t - 1) + 1)
    else:
        raise ValueError(f"unknown super isoscalar case {case!r}")

    return f.evaluate(SingularCoefficient, ctx)


def iso_classical(case: str, k: int, q: int | None, t: int, mu: GZPattern) -> RadicalSum:
    """gl(t) > gl(t-1) isoscalar factor, ``case`` in ``{"even-end", "even"}``."""
    L = lambda i, s: l_coord(mu, i, s)  # noqa: E731
    f = SqrtProduct()
    ctx = {"formula": case, "k": k, "q": q, "t": t, "pattern": mu.rows}
    if case == "even-end":
        for i in range(1, t):
            f.under(L(i, t - 1) - L(k, t) - 1)
        for i in range(1, t + 1):
            if i != k:
                f.over(L(i, t) - L(k, t))
    elif case == "even":
        if S(k, q) < 0:
            f.flip()
        for i in range(1, t):
            if i != q:
                f.under(L(i, t - 1) - L(k, t) - 1)
                f.over(L(i, t - 1) - L(q, t - 1) - 1)
        for i in range(1, t + 1):
            if i != k:
                f.under(L(i, t) - L(q, t - 1))
                f.over(L(i, t) - L(k, t))
    else:
        raise ValueError(f"unknown classical isoscalar case {case!r}")
    return f.evaluate(SingularCoefficient, ctx)


def iso_case(m: int, t: int, k: int, q: int | None) -> str:
    """Which closed form applies to row ``t`` with changes ``k`` (row t), ``q`` (row t-1)."""
    if t <= m:
        return "even-end" if q is None else "even"
    if q is None:
        return "f-end" if k <= m else "b-end"
    if k <= m:
        return "f-f" if q <= m else "f-b"
    return "b-f" if q <= m else "b-b"


@dataclass(frozen=True)
class Transition:
    """Single-box path: rows ``r..j`` of ``source`` each gain one box.

    ``increments[idx]`` is the position raised in row ``r - idx``.
    """

    source: GZPattern
    target: GZPattern
    j: int
    increments: tuple[int, ...]

    @property
    def k(self) -> int:
        return self.increments[0]

    def position(self, s: int) -> int | None:
        r = self.source.r
        idx = r - s
        return self.increments[idx] if 0 <= idx < len(self.increments) else None


def _raise(pattern: GZPattern, j: int, increments) -> GZPattern:
    r = pattern.r
    rows = [list(x) for x in pattern.rows]
    for idx, pos in enumerate(increments):
        rows[idx][pos - 1] += 1
    assert len(increments) == r - j + 1
    return GZPattern(pattern.m, pattern.n, tuple(tuple(x) for x in rows))


def raising_transitions(pattern: GZPattern, j: int) -> Iterator[Transition]:
    """All single-box paths for the tensor component ``j`` landing on valid patterns."""
    r = pattern.r

    def rec(s, incs):
        if s < j:
            target = _raise(pattern, j, incs)
            if is_valid(target):
                yield Transition(pattern, target, j, tuple(incs))
            return
        for pos in range(1, s + 1):
            yield from rec(s - 1, incs + [pos])

    yield from rec(r, [])


def transition_between(source: GZPattern, target: GZPattern) -> Transition | None:
    """The single-box path from ``source`` to ``target``, if there is one."""
    r = source.r
    incs = []
    j = None
    for idx, (a, b) in enumerate(zip(source.rows, target.rows)):
        diff = [y - x for x, y in zip(a, b)]
        if all(d == 0 for d in diff):
            if j is None:
                j = r - idx + 1
            continue
        if j is not None:
            return None  # a changed row below an unchanged one
        if sorted(diff) != [0] * (len(diff) - 1) + [1]:
            return None
        incs.append(diff.index(1) + 1)
    if j is None:
        j = 1
    if not incs or len(incs) != r - j + 1:
        return None
    return Transition(source, target, j, tuple(incs))


def cgc_factors(tr: Transition) -> list[tuple[str, int, RadicalSum]]:
    """The per-row factors ``(formula tag, row t, value)`` of a CGC, top row first.

    The global theta-parity sign is reported as tag ``"theta-sign"`` with row 0.
    """
    mu = tr.source
    m, r, j = mu.m, mu.r, tr.j
    out = []
    sign_exp = sum(mu.theta(i, q) for i in range(1, m + 1) for q in range(m, j))
    out.append(("theta-sign", 0, -ONE if sign_exp % 2 else ONE))
    for t in range(r, j - 1, -1):
        k = tr.position(t)
        q = tr.position(t - 1) if t > j else None
        case = iso_case(m, t, k, q)
        if case in ("even-end", "even"):
            val = iso_classical(case, k, q, t, mu)
        else:
            val = iso_super(case, k, q, t, mu)
        out.append((case, t, val))
    return out


def cgc(tr: Transition, sig: Signature | None = None) -> RadicalSum:
    """Clebsch-Gordan coefficient for the single-box path ``tr``."""
    if not is_valid(tr.source) or not is_valid(tr.target):
        return ZERO
    value = ONE
    for _, _, v in cgc_factors(tr):
        if not v:
            return ZERO
        value = value * v
    return value
