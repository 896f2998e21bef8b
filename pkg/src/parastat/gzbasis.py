"""Gelfand-Zetlin patterns of gl(m|n) labelling the Fock basis of V(p).

A pattern is stored row by row from the top: ``rows[0]`` is row ``r = m+n``
(``r`` labels) and ``rows[r-s]`` is row ``s`` (``s`` labels).  Helpers use the
1-based indices ``mu(i, s)`` of the usual triangular layout.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple, Sequence

__all__ = [
    "Signature",
    "GZPattern",
    "ShapeError",
    "TopRowError",
    "Validation",
    "validate",
    "is_valid",
    "valid_top_row",
    "enumerate_with_top",
    "basis",
    "weight",
    "vacuum",
    "top_rows",
]


class ShapeError(ValueError):
    """The rows do not form a triangular array for the given (m, n)."""


class TopRowError(ValueError):
    """The top row violates the ordering or hook constraint."""


@dataclass(frozen=True)
class Signature:
    """Parameters of a truncated Fock module: ``m`` parafermions, ``n``
    parabosons, order ``p`` and the level cutoff."""

    m: int
    n: int
    p: int = 1
    level_cap: int = 0

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise ValueError("need m >= 1 and n >= 1")
        if self.p < 1:
            raise ValueError("order p must be a positive integer")
        if self.level_cap < 0:
            raise ValueError("level_cap must be nonnegative")

    @property
    def r(self) -> int:
        return self.m + self.n


@dataclass(frozen=True, order=True)
class GZPattern:
    m: int
    n: int
    rows: tuple[tuple[int, ...], ...] = field(compare=True)

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.rows)
        object.__setattr__(self, "rows", rows)
        r = self.m + self.n
        if len(rows) != r or any(len(row) != r - t for t, row in enumerate(rows)):
            raise ShapeError(
                f"pattern for gl({self.m}|{self.n}) needs rows of lengths "
                f"{r}, {r - 1}, ..., 1; got {[len(x) for x in rows]}"
            )

    @property
    def r(self) -> int:
        return self.m + self.n

    def row(self, s: int) -> tuple[int, ...]:
        """Row ``s`` (1 <= s <= r), which has ``s`` entries."""
        return self.rows[self.r - s]

    def mu(self, i: int, s: int) -> int:
        return self.rows[self.r - s][i - 1]

    def theta(self, i: int, s: int) -> int:
        """``mu(i, s+1) - mu(i, s)``; meaningful for i <= m <= s."""
        return self.mu(i, s + 1) - self.mu(i, s)

    @property
    def top(self) -> tuple[int, ...]:
        return self.rows[0]

    @property
    def level(self) -> int:
        return sum(self.rows[0])

    def row_sum(self, s: int) -> int:
        return sum(self.row(s)) if s >= 1 else 0

    def to_json_obj(self) -> dict:
        return {"m": self.m, "n": self.n, "rows": [list(x) for x in self.rows]}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    @classmethod
    def from_json_obj(cls, obj) -> "GZPattern":
        return cls(obj["m"], obj["n"], tuple(tuple(x) for x in obj["rows"]))

    def __str__(self):
        return " / ".join(",".join(str(x) for x in row) for row in self.rows)


class Validation(NamedTuple):
    ok: bool
    condition: int | None = None
    detail: str = ""

    def __bool__(self):
        return self.ok


def _count_positive(values) -> int:
    return sum(1 for v in values if v > 0)


def _check_top(top: Sequence[int], m: int) -> Validation:
    r = len(top)
    if any(v < 0 for v in top):
        return Validation(False, 1, "negative top label")
    for j in range(1, r):
        if j != m and top[j - 1] < top[j]:
            return Validation(False, 1, f"top labels {j},{j + 1} not ordered")
    if top[m - 1] < _count_positive(top[m:]):
        return Validation(False, 1, "hook constraint on mu_mr")
    return Validation(True)


def valid_top_row(top: Sequence[int], m: int) -> bool:
    return _check_top(tuple(top), m).ok


def validate(pattern: GZPattern, sig: Signature | None = None) -> Validation:
    """Check the six GZ conditions; report the first violated one."""
    m, n = pattern.m, pattern.n
    if sig is not None and (sig.m, sig.n) != (m, n):
        raise ShapeError(f"pattern is for gl({m}|{n}), signature for gl({sig.m}|{sig.n})")
    r = m + n
    mu = pattern.mu

    res = _check_top(pattern.top, m)
    if not res:
        return res
    # 2: first m labels drop by 0 or 1 through the super rows
    for s in range(m + 1, r + 1):
        for i in range(1, m + 1):
            if mu(i, s) - mu(i, s - 1) not in (0, 1):
                return Validation(False, 2, f"theta_{i},{s - 1} not in {{0,1}}")
    # 3: hook constraint in every super row
    for s in range(m + 1, r + 1):
        if mu(m, s) < _count_positive(mu(i, s) for i in range(m + 1, s + 1)):
            return Validation(False, 3, f"hook constraint in row {s}")
    # 4
    if mu(m, m + 1) == 0 and mu(m, m + 1) - mu(m, m) != 0:
        return Validation(False, 4, "mu_m,m+1 = 0 but theta_mm != 0")
    # 5: ordering of the first m labels in the intermediate super rows
    for s in range(m + 1, r):
        for i in range(1, m):
            if mu(i, s) < mu(i + 1, s):
                return Validation(False, 5, f"mu_{i},{s} < mu_{i + 1},{s}")
    # 6: betweenness inside the gl(m) triangle and the bosonic triangle
    for j in range(1, r):
        for i in range(1, j + 1):
            if i <= j <= m - 1 or m + 1 <= i <= j <= r - 1:
                if mu(i, j + 1) < mu(i, j) or mu(i, j) < mu(i + 1, j + 1):
                    return Validation(False, 6, f"betweenness at mu_{i},{j}")
    return Validation(True)


def is_valid(pattern: GZPattern) -> bool:
    return validate(pattern).ok


def _row_candidates(upper: tuple[int, ...], s: int, m: int):
    """Possible entries of row ``s`` below row ``s+1`` (loose; validate filters)."""
    choices = []
    for i in range(1, s + 1):
        if i <= m and s >= m:
            a = upper[i - 1]
            choices.append((a - 1, a) if a > 0 else (a,))
        else:
            # interlacing: mu(i, s+1) >= mu(i, s) >= mu(i+1, s+1)
            choices.append(range(upper[i], upper[i - 1] + 1))
    return itertools.product(*choices)


@lru_cache(maxsize=None)
def _fillings(top: tuple[int, ...], m: int, n: int) -> tuple[GZPattern, ...]:
    r = m + n
    partial = [(top,)]
    for s in range(r - 1, 0, -1):
        nxt = []
        for rows in partial:
            for cand in _row_candidates(rows[-1], s, m):
                nxt.append(rows + (tuple(cand),))
        partial = nxt
    out = []
    for rows in partial:
        pat = GZPattern(m, n, rows)
        if validate(pat).ok:
            out.append(pat)
    out.sort(key=lambda pt: pt.rows)
    return tuple(out)


def enumerate_with_top(top: Sequence[int], sig: Signature) -> list[GZPattern]:
    """All valid patterns with the given top row, in lexicographic order."""
    top = tuple(int(x) for x in top)
    if len(top) != sig.r:
        raise ShapeError(f"top row must have {sig.r} labels")
    res = _check_top(top, sig.m)
    if not res:
        raise TopRowError(res.detail)
    return list(_fillings(top, sig.m, sig.n))


def top_rows(m: int, n: int, level: int, max_first: int | None = None) -> list[tuple[int, ...]]:
    """Valid top rows of total ``level`` (and ``mu_1r <= max_first``), ascending."""
    r = m + n
    out = []

    def rec(prefix, remaining):
        if len(prefix) == r:
            if remaining == 0:
                out.append(tuple(prefix))
            return
        for v in range(remaining + 1):
            rec(prefix + [v], remaining - v)

    rec([], level)
    return [
        t for t in out
        if _check_top(t, m).ok and (max_first is None or t[0] <= max_first)
    ]


def basis(sig: Signature) -> list[GZPattern]:
    """Basis of V(p) truncated at ``sig.level_cap``.

    Ordered by level, then top row, then the remaining rows.
    """
    out = []
    for level in range(sig.level_cap + 1):
        for top in top_rows(sig.m, sig.n, level, sig.p):
            out.extend(_fillings(top, sig.m, sig.n))
    return out


def vacuum(m: int, n: int) -> GZPattern:
    r = m + n
    return GZPattern(m, n, tuple((0,) * (r - t) for t in range(r)))


def weight(pattern: GZPattern, sig: Signature) -> tuple[Fraction, ...]:
    """Eigenvalues of the Cartan elements h_1..h_r on ``pattern``.

    The gl(m|n) weight is the row-sum difference, shifted by -p/2 on the
    parafermion components and +p/2 on the paraboson components.
    """
    half = Fraction(sig.p, 2)
    out = []
    for i in range(1, sig.r + 1):
        diff = pattern.row_sum(i) - pattern.row_sum(i - 1)
        out.append((-half if i <= sig.m else half) + diff)
    return tuple(out)
