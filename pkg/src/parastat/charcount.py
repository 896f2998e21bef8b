"""Counting oracle for the level structure of V(p).

Level ``l`` of the Fock space decomposes into covariant gl(m|n) modules
labelled by (m|n)-hook partitions of ``l``; each module's dimension is the
number of (m|n)-semistandard tableaux of that shape.  The tableaux are
enumerated directly, sharing nothing with the pattern enumeration they check.
"""

from __future__ import annotations

from functools import lru_cache

from .gzbasis import Signature, basis, enumerate_with_top, top_rows

__all__ = [
    "hook_partitions",
    "is_hook",
    "conjugate",
    "covariant_dimension",
    "top_row_for",
    "partition_for",
    "verify_level_dimensions",
    "verify_top_rows",
]


def is_hook(lam, m: int, n: int) -> bool:
    return len(lam) <= m or lam[m] <= n


def _partitions(total: int, largest: int):
    if total == 0:
        yield ()
        return
    for first in range(min(total, largest), 0, -1):
        for rest in _partitions(total - first, first):
            yield (first,) + rest


def hook_partitions(m: int, n: int, weight: int) -> list[tuple[int, ...]]:
    """All partitions of ``weight`` with ``lambda_{m+1} <= n``, lexicographically descending."""
    if weight < 0:
        raise ValueError("weight must be nonnegative")
    return [lam for lam in _partitions(weight, weight) if is_hook(lam, m, n)]


def conjugate(lam) -> tuple[int, ...]:
    if not lam:
        return ()
    return tuple(sum(1 for part in lam if part > i) for i in range(lam[0]))


@lru_cache(maxsize=None)
def covariant_dimension(lam: tuple[int, ...], m: int, n: int) -> int:
    """Number of (m|n)-semistandard tableaux of shape ``lam``.

    Letters 1..m are unprimed (rows weak, columns strict), letters m+1..m+n
    primed (rows strict, columns weak); unprimed precede primed.
    """
    lam = tuple(x for x in lam if x > 0)
    cells = [(i, j) for i, row in enumerate(lam) for j in range(row)]
    filling: dict[tuple[int, int], int] = {}
    letters = range(1, m + n + 1)

    def ok(i, j, x):
        if j > 0:
            a = filling[(i, j - 1)]
            if a > x or (a == x and x > m):
                return False
        if i > 0:
            b = filling[(i - 1, j)]
            if b > x or (b == x and x <= m):
                return False
        return True

    def count(idx):
        if idx == len(cells):
            return 1
        i, j = cells[idx]
        total = 0
        for x in letters:
            if ok(i, j, x):
                filling[(i, j)] = x
                total += count(idx + 1)
        filling.pop((i, j), None)
        return total

    return count(0)


def top_row_for(lam, m: int, n: int) -> tuple[int, ...]:
    """Top pattern row of the covariant module with partition ``lam``.

    The first m labels are the first m parts; the bosonic labels are the
    column lengths of ``lam`` below row m.
    """
    lam = tuple(lam)
    if not is_hook(lam, m, n):
        raise ValueError(f"{lam} is not an ({m}|{n})-hook partition")
    head = tuple(lam[i] if i < len(lam) else 0 for i in range(m))
    cols = conjugate(lam)
    tail = tuple(max((cols[j] if j < len(cols) else 0) - m, 0) for j in range(n))
    return head + tail


def partition_for(top, m: int) -> tuple[int, ...]:
    """Inverse of :func:`top_row_for`."""
    top = tuple(top)
    head = [x for x in top[:m]]
    tail = top[m:]
    rows = []
    depth = max(tail) if tail else 0
    for r in range(depth):
        rows.append(sum(1 for c in tail if c > r))
    lam = tuple(x for x in head + rows if x > 0)
    return lam


def verify_top_rows(m: int, n: int, max_level: int) -> dict:
    """Patterns per top row against tableaux per partition, for every level."""
    results = []
    ok = True
    sig = Signature(m, n, max(max_level, 1), max_level)
    for level in range(max_level + 1):
        for lam in hook_partitions(m, n, level):
            top = top_row_for(lam, m, n)
            patterns = len(enumerate_with_top(top, sig))
            dim = covariant_dimension(lam, m, n)
            match = patterns == dim
            ok &= match
            results.append({"level": level, "partition": list(lam), "top": list(top),
                            "dimension": dim, "patterns": patterns, "match": match})
        tops = set(top_rows(m, n, level))
        mapped = {top_row_for(lam, m, n) for lam in hook_partitions(m, n, level)}
        if tops != mapped:
            ok = False
            results.append({"level": level, "partition": None, "match": False,
                            "detail": "top rows and hook partitions are not in bijection"})
    return {"suite": "top-rows", "ok": ok, "checked": len(results), "results": results}


def verify_level_dimensions(sig: Signature) -> dict:
    """Basis size per level against the tableau count of the hook partitions.

    Partitions with first part above ``p`` are dropped, matching the
    ``mu_1r <= p`` restriction of the basis.
    """
    counts: dict[int, int] = {}
    for pat in basis(sig):
        counts[pat.level] = counts.get(pat.level, 0) + 1
    results = []
    ok = True
    for level in range(sig.level_cap + 1):
        parts = [lam for lam in hook_partitions(sig.m, sig.n, level)
                 if not lam or lam[0] <= sig.p]
        dims = {lam: covariant_dimension(lam, sig.m, sig.n) for lam in parts}
        expected = sum(dims.values())
        got = counts.get(level, 0)
        match = expected == got
        ok &= match
        results.append({
            "level": level,
            "partitions": [[list(lam), d] for lam, d in dims.items()],
            "dimension": expected,
            "patterns": got,
            "match": match,
        })
    return {"suite": "level-dimensions", "ok": ok, "checked": len(results), "results": results}
