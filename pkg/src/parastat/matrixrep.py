"""The (2m+2n+1)-dimensional defining matrices of pso(2m+1|2n).

This is an oracle independent of the Fock construction: the para-operators
are explicit sparse matrices, the bracket is matrix multiplication with the
Z2xZ2 sign, and the triple relations become finite matrix identities.

Every generator is sqrt(2) times an integer matrix, so a homogeneous element
is stored as an integer array times a rational and the square root of one
square-free radicand.  Products multiply radicands; sums need equal ones.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd, lcm

import numpy as np

from .exactnum import RadicalSum, sqrt_normalize
from .fockmodule import (EXPECTED_KINDS, Bracket, Gen, GeneratorLabel, bracket_kinds,
                         relation_specs)

__all__ = [
    "GradedMatrix",
    "generator",
    "graded_bracket",
    "cartan",
    "block_degrees",
    "in_algebra",
    "degree_blocks_ok",
    "spanning_elements",
    "bareiss_rank",
    "span_rank",
    "expected_span_rank",
    "jacobi_residual",
    "evaluate_word",
    "verify_defining_relations",
]

Degree = tuple[int, int]


def _add_deg(a: Degree, b: Degree) -> Degree:
    return ((a[0] + b[0]) % 2, (a[1] + b[1]) % 2)


def _dot(a: Degree, b: Degree) -> int:
    return a[0] * b[0] + a[1] * b[1]


class GradedMatrix:
    """Homogeneous element ``coeff * sqrt(radicand) * entries`` with a Z2xZ2 degree.

    ``entries`` is an integer object array, so products stay in integer
    arithmetic; the rational ``coeff`` carries every fraction.
    """

    __slots__ = ("entries", "degree", "radicand", "coeff")

    def __init__(self, entries, degree: Degree, radicand: int = 1, coeff=1):
        arr = np.array(entries, dtype=object)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError("GradedMatrix needs a square array")
        coeff = Fraction(coeff)
        if any(not isinstance(x, int) for x in arr.flat):
            fr = [Fraction(x) for x in arr.flat]
            den = reduce(lcm, (x.denominator for x in fr), 1)
            arr = np.array([int(x * den) for x in fr], dtype=object).reshape(arr.shape)
            coeff /= den
        self.entries = arr
        self.degree = (degree[0] % 2, degree[1] % 2)
        self.radicand = radicand
        self.coeff = coeff

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def is_zero(self) -> bool:
        return self.coeff == 0 or not any(self.entries.flat)

    def value(self, i: int, j: int) -> RadicalSum:
        """Exact entry at 0-based position ``(i, j)``."""
        return RadicalSum.rational(self.coeff * self.entries[i, j]) * RadicalSum.sqrt(self.radicand)

    def rows(self) -> list[list[RadicalSum]]:
        return [[self.value(i, j) for j in range(self.dim)] for i in range(self.dim)]

    def _check(self, other: "GradedMatrix"):
        if other.dim != self.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __matmul__(self, other: "GradedMatrix") -> "GradedMatrix":
        self._check(other)
        rad = sqrt_normalize(self.radicand * other.radicand)
        return GradedMatrix(self.entries.dot(other.entries), _add_deg(self.degree, other.degree),
                            rad.radicand, self.coeff * other.coeff * rad.coefficient)

    def _combine(self, other: "GradedMatrix", sign: int) -> "GradedMatrix":
        self._check(other)
        if other.is_zero():
            return self
        if self.is_zero():
            return other if sign > 0 else -other
        if self.degree != other.degree:
            raise ValueError(f"adding degrees {self.degree} and {other.degree}")
        if self.radicand != other.radicand:
            raise ValueError(f"adding radicands {self.radicand} and {other.radicand}")
        a, b = self.coeff, other.coeff
        c = Fraction(gcd(a.numerator, b.numerator), lcm(a.denominator, b.denominator))
        ka, kb = int(a / c), int(b / c)
        return GradedMatrix(ka * self.entries + sign * kb * other.entries, self.degree,
                            self.radicand, c)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return GradedMatrix(self.entries, self.degree, self.radicand, -self.coeff)

    def scale(self, q) -> "GradedMatrix":
        return GradedMatrix(self.entries, self.degree, self.radicand, self.coeff * Fraction(q))

    def __eq__(self, other):
        if not isinstance(other, GradedMatrix):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        return self.degree == other.degree and (self - other).is_zero()

    __hash__ = None

    def integer_rows(self) -> list[int]:
        """Entries flattened and divided by their gcd (rational and radical factors dropped)."""
        ints = [int(x) for x in self.entries.flat]
        g = reduce(gcd, ints, 0)
        return [x // g for x in ints] if g > 1 else ints

    def to_json_obj(self) -> dict:
        return {
            "dim": self.dim,
            "degree": list(self.degree),
            "rows": [[v.to_json_obj() for v in row] for row in self.rows()],
        }

    def to_text(self) -> str:
        cells = [[str(v) for v in row] for row in self.rows()]
        width = max(len(c) for row in cells for c in row)
        return "\n".join(" ".join(c.rjust(width) for c in row) for row in cells)

    def __repr__(self):
        return (f"GradedMatrix(dim={self.dim}, degree={self.degree}, "
                f"scale={self.coeff}*sqrt({self.radicand}))")


def _e(i: int, j: int, dim: int) -> np.ndarray:
    """1-based matrix unit as an integer object array."""
    out = np.zeros((dim, dim), dtype=object)
    out[i - 1, j - 1] = 1
    return out


def generator(gen, m: int, n: int) -> GradedMatrix:
    """Matrix of ``f~_j^+-`` or ``b~_k^+-`` in dimension ``2m+2n+1``."""
    if isinstance(gen, str):
        gen = GeneratorLabel.parse(gen, "pso")
    dim = 2 * m + 2 * n + 1
    o = 2 * m + 1
    j = gen.index
    if gen.family == "f":
        if j > m:
            raise IndexError(f"f index {j} out of range 1..{m}")
        if gen.sign > 0:
            arr = _e(j, o, dim) - _e(o, j + m, dim)
        else:
            arr = _e(o, j, dim) - _e(j + m, o, dim)
        return GradedMatrix(arr, (1, 1), 2)
    if j > n:
        raise IndexError(f"b index {j} out of range 1..{n}")
    if gen.sign > 0:
        arr = _e(o, o + n + j, dim) + _e(o + j, o, dim)
    else:
        arr = _e(o, o + j, dim) - _e(o + n + j, o, dim)
    return GradedMatrix(arr, (1, 0), 2)


def graded_bracket(A: GradedMatrix, B: GradedMatrix) -> GradedMatrix:
    """``AB - (-1)^{a.b} BA``."""
    if A.dim != B.dim:
        raise ValueError(f"dimension mismatch: {A.dim} vs {B.dim}")
    if _dot(A.degree, B.degree) % 2:
        return A @ B + B @ A
    return A @ B - B @ A


def cartan(i: int, m: int, n: int) -> GradedMatrix:
    """Diagonal Cartan element ``h_i`` (parafermion indices first)."""
    dim = 2 * m + 2 * n + 1
    if 1 <= i <= m:
        arr = _e(i, i, dim) - _e(i + m, i + m, dim)
    elif m < i <= m + n:
        k = i - m
        o = 2 * m + 1
        arr = _e(o + k, o + k, dim) - _e(o + n + k, o + n + k, dim)
    else:
        raise IndexError(f"Cartan index {i} out of range 1..{m + n}")
    return GradedMatrix(arr, (0, 0), 1)


# ------------------------------------------------------------ block shape


def _segments(m: int, n: int) -> dict[str, slice]:
    o = 2 * m
    return {
        "A": slice(0, m), "B": slice(m, 2 * m), "O": slice(o, o + 1),
        "D": slice(o + 1, o + 1 + n), "F": slice(o + 1 + n, o + 1 + 2 * n),
    }


@lru_cache(maxsize=None)
def block_degrees(m: int, n: int) -> np.ndarray:
    """Degree allowed at each position, ``None`` on the zero (2m+1, 2m+1) slot."""
    dim = 2 * m + 2 * n + 1
    cls = [0] * (2 * m) + [1] + [2] * (2 * n)
    table = {
        (0, 0): (0, 0), (0, 1): (1, 1), (0, 2): (0, 1),
        (1, 0): (1, 1), (1, 1): None, (1, 2): (1, 0),
        (2, 0): (0, 1), (2, 1): (1, 0), (2, 2): (0, 0),
    }
    out = np.empty((dim, dim), dtype=object)
    for i in range(dim):
        for j in range(dim):
            out[i, j] = table[(cls[i], cls[j])]
    return out


def degree_blocks_ok(M: GradedMatrix, m: int, n: int) -> bool:
    """Nonzero entries only where the grading scheme puts ``M.degree``."""
    allowed = block_degrees(m, n)
    return all(x == 0 or allowed[idx] == M.degree for idx, x in np.ndenumerate(M.entries))


def in_algebra(M: GradedMatrix, m: int, n: int) -> bool:
    """Does ``M`` have the block form of pso(2m+1|2n)?"""
    s = _segments(m, n)
    X = M.entries
    blk = lambda r, c: X[s[r], s[c]]  # noqa: E731
    same = lambda P, Q: all(a == b for a, b in zip(P.flat, Q.flat))  # noqa: E731
    checks = [
        same(blk("B", "B"), -blk("A", "A").T),
        same(blk("A", "B"), -blk("A", "B").T),
        same(blk("B", "A"), -blk("B", "A").T),
        same(blk("O", "A"), -blk("B", "O").T),
        same(blk("O", "B"), -blk("A", "O").T),
        all(x == 0 for x in blk("O", "O").flat),
        same(blk("D", "A"), -blk("B", "F").T),
        same(blk("D", "B"), -blk("A", "F").T),
        same(blk("F", "A"), blk("B", "D").T),
        same(blk("F", "B"), blk("A", "D").T),
        same(blk("D", "O"), blk("O", "F").T),
        same(blk("F", "O"), -blk("O", "D").T),
        same(blk("F", "F"), -blk("D", "D").T),
        same(blk("D", "F"), blk("D", "F").T),
        same(blk("F", "D"), blk("F", "D").T),
    ]
    return all(checks)


# ------------------------------------------------------------------- span


def spanning_elements(m: int, n: int) -> dict[str, list[GradedMatrix]]:
    """Generators and their pairwise brackets, grouped by the family of the bracket."""
    fs = [generator(GeneratorLabel("f", j, s, "pso"), m, n) for j in range(1, m + 1) for s in (1, -1)]
    bs = [generator(GeneratorLabel("b", k, s, "pso"), m, n) for k in range(1, n + 1) for s in (1, -1)]
    return {
        "f": fs,
        "b": bs,
        "ff": [graded_bracket(x, y) for x, y in itertools.product(fs, repeat=2)],
        "bb": [graded_bracket(x, y) for x, y in itertools.product(bs, repeat=2)],
        "fb": [graded_bracket(x, y) for x, y in itertools.product(fs, bs)],
    }


def bareiss_rank(rows: list[list[int]]) -> int:
    """Rank of an integer matrix by fraction-free Gaussian elimination."""
    A = [list(r) for r in rows if any(r)]
    if not A:
        return 0
    ncols = len(A[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(A)) if A[i][col] != 0), None)
        if pivot is None:
            continue
        A[rank], A[pivot] = A[pivot], A[rank]
        p = A[rank][col]
        for i in range(rank + 1, len(A)):
            a = A[i][col]
            A[i] = [(p * A[i][c] - a * A[rank][c]) // prev for c in range(ncols)]
        prev = p
        rank += 1
        if rank == len(A):
            break
    return rank


def span_rank(mats: list[GradedMatrix]) -> int:
    """Dimension of the rational span, each matrix rescaled to integers first."""
    return bareiss_rank([M.integer_rows() for M in mats])


def expected_span_rank(m: int, n: int) -> int:
    """dim so(2m+1) + dim sp(2n)."""
    return m * (2 * m + 1) + n * (2 * n + 1)


# ---------------------------------------------------------------- checks


def jacobi_residual(x: GradedMatrix, y: GradedMatrix, z: GradedMatrix) -> GradedMatrix:
    """``[[x,[[y,z]]]] - [[[[x,y]],z]] - (-1)^{a.b} [[y,[[x,z]]]]``."""
    sign = -1 if _dot(x.degree, y.degree) % 2 else 1
    lhs = graded_bracket(x, graded_bracket(y, z))
    rhs1 = graded_bracket(graded_bracket(x, y), z)
    rhs2 = graded_bracket(y, graded_bracket(x, z))
    return lhs - rhs1 - (rhs2 if sign > 0 else -rhs2)


def evaluate_word(expr, m: int, n: int, cache: dict | None = None) -> GradedMatrix:
    """Matrix of a ``Gen``/``Bracket`` word."""
    if cache is not None and expr in cache:
        return cache[expr]
    if isinstance(expr, Gen):
        out = generator(expr.label, m, n)
    else:
        out = graded_bracket(evaluate_word(expr.left, m, n, cache),
                             evaluate_word(expr.right, m, n, cache))
    if cache is not None:
        cache[expr] = out
    return out


def _nonzero_entry(M: GradedMatrix):
    for (i, j), x in np.ndenumerate(M.entries):
        if x != 0:
            return {"row": i + 1, "col": j + 1, "value": str(M.value(i, j))}
    return None


def verify_defining_relations(m: int, n: int) -> dict:
    """Exhaustive check of the parafermion, paraboson and relative paraboson relations.

    Also checks that every generator, pairwise bracket and triple bracket
    keeps the block form and the degree layout, that ``{f~_j^+, b~_k^+}``
    squares to zero, that the even Cartan elements come out of the brackets,
    and that the span of degree (0,0)+(1,1) has the dimension of
    so(2m+1) + sp(2n).
    """
    if m < 1 or n < 1:
        raise ValueError("need m >= 1 and n >= 1")
    cache: dict = {}
    results = []
    ok = True
    shape_ok = True

    def shape(M):
        return in_algebra(M, m, n) and degree_blocks_ok(M, m, n)

    for name, idx, signs, expr, rhs in relation_specs(m, n, "pso"):
        if bracket_kinds(expr) != EXPECTED_KINDS["pso"][name]:
            raise AssertionError(f"{name}: bracket types do not match the relation")
        lhs = evaluate_word(expr, m, n, cache)
        inner = evaluate_word(expr.left, m, n, cache)
        residual = lhs
        for coeff, label in rhs:
            residual = residual - generator(label, m, n).scale(coeff)
        good = residual.is_zero()
        blocks = shape(lhs) and shape(inner)
        shape_ok &= blocks
        entry = {"relation": name, "indices": list(idx),
                 "signs": ["+" if s > 0 else "-" for s in signs],
                 "status": "ok" if good else "violated"}
        if not good:
            entry["counterexample"] = _nonzero_entry(residual)
        if not blocks:
            entry["status"] = "violated"
            entry["shape"] = "bracket leaves the block form"
        ok &= good and blocks
        results.append(entry)

    for gen in [GeneratorLabel(fam, i, s, "pso") for fam, cnt in (("f", m), ("b", n))
                for i in range(1, cnt + 1) for s in (1, -1)]:
        good = shape(generator(gen, m, n))
        shape_ok &= good
        ok &= good
        results.append({"relation": "block-form", "indices": [gen.index], "signs": [str(gen)[-1]],
                        "status": "ok" if good else "violated"})

    for j in range(1, m + 1):
        for k in range(1, n + 1):
            X = evaluate_word(Bracket(Gen(GeneratorLabel("f", j, 1, "pso")),
                                      Gen(GeneratorLabel("b", k, 1, "pso"))), m, n, cache)
            good = (X @ X).is_zero()
            ok &= good
            results.append({"relation": "nilpotent", "indices": [j, k], "signs": ["+", "+"],
                            "status": "ok" if good else "violated"})

    for i in range(1, m + n + 1):
        if i <= m:
            a = generator(GeneratorLabel("f", i, -1, "pso"), m, n)
            b = generator(GeneratorLabel("f", i, 1, "pso"), m, n)
            h = graded_bracket(a, b).scale(Fraction(-1, 2))
        else:
            a = generator(GeneratorLabel("b", i - m, -1, "pso"), m, n)
            b = generator(GeneratorLabel("b", i - m, 1, "pso"), m, n)
            h = graded_bracket(a, b).scale(Fraction(1, 2))
        good = h == cartan(i, m, n)
        ok &= good
        results.append({"relation": "cartan", "indices": [i], "signs": [],
                        "status": "ok" if good else "violated"})

    els = spanning_elements(m, n)
    rank = span_rank(els["f"] + els["ff"] + els["bb"])
    want = expected_span_rank(m, n)
    ok &= rank == want
    results.append({"relation": "even-span", "indices": [m, n], "signs": [],
                    "status": "ok" if rank == want else "violated", "rank": rank, "expected": want})

    return {"suite": "defining", "ok": bool(ok), "block_form": bool(shape_ok),
            "checked": len(results), "results": results}
