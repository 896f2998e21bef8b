"""Para-operator actions on the truncated Fock module V(p).

The osp(2m+1|2n) generators act through CGC x reduced-matrix-element sums;
the pso(2m+1|2n) generators are obtained from them by the level-parity phase
twist on the parafermions.  Matrices are exact and sparse, stored column by
column, and only ever multiplied on source levels where truncation cannot
interfere.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Mapping

from .exactnum import ONE, ZERO, RadicalSum
from .gzbasis import GZPattern, Signature, basis, is_valid, vacuum, weight
from .isoscalar import Transition, cgc, raising_transitions
from .reduced import G, G_tilde

__all__ = [
    "GeneratorLabel",
    "Degree",
    "OperatorMatrix",
    "generators",
    "apply",
    "matrix",
    "bracket",
    "identity",
    "Gen",
    "Bracket",
    "evaluate",
    "depth",
    "relation_specs",
    "bracket_kinds",
    "verify_relations",
    "verify_gl_embedding",
    "verify_closed_form",
    "verify_vacuum",
    "verify_adjointness",
    "verify_cartan",
    "verify_phase_link",
    "verify_nilpotency",
    "EXPECTED_KINDS",
]

Degree = tuple[int, int]
VARIANTS = ("osp", "pso")


@dataclass(frozen=True, order=True)
class GeneratorLabel:
    """``family`` is ``"f"`` (parafermion) or ``"b"`` (paraboson); ``sign`` is +1/-1."""

    family: str
    index: int
    sign: int
    variant: str = "osp"

    def __post_init__(self):
        if self.family not in ("f", "b"):
            raise ValueError(f"unknown family {self.family!r}")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}")
        if self.index < 1:
            raise ValueError("generator index starts at 1")

    @classmethod
    def parse(cls, spec: str, variant: str = "osp") -> "GeneratorLabel":
        """Parse ``"f1+"``, ``"b2-"`` and the like."""
        spec = spec.strip()
        if len(spec) < 3 or spec[0] not in "fb" or spec[-1] not in "+-" or not spec[1:-1].isdigit():
            raise ValueError(f"bad generator spec {spec!r}; expected e.g. f1+ or b2-")
        return cls(spec[0], int(spec[1:-1]), 1 if spec[-1] == "+" else -1, variant)

    def unified(self, m: int) -> int:
        """Index j of c_j: parafermions first, then parabosons."""
        return self.index if self.family == "f" else m + self.index

    @property
    def degree(self) -> Degree:
        if self.family == "b":
            return (1, 0)
        return (1, 1) if self.variant == "pso" else (0, 0)

    def with_sign(self, sign: int) -> "GeneratorLabel":
        return GeneratorLabel(self.family, self.index, sign, self.variant)

    def adjoint(self) -> "GeneratorLabel":
        return self.with_sign(-self.sign)

    def __str__(self):
        return f"{self.family}{self.index}{'+' if self.sign > 0 else '-'}"


def generators(sig: Signature, variant: str) -> list[GeneratorLabel]:
    out = []
    for fam, count in (("f", sig.m), ("b", sig.n)):
        for idx in range(1, count + 1):
            for s in (1, -1):
                out.append(GeneratorLabel(fam, idx, s, variant))
    return out


def _check_label(gen: GeneratorLabel, sig: Signature):
    count = sig.m if gen.family == "f" else sig.n
    if gen.index > count:
        raise IndexError(f"{gen} out of range for m={sig.m}, n={sig.n}")


# ---------------------------------------------------------------- actions


def _reduced_fn(route: str) -> Callable:
    return G_tilde if route == "gtilde" else G


@lru_cache(maxsize=None)
def _creation_terms(mu: GZPattern, j: int, p: int, route: str) -> tuple:
    """``c_j^+ |mu)`` before truncation, as ``((target, value), ...)``."""
    red = _reduced_fn(route)
    out = []
    for tr in raising_transitions(mu, j):
        g = red(tr.k, mu.top, mu.m, p)
        if not g:
            continue
        c = cgc(tr)
        if c:
            out.append((tr.target, c * g))
    return tuple(out)


def _lowering_candidates(mu: GZPattern, j: int):
    r = mu.r
    for incs in itertools.product(*(range(1, s + 1) for s in range(r, j - 1, -1))):
        rows = [list(x) for x in mu.rows]
        for idx, pos in enumerate(incs):
            rows[idx][pos - 1] -= 1
        if any(v < 0 for row in rows for v in row):
            continue
        src = GZPattern(mu.m, mu.n, tuple(tuple(x) for x in rows))
        if is_valid(src):
            yield Transition(src, mu, j, tuple(incs))


@lru_cache(maxsize=None)
def _annihilation_terms(mu: GZPattern, j: int, p: int, route: str) -> tuple:
    """``c_j^- |mu)``: coefficient of ``mu`` in ``c_j^+ |mu')`` for each predecessor."""
    red = _reduced_fn(route)
    out = []
    for tr in _lowering_candidates(mu, j):
        if tr.source.top[0] > p:
            continue
        g = red(tr.k, tr.source.top, mu.m, p)
        if not g:
            continue
        c = cgc(tr)
        if c:
            out.append((tr.source, c * g))
    return tuple(out)


def _basis_action(gen: GeneratorLabel, mu: GZPattern, sig: Signature, route: str):
    j = gen.unified(sig.m)
    if gen.sign > 0:
        terms = _creation_terms(mu, j, sig.p, route)
    else:
        terms = _annihilation_terms(mu, j, sig.p, route)
    phase = 1
    if route == "twist" and gen.variant == "pso" and gen.family == "f":
        phase = gen.sign * (-1 if mu.level % 2 else 1)
    for target, value in terms:
        if target.top[0] > sig.p or target.level > sig.level_cap:
            continue  # outside V(p) or above the truncation
        yield target, (value if phase > 0 else -value)


def apply(gen: GeneratorLabel, v: Mapping[GZPattern, RadicalSum], sig: Signature,
          route: str = "twist") -> dict[GZPattern, RadicalSum]:
    """Action of a generator on a linear combination of basis patterns.

    ``route="twist"`` builds pso generators as phase twists of the osp
    ones; ``route="gtilde"`` feeds the twisted reduced elements through the
    CGC sums instead (identical to ``"twist"`` for osp).
    """
    _check_label(gen, sig)
    if route not in ("twist", "gtilde"):
        raise ValueError(f"unknown route {route!r}")
    if route == "gtilde" and gen.variant == "osp":
        route = "twist"
    out: dict[GZPattern, RadicalSum] = {}
    for mu, coeff in v.items():
        if not coeff:
            continue
        for target, value in _basis_action(gen, mu, sig, route):
            total = out.get(target, ZERO) + coeff * value
            if total:
                out[target] = total
            else:
                out.pop(target, None)
    return out


# ---------------------------------------------------------------- matrices

Column = dict[GZPattern, RadicalSum]


def _add_deg(a: Degree, b: Degree) -> Degree:
    return ((a[0] + b[0]) % 2, (a[1] + b[1]) % 2)


def _dot(a: Degree, b: Degree) -> int:
    return a[0] * b[0] + a[1] * b[1]


class OperatorMatrix:
    """Sparse exact operator on a truncated basis, stored by columns.

    ``max_level`` records the highest source level whose column is
    trustworthy (complete); columns above it are simply absent.
    """

    def __init__(self, sig: Signature, columns: Mapping[GZPattern, Column], degree: Degree,
                 level_shift: int | None, max_level: int | None = None, name: str = ""):
        self.sig = sig
        self.columns = {c: dict(col) for c, col in columns.items() if col}
        self.degree = degree
        self.level_shift = level_shift
        self.max_level = sig.level_cap if max_level is None else max_level
        self.name = name

    def entry(self, row: GZPattern, col: GZPattern) -> RadicalSum:
        return self.columns.get(col, {}).get(row, ZERO)

    def entries(self):
        order = _basis_position(self.sig)
        for col in sorted(self.columns, key=order.__getitem__):
            for row in sorted(self.columns[col], key=order.__getitem__):
                yield row, col, self.columns[col][row]

    def nnz(self) -> int:
        return sum(len(c) for c in self.columns.values())

    def is_zero(self) -> bool:
        return not self.columns

    def restrict(self, max_level: int) -> "OperatorMatrix":
        cols = {c: col for c, col in self.columns.items() if c.level <= max_level}
        return OperatorMatrix(self.sig, cols, self.degree, self.level_shift,
                              min(max_level, self.max_level), self.name)

    def transpose(self) -> "OperatorMatrix":
        cols: dict[GZPattern, Column] = {}
        for c, col in self.columns.items():
            for r, v in col.items():
                cols.setdefault(r, {})[c] = v
        shift = None if self.level_shift is None else -self.level_shift
        return OperatorMatrix(self.sig, cols, self.degree, shift, self.max_level, f"({self.name})^T")

    def _check(self, other: "OperatorMatrix"):
        if self.sig != other.sig:
            raise ValueError("operators live on different signatures")

    def __matmul__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        self._check(other)
        cols: dict[GZPattern, Column] = {}
        for c, col in other.columns.items():
            acc: Column = {}
            for mid, w in col.items():
                for r, v in self.columns.get(mid, {}).items():
                    total = acc.get(r, ZERO) + v * w
                    if total:
                        acc[r] = total
                    else:
                        acc.pop(r, None)
            if acc:
                cols[c] = acc
        shift = None
        if self.level_shift is not None and other.level_shift is not None:
            shift = self.level_shift + other.level_shift
        return OperatorMatrix(self.sig, cols, _add_deg(self.degree, other.degree), shift,
                              other.max_level, f"{self.name}*{other.name}")

    def _combine(self, other: "OperatorMatrix", sign: int) -> "OperatorMatrix":
        self._check(other)
        cols = {c: dict(col) for c, col in self.columns.items()}
        for c, col in other.columns.items():
            acc = cols.setdefault(c, {})
            for r, v in col.items():
                total = acc.get(r, ZERO) + (v if sign > 0 else -v)
                if total:
                    acc[r] = total
                else:
                    acc.pop(r, None)
        shift = self.level_shift if not self.is_zero() else other.level_shift
        deg = self.degree if not self.is_zero() else other.degree
        return OperatorMatrix(self.sig, cols, deg, shift, min(self.max_level, other.max_level))

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def scale(self, factor) -> "OperatorMatrix":
        factor = RadicalSum.coerce(factor)
        if not factor:
            return OperatorMatrix(self.sig, {}, self.degree, self.level_shift, self.max_level)
        cols = {c: {r: v * factor for r, v in col.items()} for c, col in self.columns.items()}
        return OperatorMatrix(self.sig, cols, self.degree, self.level_shift, self.max_level, self.name)

    def __neg__(self):
        return self.scale(-1)

    def __eq__(self, other):
        if not isinstance(other, OperatorMatrix):
            return NotImplemented
        return self.sig == other.sig and self.columns == other.columns

    def diff_entry(self, other: "OperatorMatrix"):
        """First entry (in basis order) where two matrices differ, else ``None``."""
        d = self - other
        for row, col, v in d.entries():
            return row, col, v
        return None

    def to_json_obj(self) -> dict:
        order = _basis_position(self.sig)
        return {
            "name": self.name,
            "m": self.sig.m, "n": self.sig.n, "p": self.sig.p, "level_cap": self.sig.level_cap,
            "degree": list(self.degree),
            "level_shift": self.level_shift,
            "basis": [b.to_json_obj() for b in _basis_list(self.sig)],
            "entries": [
                {"row": order[r], "col": order[c], "value": v.to_json_obj()}
                for r, c, v in self.entries()
            ],
        }

    def __repr__(self):
        return f"OperatorMatrix({self.name or '?'}, nnz={self.nnz()}, degree={self.degree})"


@lru_cache(maxsize=64)
def _basis_list(sig: Signature) -> tuple[GZPattern, ...]:
    return tuple(basis(sig))


@lru_cache(maxsize=64)
def _basis_position(sig: Signature) -> dict[GZPattern, int]:
    return {b: i for i, b in enumerate(_basis_list(sig))}


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("PARASTAT_THREADS", "1")))
    except ValueError:
        return 1


@lru_cache(maxsize=512)
def _matrix_cached(gen: GeneratorLabel, sig: Signature, route: str) -> OperatorMatrix:
    patterns = _basis_list(sig)

    def column(mu):
        return mu, dict(_basis_action(gen, mu, sig, route))

    workers = _threads()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(column, patterns))
    else:
        results = [column(mu) for mu in patterns]
    cols = {mu: col for mu, col in results if col}
    return OperatorMatrix(sig, cols, gen.degree, gen.sign, sig.level_cap, str(gen))


def matrix(gen: GeneratorLabel, sig: Signature, route: str = "twist") -> OperatorMatrix:
    """Matrix of a generator on ``basis(sig)``; column ``mu`` is ``gen |mu)``."""
    _check_label(gen, sig)
    if route == "gtilde" and gen.variant == "osp":
        route = "twist"
    return _matrix_cached(gen, sig, route)


def identity(sig: Signature, max_level: int | None = None) -> OperatorMatrix:
    cap = sig.level_cap if max_level is None else max_level
    cols = {b: {b: ONE} for b in _basis_list(sig) if b.level <= cap}
    return OperatorMatrix(sig, cols, (0, 0), 0, cap, "1")


def bracket(A: OperatorMatrix, B: OperatorMatrix, max_level: int | None = None) -> OperatorMatrix:
    """Graded bracket ``AB - (-1)^{deg A . deg B} BA``.

    With ``max_level`` the result is computed only on source columns up to
    that level (the caller guarantees the inputs are complete enough).
    """
    A._check(B)
    if max_level is not None:
        Ar, Br = A.restrict(max_level), B.restrict(max_level)
    else:
        Ar, Br = A, B
    sign = -1 if _dot(A.degree, B.degree) % 2 else 1
    ab = A @ Br
    ba = B @ Ar
    out = ab - ba if sign > 0 else ab + ba
    out.degree = _add_deg(A.degree, B.degree)
    if A.level_shift is not None and B.level_shift is not None:
        out.level_shift = A.level_shift + B.level_shift
    out.max_level = min(x for x in (max_level, A.max_level, B.max_level) if x is not None)
    op = "{" if sign < 0 else "["
    out.name = f"{op}{A.name},{B.name}{'}' if sign < 0 else ']'}"
    return out


# ------------------------------------------------------- words of brackets


@dataclass(frozen=True)
class Gen:
    label: GeneratorLabel


@dataclass(frozen=True)
class Bracket:
    left: object
    right: object


def depth(expr) -> int:
    if isinstance(expr, Gen):
        return 1
    return depth(expr.left) + depth(expr.right)


def evaluate(expr, sig: Signature, max_level: int, route: str = "twist",
             cache: dict | None = None) -> OperatorMatrix:
    """Exact matrix of a bracket word on source levels ``<= max_level``.

    Sub-words are evaluated on the larger source range they are applied to,
    so no truncated column ever enters the result.
    """
    if cache is None:
        cache = {}
    key = (expr, max_level, route)
    if key in cache:
        return cache[key]
    if max_level + depth(expr) > sig.level_cap:
        raise ValueError(
            f"word of depth {depth(expr)} cannot be checked on level {max_level} "
            f"with level_cap {sig.level_cap}"
        )
    if isinstance(expr, Gen):
        out = matrix(expr.label, sig, route).restrict(max_level)
    else:
        A = evaluate(expr.left, sig, max_level + depth(expr.right), route, cache)
        B = evaluate(expr.right, sig, max_level + depth(expr.left), route, cache)
        out = bracket(A, B, max_level)
    cache[key] = out
    return out


# ---------------------------------------------------------- verification


def _first_entry(M: OperatorMatrix):
    for row, col, v in M.entries():
        return {"row": row.to_json_obj(), "col": col.to_json_obj(), "value": str(v)}
    return None


def _sgn(s: int) -> str:
    return "+" if s > 0 else "-"


def relation_specs(m: int, n: int, variant: str):
    """Yield ``(name, indices, signs, lhs_expr, rhs_terms)`` for every triple relation.

    rhs terms are ``(coefficient, label)`` pairs.
    """
    L = lambda fam, i, s: GeneratorLabel(fam, i, s, variant)  # noqa: E731
    signs = (1, -1)
    rng = {"f": range(1, m + 1), "b": range(1, n + 1)}

    def triples(fa, fb, fc):
        for j in rng[fa]:
            for k in rng[fb]:
                for l in rng[fc]:  # noqa: E741
                    for xi, eta, eps in itertools.product(signs, repeat=3):
                        yield j, k, l, xi, eta, eps

    # parafermion triple relation
    for j, k, l, xi, eta, eps in triples("f", "f", "f"):
        rhs = []
        if k == l and abs(eps - eta):
            rhs.append((abs(eps - eta), L("f", j, xi)))
        if j == l and abs(eps - xi):
            rhs.append((-abs(eps - xi), L("f", k, eta)))
        yield ("fff", (j, k, l), (xi, eta, eps),
               Bracket(Bracket(Gen(L("f", j, xi)), Gen(L("f", k, eta))), Gen(L("f", l, eps))), rhs)
    # paraboson triple relation
    for j, k, l, xi, eta, eps in triples("b", "b", "b"):
        rhs = []
        if j == l and eps - xi:
            rhs.append((eps - xi, L("b", k, eta)))
        if k == l and eps - eta:
            rhs.append((eps - eta, L("b", j, xi)))
        yield ("bbb", (j, k, l), (xi, eta, eps),
               Bracket(Bracket(Gen(L("b", j, xi)), Gen(L("b", k, eta))), Gen(L("b", l, eps))), rhs)
    # mixed relations
    for j, k, l, xi, eta, eps in triples("f", "f", "b"):
        yield ("ffb", (j, k, l), (xi, eta, eps),
               Bracket(Bracket(Gen(L("f", j, xi)), Gen(L("f", k, eta))), Gen(L("b", l, eps))), [])
    for j, k, l, xi, eta, eps in triples("b", "b", "f"):
        yield ("bbf", (j, k, l), (xi, eta, eps),
               Bracket(Bracket(Gen(L("b", j, xi)), Gen(L("b", k, eta))), Gen(L("f", l, eps))), [])
    for j, k, l, xi, eta, eps in triples("f", "b", "f"):
        rhs = []
        if j == l and abs(eps - xi):
            c = abs(eps - xi)
            rhs.append((-c if variant == "osp" else c, L("b", k, eta)))
        yield ("fbf", (j, k, l), (xi, eta, eps),
               Bracket(Bracket(Gen(L("f", j, xi)), Gen(L("b", k, eta))), Gen(L("f", l, eps))), rhs)
    for j, k, l, xi, eta, eps in triples("f", "b", "b"):
        rhs = []
        if k == l and eps - eta:
            rhs.append((eps - eta, L("f", j, xi)))
        yield ("fbb", (j, k, l), (xi, eta, eps),
               Bracket(Bracket(Gen(L("f", j, xi)), Gen(L("b", k, eta))), Gen(L("b", l, eps))), rhs)


def bracket_kinds(expr) -> str:
    """'[' or '{' for the inner and outer brackets, from the degrees."""
    inner = expr.left
    d1 = _dot(inner.left.label.degree, inner.right.label.degree) % 2
    dinner = _add_deg(inner.left.label.degree, inner.right.label.degree)
    d2 = _dot(dinner, expr.right.label.degree) % 2
    return ("{" if d1 else "[") + ("{" if d2 else "[")


# printed bracket types of the triple relations, per variant
EXPECTED_KINDS = {
    "osp": {"fff": "[[", "bbb": "{[", "ffb": "[[", "bbf": "{[", "fbf": "[[", "fbb": "[{"},
    "pso": {"fff": "[[", "bbb": "{[", "ffb": "[[", "bbf": "{[", "fbf": "{{", "fbb": "{["},
}


def verify_relations(sig: Signature, variant: str, route: str = "twist") -> dict:
    """Check every triple relation on source levels ``<= level_cap - 3``.

    Returns ``{"ok": bool, "checked": int, "results": [...]}``; each result
    records the relation family, indices, signs, status and, on failure,
    the first nonzero entry of LHS - RHS.
    """
    if sig.level_cap < 3:
        raise ValueError("relation checks need level_cap >= 3")
    top = sig.level_cap - 3
    cache: dict = {}
    results = []
    ok = True
    for name, idx, signs, lhs_expr, rhs in relation_specs(sig.m, sig.n, variant):
        kinds = bracket_kinds(lhs_expr)
        if kinds != EXPECTED_KINDS[variant][name]:
            raise AssertionError(f"{name}: graded bracket gives {kinds}, relation uses "
                                 f"{EXPECTED_KINDS[variant][name]}")
        lhs = evaluate(lhs_expr, sig, top, route, cache)
        residual = lhs
        for coeff, label in rhs:
            residual = residual - matrix(label, sig, route).restrict(top).scale(coeff)
        status = "ok" if residual.is_zero() else "violated"
        entry = {"relation": name, "indices": list(idx), "signs": [_sgn(s) for s in signs],
                 "status": status}
        if status != "ok":
            ok = False
            entry["counterexample"] = _first_entry(residual)
        results.append(entry)
    return {"suite": f"relations-{variant}", "ok": ok, "checked": len(results),
            "max_source_level": top, "results": results}


def _quadratic(a: GeneratorLabel, b: GeneratorLabel, sig: Signature, max_level: int) -> OperatorMatrix:
    """``[[a, b]]`` for a raising/lowering pair, exact on levels ``<= level_cap - 1``."""
    if max_level > sig.level_cap - 1:
        raise ValueError(f"quadratic operators are exact only up to level {sig.level_cap - 1}")
    return bracket(matrix(a, sig), matrix(b, sig), max_level)


def gl_generators(sig: Signature, variant: str = "pso",
                  max_level: int | None = None) -> dict[tuple[int, int], OperatorMatrix]:
    """``E_jk = 1/2 [[c_j^+, c_k^-]]`` (graded bracket) on levels ``<= max_level``."""
    cap = sig.level_cap - 1 if max_level is None else max_level
    r = sig.r
    half = Fraction(1, 2)
    out = {}
    for j in range(1, r + 1):
        for k in range(1, r + 1):
            a = _label_for(j, 1, sig, variant)
            b = _label_for(k, -1, sig, variant)
            E = _quadratic(a, b, sig, cap).scale(half)
            E.name = f"E{j},{k}"
            out[(j, k)] = E
    return out


def _label_for(j: int, sign: int, sig: Signature, variant: str) -> GeneratorLabel:
    if j <= sig.m:
        return GeneratorLabel("f", j, sign, variant)
    return GeneratorLabel("b", j - sig.m, sign, variant)


def verify_gl_embedding(sig: Signature, variant: str = "pso") -> dict:
    """gl(m|n) commutation relations of the E_jk and the Cartan weights."""
    if sig.level_cap < 2:
        raise ValueError("gl(m|n) checks need level_cap >= 2")
    top = sig.level_cap - 2
    m, r = sig.m, sig.r
    Es = gl_generators(sig, variant, top + 1)
    Es_top = {key: M.restrict(top) for key, M in Es.items()}
    par = lambda i, j: (0 if (i <= m) == (j <= m) else 1)  # noqa: E731
    results = []
    ok = True
    for (i, j), (k, l) in itertools.product(Es, repeat=2):
        s = -1 if par(i, j) * par(k, l) else 1
        lhs = Es[(i, j)] @ Es_top[(k, l)]
        other = Es[(k, l)] @ Es_top[(i, j)]
        lhs = lhs - other if s > 0 else lhs + other
        rhs = OperatorMatrix(sig, {}, (0, 0), 0, top)
        if j == k:
            rhs = rhs + Es_top[(i, l)]
        if i == l:
            rhs = rhs - Es_top[(k, j)] if s > 0 else rhs + Es_top[(k, j)]
        residual = lhs - rhs
        status = "ok" if residual.is_zero() else "violated"
        entry = {"relation": "gl", "indices": [i, j, k, l], "signs": [], "status": status}
        if status != "ok":
            ok = False
            entry["counterexample"] = _first_entry(residual)
        results.append(entry)
    # Cartan elements against the pattern weights
    for i in range(1, r + 1):
        minus, plus = _label_for(i, -1, sig, variant), _label_for(i, 1, sig, variant)
        h = _quadratic(minus, plus, sig, top)
        h = h.scale(Fraction(-1, 2) if i <= m else Fraction(1, 2))
        expected = {b: {b: RadicalSum.rational(weight(b, sig)[i - 1])}
                    for b in _basis_list(sig) if b.level <= top}
        residual = h - OperatorMatrix(sig, expected, (0, 0), 0, top)
        status = "ok" if residual.is_zero() else "violated"
        entry = {"relation": "cartan-weight", "indices": [i], "signs": [], "status": status}
        if status != "ok":
            ok = False
            entry["counterexample"] = _first_entry(residual)
        results.append(entry)
    return {"suite": f"gl-embedding-{variant}", "ok": ok, "checked": len(results),
            "max_source_level": top, "results": results}


def verify_vacuum(sig: Signature, variant: str) -> dict:
    """Annihilators kill the vacuum and <0| c_j^- c_k^+ |0> = p delta_jk."""
    vac = vacuum(sig.m, sig.n)
    results = []
    ok = True
    for j in range(1, sig.r + 1):
        lo = _label_for(j, -1, sig, variant)
        killed = not apply(lo, {vac: ONE}, sig)
        for k in range(1, sig.r + 1):
            up = _label_for(k, 1, sig, variant)
            v = apply(lo, apply(up, {vac: ONE}, sig), sig)
            value = v.get(vac, ZERO)
            good = value == (sig.p if j == k else 0)
            results.append({"relation": "vacuum-norm", "indices": [j, k], "signs": [],
                            "status": "ok" if good else "violated", "value": str(value)})
            ok &= good
        results.append({"relation": "vacuum-annihilated", "indices": [j], "signs": [],
                        "status": "ok" if killed else "violated"})
        ok &= killed
    return {"suite": f"vacuum-{variant}", "ok": ok, "checked": len(results), "results": results}


def verify_adjointness(sig: Signature, variant: str, route: str = "twist") -> dict:
    results = []
    ok = True
    for gen in generators(sig, variant):
        if gen.sign < 0:
            continue
        up = matrix(gen, sig, route)
        down = matrix(gen.adjoint(), sig, route)
        diff = down.diff_entry(up.transpose())
        entry = {"relation": "adjoint", "indices": [gen.unified(sig.m)], "signs": [],
                 "status": "ok" if diff is None else "violated"}
        if diff is not None:
            ok = False
            entry["counterexample"] = {"row": str(diff[0]), "col": str(diff[1]), "value": str(diff[2])}
        results.append(entry)
    return {"suite": f"adjoint-{variant}", "ok": ok, "checked": len(results), "results": results}


def verify_cartan(sig: Signature, variant: str = "osp") -> dict:
    """``[[c_r^-, c_r^+]]`` is diagonal with ``p + 2(rowsum_r - rowsum_{r-1})``."""
    top = sig.level_cap - 1
    r = sig.r
    lo, up = _label_for(r, -1, sig, variant), _label_for(r, 1, sig, variant)
    M = _quadratic(lo, up, sig, top)
    expected = {b: {b: RadicalSum.rational(sig.p + 2 * (b.row_sum(r) - b.row_sum(r - 1)))}
                for b in _basis_list(sig) if b.level <= top}
    residual = M - OperatorMatrix(sig, expected, (0, 0), 0, top)
    ok = residual.is_zero()
    return {"suite": f"cartan-recurrence-{variant}", "ok": ok, "checked": len(expected),
            "max_source_level": top, "counterexample": _first_entry(residual)}


def verify_phase_link(sig: Signature) -> dict:
    """pso matrices against osp ones, and the twisted-G route against the twist."""
    results = []
    ok = True
    for gen in generators(sig, "osp"):
        osp = matrix(gen, sig)
        pso_gen = GeneratorLabel(gen.family, gen.index, gen.sign, "pso")
        pso = matrix(pso_gen, sig)
        if gen.family == "f":
            cols = {c: {r: (v if gen.sign * (-1) ** c.level > 0 else -v) for r, v in col.items()}
                    for c, col in osp.columns.items()}
            expected = OperatorMatrix(sig, cols, pso.degree, pso.level_shift)
        else:
            expected = osp
        diff = pso.diff_entry(expected)
        results.append({"relation": "twist", "indices": [gen.unified(sig.m)],
                        "signs": [_sgn(gen.sign)], "status": "ok" if diff is None else "violated"})
        ok &= diff is None
        gt = matrix(pso_gen, sig, "gtilde")
        diff = gt.diff_entry(pso)
        entry = {"relation": "gtilde-route", "indices": [gen.unified(sig.m)],
                 "signs": [_sgn(gen.sign)], "status": "ok" if diff is None else "violated"}
        if diff is not None:
            entry["counterexample"] = {"row": str(diff[0]), "col": str(diff[1]), "value": str(diff[2])}
        results.append(entry)
        ok &= diff is None
    return {"suite": "phase-link", "ok": ok, "checked": len(results), "results": results}


def verify_nilpotency(sig: Signature) -> dict:
    """``{f~_j^+, b~_k^+}^2 = 0`` on levels ``<= level_cap - 4``."""
    top = sig.level_cap - 4
    results = []
    ok = True
    for j in range(1, sig.m + 1):
        for k in range(1, sig.n + 1):
            X = Bracket(Gen(GeneratorLabel("f", j, 1, "pso")), Gen(GeneratorLabel("b", k, 1, "pso")))
            outer = evaluate(X, sig, top + 2)
            inner = evaluate(X, sig, top)
            sq = outer @ inner
            results.append({"relation": "nilpotent", "indices": [j, k], "signs": [],
                            "status": "ok" if sq.is_zero() else "violated"})
            ok &= sq.is_zero()
    return {"suite": "nilpotency", "ok": ok, "checked": len(results), "results": results}


# ----------------------------------------------------- m = n = 1 closed forms


def _closed_G1(a: int, b: int, p: int) -> RadicalSum:
    if b % 2 == 0:
        if a + b == 0:
            # only the vacuum; fixed by the vacuum norm <0|f^- f^+|0> = p
            return RadicalSum.sqrt(p)
        return RadicalSum.sqrt(Fraction(a * (a + b + 1) * (p - a), a + b))
    return RadicalSum.sqrt(a * (p - a))


def _closed_G2(a: int, b: int, p: int) -> RadicalSum:
    if b % 2 == 0:
        return RadicalSum.sqrt(a + b + 1)
    return RadicalSum.sqrt(Fraction((b + 1) * (p + b + 1), a + b))


def closed_form_action(gen: str, mu: GZPattern, p: int) -> dict[GZPattern, RadicalSum]:
    """Closed-form osp(3|2) action of ``f+``, ``f-``, ``b+`` or ``b-`` on ``mu``."""
    a, b = mu.top
    low = mu.rows[1][0]
    P = lambda x, y, z: GZPattern(1, 1, ((x, y), (z,)))  # noqa: E731
    sq = RadicalSum.sqrt
    G1, G2 = (lambda x, y: _closed_G1(x, y, p)), (lambda x, y: _closed_G2(x, y, p))
    terms: list[tuple[GZPattern, Callable[[], RadicalSum]]] = []
    if gen == "f+":
        if low == a:
            terms = [(P(a + 1, b, a + 1), lambda: G1(a, b))]
        else:
            terms = [(P(a + 1, b, a), lambda: sq(Fraction(a + b, a + b + 1)) * G1(a, b)),
                     (P(a, b + 1, a), lambda: -sq(Fraction(1, a + b + 1)) * G2(a, b))]
    elif gen == "b+":
        if low == a:
            terms = [(P(a + 1, b, a), lambda: sq(Fraction(1, a + b + 1)) * G1(a, b)),
                     (P(a, b + 1, a), lambda: sq(Fraction(a + b, a + b + 1)) * G2(a, b))]
        else:
            terms = [(P(a, b + 1, a - 1), lambda: -G2(a, b))]
    elif gen == "f-":
        if low == a:
            terms = [(P(a - 1, b, a - 1), lambda: G1(a - 1, b)),
                     (P(a, b - 1, a - 1), lambda: -sq(Fraction(1, a + b)) * G2(a, b - 1))]
        else:
            terms = [(P(a - 1, b, a - 2), lambda: sq(Fraction(a + b - 1, a + b)) * G1(a - 1, b))]
    elif gen == "b-":
        if low == a:
            terms = [(P(a, b - 1, a), lambda: sq(Fraction(a + b - 1, a + b)) * G2(a, b - 1))]
        else:
            terms = [(P(a - 1, b, a - 1), lambda: sq(Fraction(1, a + b)) * G1(a - 1, b)),
                     (P(a, b - 1, a - 1), lambda: -G2(a, b - 1))]
    else:
        raise ValueError(gen)
    out = {}
    for target, value in terms:
        # terms leaving V(p) are deleted
        if min(target.rows[0] + target.rows[1]) < 0 or target.top[0] > p or not is_valid(target):
            continue
        v = value()
        if v:
            out[target] = v
    return out


def verify_closed_form(p: int, level_cap: int) -> dict:
    """Compare the general construction at m = n = 1 against the closed forms."""
    sig = Signature(1, 1, p, level_cap)
    results = []
    ok = True
    for spec in ("f+", "f-", "b+", "b-"):
        label = GeneratorLabel.parse(spec[0] + "1" + spec[1])
        pso_label = GeneratorLabel(label.family, 1, label.sign, "pso")
        bad = None
        bad_pso = None
        for mu in _basis_list(sig):
            expected = {t: v for t, v in closed_form_action(spec, mu, p).items() if t.level <= level_cap}
            got = apply(label, {mu: ONE}, sig)
            if got != expected and bad is None:
                bad = {"pattern": str(mu), "expected": {str(k): str(v) for k, v in expected.items()},
                       "got": {str(k): str(v) for k, v in got.items()}}
            phase = label.sign * (-1) ** mu.level if label.family == "f" else 1
            twisted = {t: (v if phase > 0 else -v) for t, v in expected.items()}
            if apply(pso_label, {mu: ONE}, sig) != twisted and bad_pso is None:
                bad_pso = {"pattern": str(mu)}
        for name, b in ((f"{spec} osp", bad), (f"{spec} pso", bad_pso)):
            entry = {"relation": "closed-form", "indices": [name], "signs": [],
                     "status": "ok" if b is None else "violated"}
            if b is not None:
                ok = False
                entry["counterexample"] = b
            results.append(entry)
    # the two printed mixed identities
    top = level_cap - 3
    if top >= 0:
        for variant, coeff in (("osp", -2), ("pso", 2)):
            for s in (1, -1):
                f_up = GeneratorLabel("f", 1, 1, variant)
                f_dn = GeneratorLabel("f", 1, -1, variant)
                bl = GeneratorLabel("b", 1, s, variant)
                expr = Bracket(Bracket(Gen(f_up), Gen(bl)), Gen(f_dn))
                res = evaluate(expr, sig, top) - matrix(bl, sig).restrict(top).scale(coeff)
                good = res.is_zero()
                results.append({"relation": f"fbf-{variant}", "indices": [1, 1, 1],
                                "signs": ["+", _sgn(s), "-"], "status": "ok" if good else "violated"})
                ok &= good
    return {"suite": "closed-form", "ok": ok, "checked": len(results), "results": results}
