import itertools
from collections import defaultdict
from fractions import Fraction

import pytest

from parastat.exactnum import ONE, ZERO, RadicalSum
from parastat.gzbasis import GZPattern, Signature, basis, enumerate_with_top, top_rows, vacuum
from parastat.isoscalar import (
    S,
    cgc,
    cgc_factors,
    iso_classical,
    iso_case,
    l_coord,
    raising_transitions,
    transition_between,
)
from oracles import signed_square


def P(m, n, *rows):
    return GZPattern(m, n, tuple(tuple(r) for r in rows))


def test_l_coordinates():
    pat = P(1, 1, (2, 1), (1,))
    # first m labels: mu - i + m + 1, the rest: -mu + i - m
    assert l_coord(pat, 1, 2) == 3
    assert l_coord(pat, 2, 2) == 0
    assert l_coord(pat, 1, 1) == 2
    assert S(1, 2) == 1 and S(2, 1) == -1 and S(1, 1) == 1


def test_l_strictly_decreasing_on_fermionic_labels():
    for b in basis(Signature(3, 1, 3, 3)):
        for s in range(3, 5):
            ls = [l_coord(b, i, s) for i in range(1, 4)]
            assert ls == sorted(ls, reverse=True) and len(set(ls)) == 3


def test_case_dispatch():
    assert iso_case(1, 1, 1, None) == "even-end"
    assert iso_case(2, 2, 1, 2) == "even"
    assert iso_case(1, 2, 1, None) == "f-end"
    assert iso_case(1, 2, 2, None) == "b-end"
    assert iso_case(2, 3, 1, 2) == "f-f"
    assert iso_case(2, 4, 2, 3) == "f-b"
    assert iso_case(1, 2, 2, 1) == "b-f"
    assert iso_case(1, 3, 3, 2) == "b-b"


def test_classical_row_one_is_one():
    # [TRIVIAL] empty products
    assert iso_classical("even-end", 1, None, 1, vacuum(1, 1)) == ONE


def test_cgc_examples():
    vac = vacuum(1, 1)
    # [DERIVED] a single path out of the vacuum has unit coefficient
    f_path = transition_between(vac, P(1, 1, (1, 0), (1,)))
    b_path = transition_between(vac, P(1, 1, (1, 0), (0,)))
    assert f_path.j == 1 and b_path.j == 2
    assert cgc(f_path) == ONE
    assert cgc(b_path) == ONE
    # [TRIVIAL] two labels changed in one row is not a single-box path
    assert transition_between(vac, P(1, 1, (1, 1), (1,))) is None
    # a changed row below an unchanged one
    assert transition_between(P(2, 1, (1, 0, 0), (1, 0), (0,)), P(2, 1, (2, 0, 0), (1, 0), (1,))) is None
    assert transition_between(P(2, 1, (1, 0, 0), (1, 0), (0,)), P(2, 1, (2, 0, 0), (1, 1), (0,))).j == 2


def test_vacuum_adjacent_boson_factor_is_unit():
    # [DERIVED] unitarity: the boson label of 1,0 / 0 has a single way up
    tr = transition_between(P(1, 1, (1, 0), (0,)), P(1, 1, (1, 1), (0,)))
    factors = cgc_factors(tr)
    assert [f for f, _, _ in factors] == ["theta-sign", "b-end"]
    assert signed_square(factors[1][2])[1] == 1
    tags = [f for f, _, _ in cgc_factors(transition_between(vacuum(1, 1), P(1, 1, (1, 0), (0,))))]
    assert tags == ["theta-sign", "f-end"]


def coefficient_table(a, b, fill):
    """CGC (sign, square) for m = n = 1 read off the explicit two-label actions.

    Keys are (j, target); j = 1 raises through the fermion row, j = 2 stops above it.
    """
    s = a + b
    out = {}
    if fill == a:
        out[(1, (a + 1, b, a + 1))] = (1, Fraction(1))
        out[(2, (a + 1, b, a))] = (1, Fraction(1, s + 1))
        out[(2, (a, b + 1, a))] = (1, Fraction(s, s + 1))
    else:
        out[(1, (a + 1, b, a))] = (1, Fraction(s, s + 1))
        out[(1, (a, b + 1, a))] = (-1, Fraction(1, s + 1))
        out[(2, (a, b + 1, a - 1))] = (-1, Fraction(1))
    return out


def test_two_label_coefficients_match_explicit_actions():
    # [PAPER] coefficient functions in the explicit m = n = 1 actions, level <= 8
    sig = Signature(1, 1, 9, 8)
    for src in basis(sig):
        a, b = src.top
        fill = src.rows[1][0]
        table = coefficient_table(a, b, fill)
        got = {}
        for j in (1, 2):
            for tr in raising_transitions(src, j):
                t = tr.target
                got[(j, (t.top[0], t.top[1], t.rows[1][0]))] = signed_square(cgc(tr))
        want = {k: v for k, v in table.items() if v[1] != 0}
        assert got == want, (src, got, want)


def cg_matrix(m, n, top, p=50):
    """Columns: target patterns; rows: (source pattern, j)."""
    sig = Signature(m, n, p, sum(top) + 1)
    cols = defaultdict(dict)
    for src in enumerate_with_top(top, sig):
        for j in range(1, m + n + 1):
            for tr in raising_transitions(src, j):
                cols[tr.target][(src, j)] = cgc(tr)
    return cols


@pytest.mark.parametrize("m, n, max_level", [(1, 1, 4), (2, 1, 3), (1, 2, 3), (2, 2, 2), (3, 1, 2)])
def test_cg_matrix_is_orthogonal(m, n, max_level):
    # [DERIVED] the coupled basis is orthonormal, so the CG matrix has orthonormal columns
    for level in range(max_level + 1):
        for top in top_rows(m, n, level):
            cols = cg_matrix(m, n, top)
            for x, y in itertools.combinations_with_replacement(list(cols), 2):
                dot = ZERO
                for key, v in cols[x].items():
                    if key in cols[y]:
                        dot = dot + v * cols[y][key]
                assert dot == (ONE if x == y else ZERO), (top, x, y, dot)


@pytest.mark.parametrize("m, n, max_level", [(1, 1, 4), (2, 1, 4), (1, 2, 4), (2, 2, 3)])
def test_row_unitarity(m, n, max_level):
    # the product vector |mu> x e_j has unit norm on the untruncated module
    sig = Signature(m, n, max_level + 2, max_level)
    for src in basis(sig):
        for j in range(1, m + n + 1):
            total = ZERO
            for tr in raising_transitions(src, j):
                total = total + cgc(tr) * cgc(tr)
            assert total == ONE, (src, j, total)


def test_every_factor_is_a_signed_radical():
    for src in basis(Signature(2, 2, 3, 3)):
        for j in range(1, 5):
            for tr in raising_transitions(src, j):
                for tag, row, v in cgc_factors(tr):
                    assert len(v.terms) <= 1
                    assert (v * v).is_rational()
                    if tag == "theta-sign":
                        assert v in (ONE, -ONE) and row == 0


def test_factors_multiply_to_cgc():
    for src in basis(Signature(2, 1, 3, 3)):
        for j in range(1, 4):
            for tr in raising_transitions(src, j):
                prod = ONE
                for _, _, v in cgc_factors(tr):
                    prod = prod * v
                assert prod == cgc(tr)


def test_factor_rows_run_from_top_to_j():
    tr = next(raising_transitions(vacuum(2, 2), 1))
    rows = [row for _, row, _ in cgc_factors(tr)]
    assert rows == [0, 4, 3, 2, 1]
    assert isinstance(cgc(tr), RadicalSum)
