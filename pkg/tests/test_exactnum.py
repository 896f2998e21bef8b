import json
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from parastat.exactnum import (
    ONE,
    ZERO,
    FactorizationLimit,
    NegativeRadicand,
    Radical,
    RadicalSum,
    add,
    mul,
    sqrt_normalize,
    squarefree_decompose,
    to_float,
)
from oracles import squarefree_part


s2 = RadicalSum.sqrt(2)
s3 = RadicalSum.sqrt(3)


# [TRIVIAL] normalization examples
@pytest.mark.parametrize("q, coeff, rad", [
    (8, 2, 2),
    (0, 0, 1),
    (Fraction(9, 2), Fraction(3, 2), 2),
    (1, 1, 1),
    (Fraction(1, 3), Fraction(1, 3), 3),
    (72, 6, 2),
])
def test_sqrt_normalize_examples(q, coeff, rad):
    assert sqrt_normalize(q) == Radical(Fraction(coeff), rad)


def test_sqrt_normalize_negative():
    with pytest.raises(NegativeRadicand):
        sqrt_normalize(-1)


def test_factorization_bound():
    big = 1_000_003 * 1_000_033  # two primes above the bound
    with pytest.raises(FactorizationLimit):
        squarefree_decompose(big, bound=1000)


def test_radical_rejects_square_factor():
    with pytest.raises(ValueError):
        Radical(Fraction(1), 8)


# [TRIVIAL] add / mul examples
def test_add_examples():
    assert add(add(s2, RadicalSum.sqrt(8)), s2 * -3) == ZERO
    assert add(RadicalSum({3: Fraction(1, 2)}), RadicalSum({3: Fraction(1, 3)})) == RadicalSum({3: Fraction(5, 6)})
    assert (s2 + s3).terms == {2: 1, 3: 1}


def test_mul_examples():
    assert mul(s2, s2) == RadicalSum.rational(2)
    assert mul(s2, RadicalSum.sqrt(6)) == RadicalSum({3: 2})
    assert mul(ONE + s2, ONE - s2) == RadicalSum.rational(-1)


def test_to_float_examples():
    assert to_float(s2) == pytest.approx(1.41421356, abs=1e-8)
    assert to_float(ZERO) == 0.0
    assert to_float(RadicalSum.rational(2) + RadicalSum.sqrt(1)) == 3.0


def test_zero_is_empty_map():
    assert ZERO.terms == {}
    assert not (s2 - s2)
    assert (s2 - s2) == ZERO


def test_non_squarefree_keys_are_folded():
    assert RadicalSum({12: 1}) == RadicalSum({3: 2})


def test_json_canonical_order():
    x = RadicalSum({5: Fraction(-1, 2), 2: 3})
    obj = x.to_json_obj()
    assert obj == {"terms": [{"num": 3, "den": 1, "radicand": 2}, {"num": -1, "den": 2, "radicand": 5}]}
    assert RadicalSum.from_json(x.to_json()) == x
    assert json.loads(ZERO.to_json()) == {"terms": []}


def test_text_rendering():
    assert str(RadicalSum({2: Fraction(-1, 2)})) == "-1/2√2"
    assert str(ZERO) == "0"


def test_division_by_rational_and_zero():
    assert s2 / 2 == RadicalSum({2: Fraction(1, 2)})
    with pytest.raises(ZeroDivisionError):
        s2 / ZERO


# ------------------------------------------------------------- properties

radicands = st.sampled_from([1, 2, 3, 5, 6, 7, 10, 12, 18, 30])
coeffs = st.fractions(min_value=-20, max_value=20, max_denominator=12)
sums = st.dictionaries(radicands, coeffs, max_size=3).map(RadicalSum)


@settings(max_examples=400)
@given(sums, sums, sums)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + ZERO == a and a * ONE == a
    assert a - a == ZERO


@settings(max_examples=400)
@given(sums, sums)
def test_float_homomorphism(a, b):
    # [DERIVED] float evaluation commutes with the exact operations
    assert math.isclose(to_float(a * b), to_float(a) * to_float(b), rel_tol=1e-9, abs_tol=1e-9)
    assert math.isclose(to_float(a + b), to_float(a) + to_float(b), rel_tol=1e-9, abs_tol=1e-9)


@settings(max_examples=400)
@given(st.fractions(min_value=0, max_value=10**6, max_denominator=10**4))
def test_sqrt_normalize_property(q):
    r = sqrt_normalize(q)
    assert r.coefficient >= 0
    assert r.coefficient ** 2 * r.radicand == q
    # [DERIVED] radicand equals the square-free part found by plain trial division
    if q:
        assert r.radicand == squarefree_part(q.numerator * q.denominator)
        # idempotent on c^2 d
        assert sqrt_normalize(r.coefficient ** 2 * r.radicand) == r
        assert mul(r.to_sum(), r.to_sum()) == RadicalSum.rational(q)


@settings(max_examples=400)
@given(sums, sums)
def test_canonical_equality(a, b):
    assert (a - b == ZERO) == (a == b)
    assert (hash(a) == hash(b)) or a != b
