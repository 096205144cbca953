from __future__ import annotations

from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from logforms.poly import (
    DegreeMismatchError,
    FieldMismatchError,
    FieldSpec,
    Polynomial,
    monomials_of_degree,
    product,
    random_poly,
)

FP = FieldSpec.prime()
QQ = FieldSpec.rational()
SMALL = FieldSpec.prime(101)


def x(i, n=2, field=QQ):
    return Polynomial.variable(field, n, i)


# -- monomials -----------------------------------------------------------

def test_monomials_examples():
    assert monomials_of_degree(1, 2) == ((2, 0), (1, 1), (0, 2))
    assert len(monomials_of_degree(3, 2)) == 10
    assert monomials_of_degree(2, 0) == ((0, 0, 0),)


def test_monomials_grevlex_order():
    # degree 2 in three variables: x0^2 > x0x1 > x1^2 > x0x2 > x1x2 > x2^2
    assert monomials_of_degree(2, 2) == (
        (2, 0, 0), (1, 1, 0), (0, 2, 0), (1, 0, 1), (0, 1, 1), (0, 0, 2),
    )


@given(st.integers(0, 4), st.integers(0, 6))
def test_monomials_count(n, k):
    mons = monomials_of_degree(n, k)
    assert len(mons) == comb(n + k, n) == len(set(mons))
    assert all(sum(e) == k and len(e) == n + 1 for e in mons)


# -- arithmetic examples -------------------------------------------------

def test_arith_examples():
    assert x(0) * x(1) == Polynomial.from_terms(QQ, 2, {(1, 1, 0): 1})
    f = Polynomial.from_terms(QQ, 2, {(2, 1, 0): 1})
    assert f.diff(0) == Polynomial.from_terms(QQ, 2, {(1, 1, 0): 2})
    assert (x(0) + x(1)) + (-x(1)) == x(0)


def test_zero_keeps_degree():
    z = x(0) - x(0)
    assert z.is_zero() and z.degree == 1
    c = Polynomial.constant(QQ, 2, 5).diff(1)
    assert c.is_zero() and c.degree == -1
    assert x(1).diff(0).is_zero() and x(1).diff(0).degree == 0


def test_errors():
    with pytest.raises(DegreeMismatchError):
        x(0) + x(0) * x(1)
    with pytest.raises(FieldMismatchError):
        x(0) + x(0, field=FP)
    with pytest.raises(ValueError):
        random_poly(2, 0, QQ, 1)


def test_json_roundtrip():
    f = Polynomial.from_terms(QQ, 2, {(1, 0, 0): Fraction(-3, 7), (0, 0, 1): 5})
    obj = f.to_json()
    assert obj["degree"] == 1
    assert all(isinstance(t["coeff"], str) for t in obj["terms"])
    assert Polynomial.from_json(obj, QQ, 2) == f
    g = random_poly(3, 3, FP, 11)
    assert Polynomial.from_json(g.to_json(), FP, 3) == g


def test_field_parse():
    assert FieldSpec.parse("rational") == QQ
    assert FieldSpec.parse("prime:2147483647") == FP
    with pytest.raises(ValueError):
        FieldSpec.parse("prime:100")
    with pytest.raises(ValueError):
        FieldSpec.parse("reals")


def test_division():
    f = random_poly(2, 2, QQ, 3)
    g = random_poly(2, 1, QQ, 4)
    h = random_poly(2, 1, QQ, 5)
    assert (f * g).divisible_by(g)
    q, r = (f * g + h * h * h).divmod(g)
    assert q * g + r == f * g + h * h * h


# -- random_poly ---------------------------------------------------------

def test_random_poly_determinism():
    assert random_poly(3, 2, FP, 7) == random_poly(3, 2, FP, 7)
    assert random_poly(3, 2, QQ, 7) == random_poly(3, 2, QQ, 7)


def test_random_poly_density_rate():
    # sampled over 100 seeds: every linear form in 4 variables is dense
    full_fp = sum(len(random_poly(3, 1, FP, s)) == 4 for s in range(100))
    full_qq = sum(len(random_poly(3, 1, QQ, s)) == 4 for s in range(100))
    assert full_fp == 100
    assert full_qq == 100


def test_random_poly_collision_rate():
    polys = [random_poly(3, 2, FP, s) for s in range(100)]
    pairs = [(a, b) for a in range(100) for b in range(a + 1, 100)]
    distinct = sum(polys[a] != polys[b] for a, b in pairs)
    assert distinct == len(pairs)


def test_random_poly_qq_bound():
    f = random_poly(2, 3, QQ, 0, bound=5)
    assert all(-5 <= c <= 5 for _, c in f.items())


# -- properties ----------------------------------------------------------

seeds = st.integers(0, 2**64 - 1)
degs = st.integers(1, 3)
fields = st.sampled_from([FP, QQ, SMALL])


@settings(max_examples=1000)
@given(fields, st.integers(1, 3), degs, degs, seeds, seeds, st.integers(0, 3))
def test_homogeneity_preserved(field, n, k1, k2, s1, s2, i):
    a = random_poly(n, k1, field, s1)
    b = random_poly(n, k1, field, s2)
    c = random_poly(n, k2, field, s2)
    for p in (a + b, a - b, a * c, a.diff(min(i, n))):
        assert all(sum(e) == p.degree for e, _ in p.items())
    assert (a * c).degree == k1 + k2
    assert a.diff(min(i, n)).degree == k1 - 1


@given(fields, st.integers(1, 3), degs, seeds, seeds, seeds)
def test_ring_axioms(field, n, k, s1, s2, s3):
    a, b, c = (random_poly(n, k, field, s) for s in (s1, s2, s3))
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a + b == b + a


@given(fields, st.integers(1, 3), degs, seeds)
def test_euler_identity(field, n, k, s):
    g = random_poly(n, k, field, s)
    total = Polynomial.zero(field, n, k)
    for i in range(n + 1):
        total = total + g.diff(i).mul_var(i)
    assert total == g.scale(k)


@given(st.integers(1, 3), degs, seeds, seeds)
def test_reduction_commutes(n, k, s1, s2):
    a = random_poly(n, k, QQ, s1)
    b = random_poly(n, k, QQ, s2)
    for p in (SMALL, FP):
        assert (a + b).reduce_mod(p) == a.reduce_mod(p) + b.reduce_mod(p)
        assert (a * b).reduce_mod(p) == a.reduce_mod(p) * b.reduce_mod(p)


@given(fields, st.integers(1, 3), degs, seeds)
def test_vector_roundtrip(field, n, k, s):
    a = random_poly(n, k, field, s)
    assert Polynomial.from_vector(field, n, k, a.to_vector()) == a


def test_product_empty_is_one():
    assert product([], QQ, 2) == Polynomial.constant(QQ, 2, 1)
