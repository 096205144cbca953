from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from logforms.forms import (
    Form,
    contract_radial,
    differential,
    exterior_derivative,
    is_projective,
    projective_dimension,
    radial_value,
    wedge,
)
from logforms.poly import FieldSpec, Polynomial, random_poly
from strategies import random_form, seeds

QQ = FieldSpec.rational()
FP = FieldSpec.prime()
N = 2


def x(i):
    return Polynomial.variable(QQ, N, i)


def dx(*i):
    return Form.dx(QQ, N, *i)


def test_wedge_examples():
    assert wedge(dx(0), dx(0)).is_zero()
    assert wedge(dx(0), dx(1)) == -wedge(dx(1), dx(0))
    a = Form.one_form([x(1), Polynomial.zero(QQ, N, 1), Polynomial.zero(QQ, N, 1)])
    b = Form.one_form([Polynomial.zero(QQ, N, 1), x(0), Polynomial.zero(QQ, N, 1)])
    assert wedge(a, b) == dx(0, 1).times(x(0) * x(1))


def test_sign_normalization():
    assert dx(1, 0) == -dx(0, 1)
    assert dx(0, 0).is_zero()
    assert dx(2, 0, 1) == dx(0, 1, 2)


def test_exterior_derivative_examples():
    z = Polynomial.zero(QQ, N, 1)
    assert exterior_derivative(Form.one_form([z, x(0), z])) == dx(0, 1)
    g = random_poly(N, 3, QQ, 4)
    assert exterior_derivative(differential(g)).is_zero()
    w = Form.one_form([x(1), -x(0), z])
    assert exterior_derivative(w) == dx(0, 1).scale(-2)
    with pytest.raises(ValueError):
        exterior_derivative(dx(0, 1, 2))


def test_contraction_examples():
    g = x(0) * x(0)
    assert radial_value(differential(g)) == g.scale(2)
    z = Polynomial.zero(QQ, N, 1)
    assert radial_value(Form.one_form([x(1), -x(0), z])).is_zero()
    expected = Form.one_form([-x(1), x(0), z])
    assert contract_radial(dx(0, 1)) == expected


def test_projective_examples():
    z = Polynomial.zero(QQ, N, 1)
    assert is_projective(Form.one_form([x(1), -x(0), z]))
    assert not is_projective(differential(random_poly(N, 2, QQ, 9)))


def test_grade_too_large_is_zero():
    assert wedge(dx(0, 1), dx(1, 2)).is_zero()
    assert wedge(dx(0, 1), dx(1, 2)).q == 4


def test_degree_contract():
    with pytest.raises(ValueError):
        Form(QQ, N, 1, 3, {(0,): x(0)})


def test_json_roundtrip():
    w = random_form(QQ, N, 2, 4, 3)
    obj = w.to_json()
    assert obj["q"] == 2 and obj["degree"] == 4
    assert Form.from_json(obj, QQ, N) == w


def test_coefficient_generators():
    w = random_form(FP, N, 1, 3, 1)
    assert len(w.coefficient_generators()) == 3


def test_projective_dimension_counts():
    assert projective_dimension(1, 2) == 1
    assert projective_dimension(3, 2) == 6
    assert projective_dimension(2, 2) == 3


grades = st.integers(0, 2)
fields = st.sampled_from([QQ, FP])


@given(fields, grades, grades, st.integers(0, 2), st.integers(0, 2), seeds, seeds)
def test_leibniz(field, qa, qb, ka, kb, s1, s2):
    a = random_form(field, N, qa, qa + ka, s1)
    b = random_form(field, N, qb, qb + kb, s2)
    if qa + qb >= N + 1:
        return
    lhs = exterior_derivative(wedge(a, b))
    sign = -1 if qa % 2 else 1
    rhs = wedge(exterior_derivative(a), b) + wedge(a, exterior_derivative(b)).scale(sign)
    assert lhs == rhs


@given(fields, st.integers(1, 2), st.integers(1, 2), st.integers(0, 2), st.integers(0, 2), seeds, seeds)
def test_antiderivation(field, qa, qb, ka, kb, s1, s2):
    a = random_form(field, N, qa, qa + ka, s1)
    b = random_form(field, N, qb, qb + kb, s2)
    lhs = contract_radial(wedge(a, b))
    sign = -1 if qa % 2 else 1
    rhs = wedge(contract_radial(a), b) + wedge(a, contract_radial(b)).scale(sign)
    assert lhs == rhs


@given(fields, st.integers(1, 4), seeds)
def test_cartan_euler(field, d, s):
    a = random_form(field, N, 1, d, s)
    lhs = contract_radial(exterior_derivative(a)) + exterior_derivative(contract_radial(a))
    assert lhs == a.scale(d)


@given(fields, st.integers(0, 2), st.integers(0, 3), seeds)
def test_d_squared(field, q, k, s):
    a = random_form(field, N, q, q + k, s)
    if q + 2 > N + 1:
        return
    assert exterior_derivative(exterior_derivative(a)).is_zero()


@given(fields, st.integers(1, 3), st.integers(0, 2), seeds)
def test_vector_roundtrip(field, q, k, s):
    a = random_form(field, N, q, q + k, s)
    assert Form.from_vector(field, N, q, a.degree, a.to_vector()) == a
