"""Form values, unimodular substitutions, and representation arithmetic."""

from __future__ import annotations

from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from quadforms.forms import (
    QuadraticForm,
    Representation,
    UnimodularMap,
    form_from_representation,
    is_contiguous,
    product_representation,
    representation_value,
    transform,
)
from quadforms.numtheory import DomainError

coeff = st.integers(min_value=-50, max_value=50)
forms = (
    st.tuples(coeff, coeff, coeff)
    .filter(lambda t: t != (0, 0, 0))
    .map(lambda t: QuadraticForm(*t))
)


@st.composite
def unimodular_maps(draw):
    # random proper or improper map built from a Bezout pair
    alpha = draw(st.integers(min_value=-20, max_value=20))
    gamma = draw(st.integers(min_value=-20, max_value=20))
    if gcd(alpha, gamma) != 1:
        alpha, gamma = 1, 0
    det = draw(st.sampled_from([1, -1]))
    # solve alpha*delta - beta*gamma = det
    for beta in range(-200, 201):
        if alpha == 0:
            delta, rem = 0, 0
            if (-beta * gamma) == det:
                break
        else:
            delta, rem = divmod(det + beta * gamma, alpha)
            if rem == 0:
                break
    shift = draw(st.integers(min_value=-5, max_value=5))
    return UnimodularMap(alpha, beta + shift * alpha, gamma, delta + shift * gamma)


def test_construction_rejects_zero_form():
    with pytest.raises(DomainError):
        QuadraticForm(0, 0, 0)
    # degenerate but legal: zero outer coefficients appear at square determinants
    assert QuadraticForm(0, 2, 5).determinant == 4
    assert QuadraticForm(1, 2, 0).determinant == 4


def test_determinant_pinned_values():
    assert QuadraticForm(304, 217, 155).determinant == -31
    assert QuadraticForm(1, 0, -1).determinant == 1
    assert QuadraticForm(67, 97, 140).determinant == 29


def test_value_content_primitive():
    f = QuadraticForm(2, -4, 3)
    assert f.value(1, 0) == 2
    assert f.value(0, 1) == 3
    assert f.value(1, 1) == 2 - 8 + 3
    assert QuadraticForm(10, 3, 17).is_primitive
    assert not QuadraticForm(2, 4, 6).is_primitive
    assert QuadraticForm(2, 4, 6).content == 2
    # content is gcd(a, 2b, c): (2,1,2) is primitive yet has content 2
    assert QuadraticForm(2, 1, 2).content == 2
    assert QuadraticForm(2, 1, 2).is_primitive
    assert QuadraticForm(3, 1, 332444).is_primitive


def test_opposite_and_negated():
    assert QuadraticForm(2, 1, 43).opposite() == QuadraticForm(2, -1, 43)
    assert QuadraticForm(5, 0, 17).opposite() == QuadraticForm(5, 0, 17)
    assert QuadraticForm(3, 8, -5).opposite() == QuadraticForm(3, -8, -5)
    assert QuadraticForm(5, -2, 7).negated() == QuadraticForm(-5, 2, -7)


def test_parse_and_str_round_trip():
    assert QuadraticForm.parse("304,217,155") == QuadraticForm(304, 217, 155)
    assert QuadraticForm.parse(" -1, 5 , 4 ") == QuadraticForm(-1, 5, 4)
    assert str(QuadraticForm(5, -2, 7)) == "5,-2,7"
    with pytest.raises(DomainError):
        QuadraticForm.parse("1,2")
    with pytest.raises(DomainError):
        QuadraticForm.parse("1,2,x")


def test_transform_pinned_values():
    f = QuadraticForm(2, -4, 3)
    assert transform(f, UnimodularMap(2, 1, 3, 2)) == QuadraticForm(-13, -6, -2)
    assert transform(f, UnimodularMap.identity()) == f
    assert transform(f, UnimodularMap(1, 0, 0, -1)) == f.opposite()


def test_unimodular_map_basics():
    t = UnimodularMap(2, 1, 3, 2)
    assert t.determinant == 1 and t.is_proper
    s = UnimodularMap(1, 0, 0, -1)
    assert s.determinant == -1 and s.is_improper
    assert (t @ s).determinant == -1
    assert UnimodularMap.identity().determinant == 1


@given(forms, unimodular_maps())
def test_transform_determinant_law(f, t):
    assert transform(f, t).determinant == f.determinant * t.determinant**2


@given(forms, unimodular_maps(), unimodular_maps())
def test_transform_composes_with_matmul(f, t1, t2):
    assert transform(transform(f, t1), t2) == transform(f, t1 @ t2)


def test_is_contiguous_pinned_values():
    assert is_contiguous(QuadraticForm(304, 217, 155), QuadraticForm(155, -62, 25))
    assert is_contiguous(QuadraticForm(1, 998, -1327), QuadraticForm(-1327, 329, 670))
    assert not is_contiguous(QuadraticForm(2, 1, 43), QuadraticForm(2, 1, 43))
    # zero right coefficient: congruence mod 0 degenerates to equality
    assert is_contiguous(QuadraticForm(1, 2, 0), QuadraticForm(0, -2, 5))
    assert not is_contiguous(QuadraticForm(1, 2, 0), QuadraticForm(0, 3, 5))


def test_representation_value_pinned_values():
    r = representation_value(QuadraticForm(1, 0, 1), 1, 2)
    assert (r.value, r.theta) == (5, 2)
    assert form_from_representation(r) == QuadraticForm(5, 2, 1)

    r = representation_value(QuadraticForm(1, 0, 1), 1, 0)
    assert (r.value, r.theta) == (1, 0)
    assert form_from_representation(r) == QuadraticForm(1, 0, 1)

    # both square roots of -5 mod 7 are 3 and 4; the Bezout formula lands on 4
    r = representation_value(QuadraticForm(2, 1, 3), 1, 1)
    assert (r.value, r.theta) == (7, 4)
    assert form_from_representation(r) == QuadraticForm(7, 4, 3)


def test_representation_value_rejects_bad_pairs():
    with pytest.raises(DomainError):
        representation_value(QuadraticForm(1, 0, 1), 2, 4)
    with pytest.raises(DomainError):
        representation_value(QuadraticForm(1, 0, -1), 1, 1)


pairs = st.tuples(
    st.integers(min_value=-30, max_value=30), st.integers(min_value=-30, max_value=30)
).filter(lambda p: gcd(p[0], p[1]) == 1)


@given(forms, pairs)
def test_theta_squares_to_determinant(f, pair):
    m, n = pair
    value = f.value(m, n)
    if value == 0:
        return
    r = representation_value(f, m, n)
    big_m = abs(r.value)
    assert 0 <= r.theta < big_m or big_m == 1
    assert (r.theta * r.theta - f.determinant) % big_m == 0
    assert form_from_representation(r).determinant == f.determinant


@given(forms, pairs, st.integers(min_value=-10, max_value=10))
def test_theta_independent_of_bezout_pair(f, pair, k):
    m, n = pair
    value = f.value(m, n)
    if value == 0:
        return
    r = representation_value(f, m, n)
    # every other Bezout pair for (m, n) is (mu + k*n, nu - k*m)
    mu, nu = r.mu + k * n, r.nu - k * m
    assert mu * m + nu * n == 1
    theta = mu * (f.b * m + f.c * n) - nu * (f.a * m + f.b * n)
    assert theta % abs(value) == r.theta


@given(forms, pairs, pairs)
def test_theorem_identity_for_raw_theta(f, p1, p2):
    m, n = p1
    value = f.value(m, n)
    if value == 0:
        return
    r = representation_value(f, m, n)
    theta_raw = r.mu * (f.b * m + f.c * n) - r.nu * (f.a * m + f.b * n)
    lhs = value * (f.a * r.nu**2 - 2 * f.b * r.mu * r.nu + f.c * r.mu**2)
    rhs = theta_raw**2 - f.determinant * (m * r.mu + n * r.nu) ** 2
    assert lhs == rhs


def test_product_representation_pinned_values():
    assert product_representation(QuadraticForm(1, 0, 1), (1, 0), (0, 1)) == (0, 1)
    assert product_representation(QuadraticForm(3, 1, 5), (1, 0), (0, 1)) == (1, 1)
    assert product_representation(QuadraticForm(10, 3, 17), (1, 0), (1, 0)) == (10, 0)


@given(forms, pairs, pairs)
def test_product_representation_identity(f, p1, p2):
    p, q = product_representation(f, p1, p2)
    assert f.value(*p1) * f.value(*p2) == p * p - f.determinant * q * q
