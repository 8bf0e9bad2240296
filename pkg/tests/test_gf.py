from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nilbreadth.gf import (
    GF,
    DivisionByZero,
    FieldElement,
    FieldMismatch,
    NotIrreducible,
    element_from_json,
    element_to_json,
    field_q,
    find_irreducible,
    find_nonsquare,
    is_irreducible,
    prime_power,
    tower_from_json,
    tower_to_json,
)

# Small fields used by the property tests: prime, quadratic, cubic, and a two-step tower.
FIELDS = [GF.prime(3), GF.prime(5), GF.prime(7), field_q(9), field_q(27), field_q(25), field_q(4), field_q(9).extension(2)]


def test_prime_power():
    assert prime_power(9) == (3, 2)
    assert prime_power(7) == (7, 1)
    assert prime_power(128) == (2, 7)
    for bad in (1, 6, 12, 0):
        with pytest.raises(ValueError):
            prime_power(bad)


def test_default_polynomials_are_lex_smallest():
    # constant term first; t^2+1 over F_3, t^3+2t+1 over F_3, t^2+2 over F_5, t^2+t+1 over F_2
    assert field_q(9).poly == (1, 0, 1)
    assert field_q(27).poly == (1, 2, 0, 1)
    assert field_q(25).poly == (2, 0, 1)
    assert field_q(4).poly == (1, 1, 1)


def test_f9_multiplication_table():
    # index = c0 + 3*c1 for c0 + c1*t, with t^2 = -1
    F9 = field_q(9)
    expected = [
        [0, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 1, 2, 3, 4, 5, 6, 7, 8],
        [0, 2, 1, 6, 8, 7, 3, 5, 4],
        [0, 3, 6, 2, 5, 8, 1, 4, 7],
        [0, 4, 8, 5, 6, 1, 7, 2, 3],
        [0, 5, 7, 8, 1, 3, 4, 6, 2],
        [0, 6, 3, 1, 7, 4, 2, 8, 5],
        [0, 7, 5, 4, 2, 6, 8, 3, 1],
        [0, 8, 4, 7, 3, 2, 5, 1, 6],
    ]
    assert F9.mul_table.tolist() == expected
    assert [F9.inv(a) for a in range(1, 9)] == [1, 2, 6, 5, 4, 3, 8, 7]
    assert F9.coords(5) == (2, 1)
    assert F9.frob(5, 1) == 8  # (2 + t)^3 = 2 - t
    assert sorted(F9.squares()) == [0, 1, 2, 3, 6]


def test_nonsquares():
    assert find_nonsquare(GF.prime(3)) == 2
    assert find_nonsquare(GF.prime(5)) == 2
    assert find_nonsquare(GF.prime(7)) == 3
    assert find_nonsquare(field_q(9)) == 4  # 1 + t


def test_levels_are_cached_and_extension_one_is_identity(F3):
    assert F3.extension(2) is field_q(9)
    assert F3.extension(1) is F3


def test_explicit_polynomial_and_rejection(F3):
    K = F3.extension(2, (2, 2, 1))  # t^2 + 2t + 2
    assert K.q == 9 and K.poly == (2, 2, 1)
    assert K != field_q(9)
    with pytest.raises(NotIrreducible):
        F3.extension(2, (2, 0, 1))  # t^2 - 1


def test_irreducibility():
    F3 = GF.prime(3)
    assert is_irreducible(F3, (1, 0, 1))
    assert not is_irreducible(F3, (2, 0, 1))
    assert find_irreducible(F3, 3) == (1, 2, 0, 1)


def test_tower_json_roundtrip():
    F81 = field_q(9).extension(2)
    obj = tower_to_json(F81)
    assert obj == {"p": 3, "tower": [[1, 0, 1], [[1, 1], [0, 0], [1, 0]]]}
    assert tower_from_json(obj) is F81
    assert element_to_json(F81, 40) == [[1, 1], [1, 1]]
    assert element_from_json(F81, [[1, 1], [1, 1]]) == 40
    assert element_to_json(GF.prime(5), 3) == 3


def test_division_by_zero_and_mismatch():
    F9 = field_q(9)
    with pytest.raises(DivisionByZero):
        F9.inv(0)
    with pytest.raises(FieldMismatch):
        FieldElement(F9, 1) + FieldElement(field_q(27), 1)


def test_field_element_operators():
    F9 = field_q(9)
    t = FieldElement(F9, 3)
    assert (t * t).value == 2
    assert (t * t + 1).value == 0
    assert (t / t).value == 1
    assert (t ** 8).value == 1
    assert (-t).value == 6


@pytest.mark.parametrize("F", FIELDS, ids=lambda F: f"q{F.q}d{F.depth}")
def test_vectorised_ops_agree_with_scalar(F):
    a, b = np.meshgrid(np.arange(F.q), np.arange(F.q), indexing="ij")
    assert np.array_equal(F.vadd(a, b), np.vectorize(F.add)(a, b))
    assert np.array_equal(F.vmul(a, b), np.vectorize(F.mul)(a, b))
    assert np.array_equal(F.vsub(a, b), np.vectorize(F.sub)(a, b))
    nz = np.arange(1, F.q)
    assert np.array_equal(F.vmul(nz, F.vinv(nz)), np.ones_like(nz))


@pytest.mark.parametrize("F", FIELDS, ids=lambda F: f"q{F.q}d{F.depth}")
def test_multiplicative_group_is_cyclic(F):
    orders = []
    for g in range(1, F.q):
        k, x = 1, g
        while x != 1:
            x, k = F.mul(x, g), k + 1
        assert F.pow(g, k) == 1
        orders.append(k)
    assert max(orders) == F.q - 1
    assert all((F.q - 1) % k == 0 for k in orders)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(FIELDS), st.data())
def test_field_axioms(F, data):
    el = st.integers(0, F.q - 1)
    a, b, c = data.draw(el), data.draw(el), data.draw(el)
    assert F.add(a, b) == F.add(b, a)
    assert F.mul(a, b) == F.mul(b, a)
    assert F.mul(a, F.mul(b, c)) == F.mul(F.mul(a, b), c)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(a, F.neg(a)) == 0
    if a:
        assert F.mul(a, F.inv(a)) == 1


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(FIELDS), st.data())
def test_frobenius_is_a_ring_automorphism(F, data):
    el = st.integers(0, F.q - 1)
    a, b = data.draw(el), data.draw(el)
    assert F.frob(F.add(a, b), 1) == F.add(F.frob(a, 1), F.frob(b, 1))
    assert F.frob(F.mul(a, b), 1) == F.mul(F.frob(a, 1), F.frob(b, 1))
    assert F.frob(a, F.total_degree) == a


@pytest.mark.parametrize("F", FIELDS, ids=lambda F: f"q{F.q}d{F.depth}")
def test_prime_digits_roundtrip(F):
    for a in range(F.q):
        assert F.from_prime_digits(F.prime_digits(a)) == a
        assert F.from_coords(F.coords(a)) == a
