from __future__ import annotations

import numpy as np
import pytest
from _props import property_failures, zoo
from hypothesis import given, settings
from hypothesis import strategies as st

from nilbreadth import constructions as C
from nilbreadth.linalg import contract

ZOO = zoo()


@pytest.mark.parametrize("name", list(ZOO))
def test_structural_properties(name):
    assert property_failures(ZOO[name]()) == []


GM = {(q, m): C.g_m_direct(q, m) for q, m in [(3, 1), (3, 2), (5, 1), (5, 2), (7, 1)]}


def vectors(L):
    return st.lists(st.integers(0, L.field.q - 1), min_size=L.dim, max_size=L.dim).map(np.array)


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(sorted(GM)), st.data())
def test_gm_breadth_is_zero_or_2m(key, data):
    L, m = GM[key], key[1]
    x = data.draw(vectors(L))
    b = L.breadth(x)
    assert b == (0 if L.center.member(x) else 2 * m)


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(sorted(GM)), st.data())
def test_jacobi_on_random_triples(key, data):
    L = GM[key]
    F = L.field
    x, y, z = (data.draw(vectors(L)) for _ in range(3))
    br = L.bracket
    total = F.vadd(F.vadd(br(x, br(y, z)), br(y, br(z, x))), br(z, br(x, y)))
    assert not total.any()
    assert np.array_equal(br(x, y), F.vneg(br(y, x)))


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(sorted(GM)), st.data())
def test_breadth_invariant_under_center_and_scaling(key, data):
    L = GM[key]
    F = L.field
    x = data.draw(vectors(L))
    coeffs = data.draw(st.lists(st.integers(0, F.q - 1), min_size=L.center.dim, max_size=L.center.dim))
    z = contract(F, np.array(coeffs), L.center.basis)
    lam = data.draw(st.integers(1, F.q - 1))
    b = L.breadth(x)
    assert L.breadth(F.vadd(x, z)) == b
    assert L.breadth(F.vmul(lam, x)) == b


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(sorted(GM)), st.data())
def test_centralizer_meets_derived_in_center(key, data):
    L = GM[key]
    x = data.draw(vectors(L))
    if L.derived.member(x):
        return
    assert L.centralizer(x).intersect(L.derived) == L.center
