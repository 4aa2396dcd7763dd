from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fasla.linalg import (
    as_rational,
    bareiss_echelon,
    char_poly,
    exact_einsum,
    exact_nullspace,
    exact_rank,
    eye,
    in_column_space,
    inverse,
    is_nilpotent,
    min_poly,
    nilpotency_index,
    rational_roots,
    solve,
    to_fraction,
    zeros,
)

F = Fraction

small = st.integers(-3, 3)
fracs = st.fractions(min_value=-4, max_value=4, max_denominator=5)


def matrices(rows, cols, elements=small):
    return st.lists(st.lists(elements, min_size=cols, max_size=cols),
                    min_size=rows, max_size=rows).map(as_rational)


def test_identity_rank_and_kernel():
    assert exact_rank(eye(3)) == 3
    assert exact_nullspace(eye(3)) == []


def test_zero_matrix_kernel_is_everything():
    z = zeros((2, 5))
    assert exact_rank(z) == 0
    assert len(exact_nullspace(z)) == 5


def test_rank_one_kernel():
    m = as_rational([[1, 2], [2, 4]])
    assert exact_rank(m) == 1
    (v,) = exact_nullspace(m)
    # span{(-2, 1)}
    assert v[0] * 1 == v[1] * -2


def test_to_fraction_rejects_floats():
    assert to_fraction("3/4") == F(3, 4)
    with pytest.raises((TypeError, ValueError)):
        to_fraction(0.5)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_rank_nullity(r, c, data):
    m = data.draw(matrices(r, c))
    ker = exact_nullspace(m)
    assert exact_rank(m) + len(ker) == c
    for v in ker:
        assert all(x == 0 for x in m @ v)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.data())
def test_inverse_roundtrip(n, data):
    m = data.draw(matrices(n, n, fracs))
    if exact_rank(m) < n:
        return
    assert np.all(m @ inverse(m) == eye(n))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_solve_consistent_systems(r, c, data):
    a = data.draw(matrices(r, c))
    x = data.draw(matrices(c, 1)).reshape(-1)
    b = a @ x
    sol = solve(a, b)
    assert sol is not None and np.all(a @ sol == b)
    assert in_column_space(a, b)


def test_solve_inconsistent():
    a = as_rational([[1, 0], [1, 0]])
    assert solve(a, as_rational([1, 2])) is None


def test_bareiss_stays_integral():
    m = as_rational([[2, 4, 1], [1, 3, 5], [0, 1, 1]])
    ech = bareiss_echelon(m)
    arr = ech[0] if isinstance(ech, tuple) else ech
    assert all(F(x).denominator == 1 for x in np.asarray(arr).flat)


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_exact_einsum_matches_object_einsum(data):
    a = data.draw(matrices(3, 3, fracs)).reshape(3, 3)
    b = data.draw(matrices(3, 3, fracs))
    assert np.all(exact_einsum("ij,jk->ik", a, b) == a @ b)
    assert exact_einsum("ii->", a) == sum(a[i, i] for i in range(3))


def test_exact_einsum_large_entries_use_python_ints():
    big = as_rational([[2 ** 70, 1], [F(1, 3 ** 40), -(2 ** 65)]])
    assert np.all(exact_einsum("ij,jk->ik", big, big) == big @ big)


def test_nilpotency():
    n = as_rational([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
    assert nilpotency_index(n) == 3
    assert is_nilpotent(n)
    assert not is_nilpotent(eye(2))
    assert nilpotency_index(zeros((0, 0))) == 0


def test_char_and_min_poly():
    m = as_rational([[2, 0], [0, 2]])
    assert char_poly(m) == [1, -4, 4]
    assert list(min_poly(m)) == [1, -2]
    d = as_rational([[1, 0], [0, -1]])
    assert list(min_poly(d)) == [1, 0, -1]


def test_rational_roots():
    # (t - 1/2)(t + 3)
    assert sorted(rational_roots([F(1), F(5, 2), F(-3, 2)])) == [F(-3), F(1, 2)]
